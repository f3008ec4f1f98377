"""JSON documents for instances, solutions, formulas, graphs and games.

Every document is an object with ``"kind"`` and ``"version": 1``.  The
schemas under ``edgematch/schemas`` describe each kind.
"""

from __future__ import annotations

import json
from typing import Any, Dict, Optional

from .euler import MultiDigraph, MultiGraph
from .games import GameInstance, GeoInstance
from .model import (EqTriStrip, EqTriTile, HypStrip, Instance, LegStrip, Num, Rect, RightTriTile,
                    Rule, Shapeless, Signed, Solution, SquareTile, Strip, Unsigned)
from .reductions.sat import Cnf, Ipc

VERSION = 1


class FormatError(ValueError):
    """A document does not parse."""


# ---------------------------------------------------------------- labels and tiles


def label_to_json(x) -> Optional[dict]:
    if x is None:
        return None
    if isinstance(x, Num):
        return {"num": x.value}
    if isinstance(x, Signed):
        return {"color": x.color, "sign": "+" if x.sign > 0 else "-"}
    if isinstance(x, Unsigned):
        return {"color": x.color}
    raise FormatError(f"not a label: {x!r}")


def label_from_json(d):
    if d is None:
        return None
    if not isinstance(d, dict):
        raise FormatError(f"label must be an object, got {d!r}")
    if "num" in d:
        if not isinstance(d["num"], int) or isinstance(d["num"], bool):
            raise FormatError("num label must be an integer")
        return Num(d["num"])
    if "color" not in d or not isinstance(d["color"], str):
        raise FormatError(f"label needs a string color: {d!r}")
    if "sign" in d:
        if d["sign"] not in ("+", "-"):
            raise FormatError(f"sign must be '+' or '-', got {d['sign']!r}")
        return Signed(d["color"], 1 if d["sign"] == "+" else -1)
    return Unsigned(d["color"])


def tile_to_json(t) -> dict:
    if isinstance(t, SquareTile):
        return {"shape": "square", "id": t.id, "n": label_to_json(t.north), "e": label_to_json(t.east),
                "s": label_to_json(t.south), "w": label_to_json(t.west)}
    if isinstance(t, EqTriTile):
        return {"shape": "eqtri", "id": t.id, "edges": [label_to_json(x) for x in t.edges]}
    if isinstance(t, RightTriTile):
        return {"shape": "right", "id": t.id, "leg_left": label_to_json(t.leg_left),
                "leg_right": label_to_json(t.leg_right), "hyp": label_to_json(t.hyp)}
    raise FormatError(f"not a tile: {t!r}")


def tile_from_json(d):
    try:
        shape = d["shape"]
        if shape == "square":
            return SquareTile(*(label_from_json(d[k]) for k in ("n", "e", "s", "w")), id=d["id"])
        if shape == "eqtri":
            if len(d["edges"]) != 3:
                raise FormatError("equilateral tiles have three edges")
            return EqTriTile(tuple(label_from_json(x) for x in d["edges"]), id=d["id"])
        if shape == "right":
            return RightTriTile(label_from_json(d["leg_left"]), label_from_json(d["leg_right"]),
                                label_from_json(d["hyp"]), id=d["id"])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad tile {d!r}: {exc}") from None
    raise FormatError(f"unknown tile shape {d.get('shape')!r}")


# ---------------------------------------------------------------- instances


_RULES = {r.value: r for r in Rule}


def board_to_json(b) -> dict:
    if isinstance(b, Rect):
        return {"type": "rect", "m": b.m, "n": b.n}
    if isinstance(b, Strip):
        return {"type": "strip", "n": b.n, "left": label_to_json(b.left), "right": label_to_json(b.right)}
    if isinstance(b, EqTriStrip):
        return {"type": "eqtri_strip", "n": b.n, "left": label_to_json(b.left), "first_points": b.first_points}
    if isinstance(b, LegStrip):
        return {"type": "leg_strip", "n": b.n, "left_acute": b.left_acute}
    if isinstance(b, HypStrip):
        return {"type": "hyp_strip", "n": b.n, "left": label_to_json(b.left)}
    if isinstance(b, Shapeless):
        return {"type": "shapeless", "rooted": b.rooted, "root": b.root,
                "root_orientation": b.root_orientation}
    raise FormatError(f"not a board: {b!r}")


def board_from_json(d):
    try:
        t = d["type"]
        if t == "rect":
            return Rect(int(d["m"]), int(d["n"]))
        if t == "strip":
            return Strip(int(d["n"]), label_from_json(d.get("left")), label_from_json(d.get("right")))
        if t == "eqtri_strip":
            return EqTriStrip(int(d["n"]), label_from_json(d.get("left")), d.get("first_points", "up"))
        if t == "leg_strip":
            return LegStrip(int(d["n"]), d.get("left_acute", "bottom"))
        if t == "hyp_strip":
            return HypStrip(int(d["n"]), label_from_json(d.get("left")))
        if t == "shapeless":
            return Shapeless(bool(d.get("rooted", False)), d.get("root"), int(d.get("root_orientation", 0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad board {d!r}: {exc}") from None
    raise FormatError(f"unknown board type {d.get('type')!r}")


def _doc(kind: str, **body) -> dict:
    return {"kind": kind, "version": VERSION, **body}


def to_json(obj) -> dict:
    """Document for any supported value."""
    if isinstance(obj, Instance):
        return _doc("instance", board=board_to_json(obj.board), rule=obj.rule.value,
                    allow_reflection=obj.allow_reflection, tiles=[tile_to_json(t) for t in obj.tiles])
    if isinstance(obj, Solution):
        if obj.cells is not None:
            return _doc("solution", cells=[[x, y, tid, o] for (x, y), (tid, o) in obj.cells])
        return _doc("solution", placements=[[tid, o] for tid, o in obj.placements])
    if isinstance(obj, Cnf):
        return _doc("cnf", nvars=obj.nvars, clauses=[list(c) for c in obj.clauses])
    if isinstance(obj, Ipc):
        return _doc("ipc", n=obj.n, pairs=[[list(p), list(q)] for p, q in obj.pairs])
    if isinstance(obj, MultiGraph):
        return _doc("graph", **graph_body(obj))
    if isinstance(obj, GeoInstance):
        body = {"graph": graph_body(obj.graph), "start": obj.start, "rule": obj.rule}
        if obj.vertex_colors is not None:
            body["vertex_colors"] = [[v, c] for v, c in obj.vertex_colors.items()]
        if obj.edge_colors is not None:
            body["edge_colors"] = [[e, c] for e, c in obj.edge_colors.items()]
        return _doc("geo", **body)
    if isinstance(obj, GameInstance):
        pools = None
        if obj.pools is not None:
            pools = [sorted(p, key=_id_key) for p in obj.pools]
        return _doc("game", tiles=[tile_to_json(t) for t in obj.tiles], left=label_to_json(obj.left),
                    rule=obj.rule.value, pools=pools)
    raise FormatError(f"cannot serialize {type(obj).__name__}")


def _id_key(x):
    return (type(x).__name__, x)


def graph_body(g: MultiGraph) -> dict:
    return {"directed": g.directed, "vertices": list(g.vertices),
            "edges": [[e, u, v, g.directed] for e, u, v in g.edges]}


def partition_to_json(p) -> list:
    """Per-vertex group arrays: ``[[vertex, [[edge, ...], ...]], ...]``."""
    return [[v, [list(grp) for grp in groups]] for v, groups in p.items()]


def partition_from_json(items) -> dict:
    try:
        return {v: [list(grp) for grp in groups] for v, groups in items}
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad partition: {exc}") from None


def graph_with_partition(g: MultiGraph, partition) -> dict:
    doc = to_json(g)
    doc["partition"] = partition_to_json(partition)
    return doc


def read_partition(d: dict) -> Optional[dict]:
    """Partition stored in a graph document, if any."""
    items = d.get("partition")
    return None if items is None else partition_from_json(items)


def graph_from_body(d) -> MultiGraph:
    try:
        directed = bool(d.get("directed", False))
        edges = []
        for item in d["edges"]:
            if len(item) == 4 and bool(item[3]) != directed:
                raise FormatError("mixed directed and undirected edges are not supported")
            if len(item) not in (3, 4):
                raise FormatError(f"edge must be [id, tail, head(, directed)], got {item!r}")
            edges.append((item[0], item[1], item[2]))
        cls = MultiDigraph if directed else MultiGraph
        return cls(tuple(d["vertices"]), tuple(edges))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad graph: {exc}") from None


def from_json(d: Dict[str, Any]):
    """Parse a document produced by :func:`to_json`."""
    if not isinstance(d, dict):
        raise FormatError("document must be a JSON object")
    if d.get("version") != VERSION:
        raise FormatError(f"unsupported version {d.get('version')!r}")
    kind = d.get("kind")
    try:
        if kind == "instance":
            rule = _RULES.get(d["rule"])
            if rule is None:
                raise FormatError(f"unknown rule {d['rule']!r}")
            return Instance(board_from_json(d["board"]), tuple(tile_from_json(t) for t in d["tiles"]),
                            rule, bool(d.get("allow_reflection", False)))
        if kind == "solution":
            if "cells" in d:
                return Solution(cells=tuple(((x, y), (tid, o)) for x, y, tid, o in d["cells"]))
            return Solution(placements=tuple((tid, o) for tid, o in d["placements"]))
        if kind == "cnf":
            return Cnf(int(d["nvars"]), tuple(tuple(c) for c in d["clauses"]))
        if kind == "ipc":
            return Ipc(int(d["n"]), tuple((tuple(p), tuple(q)) for p, q in d["pairs"]))
        if kind == "graph":
            return graph_from_body(d)
        if kind == "geo":
            vc = d.get("vertex_colors")
            ec = d.get("edge_colors")
            return GeoInstance(graph_from_body(d["graph"]), d["start"], d.get("rule", "vertex"),
                               dict((v, c) for v, c in vc) if vc is not None else None,
                               dict((e, c) for e, c in ec) if ec is not None else None)
        if kind == "game":
            rule = _RULES.get(d["rule"])
            if rule is None:
                raise FormatError(f"unknown rule {d['rule']!r}")
            pools = d.get("pools")
            if pools is not None:
                pools = (frozenset(pools[0]), frozenset(pools[1]))
            return GameInstance(tuple(tile_from_json(t) for t in d["tiles"]), label_from_json(d["left"]),
                                rule, pools)
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad {kind} document: {exc}") from None
    raise FormatError(f"unknown kind {kind!r}")


def dumps(obj) -> str:
    return json.dumps(to_json(obj) if not isinstance(obj, dict) else obj, indent=1, sort_keys=False) + "\n"


def loads(text: str):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return from_json(d)
