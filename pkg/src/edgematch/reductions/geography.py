"""Winner-preserving transforms between geography variants and matching games."""

from __future__ import annotations

from typing import Dict, Hashable, List, Tuple

from ..euler import MultiDigraph, MultiGraph
from ..games import P1, P2, GameInstance, GeoInstance, _two_color
from ..model import Rule, Signed, SquareTile, Unsigned
from .hamilton import _fresh
from .sat import PreconditionError


def _other(p: str) -> str:
    return P2 if p == P1 else P1


def vertex_geo_to_edge_geo(geo: GeoInstance) -> GeoInstance:
    """Directed vertex geography as directed edge geography.

    Each vertex ``v`` splits into ``v:in -> v:out`` and each edge ``u->v``
    becomes the corridor ``u:out -> e -> v:in``, so one vertex move costs
    three edge moves.  The start vertex keeps only its ``out`` half (plus a
    dead-end ``in`` half), which makes re-entering it a losing move.
    """
    g = geo.graph
    if not g.directed or geo.rule != "vertex" or geo.partizan:
        raise PreconditionError("not impartial directed vertex geography")
    vs: List[str] = []
    es: List[Tuple[str, str, str]] = []
    for v in g.vertices:
        vs += [f"{v}:in", f"{v}:out"]
        if v != geo.start:
            es.append((f"{v}:mid", f"{v}:in", f"{v}:out"))
    for e, u, v in g.edges:
        a = f"{e}:via"
        vs.append(a)
        es.append((f"{e}:go", f"{u}:out", a))
        es.append((f"{e}:arrive", a, f"{v}:in"))
    return GeoInstance(MultiDigraph(tuple(vs), tuple(es)), f"{geo.start}:out", "edge")


def _bipartition(geo: GeoInstance) -> Dict[Hashable, int]:
    g = geo.graph
    adj: Dict[Hashable, List[Hashable]] = {v: [] for v in g.vertices}
    for _e, u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    try:
        return _two_color(g.vertices, adj, geo.start)
    except ValueError:
        raise PreconditionError("not bipartite") from None


def partizanize(geo: GeoInstance, mode: str) -> GeoInstance:
    """Give every vertex or edge an owner without changing the winner.

    ``vertex_from_bipartition``: vertices across from the start belong to
    the first player.  ``edge_from_direction``: in a bipartite digraph, edges
    leaving the start's side belong to the first player.
    ``undirect_edge_partizan``: each colored arc ``u->v`` becomes an
    undirected path ``u - a - b - v`` plus a leaf at ``b``; walking it
    backwards hands the opponent a winning move into the leaf.
    """
    if geo.partizan and mode != "undirect_edge_partizan":
        raise PreconditionError("not impartial")
    g = geo.graph
    if mode == "vertex_from_bipartition":
        if geo.rule != "vertex":
            raise PreconditionError("not vertex geography")
        side = _bipartition(geo)
        colors = {v: (P2 if side[v] == 0 else P1) for v in g.vertices}
        return GeoInstance(g, geo.start, "vertex", vertex_colors=colors)
    if mode == "edge_from_direction":
        if geo.rule != "edge" or not g.directed:
            raise PreconditionError("not directed edge geography")
        side = _bipartition(geo)
        colors = {e: (P1 if side[u] == 0 else P2) for e, u, _v in g.edges}
        return GeoInstance(g, geo.start, "edge", edge_colors=colors)
    if mode == "undirect_edge_partizan":
        if geo.rule != "edge" or not g.directed or geo.partizan != "edge":
            raise PreconditionError("not directed edge-partizan geography")
        taken = {str(v) for v in g.vertices}
        vs = list(g.vertices)
        es = []
        colors = {}
        for e, u, v in g.edges:
            c = geo.edge_colors[e]
            a, b, leaf = (_fresh(taken, f"{e}:{x}") for x in ("a", "b", "leaf"))
            taken.update((a, b, leaf))
            vs += [a, b, leaf]
            for eid, x, y, col in ((f"{e}:1", u, a, c), (f"{e}:2", a, b, _other(c)),
                                   (f"{e}:3", b, v, c), (f"{e}:leaf", b, leaf, _other(c))):
                es.append((eid, x, y))
                colors[eid] = col
        return GeoInstance(MultiGraph(tuple(vs), tuple(es)), geo.start, "edge", edge_colors=colors)
    raise PreconditionError(f"unknown mode {mode!r}")


def monochromatic_free(geo: GeoInstance) -> GeoInstance:
    """Drop edges that can never be played under vertex colors (start counts as the second player's)."""
    if geo.partizan != "vertex":
        raise PreconditionError("not vertex-partizan")
    col = dict(geo.vertex_colors)
    col[geo.start] = P2
    es = tuple((e, u, v) for e, u, v in geo.graph.edges if col[u] != col[v])
    g = type(geo.graph)(geo.graph.vertices, es)
    return GeoInstance(g, geo.start, "vertex", vertex_colors=geo.vertex_colors)


# ---------------------------------------------------------------- matching games


def _edge_game(geo: GeoInstance, pools: str) -> GameInstance:
    g = geo.graph
    tiles = []
    for e, u, v in g.edges:
        n, s = f"U({e},N)", f"U({e},S)"
        if g.directed:
            t = SquareTile(north=Signed(n, 1), east=Signed(f"v({v})", 1), south=Signed(s, 1),
                           west=Signed(f"v({u})", -1), id=e)
        else:
            t = SquareTile(north=Unsigned(n), east=Unsigned(f"v({v})"), south=Unsigned(s),
                           west=Unsigned(f"v({u})"), id=e)
        tiles.append(t)
    if g.directed:
        left, rule = Signed(f"v({geo.start})", 1), Rule.SIGNED_OPP
    else:
        left, rule = Unsigned(f"v({geo.start})"), Rule.UNSIGNED_EQ
    pool = None
    if pools == "per_player":
        if geo.partizan != "edge":
            raise PreconditionError("not edge-partizan: per-player pools follow edge colors")
        pool = (frozenset(e for e, _u, _v in g.edges if geo.edge_colors[e] == P1),
                frozenset(e for e, _u, _v in g.edges if geo.edge_colors[e] == P2))
    elif geo.partizan:
        raise PreconditionError("not impartial: shared pools need an uncolored instance")
    return GameInstance(tuple(tiles), left, rule, pool)


def _vertex_game(geo: GeoInstance) -> GameInstance:
    g = geo.graph
    if not g.directed or geo.partizan:
        raise PreconditionError("not impartial directed vertex geography")
    ins, outs = g.in_degree(), g.out_degree()
    s = geo.start
    if outs[s] != 2:
        raise PreconditionError("not a start with outdegree 2")
    for v in g.vertices:
        if v != s and (ins[v], outs[v]) not in ((1, 2), (2, 1)):
            raise PreconditionError(f"not max degree 3 with in/out (1,2) or (2,1): vertex {v}")
    in_e = {v: [] for v in g.vertices}
    out_e = {v: [] for v in g.vertices}
    for e, u, w in g.edges:
        out_e[u].append(e)
        in_e[w].append(e)
    lab = Signed
    tiles = []
    for v in g.vertices:
        vI, vO, vX = f"vI({v})", f"vO({v})", f"vX({v})"
        if v == s or (ins[v], outs[v]) == (1, 2):
            if v != s:
                e1 = in_e[v][0]
                tiles.append(SquareTile(north=lab(vX, -1), east=lab(vI, -1), south=lab(vX, -1),
                                        west=lab(f"edge({e1})", 1), id=f"in({v},{e1})"))
            for e in out_e[v]:
                tiles.append(SquareTile(north=lab(vO, -1), east=lab(vI, 1),
                                        south=lab(f"edge({e})", -1), west=lab(vO, 1),
                                        id=f"out({v},{e})"))
        else:
            for e in in_e[v]:
                tiles.append(SquareTile(north=lab(vI, 1), east=lab(vI, -1), south=lab(vO, -1),
                                        west=lab(f"edge({e})", 1), id=f"in({v},{e})"))
            e3 = out_e[v][0]
            tiles.append(SquareTile(north=lab(vX, -1), east=lab(f"edge({e3})", -1),
                                    south=lab(vO, -1), west=lab(vO, 1), id=f"out({v},{e3})"))
    return GameInstance(tuple(tiles), lab(f"vI({s})", -1), Rule.SIGNED_OPP, None)


def geo_to_matching_game(geo: GeoInstance, pools: str = "shared") -> GameInstance:
    """A strip-matching game with the same winner as ``geo``.

    Edge geography gets one tile per edge whose north and south sides are
    private colors, so only half turns are ever playable.  Directed vertex
    geography (in/out degrees (1,2) or (2,1), start with two out-edges) gets
    the three-tiles-per-vertex set with a shared pool.
    """
    if pools not in ("shared", "per_player"):
        raise PreconditionError(f"unknown pool mode {pools!r}")
    if geo.rule == "edge":
        return _edge_game(geo, pools)
    if pools != "shared":
        raise PreconditionError("not edge geography: per-player pools need edge colors")
    return _vertex_game(geo)
