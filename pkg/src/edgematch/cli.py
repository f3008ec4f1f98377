"""Command-line interface.

Exit codes: 0 solved/ok, 1 no solution or violation, 2 parse or
precondition error, 3 size-guard refusal.  A file name of ``-`` means
stdin or stdout.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Hashable, Optional

from . import formats, generate, oracles, order_solvers, tri_solver
from .euler import GraphError, MultiDigraph, MultiGraph
from .formats import FormatError
from .games import GameError, GameInstance, GeoInstance, solve_geography, solve_geography_matching, solve_match_game
from .model import (Instance, LegStrip, ModelError, Rect, Rule, Shapeless, Solution, Strip, verify)
from .reductions import frame, geography, hamilton, legs, sat
from .reductions.sat import Cnf, Ipc, PreconditionError

EXIT_OK, EXIT_NO, EXIT_PARSE, EXIT_GUARD = 0, 1, 2, 3
TILE_LIMIT, EDGE_LIMIT = 12, 14


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------- io


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_PARSE) from None


def _read_doc(path: str) -> dict:
    try:
        d = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: invalid JSON: {exc}", EXIT_PARSE) from None
    if not isinstance(d, dict):
        raise CliError(f"{path}: document must be a JSON object", EXIT_PARSE)
    return d


def _load(path: str, *types):
    d = _read_doc(path)
    try:
        obj = formats.from_json(d)
    except (FormatError, ModelError, GraphError, GameError, ValueError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from None
    if types and not isinstance(obj, types):
        want = " or ".join(t.__name__ for t in types)
        raise CliError(f"{path}: expected {want}, got a {d.get('kind')} document", EXIT_PARSE)
    return obj


def _write(path: str, doc) -> None:
    text = formats.dumps(doc)
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _guard(args, size: int, default: int, what: str) -> None:
    if args.exact:
        return
    limit = args.exact_limit if args.exact_limit is not None else default
    if size > limit:
        raise CliError(f"exact search refused: {size} {what} exceeds the limit of {limit} "
                       f"(use --exact or --exact-limit)", EXIT_GUARD)


# ---------------------------------------------------------------- solve / count / verify


def _exact_solution(inst: Instance) -> Optional[Solution]:
    b = inst.board
    if isinstance(b, Shapeless):
        roots = [inst] if b.rooted else [
            Instance(Shapeless(True, inst.tiles[0].id, o), inst.tiles, inst.rule)
            for o in (range(4) if inst.rule in (Rule.STRICT_LESS, Rule.LESS_OR_EQ) else (0,))]
        for r in roots:
            _n, sols = oracles.enumerate_shapeless(r, collect=True, limit=1)
            if sols:
                return sols[0]
        return None
    return next(oracles.iter_strip_solutions(inst), None)


def _solve(inst: Instance, args) -> Optional[Solution]:
    b = inst.board
    if not inst.tiles:
        return Solution(cells=()) if isinstance(b, Shapeless) else Solution(placements=())
    if inst.rule in (Rule.LESS_OR_EQ, Rule.STRICT_LESS) and isinstance(b, (Rect, Strip)):
        try:
            return order_solvers.solve(inst)
        except ModelError:
            pass  # outside the polynomial cases; fall through to search
    if isinstance(b, LegStrip):
        return tri_solver.solve_leg_contact(inst)
    _guard(args, len(inst.tiles), TILE_LIMIT, "tiles")
    return _exact_solution(inst)


def cmd_solve(args) -> int:
    inst = _load(args.instance, Instance)
    sol = _solve(inst, args)
    if sol is None:
        print("UNSAT")
        return EXIT_NO
    v = verify(inst, sol)
    if not v.ok:
        raise CliError(f"internal error: solver output failed verification ({v})", EXIT_NO)
    _write(args.output, sol)
    return EXIT_OK


def cmd_count(args) -> int:
    inst = _load(args.instance, Instance)
    b = inst.board
    if isinstance(b, Shapeless) and not b.rooted:
        raise CliError("unrooted shapeless instances have infinitely many solutions; root one tile",
                       EXIT_PARSE)
    _guard(args, len(inst.tiles), TILE_LIMIT, "tiles")
    try:
        if isinstance(b, Shapeless):
            n = oracles.enumerate_shapeless(inst, limit=args.limit)
        else:
            n = oracles.count_strip_solutions(inst, limit=args.limit)
    except oracles.OracleError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    print(n)
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _load(args.instance, Instance)
    sol = _load(args.solution, Solution)
    v = verify(inst, sol)
    print(v)
    return EXIT_OK if v.ok else EXIT_NO


# ---------------------------------------------------------------- reduce


def _vertex(g, name) -> Hashable:
    if name in set(g.vertices):
        return name
    for v in g.vertices:
        if str(v) == str(name):
            return v
    raise CliError(f"no vertex named {name!r}", EXIT_PARSE)


def _sidecar(path: str) -> Optional[dict]:
    if path == "-":
        return None
    try:
        with open(path + ".cert.json", encoding="utf-8") as fh:
            return json.load(fh).get("data")
    except (OSError, ValueError):
        return None


def _endpoints(args, g):
    s, t = args.s, args.t
    if s is None or t is None:
        cert = _sidecar(args.input) or {}
        s = cert.get("s") if s is None else s
        t = cert.get("t") if t is None else t
    return (None if s is None else _vertex(g, s)), (None if t is None else _vertex(g, t))


def _reduce(args):
    """Return (target object, certificate data or None)."""
    st = args.stage
    if st == "e1n":
        f = _load(args.input, Cnf)
        out = sat.enforce_e1n(f)
        return out, {"variable_map": [[v, w] for v, w in sat.e1n_variable_map(f).items()]}
    if st == "litmatch":
        f = _load(args.input, Cnf)
        return sat.to_literal_matching(f), {"source_vars": f.nvars}
    if st == "ipc":
        f = _load(args.input, Cnf)
        p = sat.lm_to_ipc(f)
        return p, {"clause_coordinates": [[k, c] for k, c in sat.clause_coordinates(f).items()]}
    if st == "lt-strip":
        p = _load(args.input, Ipc)
        return sat.ipc_to_lt_strip(p), {"pair_tiles": [f"pair{j}" for j in range(len(p.pairs))]}
    if st == "ham-cycle":
        f = _load(args.input, Cnf)
        gg = hamilton.one_in_three_to_ham_cycle(f)
        return gg.graph, {"var_edges": [[v, list(e)] for v, e in gg.var_edges.items()],
                          "clause_vertices": [[k, list(c)] for k, c in gg.clause_vertices.items()]}
    if st == "ham-path":
        g = _load(args.input, MultiDigraph)
        cut = hamilton.forced_edge(g)
        h, s, t = hamilton.ham_cycle_to_ham_path(g)
        return h, {"s": s, "t": t, "cut_edge": cut}
    if st == "square-strip":
        g = _load(args.input, MultiDigraph)
        s, t = _endpoints(args, g)
        if s is None or t is None:
            raise CliError("square-strip needs --s and --t (or a ham-path sidecar)", EXIT_PARSE)
        inst = hamilton.ham_path_to_square_strip(g, s, t, signed=not args.unsigned,
                                                 boundary=not args.no_boundary)
        return inst, {"s": s, "t": t}
    if st == "eqtri-strip":
        g = _load(args.input, MultiGraph)
        s, t = _endpoints(args, g)
        inst = hamilton.ham_path_to_eqtri_strip(g, s, t, signed=not args.unsigned,
                                                first_points=args.first_points)
        return inst, None
    if st == "hyp-tri":
        return hamilton.square_strip_to_hyp_tri(_load(args.input, Instance)), None
    if st == "leg-strip":
        g = _load(args.input, MultiGraph)
        if g.directed:
            raise PreconditionError("not an undirected graph")
        inst, mult = legs.euler_to_leg_strip(g, signed=args.signed)
        return inst, {"multiplicity": mult}
    if st == "shapeless":
        inst = _load(args.input, Instance)
        out = frame.strip_to_shapeless(inst, rooted=not args.unrooted)
        return out, {"corridor_y": frame.CORRIDOR_Y, "corridor_x": [1, inst.board.n]}
    if st == "geo-edge":
        return geography.vertex_geo_to_edge_geo(_load(args.input, GeoInstance)), None
    if st == "partizan":
        return geography.partizanize(_load(args.input, GeoInstance), args.mode), None
    if st == "match-game":
        return geography.geo_to_matching_game(_load(args.input, GeoInstance), args.pools), None
    raise CliError(f"unknown stage {st!r}", EXIT_PARSE)


def cmd_reduce(args) -> int:
    try:
        out, cert = _reduce(args)
    except (PreconditionError, order_solvers.PreconditionError, GameError, GraphError) as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    _write(args.output, out)
    if cert is not None and args.output != "-":
        _write(args.output + ".cert.json",
               {"kind": "certificate", "version": formats.VERSION, "stage": args.stage, "data": cert})
    return EXIT_OK


# ---------------------------------------------------------------- games


def _show(outcome) -> str:
    if outcome.move is None:
        return outcome.winner
    return f"{outcome.winner} {json.dumps(outcome.move)}"


def cmd_game(args) -> int:
    try:
        if args.game_cmd == "solve":
            g = _load(args.file, GameInstance)
            _guard(args, len(g.tiles), TILE_LIMIT, "tiles")
            res = solve_match_game(g)
            if res.move is not None:
                res = type(res)(res.winner, {"tile": res.move[0], "rotation": res.move[1]})
        else:
            geo = _load(args.file, GeoInstance)
            res = None
            if not geo.graph.directed and geo.rule == "vertex" and geo.edge_colors is None:
                try:
                    res = solve_geography_matching(geo)
                except GameError:
                    res = None  # not bipartite; search instead
            if res is None:
                _guard(args, len(geo.graph.edges), EDGE_LIMIT, "edges")
                res = solve_geography(geo)
                if res.move is not None:
                    res = type(res)(res.winner, {"edge": res.move[0], "to": res.move[1]})
            elif res.move is not None:
                res = type(res)(res.winner, {"to": res.move})
    except GameError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    print(_show(res))
    return EXIT_OK


# ---------------------------------------------------------------- gen


def _gen(kind: str, rng: random.Random, size: Optional[int], signed: bool):
    if kind == "rect-leq":
        m = size or rng.randint(1, 8)
        return generate.rect_leq(rng, m, size or rng.randint(1, 8))
    if kind == "strip-lt":
        return generate.strip_lt(rng, size or rng.randint(1, 10))
    if kind == "leg-tiles":
        return generate.leg_tiles(rng, size or rng.randint(1, 6), signed=signed)
    if kind == "cnf-n3p":
        return generate.cnf_n3p(rng, max_vars=size or 4)
    if kind == "digraph-3reg":
        n = size or 2 * rng.randint(1, 4)
        if n % 2:
            raise CliError("digraph-3reg needs an even --size", EXIT_PARSE)
        return generate.cubic_digraph(rng, n)
    if kind == "geo":
        return generate.geo(rng, n=size or 5)
    raise CliError(f"unknown kind {kind!r}", EXIT_PARSE)


def cmd_gen(args) -> int:
    _write(args.output, _gen(args.kind, random.Random(args.seed), args.size, args.signed))
    return EXIT_OK


# ---------------------------------------------------------------- main

GEN_KINDS = ("rect-leq", "strip-lt", "leg-tiles", "cnf-n3p", "digraph-3reg", "geo")
STAGES = ("e1n", "litmatch", "ipc", "lt-strip", "ham-cycle", "ham-path", "square-strip", "eqtri-strip",
          "hyp-tri", "leg-strip", "shapeless", "geo-edge", "partizan", "match-game")


def _guard_flags(p):
    p.add_argument("--exact", action="store_true", help="lift the size guard on exact search")
    p.add_argument("--exact-limit", type=int, default=None, metavar="N",
                   help=f"size guard (default {TILE_LIMIT} tiles / {EDGE_LIMIT} graph edges)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="edgematch", description="Edge-matching puzzle toolkit.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("solve", help="solve an instance")
    p.add_argument("instance")
    p.add_argument("-o", "--output", default="-")
    _guard_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("count", help="count solutions exactly")
    p.add_argument("instance")
    p.add_argument("--limit", type=int, default=None)
    _guard_flags(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="check a solution")
    p.add_argument("instance")
    p.add_argument("solution")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", help="apply a reduction stage")
    p.add_argument("stage", choices=STAGES)
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--s")
    p.add_argument("--t")
    p.add_argument("--unsigned", action="store_true")
    p.add_argument("--signed", action="store_true")
    p.add_argument("--no-boundary", action="store_true")
    p.add_argument("--first-points", choices=("up", "down"), default="up")
    p.add_argument("--unrooted", action="store_true")
    p.add_argument("--mode", default="vertex_from_bipartition",
                   choices=("vertex_from_bipartition", "edge_from_direction", "undirect_edge_partizan"))
    p.add_argument("--pools", choices=("shared", "per_player"), default="shared")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("game", help="decide a game")
    gs = p.add_subparsers(dest="game_cmd", required=True)
    for name in ("solve", "geo"):
        q = gs.add_parser(name)
        q.add_argument("file")
        _guard_flags(q)
        q.set_defaults(func=cmd_game)

    p = sub.add_parser("gen", help="random instance")
    p.add_argument("kind", choices=GEN_KINDS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=int, default=None)
    p.add_argument("--signed", action="store_true")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        print(f"edgematch: {exc}", file=sys.stderr)
        return exc.code
    except (PreconditionError, ModelError) as exc:
        print(f"edgematch: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
