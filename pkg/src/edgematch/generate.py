"""Reproducible random instances for tests, benchmarks and ``edgematch gen``."""

from __future__ import annotations

import random
from typing import List, Optional

from .euler import MultiDigraph, MultiGraph
from .games import GeoInstance
from .model import Instance, LegStrip, Num, Rect, RightTriTile, Rule, Signed, SquareTile, Strip, Unsigned
from .reductions.sat import Cnf


def rect_leq(rng: random.Random, m: int, n: int, hi: int = 99) -> Instance:
    tiles = [SquareTile(*(Num(rng.randint(0, hi)) for _ in range(4)), id=k) for k in range(m * n)]
    return Instance(Rect(m, n), tuple(tiles), Rule.LESS_OR_EQ)


def rect_lt_distinct(rng: random.Random, m: int, n: int) -> Instance:
    labels = rng.sample(range(1, 8 * m * n + 1), 4 * m * n)
    tiles = [SquareTile(*(Num(x) for x in labels[4 * k:4 * k + 4]), id=k) for k in range(m * n)]
    return Instance(Rect(m, n), tuple(tiles), Rule.STRICT_LESS)


def strip_lt(rng: random.Random, n: int, hi: int = 20) -> Instance:
    """Strict-order strip where every tile has an unequal pair of opposite sides."""
    tiles = []
    while len(tiles) < n:
        s = [rng.randint(0, hi) for _ in range(4)]
        if s[0] != s[2] or s[1] != s[3]:
            tiles.append(SquareTile(*(Num(x) for x in s), id=len(tiles)))
    return Instance(Strip(n), tuple(tiles), Rule.STRICT_LESS)


def leg_tiles(rng: random.Random, n: int, colors: int = 3, signed: bool = False,
              left_acute: str = "bottom") -> Instance:
    names = "abcdefgh"[:colors]

    def lab():
        c = rng.choice(names)
        return Signed(c, rng.choice((1, -1))) if signed else Unsigned(c)

    hyp = Signed("H", 1) if signed else Unsigned("H")
    tiles = [RightTriTile(lab(), lab(), hyp, id=k) for k in range(n)]
    rule = Rule.SIGNED_OPP if signed else Rule.UNSIGNED_EQ
    return Instance(LegStrip(n, left_acute), tuple(tiles), rule)


def cnf_n3p(rng: random.Random, max_vars: int = 4, max_clauses: int = 4, tries: int = 1000) -> Cnf:
    """A formula with no all-positive 3-clause, one negative and at most two
    positive occurrences per variable."""
    for _ in range(tries):
        nv = rng.randint(1, max_vars)
        m = rng.randint(1, max_clauses)
        lits: List[int] = []
        for v in range(1, nv + 1):
            lits.append(-v)
            lits += [v] * rng.randint(0, 2)
        rng.shuffle(lits)
        if len(lits) > 3 * m:
            continue
        clauses: List[List[int]] = [[] for _ in range(m)]
        ok = True
        for lit in lits:
            slots = [c for c in clauses if len(c) < 3 and abs(lit) not in map(abs, c)]
            if not slots:
                ok = False
                break
            rng.choice(slots).append(lit)
        if not ok or any(not c for c in clauses):
            continue
        f = Cnf(nv, tuple(tuple(c) for c in clauses))
        if f.n3p and f.two_p and f.e1n:
            return f
    raise RuntimeError("could not sample a formula")


def cubic_digraph(rng: random.Random, n: int, loops: bool = False) -> MultiDigraph:
    """Random digraph where every vertex has in/out degrees (1, 2) or (2, 1)."""
    if n % 2:
        raise ValueError("need an even number of vertices")
    while True:
        kind = [2] * (n // 2) + [1] * (n // 2)
        rng.shuffle(kind)
        outs = [v for v in range(n) for _ in range(kind[v])]
        ins = [v for v in range(n) for _ in range(3 - kind[v])]
        rng.shuffle(ins)
        pairs = list(zip(outs, ins))
        if not loops and any(u == w for u, w in pairs):
            continue
        return MultiDigraph(tuple(f"v{i}" for i in range(n)),
                            tuple((f"e{k}", f"v{u}", f"v{w}") for k, (u, w) in enumerate(pairs)))


def random_graph(rng: random.Random, n: int, m: int, directed: bool, loops: bool = True) -> MultiGraph:
    edges = []
    for k in range(m):
        u = rng.randrange(n)
        w = rng.randrange(n)
        while not loops and w == u and n > 1:
            w = rng.randrange(n)
        edges.append((f"e{k}", u, w))
    cls = MultiDigraph if directed else MultiGraph
    return cls(tuple(range(n)), tuple(edges))


def even_graph(rng: random.Random, max_edges: int = 6, max_vertices: int = 4) -> MultiGraph:
    """Connected graph with all degrees even, built as a union of closed walks."""
    while True:
        n = rng.randint(1, max_vertices)
        edges = []
        while len(edges) < max_edges:
            k = rng.randint(1, max_edges - len(edges))
            if k == 1:
                v = rng.randrange(n)
                edges.append((v, v))
                continue
            walk = [rng.randrange(n) for _ in range(k)]
            edges += [(walk[i], walk[(i + 1) % k]) for i in range(k)]
            if rng.random() < 0.5:
                break
        g = MultiGraph.from_pairs(edges, vertices=range(n))
        used = sorted({x for e in edges for x in e})
        g = MultiGraph(tuple(used), g.edges)
        from .euler import _connected
        if _connected(g.vertices, g.edges) and len(g.edges) <= max_edges:
            return g


def geo(rng: random.Random, n: int = 5, m: int = 6, directed: bool = True, rule: str = "vertex",
        colors: Optional[str] = None) -> GeoInstance:
    g = random_graph(rng, n, m, directed, loops=rule == "edge")
    vc = ec = None
    if colors == "vertex":
        vc = {v: rng.choice(("P1", "P2")) for v in g.vertices}
    elif colors == "edge":
        ec = {e: rng.choice(("P1", "P2")) for e, _u, _v in g.edges}
    return GeoInstance(g, 0, rule, vc, ec)
