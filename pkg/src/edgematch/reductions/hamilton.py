"""Hamiltonicity gadgets and the tile sets that simulate Hamiltonian paths.

Graphs built here use string vertex and edge ids so they serialize cleanly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Tuple

from ..euler import MultiDigraph, MultiGraph
from ..model import (EqTriStrip, EqTriTile, HypStrip, Instance, RightTriTile, Rule, Signed,
                     SquareTile, Strip, Unsigned)
from .sat import Cnf, PreconditionError


@dataclass(frozen=True)
class GadgetGraph:
    """A gadget digraph with the bookkeeping needed to read certificates back."""

    graph: MultiDigraph
    var_edges: Dict[int, Tuple[str, str]] = field(default_factory=dict)
    clause_vertices: Dict[int, Tuple[str, ...]] = field(default_factory=dict)
    s: Optional[str] = None
    t: Optional[str] = None


class _Builder:
    def __init__(self):
        self.vertices: List[str] = []
        self.edges: Dict[str, Tuple[str, str]] = {}

    def v(self, name: str) -> str:
        self.vertices.append(name)
        return name

    def e(self, eid: str, u: str, w: str) -> str:
        if eid in self.edges:
            raise AssertionError(f"duplicate edge id {eid}")
        self.edges[eid] = (u, w)
        return eid

    def graph(self) -> MultiDigraph:
        return MultiDigraph(tuple(self.vertices), tuple((e, u, w) for e, (u, w) in self.edges.items()))


# ---------------------------------------------------------------- exclusive-or


# internal arcs of the exclusive-or gadget; vertex k is ``{name}.{k}``
_XOR_ARCS = (("i", 1, 5), ("05", 0, 5), ("23", 2, 3), ("24", 2, 4),
             ("31", 3, 1), ("40", 4, 0), ("52", 5, 2))


def _xor(b: _Builder, name: str, first: str, second: str) -> str:
    """Replace edges ``first`` and ``second`` so a cycle uses exactly one of them.

    Returns the id of an internal edge that is traversed exactly when
    ``first`` is, so further links to ``first`` can hang off it.
    """
    u1, w1 = b.edges.pop(first)
    u2, w2 = b.edges.pop(second)
    x = [b.v(f"{name}.{k}") for k in range(6)]
    b.e(f"{name}.A", u1, x[3])
    b.e(f"{name}.B", x[0], w1)
    b.e(f"{name}.C", u2, x[4])
    b.e(f"{name}.D", x[1], w2)
    for tag, p, q in _XOR_ARCS:
        b.e(f"{name}.{tag}", x[p], x[q])
    return f"{name}.i"


def xor_template() -> Tuple[MultiDigraph, Dict[str, Tuple[str, str]]]:
    """The gadget in isolation: ports ``a->b`` (first edge) and ``c->d`` (second)."""
    b = _Builder()
    for v in "abcd":
        b.v(v)
    b.e("first", "a", "b")
    b.e("second", "c", "d")
    _xor(b, "x", "first", "second")
    ports = {"first": ("a", "b"), "second": ("c", "d")}
    return b.graph(), ports


# ---------------------------------------------------------------- 1-in-3 SAT to cycles


def one_in_three_to_ham_cycle(f: Cnf) -> GadgetGraph:
    """Hamiltonian cycles of the output correspond one-to-one with 1-in-3 models of ``f``."""
    for k, c in enumerate(f.clauses):
        if len(c) != 3 or any(x <= 0 for x in c):
            raise PreconditionError(f"not positive 1-in-3: clause {k} is {c}")
    b = _Builder()
    var_edges = {}
    for i in range(1, f.nvars + 1):
        p, q = b.v(f"p{i}"), b.v(f"q{i}")
        var_edges[i] = (b.e(f"T{i}", p, q), b.e(f"F{i}", p, q))
    clause_vertices = {}
    entries, exits = [], []
    for k in range(len(f.clauses)):
        a = [b.v(f"c{k}a{i}") for i in range(3)]
        bb = [b.v(f"c{k}b{i}") for i in range(3)]
        ee = [b.v(f"c{k}e{i}") for i in range(3)]
        ff = [b.v(f"c{k}f{i}") for i in range(3)]
        clause_vertices[k] = tuple(a + bb + ee + ff)
        for i in range(3):
            b.e(f"c{k}r{i}", a[i], bb[i])
            b.e(f"c{k}ae{i}", a[i], ee[i])
            b.e(f"c{k}fb{i}", ff[i], bb[i])
        b.e(f"c{k}s1", bb[0], a[1])
        b.e(f"c{k}s2", bb[1], a[2])
        loop = [ff[0], ee[0], ff[2], ee[2], ff[1], ee[1]]
        for j in range(6):
            b.e(f"c{k}l{j}", loop[j], loop[(j + 1) % 6])
        entries.append(a[0])
        exits.append(bb[2])
    # one cycle through the variable chain and then every clause in turn
    order = [(f"q{i}", f"p{i + 1}") for i in range(1, f.nvars)]
    tail = f"q{f.nvars}" if f.nvars else None
    head = "p1" if f.nvars else None
    chain = []
    if tail is not None:
        chain.append(tail)
    for a0, b2 in zip(entries, exits):
        chain += [a0, b2]
    if head is not None:
        chain.append(head)
    for j, (u, w) in enumerate(order):
        b.e(f"n{j + 1}", u, w)
    for j in range(0, len(chain) - 1, 2):
        b.e(f"j{j // 2}", chain[j], chain[j + 1])
    # link every literal occurrence to its variable's true edge
    latest = {i: var_edges[i][0] for i in var_edges}
    n = 0
    for k, c in enumerate(f.clauses):
        for pos, lit in enumerate(c):
            latest[lit] = _xor(b, f"x{n}", latest[lit], f"c{k}r{pos}")
            n += 1
    return GadgetGraph(b.graph(), var_edges, clause_vertices)


def ham_cycle_to_assignment(gg: GadgetGraph, cycle_edges) -> Dict[int, bool]:
    """Read a model off the set of edge ids used by a Hamiltonian cycle.

    A variable's true edge may have been replaced by a gadget, so truth is
    read from the false edge, which is never replaced.
    """
    used = set(cycle_edges)
    return {i: f not in used for i, (_t, f) in gg.var_edges.items()}


# ---------------------------------------------------------------- cycles to s-t paths


def _check_cubic(g: MultiDigraph, allow=()):
    ins, outs = g.in_degree(), g.out_degree()
    for v in g.vertices:
        if v in allow:
            continue
        if ins[v] + outs[v] != 3 or ins[v] > 2 or outs[v] > 2:
            raise PreconditionError(
                f"not 3-regular with in/out degree at most 2: vertex {v} has in {ins[v]}, out {outs[v]}")


def _fresh(taken, base: str) -> str:
    name = base
    while name in taken:
        name = "_" + name
    return name


def forced_edge(g: MultiDigraph) -> Hashable:
    """An edge every Hamiltonian cycle must use."""
    ins, outs = g.in_degree(), g.out_degree()
    for v in g.vertices:
        if ins[v] == 2:
            for e, u, _w in g.edges:
                if u == v:
                    return e
    for v in g.vertices:
        if outs[v] == 2:
            for e, _u, w in g.edges:
                if w == v:
                    return e
    raise PreconditionError("not 3-regular: no forced edge")


def ham_cycle_to_ham_path(g: MultiDigraph) -> Tuple[MultiDigraph, str, str]:
    """Cut a forced edge ``u->v`` and cap the ends: ``u`` runs into ``t``, ``s`` runs into ``v``."""
    if not g.vertices:
        raise PreconditionError("not 3-regular: empty graph")
    _check_cubic(g)
    cut = forced_edge(g)
    taken_v = {str(v) for v in g.vertices}
    taken_e = {str(e) for e, _u, _w in g.edges}
    s, s1, s2 = (_fresh(taken_v, x) for x in ("s", "s1", "s2"))
    t, t1, t2 = (_fresh(taken_v, x) for x in ("t", "t1", "t2"))
    eid = {x: _fresh(taken_e, x) for x in
           ("s>s2", "s2>s1", "s2>s", "s1>s", "s1>v", "u>t1", "t>t1", "t>t2", "t1>t2", "t2>t")}
    edges = []
    u = v = None
    for e, a, b in g.edges:
        if e == cut:
            u, v = a, b
        else:
            edges.append((e, a, b))
    edges += [
        (eid["u>t1"], u, t1), (eid["t1>t2"], t1, t2), (eid["t2>t"], t2, t),
        (eid["t>t1"], t, t1), (eid["t>t2"], t, t2),
        (eid["s>s2"], s, s2), (eid["s2>s1"], s2, s1), (eid["s1>v"], s1, v),
        (eid["s2>s"], s2, s), (eid["s1>s"], s1, s),
    ]
    out = MultiDigraph(tuple(g.vertices) + (s, s1, s2, t, t1, t2), tuple(edges))
    return out, s, t


# ---------------------------------------------------------------- square strips


def _labeler(signed: bool):
    if signed:
        return lambda c, sign: Signed(c, sign)
    return lambda c, sign: Unsigned(c)


def ham_path_to_square_strip(g: MultiDigraph, s: Hashable, t: Hashable, signed: bool = True,
                             boundary: bool = True) -> Instance:
    """Three tiles per vertex; strip solutions follow Hamiltonian s-t paths.

    A vertex with one in-edge gets an entry tile and one tile per out-edge;
    a vertex with two in-edges gets one tile per in-edge and an exit tile.
    Edge ``u->w`` shows ``-e`` on a tile of ``u`` and ``+e`` on a tile of ``w``.
    """
    ins, outs = g.in_degree(), g.out_degree()
    _check_cubic(g, allow=(s, t))
    if outs[s] != 1 or ins[t] != 1 or ins[s] + outs[s] != 3 or ins[t] + outs[t] != 3:
        raise PreconditionError("not an s-t instance: s needs outdegree 1 and t indegree 1")
    lab = _labeler(signed)
    in_e = {v: [] for v in g.vertices}
    out_e = {v: [] for v in g.vertices}
    for e, u, w in g.edges:
        out_e[u].append(e)
        in_e[w].append(e)
    tiles = []
    for v in g.vertices:
        vI, vO, vX = f"vI({v})", f"vO({v})", f"vX({v})"
        if ins[v] == 1:
            e1 = in_e[v][0]
            tiles.append(SquareTile(north=lab(vX, -1), east=lab(vI, -1), south=lab(vX, -1),
                                    west=lab(f"edge({e1})", 1), id=f"in({v},{e1})"))
            if v != t:
                for e in out_e[v]:
                    tiles.append(SquareTile(north=lab(vO, -1), east=lab(vI, 1),
                                            south=lab(f"edge({e})", -1), west=lab(vO, 1),
                                            id=f"out({v},{e})"))
        else:
            if v != s:
                for e in in_e[v]:
                    tiles.append(SquareTile(north=lab(vI, 1), east=lab(vI, -1), south=lab(vO, -1),
                                            west=lab(f"edge({e})", 1), id=f"in({v},{e})"))
            e3 = out_e[v][0]
            tiles.append(SquareTile(north=lab(vX, -1), east=lab(f"edge({e3})", -1),
                                    south=lab(vO, -1), west=lab(vO, 1), id=f"out({v},{e3})"))
    left = lab(f"vO({s})", -1) if boundary else None
    rule = Rule.SIGNED_OPP if signed else Rule.UNSIGNED_EQ
    return Instance(Strip(len(tiles), left), tuple(tiles), rule)


def square_strip_to_path(g: MultiDigraph, placements) -> List[Hashable]:
    """Vertex order of the Hamiltonian path encoded by a strip solution."""
    order = []
    for tid, _o in placements:
        v = tid[tid.index("(") + 1:tid.rindex(",")]
        if not order or order[-1] != v:
            order.append(v)
    names = {str(v): v for v in g.vertices}
    return [names[v] for v in order]


# ---------------------------------------------------------------- equilateral strips


def attach_pendants(g: MultiGraph, u: Hashable, v: Hashable, remove: Hashable = None,
                    s: str = "s", t: str = "t") -> Tuple[MultiGraph, str, str]:
    """Add pendant vertices ``s``-``u`` and ``t``-``v``, optionally deleting edge ``remove``.

    With ``remove`` an edge ``{u, v}`` at a degree-2 vertex, Hamiltonian
    cycles of ``g`` match Hamiltonian s-t paths of the result one to one.
    """
    taken_v = {str(x) for x in g.vertices}
    taken_e = {str(e) for e, _a, _b in g.edges}
    s, t = _fresh(taken_v, s), _fresh(taken_v, t)
    es, et = _fresh(taken_e, f"{s}-{u}"), _fresh(taken_e, f"{t}-{v}")
    edges = [(e, a, b) for e, a, b in g.edges if e != remove]
    edges += [(es, s, u), (et, t, v)]
    return MultiGraph(tuple(g.vertices) + (s, t), tuple(edges)), s, t


def ham_path_to_eqtri_strip(g: MultiGraph, s: Hashable = None, t: Hashable = None,
                            signed: bool = True, first_points: str = "up") -> Instance:
    """One triangle per vertex-edge incidence; strip solutions follow Hamiltonian paths.

    Edges are oriented as listed (``u`` to ``v``); the triangle of ``v`` on
    edge ``e`` carries ``+e`` when ``e`` points into ``v``.  With ``s`` and
    ``t`` (both of degree 1) the strip starts at ``s`` and ends at ``t``.
    """
    if (s is None) != (t is None):
        raise PreconditionError("give both s and t or neither")
    deg = g.degree()
    inc: Dict[Hashable, List[Tuple[str, int]]] = {v: [] for v in g.vertices}
    for e, u, v in g.edges:
        if u == v:
            raise PreconditionError(f"self-loop {e} not allowed")
        inc[u].append((f"edge({e})", -1))
        inc[v].append((f"edge({e})", 1))
    for v in g.vertices:
        if v in (s, t):
            if deg[v] != 1:
                raise PreconditionError(f"endpoint {v} must have degree 1")
        elif not 2 <= deg[v] <= 3:
            raise PreconditionError(f"vertex {v} has degree {deg[v]}; need 2 or 3")
    lab = _labeler(signed)
    tiles = []
    for v in g.vertices:
        if v in (s, t):
            continue
        sides = list(inc[v])
        if len(sides) == 2:
            sides.append((f"half({v})", 1))
        for c, sign in sides:
            tiles.append(EqTriTile((lab(f"v({v})", 1), lab(f"v({v})", -1), lab(c, sign)),
                                   id=f"{v}:{c}"))
    left = None
    if s is not None:
        (c1, g1), = inc[s]
        us = lab(f"U({s})", 1)
        if first_points == "up":
            edges = (lab(f"v({s})", 1), lab(c1, g1), us)
        else:
            edges = (lab(f"v({s})", 1), us, lab(c1, g1))
        tiles.insert(0, EqTriTile(edges, id=f"{s}:{c1}"))
        (c2, g2), = inc[t]
        tiles.append(EqTriTile((lab(c2, g2), lab(f"U({t})", 1), lab(f"U'({t})", 1)),
                               id=f"{t}:{c2}"))
        left = lab(f"v({s})", -1)
    rule = Rule.SIGNED_OPP if signed else Rule.UNSIGNED_EQ
    return Instance(EqTriStrip(len(tiles), left, first_points), tuple(tiles), rule)


# ---------------------------------------------------------------- hypotenuse strips


def square_strip_to_hyp_tri(inst: Instance) -> Instance:
    """Cut every square along a diagonal; the two halves share a private hypotenuse color."""
    b = inst.board
    if not isinstance(b, Strip) or b.right is not None:
        raise PreconditionError("not a square strip without right boundary")
    signed = inst.rule is Rule.SIGNED_OPP
    if inst.rule not in (Rule.SIGNED_OPP, Rule.UNSIGNED_EQ):
        raise PreconditionError("not a signed or unsigned strip")
    tiles = []
    for k, sq in enumerate(inst.tiles):
        h = f"U({sq.id})"
        ha, hb = (Signed(h, 1), Signed(h, -1)) if signed else (Unsigned(h), Unsigned(h))
        tiles.append(RightTriTile(sq.west, sq.north, ha, id=f"{sq.id}/a"))
        tiles.append(RightTriTile(sq.east, sq.south, hb, id=f"{sq.id}/b"))
    return Instance(HypStrip(b.n, b.left), tuple(tiles), inst.rule)


def hyp_to_square_placements(placements) -> List[Tuple[str, int]]:
    """Map a hypotenuse-strip solution back to square placements."""
    out = []
    for k in range(0, len(placements), 2):
        (ta, ca), (tb, cb) = placements[k], placements[k + 1]
        tid, half = ta.rsplit("/", 1)
        out.append((tid, ca if half == "a" else cb))
    return out
