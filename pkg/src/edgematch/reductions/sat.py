"""Restricted 3SAT, interval-pair cover, and the chain down to 1 x n strict strips.

Literals are nonzero integers in DIMACS style: ``+i`` is variable ``i`` and
``-i`` its negation, with variables numbered from 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from ..euler import MultiGraph
from ..model import Instance, Num, Rule, Solution, SquareTile, Strip, orient


class PreconditionError(ValueError):
    """Input is outside the class a reduction accepts; message names the predicate."""


@dataclass(frozen=True)
class Cnf:
    nvars: int
    clauses: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        cl = tuple(tuple(int(x) for x in c) for c in self.clauses)
        object.__setattr__(self, "clauses", cl)
        for c in cl:
            if len(c) > 3:
                raise ValueError(f"clause {c} has more than three literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.nvars:
                    raise ValueError(f"literal {lit} out of range")

    def occurrences(self) -> Dict[int, Tuple[List[int], List[int]]]:
        """variable -> (clauses with it positive, clauses with it negative)."""
        occ = {v: ([], []) for v in range(1, self.nvars + 1)}
        for k, c in enumerate(self.clauses):
            for lit in c:
                occ[abs(lit)][0 if lit > 0 else 1].append(k)
        return occ

    @property
    def n3p(self) -> bool:
        # no clause made of three positive literals
        return all(not (len(c) == 3 and all(x > 0 for x in c)) for c in self.clauses)

    @property
    def two_p(self) -> bool:
        return all(len(p) <= 2 for p, _ in self.occurrences().values())

    @property
    def e1n(self) -> bool:
        return all(len(n) == 1 for _, n in self.occurrences().values())

    @property
    def all_positive(self) -> bool:
        return all(x > 0 for c in self.clauses for x in c)

    def satisfied_by(self, assignment: Mapping[int, bool]) -> bool:
        return all(any(assignment[abs(x)] == (x > 0) for x in c) for c in self.clauses)


@dataclass(frozen=True)
class Ipc:
    n: int
    pairs: Tuple[Tuple[Tuple[int, int], Tuple[int, int]], ...]

    def __post_init__(self):
        ps = tuple((tuple(map(int, p)), tuple(map(int, q))) for p, q in self.pairs)
        object.__setattr__(self, "pairs", ps)
        for (a, b), (c, d) in ps:
            if not (1 <= a <= b <= self.n and 1 <= c <= d <= self.n):
                raise ValueError(f"bad interval pair {((a, b), (c, d))} for universe 1..{self.n}")

    def covers(self, choice: Sequence[int]) -> bool:
        """``choice[j]`` is 0 for the first interval of pair ``j``, 1 for the second."""
        hit = [False] * (self.n + 1)
        for j, pair in enumerate(self.pairs):
            lo, hi = pair[choice[j]]
            for i in range(lo, hi + 1):
                hit[i] = True
        return all(hit[1:])


UNSAT = Cnf(1, ((1,), (-1,)))


def _require(cond: bool, name: str):
    if not cond:
        raise PreconditionError(f"not {name}")


# ---------------------------------------------------------------- E1N


def _e1n_survivors(f: Cnf) -> List[int]:
    """Indices of clauses left after repeatedly satisfying negation-free variables."""
    alive = [True] * len(f.clauses)
    changed = True
    while changed:
        changed = False
        negs = {-x for k, c in enumerate(f.clauses) if alive[k] for x in c if x < 0}
        for k, c in enumerate(f.clauses):
            if alive[k] and any(x > 0 and x not in negs for x in c):
                alive[k] = False
                changed = True
    return [k for k in range(len(f.clauses)) if alive[k]]


def enforce_e1n(f: Cnf) -> Cnf:
    """Set every variable without a negative occurrence to true, then renumber."""
    _require(f.n3p, "N3P")
    for v, (p, n) in f.occurrences().items():
        if len(p) + len(n) > 3 or len(n) > 1:
            raise PreconditionError(f"not 3-1N: variable {v} has {len(p)}+/{len(n)}- occurrences")
    if any(len(c) == 0 for c in f.clauses):
        return UNSAT
    kept = [f.clauses[k] for k in _e1n_survivors(f)]
    used = sorted({abs(x) for c in kept for x in c})
    ren = {v: i + 1 for i, v in enumerate(used)}
    return Cnf(len(used), tuple(tuple((1 if x > 0 else -1) * ren[abs(x)] for x in c) for c in kept))


def e1n_variable_map(f: Cnf) -> Dict[int, Optional[int]]:
    """Original variable -> variable in ``enforce_e1n(f)`` (``None`` when eliminated, i.e. true)."""
    if any(len(c) == 0 for c in f.clauses):
        return {v: None for v in range(1, f.nvars + 1)}
    used = sorted({abs(x) for k in _e1n_survivors(f) for x in f.clauses[k]})
    ren = {v: i + 1 for i, v in enumerate(used)}
    return {v: ren.get(v) for v in range(1, f.nvars + 1)}


# ---------------------------------------------------------------- literal matching


def shared_literal_graph(f: Cnf) -> MultiGraph:
    """Clause vertices ``0..m-1``; one edge ``(lit, i, j)`` per literal shared by clauses i < j."""
    where: Dict[int, List[int]] = {}
    for k, c in enumerate(f.clauses):
        for lit in dict.fromkeys(c):
            where.setdefault(lit, []).append(k)
    edges = []
    for lit in sorted(where, key=lambda x: (abs(x), x < 0)):
        ks = where[lit]
        for a in range(len(ks)):
            for b in range(a + 1, len(ks)):
                edges.append(((lit, ks[a], ks[b]), ks[a], ks[b]))
    return MultiGraph(tuple(range(len(f.clauses))), tuple(edges))


def _orient_components(g: MultiGraph) -> List[Tuple[Hashable, int, int]]:
    """Direct paths from their lower-index end and cycles from their lowest clause."""
    adj: Dict[int, List[Tuple[object, int]]] = {v: [] for v in g.vertices}
    for e, u, v in g.edges:
        adj[u].append((e, v))
        adj[v].append((e, u))
    for v in adj:
        adj[v].sort(key=lambda x: (x[1], str(x[0])))
    used = set()
    seen = set()
    out = []

    def walk(v):
        while True:
            nxt = [(e, w) for e, w in adj[v] if e not in used]
            if not nxt:
                return
            e, w = nxt[0]
            used.add(e)
            out.append((e, v, w))
            v = w

    for v in sorted(adj):
        if v in seen or not adj[v]:
            continue
        comp = []
        stack = [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for _, w in adj[x]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        ends = sorted(x for x in comp if len(adj[x]) == 1)
        walk(ends[0] if ends else min(comp))
    return out


def to_literal_matching(f: Cnf) -> Cnf:
    """Break shared literals with helper variables until clauses share at most pairwise."""
    _require(f.n3p, "N3P")
    _require(f.two_p, "2P")
    _require(f.e1n, "E1N")
    g = shared_literal_graph(f)
    clauses = [list(c) for c in f.clauses]
    helpers = []
    nv = f.nvars
    for (lit, _i, _j), c, d in _orient_components(g):
        nv += 1
        pos = clauses[d].index(lit)
        clauses[d][pos] = nv
        helpers.append((-nv, lit))
    return Cnf(nv, tuple(tuple(c) for c in clauses) + tuple(helpers))


def is_literal_matching(f: Cnf) -> bool:
    deg: Dict[int, int] = {}
    for _e, u, v in shared_literal_graph(f).edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return all(d <= 1 for d in deg.values())


# ---------------------------------------------------------------- interval-pair cover


def clause_coordinates(f: Cnf) -> Dict[int, int]:
    """Clause index -> position on the line 1..m with matched clauses adjacent."""
    g = shared_literal_graph(f)
    mate = {}
    for _e, u, v in g.edges:
        mate[u] = v
        mate[v] = u
    coord = {}
    nxt = 1
    for k in range(len(f.clauses)):
        if k in mate and k not in coord and k < mate[k]:
            coord[k] = nxt
            coord[mate[k]] = nxt + 1
            nxt += 2
    for k in range(len(f.clauses)):
        if k not in coord:
            coord[k] = nxt
            nxt += 1
    return coord


def lm_to_ipc(f: Cnf) -> Ipc:
    """One interval pair per variable: (its negative clause, its positive clauses)."""
    _require(f.n3p, "N3P")
    _require(f.two_p, "2P")
    _require(f.e1n, "E1N")
    _require(is_literal_matching(f), "literal-matching")
    coord = clause_coordinates(f)
    pairs = []
    for v, (pos, neg) in sorted(f.occurrences().items()):
        a = coord[neg[0]]
        first = (a, a)
        if pos:
            cs = sorted(coord[k] for k in pos)
            if cs[-1] - cs[0] > 1:
                raise AssertionError("positive occurrences must sit on adjacent clauses")
            second = (cs[0], cs[-1])
        else:
            second = first
        pairs.append((first, second))
    return Ipc(len(f.clauses), tuple(pairs))


def ipc_to_lt_strip(p: Ipc) -> Instance:
    """Two all-``i`` element tiles per universe element, one tile per interval pair."""
    tiles = []
    for i in range(1, p.n + 1):
        for tag in "ab":
            tiles.append(SquareTile(Num(i), Num(i), Num(i), Num(i), f"elem{i}{tag}"))
    for j, ((a, b), (c, d)) in enumerate(p.pairs):
        tiles.append(SquareTile(north=Num(c - 1), east=Num(b + 1), south=Num(d + 1),
                                west=Num(a - 1), id=f"pair{j}"))
    return Instance(Strip(2 * p.n + len(p.pairs)), tuple(tiles), Rule.STRICT_LESS)


# ---------------------------------------------------------------- certificates


def strip_to_ipc_choice(p: Ipc, solution: Solution) -> Tuple[int, ...]:
    """Pick, for each pair tile, the interval lying along the strip."""
    rot = {tid: o for tid, o in solution.placements}
    return tuple(0 if rot[f"pair{j}"] % 2 == 0 else 1 for j in range(len(p.pairs)))


def ipc_choice_to_assignment(choice: Sequence[int], p: Optional[Ipc] = None) -> Dict[int, bool]:
    """Variable ``j+1`` is true iff the second interval of pair ``j`` was chosen.

    A variable with no positive occurrence has two equal intervals; given
    ``p`` such variables are set false, which is what the interval means.
    """
    out = {}
    for j, c in enumerate(choice):
        same = p is not None and p.pairs[j][0] == p.pairs[j][1]
        out[j + 1] = bool(c) and not same
    return out


def lm_assignment_to_source(f: Cnf, assignment: Mapping[int, bool]) -> Dict[int, bool]:
    """Drop helper variables."""
    return {v: assignment[v] for v in range(1, f.nvars + 1)}


def e1n_assignment_to_source(f: Cnf, assignment: Mapping[int, bool]) -> Dict[int, bool]:
    """Eliminated variables are true; the rest follow the renumbering."""
    vm = e1n_variable_map(f)
    return {v: True if w is None else assignment[w] for v, w in vm.items()}
