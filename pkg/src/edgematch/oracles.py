"""Brute-force counters used as ground truth for solvers and reductions.

Nothing here calls into the polynomial solvers.  Heavy loops go through
:mod:`edgematch.kernels`; solution listing stays in Python.
"""

from __future__ import annotations

import itertools
from typing import Dict, Hashable, Iterator, List, Optional, Sequence, Tuple

from . import kernels
from .euler import MultiDigraph, MultiGraph
from .model import (EqTriStrip, HypStrip, Instance, LegStrip, ModelError, Rect,
                    Shapeless, Solution, Strip, compatible, orient, orientations)
from .reductions.sat import Cnf, Ipc


class OracleError(ValueError):
    pass


# ---------------------------------------------------------------- strips


def _strip_options(inst: Instance):
    """Per-parity option lists ``[(placements, mask, left, right)]`` plus position count."""
    b = inst.board
    tiles = inst.tiles
    idx = {t.id: k for k, t in enumerate(tiles)}
    refl = inst.allow_reflection
    if isinstance(b, HypStrip):
        opts = []
        for ta in tiles:
            for tb in tiles:
                if ta.id == tb.id:
                    continue
                for ca in (0, 3):
                    cb = (ca + 2) % 4
                    va = orient(ta, ca, pose="cell")
                    vb = orient(tb, cb, pose="cell")
                    if not compatible(va["hyp"], vb["hyp"], inst.rule):
                        continue
                    opts.append((((ta.id, ca), (tb.id, cb)),
                                 (1 << idx[ta.id]) | (1 << idx[tb.id]), va["W"], vb["E"]))
        return [opts, opts], b.n
    per = []
    for parity in (0, 1):
        opts = []
        for t in tiles:
            if isinstance(b, Strip):
                for o in orientations(t):
                    v = orient(t, o)
                    opts.append((((t.id, o),), 1 << idx[t.id], v["W"], v["E"]))
            elif isinstance(b, EqTriStrip):
                pose = b.pose(parity)
                for o in orientations(t, allow_reflection=refl):
                    v = orient(t, o, pose=pose, allow_reflection=refl)
                    opts.append((((t.id, o),), 1 << idx[t.id], v["left"], v["right"]))
            elif isinstance(b, LegStrip):
                o = b.orientation_at(parity)
                v = orient(t, o, pose="leg")
                opts.append((((t.id, o),), 1 << idx[t.id], v["left"], v["right"]))
            else:
                raise OracleError(f"no strip enumeration for {type(b).__name__}")
        per.append(opts)
    return per, b.n


def _boundaries(inst: Instance):
    b = inst.board
    return getattr(b, "left", None), getattr(b, "right", None)


def iter_strip_solutions(inst: Instance) -> Iterator[Solution]:
    """Every solution of a strip-like board, in canonical order."""
    if isinstance(inst.board, Rect):
        yield from _iter_rect(inst)
        return
    per, npos = _strip_options(inst)
    left, right = _boundaries(inst)
    rule = inst.rule
    chosen: List[tuple] = []

    def go(pos, used, prev):
        if pos == npos:
            if right is None or compatible(prev, right, rule):
                yield Solution(placements=tuple(p for c in chosen for p in c))
            return
        for pl, mask, lft, rgt in per[pos & 1]:
            if used & mask:
                continue
            if pos == 0:
                if left is not None and not compatible(left, lft, rule):
                    continue
            elif not compatible(prev, lft, rule):
                continue
            chosen.append(pl)
            yield from go(pos + 1, used | mask, rgt)
            chosen.pop()

    if npos == 0:
        yield Solution(placements=())
        return
    yield from go(0, 0, None)


def _iter_rect(inst: Instance) -> Iterator[Solution]:
    m, n = inst.board.m, inst.board.n
    rule = inst.rule
    views = {t.id: [orient(t, o) for o in range(4)] for t in inst.tiles}
    ids = [t.id for t in inst.tiles]
    grid: List[tuple] = []
    used = set()

    def go(k):
        if k == m * n:
            yield Solution(placements=tuple(grid))
            return
        r, c = divmod(k, n)
        for tid in ids:
            if tid in used:
                continue
            for o in range(4):
                v = views[tid][o]
                if c and not compatible(views[grid[k - 1][0]][grid[k - 1][1]]["E"], v["W"], rule):
                    continue
                if r:
                    up = grid[k - n]
                    if not compatible(views[up[0]][up[1]]["S"], v["N"], rule, "vertical"):
                        continue
                used.add(tid)
                grid.append((tid, o))
                yield from go(k + 1)
                grid.pop()
                used.discard(tid)

    yield from go(0)


def _count_rect(inst: Instance) -> int:
    """Row-major profile count: state is (cell, used tiles, exposed labels)."""
    m, n = inst.board.m, inst.board.n
    rule = inst.rule
    views = [[orient(t, o) for o in range(4)] for t in inst.tiles]
    memo: Dict[tuple, int] = {}

    def go(k, used, south, east):
        # south[c]: label facing down in column c so far; east: label facing right in this row
        if k == m * n:
            return 1
        key = (k, used, south, east)
        hit = memo.get(key)
        if hit is not None:
            return hit
        r, c = divmod(k, n)
        total = 0
        for ti, vs in enumerate(views):
            if used >> ti & 1:
                continue
            for v in vs:
                if c and not compatible(east, v["W"], rule):
                    continue
                if r and not compatible(south[c], v["N"], rule, "vertical"):
                    continue
                nxt_south = south[:c] + (v["S"],) + south[c + 1:]
                total += go(k + 1, used | 1 << ti, nxt_south, v["E"] if c + 1 < n else None)
        memo[key] = total
        return total

    return go(0, 0, (None,) * n, None)


def _strip_kernel_args(inst: Instance):
    per, npos = _strip_options(inst)
    left, right = _boundaries(inst)
    rule = inst.rule
    labels: Dict[object, int] = {}

    def code(x):
        return labels.setdefault(x, len(labels))

    for opts in per:
        for _pl, _m, lft, rgt in opts:
            code(lft)
            code(rgt)
    inv = list(labels)
    R = len(inv)
    ok = [[compatible(inv[a], inv[b], rule) for b in range(R)] for a in range(R)]
    succ = [[[] for _ in range(R)] for _ in range(2)]
    for p in range(2):
        for r in range(R):
            succ[p][r] = [(mask, labels[rgt]) for _pl, mask, lft, rgt in per[p]
                          if ok[r][labels[lft]]]
    start = [(mask, labels[rgt]) for _pl, mask, lft, rgt in per[0]
             if left is None or compatible(left, lft, rule)]
    final_ok = [right is None or compatible(inv[r], right, rule) for r in range(R)]
    return npos, start, succ, final_ok


def enumerate_strip_solutions(inst: Instance, limit: Optional[int] = None,
                              collect: bool = False, backend: Optional[str] = None
                              ) -> Tuple[int, Optional[List[Solution]]]:
    """Count (and optionally list) solutions of a shaped board.

    Tiles are distinguishable and each orientation counts separately.  With
    ``limit`` the count stops at that value.
    """
    if isinstance(inst.board, Shapeless):
        raise OracleError("use enumerate_shapeless for shapeless boards")
    if isinstance(inst.board, Rect) and not collect and not limit:
        return _count_rect(inst), None
    if collect or isinstance(inst.board, Rect):
        sols = []
        for s in iter_strip_solutions(inst):
            sols.append(s)
            if limit and len(sols) >= limit:
                break
        return len(sols), (sols if collect else None)
    npos, start, succ, final_ok = _strip_kernel_args(inst)
    count = kernels.strip_count(npos, start, succ, final_ok, limit or 0,
                                nbits=len(inst.tiles), backend=backend)
    return count, None


def count_strip_solutions(inst: Instance, limit: Optional[int] = None, backend=None) -> int:
    return enumerate_strip_solutions(inst, limit=limit, backend=backend)[0]


def strip_solvable(inst: Instance) -> bool:
    return count_strip_solutions(inst, limit=1) > 0


# ---------------------------------------------------------------- shapeless

_NB = ((1, 0, "E", "W"), (-1, 0, "W", "E"), (0, 1, "S", "N"), (0, -1, "N", "S"))


class _Enough(Exception):
    pass


def enumerate_shapeless(inst: Instance, bound: Optional[int] = None, collect: bool = False,
                        limit: Optional[int] = None):
    """Count rooted shapeless solutions by growing connected placements.

    Each connected cell set is generated once (frontier cells are either
    filled now or excluded for good), and every filled cell tries every
    unused tile and rotation that fits its filled neighbours.  ``bound`` is
    the half-width of the allowed box around the root (default: tile count).
    With ``limit`` the search stops once that many solutions are found.
    Returns the count, or ``(count, solutions)`` with ``collect``.
    """
    b = inst.board
    if not isinstance(b, Shapeless):
        raise OracleError("shapeless board required")
    if not b.rooted:
        raise OracleError("unrooted shapeless instances have infinitely many translates")
    k = bound if bound is not None else len(inst.tiles)
    rule = inst.rule
    views = {t.id: [orient(t, o) for o in range(4)] for t in inst.tiles}
    root = (0, 0)
    placed: Dict[Tuple[int, int], Tuple[Hashable, int]] = {root: (b.root, b.root_orientation)}
    ids = [t.id for t in inst.tiles if t.id != b.root]
    used = set()
    seen = {root}
    sols = []

    def inside(c):
        return abs(c[0]) <= k and abs(c[1]) <= k

    def fits(cell, tid, o):
        v = views[tid][o]
        x, y = cell
        for dx, dy, side, opp in _NB:
            nb = placed.get((x + dx, y + dy))
            if nb is None:
                continue
            w = views[nb[0]][nb[1]]
            axis = "horizontal" if side in ("E", "W") else "vertical"
            pair = (v[side], w[opp]) if side in ("E", "S") else (w[opp], v[side])
            if not compatible(pair[0], pair[1], rule, axis):
                return False
        return True

    found = [0]

    def grow(untried: List[Tuple[int, int]]) -> int:
        if len(used) == len(ids):
            if collect:
                sols.append(Solution.of_cells(dict(placed)))
            found[0] += 1
            if limit and found[0] >= limit:
                raise _Enough
            return 1
        total = 0
        untried = list(untried)
        while untried:
            cell = untried.pop()
            x, y = cell
            new = [(x + dx, y + dy) for dx, dy, _s, _o in _NB
                   if (x + dx, y + dy) not in seen and inside((x + dx, y + dy))]
            seen.update(new)
            for tid in ids:
                if tid in used:
                    continue
                for o in range(4):
                    if not fits(cell, tid, o):
                        continue
                    placed[cell] = (tid, o)
                    used.add(tid)
                    total += grow(untried + new)
                    used.discard(tid)
                    del placed[cell]
            seen.difference_update(new)
        return total

    first = []
    for dx, dy, _s, _o in _NB:
        nb = (dx, dy)
        if inside(nb):
            seen.add(nb)
            first.append(nb)
    try:
        count = grow(first)
    except _Enough:
        count = found[0]
    return (count, sols) if collect else count


# ---------------------------------------------------------------- hamiltonian


def _index(g: MultiGraph):
    vid = {v: i for i, v in enumerate(g.vertices)}
    n = len(vid)
    mult = [dict() for _ in range(n)]
    for _e, u, v in g.edges:
        a, b = vid[u], vid[v]
        if a == b:
            continue
        mult[a][b] = mult[a].get(b, 0) + 1
        if not g.directed:
            mult[b][a] = mult[b].get(a, 0) + 1
    return vid, n, [sorted(m.items()) for m in mult]


def count_ham(g: MultiGraph, mode: str = "cycle", s: Hashable = None, t: Hashable = None,
              backend: Optional[str] = None) -> int:
    """Number of Hamiltonian cycles or paths; parallel edges give distinct objects.

    Undirected cycles and unpinned undirected paths are counted once per edge
    set, not once per traversal direction.
    """
    vid, n, outs = _index(g)
    if n == 0:
        return 0
    if mode == "cycle":
        if n == 1:
            return 0
        if n == 2:
            a = dict(outs[0]).get(1, 0)
            if g.directed:
                return a * dict(outs[1]).get(0, 0)
            return a * (a - 1) // 2
        c = kernels.ham_count(n, outs, 0, -1, True, backend=backend)
        return c if g.directed else c // 2
    if mode != "path":
        raise OracleError(f"unknown mode {mode!r}")
    end = vid[t] if t is not None else -1
    if s is not None:
        return kernels.ham_count(n, outs, vid[s], end, False, backend=backend)
    total = sum(kernels.ham_count(n, outs, a, end, False, backend=backend) for a in range(n))
    if not g.directed and t is None and n > 1:
        total //= 2
    return total


# ---------------------------------------------------------------- trails


def _group_ids(g: MultiGraph, p, directed_roles: bool):
    """(vertex, edge, role) -> group number; free incidences get private numbers."""
    gid = {}
    counter = itertools.count()
    key_base = {}
    for v, grps in (p or {}).items():
        for k, grp in enumerate(grps):
            label = key_base.setdefault((v, k), next(counter))
            for item in grp:
                if isinstance(item, tuple) and len(item) == 2 and item[1] in ("in", "out"):
                    e, roles = item[0], [item[1]]
                else:
                    e, roles = item, ["in", "out"]
                for r in roles:
                    gid[(v, e, r)] = label
    return gid, counter


def count_euler_paths(g: MultiGraph, mode: str = "plain", p=None,
                      start: Hashable = None, backend: Optional[str] = None) -> int:
    """Count Eulerian trails as sequences of (edge, direction) steps.

    Modes: ``plain`` (undirected edges may run either way, directed edges
    only forward), ``antidirected`` (digraph, directions alternate),
    ``forbidden`` (undirected, consecutive edges at a vertex must lie in
    different groups of ``p``) and ``forbidden_antidirected``.
    """
    vid = {v: i for i, v in enumerate(g.vertices)}
    m = len(g.edges)
    gid, counter = _group_ids(g, p, g.directed)
    arcs = []
    alternate = mode in ("antidirected", "forbidden_antidirected")
    grouped = mode in ("forbidden", "forbidden_antidirected")
    if alternate and not g.directed:
        raise OracleError("antidirected counting needs a digraph")

    def grp(v, e, role):
        k = gid.get((v, e, role))
        return k if k is not None else next(counter)

    for k, (e, u, v) in enumerate(g.edges):
        a, b = vid[u], vid[v]
        if not grouped:
            arcs.append((k, a, b, 0, -2, -1))
            if mode != "plain" or not g.directed:
                arcs.append((k, b, a, 1, -2, -1))
            continue
        if g.directed:
            # forward leaves u on its out-end and arrives at v on its in-end
            go, gi = grp(u, e, "out"), grp(v, e, "in")
            arcs += [(k, a, b, 0, go, gi), (k, b, a, 1, gi, go)]
        else:
            gu = grp(u, e, "out")
            gv = gu if u == v else grp(v, e, "in")
            arcs += [(k, a, b, 0, gu, gv), (k, b, a, 1, gv, gu)]
    st = vid[start] if start is not None else -1
    return kernels.trail_count(m, arcs, st, alternate, backend=backend)


# ---------------------------------------------------------------- formulas


def count_sat(f: Cnf, mode: str = "sat") -> int:
    """Satisfying assignments; ``one_in_three`` wants exactly one true literal per clause."""
    total = 0
    for bits in itertools.product((False, True), repeat=f.nvars):
        a = dict(zip(range(1, f.nvars + 1), bits))
        if mode == "sat":
            total += f.satisfied_by(a)
        elif mode == "one_in_three":
            total += all(sum(a[abs(x)] == (x > 0) for x in c) == 1 for c in f.clauses)
        else:
            raise OracleError(f"unknown mode {mode!r}")
    return total


def enumerate_ipc(p: Ipc) -> Tuple[bool, int]:
    """(coverable, number of covering selections)."""
    count = sum(1 for ch in itertools.product((0, 1), repeat=len(p.pairs)) if p.covers(ch))
    return count > 0, count
