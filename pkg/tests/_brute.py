"""Exhaustive reference searches used by the tests.

These deliberately share no code with the package beyond ``verify`` and the
graph containers, so they act as independent oracles.
"""

import itertools

from edgematch.euler import FORWARD
from edgematch.model import EqTriStrip, HypStrip, LegStrip, Rect, Solution, Strip, verify


def strip_count(inst):
    """Count solutions by trying every permutation and orientation."""
    b = inst.board
    ids = [t.id for t in inst.tiles]
    c = 0
    if isinstance(b, HypStrip):
        for perm in itertools.permutations(ids):
            for corners in itertools.product((0, 3), repeat=b.n):
                pl = []
                for k in range(b.n):
                    pl += [(perm[2 * k], corners[k]), (perm[2 * k + 1], (corners[k] + 2) % 4)]
                c += verify(inst, Solution(placements=pl)).ok
        return c
    for perm in itertools.permutations(ids):
        if isinstance(b, (Strip, Rect)):
            ors = [range(4)] * len(perm)
        elif isinstance(b, EqTriStrip):
            ors = [range(6 if inst.allow_reflection else 3)] * len(perm)
        elif isinstance(b, LegStrip):
            ors = [[b.orientation_at(i)] for i in range(len(perm))]
        else:
            raise TypeError(type(b).__name__)
        for o in itertools.product(*ors):
            c += verify(inst, Solution(placements=list(zip(perm, o)))).ok
    return c


def _groups(p):
    gid = {}
    for v, grps in (p or {}).items():
        for k, grp in enumerate(grps):
            for e in grp:
                gid[(v, e)] = k
    return lambda v, e: gid.get((v, e), ("own", e))


def ft_exists(g, p, closed):
    """Forbidden-transition Eulerian trail by trying every edge order and direction."""
    ends = g.edge_map()
    grp = _groups(p)
    es = [e for e, _u, _v in g.edges]
    if not es:
        return True
    for perm in itertools.permutations(es):
        for dirs in itertools.product((0, 1), repeat=len(es)):
            walk = []
            ok = True
            for e, d in zip(perm, dirs):
                u, v = ends[e]
                a, b = (u, v) if d == 0 else (v, u)
                if walk and walk[-1][2] != a:
                    ok = False
                    break
                walk.append((e, a, b))
            if not ok:
                continue
            pairs = list(zip(walk, walk[1:]))
            if closed:
                if walk[-1][2] != walk[0][1]:
                    continue
                pairs.append((walk[-1], walk[0]))
            if all(grp(x[2], x[0]) != grp(y[1], y[0]) for x, y in pairs):
                return True
    return False


def anti_exists(g, p, start_dir, end_dir):
    """Antidirected trail (optionally forbidden-transition) by exhaustive search."""
    ends = g.edge_map()
    grp = _groups(p)
    es = list(ends)
    if not es:
        return True
    for perm in itertools.permutations(es):
        for d0 in (0, 1):
            walk = []
            ok = True
            for k, e in enumerate(perm):
                d = (d0 + k) % 2
                u, v = ends[e]
                a, b = (u, v) if d == 0 else (v, u)
                if walk and walk[-1][2] != a:
                    ok = False
                    break
                walk.append((e, a, b, d))
            if not ok:
                continue
            if start_dir is not None and (walk[0][3] == 0) != (start_dir == FORWARD):
                continue
            if end_dir is not None and (walk[-1][3] == 0) != (end_dir == FORWARD):
                continue
            if all(grp(x[2], x[0]) != grp(y[1], y[0]) for x, y in zip(walk, walk[1:])):
                return True
    return False


def check_trail(g, trail, *, alternate=False, p=None, closed=False, start_dir=None, end_dir=None):
    """Independent validator: raises AssertionError on any defect."""
    ends = g.edge_map()
    grp = _groups(p)
    assert sorted(map(repr, (e for e, _d in trail))) == sorted(map(repr, ends)), "not every edge once"
    walk = []
    for e, d in trail:
        u, v = ends[e]
        a, b = (u, v) if d == FORWARD else (v, u)
        if walk:
            assert walk[-1][2] == a, f"step {e!r} does not continue the walk"
        walk.append((e, a, b, d))
    for x, y in zip(walk, walk[1:]):
        if alternate:
            assert x[3] != y[3], "directions do not alternate"
        if p is not None:
            assert grp(x[2], x[0]) != grp(y[1], y[0]), "forbidden transition"
    if closed and walk:
        assert walk[-1][2] == walk[0][1]
        if p is not None:
            assert grp(walk[0][1], walk[-1][0]) != grp(walk[0][1], walk[0][0])
    if walk and start_dir is not None:
        assert walk[0][3] == start_dir
    if walk and end_dir is not None:
        assert walk[-1][3] == end_dir


def leg_solvable(inst):
    b = inst.board
    for perm in itertools.permutations([t.id for t in inst.tiles]):
        s = Solution(placements=[(tid, b.orientation_at(i)) for i, tid in enumerate(perm)])
        if verify(inst, s).ok:
            return True
    return False


def euler_paths(g):
    """Eulerian trails as (edge, direction) sequences from any start, by enumeration.

    Undirected edges, self-loops included, may be walked either way.
    """
    ends = g.edge_map()
    es = list(ends)
    dirs = (0,) if g.directed else (0, 1)

    def go(at, used):
        if len(used) == len(es):
            return 1
        total = 0
        for e in es:
            if e in used:
                continue
            u, v = ends[e]
            for d in dirs:
                a, b = (u, v) if d == 0 else (v, u)
                if at is None or a == at:
                    used.add(e)
                    total += go(b, used)
                    used.discard(e)
        return total

    return go(None, set())


def geo_winner(geo):
    """Plain minimax over move sequences, no memo."""
    g = geo.graph
    moves = []
    for e, u, v in g.edges:
        moves.append((e, u, v))
        if not g.directed and u != v:
            moves.append((e, v, u))

    def mover_wins(cur, seen_v, seen_e, who):
        for e, a, b in moves:
            if a != cur:
                continue
            if geo.rule == "vertex":
                if b in seen_v or (geo.vertex_colors is not None and geo.vertex_colors[b] != who):
                    continue
            else:
                if e in seen_e or (geo.edge_colors is not None and geo.edge_colors[e] != who):
                    continue
            nxt = "P2" if who == "P1" else "P1"
            if not mover_wins(b, seen_v | {b}, seen_e | {e}, nxt):
                return True
        return False

    return "P1" if mover_wins(geo.start, frozenset([geo.start]), frozenset(), "P1") else "P2"


def _steps(g):
    ends = g.edge_map()
    es = list(ends)
    out = []
    for k, e in enumerate(es):
        u, v = ends[e]
        out.append((k, e, u, v, 0))
        if u != v or not g.directed:
            out.append((k, e, v, u, 1))
    return es, out


def anti_search(g, p=None, start_dir=None, end_dir=None):
    """Memoized version of :func:`anti_exists` for larger graphs."""
    from functools import lru_cache

    es, _ = _steps(g)
    ends = g.edge_map()
    grp = _groups(p)
    full = (1 << len(es)) - 1
    if not es:
        return True
    fwd = [(k, e, *ends[e], 0) for k, e in enumerate(es)] + [(k, e, ends[e][1], ends[e][0], 1)
                                                             for k, e in enumerate(es)]

    @lru_cache(maxsize=None)
    def go(at, used, last_e, last_d):
        if used == full:
            return end_dir is None or (last_d == 0) == (end_dir == FORWARD)
        for k, e, a, b, d in fwd:
            if used >> k & 1 or a != at or d == last_d:
                continue
            if grp(a, last_e) == grp(a, e):
                continue
            if go(b, used | 1 << k, e, d):
                return True
        return False

    for k, e, a, b, d in fwd:
        if start_dir is not None and (d == 0) != (start_dir == FORWARD):
            continue
        if go(b, 1 << k, e, d):
            return True
    return False


def ft_search(g, p, closed):
    """Memoized version of :func:`ft_exists`."""
    from functools import lru_cache

    es, steps = _steps(g)
    grp = _groups(p)
    full = (1 << len(es)) - 1
    if not es:
        return True

    def search(first):
        k0, e0, a0, b0, _d = first

        @lru_cache(maxsize=None)
        def go(at, used, last_e):
            if used == full:
                return not closed or (at == a0 and grp(a0, last_e) != grp(a0, e0))
            for k, e, a, b, _d in steps:
                if used >> k & 1 or a != at or grp(a, last_e) == grp(a, e):
                    continue
                if go(b, used | 1 << k, e):
                    return True
            return False

        return go(b0, 1 << k0, e0)

    return any(search(s) for s in steps)


def ham_paths(g, s, t):
    """Directed (or undirected) Hamiltonian s-t paths by plain DFS."""
    nbr = {v: [] for v in g.vertices}
    for _e, u, v in g.edges:
        nbr[u].append(v)
        if not g.directed:
            nbr[v].append(u)
    n = len(g.vertices)

    def go(v, seen):
        if len(seen) == n:
            return 1 if v == t else 0
        return sum(go(w, seen | {w}) for w in nbr[v] if w not in seen)

    return go(s, frozenset([s]))


def grid_exists(inst):
    """Backtracking over cells in row order for Rect and Strip boards."""
    from edgematch.model import compatible, orient

    b = inst.board
    rows, cols = (b.m, b.n) if isinstance(b, Rect) else (1, b.n)
    left = getattr(b, "left", None)
    right = getattr(b, "right", None)
    grid = {}
    used = set()

    def fits(r, c, o):
        if c > 0 and not compatible(grid[r, c - 1]["E"], o["W"], inst.rule, axis="horizontal"):
            return False
        if r > 0 and not compatible(grid[r - 1, c]["S"], o["N"], inst.rule, axis="vertical"):
            return False
        if c == 0 and left is not None and not compatible(left, o["W"], inst.rule, axis="horizontal"):
            return False
        if c == cols - 1 and right is not None and not compatible(o["E"], right, inst.rule, axis="horizontal"):
            return False
        return True

    def go(i):
        if i == rows * cols:
            return True
        r, c = divmod(i, cols)
        for t in inst.tiles:
            if t.id in used:
                continue
            for rot in range(4):
                o = orient(t, rot)
                if fits(r, c, o):
                    grid[r, c] = o
                    used.add(t.id)
                    if go(i + 1):
                        return True
                    used.discard(t.id)
        return False

    return go(0)
