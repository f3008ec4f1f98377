"""Pure-Python search kernels (reference implementation and fallback).

The compiled module ``_kernels`` exposes the same three functions with the
same signatures and results.
"""

from __future__ import annotations

import sys

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))


def strip_count(npos, start_opts, succ, final_ok, limit=0):
    """Count fillings of ``npos`` positions.

    ``start_opts`` lists ``(mask, rcode)`` options for position 0.  ``succ[p][r]``
    lists the options ``(mask, rcode)`` allowed at a position of parity ``p``
    right after an option ending in code ``r``.  ``final_ok[r]`` says whether
    the last option may end in ``r``.  Options with overlapping masks cannot
    both be used.  ``limit > 0`` stops counting once that many are found.
    """
    if npos == 0:
        return 1
    memo = {}
    state = [0, False]  # running total at the root, stop flag

    def go(pos, used, r):
        if pos == npos:
            return 1 if final_ok[r] else 0
        key = (used, r)
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = 0
        for mask, r2 in succ[pos & 1][r]:
            if used & mask:
                continue
            total += go(pos + 1, used | mask, r2)
            if state[1]:
                return total
            if limit and pos == 1 and state[0] + total >= limit:
                state[1] = True
                return total
        memo[key] = total
        return total

    for mask, r in start_opts:
        state[0] += go(1, mask, r)
        if state[1] or (limit and state[0] >= limit):
            return min(state[0], limit)
    return state[0]


def ham_count(n, out_nbrs, start, end, cycle):
    """Count Hamiltonian paths from ``start`` (or cycles through it).

    ``out_nbrs[v]`` lists ``(w, multiplicity)`` with distinct ``w``.  ``end``
    is a fixed last vertex or ``-1``.  With ``cycle`` the last vertex must
    have an edge back to ``start`` and its multiplicity joins the product.
    """
    if n == 0:
        return 0
    in_nbrs = [[] for _ in range(n)]
    mult = [dict() for _ in range(n)]
    for v in range(n):
        for w, m in out_nbrs[v]:
            if w != v:
                in_nbrs[w].append(v)
                mult[v][w] = m
    outs = [[w for w in mult[v]] for v in range(n)]
    if n == 1:
        if cycle:
            return 0
        return 1 if end in (-1, start) else 0
    visited = [False] * n
    visited[start] = True
    pin = [len(in_nbrs[w]) for w in range(n)]
    pout = [0] * n
    for x in range(n):
        c = 0
        for y in outs[x]:
            if y != start or cycle:
                c += 1
        pout[x] = c
    check_out = cycle or end >= 0

    def needs_out(x):
        return check_out and x != end

    def go(cur, depth):
        if depth == n:
            if cycle:
                return mult[cur].get(start, 0)
            return 1
        total = 0
        for v in outs[cur]:
            if visited[v]:
                continue
            if v == end and depth != n - 1:
                continue
            dead = False
            # cur stops being a usable predecessor for its other successors
            for w in outs[cur]:
                if w != v and not visited[w]:
                    pin[w] -= 1
                    if pin[w] == 0:
                        dead = True
            visited[v] = True
            for x in in_nbrs[v]:
                if not visited[x]:
                    pout[x] -= 1
                    if pout[x] == 0 and needs_out(x):
                        dead = True
            if not dead:
                sub = go(v, depth + 1)
                if sub:
                    total += mult[cur][v] * sub
            for x in in_nbrs[v]:
                if not visited[x]:
                    pout[x] += 1
            visited[v] = False
            for w in outs[cur]:
                if w != v and not visited[w]:
                    pin[w] += 1
        return total

    return go(start, 1)


def trail_count(nedges, arcs, start, alternate):
    """Count trails using every edge once.

    ``arcs`` lists ``(edge, frm, to, dirbit, gfrom, gto)``: one traversal
    option for an edge.  Consecutive arcs must chain ``to == frm``, must have
    ``gto(prev) != gfrom(next)`` and, with ``alternate``, opposite ``dirbit``.
    ``start`` pins the first vertex (``-1`` for any).
    """
    if nedges == 0:
        return 1
    nv = 0
    for a in arcs:
        nv = max(nv, a[1] + 1, a[2] + 1)
    by_from = [[] for _ in range(nv)]
    for i, a in enumerate(arcs):
        by_from[a[1]].append(i)
    full = (1 << nedges) - 1
    memo = {}

    def go(used, last):
        if used == full:
            return 1
        key = (used, last)
        hit = memo.get(key)
        if hit is not None:
            return hit
        la = arcs[last]
        total = 0
        for j in by_from[la[2]]:
            b = arcs[j]
            if used >> b[0] & 1:
                continue
            if b[4] == la[5]:
                continue
            if alternate and b[3] == la[3]:
                continue
            total += go(used | (1 << b[0]), j)
        memo[key] = total
        return total

    total = 0
    for i, a in enumerate(arcs):
        if start >= 0 and a[1] != start:
            continue
        total += go(1 << a[0], i)
    return total
