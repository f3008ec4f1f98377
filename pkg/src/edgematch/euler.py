"""Eulerian trails: plain, antidirected, and with forbidden transitions.

A :data:`Trail` is a tuple of ``(edge_id, direction)`` steps where direction
is ``"forward"`` (tail to head, or first to second endpoint for undirected
edges) or ``"backward"``.  An *antidirected* trail in a digraph alternates
directions: consecutive edges both point into or both point out of the
vertex they share.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

FORWARD = "forward"
BACKWARD = "backward"

Step = Tuple[Hashable, str]
Trail = Tuple[Step, ...]


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class MultiGraph:
    """Undirected multigraph; ``edges`` holds ``(edge_id, u, v)``."""

    vertices: Tuple[Hashable, ...]
    edges: Tuple[Tuple[Hashable, Hashable, Hashable], ...]
    directed = False

    def __post_init__(self):
        verts = tuple(dict.fromkeys(self.vertices))
        object.__setattr__(self, "vertices", verts)
        edges = tuple((e, u, v) for e, u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        vs = set(verts)
        ids = set()
        for e, u, v in edges:
            if u not in vs or v not in vs:
                raise GraphError(f"edge {e!r} has an endpoint outside the vertex set")
            if e in ids:
                raise GraphError(f"duplicate edge id {e!r}")
            ids.add(e)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[Hashable, Hashable]], vertices=()):
        pairs = list(pairs)
        verts = list(vertices)
        for u, v in pairs:
            verts += [u, v]
        return cls(tuple(verts), tuple((i, u, v) for i, (u, v) in enumerate(pairs)))

    def edge_map(self) -> dict:
        return {e: (u, v) for e, u, v in self.edges}

    def degree(self) -> dict:
        d = {v: 0 for v in self.vertices}
        for _, u, v in self.edges:
            d[u] += 1
            d[v] += 1
        return d


@dataclass(frozen=True)
class MultiDigraph(MultiGraph):
    """Directed multigraph; ``edges`` holds ``(edge_id, tail, head)``."""

    directed = True

    def out_degree(self) -> dict:
        d = {v: 0 for v in self.vertices}
        for _, u, _v in self.edges:
            d[u] += 1
        return d

    def in_degree(self) -> dict:
        d = {v: 0 for v in self.vertices}
        for _, _u, v in self.edges:
            d[v] += 1
        return d


PartitionSystem = Mapping[Hashable, Sequence[Iterable[Hashable]]]


def _connected(vertices, edges) -> bool:
    """True iff the edge-bearing vertices form one component."""
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, u, v in edges:
        parent.setdefault(u, u)
        parent.setdefault(v, v)
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return len({find(x) for x in parent}) <= 1


def _steps_to_trail(edge_ends: Mapping, steps) -> Trail:
    out = []
    for e, frm, to in steps:
        u, v = edge_ends[e]
        out.append((e, FORWARD if (frm == u and to == v) else BACKWARD))
    return tuple(out)


def trail_walk(g: MultiGraph, trail: Trail) -> List[Tuple[Hashable, Hashable, Hashable]]:
    """``(edge, from, to)`` triples for a trail."""
    ends = g.edge_map()
    out = []
    for e, d in trail:
        u, v = ends[e]
        out.append((e, u, v) if d == FORWARD else (e, v, u))
    return out


# ---------------------------------------------------------------- plain


def _hierholzer(adj: Mapping, start, m: int) -> List[Tuple[int, Hashable, Hashable]]:
    used = [False] * m
    ptr = {v: 0 for v in adj}
    stack = [(start, None)]
    out = []
    while stack:
        v, step = stack[-1]
        lst = adj[v]
        i = ptr[v]
        while i < len(lst) and used[lst[i][0]]:
            i += 1
        ptr[v] = i
        if i == len(lst):
            stack.pop()
            if step is not None:
                out.append(step)
        else:
            idx, w = lst[i]
            used[idx] = True
            stack.append((w, (idx, v, w)))
    out.reverse()
    return out


def eulerian_path(g: MultiGraph, start: Hashable = None) -> Optional[Trail]:
    """Eulerian trail of an undirected multigraph, or ``None``.

    A closed trail is returned when every degree is even.  ``start`` pins the
    first vertex when that is feasible.
    """
    edges = list(g.edges)
    if not edges:
        return ()
    if not _connected(g.vertices, edges):
        return None
    deg = g.degree()
    odd = [v for v in g.vertices if deg[v] % 2]
    if len(odd) not in (0, 2):
        return None
    if start is not None:
        if odd and start not in odd:
            return None
        if not odd and deg.get(start, 0) == 0:
            return None
    else:
        start = odd[0] if odd else next(v for v in g.vertices if deg[v])
    adj = {v: [] for v in g.vertices}
    for i, (_e, u, v) in enumerate(edges):
        adj[u].append((i, v))
        if u != v:
            adj[v].append((i, u))
        else:
            adj[u].append((i, u))
    steps = _hierholzer(adj, start, len(edges))
    return _steps_to_trail(g.edge_map(), [(edges[i][0], a, b) for i, a, b in steps])


# ---------------------------------------------------------------- antidirected


def split(g: MultiDigraph) -> MultiGraph:
    """Bipartite graph with vertices ``(v, '+')`` and ``(v, '-')``; edge (u, v) becomes {u+, v-}."""
    verts = []
    for v in g.vertices:
        verts += [(v, "+"), (v, "-")]
    return MultiGraph(tuple(verts), tuple((e, (u, "+"), (v, "-")) for e, u, v in g.edges))


def _side_ok(start_dir, end_dir):
    """Endpoint predicate on split-graph vertices for the direction constraints."""

    def ok(s, t):
        if start_dir is not None and (s[1] == "+") != (start_dir == FORWARD):
            return False
        if end_dir is not None and (t[1] == "-") != (end_dir == FORWARD):
            return False
        return True

    return ok


def _check_dir(d):
    if d not in (None, FORWARD, BACKWARD):
        raise GraphError(f"direction must be {FORWARD!r}, {BACKWARD!r} or None")


def antidirected_eulerian(g: MultiDigraph, start_dir: Optional[str] = None,
                          end_dir: Optional[str] = None) -> Optional[Trail]:
    """Antidirected Eulerian trail honoring the optional endpoint directions."""
    _check_dir(start_dir)
    _check_dir(end_dir)
    if not g.edges:
        return ()
    h = split(g)
    if not _connected(h.vertices, h.edges):
        return None
    deg = h.degree()
    odd = [v for v in h.vertices if deg[v] % 2]
    ok = _side_ok(start_dir, end_dir)
    if not odd:
        # closed walks in a bipartite graph start and end on the same side
        want = None
        if start_dir is not None:
            want = "+" if start_dir == FORWARD else "-"
        elif end_dir is not None:
            want = "-" if end_dir == FORWARD else "+"
        cands = [v for v in h.vertices if deg[v] and (want is None or v[1] == want)]
        cands = [v for v in cands if ok(v, v)]
        if not cands:
            return None
        return _split_trail(h, eulerian_path(h, cands[0]))
    if len(odd) != 2:
        return None
    for s, t in ((odd[0], odd[1]), (odd[1], odd[0])):
        if ok(s, t):
            return _split_trail(h, eulerian_path(h, s))
    return None


def _split_trail(h: MultiGraph, trail: Trail) -> Trail:
    # in the split graph "forward" already means tail+ -> head-
    return trail


# ---------------------------------------------------------------- forbidden transitions


def _validate_partition(vertices, edges, p: Optional[PartitionSystem]) -> Dict[Hashable, Dict[Hashable, int]]:
    """Map vertex -> {edge id: group index}; unlisted edges get fresh singleton groups."""
    incident = {v: {} for v in vertices}
    for e, u, v in edges:
        incident[u][e] = None
        incident[v][e] = None
    out = {}
    p = p or {}
    for v in p:
        if v not in incident:
            raise GraphError(f"partition names unknown vertex {v!r}")
    for v in vertices:
        gid = {}
        for k, grp in enumerate(p.get(v, ())):
            for e in grp:
                if e not in incident[v]:
                    raise GraphError(f"edge {e!r} in a group at {v!r} is not incident to it")
                if e in gid:
                    raise GraphError(f"edge {e!r} appears twice in the groups at {v!r}")
                gid[e] = k
        nxt = len(p.get(v, ()))
        for e in incident[v]:
            if e not in gid:
                gid[e] = nxt
                nxt += 1
        out[v] = gid
    return out


def group_sizes(g: MultiGraph, p: Optional[PartitionSystem]) -> Dict[Hashable, Dict[int, int]]:
    """Slot counts per group at each vertex (self-loops count twice)."""
    gid = _validate_partition(g.vertices, g.edges, p)
    sizes = {v: {} for v in g.vertices}
    for e, u, v in g.edges:
        for w in (u, v):
            k = gid[w][e]
            sizes[w][k] = sizes[w].get(k, 0) + 1
    return sizes


def ft_criterion(g: MultiGraph, p: Optional[PartitionSystem]) -> bool:
    """Eulerian condition plus ``|group| <= ceil(deg/2)`` everywhere."""
    if not g.edges:
        return True
    if not _connected(g.vertices, g.edges):
        return False
    deg = g.degree()
    if sum(1 for v in g.vertices if deg[v] % 2) not in (0, 2):
        return False
    for v, sz in group_sizes(g, p).items():
        if sz and max(sz.values()) > (deg[v] + 1) // 2:
            return False
    return True


class _Virtual:
    """Reserved edge/vertex marker for construction scaffolding."""

    __slots__ = ("tag",)

    def __init__(self, tag):
        self.tag = tag

    def __repr__(self):
        return f"<virtual {self.tag}>"


def _ft_steps(vertices, edges, p, closed: bool,
              endpoint_ok: Callable = None) -> Optional[List[Tuple[Hashable, Hashable, Hashable]]]:
    """Core forbidden-transition search; returns ``(edge, from, to)`` steps."""
    vertices = list(vertices)
    edges = list(edges)
    gid = _validate_partition(vertices, edges, p)
    if endpoint_ok is None:
        endpoint_ok = lambda s, t: True  # noqa: E731
    if not edges:
        return []
    if not _connected(vertices, edges):
        return None
    deg = {v: 0 for v in vertices}
    sizes = {v: {} for v in vertices}
    for e, u, v in edges:
        for w in (u, v):
            deg[w] += 1
            k = gid[w][e]
            sizes[w][k] = sizes[w].get(k, 0) + 1
    odd = [v for v in vertices if deg[v] % 2]
    big = {v: max(sizes[v].values()) for v in vertices if deg[v]}
    extra: List[Tuple[Hashable, Hashable, Hashable]] = []
    extra_groups: Dict[Hashable, List[Hashable]] = {}
    mode = "circuit"
    if len(odd) > 2:
        return None
    if len(odd) == 2:
        if closed:
            return None
        if any(big[v] > (deg[v] + 1) // 2 for v in big):
            return None
        o1, o2 = odd
        ve = _Virtual("edge")
        extra.append((ve, o1, o2))
        extra_groups[o1] = [ve]
        extra_groups[o2] = [ve]
        mode = "odd"
    else:
        bad = [v for v in big if big[v] > deg[v] // 2]
        if bad:
            # an open trail may start and end at one vertex whose wrap-around
            # transition is never taken
            if closed or len(bad) > 1:
                return None
            v = bad[0]
            if big[v] > deg[v] // 2 + 1 or not endpoint_ok(v, v):
                return None
            x = _Virtual("vertex")
            a, b = _Virtual("in"), _Virtual("out")
            extra += [(a, v, x), (b, x, v)]
            extra_groups[v] = [a, b]
            vertices = vertices + [x]
            mode = "hub"
            hub = v
    # build internal edge list: subdivide loops, append scaffolding
    ends: List[Tuple[Hashable, Hashable]] = []
    label: List[Tuple[Hashable, Optional[str]]] = []
    slot_group: List[Tuple[Hashable, Hashable]] = []
    for e, u, v in edges:
        if u == v:
            mid = _Virtual(("mid", e))
            ends += [(u, mid), (mid, v)]
            label += [(e, "a"), (e, "b")]
            g0 = (0, gid[u][e])
            slot_group += [g0, ("a", e), ("b", e), g0]
        else:
            ends.append((u, v))
            label.append((e, None))
            slot_group += [(0, gid[u][e]), (0, gid[v][e])]
    for e, u, v in extra:
        ends.append((u, v))
        label.append((e, None))
        for w in (u, v):
            if e in extra_groups.get(w, ()):
                slot_group.append((1, 0) if mode == "hub" and w == hub else (2, e))
            else:
                slot_group.append((2, e))
    m = len(ends)
    at: Dict[Hashable, List[int]] = {}
    for i, (u, v) in enumerate(ends):
        at.setdefault(u, []).append(2 * i)
        at.setdefault(v, []).append(2 * i + 1)
    # group-contiguous slot order, then pair slot j with slot j + d/2
    partner = [0] * (2 * m)
    for w, slots in at.items():
        order = {}
        for s in slots:
            order.setdefault(slot_group[s], []).append(s)
        seq = [s for grp in order.values() for s in grp]
        h = len(seq) // 2
        for j in range(h):
            partner[seq[j]] = seq[j + h]
            partner[seq[j + h]] = seq[j]
    # label cycles
    cyc = [-1] * (2 * m)
    ncyc = 0
    for s0 in range(2 * m):
        if cyc[s0] >= 0:
            continue
        s = s0
        while cyc[s] < 0:
            cyc[s] = ncyc
            t = s ^ 1
            cyc[t] = ncyc
            s = partner[t]
        ncyc += 1
    parent = list(range(ncyc))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    # merge cycles meeting at each vertex with a legal re-pairing
    for w in list(at):
        slots = at[w]
        seen = set()
        pairs = []
        for s in slots:
            if s not in seen:
                seen.add(s)
                seen.add(partner[s])
                pairs.append((s, partner[s]))
        if len(pairs) < 2:
            continue
        a, b = pairs[0]
        for c, d in pairs[1:]:
            ra, rc = find(cyc[a]), find(cyc[c])
            if ra == rc:
                continue
            ga, gb, gc, gd = (slot_group[x] for x in (a, b, c, d))
            if ga != gc and gb != gd:
                partner[a], partner[c] = c, a
                partner[b], partner[d] = d, b
                b = c
            else:
                partner[a], partner[d] = d, a
                partner[b], partner[c] = c, b
                b = d
            parent[ra] = rc
    # choose the starting slot
    if mode == "odd":
        start = 2 * (m - 1) + 1  # virtual edge leaving o2
    elif mode == "hub":
        start = 2 * (m - 2)  # hub -> x
    else:
        start = None
        for v in vertices:
            if deg.get(v) and endpoint_ok(v, v):
                start = at[v][0]
                break
        if start is None:
            return None
    walk = []
    s = start
    while True:
        i = s >> 1
        frm = ends[i][s & 1]
        to = ends[i][(s & 1) ^ 1]
        walk.append((i, frm, to))
        s = partner[s ^ 1]
        if s == start:
            break
    if len(walk) != m:
        raise AssertionError("cycle merge left pieces behind")
    if mode == "odd":
        walk = walk[1:]
    elif mode == "hub":
        walk = walk[2:]
    out = []
    k = 0
    while k < len(walk):
        i, frm, to = walk[k]
        e, part = label[i]
        if part is None:
            out.append((e, frm, to))
            k += 1
            continue
        # collapse the subdivided loop
        v = ends[i][0] if part == "a" else ends[i][1]
        out.append((e, v, v, FORWARD if (part == "a") == (frm == v) else BACKWARD))
        k += 2
    if mode == "odd":
        s, t = out[0][1], out[-1][2]
        if not endpoint_ok(s, t):
            if not endpoint_ok(t, s):
                return None
            out = [_rev(x) for x in reversed(out)]
    return out


def _rev(step):
    if len(step) == 4:
        e, a, b, d = step
        return (e, b, a, BACKWARD if d == FORWARD else FORWARD)
    e, a, b = step
    return (e, b, a)


def _steps_trail(edge_ends, steps) -> Trail:
    out = []
    for st in steps:
        if len(st) == 4:
            out.append((st[0], st[3]))
        else:
            e, frm, to = st
            u, v = edge_ends[e]
            out.append((e, FORWARD if frm == u else BACKWARD))
    return tuple(out)


def ft_eulerian(g: MultiGraph, p: Optional[PartitionSystem] = None,
                require_cycle: bool = False) -> Optional[Trail]:
    """Eulerian trail never passing between two edges of one group at a vertex.

    With ``require_cycle`` the trail is closed and the wrap-around transition
    is checked too.  An open trail in a graph with all degrees even may begin
    and end at one vertex, so there that single vertex may exceed the usual
    ``deg/2`` group bound by one.
    """
    steps = _ft_steps(g.vertices, g.edges, p, require_cycle)
    if steps is None:
        return None
    return _steps_trail(g.edge_map(), steps)


def split_partition(g: MultiDigraph, p: Optional[PartitionSystem]) -> Dict[Hashable, List[List[Hashable]]]:
    """Carry groups onto the split graph: out-edges at ``v+``, in-edges at ``v-``.

    A group entry is an edge id, or ``(edge id, "out"|"in")`` to place just
    one end of a self-loop.  A bare self-loop id covers both of its ends.
    """
    p = p or {}
    ends = g.edge_map()
    role: Dict[Tuple[Hashable, str], Dict[Hashable, int]] = {}
    for v, grps in p.items():
        if v not in set(g.vertices):
            raise GraphError(f"partition names unknown vertex {v!r}")
        for k, grp in enumerate(grps):
            for item in grp:
                if isinstance(item, tuple) and len(item) == 2 and item[1] in ("out", "in") \
                        and item not in ends:
                    e, which = item
                    kinds = [which]
                else:
                    e, kinds = item, ["out", "in"]
                if e not in ends:
                    raise GraphError(f"unknown edge {e!r} in the groups at {v!r}")
                tail, head = ends[e]
                hit = False
                for which in kinds:
                    if (tail if which == "out" else head) != v:
                        continue
                    hit = True
                    slot = role.setdefault((v, which), {})
                    if e in slot:
                        raise GraphError(f"edge {e!r} appears twice in the groups at {v!r}")
                    slot[e] = k
                if not hit:
                    raise GraphError(f"edge {e!r} in a group at {v!r} is not incident to it")
    out: Dict[Hashable, Dict[Hashable, List[Hashable]]] = {}
    for e, u, v in g.edges:
        for w, which, side in ((u, "out", "+"), (v, "in", "-")):
            k = role.get((w, which), {}).get(e, ("free", e))
            out.setdefault((w, side), {}).setdefault(k, []).append(e)
    return {w: list(d.values()) for w, d in out.items()}


def ft_antidirected_eulerian(g: MultiDigraph, p: Optional[PartitionSystem] = None,
                             start_dir: Optional[str] = None,
                             end_dir: Optional[str] = None) -> Optional[Trail]:
    """Antidirected Eulerian trail that avoids same-group transitions."""
    _check_dir(start_dir)
    _check_dir(end_dir)
    h = split(g)
    steps = _ft_steps(h.vertices, h.edges, split_partition(g, p), False,
                      _side_ok(start_dir, end_dir))
    if steps is None:
        return None
    return _steps_trail(h.edge_map(), steps)
