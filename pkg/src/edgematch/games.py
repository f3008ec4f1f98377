"""Geography and the two-player strip-matching game.

Normal play throughout: a player with no legal move loses.  ``P1`` moves
first.  In vertex geography the start vertex counts as already visited; in
edge geography vertices may be revisited freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, List, Mapping, Optional, Sequence, Tuple

from .euler import MultiGraph
from .model import Label, Rule, SquareTile, compatible, orient

P1, P2 = "P1", "P2"


class GameError(ValueError):
    """Input outside a solver's domain; the message names the failed condition."""


def _other(p: str) -> str:
    return P2 if p == P1 else P1


@dataclass(frozen=True)
class GeoInstance:
    graph: MultiGraph
    start: Hashable
    rule: str = "vertex"  # "vertex" or "edge"
    vertex_colors: Optional[Mapping[Hashable, str]] = None
    edge_colors: Optional[Mapping[Hashable, str]] = None

    def __post_init__(self):
        if self.rule not in ("vertex", "edge"):
            raise GameError(f"unknown rule {self.rule!r}")
        if self.start not in set(self.graph.vertices):
            raise GameError(f"start {self.start!r} is not a vertex")
        if self.vertex_colors is not None and self.edge_colors is not None:
            raise GameError("choose vertex colors or edge colors, not both")
        if self.vertex_colors is not None:
            missing = [v for v in self.graph.vertices
                       if v != self.start and self.vertex_colors.get(v) not in (P1, P2)]
            if missing:
                raise GameError(f"vertex {missing[0]!r} has no player color")
        if self.edge_colors is not None:
            missing = [e for e, _u, _v in self.graph.edges if self.edge_colors.get(e) not in (P1, P2)]
            if missing:
                raise GameError(f"edge {missing[0]!r} has no player color")

    @property
    def partizan(self) -> Optional[str]:
        if self.vertex_colors is not None:
            return "vertex"
        if self.edge_colors is not None:
            return "edge"
        return None


@dataclass(frozen=True)
class GameInstance:
    tiles: Tuple[SquareTile, ...]
    left: Label
    rule: Rule = Rule.SIGNED_OPP
    pools: Optional[Tuple[FrozenSet[Hashable], FrozenSet[Hashable]]] = None  # None: shared

    def __post_init__(self):
        object.__setattr__(self, "tiles", tuple(self.tiles))
        if self.rule not in (Rule.SIGNED_OPP, Rule.UNSIGNED_EQ):
            raise GameError("matching games use signed or unsigned labels")
        ids = [t.id for t in self.tiles]
        if len(set(ids)) != len(ids):
            raise GameError("tile ids must be unique")
        if self.pools is not None:
            a, b = (frozenset(p) for p in self.pools)
            object.__setattr__(self, "pools", (a, b))
            if a & b or (a | b) != set(ids):
                raise GameError("pools must partition the tiles")

    @property
    def length(self) -> int:
        return len(self.tiles)


@dataclass(frozen=True)
class GameOutcome:
    winner: str
    move: Optional[Hashable] = None


# ---------------------------------------------------------------- geography


def _moves(g: GeoInstance):
    """vertex -> [(edge id, head)] of moves available from it."""
    out: Dict[Hashable, List[Tuple[Hashable, Hashable]]] = {v: [] for v in g.graph.vertices}
    for e, u, v in g.graph.edges:
        out[u].append((e, v))
        if not g.graph.directed and u != v:
            out[v].append((e, u))
    return out


def solve_geography(g: GeoInstance) -> GameOutcome:
    """Exact winner by memoized search over (position, used set, mover)."""
    moves = _moves(g)
    vbit = {v: 1 << k for k, v in enumerate(g.graph.vertices)}
    ebit = {e: 1 << k for k, (e, _u, _v) in enumerate(g.graph.edges)}
    vcol = g.vertex_colors
    ecol = g.edge_colors
    by_vertex = g.rule == "vertex"
    memo: Dict[Tuple[Hashable, int, str], bool] = {}

    def legal(cur, used, who):
        for e, v in moves[cur]:
            if by_vertex:
                if used & vbit[v]:
                    continue
                if vcol is not None and vcol.get(v) != who:
                    continue
                nxt = used | vbit[v]
            else:
                if used & ebit[e]:
                    continue
                if ecol is not None and ecol[e] != who:
                    continue
                nxt = used | ebit[e]
            yield (e, v), v, nxt

    def wins(cur, used, who) -> bool:
        key = (cur, used, who)
        hit = memo.get(key)
        if hit is not None:
            return hit
        res = False
        for _m, v, nxt in legal(cur, used, who):
            if not wins(v, nxt, _other(who)):
                res = True
                break
        memo[key] = res
        return res

    used0 = vbit[g.start] if by_vertex else 0
    for m, v, nxt in legal(g.start, used0, P1):
        if not wins(v, nxt, P2):
            return GameOutcome(P1, m)
    return GameOutcome(P2)


def _two_color(vertices, adj, start) -> Dict[Hashable, int]:
    side: Dict[Hashable, int] = {}
    for root in [start, *vertices]:
        if root in side:
            continue
        side[root] = 0
        stack = [root]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in side:
                    side[y] = 1 - side[x]
                    stack.append(y)
                elif side[y] == side[x]:
                    raise GameError("not bipartite")
    return side


def _max_matching(left: Sequence[Hashable], adj: Mapping[Hashable, Sequence[Hashable]],
                  skip: Hashable = None) -> Dict[Hashable, Hashable]:
    """Augmenting-path matching from ``left`` into its neighbours, ignoring ``skip``.

    Returns the matching as right vertex -> left vertex.
    """
    match: Dict[Hashable, Hashable] = {}

    def augment(u, seen) -> bool:
        for w in adj[u]:
            if w == skip or w in seen:
                continue
            seen.add(w)
            if w not in match or augment(match[w], seen):
                match[w] = u
                return True
        return False

    for u in left:
        if u != skip:
            augment(u, set())
    return match


def solve_geography_matching(g: GeoInstance) -> GameOutcome:
    """Undirected vertex geography on a bipartite graph, decided by matchings.

    The first player wins exactly when every maximum matching covers the
    start vertex, and then wins by following matching edges.  With vertex
    colors, edges joining equal colors are never playable and are dropped
    first; the start vertex takes the second player's color since the first
    player must leave it.
    """
    if g.graph.directed or g.rule != "vertex":
        raise GameError("not undirected vertex geography")
    if g.edge_colors is not None:
        raise GameError("not vertex geography with vertex colors")
    vs = g.graph.vertices
    adj: Dict[Hashable, List[Hashable]] = {v: [] for v in vs}
    col = None
    if g.vertex_colors is not None:
        col = dict(g.vertex_colors)
        col[g.start] = P2
    for _e, u, v in g.graph.edges:
        if u == v:
            continue
        if col is not None and col[u] == col[v]:
            continue
        if v not in adj[u]:
            adj[u].append(v)
            adj[v].append(u)
    side = _two_color(vs, adj, g.start)
    left = [v for v in vs if side[v] == 0]
    full = _max_matching(left, adj)
    without = _max_matching(left, adj, skip=g.start)
    if len(full) > len(without):
        # the start vertex is on the left side, so some right vertex is matched to it
        mate = next(w for w, u in full.items() if u == g.start)
        return GameOutcome(P1, mate)
    return GameOutcome(P2)


# ---------------------------------------------------------------- matching game


def _signature(t: SquareTile) -> Tuple[str, ...]:
    rots = [tuple(str(x) for x in (t.sides[(i - r) % 4] for i in range(4))) for r in range(4)]
    return min(rots)


def solve_match_game(g: GameInstance) -> GameOutcome:
    """Exact winner of the strip-matching game by memoized search.

    A move places a tile from the mover's pool, in some rotation, in the
    leftmost free cell so its west side is compatible with the exposed label.
    Identical tiles (equal up to rotation) are merged in the memo key.
    """
    tiles = {t.id: t for t in g.tiles}
    sig = {tid: _signature(t) for tid, t in tiles.items()}
    owner = {}
    if g.pools is not None:
        for tid in g.pools[0]:
            owner[tid] = P1
        for tid in g.pools[1]:
            owner[tid] = P2
    views = {tid: [orient(t, r) for r in range(4)] for tid, t in tiles.items()}
    memo: Dict[tuple, bool] = {}

    def options(exposed, left_ids, who):
        seen = set()
        for tid in left_ids:
            if owner and owner[tid] != who:
                continue
            if sig[tid] in seen:
                continue
            seen.add(sig[tid])
            for r in range(4):
                v = views[tid][r]
                if compatible(exposed, v["W"], g.rule):
                    yield tid, r, v["E"]

    def key(exposed, left_ids, who):
        return (str(exposed), who,
                tuple(sorted((owner.get(t, ""), sig[t]) for t in left_ids)))

    def wins(exposed, left_ids, who) -> bool:
        k = key(exposed, left_ids, who)
        hit = memo.get(k)
        if hit is not None:
            return hit
        res = False
        for tid, _r, east in options(exposed, left_ids, who):
            if not wins(east, left_ids - {tid}, _other(who)):
                res = True
                break
        memo[k] = res
        return res

    pool = frozenset(tiles)
    for tid, r, east in options(g.left, pool, P1):
        if not wins(east, pool - {tid}, P2):
            return GameOutcome(P1, (tid, r))
    return GameOutcome(P2)
