"""Linear-time solver for right-triangle strips that touch only along legs.

Each tile ``(leg_left=u, leg_right=v)`` becomes a directed edge ``u -> v``.
A tile placed hypotenuse-down walks its edge forward, hypotenuse-up walks it
backward, and neighbours on the strip share the vertex between them, so a
tiling is exactly an antidirected Eulerian trail.
"""

from __future__ import annotations

from typing import Optional, Sequence, Tuple

from .euler import (BACKWARD, FORWARD, MultiDigraph, antidirected_eulerian,
                    ft_antidirected_eulerian)
from .model import (Instance, LegStrip, ModelError, RightTriTile, Rule, Signed,
                    Solution, Unsigned)


def _color(label) -> str:
    if isinstance(label, (Signed, Unsigned)):
        return label.color
    raise ModelError(f"leg labels must be colors, got {label!r}")


def to_digraph(tiles: Sequence[RightTriTile]) -> Tuple[MultiDigraph, Optional[dict]]:
    """Digraph on leg colors with one edge per tile (edge id = tile id).

    For signed tiles the second value holds four groups per color, in order:
    incoming with ``+c`` on the right leg, incoming with ``-c``, outgoing with
    ``+c`` on the left leg, outgoing with ``-c``.  Loop ends are tagged
    ``(id, "in")`` / ``(id, "out")``.
    """
    verts = []
    edges = []
    signed = any(isinstance(x, Signed) for t in tiles for x in (t.leg_left, t.leg_right))
    groups = {}
    for t in tiles:
        u, v = _color(t.leg_left), _color(t.leg_right)
        verts += [u, v]
        edges.append((t.id, u, v))
        if signed:
            gv = groups.setdefault(v, [[], [], [], []])
            gv[0 if t.leg_right.sign > 0 else 1].append((t.id, "in"))
            gu = groups.setdefault(u, [[], [], [], []])
            gu[2 if t.leg_left.sign > 0 else 3].append((t.id, "out"))
    g = MultiDigraph(tuple(verts), tuple(edges))
    if not signed:
        return g, None
    return g, {c: [grp for grp in gs if grp] for c, gs in groups.items()}


def _dir(orientation: int) -> str:
    return FORWARD if orientation == 0 else BACKWARD


def solve_leg_contact(instance: Instance) -> Optional[Solution]:
    """Solve a :class:`LegStrip` instance or return ``None`` when impossible."""
    board = instance.board
    if not isinstance(board, LegStrip):
        raise ModelError("solve_leg_contact needs a LegStrip board")
    if instance.rule not in (Rule.UNSIGNED_EQ, Rule.SIGNED_OPP):
        raise ModelError("leg-contact strips use color labels")
    if board.n == 0:
        return Solution(placements=())
    g, groups = to_digraph(instance.tiles)
    start, end = _dir(board.orientation_at(0)), _dir(board.orientation_at(board.n - 1))
    if instance.rule is Rule.SIGNED_OPP:
        trail = ft_antidirected_eulerian(g, groups or {}, start, end)
    else:
        trail = antidirected_eulerian(g, start, end)
    if trail is None:
        return None
    return Solution(placements=tuple((e, 0 if d == FORWARD else 2) for e, d in trail))
