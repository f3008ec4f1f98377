"""Tiles, labels, boards and the solution checker shared by every other module.

Orientation conventions
-----------------------
Square tiles expose ``(N, E, S, W)``; orientation ``r`` in ``0..3`` is ``r``
clockwise quarter turns.  Squares never reflect.

Equilateral triangles store their edges in clockwise order.  Orientation
``k`` in ``0..5`` is rotation ``k % 3`` plus a reflection when ``k >= 3``
(only legal when the instance allows reflection).  In a strip an up-pointing
triangle reads its clockwise triple as ``(left, right, base)`` and a
down-pointing one as ``(left, top, right)``.

Right isosceles triangles store ``(leg_left, leg_right, hyp)`` read with the
hypotenuse down.  On a leg-contact strip orientation ``0`` is hypotenuse down
and ``2`` is the half turn (hypotenuse up).  On a hypotenuse-contact strip the
orientation is the cell corner holding the right angle: ``0`` top-left,
``1`` top-right, ``2`` bottom-right, ``3`` bottom-left.
"""

from __future__ import annotations

import enum
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Optional, Sequence, Tuple, Union

TileId = Hashable


class ModelError(ValueError):
    """Malformed labels, tiles, boards or orientations."""


# ---------------------------------------------------------------- labels


@dataclass(frozen=True, order=True)
class Unsigned:
    color: str

    def __str__(self) -> str:
        return self.color


@dataclass(frozen=True, order=True)
class Signed:
    color: str
    sign: int  # +1 or -1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ModelError(f"sign must be +1 or -1, got {self.sign!r}")

    def __neg__(self) -> "Signed":
        return Signed(self.color, -self.sign)

    def __str__(self) -> str:
        return ("+" if self.sign > 0 else "-") + self.color


@dataclass(frozen=True, order=True)
class Num:
    value: int

    def __str__(self) -> str:
        return str(self.value)


Label = Union[Unsigned, Signed, Num]


def plus(color: str) -> Signed:
    return Signed(color, 1)


def minus(color: str) -> Signed:
    return Signed(color, -1)


def strip_sign(label: Label) -> Label:
    """Unsigned twin of a signed label; other labels pass through."""
    if isinstance(label, Signed):
        return Unsigned(label.color)
    return label


class Rule(enum.Enum):
    UNSIGNED_EQ = "unsigned"
    SIGNED_OPP = "signed"
    STRICT_LESS = "lt"
    LESS_OR_EQ = "leq"

    @property
    def family(self) -> type:
        return _RULE_FAMILY[self]


_RULE_FAMILY = {
    Rule.UNSIGNED_EQ: Unsigned,
    Rule.SIGNED_OPP: Signed,
    Rule.STRICT_LESS: Num,
    Rule.LESS_OR_EQ: Num,
}


def compatible(a: Label, b: Label, rule: Rule, axis: str = "horizontal") -> bool:
    """True iff ``a`` (left or top side of the contact) may touch ``b``.

    >>> compatible(Num(1), Num(52), Rule.STRICT_LESS)
    True
    >>> compatible(plus("a"), plus("a"), Rule.SIGNED_OPP)
    False
    """
    if axis not in ("horizontal", "vertical"):
        raise ModelError(f"unknown axis {axis!r}")
    fam = rule.family
    if type(a) is not fam or type(b) is not fam:
        raise ModelError(f"labels {a!r}, {b!r} do not belong to rule {rule.value}")
    if rule is Rule.UNSIGNED_EQ:
        return a.color == b.color
    if rule is Rule.SIGNED_OPP:
        return a.color == b.color and a.sign == -b.sign
    if rule is Rule.STRICT_LESS:
        return a.value < b.value
    return a.value <= b.value


# ---------------------------------------------------------------- tiles


@dataclass(frozen=True)
class SquareTile:
    north: Label
    east: Label
    south: Label
    west: Label
    id: TileId = None

    @property
    def sides(self) -> Tuple[Label, Label, Label, Label]:
        return (self.north, self.east, self.south, self.west)

    @classmethod
    def from_wnes(cls, w, n, e, s, id=None) -> "SquareTile":
        return cls(n, e, s, w, id)

    def labels(self) -> Tuple[Label, ...]:
        return self.sides


@dataclass(frozen=True)
class EqTriTile:
    edges: Tuple[Label, Label, Label]  # clockwise
    id: TileId = None

    def labels(self) -> Tuple[Label, ...]:
        return tuple(self.edges)


@dataclass(frozen=True)
class RightTriTile:
    leg_left: Label
    leg_right: Label
    hyp: Label
    id: TileId = None

    def labels(self) -> Tuple[Label, ...]:
        return (self.leg_left, self.leg_right, self.hyp)


Tile = Union[SquareTile, EqTriTile, RightTriTile]

# right-angle corner -> (cell side carrying leg_left, cell side carrying leg_right)
CORNER_LEGS = {0: ("W", "N"), 1: ("N", "E"), 2: ("E", "S"), 3: ("S", "W")}
CORNER_NAMES = {0: "TL", 1: "TR", 2: "BR", 3: "BL"}


def orientations(tile: Tile, *, pose: str = "up", allow_reflection: bool = False) -> range:
    """Legal orientation indices of ``tile`` for the given placement pose."""
    if isinstance(tile, SquareTile):
        return range(4)
    if isinstance(tile, EqTriTile):
        return range(6 if allow_reflection else 3)
    if pose == "cell":
        return range(4)
    return range(0, 3, 2)


def orient(tile: Tile, orientation: int, *, pose: str = "up",
           allow_reflection: bool = False) -> dict:
    """Side labels of ``tile`` as placed.

    Keys are ``N E S W`` for squares; ``left right base`` (pose ``up``) or
    ``left top right`` (pose ``down``) for equilateral triangles; ``left
    right hyp`` for right triangles on a leg strip (pose ``leg``) and two of
    ``N E S W`` plus ``hyp`` on a hypotenuse strip (pose ``cell``).
    """
    if isinstance(tile, SquareTile):
        if orientation not in range(4):
            raise ModelError(f"square orientation {orientation!r} not in 0..3")
        s = tile.sides
        n, e, so, w = (s[(i - orientation) % 4] for i in range(4))
        return {"N": n, "E": e, "S": so, "W": w}
    if isinstance(tile, EqTriTile):
        if orientation not in range(6):
            raise ModelError(f"triangle orientation {orientation!r} not in 0..5")
        if orientation >= 3 and not allow_reflection:
            raise ModelError("reflection is disabled for this instance")
        edges = tuple(tile.edges)
        if orientation >= 3:
            edges = (edges[0], edges[2], edges[1])
        r = orientation % 3
        c = edges[r:] + edges[:r]
        if pose == "up":
            return {"left": c[0], "right": c[1], "base": c[2]}
        if pose == "down":
            return {"left": c[0], "top": c[1], "right": c[2]}
        raise ModelError(f"unknown triangle pose {pose!r}")
    if isinstance(tile, RightTriTile):
        if pose == "cell":
            if orientation not in range(4):
                raise ModelError(f"corner {orientation!r} not in 0..3")
            a, b = CORNER_LEGS[orientation]
            return {a: tile.leg_left, b: tile.leg_right, "hyp": tile.hyp}
        if orientation == 0:
            return {"left": tile.leg_left, "right": tile.leg_right, "hyp": tile.hyp}
        if orientation == 2:
            return {"left": tile.leg_right, "right": tile.leg_left, "hyp": tile.hyp}
        raise ModelError(f"leg-strip orientation must be 0 or 2, got {orientation!r}")
    raise ModelError(f"not a tile: {tile!r}")


# ---------------------------------------------------------------- boards


@dataclass(frozen=True)
class Rect:
    m: int
    n: int

    @property
    def capacity(self) -> int:
        return self.m * self.n


@dataclass(frozen=True)
class Strip:
    n: int
    left: Optional[Label] = None
    right: Optional[Label] = None

    @property
    def capacity(self) -> int:
        return self.n


@dataclass(frozen=True)
class EqTriStrip:
    n: int
    left: Optional[Label] = None
    first_points: str = "up"

    def __post_init__(self):
        if self.first_points not in ("up", "down"):
            raise ModelError("first_points must be 'up' or 'down'")

    @property
    def capacity(self) -> int:
        return self.n

    def pose(self, i: int) -> str:
        if i % 2 == 0:
            return self.first_points
        return "down" if self.first_points == "up" else "up"


@dataclass(frozen=True)
class LegStrip:
    n: int
    left_acute: str = "bottom"

    def __post_init__(self):
        if self.left_acute not in ("bottom", "top"):
            raise ModelError("left_acute must be 'bottom' or 'top'")

    @property
    def capacity(self) -> int:
        return self.n

    def orientation_at(self, i: int) -> int:
        first = 0 if self.left_acute == "bottom" else 2
        return first if i % 2 == 0 else 2 - first

    @property
    def right_acute(self) -> str:
        """Side of the right end's acute angle: where the last hypotenuse lies."""
        return "bottom" if self.orientation_at(self.n - 1) == 0 else "top"


@dataclass(frozen=True)
class HypStrip:
    """``n`` unit cells, each split by a diagonal into two right triangles."""

    n: int
    left: Optional[Label] = None

    @property
    def capacity(self) -> int:
        return 2 * self.n


@dataclass(frozen=True)
class Shapeless:
    rooted: bool = False
    root: Optional[TileId] = None
    root_orientation: int = 0

    @property
    def capacity(self) -> None:
        return None


Board = Union[Rect, Strip, EqTriStrip, LegStrip, HypStrip, Shapeless]

_BOARD_FAMILY = {
    Rect: SquareTile, Strip: SquareTile, Shapeless: SquareTile,
    EqTriStrip: EqTriTile, LegStrip: RightTriTile, HypStrip: RightTriTile,
}


def _label_family(labels: Iterable[Label]) -> Optional[type]:
    fams = {type(x) for x in labels}
    if len(fams) > 1:
        raise ModelError(f"mixed label families: {sorted(f.__name__ for f in fams)}")
    return fams.pop() if fams else None


@dataclass(frozen=True)
class Instance:
    board: Board
    tiles: Tuple[Tile, ...]
    rule: Rule
    allow_reflection: bool = False

    def __post_init__(self):
        object.__setattr__(self, "tiles", tuple(self.tiles))
        want = _BOARD_FAMILY[type(self.board)]
        labels = []
        for t in self.tiles:
            if not isinstance(t, want):
                raise ModelError(f"{type(self.board).__name__} needs {want.__name__} tiles")
            labels.extend(t.labels())
        for attr in ("left", "right"):
            lab = getattr(self.board, attr, None)
            if lab is not None:
                labels.append(lab)
        fam = _label_family(labels)
        if fam is not None and fam is not self.rule.family:
            raise ModelError(f"rule {self.rule.value} does not apply to {fam.__name__} labels")
        ids = [t.id for t in self.tiles]
        if len(set(ids)) != len(ids):
            raise ModelError("tile ids must be unique")
        if self.allow_reflection and want is not EqTriTile:
            raise ModelError("reflection applies to equilateral triangles only")
        cap = self.board.capacity
        if cap is not None and cap != len(self.tiles):
            raise ModelError(f"board holds {cap} tiles but {len(self.tiles)} given")
        if isinstance(self.board, Shapeless) and self.board.rooted:
            if self.board.root not in set(ids):
                raise ModelError("rooted shapeless board names an unknown root tile")

    def tile(self, tid: TileId) -> Tile:
        return self.tile_map()[tid]

    def tile_map(self) -> dict:
        return {t.id: t for t in self.tiles}


def with_ids(tiles: Sequence[Tile], start: int = 0) -> Tuple[Tile, ...]:
    """Copy of ``tiles`` with integer ids assigned in order (existing ids are replaced)."""
    out = []
    for i, t in enumerate(tiles, start):
        if isinstance(t, SquareTile):
            out.append(SquareTile(t.north, t.east, t.south, t.west, i))
        elif isinstance(t, EqTriTile):
            out.append(EqTriTile(tuple(t.edges), i))
        else:
            out.append(RightTriTile(t.leg_left, t.leg_right, t.hyp, i))
    return tuple(out)


# ---------------------------------------------------------------- solutions

Placement = Tuple[TileId, int]


@dataclass(frozen=True)
class Solution:
    """Placements in reading order, or a coordinate map for shapeless boards.

    Shapeless coordinates are ``(x, y)`` with ``x`` growing east and ``y``
    growing south.
    """

    placements: Optional[Tuple[Placement, ...]] = None
    cells: Optional[Tuple[Tuple[Tuple[int, int], Placement], ...]] = None

    def __post_init__(self):
        if self.placements is not None:
            object.__setattr__(self, "placements",
                               tuple((tid, int(o)) for tid, o in self.placements))
        if self.cells is not None:
            items = self.cells.items() if isinstance(self.cells, Mapping) else self.cells
            object.__setattr__(self, "cells", tuple(sorted(
                ((int(x), int(y)), (tid, int(o))) for (x, y), (tid, o) in items)))

    @classmethod
    def of_cells(cls, cells: Mapping) -> "Solution":
        return cls(cells=tuple(cells.items()))

    def cell_map(self) -> dict:
        return dict(self.cells or ())


@dataclass(frozen=True)
class Verdict:
    ok: bool
    message: str = ""
    where: Optional[tuple] = None
    structural: bool = False

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        kind = "structure" if self.structural else "violation"
        loc = f" at {self.where}" if self.where is not None else ""
        return f"{kind}{loc}: {self.message}"


OK = Verdict(True)


def _bad(msg: str, where=None) -> Verdict:
    return Verdict(False, msg, where)


def _structure(msg: str, where=None) -> Verdict:
    return Verdict(False, msg, where, structural=True)


def _check_usage(instance: Instance, used: Sequence[TileId]) -> Optional[Verdict]:
    tiles = instance.tile_map()
    counts = Counter(used)
    for tid, c in counts.items():
        if tid not in tiles:
            return _structure(f"unknown tile {tid!r}")
        if c > 1:
            return _structure(f"tile {tid!r} used {c} times")
    missing = [t.id for t in instance.tiles if t.id not in counts]
    if missing:
        return _structure(f"tiles never placed: {missing!r}")
    return None


def _safe_orient(instance: Instance, tid, o, pose):
    return orient(instance.tile(tid), o, pose=pose, allow_reflection=instance.allow_reflection)


def verify(instance: Instance, solution: Solution) -> Verdict:
    """Check every constraint the board imposes on ``solution``."""
    board = instance.board
    rule = instance.rule
    if isinstance(board, Shapeless):
        return _verify_shapeless(instance, solution)
    if solution.placements is None:
        return _structure("shaped boards need a placement sequence")
    pl = solution.placements
    if len(pl) != board.capacity:
        return _structure(f"expected {board.capacity} placements, got {len(pl)}")
    bad = _check_usage(instance, [tid for tid, _ in pl])
    if bad is not None:
        return bad
    try:
        if isinstance(board, Rect):
            views = [_safe_orient(instance, tid, o, None) for tid, o in pl]
            m, n = board.m, board.n
            for r in range(m):
                for c in range(n):
                    v = views[r * n + c]
                    if c + 1 < n and not compatible(v["E"], views[r * n + c + 1]["W"], rule):
                        return _bad(f"{v['E']} | {views[r * n + c + 1]['W']}", ((r, c), (r, c + 1)))
                    if r + 1 < m and not compatible(v["S"], views[(r + 1) * n + c]["N"], rule, "vertical"):
                        return _bad(f"{v['S']} / {views[(r + 1) * n + c]['N']}", ((r, c), (r + 1, c)))
            return OK
        if isinstance(board, Strip):
            views = [_safe_orient(instance, tid, o, None) for tid, o in pl]
            return _verify_sequence(rule, [(v["W"], v["E"]) for v in views], board.left, board.right)
        if isinstance(board, EqTriStrip):
            lr = []
            for i, (tid, o) in enumerate(pl):
                v = _safe_orient(instance, tid, o, board.pose(i))
                lr.append((v["left"], v["right"]))
            return _verify_sequence(rule, lr, board.left, None)
        if isinstance(board, LegStrip):
            lr = []
            for i, (tid, o) in enumerate(pl):
                if o != board.orientation_at(i):
                    return _bad(f"position {i} needs orientation {board.orientation_at(i)}", (i,))
                v = _safe_orient(instance, tid, o, "leg")
                lr.append((v["left"], v["right"]))
            return _verify_sequence(rule, lr, None, None)
        if isinstance(board, HypStrip):
            return _verify_hyp(instance, pl)
    except ModelError as exc:
        return _structure(str(exc))
    raise ModelError(f"unsupported board {board!r}")


def _verify_sequence(rule, lr, left, right) -> Verdict:
    if lr and left is not None and not compatible(left, lr[0][0], rule):
        return _bad(f"left boundary {left} | {lr[0][0]}", ("boundary", 0))
    for i in range(len(lr) - 1):
        if not compatible(lr[i][1], lr[i + 1][0], rule):
            return _bad(f"{lr[i][1]} | {lr[i + 1][0]}", (i, i + 1))
    if lr and right is not None and not compatible(lr[-1][1], right, rule):
        return _bad(f"{lr[-1][1]} | right boundary {right}", (len(lr) - 1, "boundary"))
    return OK


def _verify_hyp(instance: Instance, pl) -> Verdict:
    rule = instance.rule
    lr = []
    for k in range(instance.board.n):
        (ta, oa), (tb, ob) = pl[2 * k], pl[2 * k + 1]
        if oa not in (0, 3) or ob != (oa + 2) % 4:
            return _bad(f"cell {k} corners {oa},{ob} do not share a diagonal", (2 * k, 2 * k + 1))
        va = _safe_orient(instance, ta, oa, "cell")
        vb = _safe_orient(instance, tb, ob, "cell")
        if not compatible(va["hyp"], vb["hyp"], rule):
            return _bad(f"hypotenuses {va['hyp']} / {vb['hyp']}", (2 * k, 2 * k + 1))
        lr.append((va["W"], vb["E"]))
    return _verify_sequence(rule, lr, instance.board.left, None)


_DIRS = {"E": (1, 0, "W"), "W": (-1, 0, "E"), "S": (0, 1, "N"), "N": (0, -1, "S")}


def _verify_shapeless(instance: Instance, solution: Solution) -> Verdict:
    if solution.cells is None:
        return _structure("shapeless boards need a coordinate map")
    cells = solution.cell_map()
    bad = _check_usage(instance, [tid for tid, _ in cells.values()])
    if bad is not None:
        return bad
    try:
        views = {xy: _safe_orient(instance, tid, o, None) for xy, (tid, o) in cells.items()}
    except ModelError as exc:
        return _structure(str(exc))
    board = instance.board
    if board.rooted:
        if cells.get((0, 0)) != (board.root, board.root_orientation):
            return _bad("root tile is not at the origin in its fixed orientation", ((0, 0),))
    for (x, y), v in views.items():
        for side in ("E", "S"):
            dx, dy, opp = _DIRS[side]
            other = views.get((x + dx, y + dy))
            if other is not None:
                axis = "horizontal" if side == "E" else "vertical"
                if not compatible(v[side], other[opp], instance.rule, axis):
                    return _bad(f"{v[side]} vs {other[opp]}", ((x, y), (x + dx, y + dy)))
    if views:
        start = next(iter(views))
        seen = {start}
        queue = deque([start])
        while queue:
            x, y = queue.popleft()
            for dx, dy, _ in _DIRS.values():
                nb = (x + dx, y + dy)
                if nb in views and nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        if len(seen) != len(views):
            return _bad("placement is not edge-connected")
    return OK
