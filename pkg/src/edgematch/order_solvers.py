"""Polynomial solvers for boards whose labels are ordered integers."""

from __future__ import annotations

from typing import Sequence

from .model import (Instance, ModelError, Num, Rect, Rule, Solution, SquareTile,
                    Strip, orient, verify)


class PreconditionError(ModelError):
    """Input violates the precondition of a polynomial algorithm."""


def _check_num(tiles: Sequence[SquareTile]) -> None:
    for t in tiles:
        if not isinstance(t, SquareTile):
            raise ModelError(f"square tiles required, got {type(t).__name__}")
        for lab in t.sides:
            if not isinstance(lab, Num):
                raise ModelError(f"tile {t.id!r} has non-numeric label {lab!r}")


def _id_key(tid):
    # ids may mix ints and strings; keep the sort total
    return (type(tid).__name__, tid)


def leq_orientation(tile: SquareTile) -> int:
    """First quarter turn giving left >= right and top >= bottom."""
    for r in range(4):
        v = orient(tile, r)
        if v["W"].value >= v["E"].value and v["N"].value >= v["S"].value:
            return r
    raise AssertionError("unreachable: some rotation always works")


def solve_leq_rect(m: int, n: int, tiles: Sequence[SquareTile]) -> Solution:
    """Tile an m x n rectangle so every contact satisfies left/top <= right/bottom.

    Every instance is solvable: orient tiles so each one "descends", put the
    tiles with the smallest bottoms in the top row and so on, then sort rows
    by right label.
    """
    if m <= 0 or n <= 0:
        raise ModelError("board dimensions must be positive")
    if len(tiles) != m * n:
        raise ModelError(f"{m}x{n} board needs {m * n} tiles, got {len(tiles)}")
    _check_num(tiles)
    oriented = []
    for t in tiles:
        r = leq_orientation(t)
        v = orient(t, r)
        oriented.append((v["S"].value, v["E"].value, _id_key(t.id), t.id, r))
    oriented.sort(key=lambda x: (x[0], x[2]))
    placements = []
    for row in range(m):
        chunk = sorted(oriented[row * n:(row + 1) * n], key=lambda x: (x[1], x[2]))
        placements.extend((x[3], x[4]) for x in chunk)
    return Solution(placements=tuple(placements))


def solve_lt_distinct_rect(m: int, n: int, tiles: Sequence[SquareTile]) -> Solution:
    """Strict version of :func:`solve_leq_rect` when all 4mn labels differ."""
    _check_num(tiles)
    seen = set()
    for t in tiles:
        for lab in t.sides:
            if lab.value in seen:
                raise PreconditionError(f"duplicate label {lab.value}")
            seen.add(lab.value)
    return solve_leq_rect(m, n, tiles)


def lt_orientation(tile: SquareTile) -> int:
    """Rotation putting the larger label of the widest unequal pair on the left."""
    best = None
    for r in range(4):
        v = orient(tile, r)
        gap = v["W"].value - v["E"].value
        if gap > 0 and (best is None or gap > best[0]):
            best = (gap, r)
    if best is None:
        raise PreconditionError(f"tile {tile.id!r} has no pair of unequal opposite sides")
    return best[1]


def solve_lt_strip(tiles: Sequence[SquareTile]) -> Solution:
    """Solve a 1 x n strip under strict inequality.

    Needs each tile to have some pair of opposite sides with different labels.
    """
    _check_num(tiles)
    rows = []
    for t in tiles:
        r = lt_orientation(t)
        rows.append((orient(t, r)["W"].value, _id_key(t.id), t.id, r))
    rows.sort(key=lambda x: (x[0], x[1]))
    return Solution(placements=tuple((x[2], x[3]) for x in rows))


def solve(instance: Instance) -> Solution:
    """Dispatch an ordered-label instance to the matching algorithm."""
    b = instance.board
    if instance.rule is Rule.LESS_OR_EQ and isinstance(b, Rect):
        return solve_leq_rect(b.m, b.n, instance.tiles)
    if instance.rule is Rule.LESS_OR_EQ and isinstance(b, Strip) and b.left is None and b.right is None:
        return solve_leq_rect(1, b.n, instance.tiles)
    if instance.rule is Rule.STRICT_LESS and isinstance(b, Rect):
        return solve_lt_distinct_rect(b.m, b.n, instance.tiles)
    if instance.rule is Rule.STRICT_LESS and isinstance(b, Strip) and b.left is None and b.right is None:
        return solve_lt_strip(instance.tiles)
    raise ModelError("no polynomial algorithm for this board/rule combination")


def check(instance: Instance, solution: Solution) -> bool:
    return verify(instance, solution).ok
