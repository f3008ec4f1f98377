"""Embedding a strip with a left boundary into a shapeless puzzle.

A rigid spiral of frame tiles walls in a one-row corridor.  The only frame
side a strip tile can touch carries the strip's left boundary label, so the
strip tiles have nowhere to go except along the corridor.

Layout, with the cap at the origin (``x`` east, ``y`` south) and ``n`` the
strip length::

    cap, top wall x=1..n+1 (y=0), corner (n+2, 0),
    right wall (n+2, 1..3), corner (n+2, 4),
    bottom wall x=n+1..1 (y=4), corner (0, 4),
    left wall (0, 3), boundary tile (0, 2), corridor x=1..n (y=2)
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from ..model import Instance, Rule, Shapeless, Signed, Solution, SquareTile, Strip, Unsigned
from .sat import PreconditionError

CORRIDOR_Y = 2


def _chain(n: int) -> List[Tuple[str, Tuple[int, int], str, str, str]]:
    """Frame tiles in spiral order: (name, cell, side entered, side left, wall)."""
    out = [("cap", (0, 0), None, "E", "TW")]
    out += [(f"top{j}", (j, 0), "W", "E", "TW") for j in range(1, n + 2)]
    out.append(("corner-ne", (n + 2, 0), "W", "S", "RW"))
    out += [(f"right{j}", (n + 2, j), "N", "S", "RW") for j in range(1, 4)]
    out.append(("corner-se", (n + 2, 4), "N", "W", "BW"))
    out += [(f"bottom{j}", (n + 2 - j, 4), "E", "W", "BW") for j in range(1, n + 2)]
    out.append(("corner-sw", (0, 4), "E", "N", "LW"))
    out.append(("left1", (0, 3), "S", "N", "LW"))
    out.append(("boundary", (0, CORRIDOR_Y), "S", None, None))
    return out


def frame_id(name: str) -> str:
    return f"frame:{name}"


def frame_tiles(n: int, left, signed: bool, rooted: bool) -> Tuple[List[SquareTile], Dict[str, Tuple[int, int]]]:
    """Frame tiles in their placed orientation and the cell each one occupies."""
    chain = _chain(n)

    def lab(color, sign):
        return Signed(color, sign) if signed else Unsigned(color)

    sides: List[Dict[str, object]] = [dict() for _ in chain]
    for k in range(len(chain) - 1):
        name, _cell, _in, out, wall = chain[k]
        color = f"frame:F{k}" if rooted else f"frame:{wall}"
        sides[k][out] = lab(color, -1)
        sides[k + 1][chain[k + 1][2]] = lab(color, 1)
    sides[-1]["E"] = left
    tiles, cells = [], {}
    for k, (name, cell, _i, _o, _w) in enumerate(chain):
        full = {d: sides[k].get(d) or lab(f"frame:U({name},{d})", 1) for d in "NESW"}
        tid = frame_id(name)
        tiles.append(SquareTile(full["N"], full["E"], full["S"], full["W"], id=tid))
        cells[tid] = cell
    return tiles, cells


def strip_to_shapeless(inst: Instance, rooted: bool = True) -> Instance:
    """Shapeless instance solvable exactly when the strip is; rooted copies keep the count."""
    b = inst.board
    if not isinstance(b, Strip):
        raise PreconditionError("not a square strip")
    if b.right is not None:
        raise PreconditionError("not without right boundary")
    if b.left is None:
        raise PreconditionError("not with a left boundary")
    if inst.rule not in (Rule.SIGNED_OPP, Rule.UNSIGNED_EQ):
        raise PreconditionError("not a signed or unsigned strip")
    frame, _cells = frame_tiles(b.n, b.left, inst.rule is Rule.SIGNED_OPP, rooted)
    ids = {t.id for t in frame}
    clash = [t.id for t in inst.tiles if t.id in ids]
    if clash:
        raise PreconditionError(f"not disjoint: tile id {clash[0]!r} is reserved")
    board = Shapeless(rooted=rooted, root=frame_id("cap") if rooted else None, root_orientation=0)
    return Instance(board, tuple(frame) + tuple(inst.tiles), inst.rule)


def strip_solution_to_shapeless(shapeless: Instance, placements) -> Solution:
    """Place the frame and lay the strip solution along the corridor."""
    n = len(placements)
    _tiles, cells = frame_tiles(n, None, False, True)
    out = {cell: (tid, 0) for tid, cell in cells.items()}
    for k, (tid, o) in enumerate(placements):
        out[(k + 1, CORRIDOR_Y)] = (tid, o)
    return Solution.of_cells(out)


def shapeless_to_strip(solution: Solution) -> List[Tuple[object, int]]:
    """Read the corridor of a rooted shapeless solution back as strip placements."""
    cells = solution.cell_map()
    row = sorted((x, p) for (x, y), p in cells.items()
                 if y == CORRIDOR_Y and not str(p[0]).startswith("frame:"))
    return [p for _x, p in row]
