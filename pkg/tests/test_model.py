import pytest

from edgematch.model import (EqTriStrip, EqTriTile, HypStrip, Instance, LegStrip, ModelError, Num, Rect,
                             RightTriTile, Rule, Shapeless, Signed, Solution, SquareTile, Strip, Unsigned,
                             compatible, minus, orient, plus, strip_sign, verify, with_ids)


def N(*xs):
    return [Num(x) for x in xs]


def figure_one():
    """2x3 strict puzzle whose contacts are 1<52, 22<78, 3<7, 7<21, 12<54, 12<14, 1<45."""
    rows = [
        # north, east, south, west
        (0, 1, 12, 0), (0, 22, 12, 52), (0, 0, 1, 78),
        (54, 3, 0, 0), (14, 7, 0, 7), (45, 0, 0, 21),
    ]
    tiles = [SquareTile(*N(*r), id=k) for k, r in enumerate(rows)]
    inst = Instance(Rect(2, 3), tiles, Rule.STRICT_LESS)
    return inst, Solution(placements=[(k, 0) for k in range(6)])


def test_compatibility_rules():
    assert compatible(Num(1), Num(52), Rule.STRICT_LESS)
    assert not compatible(Num(5), Num(5), Rule.STRICT_LESS)
    assert compatible(Num(5), Num(5), Rule.LESS_OR_EQ)
    assert compatible(plus("a"), minus("a"), Rule.SIGNED_OPP)
    assert not compatible(plus("a"), plus("a"), Rule.SIGNED_OPP)
    assert not compatible(plus("a"), minus("b"), Rule.SIGNED_OPP)
    assert compatible(Unsigned("a"), Unsigned("a"), Rule.UNSIGNED_EQ)
    assert strip_sign(minus("q")) == Unsigned("q")
    with pytest.raises(ModelError):
        compatible(Num(1), Unsigned("a"), Rule.STRICT_LESS)
    with pytest.raises(ModelError):
        compatible(Num(1), Num(2), Rule.STRICT_LESS, axis="diagonal")


def test_signed_label_rejects_bad_sign():
    with pytest.raises(ModelError):
        Signed("a", 0)


def test_square_rotation_is_clockwise():
    t = SquareTile(*N(1, 2, 3, 4), id=0)
    assert orient(t, 0) == {"N": Num(1), "E": Num(2), "S": Num(3), "W": Num(4)}
    assert orient(t, 1) == {"N": Num(4), "E": Num(1), "S": Num(2), "W": Num(3)}
    with pytest.raises(ModelError):
        orient(t, 4)


def test_triangle_poses():
    t = EqTriTile(tuple(Unsigned(c) for c in "abc"), id=0)
    assert orient(t, 0, pose="up") == {"left": Unsigned("a"), "right": Unsigned("b"), "base": Unsigned("c")}
    assert orient(t, 1, pose="down") == {"left": Unsigned("b"), "top": Unsigned("c"), "right": Unsigned("a")}
    with pytest.raises(ModelError):
        orient(t, 3)
    assert orient(t, 3, allow_reflection=True)["right"] == Unsigned("c")


def test_leg_strip_alternates():
    b = LegStrip(3, "bottom")
    assert [b.orientation_at(i) for i in range(3)] == [0, 2, 0]
    assert LegStrip(2, "top").orientation_at(0) == 2
    assert b.right_acute == "bottom"
    assert LegStrip(2, "bottom").right_acute == "top"
    r = RightTriTile(Unsigned("x"), Unsigned("y"), Unsigned("h"), id=0)
    assert orient(r, 2, pose="leg")["left"] == Unsigned("y")
    with pytest.raises(ModelError):
        orient(r, 1, pose="leg")


def test_instance_validation():
    a = SquareTile(*N(1, 2, 3, 4), id=0)
    with pytest.raises(ModelError):
        Instance(Rect(1, 2), [a], Rule.STRICT_LESS)
    with pytest.raises(ModelError):
        Instance(Strip(1), [a], Rule.SIGNED_OPP)
    with pytest.raises(ModelError):
        Instance(Strip(2), [a, a], Rule.STRICT_LESS)
    with pytest.raises(ModelError):
        Instance(EqTriStrip(1), [a], Rule.STRICT_LESS)
    with pytest.raises(ModelError):
        Instance(Shapeless(True, root=9), [a], Rule.STRICT_LESS)
    with pytest.raises(ModelError):
        Instance(Strip(1), [a], Rule.STRICT_LESS, allow_reflection=True)
    assert [t.id for t in with_ids([a, a], start=5)] == [5, 6]


def test_figure_one_verifies():
    inst, sol = figure_one()
    assert verify(inst, sol).ok


def test_tampered_solution_is_located():
    inst, sol = figure_one()
    bad = Solution(placements=[(0, 0), (1, 1), (2, 0), (3, 0), (4, 0), (5, 0)])
    v = verify(inst, bad)
    assert not v.ok and not v.structural
    assert v.where is not None
    assert "violation" in str(v)


def test_structural_problems():
    inst, _sol = figure_one()
    v = verify(inst, Solution(placements=[(0, 0)] * 6))
    assert not v.ok and v.structural
    v = verify(inst, Solution(placements=[(k, 0) for k in range(5)]))
    assert not v.ok


def test_strip_boundaries():
    t = SquareTile(*[plus("a")] * 4, id=0)
    ok = Instance(Strip(1, left=minus("a")), [t], Rule.SIGNED_OPP)
    assert verify(ok, Solution(placements=[(0, 0)])).ok
    bad = Instance(Strip(1, right=plus("a")), [t], Rule.SIGNED_OPP)
    assert not verify(bad, Solution(placements=[(0, 0)])).ok


def test_hyp_strip_pairs():
    # a cell pair must meet along the diagonal
    a = RightTriTile(Unsigned("p"), Unsigned("q"), Unsigned("h"), id="a")
    b = RightTriTile(Unsigned("r"), Unsigned("s"), Unsigned("h"), id="b")
    c = RightTriTile(Unsigned("r"), Unsigned("s"), Unsigned("k"), id="c")
    inst = Instance(HypStrip(1), [a, b], Rule.UNSIGNED_EQ)
    assert verify(inst, Solution(placements=[("a", 0), ("b", 2)])).ok
    inst2 = Instance(HypStrip(1), [a, c], Rule.UNSIGNED_EQ)
    assert not verify(inst2, Solution(placements=[("a", 0), ("c", 2)])).ok


def test_shapeless_connectivity_and_root():
    t0 = SquareTile(*[Unsigned("x")] * 4, id=0)
    t1 = SquareTile(*[Unsigned("x")] * 4, id=1)
    inst = Instance(Shapeless(True, 0, 0), [t0, t1], Rule.UNSIGNED_EQ)
    assert verify(inst, Solution.of_cells({(0, 0): (0, 0), (1, 0): (1, 0)})).ok
    assert not verify(inst, Solution.of_cells({(0, 0): (0, 0), (2, 0): (1, 0)})).ok
    assert not verify(inst, Solution.of_cells({(1, 0): (0, 0), (0, 0): (1, 0)})).ok
