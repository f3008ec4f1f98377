import random

import pytest

from _brute import euler_paths, strip_count
from edgematch import generate
from edgematch.euler import MultiDigraph, MultiGraph
from edgematch.model import (EqTriStrip, EqTriTile, HypStrip, Instance, LegStrip, RightTriTile, Rule, Shapeless,
                             SquareTile, Strip, Unsigned, verify)
from edgematch.oracles import (OracleError, count_euler_paths, count_ham, count_sat, count_strip_solutions,
                               enumerate_ipc, enumerate_shapeless, enumerate_strip_solutions, iter_strip_solutions,
                               strip_solvable)
from edgematch.reductions.sat import Cnf, Ipc


def _random_instance(rng, kind):
    U = lambda: Unsigned(rng.choice("ab"))  # noqa: E731
    n = rng.randint(1, 4)
    if kind == 0:
        tiles = [SquareTile(U(), U(), U(), U(), i) for i in range(n)]
        board = Strip(n, rng.choice([None, Unsigned("a")]), rng.choice([None, Unsigned("b")]))
        return Instance(board, tiles, Rule.UNSIGNED_EQ)
    if kind == 1:
        tiles = [EqTriTile((U(), U(), U()), i) for i in range(n)]
        board = EqTriStrip(n, rng.choice([None, Unsigned("a")]), rng.choice(["up", "down"]))
        return Instance(board, tiles, Rule.UNSIGNED_EQ, allow_reflection=rng.random() < 0.5)
    if kind == 2:
        tiles = [RightTriTile(U(), U(), U(), i) for i in range(n)]
        return Instance(LegStrip(n, rng.choice(["top", "bottom"])), tiles, Rule.UNSIGNED_EQ)
    n = rng.randint(1, 2)
    tiles = [RightTriTile(U(), U(), U(), i) for i in range(2 * n)]
    return Instance(HypStrip(n, rng.choice([None, Unsigned("a")])), tiles, Rule.UNSIGNED_EQ)


def test_strip_counts_match_brute_force():
    rng = random.Random(5)
    for it in range(160):
        inst = _random_instance(rng, it % 4)
        want = strip_count(inst)
        assert count_strip_solutions(inst) == want
        n, sols = enumerate_strip_solutions(inst, collect=True)
        assert n == want and all(verify(inst, s).ok for s in sols)
        assert len({s.placements for s in sols}) == n
        assert strip_solvable(inst) == (want > 0)
        if want:
            assert count_strip_solutions(inst, limit=1) == 1


def test_single_tile_strip_has_four_solutions():
    t = SquareTile(*[Unsigned("x")] * 4, id=0)
    assert count_strip_solutions(Instance(Strip(1), [t], Rule.UNSIGNED_EQ)) == 4


def test_ham_counts():
    assert count_ham(MultiDigraph.from_pairs([(0, 1), (1, 2), (2, 0)])) == 1
    both = MultiDigraph.from_pairs([(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)])
    assert count_ham(both) == 2
    tri = MultiGraph.from_pairs([(0, 1), (1, 2), (0, 2)])
    assert count_ham(tri) == 1
    assert count_ham(tri, "path", 0, 2) == 1
    assert count_ham(tri, "path") == 3
    # parallel edges give distinct cycles
    assert count_ham(MultiDigraph.from_pairs([(0, 1), (0, 1), (1, 0)])) == 2
    assert count_ham(MultiGraph.from_pairs([(0, 1), (0, 1), (0, 1)])) == 3
    with pytest.raises(OracleError):
        count_ham(tri, "walk")


def test_euler_counts_match_enumeration():
    rng = random.Random(3)
    for _ in range(80):
        vs = list(range(rng.randint(1, 3)))
        pairs = [(rng.choice(vs), rng.choice(vs)) for _ in range(rng.randint(1, 5))]
        for cls in (MultiGraph, MultiDigraph):
            g = cls.from_pairs(pairs, vs)
            assert count_euler_paths(g) == euler_paths(g)


def test_euler_count_examples():
    assert count_euler_paths(MultiGraph.from_pairs([(0, 1)])) == 2
    assert count_euler_paths(MultiDigraph.from_pairs([("a", "b"), ("c", "b")]), "antidirected") == 2
    with pytest.raises(OracleError):
        count_euler_paths(MultiGraph.from_pairs([(0, 1)]), "antidirected")


def test_sat_counts():
    f = Cnf(3, ((1, 2, 3),))
    assert count_sat(f) == 7
    assert count_sat(f, "one_in_three") == 3
    assert count_sat(Cnf(1, ((1,), (-1,)))) == 0
    with pytest.raises(OracleError):
        count_sat(f, "two_in_three")


def test_ipc_enumeration():
    p = Ipc(2, (((1, 1), (2, 2)), ((2, 2), (1, 1))))
    assert enumerate_ipc(p) == (True, 2)
    assert enumerate_ipc(Ipc(2, (((1, 1), (1, 1)),))) == (False, 0)


def test_shapeless_small():
    x = Unsigned("x")
    one = Instance(Shapeless(True, 0, 0), [SquareTile(x, Unsigned("y"), Unsigned("z"), Unsigned("w"), 0)],
                   Rule.UNSIGNED_EQ)
    assert enumerate_shapeless(one) == 1
    tiles = [SquareTile(x, Unsigned("y"), Unsigned("z"), Unsigned("w"), 0),
             SquareTile(Unsigned("y"), Unsigned("q"), Unsigned("q"), Unsigned("q"), 1)]
    two = Instance(Shapeless(True, 0, 0), tiles, Rule.UNSIGNED_EQ)
    n, sols = enumerate_shapeless(two, collect=True)
    # the second tile can only attach to the y side, in one of the rotations showing y there
    assert n == 1 and verify(two, sols[0]).ok
    assert enumerate_shapeless(two, limit=1) == 1


def test_shapeless_rejects_unrooted():
    t = SquareTile(*[Unsigned("x")] * 4, id=0)
    with pytest.raises(OracleError):
        enumerate_shapeless(Instance(Shapeless(), [t], Rule.UNSIGNED_EQ))
    with pytest.raises(OracleError):
        enumerate_strip_solutions(Instance(Shapeless(), [t], Rule.UNSIGNED_EQ))


def test_rect_count_matches_enumeration():
    rng = random.Random(21)
    for _ in range(40):
        m, n = rng.choice([(1, 2), (2, 1), (2, 2), (1, 3)])
        inst = generate.rect_leq(rng, m, n, hi=3)
        want = sum(1 for _s in iter_strip_solutions(inst))
        assert count_strip_solutions(inst) == want
        if m * n <= 3:
            assert want == strip_count(inst)
