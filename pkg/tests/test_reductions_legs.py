import random
from math import factorial

import pytest

from _brute import euler_paths
from edgematch import generate
from edgematch.euler import MultiDigraph, MultiGraph
from edgematch.oracles import count_euler_paths, count_strip_solutions
from edgematch.reductions import legs
from edgematch.reductions.sat import PreconditionError

TRIANGLE = MultiGraph.from_pairs([(0, 1), (1, 2), (2, 0)])


def test_endpoints_hang_off_one_vertex():
    h, at, s, t = legs.with_endpoints(TRIANGLE)
    assert at == 0
    deg = h.degree()
    assert deg[s] == deg[t] == 1 and deg[0] == 4


def test_blowup_formula_on_triangle():
    h = legs.endpoint_graph(TRIANGLE)
    deg = h.degree()
    want = 2 ** (len(h.edges) - 1)
    for v in TRIANGLE.vertices:
        want *= factorial(deg[v] // 2) ** 2
    assert legs.blowup(TRIANGLE) == want == 64


def test_triangle_counts():
    h = legs.endpoint_graph(TRIANGLE)
    paths = euler_paths(h)
    assert paths == count_euler_paths(h) == 4
    u, one = legs.euler_to_leg_strip(TRIANGLE)
    assert one == 1 and count_strip_solutions(u) == paths
    sgn, c = legs.euler_to_leg_strip(TRIANGLE, signed=True)
    assert count_strip_solutions(sgn) == c * paths == 256


def test_random_even_graphs():
    rng = random.Random(12)
    for _ in range(6):
        g = generate.even_graph(rng, max_edges=5)
        h = legs.endpoint_graph(g)
        paths = count_euler_paths(h)
        u, _ = legs.euler_to_leg_strip(g)
        assert count_strip_solutions(u) == paths
        s, c = legs.euler_to_leg_strip(g, signed=True)
        assert count_strip_solutions(s) == c * paths


def test_self_loops_are_supported():
    g = MultiGraph.from_pairs([(0, 0)])
    u, _ = legs.euler_to_leg_strip(g)
    assert count_strip_solutions(u) == count_euler_paths(legs.endpoint_graph(g))


def test_preconditions():
    with pytest.raises(PreconditionError, match="not Eulerian"):
        legs.euler_to_leg_strip(MultiGraph.from_pairs([(0, 1)]))
    with pytest.raises(PreconditionError, match="not connected"):
        legs.euler_to_leg_strip(MultiGraph.from_pairs([(0, 0), (1, 1)]))
    with pytest.raises(PreconditionError, match="not undirected"):
        legs.euler_to_leg_strip(MultiDigraph.from_pairs([(0, 1), (1, 0)]))
