"""Eulerian-path counting encoded as leg-contact triangle strips."""

from __future__ import annotations

from math import factorial
from typing import Hashable, List, Tuple

from ..euler import MultiGraph, _connected
from ..model import Instance, LegStrip, RightTriTile, Rule, Signed, Unsigned
from .hamilton import _fresh
from .sat import PreconditionError


def _vkey(v):
    return (type(v).__name__, v)


def with_endpoints(g: MultiGraph) -> Tuple[MultiGraph, Hashable, str, str]:
    """Hang pendant vertices ``s`` and ``t`` off the smallest vertex."""
    if not g.vertices:
        raise PreconditionError("not an Eulerian graph: no vertices")
    at = min(g.vertices, key=_vkey)
    taken_v = {str(v) for v in g.vertices}
    taken_e = {str(e) for e, _u, _v in g.edges}
    s, t = _fresh(taken_v, "s"), _fresh(taken_v, "t")
    es, et = _fresh(taken_e, "s-edge"), _fresh(taken_e, "t-edge")
    h = MultiGraph(tuple(g.vertices) + (s, t), tuple(g.edges) + ((es, s, at), (et, t, at)))
    return h, at, s, t


def blowup(g: MultiGraph) -> int:
    """Solutions of the signed strip per Eulerian path of the endpoint-extended graph."""
    h, _at, s, t = with_endpoints(g)
    deg = h.degree()
    c = 2 ** (len(h.edges) - 1)
    for v in g.vertices:
        c *= factorial(deg[v] // 2) ** 2
    return c


def euler_to_leg_strip(g: MultiGraph, signed: bool = False) -> Tuple[Instance, int]:
    """Strip whose solutions are Eulerian paths of ``g`` plus pendants, times a blowup.

    Returns the instance and the exact number of strip solutions per path
    (``1`` for the unsigned tiles).
    """
    deg = g.degree()
    odd = [v for v in g.vertices if deg[v] % 2]
    if odd:
        raise PreconditionError(f"not Eulerian: vertex {odd[0]} has odd degree")
    if g.directed:
        raise PreconditionError("not undirected")
    if not _connected(g.vertices, g.edges):
        raise PreconditionError("not connected")
    h, _at, s, t = with_endpoints(g)
    hdeg = h.degree()
    if signed:
        lab = Signed
        hyp = Signed("H", 1)
    else:
        lab = lambda c, sign: Unsigned(c)  # noqa: E731
        hyp = Unsigned("H")
    tiles: List[RightTriTile] = [
        RightTriTile(lab("U1", 1), lab(f"v({s})", 1), hyp, id="U1"),
        RightTriTile(lab("U2", 1), lab(f"v({t})", 1), hyp, id="U2"),
    ]
    if signed:
        for v in g.vertices:
            for j in range(hdeg[v] // 2):
                tiles.append(RightTriTile(lab(f"vX({v})", -1), lab(f"v({v})", 1), hyp, id=f"X-({v})#{j}"))
                tiles.append(RightTriTile(lab(f"vX({v})", 1), lab(f"v({v})", 1), hyp, id=f"X+({v})#{j}"))
    for e, u, v in h.edges:
        if _vkey(v) < _vkey(u):
            u, v = v, u
        tiles.append(RightTriTile(lab(f"edge({e})", -1), lab(f"v({u})", -1), hyp, id=f"E({e})a"))
        tiles.append(RightTriTile(lab(f"edge({e})", 1), lab(f"v({v})", -1), hyp, id=f"E({e})b"))
    rule = Rule.SIGNED_OPP if signed else Rule.UNSIGNED_EQ
    inst = Instance(LegStrip(len(tiles), "bottom"), tuple(tiles), rule)
    return inst, (blowup(g) if signed else 1)


def endpoint_graph(g: MultiGraph) -> MultiGraph:
    """The graph whose Eulerian paths the strip counts."""
    return with_endpoints(g)[0]
