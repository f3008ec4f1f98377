import itertools
import random

import pytest

from edgematch import generate
from edgematch.oracles import count_sat, enumerate_ipc, iter_strip_solutions, strip_solvable
from edgematch.reductions import sat
from edgematch.reductions.sat import Cnf, Ipc, PreconditionError


def test_predicates():
    f = Cnf(3, ((1, 2, -3), (-1, -2, 3)))
    assert f.n3p and f.two_p and f.e1n
    assert not Cnf(3, ((1, 2, 3), (-1,), (-2,), (-3,))).n3p
    assert not Cnf(1, ((1,), (1,), (1,), (-1,))).two_p
    assert not Cnf(1, ((-1,), (-1,))).e1n
    with pytest.raises(ValueError):
        Cnf(1, ((2,),))
    with pytest.raises(ValueError):
        Cnf(4, ((1, 2, 3, 4),))


def test_e1n_keeps_satisfiability():
    rng = random.Random(6)
    for _ in range(200):
        nv = rng.randint(1, 4)
        lits = []
        for v in range(1, nv + 1):
            lits += [-v] * rng.randint(0, 1) + [v] * rng.randint(0, 2)
        rng.shuffle(lits)
        clauses, cur = [], []
        for x in lits:
            cur.append(x)
            if len(cur) == 3 or rng.random() < 0.4:
                clauses.append(tuple(cur))
                cur = []
        if cur:
            clauses.append(tuple(cur))
        f = Cnf(nv, tuple(clauses))
        if not f.n3p:
            continue
        g = sat.enforce_e1n(f)
        assert g.e1n
        assert (count_sat(f) > 0) == (count_sat(g) > 0)
        for bits in itertools.product((False, True), repeat=g.nvars):
            a = dict(zip(range(1, g.nvars + 1), bits))
            if g.satisfied_by(a):
                assert f.satisfied_by(sat.e1n_assignment_to_source(f, a))


def test_e1n_rejects_all_positive_clause():
    with pytest.raises(PreconditionError, match="not N3P"):
        sat.enforce_e1n(Cnf(3, ((1, 2, 3),)))


def test_literal_matching_and_ipc():
    rng = random.Random(2)
    for _ in range(150):
        f = generate.cnf_n3p(rng)
        lm = sat.to_literal_matching(f)
        assert sat.is_literal_matching(lm)
        assert (count_sat(f) > 0) == (count_sat(lm) > 0)
        p = sat.lm_to_ipc(lm)
        assert enumerate_ipc(p)[0] == (count_sat(lm) > 0)


def test_ipc_requires_literal_matching():
    f = Cnf(2, ((1, 2), (1, -2), (2, -1)))
    assert not sat.is_literal_matching(f)
    with pytest.raises(PreconditionError, match="not literal-matching"):
        sat.lm_to_ipc(f)


def test_ipc_strip_shape():
    p = Ipc(3, (((1, 1), (2, 3)), ((2, 2), (1, 1))))
    inst = sat.ipc_to_lt_strip(p)
    assert inst.board.n == 2 * 3 + 2
    assert strip_solvable(inst) == enumerate_ipc(p)[0]


def test_strip_certificate_round_trip():
    rng = random.Random(9)
    checked = 0
    while checked < 20:
        f = generate.cnf_n3p(rng, max_vars=3, max_clauses=3)
        if count_sat(f) == 0:
            continue
        lm = sat.to_literal_matching(f)
        p = sat.lm_to_ipc(lm)
        inst = sat.ipc_to_lt_strip(p)
        sol = next(iter_strip_solutions(inst))
        choice = sat.strip_to_ipc_choice(p, sol)
        assert p.covers(choice)
        a = sat.lm_assignment_to_source(f, sat.ipc_choice_to_assignment(choice, p))
        assert f.satisfied_by(a)
        checked += 1


def test_unsat_formula_gives_unsolvable_strip():
    f = Cnf(1, ((1,), (-1,)))
    inst = sat.ipc_to_lt_strip(sat.lm_to_ipc(sat.to_literal_matching(f)))
    assert not strip_solvable(inst)
