import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import prog
from infval.engine import solve
from infval.interp import Interpretation, interp, is_model, le_infty
from infval.lang import Atom
from infval.oracle import (
    L, ResourceLimitError, TruncatedDomain, enumerate_models, from_rank, intersection_sequence,
    le_infty_rows, neg_ranks, raise_one, random_program, random_programs, to_rank,
    verify_minimum,
)
from infval.truthval import ZERO, F, T, negate


def brute_models(p, k):
    values = TruncatedDomain(k).values
    out = set()
    for combo in itertools.product(values, repeat=len(p.atoms)):
        i = Interpretation(zip(p.atoms, combo))
        if is_model(i, p):
            out.add(i)
    return out


def test_domain():
    d = TruncatedDomain(1)
    assert [str(v) for v in d.values] == ["F0", "F1", "0", "T1", "T0"]
    assert len(TruncatedDomain(3)) == 9
    assert T(2) not in d and ZERO in d


def test_rank_encoding_round_trip():
    vals = TruncatedDomain(6).values
    ranks = np.array([to_rank(v) for v in vals])
    assert list(ranks) == sorted(ranks)
    assert [from_rank(int(r)) for r in ranks] == vals
    assert [from_rank(int(r)) for r in neg_ranks(ranks)] == [negate(v) for v in vals]
    assert to_rank(ZERO) == L


@pytest.mark.parametrize("text, k", [
    ("p :- not q.\nq :- false.", 2),
    ("p :- not p.", 3),
    ("p :- not q.\np :- not p.\nq :- not p, r.\nr :- true.", 1),
    ("a :- b, not c.\nb :- not a.\nc :- c.", 1),
])
def test_enumeration_matches_scalar_check(text, k):
    p = prog(text)
    assert enumerate_models(p, k).models == brute_models(p, k)


def test_models_of_examples():
    w = enumerate_models(prog("works :- not tired.\ntired :- false."), 2)
    t = enumerate_models(prog("tired :- not works."), 2)
    assert w.models != t.models
    assert interp(tired="F0", works="T1") in w
    assert interp(tired="F0", works="T1") not in t
    assert interp(tired="T1", works="F0") in t
    p = prog("p :- not q.\nq :- false.")
    m0 = enumerate_models(p, 0).models
    m1 = enumerate_models(p, 1).models
    assert m0 <= m1 and len(m0) < len(m1)


vals3 = TruncatedDomain(3).values


@settings(max_examples=100)
@given(st.lists(st.sampled_from(vals3), min_size=4, max_size=4),
       st.lists(st.lists(st.sampled_from(vals3), min_size=4, max_size=4), min_size=1, max_size=20))
def test_le_infty_rows_matches_scalar(mv, rows):
    atoms = [Atom(n) for n in "pqrs"]
    m = Interpretation(zip(atoms, mv))
    N = np.array([[to_rank(v) for v in r] for r in rows])
    got = le_infty_rows(np.array([to_rank(v) for v in mv]), N)
    want = [le_infty(m, Interpretation(zip(atoms, r))) for r in rows]
    assert list(got) == want


def test_main_example_is_minimum(main_program):
    res = verify_minimum(main_program, solve(main_program).model, 5)
    assert res.minimal and res.model_count == 3655


def test_raised_model_is_not_minimum(main_program):
    m = interp(p="F2", q="T1", r="F0", s="T3")
    res = verify_minimum(main_program, m, 4)
    assert not res.minimal
    assert is_model(res.counterexample, main_program)
    assert not le_infty(m, res.counterexample)


def test_trivial_minimum():
    res = verify_minimum(prog("q :- false."), interp(q="F0"), 2)
    assert res.minimal and res.model_count == len(TruncatedDomain(2))


def test_intersection_main_example(main_program):
    res = intersection_sequence(main_program, 5)
    assert [len(s) for s in res.stages] == [45, 35, 4, 3]
    assert res.singleton and res.model == interp(p="F2", q="T1", r="F0", s="0")
    assert res.depth == 3
    assert res.slices == [{"r": "F0"}, {"q": "T1"}, {"p": "F2"}, {}]
    s0, s1, s2 = (s.models for s in res.stages[:3])
    assert interp(r="F0", q="T1", p="T1", s="T1") in s0
    probe = interp(r="F0", q="T1", p="T2", s="T2")
    assert probe in s1 and probe not in s2


def test_raise_one():
    d = TruncatedDomain(2)
    up = list(raise_one(interp(p="F0", q="T0", r="0"), d))
    assert up == [interp(p="F1", q="T0", r="0"), interp(p="F0", q="T0", r="T2")]


def test_random_program_deterministic():
    assert random_program(7, 5, 9, 3, 0.3) == random_program(7, 5, 9, 3, 0.3)
    a = [p for _, p in random_programs(1, 5)]
    b = [p for _, p in random_programs(1, 5)]
    assert a == b


def test_random_program_shapes():
    p = random_program(3, 4, 0, 2, 0.5)
    assert solve(p).model == Interpretation.empty(p.atoms)
    for seed in range(20):
        p = random_program(seed, 5, 10, 3, 0.0)
        assert set(solve(p).model.values()) <= {T(0), F(0)}


def test_resource_guard():
    p = random_program(0, 8, 8, 2, 0.5)
    with pytest.raises(ResourceLimitError):
        enumerate_models(p, 5, max_candidates=1000)


def test_chunked_enumeration(monkeypatch):
    import infval.oracle as oracle
    p = prog("a :- not b.\nb :- not c.\nc :- not a.\nd :- a, b.")
    whole = enumerate_models(p, 2).models
    monkeypatch.setattr(oracle, "CHUNK", 17)
    assert enumerate_models(p, 2).models == whole


def test_random_minimality_small():
    rng = random.Random(5)
    for _ in range(10):
        p = random_program(rng.randrange(2**32), 3, 6, 2, 0.5)
        tr = solve(p)
        assert verify_minimum(p, tr.model, tr.depth + 2).minimal
