import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import MAIN_EXAMPLE, prog
from infval.engine import (
    EngineError, check_invariants, collapse_model, omega_iterate, solve, tp_step,
)
from infval.interp import Interpretation, interp, is_model, le_alpha, le_infty
from infval.lang import Atom
from infval.oracle import comparable_pair, random_program
from infval.truthval import ZERO, ThreeValued

NONMONO = "p :- not q.\ns :- p.\nt :- not s.\nt :- u.\nu :- t.\nq :- false."


def test_tp_step_examples():
    p = prog("p :- not q.\np :- not p.\nq :- false.")
    assert tp_step(p, interp(p="T0", q="T1")) == interp(p="F2", q="F0")
    p = prog("p :- not q.\nq :- false.")
    assert tp_step(p, interp(q="F0", p="T2")) == interp(q="F0", p="T1")
    p = prog(NONMONO)
    i = interp(p="T1", q="F0", s="F0", t="T1", u="F0")
    assert tp_step(p, i) == interp(p="T1", q="F0", s="T1", t="T1", u="T1")


def test_alpha_monotonicity_example():
    p = prog("p :- not q.\nq :- false.")
    i, j = interp(q="F0", p="T2"), interp(q="F1", p="T0")
    assert le_alpha(i, j, 0)
    assert tp_step(p, j) == interp(q="F0", p="T2")
    assert le_alpha(tp_step(p, i), tp_step(p, j), 0)


def test_not_monotone_under_le_infty():
    p = prog(NONMONO)
    i = interp(p="T1", q="F0", s="F0", t="T1", u="F0")
    j = interp(p="T1", q="F0", s="F1", t="F1", u="F1")
    assert le_infty(i, j)
    assert tp_step(p, j) == interp(p="T1", q="F0", s="T1", t="T2", u="F1")
    assert not le_infty(tp_step(p, i), tp_step(p, j))


def test_main_example_stages(main_program):
    empty = Interpretation.empty(main_program.atoms)
    s0 = omega_iterate(main_program, empty, 0, keep_all=True)
    assert s0.iterates[1:] == (
        interp(p="T1", q="T1", r="F0", s="T1"),
        interp(p="F2", q="T1", r="F0", s="T1"),
    )
    assert s0.stabilized_false == {Atom("r")} and s0.stabilized_true == frozenset()
    assert s0.result == interp(p="F1", q="F1", r="F0", s="F1")

    s1 = omega_iterate(main_program, s0.result, 1)
    assert s1.stabilized_true == {Atom("q")} and not s1.stabilized_false
    assert s1.result == interp(p="F2", q="T1", r="F0", s="F2")

    s2 = omega_iterate(main_program, s1.result, 2)
    assert s2.result == interp(p="F2", q="T1", r="F0", s="F3")

    s3 = omega_iterate(main_program, s2.result, 3, keep_all=True)
    assert s3.iterates[:2] == (
        interp(p="F2", q="T1", r="F0", s="F3"),
        interp(p="F2", q="T1", r="F0", s="T4"),
    )
    assert not s3.stabilized
    assert s3.result == interp(p="F2", q="T1", r="F0", s="F4")


def test_trace_retention(main_program):
    short = solve(main_program)
    full = solve(main_program, trace=True)
    assert all(len(s.iterates) == 2 for s in short.stages)
    assert [len(s.iterates) for s in full.stages] == [3, 3, 3, 3]
    assert short.model == full.model


def test_omega_iterate_rejects_non_chain():
    p = prog("p :- not q.\nq :- false.")
    # q at T0 drops to F0 after one step: not a 0-chain.
    with pytest.raises(EngineError):
        omega_iterate(p, interp(p="F0", q="T0"), 0)


@pytest.mark.parametrize("text, model", [
    (MAIN_EXAMPLE, dict(p="F2", q="T1", r="F0", s="0")),
    ("p.\nr :- not p.\ns :- not q.\nq :- false.", dict(p="T0", q="F0", r="F1", s="T1")),
    ("works :- not tired.\ntired :- false.", dict(tired="F0", works="T1")),
    ("tired :- not works.", dict(tired="T1", works="F0")),
    ("p :- not p.", dict(p="0")),
    ("p :- p.", dict(p="F0")),
])
def test_solve_examples(text, model):
    tr = solve(prog(text), debug=True)
    assert tr.model == interp(**model)


def test_main_example_depth(main_program):
    # Stage 3 freezes no order-3 value, stages 0..2 each freeze something.
    tr = solve(main_program, debug=True)
    assert tr.depth == 3
    assert [s.stabilized for s in tr.stages] == [True, True, True, False]
    assert not tr.extra_stage.stabilized


def test_collapse_model():
    m = interp(p="F2", q="T1", r="F0", s="0")
    assert collapse_model(m) == {
        Atom("p"): ThreeValued.FALSE, Atom("q"): ThreeValued.TRUE,
        Atom("r"): ThreeValued.FALSE, Atom("s"): ThreeValued.UNDEFINED,
    }
    assert set(collapse_model(interp(p="T0", q="F0", r="F1", s="T1")).values()) == {
        ThreeValued.TRUE, ThreeValued.FALSE
    }
    assert set(collapse_model(interp(a="F0", b="F0")).values()) == {ThreeValued.FALSE}


def test_solve_json_shape(main_program):
    data = solve(main_program, trace=True).to_json(trace=True)
    assert set(data) == {"depth", "model", "wfm", "stages"}
    assert data["model"] == {"p": "F2", "q": "T1", "r": "F0", "s": "0"}
    assert data["wfm"] == {"p": "false", "q": "true", "r": "false", "s": "undefined"}
    assert data["stages"][1]["stabilized_true"] == ["q"]
    assert "stages" not in solve(main_program).to_json()


def test_empty_program():
    tr = solve(prog(""))
    assert tr.depth == 0 and len(tr.model) == 0


def test_deep_negation_chain():
    # p0 :- false, p{i+1} :- not p{i}; each link is one order deeper.
    text = "p0 :- false.\n" + "".join(f"p{i + 1} :- not p{i}.\n" for i in range(6))
    tr = solve(prog(text), debug=True)
    expected = {f"p{i}": (f"T{i}" if i % 2 else f"F{i}") for i in range(7)}
    assert tr.model == interp(**expected)
    assert tr.depth == 7
    assert check_invariants(prog(text), tr) == []


program_params = st.tuples(
    st.integers(0, 2**32 - 1), st.integers(1, 7), st.integers(0, 14),
    st.integers(0, 3), st.sampled_from([0.0, 0.3, 0.6, 1.0]),
)


@settings(max_examples=150, deadline=None)
@given(program_params)
def test_structural_invariants(params):
    p = random_program(*params)
    tr = solve(p, trace=True, debug=True)
    assert check_invariants(p, tr) == []
    assert tp_step(p, tr.model) == tr.model
    assert is_model(tr.model, p)
    for stage in tr.stages:
        its = stage.iterates
        for a, b in zip(its, its[1:]):
            assert le_alpha(a, b, stage.level)
        assert not (stage.stabilized_true & stage.stabilized_false)


@settings(max_examples=200, deadline=None)
@given(program_params, st.integers(0, 3), st.integers(0, 2**32 - 1))
def test_alpha_monotonic(params, alpha, seed):
    p = random_program(*params)
    i, j = comparable_pair(random.Random(seed), p.atoms, alpha, 4)
    assert le_alpha(i, j, alpha)
    assert le_alpha(tp_step(p, i), tp_step(p, j), alpha)


def test_model_values_below_depth():
    for seed in range(40):
        p = random_program(seed, 5, 8, 2, 0.5)
        tr = solve(p)
        for v in tr.model.values():
            assert v == ZERO or v.ord < tr.depth
