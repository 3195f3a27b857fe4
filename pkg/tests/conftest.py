from pathlib import Path

import pytest
from hypothesis import strategies as st

from infval.interp import Interpretation
from infval.lang import Atom, ground, parse_program
from infval.truthval import ZERO, F, T

FIXTURES = Path(__file__).parent / "fixtures"

MAIN_EXAMPLE = """\
p :- not q.
q :- not r.
s :- p.
s :- not s.
r :- false.
"""


def prog(text):
    return ground(parse_program(text))


@pytest.fixture
def main_program():
    return prog(MAIN_EXAMPLE)


def truth_values(max_order=6):
    return st.one_of(
        st.integers(0, max_order).map(T),
        st.integers(0, max_order).map(F),
        st.just(ZERO),
    )


ATOMS = [Atom(n) for n in "pqrstu"]


@st.composite
def interpretations(draw, atoms=ATOMS, max_order=4):
    return Interpretation({a: draw(truth_values(max_order)) for a in atoms})
