"""Infinite-valued interpretations and the orderings between them.

An interpretation is a total map from the Herbrand base to truth values.
For a level ``alpha`` the relations are

* ``eq_alpha(i, j, a)``:  the order-b slices agree for every b <= a;
* ``lt_alpha(i, j, a)``:  slices agree below a, and at a ``i`` has no more
  T_a atoms and no fewer F_a atoms than ``j``, with one inclusion strict;
* ``le_infty(i, j)``:     ``i == j`` or ``lt_alpha`` at some level.
"""
from __future__ import annotations

import json
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Iterable, Iterator

from .lang import FALSE, TRUE, Atom, BodyItem, Clause, Program, parse_program
from .truthval import F, T, ThreeValued, TruthValue, collapse, glb, negate, parse_value


class Interpretation(Mapping):
    """Immutable total assignment of truth values to atoms."""

    __slots__ = ("_values", "_hash")

    def __init__(self, values: Mapping[Atom, TruthValue] | Iterable[tuple[Atom, TruthValue]] = ()):
        self._values = dict(values)
        self._hash = None

    @classmethod
    def empty(cls, base: Iterable[Atom]) -> Interpretation:
        """The interpretation assigning F0 to every atom."""
        f0 = F(0)
        return cls((a, f0) for a in base)

    def __getitem__(self, atom: Atom) -> TruthValue:
        try:
            return self._values[atom]
        except KeyError:
            raise KeyError(f"atom {atom} is not in the interpretation's base") from None

    def __iter__(self) -> Iterator[Atom]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._values.items()))
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, Interpretation):
            return self._values == other._values
        return NotImplemented

    def replace(self, updates: Mapping[Atom, TruthValue]) -> Interpretation:
        values = dict(self._values)
        values.update(updates)
        return Interpretation(values)

    def max_order(self) -> int:
        return max((v.ord for v in self._values.values() if v.ord is not None), default=0)

    def to_json(self) -> dict[str, str]:
        return {str(a): str(self._values[a]) for a in sorted(self._values)}

    def __repr__(self) -> str:
        body = ", ".join(f"{a}: {v}" for a, v in sorted(self._values.items()))
        return "{" + body + "}"


def parse_atom(text: str) -> Atom:
    prog = parse_program(text + ".")
    if len(prog.clauses) != 1 or prog.clauses[0].body or not prog.clauses[0].head.is_ground:
        raise ValueError(f"not a ground atom: {text!r}")
    return prog.clauses[0].head


def interpretation_from_json(data: Mapping[str, str] | str) -> Interpretation:
    if isinstance(data, str):
        data = json.loads(data)
    return Interpretation((parse_atom(k), parse_value(v)) for k, v in data.items())


def interp(**values: str) -> Interpretation:
    """Shorthand for propositional interpretations: ``interp(p="T1", q="F0")``."""
    return Interpretation((Atom(k), parse_value(v)) for k, v in values.items())


# ---------------------------------------------------------------------------
# Evaluation and satisfaction

def eval_literal(i: Mapping[Atom, TruthValue], lit: BodyItem) -> TruthValue:
    if lit is TRUE:
        return T(0)
    if lit is FALSE:
        return F(0)
    v = i[lit.atom]
    return v if lit.positive else negate(v)


def eval_body(i: Mapping[Atom, TruthValue], body: Iterable[BodyItem]) -> TruthValue:
    return glb(eval_literal(i, lit) for lit in body)


def satisfies(i: Mapping[Atom, TruthValue], clause: Clause) -> bool:
    return i[clause.head] >= eval_body(i, clause.body)


def is_model(i: Mapping[Atom, TruthValue], program: Program) -> bool:
    return all(satisfies(i, c) for c in program.clauses)


def collapse_interpretation(i: Mapping[Atom, TruthValue]) -> dict[Atom, ThreeValued]:
    return {a: collapse(v) for a, v in i.items()}


# ---------------------------------------------------------------------------
# Slices and orderings

@dataclass(frozen=True)
class OrderSlice:
    level: int
    atoms_true: frozenset[Atom]
    atoms_false: frozenset[Atom]

    def __bool__(self) -> bool:
        return bool(self.atoms_true or self.atoms_false)


def restrict(i: Mapping[Atom, TruthValue], v: TruthValue) -> set[Atom]:
    return {a for a, w in i.items() if w == v}


def slice_at(i: Mapping[Atom, TruthValue], alpha: int) -> OrderSlice:
    true, false = set(), set()
    for a, v in i.items():
        if v.ord == alpha:
            (true if v.is_true else false).add(a)
    return OrderSlice(alpha, frozenset(true), frozenset(false))


def eq_alpha(i: Mapping, j: Mapping, alpha: int) -> bool:
    return all(slice_at(i, b) == slice_at(j, b) for b in range(alpha + 1))


def _strictly_below_at(si: OrderSlice, sj: OrderSlice) -> bool:
    t_i, f_i, t_j, f_j = si.atoms_true, si.atoms_false, sj.atoms_true, sj.atoms_false
    return (t_i < t_j and f_i >= f_j) or (t_i <= t_j and f_i > f_j)


def lt_alpha(i: Mapping, j: Mapping, alpha: int) -> bool:
    if alpha > 0 and not eq_alpha(i, j, alpha - 1):
        return False
    return _strictly_below_at(slice_at(i, alpha), slice_at(j, alpha))


def le_alpha(i: Mapping, j: Mapping, alpha: int) -> bool:
    return eq_alpha(i, j, alpha) or lt_alpha(i, j, alpha)


def first_difference(i: Mapping, j: Mapping) -> int | None:
    """Least level whose slices differ, or None when ``i == j``.

    Atoms valued Zero in both never differ; any other disagreement shows up
    in the slice of the smaller of the two orders involved.
    """
    levels = [
        min(v.ord if v.ord is not None else w.ord, w.ord if w.ord is not None else v.ord)
        for a, v in i.items()
        if (w := j[a]) != v
    ]
    return min(levels, default=None)


def le_infty(i: Mapping, j: Mapping) -> bool:
    if set(i) != set(j):
        raise ValueError("interpretations over different bases")
    alpha = first_difference(i, j)
    if alpha is None:
        return True
    # Below alpha the slices agree, so lt can hold only at alpha itself.
    return _strictly_below_at(slice_at(i, alpha), slice_at(j, alpha))


def lt_infty(i: Mapping, j: Mapping) -> bool:
    return i != j and le_infty(i, j)


def is_reasonable(i: Mapping[Atom, TruthValue]) -> bool:
    # Natural-number orders contain no limit ordinals.
    return all(v.ord is None or isinstance(v.ord, int) for v in i.values())
