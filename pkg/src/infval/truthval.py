"""The infinite-valued truth domain.

Values are ordered

    F0 < F1 < F2 < ... < 0 < ... < T2 < T1 < T0

and rendered canonically as ``"F<k>"``, ``"T<k>"`` and ``"0"``.  Orders are
natural numbers; transfinite orders never arise for finite ground programs.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from typing import Iterable


class Polarity(enum.IntEnum):
    FALSE = 0
    ZERO = 1
    TRUE = 2


class ThreeValued(enum.IntEnum):
    FALSE = 0
    UNDEFINED = 1
    TRUE = 2

    def __str__(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class TruthValue:
    polarity: Polarity
    ord: int | None = None

    def __post_init__(self):
        if self.polarity is Polarity.ZERO:
            if self.ord is not None:
                raise ValueError("Zero carries no order")
        elif not isinstance(self.ord, int) or isinstance(self.ord, bool) or self.ord < 0:
            raise ValueError(f"order must be a natural number, got {self.ord!r}")

    # Sort key realizing the total order of the domain.
    @property
    def key(self) -> tuple[int, int]:
        if self.polarity is Polarity.FALSE:
            return (0, self.ord)
        if self.polarity is Polarity.TRUE:
            return (2, -self.ord)
        return (1, 0)

    def __lt__(self, other: TruthValue) -> bool:
        return self.key < other.key

    def __le__(self, other: TruthValue) -> bool:
        return self.key <= other.key

    def __gt__(self, other: TruthValue) -> bool:
        return self.key > other.key

    def __ge__(self, other: TruthValue) -> bool:
        return self.key >= other.key

    @property
    def is_true(self) -> bool:
        return self.polarity is Polarity.TRUE

    @property
    def is_false(self) -> bool:
        return self.polarity is Polarity.FALSE

    @property
    def is_zero(self) -> bool:
        return self.polarity is Polarity.ZERO

    def __str__(self) -> str:
        if self.polarity is Polarity.ZERO:
            return "0"
        return f"{'T' if self.is_true else 'F'}{self.ord}"

    def __repr__(self) -> str:
        return f"TruthValue({self})"


def T(k: int) -> TruthValue:
    return TruthValue(Polarity.TRUE, k)


def F(k: int) -> TruthValue:
    return TruthValue(Polarity.FALSE, k)


ZERO = TruthValue(Polarity.ZERO)

_VALUE_RE = re.compile(r"([TF])(0|[1-9][0-9]*)|0")


def parse_value(text: str) -> TruthValue:
    """Inverse of ``str``: accepts exactly ``T<k>``, ``F<k>`` or ``0``."""
    m = _VALUE_RE.fullmatch(text)
    if m is None:
        raise ValueError(f"not a truth value: {text!r}")
    if m.group(1) is None:
        return ZERO
    return T(int(m.group(2))) if m.group(1) == "T" else F(int(m.group(2)))


def compare(a: TruthValue, b: TruthValue) -> int:
    """Three-way comparison: -1, 0 or 1."""
    ka, kb = a.key, b.key
    return (ka > kb) - (ka < kb)


def order_of(v: TruthValue) -> int | float:
    """The subscript of ``v``; Zero has order ``math.inf``."""
    return math.inf if v.ord is None else v.ord


def negate(v: TruthValue) -> TruthValue:
    """Negation-as-failure: reflect about Zero and step one order toward it."""
    if v.is_false:
        return T(v.ord + 1)
    if v.is_true:
        return F(v.ord + 1)
    return ZERO


def lub(values: Iterable[TruthValue]) -> TruthValue:
    # The empty lub is the bottom element F0.
    return max(values, key=lambda v: v.key, default=F(0))


def glb(values: Iterable[TruthValue]) -> TruthValue:
    values = list(values)
    if not values:
        raise ValueError("glb of an empty set is undefined")
    return min(values, key=lambda v: v.key)


def collapse(v: TruthValue) -> ThreeValued:
    if v.is_true:
        return ThreeValued.TRUE
    if v.is_false:
        return ThreeValued.FALSE
    return ThreeValued.UNDEFINED
