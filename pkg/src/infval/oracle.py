"""Brute-force checks over a truncated truth domain.

Models are enumerated exhaustively over ``F0..Fk, 0, Tk..T0``.  Candidates
are held as integer ranks so that whole blocks can be checked with numpy:

    rank(F_j) = j,   rank(0) = L,   rank(T_j) = 2L - j

which is order preserving, and negation becomes ``2L - 1 - r`` below L and
``2L + 1 - r`` above it.  Results are only claimed at the chosen truncation.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping, Sequence

import numpy as np

from .interp import Interpretation
from .lang import FALSE, Atom, Clause, Literal, Program, normalize
from .truthval import ZERO, F, T, TruthValue

L = 1 << 20
DEFAULT_MAX_CANDIDATES = 5_000_000
CHUNK = 1 << 18


class ResourceLimitError(RuntimeError):
    pass


def to_rank(v: TruthValue) -> int:
    if v.ord is None:
        return L
    return 2 * L - v.ord if v.is_true else v.ord


def from_rank(r: int) -> TruthValue:
    r = int(r)
    if r == L:
        return ZERO
    return T(2 * L - r) if r > L else F(r)


def neg_ranks(r: np.ndarray) -> np.ndarray:
    return np.where(r < L, 2 * L - 1 - r, np.where(r > L, 2 * L + 1 - r, L))


def orders(r: np.ndarray) -> np.ndarray:
    # Zero gets L, larger than any order that can occur.
    return np.where(r < L, r, np.where(r > L, 2 * L - r, L))


@dataclass(frozen=True)
class TruncatedDomain:
    max_order: int

    def __post_init__(self):
        if self.max_order < 0:
            raise ValueError("max_order must be non-negative")

    @cached_property
    def values(self) -> list[TruthValue]:
        k = self.max_order
        return [F(j) for j in range(k + 1)] + [ZERO] + [T(j) for j in range(k, -1, -1)]

    @cached_property
    def ranks(self) -> np.ndarray:
        return np.array([to_rank(v) for v in self.values], dtype=np.int64)

    def __len__(self) -> int:
        return 2 * self.max_order + 3

    def __contains__(self, v: TruthValue) -> bool:
        return v.ord is None or v.ord <= self.max_order


class _Compiled:
    """Clause list as index arrays over the sorted base."""

    def __init__(self, program: Program):
        self.atoms: list[Atom] = program.atoms
        index = {a: n for n, a in enumerate(self.atoms)}
        self.clauses = []
        for c in program.clauses:
            if FALSE in c.body:
                # Body value F0 never exceeds a head value.
                continue
            lits = [(index[b.atom], b.positive) for b in c.body if isinstance(b, Literal)]
            self.clauses.append((index[c.head], lits))

    def satisfied(self, R: np.ndarray) -> np.ndarray:
        ok = np.ones(R.shape[0], dtype=bool)
        if not self.clauses:
            return ok
        NR = neg_ranks(R)
        top = np.full(R.shape[0], 2 * L, dtype=R.dtype)
        for head, lits in self.clauses:
            body = top
            for idx, positive in lits:
                body = np.minimum(body, R[:, idx] if positive else NR[:, idx])
            ok &= R[:, head] >= body
        return ok


@dataclass
class ModelSet:
    domain: TruncatedDomain
    atoms: list[Atom]
    ranks: np.ndarray  # shape (n_models, n_atoms), rows in lexicographic order

    def __len__(self) -> int:
        return self.ranks.shape[0]

    def interpretation(self, row: int) -> Interpretation:
        return Interpretation(zip(self.atoms, (from_rank(r) for r in self.ranks[row])))

    def __iter__(self) -> Iterator[Interpretation]:
        for row in range(len(self)):
            yield self.interpretation(row)

    @cached_property
    def models(self) -> frozenset[Interpretation]:
        return frozenset(self)

    def encode(self, m: Mapping[Atom, TruthValue]) -> np.ndarray:
        return np.array([to_rank(m[a]) for a in self.atoms], dtype=np.int64)

    def __contains__(self, m: Mapping[Atom, TruthValue]) -> bool:
        if set(m) != set(self.atoms):
            return False
        return bool(np.any(np.all(self.ranks == self.encode(m), axis=1)))

    def subset(self, keep: np.ndarray) -> ModelSet:
        return ModelSet(self.domain, self.atoms, self.ranks[keep])


def enumerate_models(program: Program, k: int, max_candidates: int = DEFAULT_MAX_CANDIDATES) -> ModelSet:
    """All models of ``program`` with values in the order-``k`` truncation."""
    domain = TruncatedDomain(k)
    comp = _Compiled(program)
    n = len(comp.atoms)
    d = len(domain)
    total = d ** n
    if total > max_candidates:
        raise ResourceLimitError(
            f"{d}^{n} = {total} candidates exceeds the limit of {max_candidates}"
        )
    weights = d ** np.arange(n - 1, -1, -1, dtype=np.int64)
    found = []
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        codes = (idx[:, None] // weights[None, :]) % d
        R = domain.ranks[codes]
        found.append(R[comp.satisfied(R)])
    ranks = np.concatenate(found) if found else np.zeros((0, n), dtype=np.int64)
    return ModelSet(domain, comp.atoms, ranks)


def le_infty_rows(m: np.ndarray, N: np.ndarray) -> np.ndarray:
    """Vectorized ``le_infty(m, row)`` for every row of ``N``."""
    om, oN = orders(m), orders(N)
    diff = N != m[None, :]
    lvl = np.where(diff, np.minimum(om[None, :], oN), L).min(axis=1, initial=L)
    equal = lvl == L
    at = lvl[:, None]
    mT = (m > L)[None, :] & (om[None, :] == at)
    mF = (m < L)[None, :] & (om[None, :] == at)
    nT = (N > L) & (oN == at)
    nF = (N < L) & (oN == at)
    bad = np.any(mT & ~nT, axis=1) | np.any(nF & ~mF, axis=1)
    return equal | ~bad


@dataclass
class MinimalityResult:
    k: int
    model_count: int
    minimal: bool
    counterexample: Interpretation | None = None


def verify_minimum(
    program: Program,
    m: Mapping[Atom, TruthValue],
    k: int,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
    models: ModelSet | None = None,
) -> MinimalityResult:
    """Check ``m`` lies below every truncated model; report the first that is not."""
    if models is None:
        models = enumerate_models(program, k, max_candidates)
    ok = le_infty_rows(models.encode(m), models.ranks)
    if ok.all():
        return MinimalityResult(k, len(models), True)
    row = int(np.argmin(ok))
    return MinimalityResult(k, len(models), False, models.interpretation(row))


@dataclass
class IntersectionResult:
    k: int
    stages: list[ModelSet]
    depth: int
    final: list[Interpretation]
    model_count: int = 0
    slices: list[dict[str, str]] = field(default_factory=list)

    @property
    def singleton(self) -> bool:
        return len(self.final) == 1

    @property
    def model(self) -> Interpretation | None:
        return self.final[0] if self.singleton else None

    @property
    def nonempty(self) -> bool:
        return all(len(s) for s in self.stages)


def intersection_sequence(
    program: Program,
    k: int,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
    models: ModelSet | None = None,
) -> IntersectionResult:
    """Filter the model set level by level down to the fewest-T, most-F slice.

    At level a the survivors are those whose order-a part equals the atoms
    that are T_a in every current model together with the atoms that are F_a
    in some current model.  The first level where that target is empty ends
    the sequence; values of that order and above are then replaced by Zero.
    """
    if models is None:
        models = enumerate_models(program, k, max_candidates)
    stages: list[ModelSet] = []
    current = models
    slices = []
    alpha = 0
    while True:
        R = current.ranks
        o = orders(R)
        at_t = (R > L) & (o == alpha)
        at_f = (R < L) & (o == alpha)
        wedge = at_t.all(axis=0) if len(current) else np.zeros(len(models.atoms), bool)
        vee = at_f.any(axis=0)
        keep = np.all((at_t == wedge[None, :]) & (at_f == vee[None, :]), axis=1)
        current = current.subset(keep)
        stages.append(current)
        slices.append(
            {str(a): f"T{alpha}" for a, w in zip(models.atoms, wedge) if w}
            | {str(a): f"F{alpha}" for a, v in zip(models.atoms, vee) if v}
        )
        if not (wedge.any() or vee.any()) or len(current) == 0:
            break
        alpha += 1
    R = current.ranks
    collapsed = np.where(orders(R) >= alpha, L, R)
    rows = np.unique(collapsed, axis=0) if len(R) else collapsed
    final = [Interpretation(zip(models.atoms, (from_rank(r) for r in row))) for row in rows]
    return IntersectionResult(k, stages, alpha, final, len(models), slices)


def raise_one(m: Mapping[Atom, TruthValue], domain: TruncatedDomain) -> Iterator[Interpretation]:
    """Interpretations obtained by moving one atom one step up in ``domain``."""
    values = domain.values
    base = Interpretation(m)
    for a in sorted(m):
        v = m[a]
        higher = [w for w in values if w > v]
        if higher:
            yield base.replace({a: min(higher)})


def random_program(
    seed: int,
    n_atoms: int,
    n_clauses: int,
    max_body_len: int,
    neg_prob: float,
) -> Program:
    """A seeded random ground program over atoms ``p0 .. p{n-1}``.

    Body lengths are uniform in ``0..max_body_len``; empty bodies become facts.
    """
    if n_atoms <= 0 or n_clauses < 0 or max_body_len < 0:
        raise ValueError("sizes must be positive")
    rng = random.Random(seed)
    atoms = [Atom(f"p{i}") for i in range(n_atoms)]
    clauses = []
    for _ in range(n_clauses):
        head = rng.choice(atoms)
        body = tuple(
            Literal(rng.choice(atoms), rng.random() >= neg_prob)
            for _ in range(rng.randint(0, max_body_len))
        )
        clauses.append(Clause(head, body))
    return normalize(clauses, atoms)


def random_programs(
    seed: int,
    count: int,
    atoms: Sequence[int] = (3, 8),
    clauses: Sequence[int] = (3, 16),
    max_body_len: int = 3,
    neg_probs: Sequence[float] = (0.0, 0.3, 0.6),
) -> Iterator[tuple[int, Program]]:
    """A reproducible stream of ``(program_seed, program)`` pairs."""
    rng = random.Random(seed)
    for _ in range(count):
        s = rng.randrange(2**32)
        yield s, random_program(
            s,
            rng.randint(*atoms),
            rng.randint(*clauses),
            max_body_len,
            rng.choice(list(neg_probs)),
        )


def random_interpretation(rng: random.Random, atoms: Sequence[Atom], max_order: int) -> Interpretation:
    values = TruncatedDomain(max_order).values
    return Interpretation((a, rng.choice(values)) for a in atoms)


def comparable_pair(
    rng: random.Random, atoms: Sequence[Atom], alpha: int, max_order: int
) -> tuple[Interpretation, Interpretation]:
    """Random ``(I, J)`` with ``I`` at or below ``J`` at level ``alpha``.

    ``J`` is uniform over the truncated domain.  ``I`` copies the values of
    order below ``alpha``, keeps or lowers each T_alpha atom of ``J``, keeps
    every F_alpha atom, and sends the rest to F_alpha or to a random value of
    order above ``alpha``.
    """
    j = random_interpretation(rng, atoms, max_order)
    t_alpha, f_alpha = T(alpha), F(alpha)
    higher = [v for v in TruncatedDomain(max(max_order, alpha + 1)).values if v.ord is None or v.ord > alpha]
    below_t = [f_alpha] + [v for v in higher if v < t_alpha]
    out = {}
    for a, v in j.items():
        if v.ord is not None and v.ord < alpha:
            out[a] = v
        elif v == t_alpha:
            out[a] = v if rng.random() < 0.5 else rng.choice(below_t)
        elif v == f_alpha:
            out[a] = v
        elif rng.random() < 0.3:
            out[a] = f_alpha
        else:
            out[a] = rng.choice(higher)
    return Interpretation(out), j
