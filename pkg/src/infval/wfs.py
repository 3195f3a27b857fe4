"""Well-founded model by the alternating fixpoint.

Kept deliberately separate from the infinite-valued engine: it works on
plain sets of atoms and shares nothing with it except the program syntax.
"""
from __future__ import annotations

from typing import AbstractSet

from .lang import FALSE, TRUE, Atom, Clause, Literal, Program
from .truthval import ThreeValued


def reduct(program: Program, s: AbstractSet[Atom]) -> Program:
    """Gelfond-Lifschitz reduct of ``program`` with respect to ``s``."""
    out = []
    for c in program.clauses:
        if any(isinstance(b, Literal) and not b.positive and b.atom in s for b in c.body):
            continue
        body = tuple(b for b in c.body if not (isinstance(b, Literal) and not b.positive))
        out.append(Clause(c.head, body or (TRUE,)))
    return Program(tuple(out), program.base)


def least_model(program: Program) -> frozenset[Atom]:
    """Least two-valued model of a negation-free program, by saturation."""
    rules = []
    for c in program.clauses:
        if FALSE in c.body:
            continue
        atoms = []
        for b in c.body:
            if isinstance(b, Literal):
                if not b.positive:
                    raise ValueError(f"negative literal in definite program: {c}")
                atoms.append(b.atom)
        rules.append((c.head, atoms))
    seen: set[Atom] = set()
    changed = True
    while changed:
        changed = False
        for head, atoms in rules:
            if head not in seen and all(a in seen for a in atoms):
                seen.add(head)
                changed = True
    return frozenset(seen)


def gamma(program: Program, s: AbstractSet[Atom]) -> frozenset[Atom]:
    return least_model(reduct(program, s))


def alternating_fixpoint(program: Program) -> tuple[frozenset[Atom], frozenset[Atom]]:
    """Return ``(K, U)``: the least fixpoint of gamma squared and gamma of it."""
    k: frozenset[Atom] = frozenset()
    while True:
        u = gamma(program, k)
        nxt = gamma(program, u)
        if nxt == k:
            return k, u
        k = nxt


def well_founded(program: Program) -> dict[Atom, ThreeValued]:
    true, possible = alternating_fixpoint(program)
    out = {}
    for a in sorted(program.base):
        if a in true:
            out[a] = ThreeValued.TRUE
        elif a in possible:
            out[a] = ThreeValued.UNDEFINED
        else:
            out[a] = ThreeValued.FALSE
    return out
