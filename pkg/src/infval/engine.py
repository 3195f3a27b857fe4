"""Construction of the minimum infinite-valued model M_P.

Starting from the all-F0 interpretation, stage ``alpha`` iterates the
immediate consequence operator until the set of T_alpha atoms and the set of
F_alpha atoms stop changing.  Atoms that ended at T_alpha or F_alpha are
frozen, everything else is reset to F_{alpha+1} and the next stage begins.
The first stage that freezes nothing is the depth of the program; every atom
not frozen by then gets the value Zero.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping

from .interp import Interpretation, eval_body, is_model, le_alpha, slice_at
from .lang import Atom, Program
from .truthval import ZERO, F, T, ThreeValued, TruthValue, collapse, lub

log = logging.getLogger(__name__)


class EngineError(RuntimeError):
    """An internal invariant of the construction was violated."""


@dataclass(frozen=True)
class StageRecord:
    level: int
    # The alpha-chain prefix actually computed; the first element is the
    # stage's starting interpretation.  Without trace retention only the
    # last two iterates are kept.
    iterates: tuple[Interpretation, ...]
    stabilized_true: frozenset[Atom]
    stabilized_false: frozenset[Atom]
    result: Interpretation
    steps: int = 0

    @property
    def stabilized(self) -> bool:
        return bool(self.stabilized_true or self.stabilized_false)


@dataclass(frozen=True)
class SolveTrace:
    stages: tuple[StageRecord, ...]
    depth: int
    model: Interpretation
    extra_stage: StageRecord | None = field(default=None, compare=False)

    @property
    def wfm(self) -> dict[Atom, ThreeValued]:
        return collapse_model(self.model)

    def to_json(self, trace: bool = False) -> dict:
        out = {
            "depth": self.depth,
            "model": self.model.to_json(),
            "wfm": {str(a): str(v) for a, v in sorted(self.wfm.items())},
        }
        if trace:
            out["stages"] = [
                {
                    "level": s.level,
                    "iterates": [it.to_json() for it in s.iterates],
                    "stabilized_true": sorted(str(a) for a in s.stabilized_true),
                    "stabilized_false": sorted(str(a) for a in s.stabilized_false),
                }
                for s in self.stages
            ]
        return out


def tp_step(program: Program, i: Mapping[Atom, TruthValue]) -> Interpretation:
    """One application of the immediate consequence operator."""
    return Interpretation(
        (head, lub(eval_body(i, body) for body in bodies))
        for head, bodies in program.rules.items()
    )


def _level_sets(i: Mapping[Atom, TruthValue], alpha: int) -> tuple[frozenset, frozenset]:
    s = slice_at(i, alpha)
    return s.atoms_true, s.atoms_false


def omega_iterate(program: Program, start: Interpretation, alpha: int, keep_all: bool = False) -> StageRecord:
    """Iterate T_P from ``start`` at level ``alpha`` and take the stage limit.

    The pair (T_alpha atoms, F_alpha atoms) of the next iterate is a function
    of the current pair and the frozen lower-order values, so one repeated
    pair is a fixpoint of the whole sequence of pairs.
    """
    cap = 2 * len(program.base) + 2
    iterates = [start]
    cur = start
    cur_sets = _level_sets(cur, alpha)
    union_true = set(cur_sets[0])
    inter_false = set(cur_sets[1])
    steps = 0
    while True:
        nxt = tp_step(program, cur)
        steps += 1
        if not le_alpha(cur, nxt, alpha):
            raise EngineError(
                f"iterates at level {alpha} do not form a chain: {cur!r} then {nxt!r}"
            )
        nxt_sets = _level_sets(nxt, alpha)
        union_true |= nxt_sets[0]
        inter_false &= nxt_sets[1]
        iterates.append(nxt)
        if not keep_all and len(iterates) > 2:
            del iterates[0]
        if nxt_sets == cur_sets:
            break
        if steps >= cap:
            raise EngineError(f"level {alpha} did not stabilize within {cap} steps")
        cur, cur_sets = nxt, nxt_sets

    t_alpha, f_alpha, f_next = T(alpha), F(alpha), F(alpha + 1)
    result = {}
    for a, v in start.items():
        if v.ord is not None and v.ord < alpha:
            result[a] = v
        elif a in union_true:
            result[a] = t_alpha
        elif a in inter_false:
            result[a] = f_alpha
        else:
            result[a] = f_next
    log.debug("level %d: %d steps, true=%s false=%s", alpha, steps, union_true, inter_false)
    return StageRecord(
        level=alpha,
        iterates=tuple(iterates),
        stabilized_true=frozenset(union_true),
        stabilized_false=frozenset(inter_false),
        result=Interpretation(result),
        steps=steps,
    )


def solve(program: Program, trace: bool = False, debug: bool = False) -> SolveTrace:
    """Compute M_P of a ground program.

    With ``debug`` one further stage is run past the depth and must freeze
    nothing; its record is kept as ``extra_stage``.
    """
    n = len(program.base)
    stages = []
    current = Interpretation.empty(program.atoms)
    alpha = 0
    while True:
        if alpha > n:
            raise EngineError(f"depth exceeds the size of the base ({n})")
        rec = omega_iterate(program, current, alpha, keep_all=trace)
        stages.append(rec)
        current = rec.result
        if not rec.stabilized:
            break
        alpha += 1
    depth = alpha
    model = Interpretation(
        (a, v if v.ord is not None and v.ord < depth else ZERO) for a, v in current.items()
    )
    extra = None
    if debug:
        extra = omega_iterate(program, current, depth + 1, keep_all=trace)
        if extra.stabilized:
            raise EngineError(f"stage {depth + 1} past the depth produced new values")
    return SolveTrace(tuple(stages), depth, model, extra)


def collapse_model(m: Mapping[Atom, TruthValue]) -> dict[Atom, ThreeValued]:
    return {a: collapse(v) for a, v in m.items()}


def check_invariants(program: Program, tr: SolveTrace) -> list[str]:
    """Structural checks on a finished solve; returns the violations found."""
    problems = []
    m = tr.model
    if tp_step(program, m) != m:
        problems.append("model is not a fixpoint of T_P")
    if not is_model(m, program):
        problems.append("model does not satisfy the program")
    if tr.depth > len(program.base):
        problems.append(f"depth {tr.depth} exceeds base size {len(program.base)}")
    for s in tr.stages[: tr.depth]:
        if not s.stabilized:
            problems.append(f"stage {s.level} below the depth froze nothing")
        if s.stabilized_true & s.stabilized_false:
            problems.append(f"stage {s.level} froze an atom both true and false")
    if tr.stages[tr.depth].stabilized:
        problems.append("stage at the depth froze atoms")
    for a, v in m.items():
        if v.ord is not None and v.ord >= tr.depth:
            problems.append(f"{a} has value {v} of order >= depth")
    if tr.extra_stage is not None and tr.extra_stage.stabilized:
        problems.append("stage past the depth froze atoms")
    return problems
