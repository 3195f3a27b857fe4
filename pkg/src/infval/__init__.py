"""Minimum infinite-valued models of normal logic programs."""
from .engine import SolveTrace, StageRecord, collapse_model, omega_iterate, solve, tp_step
from .interp import Interpretation, is_model, le_alpha, le_infty
from .lang import Program, ground, parse_program
from .truthval import ZERO, F, T, ThreeValued, TruthValue
from .wfs import well_founded

__all__ = [
    "F", "Interpretation", "Program", "SolveTrace", "StageRecord", "T", "ThreeValued",
    "TruthValue", "ZERO", "collapse_model", "ground", "is_model", "le_alpha", "le_infty",
    "omega_iterate", "parse_program", "solve", "tp_step", "well_founded",
]
