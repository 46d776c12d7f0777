"""Temporal resolution for LTL with unsatisfiable core extraction."""

from .engine import SolverConfig, SolverResult, solve
from .lift import LtlCore, lift_core
from .ltl import Formula, parse_ltl, print_ltl
from .snf import SnfProblem, parse_snf, print_snf, translate

__all__ = [
    "Formula", "LtlCore", "SnfProblem", "SolverConfig", "SolverResult",
    "lift_core", "parse_ltl", "parse_snf", "print_ltl", "print_snf",
    "solve", "translate",
]
