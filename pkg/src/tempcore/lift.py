"""Map an SNF core back to a weakening of the input LTL formula."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import ltl
from .snf import SnfProblem


class LiftError(ValueError):
    pass


@dataclass(frozen=True)
class LtlCore:
    formula: ltl.Formula
    # occurrence id in the input formula -> replacement constant
    replaced: dict = field(default_factory=dict)

    def display(self) -> ltl.Formula:
        return ltl.simplify_constants(self.formula)

    def nontrivial_conjuncts(self) -> list[ltl.Formula]:
        return [g for g in ltl.top_level_conjuncts(self.display()) if g.kind != ltl.TRUE]


def lift_core(f: ltl.Formula, problem: SnfProblem, core) -> LtlCore:
    """Replace every proper occurrence none of whose marked props survive in `core`.

    `core` holds indices into problem.clauses.  Positive occurrences become
    True and negative ones False.  Occurrences below a replaced one vanish
    with it and are not listed.
    """
    if not problem.liftable:
        raise LiftError("lifting unavailable: problem was not translated from LTL")
    core = set(core)
    bad = [i for i in core if not (isinstance(i, int) and 0 <= i < len(problem.clauses))]
    if bad:
        raise LiftError(f"core holds indices outside the problem: {sorted(map(str, bad))}")
    if f.oid < 0:
        f = ltl.number(f)
    if f.kind == ltl.FALSE:
        return LtlCore(f, {})

    pol = {oid: p for oid, p, _ in ltl.occurrences(f)}
    replace = {}
    # walk top-down so that descendants of a replaced occurrence are skipped
    stack = list(f.children)
    while stack:
        g = stack.pop()
        x = problem.occurrence_atoms.get(g.oid)
        if x is not None and not (problem.marked.get(x, frozenset()) & core):
            replace[g.oid] = pol[g.oid] is ltl.Polarity.POS
            continue
        stack.extend(g.children)
    return LtlCore(ltl.replace_occurrences(f, replace), dict(sorted(replace.items())))
