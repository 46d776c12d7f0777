"""Pseudo-random SNF problems for differential testing."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .snf import EVENTUALITY, GLOBAL, INITIAL, AtomTable, Clause, SnfProblem


@dataclass
class GenConfig:
    max_atoms: int = 4
    max_clauses: int = 8
    max_ev_literals: int = 2
    max_width: int = 3


def _lits(rng, n_atoms, k):
    atoms = rng.sample(range(1, n_atoms + 1), min(k, n_atoms))
    return frozenset(a if rng.random() < 0.5 else -a for a in atoms)


def random_problem(rng: random.Random, cfg: GenConfig | None = None) -> SnfProblem:
    cfg = cfg or GenConfig()
    n = rng.randint(1, cfg.max_atoms)
    atoms = AtomTable()
    for i in range(n):
        atoms.input(f"p{i}")
    ev_pool = [a if rng.random() < 0.5 else -a
               for a in rng.sample(range(1, n + 1), min(n, rng.randint(0, cfg.max_ev_literals)))]
    clauses = []
    for _ in range(rng.randint(1, cfg.max_clauses)):
        r = rng.random()
        if r < 0.2:
            c = Clause(INITIAL, _lits(rng, n, rng.randint(1, cfg.max_width)))
        elif r < 0.75 or not ev_pool:
            now = _lits(rng, n, rng.randint(0, cfg.max_width - 1))
            nxt = _lits(rng, n, rng.randint(0, cfg.max_width - len(now)))
            if not now and not nxt:
                nxt = _lits(rng, n, 1)
            c = Clause(GLOBAL, now, nxt)
        else:
            c = Clause(EVENTUALITY, _lits(rng, n, rng.randint(0, cfg.max_width - 1)), ev=rng.choice(ev_pool))
        if c not in clauses:
            clauses.append(c)
    return SnfProblem(atoms, tuple(clauses))


def random_problems(seed: int, count: int, cfg: GenConfig | None = None) -> list[SnfProblem]:
    rng = random.Random(seed)
    return [random_problem(rng, cfg) for _ in range(count)]


def random_formula(rng: random.Random, depth: int = 4, atoms=("p", "q", "r")):
    from . import ltl

    def walk(d):
        if d == 0 or rng.random() < 0.25:
            r = rng.random()
            if r < 0.05:
                return ltl.const(rng.random() < 0.5)
            return ltl.atom(rng.choice(atoms))
        k = rng.choice(ltl.UNARY + ltl.BINARY)
        if k in ltl.UNARY:
            return ltl.Formula(k, (walk(d - 1),))
        return ltl.Formula(k, (walk(d - 1), walk(d - 1)))

    return ltl.number(walk(depth))
