"""Explicit-state satisfiability check for SNF clause sets.

An independent decision procedure used to cross-check the resolution engine.
It builds the transition system induced by the clauses over all valuations of
the atoms (plus one waitfor atom per eventuality literal), then repeatedly
prunes it: vertices that start no infinite path go, and for each eventuality
the vertices and edges that cannot honour it go.  The clause set is
satisfiable iff some initial vertex survives.

Vertex sets are boolean numpy arrays indexed by valuation bitmask.  The edge
relation is never materialised; it is the intersection of constraints of the
form "source in A or target in B".
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .snf import SnfProblem

DEFAULT_ATOM_BOUND = 16


class AtomBoundExceeded(ValueError):
    pass


@dataclass
class TransitionSystem:
    n_atoms: int
    vertices: np.ndarray
    initial: np.ndarray
    # (A, B) pairs: an edge (u, v) exists iff u in A or v in B for every pair
    constraints: list = field(default_factory=list)

    def copy(self) -> "TransitionSystem":
        return TransitionSystem(self.n_atoms, self.vertices.copy(), self.initial.copy(), list(self.constraints))

    def has_edge(self, u: int, v: int) -> bool:
        if not (self.vertices[u] and self.vertices[v]):
            return False
        return all(a[u] or b[v] for a, b in self.constraints)

    def successors(self, u: int) -> np.ndarray:
        out = self.vertices.copy()
        if not self.vertices[u]:
            out[:] = False
            return out
        for a, b in self.constraints:
            if not a[u]:
                out &= b
        return out

    def pre(self, target: np.ndarray) -> np.ndarray:
        """Vertices with at least one successor in `target`."""
        tgt = target & self.vertices
        if not self.constraints:
            return self.vertices & bool(tgt.any())
        # vertices sharing the set of constraints they fail at the source
        # share their admissible targets
        fails = np.stack([~a for a, _ in self.constraints], axis=1)
        sigs, inverse = np.unique(fails, axis=0, return_inverse=True)
        hit = np.zeros(len(sigs), dtype=bool)
        for i, sig in enumerate(sigs):
            m = tgt.copy()
            for k in np.flatnonzero(sig):
                m &= self.constraints[k][1]
                if not m.any():
                    break
            hit[i] = m.any()
        return self.vertices & hit[inverse.reshape(-1)]

    def restrict(self, keep: np.ndarray):
        self.vertices = self.vertices & keep
        self.initial = self.initial & self.vertices


def _lit_mask(lit: int, bits: np.ndarray) -> np.ndarray:
    m = bits[abs(lit) - 1]
    return m if lit > 0 else ~m


def _disj(lits, bits, size) -> np.ndarray:
    out = np.zeros(size, dtype=bool)
    for l in lits:
        out |= _lit_mask(l, bits)
    return out


def _valuation_bits(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    return np.array([(idx >> i) & 1 == 1 for i in range(n)]).reshape(n, 1 << n)


def induced_ts(clauses, n_atoms: int, bound: int = DEFAULT_ATOM_BOUND) -> TransitionSystem:
    """Transition system induced by the clauses; eventualities are ignored."""
    if n_atoms > bound:
        raise AtomBoundExceeded(f"{n_atoms} atoms exceed the oracle bound of {bound}")
    size = 1 << n_atoms
    bits = _valuation_bits(n_atoms)
    verts = np.ones(size, dtype=bool)
    init = np.ones(size, dtype=bool)
    cons = []
    for c in clauses:
        if c.is_eventuality:
            continue
        body = _disj(c.now, bits, size)
        if c.is_initial:
            init &= body
        elif not c.next:
            verts &= body
        else:
            cons.append((body, _disj(c.next, bits, size)))
    return TransitionSystem(n_atoms, verts, init & verts, cons)


def prune_infinite(ts: TransitionSystem) -> TransitionSystem:
    """Drop vertices without successors until none are left to drop."""
    ts = ts.copy()
    while True:
        keep = ts.pre(ts.vertices)
        if np.array_equal(keep, ts.vertices):
            return ts
        ts.restrict(keep)


def _reach_backward(ts: TransitionSystem, start: np.ndarray) -> np.ndarray:
    """Vertices reaching `start` in zero or more steps."""
    r = start & ts.vertices
    while True:
        nr = r | ts.pre(r)
        if np.array_equal(nr, r):
            return r
        r = nr


def check_sat(problem: SnfProblem, bound: int = DEFAULT_ATOM_BOUND) -> str:
    """Return "sat" or "unsat"."""
    clauses = list(problem.clauses)
    if any(c.is_empty for c in clauses):
        return "unsat"
    evs = [c for c in clauses if c.is_eventuality]
    ev_lits = []
    for c in evs:
        if c.ev not in ev_lits:
            ev_lits.append(c.ev)
    n_input = len(problem.atoms)
    n = n_input + len(ev_lits)
    if n > bound:
        raise AtomBoundExceeded(f"{n} atoms (with waitfor atoms) exceed the oracle bound of {bound}")
    wait = {l: n_input + 1 + i for i, l in enumerate(ev_lits)}
    size = 1 << n
    bits = _valuation_bits(n)

    ts = prune_infinite(induced_ts(clauses, n, bound))
    if not ts.initial.any():
        return "unsat"

    for c in evs:
        l, w = c.ev, wait[c.ev]
        ts.restrict(_disj(c.now | {l, w}, bits, size))
        ts.constraints.append((_lit_mask(-w, bits), _disj({l, w}, bits, size)))
    ts = prune_infinite(ts)
    if not ts.initial.any():
        return "unsat"

    seen = set()
    changed = True
    while changed:
        changed = False
        for c in evs:
            l, w = c.ev, wait[c.ev]
            lmask = _lit_mask(l, bits)
            reach = ts.pre(_reach_backward(ts, lmask))
            if np.array_equal(reach & ts.vertices, ts.vertices):
                continue
            before = ts.vertices.copy()
            ts.restrict(_disj(c.now | {l}, bits, size) | reach)
            con = (_lit_mask(-w, bits), lmask | reach)
            key = (w, con[1].tobytes())
            if key not in seen:
                seen.add(key)
                ts.constraints.append(con)
                changed = True
            ts = prune_infinite(ts)
            if not np.array_equal(before, ts.vertices):
                changed = True
            if not ts.initial.any():
                return "unsat"
    return "sat"
