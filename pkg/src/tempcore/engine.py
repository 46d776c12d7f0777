"""Temporal resolution: saturation, augmentation and breadth-first loop search.

The main loop follows the TRP++ style procedure: saturate the starting
clauses, add the waitfor clauses for every eventuality, saturate again, then
alternate loop searches over the eventuality clauses with re-saturation until
either the empty clause shows up in the main partition or a full pass adds
nothing new.  Every clause created along the way is reported to a
:class:`~tempcore.proofgraph.ResolutionGraph` unless recording is switched off.
"""

from __future__ import annotations

import time
from collections import Counter, deque
from dataclasses import dataclass, field

from . import proofgraph as pg
from .snf import GLOBAL, INITIAL, Clause, SnfProblem, glob, is_tautology, subsumes

SAT = "sat"
UNSAT = "unsat"
UNKNOWN = "resource-limit"


class ResourceLimit(RuntimeError):
    pass


class RuleError(ValueError):
    pass


@dataclass
class SolverConfig:
    tautology_deletion: bool = True
    subsumption: bool = True
    record_graph: bool = True
    # resolve only on maximal literals (X part first for step clauses)
    ordered: bool = False
    step_limit: int | None = None  # maximum number of clauses created
    time_limit: float | None = None  # seconds

    def __post_init__(self):
        for name in ("step_limit", "time_limit"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ValueError(f"{name} must be nonnegative")


# -- single inference steps ------------------------------------------------------

def _check(cond, msg):
    if not cond:
        raise RuleError(msg)


def resolve_init_ii(c1: Clause, c2: Clause, pivot: int) -> Clause:
    _check(c1.kind == INITIAL and c2.kind == INITIAL, "init-ii needs two initial clauses")
    _check(pivot in c1.now and -pivot in c2.now, "pivot not present")
    return Clause(INITIAL, (c1.now - {pivot}) | (c2.now - {-pivot}))


def resolve_init_in(c1: Clause, c2: Clause, pivot: int) -> Clause:
    _check(c1.kind == INITIAL and c2.is_universal, "init-in needs an initial and a global clause without X part")
    _check(pivot in c1.now and -pivot in c2.now, "pivot not present")
    return Clause(INITIAL, (c1.now - {pivot}) | (c2.now - {-pivot}))


def resolve_step_nn(c1: Clause, c2: Clause, pivot: int) -> Clause:
    _check(c1.is_universal and c2.is_universal, "step-nn needs global clauses without X part")
    _check(pivot in c1.now and -pivot in c2.now, "pivot not present")
    return glob((c1.now - {pivot}) | (c2.now - {-pivot}))


def resolve_step_nx(c1: Clause, c2: Clause, pivot: int) -> Clause:
    _check(c1.is_universal and c2.is_step, "step-nx needs a global clause without and one with X part")
    _check(pivot in c1.now and -pivot in c2.next, "pivot misplaced")
    return glob(c2.now, (c1.now - {pivot}) | (c2.next - {-pivot}))


def resolve_step_xx(c1: Clause, c2: Clause, pivot: int) -> Clause:
    _check(c1.is_step and c2.is_step, "step-xx needs two global clauses with X part")
    _check(pivot in c1.next and -pivot in c2.next, "pivot misplaced")
    return glob(c1.now | c2.now, (c1.next - {pivot}) | (c2.next - {-pivot}))


_RESOLVE = {
    "init-ii": resolve_init_ii,
    "init-in": resolve_init_in,
    "step-nn": resolve_step_nn,
    "step-nx": resolve_step_nx,
    "step-xx": resolve_step_xx,
}


def _lit_order(l):
    return (abs(l), l < 0)


def _codes(c: Clause):
    return {2 * l for l in c.now} | {2 * l + 1 for l in c.next}


def _mask(c: Clause) -> int:
    # one bit per (atom, sign, now/next) so that subset tests are a single and
    m = 0
    for l in c.now:
        m |= 1 << (4 * abs(l) + (l < 0))
    for l in c.next:
        m |= 1 << (4 * abs(l) + 2 + (l < 0))
    return m


_SUBMASK_LIMIT = 8


def _subsumes_masked(d, md, c, mc) -> bool:
    """subsumes_general on precomputed masks; eventualities never take part."""
    if md == 0:
        return True
    if md & ~mc:
        return False
    return not (d.kind == INITIAL and c.kind != INITIAL)


# -- clause database -------------------------------------------------------------

@dataclass
class ClauseRecord:
    id: int
    clause: Clause
    partition: tuple
    rule: str
    premises: tuple = ()
    origin_body: frozenset | None = None  # loop-it-init-c only
    active: bool = True


class _Partition:
    def __init__(self, pid):
        self.pid = pid
        self.ids: list[int] = []
        self.by_key: dict = {}
        self.active: dict[int, Clause] = {}
        self.queue: deque = deque()
        # processed clauses available as resolution partners
        self.i_now: dict[int, set] = {}
        self.u_now: dict[int, set] = {}
        self.s_next: dict[int, set] = {}
        # subsumption indexes over active clauses
        self.occ: dict[int, set] = {}
        # watched code -> clause ids, one table for non-initial, one for initial
        self.watch: tuple[dict, dict] = ({}, {})
        self.masks: dict[int, int] = {}
        self.watched: dict[int, int] = {}
        # active clauses per exact mask, split by initial / non-initial
        self.mask_count: tuple[Counter, Counter] = (Counter(), Counter())
        self.initc: list[int] = []

    def index_subsumption(self, cid, c):
        m = self.masks[cid] = _mask(c)
        self.mask_count[c.kind == INITIAL][m] += 1
        codes = _codes(c)
        if not codes:
            return
        # watch the currently rarest code; any code of the clause would do
        watch = self.watch[c.kind == INITIAL]
        w = min(codes, key=lambda k: (len(watch.get(k, ())), k))
        self.watched[cid] = w
        watch.setdefault(w, set()).add(cid)
        for k in codes:
            self.occ.setdefault(k, set()).add(cid)

    def unindex(self, cid, c):
        m = self.masks.pop(cid, None)
        if m is not None:
            counts = self.mask_count[c.kind == INITIAL]
            counts[m] -= 1
            if not counts[m]:
                del counts[m]
        codes = _codes(c)
        for k in codes:
            self.occ[k].discard(cid)
        if codes:
            self.watch[c.kind == INITIAL][self.watched.pop(cid)].discard(cid)
        for table, lits in ((self.i_now, c.now), (self.u_now, c.now), (self.s_next, c.next)):
            for l in lits:
                s = table.get(l)
                if s:
                    s.discard(cid)

    def index_partner(self, cid, c, lits):
        if c.kind == INITIAL:
            table = self.i_now
        elif c.is_universal:
            table = self.u_now
        else:
            table = self.s_next
        for l in lits:
            table.setdefault(l, set()).add(cid)


@dataclass
class SolverResult:
    verdict: str
    problem: SnfProblem
    atoms: object
    graph: pg.ResolutionGraph | None
    records: list
    stats: dict = field(default_factory=dict)

    @property
    def unsat(self) -> bool:
        return self.verdict == UNSAT

    def core_indices(self) -> list[int]:
        if self.graph is None:
            raise ValueError("core extraction needs a recorded resolution graph")
        return pg.extract_core_snf(self.graph)

    def core(self) -> list[Clause]:
        return [self.problem.clauses[i] for i in self.core_indices()]


class _Unsat(Exception):
    pass


class Solver:
    def __init__(self, problem: SnfProblem, config: SolverConfig | None = None):
        self.problem = problem
        self.cfg = config or SolverConfig()
        self.atoms = problem.atoms.copy()
        self.graph = pg.ResolutionGraph() if self.cfg.record_graph else None
        self.records: list[ClauseRecord] = []
        self.main = _Partition(pg.MAIN)
        self.main_created = 0
        self.rule_counts: Counter = Counter()
        self.loop_iterations: list[int] = []
        self.n_active = 0
        self.peak = 0
        self.waitfor: dict[int, int] = {}
        self.t0 = 0.0
        self._ranks: dict[int, tuple] = {}
        self.steps = 0

    # -- bookkeeping ---------------------------------------------------------

    def _tick(self):
        self.steps += 1
        if self.cfg.time_limit is not None and self.steps % 64 == 0:
            if time.perf_counter() - self.t0 > self.cfg.time_limit:
                raise ResourceLimit("time limit exceeded")

    def _new_record(self, part, clause, rule, premises, origin_body=None):
        if self.cfg.step_limit is not None and len(self.records) >= self.cfg.step_limit:
            raise ResourceLimit("step limit exceeded")
        cid = len(self.records)
        rec = ClauseRecord(cid, clause, part.pid, rule, tuple(premises), origin_body)
        self.records.append(rec)
        if self.graph is not None:
            if rule == "start":
                vid = self.graph.add_start(clause, premises[0])
            else:
                vid = self.graph.record(rule, premises, part.pid, clause)
            assert vid == cid
        part.ids.append(cid)
        part.by_key.setdefault(clause.key, cid)
        if part is self.main:
            self.main_created += 1
        if rule != "start":
            self.rule_counts[rule] += 1
        return rec

    def _activate(self, part, rec):
        c = rec.clause
        if self.cfg.subsumption:
            self._backward_subsume(part, rec.id, c)
        part.active[rec.id] = c
        part.index_subsumption(rec.id, c)
        part.queue.append(rec.id)
        self.n_active += 1
        self.peak = max(self.peak, self.n_active)

    def _deactivate(self, part, cid):
        c = part.active.pop(cid)
        part.unindex(cid, c)
        self.records[cid].active = False
        self.n_active -= 1

    def _forward_subsumed(self, part, c) -> bool:
        mc = _mask(c)
        glob_, init_ = part.mask_count[False], part.mask_count[True]
        if glob_.get(0) or init_.get(0):
            return True
        if mc.bit_count() <= _SUBMASK_LIMIT:
            # look up every submask; only small clauses get here
            use_init = c.kind == INITIAL
            s = mc
            while True:
                if glob_.get(s) or (use_init and init_.get(s)):
                    return True
                if not s:
                    return False
                s = (s - 1) & mc
        # wide clause: scan the watch lists of its codes
        nmc = ~mc
        masks = part.masks
        tables = part.watch if c.kind == INITIAL else part.watch[:1]
        for k in _codes(c):
            for watch in tables:
                w = watch.get(k)
                if w and any(not masks[d] & nmc for d in w):
                    return True
        return False

    def _backward_subsume(self, part, cid, c):
        codes = sorted(_codes(c), key=lambda k: len(part.occ.get(k, ())))
        if codes:
            cand = set(part.occ.get(codes[0], ()))
            for k in codes[1:]:
                if not cand:
                    break
                cand &= part.occ.get(k, set())
        else:
            cand = set(part.active)
        mc = _mask(c)
        for d in sorted(cand):
            if d != cid and d in part.active and _subsumes_masked(c, mc, part.active[d], part.masks[d]):
                self._deactivate(part, d)

    def add(self, part, clause, rule, premises, *, force=False, origin_body=None):
        """Run a conclusion through redundancy checks and store it if kept.

        `force` skips tautology, duplicate and forward subsumption checks
        (used for loop-it-init-c clauses, which are obligations).
        """
        if not force:
            if self.cfg.tautology_deletion and is_tautology(clause):
                return None
            if clause.key in part.by_key:
                return None
            if self.cfg.subsumption and self._forward_subsumed(part, clause):
                return None
        rec = self._new_record(part, clause, rule, premises, origin_body)
        self._activate(part, rec)
        if clause.is_empty and part is self.main:
            raise _Unsat()
        return rec.id

    # -- saturation -----------------------------------------------------------

    def _rank(self, atom):
        r = self._ranks.get(atom)
        if r is None:
            a = self.atoms[atom]
            if a.origin == "waitfor":
                r = (2, atom)
            elif a.origin == "occurrence":
                # a definition sits above the subformulas it defines
                r = (1, -a.ref)
            else:
                r = (0, atom)
            self._ranks[atom] = r
        return r

    def _eligible(self, part, c):
        """Literals a clause may be resolved on: all of them, or the maximal ones."""
        lits = c.now if (c.kind == INITIAL or not c.next) else c.next
        if not self.cfg.ordered or len(lits) < 2:
            return lits
        top = max(self._rank(abs(l)) for l in lits)
        return frozenset(l for l in lits if self._rank(abs(l)) == top)

    def _candidates(self, part, cid, c, xx_only):
        out = []
        lits = self._eligible(part, c)
        if c.kind == INITIAL:
            if not xx_only:
                for l in lits:
                    out += [(d, "init-ii", cid, d, l) for d in part.i_now.get(-l, ())]
                    out += [(d, "init-in", cid, d, l) for d in part.u_now.get(-l, ())]
        elif c.is_universal:
            if not xx_only:
                for l in lits:
                    out += [(d, "init-in", d, cid, -l) for d in part.i_now.get(-l, ())]
                    out += [(d, "step-nn", cid, d, l) for d in part.u_now.get(-l, ())]
                    out += [(d, "step-nx", cid, d, l) for d in part.s_next.get(-l, ())]
        elif c.is_step:
            for l in lits:
                if not xx_only:
                    out += [(d, "step-nx", d, cid, -l) for d in part.u_now.get(-l, ())]
                out += [(d, "step-xx", cid, d, l) for d in part.s_next.get(-l, ())]
        out.sort(key=lambda t: (t[0], _lit_order(t[4]), t[1]))
        return out

    def saturate(self, part, xx_only=False):
        """Given-clause loop: FIFO over the queue, partners in id order."""
        while part.queue:
            cid = part.queue.popleft()
            if cid not in part.active:
                continue
            c = part.active[cid]
            self._tick()
            for partner, rule, p1, p2, pivot in self._candidates(part, cid, c, xx_only):
                if cid not in part.active:
                    break
                if partner not in part.active:
                    continue
                concl = _RESOLVE[rule](part.active[p1], part.active[p2], pivot)
                self.add(part, concl, rule, (p1, p2))
            if cid in part.active:
                part.index_partner(cid, c, self._eligible(part, c))

    # -- augmentation -----------------------------------------------------------

    def augment(self):
        done = set()
        for cid in list(self.main.ids):
            c = self.records[cid].clause
            if not c.is_eventuality:
                continue
            l = c.ev
            if l not in self.waitfor:
                self.waitfor[l] = self.atoms.waitfor(l)
            w = self.waitfor[l]
            self.add(self.main, glob(c.now | {l, w}), "aug1", (cid,))
            if l not in done:
                done.add(l)
                self.add(self.main, glob({-w}, {l, w}), "aug2", (cid,))

    # -- loop search ------------------------------------------------------------

    def _init_iteration(self, search, it, ev_id, previous):
        pid = pg.loop_partition(search, it)
        part = _Partition(pid)
        if self.graph is not None:
            self.graph.add_partition(pid)
        ev = self.records[ev_id].clause
        for mid in sorted(self.main.active):
            c = self.main.active[mid]
            if c.is_step:
                self.add(part, c, "loop-it-init-x", (mid,))
            elif c.is_universal:
                self.add(part, glob((), c.now), "loop-it-init-n", (mid,))
        for src, body in previous:
            cid = self.add(part, glob((), body | {ev.ev}), "loop-it-init-c", (src, ev_id),
                           force=True, origin_body=body)
            part.initc.append(cid)
        return part

    def subsumption_check(self, current, obligations):
        """Whether every obligation body is subsumed by some current clause.

        `current` lists (id, clause) pairs of global clauses without X part;
        `obligations` lists (init-c id, origin body).  Witnesses pair each
        obligation with its first subsumer and are only returned on success.
        """
        witnesses = []
        for oid, body in obligations:
            hit = next((cid for cid, c in current if subsumes(c, glob(body))), None)
            if hit is None:
                return False, []
            witnesses.append((hit, oid))
        return True, witnesses

    def loop_search(self, search, ev_id):
        previous = [(None, frozenset())]
        it = 0
        while True:
            part = self._init_iteration(search, it, ev_id, previous)
            self.saturate(part, xx_only=True)
            current = [(cid, c) for cid, c in sorted(part.active.items()) if c.is_universal]
            obligations = [(cid, self.records[cid].origin_body) for cid in part.initc]
            found, witnesses = self.subsumption_check(current, obligations)
            self._drop_partition(part)
            it += 1
            if found:
                for sub, initc in witnesses:
                    if self.graph is not None:
                        self.graph.record("loop-it-sub", (sub,), target=initc)
                    self.rule_counts["loop-it-sub"] += 1
                self.loop_iterations.append(it)
                return current
            if not current:
                self.loop_iterations.append(it)
                return None
            previous = [(cid, c.now) for cid, c in current]

    def _drop_partition(self, part):
        # the partition is never written again; only its records remain
        self.n_active -= len(part.active)

    def derive_loop_conclusions(self, ev_id, final):
        ev = self.records[ev_id].clause
        l = ev.ev
        w = self.waitfor[l]
        for cid, c in final:
            self.add(self.main, glob(c.now | ev.now | {l}), "loop-conclusion1", (cid, ev_id))
            self.add(self.main, glob({-w}, c.now | {l}), "loop-conclusion2", (cid, ev_id))

    # -- driver -----------------------------------------------------------------

    def _start(self):
        for i, c in enumerate(self.problem.clauses):
            self._new_record(self.main, c, "start", (i,))
        if any(c.is_empty for c in self.problem.clauses):
            raise _Unsat()
        for rec in list(self.records):
            c = rec.clause
            if c.is_eventuality:
                continue
            if self.cfg.tautology_deletion and is_tautology(c):
                rec.active = False
                continue
            if self.cfg.subsumption and self._forward_subsumed(self.main, c):
                rec.active = False
                continue
            self._activate(self.main, rec)

    def _run(self):
        self._start()
        self.saturate(self.main)
        self.augment()
        self.saturate(self.main)
        evs = [rec.id for rec in self.records if rec.clause.is_eventuality]
        before = -1
        search = 0
        while before != self.main_created:
            before = self.main_created
            for ev_id in evs:
                final = self.loop_search(search, ev_id)
                search += 1
                if final is not None:
                    self.derive_loop_conclusions(ev_id, final)
                    self.saturate(self.main)

    def solve(self) -> SolverResult:
        self.t0 = time.perf_counter()
        try:
            self._run()
            verdict = SAT
        except _Unsat:
            verdict = UNSAT
        except ResourceLimit:
            verdict = UNKNOWN
        wall = time.perf_counter() - self.t0
        stats = {
            "rule_counts": dict(sorted(self.rule_counts.items())),
            "loop_searches": len(self.loop_iterations),
            "loop_iterations": list(self.loop_iterations),
            "clauses_created": len(self.records),
            "peak_clauses": self.peak,
            "wall_ms": round(wall * 1000, 3),
        }
        return SolverResult(verdict, self.problem, self.atoms, self.graph, self.records, stats)


def solve(problem: SnfProblem, config: SolverConfig | None = None) -> SolverResult:
    return Solver(problem, config).solve()
