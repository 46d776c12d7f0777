"""Brute-force generalized Buchi emptiness for SNF clause sets.

States are (valuation, pending eventualities).  A pending bit is set when an
eventuality clause's body P is false and cleared when its literal holds.  The
clauses are satisfiable iff a reachable nontrivial SCC contains, for every
eventuality clause, a state where that clause is not pending.
"""

import itertools

import networkx as nx


def _holds(lit, val):
    return val[abs(lit) - 1] == (lit > 0)


def _any(lits, val):
    return any(_holds(l, val) for l in lits)


def buchi_sat(clauses, n_atoms):
    evs = [c for c in clauses if c.is_eventuality]
    univ = [c for c in clauses if c.kind == "global" and not c.next and not c.is_eventuality]
    step = [c for c in clauses if c.kind == "global" and c.next]
    init = [c for c in clauses if c.kind == "initial"]
    if any(c.is_empty for c in clauses):
        return False
    vals = [v for v in itertools.product((False, True), repeat=n_atoms)
            if all(_any(c.now, v) for c in univ)]

    def pend(prev, v):
        out = []
        for i, c in enumerate(evs):
            p = (prev[i] or not _any(c.now, v)) and not _holds(c.ev, v)
            out.append(p)
        return tuple(out)

    g = nx.DiGraph()
    start = []
    for v in vals:
        if all(_any(c.now, v) for c in init):
            s = (v, pend((False,) * len(evs), v))
            start.append(s)
            g.add_node(s)
    work = list(start)
    seen = set(start)
    while work:
        u, pu = work.pop()
        for v in vals:
            if all(_any(c.now, u) or _any(c.next, v) for c in step):
                s = (v, pend(pu, v))
                g.add_edge((u, pu), s)
                if s not in seen:
                    seen.add(s)
                    work.append(s)
    for comp in nx.strongly_connected_components(g):
        if len(comp) == 1:
            (s,) = comp
            if not g.has_edge(s, s):
                continue
        if all(any(not s[1][i] for s in comp) for i in range(len(evs))):
            return True
    return False
