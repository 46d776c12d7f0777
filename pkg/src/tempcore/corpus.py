"""Benchmark formulas used by tests and experiment scripts."""

# four clauses whose core is the whole set; loop search needs two iterations
LOOP_SNF = """\
global: a | ~b
global: a | b | X (a | b)
global: ~a | X a
eventually: ~a | F ~a
"""

# request/grant toy; the last conjunct asks whether a request can happen
TOY_REQ_GNT = """
(G (req -> (X gnt & (X X gnt & X X X gnt))))
& (G (gnt -> X ~gnt))
& (G (cancel -> X (~gnt U go)))
& (F req)
"""

# two-floor lift
LIFT_SPEC = """
(~u & (f0 & (~b0 & (~b1 & ~up))))
& (G ((u -> ~X u) & (~X u -> u)))
& (G (f0 -> ~f1))
& (G ((f0 -> X (f0 | f1)) & (f1 -> X (f0 | f1))))
& (G (u -> (((f0 -> X f0) & (X f0 -> f0)) & ((f1 -> X f1) & (X f1 -> f1)))))
& (G (~u -> (((b0 -> X b0) & (X b0 -> b0)) & ((b1 -> X b1) & (X b1 -> b1)))))
& (G (((b0 & ~f0) -> X b0) & ((b1 & ~f1) -> X b1)))
& (G ((f0 & X f0) -> ((up -> X up) & (X up -> up))))
& (G ((f1 & X f1) -> ((up -> X up) & (X up -> up))))
& (G (((f0 & X f1) -> up) & ((f1 & X f0) -> ~up)))
& (G ((sb -> (b0 | b1)) & ((b0 | b1) -> sb)))
& (G ((f0 & ~sb) -> (f0 U (sb R (F f0 & ~up)))))
& (G ((f1 & ~sb) -> (f1 U (sb R (F f0 & ~up)))))
& (G ((b0 -> F f0) & (b1 -> F f1)))
"""

LIFT_QUERIES = {
    "always_b1": "G b1",
    "next_always_b1": "X G b1",
    "eventually_b1": "F b1",
}

# upper bounds on non-trivial top-level conjuncts of the lifted core
LIFT_CONJUNCT_LIMITS = {"always_b1": 3, "next_always_b1": 6, "eventually_b1": 9}


def lift_query(name: str) -> str:
    return f"({LIFT_SPEC.strip()})\n& ({LIFT_QUERIES[name]})\n"


# (formula, expected verdict); each verdict checked by hand
CURATED = [
    ("G p & F ~p", "unsat"),
    ("(p U q) & G ~q", "unsat"),
    ("F p", "sat"),
    ("G F p", "sat"),
    ("p & ~p", "unsat"),
    ("X p & X ~p", "unsat"),
    ("G (p -> X p) & p & F ~p", "unsat"),
    ("G F p & F G ~p", "unsat"),
    ("(p R q) & F ~q & G ~p", "unsat"),
    ("G (p | q) & G ~p & F ~q", "unsat"),
    ("F G p & G F ~p", "unsat"),
    ("G (p -> X ~p) & G (~p -> X p) & p & X p", "unsat"),
    ("(p U q) & (False R ~q)", "unsat"),
    ("G F p & G F ~p", "sat"),
    ("p U q", "sat"),
    ("G (p -> F q) & G p", "sat"),
    ("X X p & G (p -> X ~p) & X p", "unsat"),
    ("G (a -> X b) & G (b -> X c) & a & G ~c", "unsat"),
    ("F (p & X ~p) & G (p -> X p)", "unsat"),
    ("True", "sat"),
]
