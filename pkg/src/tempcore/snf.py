"""Clauses in separated normal form (SNF) and the LTL -> SNF translation.

Literals are signed integers over a 1-based atom table: ``+a`` is the atom,
``-a`` its negation.  A clause is one of

* ``I(P)``       -- initial clause, ``kind == "initial"``
* ``G(P | X Q)`` -- global clause, ``kind == "global"`` (``Q`` may be empty)
* ``G(P | F l)`` -- eventuality clause, ``kind == "eventuality"``

The empty clause is an initial or global clause without literals; both
spellings compare equal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import ltl

INITIAL = "initial"
GLOBAL = "global"
EVENTUALITY = "eventuality"


@dataclass(frozen=True)
class Atom:
    name: str
    origin: str  # "input", "occurrence" or "waitfor"
    ref: object = None  # occurrence id, or the eventuality literal of a waitfor atom


class AtomTable:
    """Ordered atom registry; index 0 is unused so literals can be signed."""

    def __init__(self):
        self.atoms: list[Atom | None] = [None]
        self._by_name: dict[str, int] = {}

    def __len__(self):
        return len(self.atoms) - 1

    def __getitem__(self, i: int) -> Atom:
        return self.atoms[i]

    def copy(self) -> "AtomTable":
        t = AtomTable()
        t.atoms = list(self.atoms)
        t._by_name = dict(self._by_name)
        return t

    def _add(self, atom: Atom) -> int:
        self.atoms.append(atom)
        self._by_name[atom.name] = len(self.atoms) - 1
        return len(self.atoms) - 1

    def _fresh_name(self, base: str) -> str:
        name = base
        while name in self._by_name:
            name += "_"
        return name

    def input(self, name: str) -> int:
        i = self._by_name.get(name)
        if i is None:
            return self._add(Atom(name, "input"))
        return i

    def lookup(self, name: str) -> int | None:
        return self._by_name.get(name)

    def occurrence(self, oid: int, base: str) -> int:
        return self._add(Atom(self._fresh_name(base), "occurrence", oid))

    def waitfor(self, lit: int) -> int:
        base = "_w" + ("n" if lit < 0 else "") + self.atoms[abs(lit)].name.lstrip("_")
        return self._add(Atom(self._fresh_name(base), "waitfor", lit))

    def name(self, i: int) -> str:
        return self.atoms[i].name

    def lit_str(self, lit: int) -> str:
        return ("~" if lit < 0 else "") + self.atoms[abs(lit)].name

    def reserve(self, names):
        # input names must be registered before fresh names are drawn
        for n in names:
            self.input(n)


def _sorted_lits(lits):
    return sorted(lits, key=lambda l: (abs(l), l < 0))


@dataclass(frozen=True, eq=False)
class Clause:
    kind: str
    now: frozenset = frozenset()
    next: frozenset = frozenset()
    ev: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "now", frozenset(self.now))
        object.__setattr__(self, "next", frozenset(self.next))
        if self.kind not in (INITIAL, GLOBAL, EVENTUALITY):
            raise ValueError(f"bad clause kind {self.kind!r}")
        if self.kind != GLOBAL and self.next:
            raise ValueError("only global clauses have an X part")
        if (self.kind == EVENTUALITY) != (self.ev is not None):
            raise ValueError("exactly eventuality clauses carry an eventuality literal")

    @property
    def key(self):
        if self.is_empty:
            return ("empty",)
        return (self.kind, self.now, self.next, self.ev)

    def __eq__(self, other):
        return isinstance(other, Clause) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def is_empty(self) -> bool:
        return self.kind != EVENTUALITY and not self.now and not self.next

    @property
    def is_initial(self) -> bool:
        return self.kind == INITIAL

    @property
    def is_eventuality(self) -> bool:
        return self.kind == EVENTUALITY

    @property
    def is_step(self) -> bool:
        """Global clause with a nonempty X part."""
        return self.kind == GLOBAL and bool(self.next)

    @property
    def is_universal(self) -> bool:
        """Global clause with an empty X part."""
        return self.kind == GLOBAL and not self.next

    def render(self, atoms: AtomTable | None = None) -> str:
        def ls(lit):
            if atoms is None:
                return ("~" if lit < 0 else "") + f"p{abs(lit)}"
            return atoms.lit_str(lit)

        parts = [ls(l) for l in _sorted_lits(self.now)]
        if self.next:
            nx = [ls(l) for l in _sorted_lits(self.next)]
            parts.append("X " + nx[0] if len(nx) == 1 else "X (" + " | ".join(nx) + ")")
        if self.ev is not None:
            parts.append("F " + ls(self.ev))
        prefix = {INITIAL: "initial", GLOBAL: "global", EVENTUALITY: "eventually"}[self.kind]
        return f"{prefix}: " + (" | ".join(parts) if parts else "false")

    def __str__(self):
        return self.render()


def initial(*lits) -> Clause:
    return Clause(INITIAL, frozenset(lits))


def glob(now=(), nxt=()) -> Clause:
    return Clause(GLOBAL, frozenset(now), frozenset(nxt))


def eventuality(now, ev) -> Clause:
    return Clause(EVENTUALITY, frozenset(now), ev=ev)


def is_tautology(c: Clause) -> bool:
    return any(-l in c.now for l in c.now) or any(-l in c.next for l in c.next)


def subsumes(c1: Clause, c2: Clause) -> bool:
    """Literal-set subsumption between global clauses with empty X part."""
    return c1.now <= c2.now


def subsumes_general(c1: Clause, c2: Clause) -> bool:
    """Whether c1 makes c2 redundant.

    Initial clauses only subsume initial clauses; a global clause subsumes a
    global clause when both parts are contained, and an initial clause when
    its X part is empty.  Eventuality clauses take no part.
    """
    if c1.is_eventuality or c2.is_eventuality:
        return False
    if c1.is_empty:
        return True
    if c1.is_initial:
        return c2.is_initial and c1.now <= c2.now
    if c2.is_initial:
        return not c1.next and c1.now <= c2.now
    return c1.now <= c2.now and c1.next <= c2.next


# -- problems -----------------------------------------------------------------

@dataclass
class SnfProblem:
    atoms: AtomTable
    clauses: tuple
    # index-aligned with `clauses`: occurrence id that produced each clause
    origins: tuple = ()
    # occurrence-prop atom -> indices of clauses holding a marked occurrence of it
    marked: dict = field(default_factory=dict)
    # occurrence id -> atom standing for that occurrence
    occurrence_atoms: dict = field(default_factory=dict)
    formula: ltl.Formula | None = None

    @property
    def liftable(self) -> bool:
        return self.formula is not None

    def eventuality_literals(self):
        seen = []
        for c in self.clauses:
            if c.is_eventuality and c.ev not in seen:
                seen.append(c.ev)
        return seen


# -- translation --------------------------------------------------------------

_T = "T"  # constant references during translation
_F = "F"


def _negref(r):
    if r == _T:
        return _F
    if r == _F:
        return _T
    return -r


class _Emitter:
    def __init__(self):
        self.clauses: list[Clause] = []
        self.index: dict[Clause, int] = {}
        self.origins: list[int] = []
        self.marked: dict[int, set] = {}

    def emit(self, kind, oid, now=(), nxt=(), ev=None, marks=()):
        """Add a clause given as references that may be truth constants."""
        items = [("n", r) for r in now] + [("x", r) for r in nxt]
        if ev is not None:
            items.append(("e", ev))
        if any(r == _T for _, r in items):
            return  # satisfied by a constant disjunct
        items = [(p, r) for p, r in items if r != _F]
        n = frozenset(r for p, r in items if p == "n")
        x = frozenset(r for p, r in items if p == "x")
        e = [r for p, r in items if p == "e"]
        if kind == EVENTUALITY and not e:
            kind = GLOBAL  # F False contributes nothing
        c = Clause(kind, n, x, e[0] if e else None)
        idx = self.index.get(c)
        if idx is None:
            idx = len(self.clauses)
            self.clauses.append(c)
            self.index[c] = idx
            self.origins.append(oid)
        lits = c.now | c.next | ({c.ev} if c.ev is not None else set())
        for a in marks:
            if a in lits or -a in lits:
                self.marked.setdefault(a, set()).add(idx)


def translate(f: ltl.Formula) -> SnfProblem:
    """Structure-preserving translation with one fresh atom per occurrence."""
    if f.oid < 0:
        f = ltl.number(f)
    atoms = AtomTable()
    atoms.reserve(sorted({g.name for g in ltl.preorder(f) if g.kind == ltl.ATOM}))

    occ_atoms: dict[int, int] = {}
    counter = 0
    # allocation in preorder
    for g in ltl.preorder(f):
        if g.kind in ltl.LEAVES:
            continue
        occ_atoms[g.oid] = atoms.occurrence(g.oid, f"_x{counter}")
        counter += 1

    def ref(g):
        if g.kind == ltl.TRUE:
            return _T
        if g.kind == ltl.FALSE:
            return _F
        if g.kind == ltl.ATOM:
            return atoms.lookup(g.name)
        return occ_atoms[g.oid]

    em = _Emitter()
    em.emit(INITIAL, f.oid, now=[ref(f)])

    stack = [(f, ltl.Polarity.POS)]
    while stack:
        g, pol = stack.pop()
        child_pol = pol.flip() if g.kind == ltl.NOT else pol
        for c in reversed(g.children):
            stack.append((c, child_pol))
        if g.kind in ltl.LEAVES:
            continue
        x = occ_atoms[g.oid]
        kids = [ref(c) for c in g.children]
        marks = [occ_atoms[c.oid] for c in g.children if c.oid in occ_atoms]
        _emit_rows(em, g.kind, pol, g.oid, x, kids, marks)

    return SnfProblem(
        atoms=atoms,
        clauses=tuple(em.clauses),
        origins=tuple(em.origins),
        marked={a: frozenset(s) for a, s in em.marked.items()},
        occurrence_atoms=occ_atoms,
        formula=f,
    )


def _emit_rows(em, kind, pol, oid, x, kids, marks):
    n = _negref
    G, E = GLOBAL, EVENTUALITY
    e = lambda k, **kw: em.emit(k, oid, marks=marks, **kw)  # noqa: E731
    y = kids[0]
    z = kids[1] if len(kids) > 1 else None
    if pol is ltl.Polarity.POS:
        if kind == ltl.NOT:
            e(G, now=[-x, n(y)])
        elif kind == ltl.AND:
            e(G, now=[-x, y])
            e(G, now=[-x, z])
        elif kind == ltl.OR:
            e(G, now=[-x, y, z])
        elif kind == ltl.NEXT:
            e(G, now=[-x], nxt=[y])
        elif kind == ltl.GLOBALLY:
            e(G, now=[-x], nxt=[x])
            e(G, now=[-x, y])
        elif kind == ltl.FINALLY:
            e(E, now=[-x], ev=y)
        elif kind == ltl.UNTIL:
            e(G, now=[-x, z, y])
            e(G, now=[-x, z], nxt=[x])
            e(E, now=[-x], ev=z)
        elif kind == ltl.RELEASES:
            e(G, now=[-x, z])
            e(G, now=[-x, y], nxt=[x])
    else:
        if kind == ltl.NOT:
            e(G, now=[x, y])
        elif kind == ltl.AND:
            e(G, now=[x, n(y), n(z)])
        elif kind == ltl.OR:
            e(G, now=[x, n(y)])
            e(G, now=[x, n(z)])
        elif kind == ltl.NEXT:
            e(G, now=[x], nxt=[n(y)])
        elif kind == ltl.GLOBALLY:
            e(E, now=[x], ev=n(y))
        elif kind == ltl.FINALLY:
            e(G, now=[x], nxt=[-x])
            e(G, now=[x, n(y)])
        elif kind == ltl.UNTIL:
            e(G, now=[x, n(z)])
            e(G, now=[x, n(y)], nxt=[-x])
        elif kind == ltl.RELEASES:
            e(G, now=[x, n(z), n(y)])
            e(G, now=[x, n(z)], nxt=[-x])
            e(E, now=[x], ev=n(z))


# -- text format --------------------------------------------------------------

class SnfSyntaxError(ValueError):
    def __init__(self, msg, line):
        super().__init__(f"line {line}: {msg}")
        self.line = line


_SNF_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[~|()]))")
_PREFIX = {"initial": INITIAL, "global": GLOBAL, "eventually": EVENTUALITY}


def _parse_line(body, lineno, atoms):
    toks = []
    pos = 0
    body = body.rstrip()
    while pos < len(body):
        m = _SNF_TOKEN.match(body, pos)
        if m is None or m.end() == pos:
            if body[pos:].strip() == "":
                break
            raise SnfSyntaxError(f"unexpected character {body[pos]!r}", lineno)
        toks.append(m.group("ident") or m.group("op"))
        pos = m.end()
    toks.append(None)
    i = 0

    def lit():
        nonlocal i
        sign = 1
        if toks[i] == "~":
            sign = -1
            i += 1
        t = toks[i]
        if t is None or t in ("X", "F", "false", "|", "(", ")", "~"):
            raise SnfSyntaxError(f"expected a literal, found {t!r}", lineno)
        i += 1
        return sign * atoms.input(t)

    now, nxt, evs = set(), set(), []
    while True:
        t = toks[i]
        if t == "false":
            i += 1
        elif t == "X":
            i += 1
            if toks[i] == "(":
                i += 1
                nxt.add(lit())
                while toks[i] == "|":
                    i += 1
                    nxt.add(lit())
                if toks[i] != ")":
                    raise SnfSyntaxError("expected ')'", lineno)
                i += 1
            else:
                nxt.add(lit())
        elif t == "F":
            i += 1
            evs.append(lit())
        else:
            now.add(lit())
        if toks[i] is None:
            break
        if toks[i] != "|":
            raise SnfSyntaxError(f"expected '|', found {toks[i]!r}", lineno)
        i += 1
    return now, nxt, evs


def parse_snf(text: str) -> SnfProblem:
    atoms = AtomTable()
    clauses: list[Clause] = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, body = line.partition(":")
        kind = _PREFIX.get(head.strip())
        if not sep or kind is None:
            raise SnfSyntaxError("clause must start with initial:, global: or eventually:", lineno)
        now, nxt, evs = _parse_line(body, lineno, atoms)
        if kind == EVENTUALITY:
            if len(evs) != 1:
                raise SnfSyntaxError(f"eventuality clause needs exactly one F literal, got {len(evs)}", lineno)
            if nxt:
                raise SnfSyntaxError("eventuality clause cannot have an X part", lineno)
            c = Clause(kind, now, ev=evs[0])
        else:
            if evs:
                raise SnfSyntaxError("F literal outside an eventuality clause", lineno)
            if kind == INITIAL and nxt:
                raise SnfSyntaxError("initial clause cannot have an X part", lineno)
            c = Clause(kind, now, nxt)
        if c not in seen:
            seen.add(c)
            clauses.append(c)
    return SnfProblem(atoms=atoms, clauses=tuple(clauses))


def print_snf(problem: SnfProblem, clauses=None) -> str:
    cs = problem.clauses if clauses is None else clauses
    return "".join(c.render(problem.atoms) + "\n" for c in cs)
