"""LTL formulas: syntax trees, parsing, printing and occurrence bookkeeping.

Every node of a parsed tree carries an occurrence id, assigned in depth-first
preorder starting at 0 for the root.  Ids are ignored by equality, so two trees
of the same shape compare equal no matter how they were numbered.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, replace
from typing import Iterator

TRUE = "true"
FALSE = "false"
ATOM = "atom"
NOT = "not"
AND = "and"
OR = "or"
NEXT = "next"
UNTIL = "until"
RELEASES = "releases"
FINALLY = "finally"
GLOBALLY = "globally"

UNARY = (NOT, NEXT, FINALLY, GLOBALLY)
BINARY = (AND, OR, UNTIL, RELEASES)
LEAVES = (TRUE, FALSE, ATOM)
KINDS = LEAVES + UNARY + BINARY

KEYWORDS = frozenset({"True", "False", "U", "R", "X", "F", "G"})


class Polarity(enum.Enum):
    POS = "+"
    NEG = "-"

    def flip(self) -> "Polarity":
        return Polarity.NEG if self is Polarity.POS else Polarity.POS

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Formula:
    kind: str
    children: tuple = ()
    name: str | None = None
    oid: int = field(default=-1, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown formula kind {self.kind!r}")
        arity = 0 if self.kind in LEAVES else 1 if self.kind in UNARY else 2
        if len(self.children) != arity:
            raise ValueError(f"{self.kind} takes {arity} operand(s), got {len(self.children)}")
        if (self.kind == ATOM) != (self.name is not None):
            raise ValueError("only atoms carry a name")

    @property
    def is_constant(self) -> bool:
        return self.kind in (TRUE, FALSE)

    def __str__(self):
        return print_ltl(self)


# -- constructors -----------------------------------------------------------

def atom(name: str) -> Formula:
    return Formula(ATOM, name=name)


def const(value: bool) -> Formula:
    return Formula(TRUE if value else FALSE)


def neg(f: Formula) -> Formula:
    return Formula(NOT, (f,))


def conj(a: Formula, b: Formula) -> Formula:
    return Formula(AND, (a, b))


def disj(a: Formula, b: Formula) -> Formula:
    return Formula(OR, (a, b))


def implies(a: Formula, b: Formula) -> Formula:
    return disj(neg(a), b)


def nxt(f: Formula) -> Formula:
    return Formula(NEXT, (f,))


def until(a: Formula, b: Formula) -> Formula:
    return Formula(UNTIL, (a, b))


def releases(a: Formula, b: Formula) -> Formula:
    return Formula(RELEASES, (a, b))


def eventually(f: Formula) -> Formula:
    return Formula(FINALLY, (f,))


def always(f: Formula) -> Formula:
    return Formula(GLOBALLY, (f,))


def conj_all(parts) -> Formula:
    parts = list(parts)
    if not parts:
        return const(True)
    out = parts[0]
    for p in parts[1:]:
        out = conj(out, p)
    return out


# -- traversal ----------------------------------------------------------------

def number(f: Formula) -> Formula:
    """Return a copy of `f` with preorder occurrence ids 0, 1, 2, ..."""
    counter = iter(range(1 << 62))

    def walk(g):
        oid = next(counter)
        kids = tuple(walk(c) for c in g.children)
        return replace(g, children=kids, oid=oid)

    return walk(f)


def preorder(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(g.children))


def tree_size(f: Formula) -> int:
    return sum(1 for _ in preorder(f))


def occurrences(f: Formula) -> list[tuple[int, Polarity, str]]:
    """List (occurrence id, polarity, kind) for every node, in preorder.

    Polarity starts positive at the root and flips below each negation.
    """
    if f.oid < 0:
        f = number(f)
    out = []
    stack = [(f, Polarity.POS)]
    while stack:
        g, pol = stack.pop()
        out.append((g.oid, pol, g.kind))
        child_pol = pol.flip() if g.kind == NOT else pol
        for c in reversed(g.children):
            stack.append((c, child_pol))
    return out


def subformula(f: Formula, oid: int) -> Formula:
    for g in preorder(f):
        if g.oid == oid:
            return g
    raise KeyError(oid)


def replace_occurrences(f: Formula, replacements: dict[int, bool]) -> Formula:
    """Replace the given occurrences by truth constants.

    Descendants of a replaced occurrence simply disappear with it.  The result
    is renumbered.
    """
    if f.oid < 0:
        f = number(f)
    known = {g.oid for g in preorder(f)}
    unknown = set(replacements) - known
    if unknown:
        raise KeyError(f"unknown occurrence id(s): {sorted(unknown)}")

    def walk(g):
        if g.oid in replacements:
            return const(replacements[g.oid])
        if not g.children:
            return g
        return replace(g, children=tuple(walk(c) for c in g.children))

    return number(walk(f))


def simplify_constants(f: Formula) -> Formula:
    """Fold truth constants away (for display only)."""

    def walk(g):
        if not g.children:
            return replace(g, oid=-1)
        kids = [walk(c) for c in g.children]
        k = g.kind
        if k == NOT:
            c = kids[0]
            if c.is_constant:
                return const(c.kind == FALSE)
            return neg(c)
        if k in (NEXT, FINALLY, GLOBALLY):
            c = kids[0]
            return c if c.is_constant else Formula(k, (c,))
        a, b = kids
        if k == AND:
            if a.kind == FALSE or b.kind == FALSE:
                return const(False)
            if a.kind == TRUE:
                return b
            if b.kind == TRUE:
                return a
        elif k == OR:
            if a.kind == TRUE or b.kind == TRUE:
                return const(True)
            if a.kind == FALSE:
                return b
            if b.kind == FALSE:
                return a
        elif k == UNTIL:
            # a U b: constant b decides; a = False leaves b
            if b.is_constant:
                return b
            if a.kind == FALSE:
                return b
            if a.kind == TRUE:
                return eventually(b)
        elif k == RELEASES:
            if b.is_constant:
                return b
            if a.kind == TRUE:
                return b
            if a.kind == FALSE:
                return always(b)
        return Formula(k, (a, b))

    return number(walk(f))


def top_level_conjuncts(f: Formula) -> list[Formula]:
    if f.kind == AND:
        return top_level_conjuncts(f.children[0]) + top_level_conjuncts(f.children[1])
    return [f]


# -- printing -----------------------------------------------------------------

_UNARY_SYM = {NOT: "~", NEXT: "X", FINALLY: "F", GLOBALLY: "G"}
_BINARY_SYM = {AND: "&", OR: "|", UNTIL: "U", RELEASES: "R"}


def print_ltl(f: Formula) -> str:
    """Render with ASCII operators; every binary operator is parenthesized."""
    k = f.kind
    if k == TRUE:
        return "True"
    if k == FALSE:
        return "False"
    if k == ATOM:
        return f.name
    if k in _UNARY_SYM:
        sym = _UNARY_SYM[k]
        inner = print_ltl(f.children[0])
        return f"{sym}{inner}" if k == NOT else f"{sym} {inner}"
    a, b = f.children
    return f"({print_ltl(a)} {_BINARY_SYM[k]} {print_ltl(b)})"


# -- parsing ------------------------------------------------------------------

class LtlSyntaxError(ValueError):
    def __init__(self, msg, line, column):
        super().__init__(f"{line}:{column}: {msg}")
        self.line = line
        self.column = column


_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<arrow>->)|(?P<op>[~&|()])"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
)


def _tokenize(text):
    line, col0, pos = 1, 0, 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise LtlSyntaxError(f"unknown token {text[pos]!r}", line, pos - col0 + 1)
        kind = m.lastgroup
        val = m.group()
        col = pos - col0 + 1
        if kind == "nl":
            line += 1
            col0 = m.end()
        elif kind in ("arrow", "op"):
            toks.append((val, val, line, col))
        elif kind == "ident":
            toks.append((val if val in KEYWORDS else "ident", val, line, col))
        pos = m.end()
    toks.append(("eof", "", line, pos - col0 + 1))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            self.fail(f"expected {kind!r}")
        self.i += 1
        return tok

    def fail(self, msg):
        kind, val, line, col = self.toks[self.i]
        found = "end of input" if kind == "eof" else repr(val)
        raise LtlSyntaxError(f"{msg}, found {found}", line, col)

    def formula(self):
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return implies(left, self.formula())
        return left

    def disj(self):
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = disj(f, self.conj())
        return f

    def conj(self):
        f = self.bint()
        while self.peek() == "&":
            self.take()
            f = conj(f, self.bint())
        return f

    def bint(self):
        f = self.unary()
        while self.peek() in ("U", "R"):
            op = self.take()[0]
            rhs = self.unary()
            f = until(f, rhs) if op == "U" else releases(f, rhs)
        return f

    def unary(self):
        k = self.peek()
        if k == "~":
            self.take()
            return neg(self.unary())
        if k in ("X", "F", "G"):
            self.take()
            g = self.unary()
            return {"X": nxt, "F": eventually, "G": always}[k](g)
        return self.atomterm()

    def atomterm(self):
        k = self.peek()
        if k == "True":
            self.take()
            return const(True)
        if k == "False":
            self.take()
            return const(False)
        if k == "ident":
            return atom(self.take()[1])
        if k == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        self.fail("expected a formula")


def parse_ltl(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if p.peek() != "eof":
        p.fail("unexpected trailing input")
    return number(f)
