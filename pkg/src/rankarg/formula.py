"""Propositional formulas: AST, parser, canonical rendering and a total order.

Text syntax (ASCII)::

    !  negation          (binds tightest)
    &  conjunction
    |  disjunction
    -> implication       (right-associative)
    <-> biconditional    (right-associative, binds loosest)
    F  falsity,  T  truth
    atoms: [a-z][A-Za-z0-9_]*

``render`` is the canonical form: every binary operator is parenthesized,
so ``parse_formula(render(f)) == f`` for every formula.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import FormulaSyntaxError

ATOM_RE = re.compile(r"[a-z][A-Za-z0-9_]*")


@dataclass(frozen=True, slots=True)
class Atom:
    name: str

    def __post_init__(self):
        if not ATOM_RE.fullmatch(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")


@dataclass(frozen=True, slots=True)
class Neg:
    arg: "Formula"


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Falsity:
    pass


@dataclass(frozen=True, slots=True)
class Truth:
    pass


Formula = Union[Atom, Neg, And, Or, Imp, Iff, Falsity, Truth]

FALSITY = Falsity()
TRUTH = Truth()

BINARY_SYMBOLS = {And: "&", Or: "|", Imp: "->", Iff: "<->"}


# --------------------------------------------------------------------------
# rendering and ordering
# --------------------------------------------------------------------------

def render(f: Formula) -> str:
    """Canonical text of ``f``: fully parenthesized binaries, ``!`` prefix."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Neg):
        return "!" + render(f.arg)
    if isinstance(f, Falsity):
        return "F"
    if isinstance(f, Truth):
        return "T"
    op = BINARY_SYMBOLS[type(f)]
    return f"({render(f.left)} {op} {render(f.right)})"


def order_key(f: Formula) -> tuple[int, bytes]:
    """Sort key realizing ``formula_order``: render length, then bytes."""
    text = render(f).encode("utf-8")
    return (len(text), text)


def formula_order(f1: Formula, f2: Formula) -> int:
    """Three-way comparison: -1 (Less), 0 (Equal), 1 (Greater)."""
    k1, k2 = order_key(f1), order_key(f2)
    return (k1 > k2) - (k1 < k2)


def sort_formulas(formulas: Iterable[Formula]) -> list[Formula]:
    return sorted(formulas, key=order_key)


def atoms(f: Formula) -> frozenset[str]:
    """Names of all atoms occurring in ``f``."""
    out: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            out.add(g.name)
        elif isinstance(g, Neg):
            stack.append(g.arg)
        elif isinstance(g, (And, Or, Imp, Iff)):
            stack.append(g.left)
            stack.append(g.right)
    return frozenset(out)


def atoms_of(formulas: Iterable[Formula]) -> frozenset[str]:
    out: set[str] = set()
    for f in formulas:
        out |= atoms(f)
    return frozenset(out)


def conjoin(formulas: Iterable[Formula]) -> Formula:
    """Left fold of ``&`` over ``formulas`` sorted by ``formula_order``.

    A single formula is returned unchanged; the empty conjunction is ``T``.
    """
    items = sort_formulas(set(formulas))
    if not items:
        return TRUTH
    out = items[0]
    for g in items[1:]:
        out = And(out, g)
    return out


# --------------------------------------------------------------------------
# parsing
# --------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<iff><->)|(?P<imp>->)|(?P<sym>[!&|()])|(?P<const>[FT])(?![A-Za-z0-9_])"
    r"|(?P<atom>[a-z][A-Za-z0-9_]*))"
)

_PRIMARY_START = frozenset({"!", "(", "F", "T", "atom"})


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        n = len(text)
        while True:
            while pos < n and text[pos].isspace():
                pos += 1
            if pos >= n:
                break
            m = _TOKEN_RE.match(text, pos)
            if m is None or m.end() == pos:
                raise FormulaSyntaxError(
                    f"unexpected character {text[pos]!r}", self._byte(pos), _PRIMARY_START | {"&", "|", "->", "<->", ")"}
                )
            kind = m.lastgroup
            value = m.group(kind)
            start = m.start(kind)
            if kind == "sym" or kind == "iff" or kind == "imp" or kind == "const":
                self.tokens.append((value, value, start))
            else:
                self.tokens.append(("atom", value, start))
            pos = m.end()
        self.tokens.append(("EOF", "", n))
        self.i = 0

    def _byte(self, pos: int) -> int:
        return len(self.text[:pos].encode("utf-8"))

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected: frozenset[str]):
        kind, value, pos = self.tokens[self.i]
        what = "end of input" if kind == "EOF" else repr(value)
        raise FormulaSyntaxError(f"unexpected {what}", self._byte(pos), expected)

    def parse(self) -> Formula:
        if self.peek() == "EOF":
            self.fail(_PRIMARY_START)
        f = self.iff()
        if self.peek() != "EOF":
            self.fail(frozenset({"&", "|", "->", "<->", "EOF"}))
        return f

    def iff(self) -> Formula:
        left = self.imp()
        if self.peek() == "<->":
            self.take()
            return Iff(left, self.iff())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return Imp(left, self.imp())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.peek() == "|":
            self.take()
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.peek() == "&":
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        kind = self.peek()
        if kind == "!":
            self.take()
            return Neg(self.unary())
        if kind == "atom":
            return Atom(self.take()[1])
        if kind == "F":
            self.take()
            return FALSITY
        if kind == "T":
            self.take()
            return TRUTH
        if kind == "(":
            self.take()
            inner = self.iff()
            if self.peek() != ")":
                self.fail(frozenset({")", "&", "|", "->", "<->"}))
            self.take()
            return inner
        self.fail(_PRIMARY_START)


def parse_formula(text: str) -> Formula:
    """Parse ``text`` into a formula.

    Raises FormulaSyntaxError carrying the byte offset of the offending
    token and the set of tokens that would have been accepted there.
    """
    return _Parser(text).parse()
