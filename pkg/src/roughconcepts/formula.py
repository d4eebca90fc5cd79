"""Formula AST for the lattice-based modal language, with an ASCII parser and printer.

Grammar::

    sequent := formula "|-" formula
    formula := conj ("|" conj)*
    conj    := unary ("&" unary)*
    unary   := ("box" | "dia" | "bbox" | "bdia" | "rt" | "lt") unary | atom
    atom    := "T" | "F" | identifier | "(" formula ")"

Binary connectives associate to the left.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import ClassVar

from .errors import FormulaSyntaxError, UnboundAtomError


class Formula:
    __slots__ = ()

    def __and__(self, other: Formula) -> Formula:
        return And(self, other)

    def __or__(self, other: Formula) -> Formula:
        return Or(self, other)

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True, repr=False)
class Bot(Formula):
    def __repr__(self) -> str:
        return "Bot()"


@dataclass(frozen=True, repr=False)
class Top(Formula):
    def __repr__(self) -> str:
        return "Top()"


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Unary(Formula):
    arg: Formula
    keyword: ClassVar[str] = ""
    symbol: ClassVar[str] = ""


@dataclass(frozen=True)
class Box(Unary):
    keyword: ClassVar[str] = "box"
    symbol: ClassVar[str] = "□"


@dataclass(frozen=True)
class Dia(Unary):
    keyword: ClassVar[str] = "dia"
    symbol: ClassVar[str] = "◇"


@dataclass(frozen=True)
class BlackBox(Unary):
    keyword: ClassVar[str] = "bbox"
    symbol: ClassVar[str] = "■"


@dataclass(frozen=True)
class BlackDia(Unary):
    keyword: ClassVar[str] = "bdia"
    symbol: ClassVar[str] = "◆"


@dataclass(frozen=True)
class RTri(Unary):
    keyword: ClassVar[str] = "rt"
    symbol: ClassVar[str] = "▷"


@dataclass(frozen=True)
class LTri(Unary):
    keyword: ClassVar[str] = "lt"
    symbol: ClassVar[str] = "◁"


UNARY = {cls.keyword: cls for cls in (Box, Dia, BlackBox, BlackDia, RTri, LTri)}
# Connectives interpreted through adjoint relations rather than relations of the context.
EXTENDED = (BlackBox, BlackDia)


def atoms(f: Formula) -> frozenset[str]:
    if isinstance(f, Atom):
        return frozenset([f.name])
    if isinstance(f, (And, Or)):
        return atoms(f.left) | atoms(f.right)
    if isinstance(f, Unary):
        return atoms(f.arg)
    return frozenset()


def uses_extended(f: Formula) -> bool:
    """True when ``f`` contains ``bbox`` or ``bdia``."""
    if isinstance(f, EXTENDED):
        return True
    if isinstance(f, (And, Or)):
        return uses_extended(f.left) or uses_extended(f.right)
    if isinstance(f, Unary):
        return uses_extended(f.arg)
    return False


_PREC = {Or: 1, And: 2}


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 3)


def format_formula(f: Formula, unicode: bool = False) -> str:
    """Print ``f`` with the fewest parentheses that still parse back to ``f``."""
    if isinstance(f, Top):
        return "⊤" if unicode else "T"
    if isinstance(f, Bot):
        return "⊥" if unicode else "F"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Unary):
        inner = format_formula(f.arg, unicode)
        if _prec(f.arg) < 3:
            inner = f"({inner})"
        if unicode:
            return f"{f.symbol}{inner}"
        return f"{f.keyword} {inner}"
    if isinstance(f, (And, Or)):
        p = _prec(f)
        left = format_formula(f.left, unicode)
        right = format_formula(f.right, unicode)
        if _prec(f.left) < p:
            left = f"({left})"
        if _prec(f.right) <= p:
            right = f"({right})"
        op = ("∧" if isinstance(f, And) else "∨") if unicode else ("&" if isinstance(f, And) else "|")
        return f"{left} {op} {right}"
    raise TypeError(f"not a formula: {f!r}")


def format_sequent(f: Formula, g: Formula, unicode: bool = False) -> str:
    return f"{format_formula(f, unicode)} {'⊢' if unicode else '|-'} {format_formula(g, unicode)}"


_TOKEN = re.compile(r"\s*(?:(\|-)|([&|()])|([A-Za-z_][A-Za-z0-9_]*))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            skip = len(text[pos:]) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[pos + skip]!r}", pos + skip)
        out.append((m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    out.append(("", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, alphabet):
        self.toks = _tokenize(text)
        self.i = 0
        self.alphabet = None if alphabet is None else frozenset(alphabet)

    def peek(self) -> str:
        return self.toks[self.i][0]

    def pos(self) -> int:
        return self.toks[self.i][1]

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if expected is not None and tok != expected:
            shown = repr(tok) if tok else "end of input"
            raise FormulaSyntaxError(f"expected {expected!r}, found {shown}", self.pos())
        self.i += 1
        return tok

    def formula(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok in UNARY:
            self.take()
            return UNARY[tok](self.unary())
        return self.atom()

    def atom(self) -> Formula:
        tok, pos = self.toks[self.i]
        if tok == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        if tok == "T":
            self.take()
            return Top()
        if tok == "F":
            self.take()
            return Bot()
        if tok and (tok[0].isalpha() or tok[0] == "_"):
            if self.alphabet is not None and tok not in self.alphabet:
                raise UnboundAtomError(f"atom {tok!r} is not in the declared alphabet")
            self.take()
            return Atom(tok)
        raise FormulaSyntaxError(f"unexpected {tok!r}" if tok else "unexpected end of input", pos)

    def done(self) -> None:
        if self.peek():
            raise FormulaSyntaxError(f"unexpected {self.peek()!r}", self.pos())


def parse_formula(text: str, alphabet=None) -> Formula:
    p = _Parser(text, alphabet)
    f = p.formula()
    p.done()
    return f


def parse_sequent(text: str, alphabet=None) -> tuple[Formula, Formula]:
    """Parse ``"phi |- psi"`` into its two sides."""
    p = _Parser(text, alphabet)
    f = p.formula()
    p.take("|-")
    g = p.formula()
    p.done()
    return f, g
