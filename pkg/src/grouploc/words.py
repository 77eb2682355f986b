"""Words in free groups and monomials over a group in indeterminates.

A word is stored run-length encoded as ``((symbol, exponent), ...)`` and is
always freely reduced.  Group letters are ordinary identifiers; indeterminates
live in the reserved ``$`` namespace (``$1``, ``$2``, ...) so they can never
collide with generator names.  A monomial over G is just a word that may
mention indeterminates.

Word grammar::

    expr   := factor ('*' factor)*
    factor := atom ('^' ['-'|'+'] INT)?
    atom   := SYMBOL | '1' | '(' expr ')' | '[' expr ',' expr ']'

``[u,v]`` is sugar for ``u*v*u^-1*v^-1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import ParseError, UnassignedIndeterminate, UnknownSymbol

__all__ = [
    "Word",
    "Monomial",
    "reduce",
    "exponent_sum",
    "substitute",
    "commutator",
    "parse_word",
    "is_indeterminate",
    "indeterminate",
    "Tokenizer",
]


def is_indeterminate(symbol: str) -> bool:
    return symbol.startswith("$")


def indeterminate(i: int) -> str:
    return f"${i}"


def _merge(out: list, sym: str, k: int) -> None:
    if not k:
        return
    if out and out[-1][0] == sym:
        k += out[-1][1]
        out.pop()
        if k:
            out.append((sym, k))
    else:
        out.append((sym, k))


@dataclass(frozen=True)
class Word:
    letters: tuple = ()

    @staticmethod
    def from_letters(pairs: Iterable) -> "Word":
        out: list = []
        for sym, k in pairs:
            _merge(out, sym, int(k))
        return Word(tuple(out))

    @staticmethod
    def gen(symbol: str, k: int = 1) -> "Word":
        return Word(((symbol, k),)) if k else Word()

    def __mul__(self, other: "Word") -> "Word":
        out = list(self.letters)
        for sym, k in other.letters:
            _merge(out, sym, k)
        return Word(tuple(out))

    def inverse(self) -> "Word":
        return Word(tuple((s, -k) for s, k in reversed(self.letters)))

    __invert__ = inverse

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        out = Word()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __len__(self):
        return sum(abs(k) for _, k in self.letters)

    def __bool__(self):
        return bool(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def symbols(self) -> list:
        seen: dict = {}
        for s, _ in self.letters:
            seen.setdefault(s, None)
        return list(seen)

    def indeterminates(self) -> list:
        return [s for s in self.symbols() if is_indeterminate(s)]

    def has_indeterminates(self) -> bool:
        return any(is_indeterminate(s) for s, _ in self.letters)

    def expand(self) -> list:
        """Letter list with exponents +-1."""
        out = []
        for s, k in self.letters:
            e = 1 if k > 0 else -1
            out.extend([(s, e)] * abs(k))
        return out

    def conjugate(self, g: "Word") -> "Word":
        return g * self * g.inverse()

    def rename(self, mapping: Mapping[str, str]) -> "Word":
        return Word.from_letters((mapping.get(s, s), k) for s, k in self.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        return "*".join(s if k == 1 else f"{s}^{k}" for s, k in self.letters)

    def __repr__(self):
        return f"Word({str(self)!r})"


Monomial = Word


def reduce(letters: Iterable, alphabet: Iterable[str] | None = None) -> Word:
    """Freely reduce a raw sequence of ``(symbol, exponent)`` pairs."""
    letters = list(letters)
    if alphabet is not None:
        allowed = set(alphabet)
        for s, _ in letters:
            if s not in allowed:
                raise UnknownSymbol(s)
    return Word.from_letters(letters)


def exponent_sum(w: Word, symbol: str, alphabet: Iterable[str] | None = None) -> int:
    if alphabet is not None and symbol not in set(alphabet):
        raise UnknownSymbol(symbol)
    return sum(k for s, k in w.letters if s == symbol)


def substitute(w: Word, assignment: Mapping[str, Word]) -> Word:
    """Replace every indeterminate of ``w`` by its assigned word."""
    out = Word()
    for s, k in w.letters:
        if is_indeterminate(s):
            if s not in assignment:
                raise UnassignedIndeterminate(s)
            out = out * assignment[s] ** k
        else:
            out = out * Word.gen(s, k)
    return out


def commutator(u: Word, v: Word) -> Word:
    return u * v * u.inverse() * v.inverse()


# ---------------------------------------------------------------- parsing

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<ind>\$\d+)
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^()\[\],<>|{};:=/])
    """,
    re.VERBOSE,
)


class Tokenizer:
    """Small shared tokenizer tracking line/column for error messages."""

    def __init__(self, text: str):
        self.tokens = []
        line, col, pos = 1, 1, 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m:
                raise ParseError(line, col, "a valid token", text[pos])
            kind = m.lastgroup
            val = m.group()
            if kind == "nl":
                line, col = line + 1, 1
            else:
                if kind not in ("ws", "comment"):
                    self.tokens.append((kind, val, line, col))
                col += len(val)
            pos = m.end()
        self.tokens.append(("eof", "", line, col))
        self.i = 0

    def peek(self, offset: int = 0):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def next(self):
        tok = self.tokens[self.i]
        if tok[0] != "eof":
            self.i += 1
        return tok

    def at(self, value: str) -> bool:
        return self.peek()[1] == value and self.peek()[0] != "eof"

    def accept(self, value: str) -> bool:
        if self.at(value):
            self.next()
            return True
        return False

    def expect(self, value: str, what: str | None = None):
        tok = self.peek()
        if tok[1] != value or tok[0] == "eof":
            raise ParseError(tok[2], tok[3], what or repr(value), tok[1] or "end of input")
        return self.next()

    def expect_kind(self, kind: str, what: str):
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError(tok[2], tok[3], what, tok[1] or "end of input")
        return self.next()

    def error(self, what: str):
        tok = self.peek()
        raise ParseError(tok[2], tok[3], what, tok[1] or "end of input")

    def parse_int(self) -> int:
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        return sign * int(self.expect_kind("num", "an integer")[1])

    def parse_word(self, alphabet=None) -> Word:
        w = self._factor(alphabet)
        while self.accept("*"):
            w = w * self._factor(alphabet)
        return w

    def _factor(self, alphabet) -> Word:
        w = self._atom(alphabet)
        if self.accept("^"):
            if self.accept("("):
                k = self.parse_int()
                self.expect(")")
            else:
                k = self.parse_int()
            w = w ** k
        return w

    def _atom(self, alphabet) -> Word:
        kind, val, line, col = self.peek()
        if kind in ("name", "ind"):
            self.next()
            if alphabet is not None and val not in alphabet:
                raise UnknownSymbol(val)
            return Word.gen(val)
        if kind == "num":
            if val != "1":
                raise ParseError(line, col, "'1' (identity) or a symbol", val)
            self.next()
            return Word()
        if self.accept("("):
            w = self.parse_word(alphabet)
            self.expect(")")
            return w
        if self.accept("["):
            u = self.parse_word(alphabet)
            self.expect(",")
            v = self.parse_word(alphabet)
            self.expect("]")
            return commutator(u, v)
        self.error("a symbol, '1', '(' or '['")


def parse_word(text: str, alphabet: Iterable[str] | None = None) -> Word:
    tz = Tokenizer(text)
    w = tz.parse_word(set(alphabet) if alphabet is not None else None)
    if tz.peek()[0] != "eof":
        tz.error("end of word")
    return w
