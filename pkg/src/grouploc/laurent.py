"""Multivariate Laurent polynomials with exact rational coefficients.

Terms are stored as ``{exponent vector: Fraction}`` with no zero
coefficients.  Divisibility in the Laurent ring reduces to polynomial
division once monomial content is stripped: if s and f have no monomial
factor then s | f in Q[x^+-1, ...] iff s | f in Q[x, ...].

Text syntax (parse/print)::

    2/3*x^2*y^-1 - x + 1
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ParseError, UnknownSymbol, ZeroDivisor
from .words import Tokenizer

__all__ = ["LaurentPoly", "FractionElem", "parse_laurent"]


def _clean(terms: Mapping) -> dict:
    return {k: Fraction(v) for k, v in terms.items() if v}


@dataclass(frozen=True)
class LaurentPoly:
    variables: tuple
    terms: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "terms", _clean(self.terms))
        n = len(self.variables)
        for k in self.terms:
            if len(k) != n:
                raise ValueError("exponent vector length does not match variables")

    # construction
    @classmethod
    def const(cls, variables, c) -> "LaurentPoly":
        return cls(tuple(variables), {(0,) * len(tuple(variables)): Fraction(c)})

    @classmethod
    def zero(cls, variables) -> "LaurentPoly":
        return cls(tuple(variables), {})

    @classmethod
    def monomial(cls, variables, exponents: Sequence[int], c=1) -> "LaurentPoly":
        return cls(tuple(variables), {tuple(int(e) for e in exponents): Fraction(c)})

    @classmethod
    def var(cls, variables, name: str) -> "LaurentPoly":
        variables = tuple(variables)
        if name not in variables:
            raise UnknownSymbol(name)
        return cls.monomial(variables, [int(v == name) for v in variables])

    # arithmetic
    def _same(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return LaurentPoly.const(self.variables, other)
        if other.variables != self.variables:
            raise ValueError("Laurent polynomials over different variables")
        return other

    def __add__(self, other) -> "LaurentPoly":
        other = self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.variables, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._same(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._same(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = self._same(other)
        out: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                k = tuple(a + b for a, b in zip(ka, kb))
                out[k] = out.get(k, 0) + ca * cb
        return LaurentPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial():
                raise ZeroDivisor("only monomials are invertible")
            (k, c), = self.terms.items()
            return LaurentPoly(self.variables, {tuple(-e * -n for e in k): Fraction(1) / c ** -n})
        out = LaurentPoly.const(self.variables, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.variables, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def augmentation(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def shift(self, exponents: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with the given exponent vector."""
        return LaurentPoly(self.variables, {tuple(a + b for a, b in zip(k, exponents)): c for k, c in self.terms.items()})

    def normalized(self) -> tuple:
        """``(polynomial with no monomial factor, shift applied)``."""
        if not self.terms:
            return self, (0,) * len(self.variables)
        mins = [min(k[i] for k in self.terms) for i in range(len(self.variables))]
        shift = tuple(-m for m in mins)
        return self.shift(shift), shift

    def leading(self):
        k = max(self.terms)
        return k, self.terms[k]

    def divide(self, s: "LaurentPoly") -> "LaurentPoly | None":
        """Exact quotient self / s in the Laurent ring, or None if s does not divide."""
        s = self._same(s)
        if s.is_zero():
            raise ZeroDivisor("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self.variables)
        f, fshift = self.normalized()
        d, dshift = s.normalized()
        dk, dc = d.leading()
        q: dict = {}
        r = dict(f.terms)
        while r:
            rk = max(r)
            diff = tuple(a - b for a, b in zip(rk, dk))
            if any(x < 0 for x in diff):
                return None
            c = r[rk] / dc
            q[diff] = q.get(diff, 0) + c
            for k, a in d.terms.items():
                kk = tuple(x + y for x, y in zip(k, diff))
                v = r.get(kk, 0) - c * a
                if v:
                    r[kk] = v
                else:
                    r.pop(kk, None)
        quotient = LaurentPoly(self.variables, q)
        # undo the normalizations: f = self * m_f, d = s * m_d
        return quotient.shift(tuple(b - a for a, b in zip(fshift, dshift)))

    def divides(self, f: "LaurentPoly") -> bool:
        return f.divide(self) is not None

    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for k, c in self.terms.items():
            t = c
            for v, e in zip(self.variables, k):
                t *= Fraction(values[v]) ** e
            total += t
        return total

    def substitute(self, images: Sequence["LaurentPoly"]) -> "LaurentPoly":
        """Replace variable i by the monomial ``images[i]`` (a ring map)."""
        target = images[0].variables if images else self.variables
        out = LaurentPoly.zero(target)
        for k, c in self.terms.items():
            t = LaurentPoly.const(target, c)
            for img, e in zip(images, k):
                t = t * img ** e
            out = out + t
        return out

    def univariate(self) -> dict:
        """``{exponent: coefficient}`` for a one-variable polynomial."""
        if len(self.variables) != 1:
            raise ValueError("not univariate")
        return {k[0]: c for k, c in self.terms.items()}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, k) if e)
            mag = abs(c)
            cs = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            if not mono:
                body = cs
            elif mag == 1:
                body = mono
            else:
                body = f"{cs}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


# ------------------------------------------------------------------ parser


def parse_laurent(text: str, variables: Sequence[str]) -> LaurentPoly:
    """Parse ``c1*x^a*y^b + ...`` (with parentheses) over ``variables``."""
    variables = tuple(variables)
    tz = Tokenizer(text)
    p = _sum(tz, variables)
    if tz.peek()[0] != "eof":
        tz.error("end of polynomial")
    return p


def _sum(tz, vs):
    neg = tz.accept("-")
    if not neg:
        tz.accept("+")
    p = _product(tz, vs)
    if neg:
        p = -p
    while True:
        if tz.accept("+"):
            p = p + _product(tz, vs)
        elif tz.accept("-"):
            p = p - _product(tz, vs)
        else:
            return p


def _product(tz, vs):
    p = _power(tz, vs)
    while tz.accept("*"):
        p = p * _power(tz, vs)
    return p


def _power(tz, vs):
    p = _atom(tz, vs)
    if tz.accept("^"):
        if tz.accept("("):
            k = tz.parse_int()
            tz.expect(")")
        else:
            k = tz.parse_int()
        p = p ** k
    return p


def _atom(tz, vs):
    kind, val, line, col = tz.peek()
    if kind == "num":
        tz.next()
        c = Fraction(int(val))
        if tz.accept("/"):
            c /= int(tz.expect_kind("num", "a denominator")[1])
        return LaurentPoly.const(vs, c)
    if kind == "name":
        tz.next()
        return LaurentPoly.var(vs, val)
    if tz.accept("("):
        p = _sum(tz, vs)
        tz.expect(")")
        return p
    raise ParseError(line, col, "a number, variable or '('", val or "end of input")


# ---------------------------------------------------------------- fractions


@dataclass(frozen=True, eq=False)
class FractionElem:
    """Element of the fraction field; kept unreduced, compared by cross-multiplication."""

    numerator: LaurentPoly
    denominator: LaurentPoly

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ZeroDivisor("zero denominator")

    @classmethod
    def of(cls, p: LaurentPoly) -> "FractionElem":
        return cls(p, LaurentPoly.const(p.variables, 1))

    def _lift(self, other):
        if isinstance(other, FractionElem):
            return other
        if isinstance(other, LaurentPoly):
            return FractionElem.of(other)
        return FractionElem.of(LaurentPoly.const(self.numerator.variables, other))

    def __add__(self, other):
        o = self._lift(other)
        return FractionElem(self.numerator * o.denominator + o.numerator * self.denominator, self.denominator * o.denominator)

    __radd__ = __add__

    def __neg__(self):
        return FractionElem(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        o = self._lift(other)
        return FractionElem(self.numerator * o.numerator, self.denominator * o.denominator)

    __rmul__ = __mul__

    def inverse(self) -> "FractionElem":
        if self.numerator.is_zero():
            raise ZeroDivisor("inverse of zero")
        return FractionElem(self.denominator, self.numerator)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __eq__(self, other):
        o = self._lift(other)
        return self.numerator * o.denominator == o.numerator * self.denominator

    def __hash__(self):
        raise TypeError("FractionElem is unhashable (no canonical form)")

    def __str__(self):
        return f"({self.numerator})/({self.denominator})"
