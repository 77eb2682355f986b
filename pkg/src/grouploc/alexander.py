"""Fox calculus, Alexander modules and the torsion-free derived series at levels <= 2.

Everything happens over the Laurent ring of the free part of H_1(G), with
rational coefficients.  The fraction field of that ring is never built
explicitly: ranks are computed by fraction-free elimination, which has the
same zero pattern.

Conventions: ``D_g(uv) = D_g(u) + u D_g(v)``; the Alexander matrix has one
row per relator and one column per generator.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import sympy

from .errors import (
    LevelOutOfRange,
    NotInCommutatorSubgroup,
    NotRankTwoFree,
    PrerequisiteNotMet,
    UnknownSymbol,
    ZeroDivisor,
)
from .homology import exponent_matrix, exponent_vector
from .laurent import LaurentPoly, parse_laurent
from .presentation import Presentation
from .ring import QQ, smith_normal_form, vanishes_after_localization
from .words import Word, exponent_sum

__all__ = [
    "fox_derivative",
    "fox_derivative_free",
    "AlexanderData",
    "alexander_matrix",
    "kh1_rank",
    "matrix_rank",
    "derived_class",
    "DerivedSeriesVerdict",
    "gh_membership",
    "DivisibilityResult",
    "divisibility_test",
    "augmentation",
    "container_level",
    "alexander_polynomial",
]


# ------------------------------------------------------------------- Fox


def fox_derivative_free(w: Word, g: str) -> dict:
    """D_g(w) as a formal integer combination ``{Word: coefficient}`` in Z[F]."""
    out: dict = {}

    def bump(u, c):
        v = out.get(u, 0) + c
        if v:
            out[u] = v
        else:
            out.pop(u, None)

    prefix = Word()
    for s, k in w.letters:
        if s == g:
            if k > 0:
                for j in range(k):
                    bump(prefix * Word.gen(s, j), 1)
            else:
                for j in range(1, -k + 1):
                    bump(prefix * Word.gen(s, -j), -1)
        prefix = prefix * Word.gen(s, k)
    return out


def _abelian_fox(w: Word, g: str, variables: tuple, images: dict) -> LaurentPoly:
    n = len(variables)
    terms: dict = {}
    pos = [0] * n
    for s, k in w.letters:
        if s not in images:
            raise UnknownSymbol(s)
        step = images[s]
        if s == g:
            if k > 0:
                for j in range(k):
                    key = tuple(pos[i] + j * step[i] for i in range(n))
                    terms[key] = terms.get(key, 0) + 1
            else:
                for j in range(1, -k + 1):
                    key = tuple(pos[i] - j * step[i] for i in range(n))
                    terms[key] = terms.get(key, 0) - 1
        pos = [pos[i] + k * step[i] for i in range(n)]
    return LaurentPoly(variables, terms)


def fox_derivative(w: Word, g: str, data: "AlexanderData | None" = None) -> LaurentPoly:
    """Abelianized Fox derivative.

    Without ``data`` the target ring is the Laurent ring on the symbols of w
    (plus g), each generator mapping to its own variable.
    """
    if data is None:
        syms = w.symbols()
        if g not in syms:
            syms.append(g)
        variables = tuple(syms)
        images = {s: tuple(int(s == v) for v in variables) for s in variables}
    else:
        if g not in data.presentation.generators:
            raise UnknownSymbol(g)
        variables, images = data.variables, data.basis_map
    return _abelian_fox(w, g, variables, images)


# ------------------------------------------------------- Alexander matrix


@dataclass(frozen=True)
class AlexanderData:
    presentation: Presentation
    betti: int
    variables: tuple
    basis_map: dict
    matrix: tuple

    def image(self, w: Word) -> tuple:
        """Exponent vector of w in the free part of H_1."""
        out = [0] * self.betti
        for s, k in w.letters:
            for i, e in enumerate(self.basis_map[s]):
                out[i] += k * e
        return tuple(out)

    def monomial(self, w: Word) -> LaurentPoly:
        return LaurentPoly.monomial(self.variables, self.image(w))

    def fox_vector(self, w: Word) -> tuple:
        return tuple(_abelian_fox(w, g, self.variables, self.basis_map) for g in self.presentation.generators)

    def as_dict(self) -> dict:
        return {
            "presentation": str(self.presentation),
            "betti": self.betti,
            "variables": list(self.variables),
            "basis_map": {g: list(v) for g, v in self.basis_map.items()},
            "matrix": [[str(e) for e in row] for row in self.matrix],
        }


def alexander_matrix(p: Presentation) -> AlexanderData:
    snf = smith_normal_form(exponent_matrix(p), p.rank)
    free_cols = [k for k in range(p.rank) if snf.column_modulus(k) == 0]
    betti = len(free_cols)
    images = [tuple(snf.V[j][k] for k in free_cols) for j in range(p.rank)]
    if betti == 1:
        first = next((v[0] for v in images if v[0]), 1)
        if first < 0:
            images = [(-v[0],) for v in images]
    identity = betti == p.rank and all(images[j] == tuple(int(j == k) for k in range(betti)) for j in range(p.rank))
    if identity:
        variables = p.generators
    elif betti == 1:
        variables = ("t",)
    else:
        variables = tuple(f"t{i}" for i in range(1, betti + 1))
    basis_map = dict(zip(p.generators, images))
    rows = tuple(tuple(_abelian_fox(r, g, variables, basis_map) for g in p.generators) for r in p.relators)
    return AlexanderData(p, betti, tuple(variables), basis_map, rows)


def _strip_content(row: list) -> list:
    # divide a row by its common monomial factor to slow down growth
    nz = [e for e in row if not e.is_zero()]
    if not nz:
        return row
    n = len(nz[0].variables)
    mins = [min(k[i] for e in nz for k in e.terms) for i in range(n)]
    return [e.shift(tuple(-m for m in mins)) for e in row]


def matrix_rank(rows: Sequence[Sequence[LaurentPoly]]) -> int:
    """Rank over the fraction field (fraction-free elimination, first nonzero pivot)."""
    A = [list(r) for r in rows]
    if not A:
        return 0
    ncols = len(A[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(A)) if not A[i][col].is_zero()), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][col]
        for i in range(rank + 1, len(A)):
            a = A[i][col]
            if a.is_zero():
                continue
            A[i] = _strip_content([p * x - a * y for x, y in zip(A[i], A[rank])])
        rank += 1
    return rank


def kh1_rank(p: Presentation) -> int:
    """dim over the fraction field of H_1(G; K), i.e. (gens - 1) - rank of the Alexander matrix.

    Returns 0 when the rational Betti number is 0 (no Laurent variables).
    """
    data = alexander_matrix(p)
    if data.betti == 0:
        return 0
    return (p.rank - 1) - matrix_rank(data.matrix)


# ---------------------------------------------------------- derived series


def _require_commutator(w: Word, gens: Sequence[str]) -> None:
    for s in w.symbols():
        if s not in gens:
            raise UnknownSymbol(s)
    for g in gens:
        if exponent_sum(w, g):
            raise NotInCommutatorSubgroup(f"{w} has exponent sum {exponent_sum(w, g)} at {g}")


def derived_class(w: Word, p: Presentation) -> tuple:
    """Abelianized Fox vector of a commutator-subgroup word of a free group."""
    _require_commutator(w, p.generators)
    return alexander_matrix(p).fox_vector(w)


@dataclass(frozen=True)
class DerivedSeriesVerdict:
    word: Word
    level: int
    member: bool
    witness: tuple

    def as_dict(self) -> dict:
        return {"word": str(self.word), "level": self.level, "member": self.member, "witness": [str(x) for x in self.witness]}


def gh_membership(p: Presentation, w: Word, level: int) -> DerivedSeriesVerdict:
    if level not in (1, 2):
        raise LevelOutOfRange(f"level {level} is not supported (only 1 and 2)")
    for s in w.symbols():
        if s not in p.generators:
            raise UnknownSymbol(s)
    snf = smith_normal_form(exponent_matrix(p), p.rank)
    vec = exponent_vector(w, p.generators)
    coords = snf.coordinates(vec)
    rational = tuple(coords[k] for k in range(p.rank) if snf.column_modulus(k) == 0)
    in_first = vanishes_after_localization(snf, vec, QQ)
    if level == 1:
        return DerivedSeriesVerdict(w, 1, in_first, rational)
    if not in_first:
        raise PrerequisiteNotMet(f"{w} is not in the first term (rational class {list(rational)} is nonzero)")
    data = alexander_matrix(p)
    v = data.fox_vector(w)
    base = matrix_rank(data.matrix)
    member = matrix_rank(list(data.matrix) + [v]) == base
    return DerivedSeriesVerdict(w, 2, member, v)


# ------------------------------------------------------------ divisibility


@dataclass(frozen=True)
class DivisibilityResult:
    solvable: bool
    mu: LaurentPoly
    divisor: LaurentPoly
    quotient: LaurentPoly | None

    @property
    def verdict(self) -> str:
        return "SOLVABLE" if self.solvable else "UNSOLVABLE"

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "mu": str(self.mu),
            "s": str(self.divisor),
            "quotient": None if self.quotient is None else str(self.quotient),
        }


def divisibility_test(p: Presentation, u: Word, s: "LaurentPoly | str") -> DivisibilityResult:
    """Is the class of u in F'/F'' divisible by s (free group of rank two)?

    F'/F'' is free of rank one on the class of [x,y], whose Fox vector is
    (1 - y, x - 1); so the class of u is mu times that and the question is
    whether s divides mu in the Laurent ring.
    """
    if p.rank != 2 or not p.is_free():
        raise NotRankTwoFree(f"expected a free group of rank 2, got {p}")
    data = alexander_matrix(p)
    vs = data.variables
    if isinstance(s, str):
        s = parse_laurent(s, vs)
    if s.is_zero():
        raise ZeroDivisor("s = 0")
    dx, dy = derived_class(u, p)
    x = LaurentPoly.var(vs, vs[0])
    y = LaurentPoly.var(vs, vs[1])
    one = LaurentPoly.const(vs, 1)
    # the Koszul relation behind rank one, and the fundamental identity for u
    assert (one - y) * (x - one) + (x - one) * (y - one) == LaurentPoly.zero(vs)
    assert dx * (x - one) + dy * (y - one) == LaurentPoly.zero(vs)
    mu = dy.divide(x - one)
    assert mu is not None and mu * (one - y) == dx
    q = mu.divide(s)
    return DivisibilityResult(q is not None, mu, s, q)


def augmentation(f: LaurentPoly) -> Fraction:
    return f.augmentation()


# --------------------------------------------------------------- container


def container_level(p: Presentation, n: int) -> dict:
    if n < 0 or n > 2:
        raise LevelOutOfRange(f"container level {n} is not supported (0, 1 or 2)")
    if n == 0:
        return {"level": 0, "group": "trivial"}
    data = alexander_matrix(p)
    if n == 1:
        return {"level": 1, "betti": data.betti, "group": f"Q^{data.betti}"}
    return {"level": 2, "kh1_rank": kh1_rank(p), "betti": data.betti}


# ---------------------------------------------------- Alexander polynomial


def _det(m: list) -> LaurentPoly:
    if len(m) == 1:
        return m[0][0]
    total = None
    for j, a in enumerate(m[0]):
        if a.is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        t = a * _det(minor)
        if j % 2:
            t = -t
        total = t if total is None else total + t
    return total if total is not None else LaurentPoly.zero(m[0][0].variables)


def alexander_polynomial(p: Presentation) -> LaurentPoly:
    """Generator of the first elementary ideal when the Betti number is 1.

    Normalized to integer coefficients, no factor of t, positive leading
    coefficient.  The zero polynomial means the ideal is zero.
    """
    data = alexander_matrix(p)
    if data.betti != 1:
        raise PrerequisiteNotMet("the one-variable Alexander polynomial needs Betti number 1")
    k = p.rank - 1
    t = sympy.Symbol("t")
    g = sympy.Integer(0)
    if k == 0:
        g = sympy.Integer(1)
    for rows in combinations(range(len(data.matrix)), k):
        for cols in combinations(range(p.rank), k):
            m = [[data.matrix[i][j] for j in cols] for i in rows]
            d, _ = _det(m).normalized()
            expr = sum((sympy.Rational(c.numerator, c.denominator) * t ** e[0] for e, c in d.terms.items()), sympy.Integer(0))
            g = sympy.gcd(g, expr)
    if g == 0:
        return LaurentPoly.zero(data.variables)
    poly = sympy.Poly(g, t)
    _, prim = poly.primitive()
    if prim.LC() < 0:
        prim = -prim
    terms = {(m[0],): Fraction(int(c)) for m, c in prim.terms()}
    out, _ = LaurentPoly(data.variables, terms).normalized()
    return out
