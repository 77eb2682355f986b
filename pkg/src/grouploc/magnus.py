"""Magnus expansion and rational lower central quotients.

Free group elements are sent into truncated noncommutative power series with
exact rational coefficients via ``x -> 1 + X``.  A word lies in the q-th lower
central subgroup of a free group exactly when its expansion minus one has no
terms of degree < q.

For a finitely presented G = F/<<R>> the rational class-c quotient
G / G^Q_{c+1} has Malcev Lie algebra L_{<=c} / J, where L is the free Lie
algebra on the generators and J is the Lie ideal generated by the logarithms
of the relator expansions.  J is computed as the smallest subspace of the
truncated tensor algebra containing those logarithms (taken under the
exponential substitution ``x -> exp(X)``, which makes them Lie elements) and closed under
bracketing with generators.  Word triviality in the class-c quotient and the
graded dimensions of the rational lower central series both reduce to exact
linear algebra against J.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ._linalg import Echelon
from .errors import CapExceeded, NonPositive, UnknownSymbol
from .presentation import GroupHom, Presentation
from .words import Word

__all__ = [
    "DEFAULT_CAP",
    "ABOVE_CAP",
    "MagnusSeries",
    "magnus_expand",
    "lcs_degree",
    "LieQuotientReport",
    "MalcevQuotient",
    "rational_lcs_quotient",
    "stallings_injectivity_check",
    "graded_map_ranks",
    "lyndon_words",
    "witt_number",
]

DEFAULT_CAP = 5
ABOVE_CAP = "ABOVE_CAP"
# largest tensor-algebra dimension (sum of rank^k, k <= cap) we agree to build
MAX_TENSOR_DIM = 60_000


# ----------------------------------------------- truncated tensor algebra


def _mul(a: dict, b: dict, cap: int) -> dict:
    out: dict = {}
    for ka, ca in a.items():
        room = cap - len(ka)
        if room < 0:
            continue
        for kb, cb in b.items():
            if len(kb) > room:
                continue
            k = ka + kb
            v = out.get(k, 0) + ca * cb
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def _add(a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) + scale * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _bracket(a: dict, b: dict, cap: int) -> dict:
    return _add(_mul(a, b, cap), _mul(b, a, cap), -1)


def _binom(k: int, j: int) -> int:
    num = 1
    for i in range(j):
        num *= k - i
    den = 1
    for i in range(2, j + 1):
        den *= i
    return num // den


def _power_series(var: int, k: int, cap: int) -> dict:
    # (1 + X)^k for any integer k, truncated
    return {(var,) * j: Fraction(_binom(k, j)) for j in range(cap + 1) if _binom(k, j)}


def _exp_series(var: int, k: int, cap: int) -> dict:
    # exp(k X), the image of x^k under the exponential substitution
    out = {}
    term = Fraction(1)
    for j in range(cap + 1):
        if term:
            out[(var,) * j] = term
        term = term * k / (j + 1)
    return out


def _expand(w: Word, index: dict, cap: int, exponential: bool = False) -> dict:
    factor = _exp_series if exponential else _power_series
    out = {(): Fraction(1)}
    for s, k in w.letters:
        if s not in index:
            raise UnknownSymbol(s)
        out = _mul(out, factor(index[s], k, cap), cap)
    return out


def _log(series: dict, cap: int) -> dict:
    """log of a series with constant term 1, truncated."""
    a = {k: v for k, v in series.items() if k}
    out: dict = {}
    power = {(): Fraction(1)}
    for m in range(1, cap + 1):
        power = _mul(power, a, cap)
        if not power:
            break
        out = _add(out, power, Fraction((-1) ** (m + 1), m))
    return out


def _tensor_dim(n: int, cap: int) -> int:
    return sum(n ** k for k in range(1, cap + 1))


# ------------------------------------------------------------ MagnusSeries


@dataclass(frozen=True)
class MagnusSeries:
    variables: tuple
    degree_cap: int
    coefficients: dict = field(hash=False)

    def _key(self, symbols) -> tuple:
        idx = {v: i for i, v in enumerate(self.variables)}
        return tuple(idx[s] for s in symbols)

    def coefficient(self, *symbols: str) -> Fraction:
        return self.coefficients.get(self._key(symbols), Fraction(0))

    def terms(self) -> list:
        """``(monomial symbols, coefficient)`` pairs by degree then lexicographically."""
        out = []
        for k in sorted(self.coefficients, key=lambda t: (len(t), t)):
            out.append((tuple(self.variables[i] for i in k), self.coefficients[k]))
        return out

    def degree_part(self, d: int) -> dict:
        return {k: v for k, v in self.coefficients.items() if len(k) == d}

    def lowest_degree(self) -> int | None:
        """Least d >= 1 with a nonzero degree-d coefficient."""
        degs = [len(k) for k in self.coefficients if k]
        return min(degs) if degs else None

    def _check(self, other):
        if other.variables != self.variables:
            raise ValueError("series over different variables")
        return min(self.degree_cap, other.degree_cap)

    def __mul__(self, other: "MagnusSeries") -> "MagnusSeries":
        cap = self._check(other)
        return MagnusSeries(self.variables, cap, _mul(self.coefficients, other.coefficients, cap))

    def __add__(self, other: "MagnusSeries") -> "MagnusSeries":
        cap = self._check(other)
        return MagnusSeries(self.variables, cap, {k: v for k, v in _add(self.coefficients, other.coefficients).items() if len(k) <= cap})

    def __sub__(self, other: "MagnusSeries") -> "MagnusSeries":
        cap = self._check(other)
        return MagnusSeries(self.variables, cap, {k: v for k, v in _add(self.coefficients, other.coefficients, -1).items() if len(k) <= cap})

    def __eq__(self, other):
        if not isinstance(other, MagnusSeries):
            return NotImplemented
        return self.variables == other.variables and self.degree_cap == other.degree_cap and self.coefficients == other.coefficients

    def inverse(self) -> "MagnusSeries":
        """Inverse of a series with constant term 1."""
        if self.coefficients.get((), 0) != 1:
            raise ValueError("only series with constant term 1 are inverted")
        a = {k: v for k, v in self.coefficients.items() if k}
        out = {(): Fraction(1)}
        power = {(): Fraction(1)}
        for m in range(1, self.degree_cap + 1):
            power = _mul(power, a, self.degree_cap)
            out = _add(out, power, (-1) ** m)
        return MagnusSeries(self.variables, self.degree_cap, out)

    def log(self) -> dict:
        return _log(self.coefficients, self.degree_cap)

    def format_key(self, key: tuple) -> str:
        return "*".join(self.variables[i] for i in key) if key else "1"

    def as_dict(self) -> dict:
        return {self.format_key(k): _fmt(v) for k, v in sorted(self.coefficients.items(), key=lambda t: (len(t[0]), t[0]))}

    def __str__(self):
        parts = []
        for syms, c in self.terms():
            mono = "*".join(s.upper() for s in syms)
            if not mono:
                parts.append(_fmt(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{_fmt(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def _fmt(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def magnus_expand(w: Word, cap: int = DEFAULT_CAP, variables: Sequence[str] | None = None) -> MagnusSeries:
    if cap < 1:
        raise NonPositive(cap)
    variables = tuple(variables) if variables is not None else tuple(w.symbols())
    index = {v: i for i, v in enumerate(variables)}
    return MagnusSeries(variables, cap, _expand(w, index, cap))


def lcs_degree(w: Word, cap: int = DEFAULT_CAP):
    """Largest q <= cap with w in F_q, read off the Magnus expansion.

    Returns ``ABOVE_CAP`` when every term of degree 1..cap vanishes; that
    is never a claim of membership in every F_q.
    """
    d = magnus_expand(w, cap).lowest_degree()
    return ABOVE_CAP if d is None else d


# -------------------------------------------------------- free Lie algebra


def lyndon_words(n: int, k: int) -> list:
    """Lyndon words of length exactly k over {0..n-1} (Duval's algorithm)."""
    out = []
    if n <= 0 or k <= 0:
        return out
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == k:
            out.append(tuple(w))
        while len(w) < k:
            w.append(w[len(w) - m])
        while w and w[-1] == n - 1:
            w.pop()
    return out


def witt_number(n: int, k: int) -> int:
    """Dimension of the degree-k part of the free Lie algebra of rank n."""

    def mobius(m):
        res, p = 1, 2
        while p * p <= m:
            if m % p == 0:
                m //= p
                if m % p == 0:
                    return 0
                res = -res
            p += 1
        return -res if m > 1 else res

    return sum(mobius(d) * n ** (k // d) for d in range(1, k + 1) if k % d == 0) // k


@lru_cache(maxsize=None)
def _standard_bracketing(word: tuple):
    if len(word) == 1:
        return word[0]
    # right factor is the longest proper Lyndon suffix
    for i in range(1, len(word)):
        suffix = word[i:]
        if _is_lyndon(suffix):
            return (_standard_bracketing(word[:i]), _standard_bracketing(suffix))
    raise AssertionError("not a Lyndon word")


def _is_lyndon(w: tuple) -> bool:
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def _eval_tree(tree, images: Sequence[dict], cap: int, memo: dict) -> dict:
    if isinstance(tree, int):
        return images[tree]
    if tree in memo:
        return memo[tree]
    val = _bracket(_eval_tree(tree[0], images, cap, memo), _eval_tree(tree[1], images, cap, memo), cap)
    memo[tree] = val
    return val


def _lie_basis(n: int, k: int):
    return [_standard_bracketing(w) for w in lyndon_words(n, k)]


# ------------------------------------------------------- Malcev quotients


class MalcevQuotient:
    """Rational class-``cap`` nilpotent quotient of a finitely presented group."""

    def __init__(self, p: Presentation, cap: int):
        if cap < 1:
            raise NonPositive(cap)
        n = p.rank
        if _tensor_dim(n, cap) > MAX_TENSOR_DIM:
            raise CapExceeded(f"rank {n} at class {cap} exceeds the tensor dimension limit {MAX_TENSOR_DIM}")
        self.presentation = p
        self.cap = cap
        self.index = {g: i for i, g in enumerate(p.generators)}
        self.generators = [{(i,): Fraction(1)} for i in range(n)]
        self.ideal = Echelon()
        # Krylov closure under ad X_j; raw brackets are queued rather than the
        # normalized rows, which keeps coefficients from compounding
        queue = []
        for r in p.relators:
            v = self.log_of(r)
            if self.ideal.add(v) is not None:
                queue.append(v)
        while queue:
            v = queue.pop()
            for x in self.generators:
                u = _bracket(x, v, cap)
                if self.ideal.add(u) is not None:
                    queue.append(u)
        self._filtration = None

    @staticmethod
    def of(p: Presentation, cap: int) -> "MalcevQuotient":
        return _cached_quotient(p, cap)

    def log_of(self, w: Word) -> dict:
        """Lie element log(w) under x_j -> exp(X_j), truncated."""
        return _log(_expand(w, self.index, self.cap, exponential=True), self.cap)

    def is_trivial(self, w: Word) -> bool:
        return self.ideal.contains(self.log_of(w))

    def equal(self, u: Word, v: Word) -> bool:
        return self.is_trivial(u * v.inverse())

    def filtration(self) -> list:
        """Echelon bases of J + L_{>=k} for k = 1 .. cap+1 (index k-1)."""
        if self._filtration is None:
            levels = [None] * (self.cap + 1)
            cur = self.ideal.copy()
            levels[self.cap] = cur.copy()
            for k in range(self.cap, 0, -1):
                for tree in _lie_basis(self.presentation.rank, k):
                    cur.add(_eval_tree(tree, self.generators, self.cap, {}))
                levels[k - 1] = cur.copy()
            self._filtration = levels
        return self._filtration

    def dimensions(self) -> list:
        f = self.filtration()
        return [len(f[k - 1]) - len(f[k]) for k in range(1, self.cap + 1)]


@lru_cache(maxsize=64)
def _cached_quotient(p: Presentation, cap: int) -> MalcevQuotient:
    return MalcevQuotient(p, cap)


@dataclass(frozen=True)
class LieQuotientReport:
    presentation: Presentation
    q: int
    dimensions: tuple

    def as_dict(self) -> dict:
        return {"presentation": str(self.presentation), "q": self.q, "dimensions": list(self.dimensions)}


def rational_lcs_quotient(p: Presentation, q: int) -> LieQuotientReport:
    """Ranks of the graded pieces (G^Q_k / G^Q_{k+1}) (x) Q for k = 1..q."""
    return LieQuotientReport(p, q, tuple(MalcevQuotient.of(p, q).dimensions()))


def graded_map_ranks(h: GroupHom, q: int) -> list:
    """``(source dim, rank of induced map)`` on each graded rational LCS piece."""
    src = MalcevQuotient.of(h.source, q)
    tgt = MalcevQuotient.of(h.target, q)
    images = [tgt.log_of(w) for w in h.images]
    src_dims = src.dimensions()
    tgt_filt = tgt.filtration()
    out = []
    memo: dict = {}
    for k in range(1, q + 1):
        ech = tgt_filt[k].copy()
        rank = 0
        for tree in _lie_basis(h.source.rank, k):
            if ech.add(_eval_tree(tree, images, q, memo)) is not None:
                rank += 1
        out.append((src_dims[k - 1], rank))
    return out


def stallings_injectivity_check(h: GroupHom, q: int, ring=None) -> bool:
    """True iff h induces injections on every graded rational LCS piece up to q.

    The check is rational whatever ``ring`` is; the argument is accepted so
    callers can pass the ring a certificate was issued over.
    """
    return all(dim == rank for dim, rank in graded_map_ranks(h, q))
