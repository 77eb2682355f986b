"""Subrings of the rationals and localization of finitely generated abelian groups.

A subring R of Q is determined by the set of primes it inverts.  ``Z`` inverts
nothing, ``Q`` inverts everything, ``Z[1/2,1/3]`` inverts 2 and 3.  The set
D_R of admissible denominators is then the multiplicative set of positive
integers whose prime factors are all inverted.

Abelian groups are handled through integer relation matrices (rows are
relations, columns are generators) and their Smith normal form.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from sympy import isprime

from .errors import NonPositive, NonPrimeElement, ParseError

__all__ = [
    "CoefficientRing",
    "RModuleInvariants",
    "SmithForm",
    "ZZ",
    "QQ",
    "make_ring",
    "parse_ring",
    "in_denominator_set",
    "smith_normal_form",
    "localize_abelian",
]


@dataclass(frozen=True)
class CoefficientRing:
    inverted_primes: frozenset = frozenset()
    all_primes: bool = False

    @property
    def name(self) -> str:
        if self.all_primes:
            return "Q"
        if not self.inverted_primes:
            return "Z"
        return "Z[" + ",".join(f"1/{p}" for p in sorted(self.inverted_primes)) + "]"

    def __str__(self):
        return self.name

    def inverts(self, p: int) -> bool:
        return self.all_primes or p in self.inverted_primes

    def strip(self, d: int) -> int:
        """Remove from |d| every prime factor that is a unit in this ring."""
        d = abs(d)
        if d == 0:
            return 0
        if self.all_primes:
            return 1
        for p in self.inverted_primes:
            while d % p == 0:
                d //= p
        return d

    def contains(self, other: "CoefficientRing") -> bool:
        if self.all_primes:
            return True
        if other.all_primes:
            return False
        return other.inverted_primes <= self.inverted_primes

    def join(self, other: "CoefficientRing") -> "CoefficientRing":
        if self.all_primes or other.all_primes:
            return QQ
        return CoefficientRing(self.inverted_primes | other.inverted_primes)

    def smallest_denominator(self) -> int | None:
        """Smallest element of D_R other than 1, or None for R = Z."""
        if self.all_primes:
            return 2
        if not self.inverted_primes:
            return None
        return min(self.inverted_primes)


ZZ = CoefficientRing()
QQ = CoefficientRing(all_primes=True)


def make_ring(primes: Iterable[int] | str = ()) -> CoefficientRing:
    """Build the subring of Q inverting ``primes``; pass ``"all"`` for Q."""
    if isinstance(primes, str):
        if primes.lower() in ("all", "q"):
            return QQ
        raise NonPrimeElement(primes)
    ps = set()
    for n in primes:
        if not isinstance(n, int) or n < 2 or not isprime(n):
            raise NonPrimeElement(n)
        ps.add(n)
    return CoefficientRing(frozenset(ps))


_RING_RE = re.compile(r"^Z\[\s*1/\d+(\s*,\s*1/\d+)*\s*\]$")


def parse_ring(text: str) -> CoefficientRing:
    """Parse the literal syntax ``Z``, ``Q`` or ``Z[1/2,1/3]``."""
    s = text.strip()
    if s == "Z":
        return ZZ
    if s == "Q":
        return QQ
    if not _RING_RE.match(s):
        raise ParseError(1, 1, "ring literal Z, Q or Z[1/p,...]", s)
    nums = [int(m) for m in re.findall(r"1/(\d+)", s)]
    return make_ring(nums)


def in_denominator_set(ring: CoefficientRing, e: int) -> bool:
    if e <= 0:
        raise NonPositive(e)
    return ring.strip(e) == 1


@dataclass(frozen=True)
class RModuleInvariants:
    free_rank: int
    torsion_orders: tuple = ()

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion_orders

    def as_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion_orders)}

    def __str__(self):
        parts = ["Z"] * min(self.free_rank, 1)
        if self.free_rank > 1:
            parts = [f"Z^{self.free_rank}"]
        parts += [f"Z/{d}" for d in self.torsion_orders]
        return " + ".join(parts) if parts else "0"


@dataclass
class SmithForm:
    """``U @ M @ V == diag`` with U, V unimodular.

    ``diag`` has length min(rows, cols); entries are nonnegative and form a
    divisibility chain with zeros last.  ``V_inv`` is the exact inverse of V,
    whose rows express the new generator basis in terms of the old one.
    """

    nrows: int
    ncols: int
    diag: list
    U: list
    V: list
    V_inv: list = field(repr=False)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d != 0)

    def column_modulus(self, j: int) -> int:
        """Order of the j-th cyclic factor of the cokernel (0 means Z)."""
        return self.diag[j] if j < len(self.diag) else 0

    def coordinates(self, vec: Sequence[int]) -> list:
        """Coordinates of a row vector of Z^ncols in the Smith basis."""
        return [sum(vec[i] * self.V[i][j] for i in range(self.ncols)) for j in range(self.ncols)]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    """Exact Smith normal form with transforms.

    ``ncols`` must be given when the matrix has no rows.  Pivots are chosen by
    minimal absolute value to keep entries small.
    """
    A = [list(map(int, row)) for row in matrix]
    r = len(A)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    for row in A:
        if len(row) != n:
            raise ValueError("ragged relation matrix")
    U = _identity(r)
    V = _identity(n)
    Vi = _identity(n)

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]
        Vi[j], Vi[k] = Vi[k], Vi[j]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    t = 0
    while t < min(r, n):
        best = None
        for i in range(t, r):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        if best[0] != t:
            swap_rows(t, best[0])
        if best[1] != t:
            swap_cols(t, best[1])
        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, r):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    clean = clean and A[t][j] == 0
            if not clean:
                cand = None
                for i in range(t + 1, r):
                    if A[i][t] and (cand is None or abs(A[i][t]) < abs(cand[2])):
                        cand = ("r", i, A[i][t])
                for j in range(t + 1, n):
                    if A[t][j] and (cand is None or abs(A[t][j]) < abs(cand[2])):
                        cand = ("c", j, A[t][j])
                if cand[0] == "r":
                    swap_rows(t, cand[1])
                else:
                    swap_cols(t, cand[1])
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1

    diag = [A[i][i] for i in range(min(r, n))]
    return SmithForm(r, n, diag, U, V, Vi)


def localize_abelian(relation_matrix: Sequence[Sequence[int]], ring: CoefficientRing, ncols: int | None = None) -> RModuleInvariants:
    """Invariants of (Z^ncols / rows) tensored with ``ring``."""
    snf = smith_normal_form(relation_matrix, ncols)
    torsion = []
    for d in snf.diag:
        if d == 0:
            continue
        s = ring.strip(d)
        if s != 1:
            torsion.append(s)
    return RModuleInvariants(snf.ncols - snf.rank, tuple(torsion))


def vanishes_after_localization(snf: SmithForm, vec: Sequence[int], ring: CoefficientRing) -> bool:
    """True iff the class of ``vec`` in coker is zero after tensoring with ring."""
    for j, c in enumerate(snf.coordinates(vec)):
        d = snf.column_modulus(j)
        if d == 0:
            if c != 0:
                return False
        elif c % ring.strip(d):
            return False
    return True


def divides_class(snf: SmithForm, vec: Sequence[int], k: int) -> bool:
    """True iff the class of ``vec`` in coker is k times some class (over Z)."""
    for j, c in enumerate(snf.coordinates(vec)):
        d = snf.column_modulus(j)
        if d == 0:
            if c % k:
                return False
        elif c % gcd(k, d):
            return False
    return True
