"""Sparse exact row echelon bases over Q.

Vectors are dicts mapping hashable keys (here: index tuples, i.e. tensor
monomials) to Fractions.  Keys are ordered by (length, tuple).  The basis is
kept fully reduced: each stored row has a distinct leading key with
coefficient 1 that occurs in no other row, which keeps coefficients small.
"""
from __future__ import annotations

from fractions import Fraction


def _order(key):
    return (len(key), key)


class Echelon:
    def __init__(self):
        self.rows: dict = {}

    def __len__(self):
        return len(self.rows)

    def copy(self) -> "Echelon":
        e = Echelon()
        e.rows = dict(self.rows)
        return e

    def reduce(self, vec: dict) -> dict:
        """Remainder of ``vec`` after eliminating every stored leading key."""
        v = {k: Fraction(c) for k, c in vec.items() if c}
        done: dict = {}
        while v:
            k = max(v, key=_order)
            row = self.rows.get(k)
            if row is None:
                done[k] = v.pop(k)
                continue
            c = v[k]
            for kk, a in row.items():
                nv = v.get(kk, 0) - c * a
                if nv:
                    v[kk] = nv
                else:
                    v.pop(kk, None)
        return done

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def add(self, vec: dict):
        """Insert ``vec``; returns the stored row, or None if already in the span."""
        v = self.reduce(vec)
        if not v:
            return None
        lead = max(v, key=_order)
        c = v[lead]
        row = {k: a / c for k, a in v.items()}
        # rows are replaced, never mutated, so copies stay independent
        for key, other in list(self.rows.items()):
            f = other.get(lead)
            if f:
                new = dict(other)
                for kk, a in row.items():
                    nv = new.get(kk, 0) - f * a
                    if nv:
                        new[kk] = nv
                    else:
                        new.pop(kk, None)
                self.rows[key] = new
        self.rows[lead] = row
        return row
