"""First homology with coefficients in a subring of Q, and 2-connectedness certificates.

H_1(G; R) is read off the relator exponent-sum matrix.  Surjectivity on H_2
is never computed; it is certified from how a homomorphism was built
(adjoining solutions of a nullhomologous system, or killing an invisible
normal subgroup, or composing such maps) and otherwise left UNKNOWN.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .presentation import GroupHom, Presentation, compose
from .ring import (
    CoefficientRing,
    RModuleInvariants,
    localize_abelian,
    smith_normal_form,
)
from .words import Word

__all__ = [
    "exponent_vector",
    "exponent_matrix",
    "h1_with_R",
    "h1_map_matrix",
    "check_h1_iso",
    "h1_free_basis_words",
    "TwoConnectednessCertificate",
    "certify_omega_R",
    "compose_certified",
    "CONSTRUCTION_REASONS",
]

CONSTRUCTION_REASONS = ("ADJUNCTION", "INVISIBLE_QUOTIENT", "COMPOSITE")


def exponent_vector(w: Word, generators: Sequence[str]) -> list:
    idx = {g: i for i, g in enumerate(generators)}
    out = [0] * len(generators)
    for s, k in w.letters:
        out[idx[s]] += k
    return out


def exponent_matrix(p: Presentation) -> list:
    """Rows are relators, columns are generators."""
    return [exponent_vector(r, p.generators) for r in p.relators]


def h1_with_R(p: Presentation, ring: CoefficientRing) -> RModuleInvariants:
    return localize_abelian(exponent_matrix(p), ring, p.rank)


def h1_map_matrix(h: GroupHom) -> list:
    """Rows are target generators, columns are source generators."""
    cols = [exponent_vector(w, h.target.generators) for w in h.images]
    return [[cols[j][i] for j in range(h.source.rank)] for i in range(h.target.rank)]


def check_h1_iso(h: GroupHom, ring: CoefficientRing) -> str:
    """``"ISO"`` or ``"NOT_ISO"`` for the induced map on H_1(-; R).

    The map is onto after tensoring with R iff the cokernel, presented by the
    target relators stacked on the images of the source generators, localizes
    to zero.  A surjection between isomorphic finitely generated R-modules is
    an isomorphism, so it remains to compare the invariants of both sides.
    """
    images = [exponent_vector(w, h.target.generators) for w in h.images]
    coker = localize_abelian(exponent_matrix(h.target) + images, ring, h.target.rank)
    if not coker.is_zero():
        return "NOT_ISO"
    if h1_with_R(h.source, ring) != h1_with_R(h.target, ring):
        return "NOT_ISO"
    return "ISO"


def h1_free_basis_words(p: Presentation) -> list:
    """Words whose classes form a basis of the free part of H_1(p; Z)."""
    snf = smith_normal_form(exponent_matrix(p), p.rank)
    out = []
    for k in range(p.rank):
        if snf.column_modulus(k) == 0:
            out.append(Word.from_letters((g, c) for g, c in zip(p.generators, snf.V_inv[k])))
    return out


@dataclass(frozen=True)
class TwoConnectednessCertificate:
    hom: GroupHom
    ring: CoefficientRing
    h1_status: str
    h2_status: str
    reason: str

    @property
    def certified(self) -> bool:
        return self.h1_status == "ISO" and self.h2_status.startswith("SURJECTIVE_BY_CONSTRUCTION")

    def as_dict(self) -> dict:
        return {
            "hom": str(self.hom),
            "ring": self.ring.name,
            "h1_status": self.h1_status,
            "h2_status": self.h2_status,
            "reason": self.reason,
        }


def certify_omega_R(h: GroupHom, ring: CoefficientRing) -> TwoConnectednessCertificate:
    """Certificate of 2-connectedness on R-homology.

    The H_1 half is computed.  The H_2 half is granted only to homs built by
    one of the known constructions over a ring contained in ``ring``
    (tensoring up along R -> R' preserves both halves).
    """
    h1 = check_h1_iso(h, ring)
    reason = h.reason if h.reason in CONSTRUCTION_REASONS else "EXTERNAL_CLAIM"
    h2 = "UNKNOWN"
    if reason != "EXTERNAL_CLAIM" and h1 == "ISO" and h.ring is not None and ring.contains(h.ring):
        h2 = f"SURJECTIVE_BY_CONSTRUCTION({reason})"
    return TwoConnectednessCertificate(h, ring, h1, h2, reason)


def compose_certified(first: TwoConnectednessCertificate, second: TwoConnectednessCertificate) -> TwoConnectednessCertificate:
    """Certificate for ``second.hom . first.hom`` over the larger of the two rings."""
    h = compose(first.hom, second.hom)
    ring = first.ring.join(second.ring)
    if first.certified and second.certified:
        h = replace(h, reason="COMPOSITE", ring=ring)
    return certify_omega_R(h, ring)
