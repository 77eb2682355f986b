import pytest
from hypothesis import given, strategies as st

from grouploc.closure import NullhomologousSystem, adjoin_solutions
from grouploc.homology import (
    certify_omega_R,
    check_h1_iso,
    compose_certified,
    h1_free_basis_words,
    h1_map_matrix,
    h1_with_R,
)
from grouploc.magnus import rational_lcs_quotient
from grouploc.presentation import GroupHom, Presentation, identity_hom, parse_presentation
from grouploc.ring import QQ, ZZ, RModuleInvariants, make_ring
from grouploc.words import Word, parse_word

from conftest import words

W = parse_word
R2 = make_ring({2})
rings = st.sampled_from([ZZ, R2, make_ring({2, 3}), QQ])
pres_st = st.lists(words(("a", "b", "c"), 5, 3), max_size=3).map(lambda rs: Presentation(("a", "b", "c"), tuple(rs), "P"))


def test_h1_examples():
    assert h1_with_R(parse_presentation("< x, y | [x,y] >"), ZZ) == RModuleInvariants(2)
    assert h1_with_R(parse_presentation("< a | a^2 >"), R2).is_zero()
    assert h1_with_R(parse_presentation("< a, b | a*b*a*b^-1*a^-1*b^-1 >"), ZZ) == RModuleInvariants(1)
    assert h1_with_R(parse_presentation("< a, b | a^6, b^4 >"), ZZ) == RModuleInvariants(0, (2, 12))


def test_h1_map_matrix_examples():
    f2 = parse_presentation("< x, y >")
    assert h1_map_matrix(identity_hom(f2)) == [[1, 0], [0, 1]]
    z = parse_presentation("< x >")
    assert h1_map_matrix(GroupHom(z, z, [W("x^2")])) == [[2]]
    assert h1_map_matrix(GroupHom(f2, z, [W("x"), W("x")])) == [[1, 1]]


def test_check_h1_iso_examples():
    z = parse_presentation("< x >")
    sq = GroupHom(z, z, [W("x^2")])
    assert check_h1_iso(sq, R2) == "ISO"
    assert check_h1_iso(sq, ZZ) == "NOT_ISO"
    f2 = parse_presentation("< x, y >")
    assert check_h1_iso(GroupHom(z, f2, [W("x")]), QQ) == "NOT_ISO"
    # surjective but not injective on H_1
    c4 = parse_presentation("< a | a^4 >")
    c2 = parse_presentation("< a | a^2 >")
    assert check_h1_iso(GroupHom(c4, c2, [W("a")]), ZZ) == "NOT_ISO"
    assert check_h1_iso(GroupHom(c4, c2, [W("a")]), R2) == "ISO"


def test_certify_examples():
    g = parse_presentation("G = < g >")
    q, h, cert = adjoin_solutions(g, NullhomologousSystem(g, 2, (W("g"),)), R2)
    assert q.relators == (W("z1^2*g^-1"),)
    assert (cert.h1_status, cert.h2_status) == ("ISO", "SURJECTIVE_BY_CONSTRUCTION(ADJUNCTION)")
    # the same hom checked over Z fails the H_1 half, and gets no H_2 claim
    over_z = certify_omega_R(h, ZZ)
    assert over_z.h1_status == "NOT_ISO" and over_z.h2_status == "UNKNOWN"
    user = certify_omega_R(identity_hom(g), ZZ)
    assert user.reason == "EXTERNAL_CLAIM" and user.h2_status == "UNKNOWN" and user.h1_status == "ISO"
    assert set(cert.as_dict()) == {"hom", "ring", "h1_status", "h2_status", "reason"}


def test_composite_certificate():
    g = parse_presentation("G = < g >")
    q1, _, c1 = adjoin_solutions(g, NullhomologousSystem(g, 2, (W("g"),)), R2)
    q2, _, c2 = adjoin_solutions(q1, NullhomologousSystem(q1, 2, (W("z1"),)), R2)
    comp = compose_certified(c1, c2)
    assert comp.h2_status == "SURJECTIVE_BY_CONSTRUCTION(COMPOSITE)" and comp.h1_status == "ISO"
    assert comp.hom.images == (W("g"),)


@given(pres_st, rings)
def test_identity_is_iso(p, ring):
    assert check_h1_iso(identity_hom(p), ring) == "ISO"


@given(pres_st)
def test_rational_betti_is_first_lcs_dimension(p):
    assert h1_with_R(p, QQ).free_rank == rational_lcs_quotient(p, 1).dimensions[0]


@given(pres_st)
def test_free_basis_words_span_free_part(p):
    basis = h1_free_basis_words(p)
    assert len(basis) == h1_with_R(p, ZZ).free_rank
    # killing the basis leaves a torsion group
    from grouploc.presentation import adjoin_relators

    q, _ = adjoin_relators(p, basis)
    assert h1_with_R(q, QQ).is_zero()
