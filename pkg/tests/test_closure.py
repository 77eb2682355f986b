import json

import pytest
from hypothesis import given, strategies as st

from grouploc.closure import (
    InvisibilityCertificate,
    NullhomologousSystem,
    TowerBudget,
    adjoin_solutions,
    build_tower,
    check_solution,
    combine_systems,
    divisibility_exponent,
    enumerate_systems,
    find_invisible_certificates,
    product_certificate,
    quotient_by_invisible,
    validate_system,
    verify_invisibility_certificate,
)
from grouploc.errors import AmbientMismatch, ArityMismatch, InvalidSystem, NonPositive, UnknownSymbol, UnverifiedCertificate
from grouploc.homology import check_h1_iso, h1_with_R
from grouploc.presentation import REFUTED, VERIFIED_FREE, free_group, parse_presentation
from grouploc.ring import QQ, ZZ, make_ring
from grouploc.words import Word, parse_word as W

from conftest import words

Z2 = make_ring([2])
F2 = parse_presentation("F = < x, y >")
BS = parse_presentation("BS = < a, t | t*a*t^-1*a^-2 >")
TWO = parse_presentation("G = < a, b, t | t*a*t^-1*a^-2, t*b*t^-1*b^-3 >")


def test_validate_system():
    assert validate_system(NullhomologousSystem(F2, 1, (W("[x,$1]"),)), ZZ)
    assert not validate_system(NullhomologousSystem(F2, 2, (W("[x,$1]"),)), ZZ)
    assert validate_system(NullhomologousSystem(F2, 2, (W("[x,$1]"),)), Z2)
    assert not validate_system(NullhomologousSystem(F2, 1, (W("x*$1"),)), QQ)
    assert validate_system(NullhomologousSystem(F2, 6, (W("x*$2*$1*$2^-1*$1^-1"), W("y"))), QQ)
    with pytest.raises(NonPositive):
        NullhomologousSystem(F2, 0, (W("x"),))
    with pytest.raises(ArityMismatch):
        NullhomologousSystem(F2, 1, (W("$2"),))
    with pytest.raises(UnknownSymbol):
        NullhomologousSystem(F2, 1, (W("z"),))


def test_check_solution():
    s = NullhomologousSystem(F2, 2, (W("$1*x^2*$1^-1"),))
    assert check_solution(s, [W("x")]) == VERIFIED_FREE
    assert check_solution(s, [W("y")]) == REFUTED
    with pytest.raises(ArityMismatch):
        check_solution(s, [])
    with pytest.raises(UnknownSymbol):
        check_solution(s, [W("q")])
    bs = NullhomologousSystem(BS, 1, (W("t*$1*t^-1*$1^-1"),))
    assert check_solution(bs, [W("a")]) == VERIFIED_FREE


def test_adjoin_solutions():
    s = NullhomologousSystem(F2, 2, (W("x*$1*x^-1*y^2*x*$1^-1*x^-1"),))
    q, h, cert = adjoin_solutions(F2, s, Z2)
    assert q.generators == ("x", "y", "z1")
    assert str(q.relators[0]) == "z1^2*x*z1*x^-1*y^-2*x*z1^-1*x^-1"
    assert h.reason == "ADJUNCTION" and cert.h1_status == "ISO" and cert.certified
    with pytest.raises(InvalidSystem):
        adjoin_solutions(F2, s, ZZ)
    with pytest.raises(InvalidSystem):
        adjoin_solutions(BS, s, Z2)


def test_certificate_needs_construction_ring():
    s = NullhomologousSystem(F2, 2, (W("[x,$1]"),))
    _, h, cert = adjoin_solutions(F2, s, Z2)
    assert cert.certified
    from grouploc.homology import certify_omega_R
    assert not certify_omega_R(h, ZZ).certified


def test_combine_systems():
    a = NullhomologousSystem(F2, 2, (W("[x,$1]"),))
    b = NullhomologousSystem(F2, 3, (W("[y,$1]"),))
    c = combine_systems(F2, [a, b])
    assert c.e == 6 and c.rhs == (W("[x,$1]") ** 3, W("[y,$2]") ** 2)
    with pytest.raises(AmbientMismatch):
        combine_systems(F2, [NullhomologousSystem(BS, 1, (W("a"),))])


def test_enumerate_systems_are_valid_and_ordered():
    systems = list(enumerate_systems(F2, Z2, max_length=2))
    assert [s.e for s in systems[:3]] == [1, 1, 1]
    assert systems[0].rhs == (Word(),)
    assert {s.e for s in systems} == {1, 2}
    assert all(validate_system(s, Z2) for s in systems)
    assert systems == list(enumerate_systems(F2, Z2, max_length=2))


def test_bs_certificate():
    cert = InvisibilityCertificate(BS, (W("a"),), 1, (W("[t,$1]"),))
    for ring in (ZZ, Z2, QQ):
        assert verify_invisibility_certificate(cert, ring) == VERIFIED_FREE
    q, h, c = quotient_by_invisible(BS, cert, ZZ)
    assert str(q) == "BS_q = < t >"
    assert check_h1_iso(h, ZZ) == "ISO" and c.certified


def test_torsion_certificate():
    p = parse_presentation("< a | a^2 >")
    cert = InvisibilityCertificate(p, (W("a"),), 2, (Word(),))
    assert verify_invisibility_certificate(cert, Z2) == VERIFIED_FREE
    assert verify_invisibility_certificate(cert, ZZ) == REFUTED
    q, h, c = quotient_by_invisible(p, cert, Z2)
    assert q.generators == () and c.certified


def test_refuter_on_free_cyclic():
    p = parse_presentation("< a >")
    for ring in (ZZ, Z2, make_ring([2, 3]), QQ):
        for e in (1, 2, 6):
            for w in (Word(), W("[a,$1]"), W("$1*a*$1^-1*a^-1")):
                assert verify_invisibility_certificate(InvisibilityCertificate(p, (W("a"),), e, (w,)), ring) == REFUTED
        with pytest.raises(UnverifiedCertificate):
            quotient_by_invisible(p, InvisibilityCertificate(p, (W("a"),), 1, (Word(),)), ring)


def test_witness_must_be_nullhomologous():
    cert = InvisibilityCertificate(BS, (W("a"),), 1, (W("$1"),))
    assert verify_invisibility_certificate(cert, QQ) == REFUTED


def test_product_certificate():
    c1 = InvisibilityCertificate(TWO, (W("a"),), 1, (W("[t,$1]"),))
    c2 = InvisibilityCertificate(TWO, (W("b"),), 2, (W("[t,$1]"),))
    prod = product_certificate(c1, c2)
    assert prod.e == 2 and prod.witnesses == (W("[t,$1]") ** 2, W("[t,$2]"))
    assert verify_invisibility_certificate(prod, Z2) == VERIFIED_FREE
    q, _, cert = quotient_by_invisible(TWO, prod, Z2)
    assert q.generators == ("t",) and cert.certified
    with pytest.raises(AmbientMismatch):
        product_certificate(c1, InvisibilityCertificate(BS, (W("a"),), 1, (W("[t,$1]"),)))


def test_find_invisible_certificates():
    found = find_invisible_certificates(TWO, QQ)
    assert [(str(c.normal_generators[0]), c.e) for c in found] == [("a", 1), ("b", 2)]
    assert find_invisible_certificates(TWO, ZZ)[0].e == 1
    assert len(find_invisible_certificates(TWO, ZZ)) == 1
    assert find_invisible_certificates(F2, QQ) == []


def test_divisibility_exponent():
    p = parse_presentation("< x, z | z^4*x^-1 >")
    assert divisibility_exponent(p, W("x"), 2) == 2
    assert divisibility_exponent(p, W("z"), 2) == 0
    assert divisibility_exponent(parse_presentation("< a | a^3 >"), W("a"), 2) is None


def test_tower_depth_zero():
    t = build_tower(parse_presentation("Z = < x >"), Z2, TowerBudget(0))
    d = t.as_dict()
    assert d["depth"] == 0 and len(d["levels"]) == 1 and d["steps"] == []


@pytest.mark.parametrize("d", [1, 2, 3])
def test_tower_square_roots(d):
    t = build_tower(parse_presentation("Z = < x >"), Z2, TowerBudget(d, auto_sqrt=True))
    last = t.levels[-1]
    assert divisibility_exponent(last, t.seed_images[-1][0], 2) == d
    assert all(c.certified for c in t.certificates)
    assert t.as_dict()["levels"][-1]["divisibility"]["exponents"] == [d]


def test_tower_kills_torsion():
    t = build_tower(parse_presentation("C = < a | a^2 >"), Z2, TowerBudget(1, kill_invisible=True))
    assert t.levels[-1].generators == ()
    assert t.certificates[0].certified and t.certificates[0].reason == "COMPOSITE"


def test_tower_warns_without_primes():
    t = build_tower(parse_presentation("Z = < x >"), ZZ, TowerBudget(2, auto_sqrt=True))
    assert t.warnings and len(t.levels) == 3


def test_tower_pushes_systems_forward():
    s = NullhomologousSystem(F2, 2, (W("x*$1*x^-1*$1^-1*y^2"),))
    t = build_tower(F2, Z2, TowerBudget(2, systems=(s,)))
    assert len(t.levels[2].generators) == 4
    assert all(c.h1_status == "ISO" for c in t.certificates)


def test_tower_json_stable():
    budget = TowerBudget(2, auto_sqrt=True, enumerate=3, kill_invisible=True)
    a = build_tower(BS, Z2, budget).to_json()
    b = build_tower(BS, Z2, budget).to_json()
    assert a == b and json.loads(a)["ring"] == Z2.name


def _system_st(alphabet=("x", "y")):
    # random words over group letters and $1, $2, then fix exponent sums of the indeterminates
    def fix(ws):
        out = []
        for w in ws:
            for v in ("$1", "$2")[: len(ws)]:
                k = sum(e for s, e in w.letters if s == v)
                w = w * Word.gen(v, -k) if k else w
            out.append(w)
        return tuple(out)

    return st.lists(words(alphabet + ("$1", "$2"), 6, 2), min_size=2, max_size=2).map(fix)


@given(_system_st(), st.sampled_from([1, 2, 4]), words(("x", "y"), 3, 2))
def test_validate_invariant_under_renaming_and_conjugation(rhs, e, g):
    s = NullhomologousSystem(F2, e, rhs)
    swapped = NullhomologousSystem(F2, e, tuple(w.rename({"$1": "$2", "$2": "$1"}) for w in reversed(rhs)))
    conj = NullhomologousSystem(F2, e, tuple(g * w * g.inverse() for w in rhs))
    for ring in (ZZ, Z2):
        assert validate_system(s, ring) == validate_system(swapped, ring) == validate_system(conj, ring)
    q, _, cert = adjoin_solutions(F2, s, Z2)
    assert cert.h1_status == "ISO"


@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 2), st.integers(0, 2))
def test_random_product_certificates(k1, k2, j1, j2):
    x, t = Word.gen("$1"), Word.gen("t")
    comm = t * x * t.inverse() * x.inverse()
    c1 = InvisibilityCertificate(TWO, (W("a"),), k1, (x ** j1 * comm ** k1 * x ** -j1,))
    c2 = InvisibilityCertificate(TWO, (W("b"),), 2 * k2, (x ** j2 * comm ** k2 * x ** -j2,))
    for c in (c1, c2, product_certificate(c1, c2)):
        assert verify_invisibility_certificate(c, QQ) == VERIFIED_FREE
