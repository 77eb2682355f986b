"""Nullhomologous equation systems, adjoining solutions, invisible subgroups, closure towers.

A system ``{ $i^e = w_i($1..$n) }`` over G is R-nullhomologous when e is an
admissible denominator of R and every w_i has zero exponent sum in each
indeterminate.  Adjoining a solution gives

    G_S = < G, z_1..z_n | z_i^e = w_i(z_1..z_n) >

and G -> G_S is 2-connected on R-homology.  A normal subgroup N is
R-invisible when (N / [G,N]) (x) R = 0; it is certified by a witness
monomial w_i per normal generator a_i with

    w_i(1,..,1) = 1 and w_i(a_1..a_n) = a_i^e in G, exponent sums of w_i zero,

which places a_i^e in [G, N].  Killing such an N is again 2-connected.
A closure tower alternates these two moves a finite number of times.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from functools import reduce as _fold
from itertools import islice
from math import lcm
from typing import Iterator, Sequence

from .errors import (
    AmbientMismatch,
    ArityMismatch,
    InvalidSystem,
    NonPositive,
    UnknownSymbol,
    UnverifiedCertificate,
)
from .homology import (
    TwoConnectednessCertificate,
    certify_omega_R,
    compose_certified,
    exponent_matrix,
    exponent_vector,
    h1_free_basis_words,
    h1_with_R,
)
from .magnus import MalcevQuotient
from .presentation import (
    REFUTED,
    VERIFIED_FREE,
    GroupHom,
    Presentation,
    Verdict,
    adjoin_relators,
    compose,
    identity_hom,
    prove_trivial,
    verified_to_class,
    weakest,
)
from .ring import CoefficientRing, divides_class, in_denominator_set, smith_normal_form, vanishes_after_localization
from .words import Word, exponent_sum, indeterminate, is_indeterminate, substitute

__all__ = [
    "NullhomologousSystem",
    "validate_system",
    "check_solution",
    "combine_systems",
    "adjoin_solutions",
    "InvisibilityCertificate",
    "verify_invisibility_certificate",
    "product_certificate",
    "quotient_by_invisible",
    "find_invisible_certificates",
    "enumerate_systems",
    "TowerBudget",
    "ClosureTower",
    "build_tower",
    "word_verdict",
    "divisibility_exponent",
]


def _same_group(p: Presentation, q: Presentation) -> bool:
    return p.generators == q.generators and p.relators == q.relators


def _check_monomials(base: Presentation, words: Sequence[Word], n: int) -> None:
    gens = set(base.generators)
    for w in words:
        for s in w.symbols():
            if is_indeterminate(s):
                k = int(s[1:])
                if not 1 <= k <= n:
                    raise ArityMismatch(f"{s} used but only {n} indeterminates exist")
            elif s not in gens:
                raise UnknownSymbol(s)


def _unit_assignment(n: int) -> dict:
    return {indeterminate(i): Word() for i in range(1, n + 1)}


def word_verdict(p: Presentation, w: Word, c: int, exact_only: bool = False) -> Verdict:
    """Is ``w == 1`` in p?  Exact when possible, else checked in the class-c quotient."""
    if w.is_identity():
        return VERIFIED_FREE
    if p.is_free():
        return REFUTED
    if prove_trivial(p, w):
        return VERIFIED_FREE
    if exact_only:
        return REFUTED
    if not MalcevQuotient.of(p, c).is_trivial(w):
        return REFUTED
    return verified_to_class(c)


# ------------------------------------------------------------------ systems


@dataclass(frozen=True)
class NullhomologousSystem:
    base: Presentation
    e: int
    rhs: tuple

    def __post_init__(self):
        if self.e <= 0:
            raise NonPositive(self.e)
        rhs = tuple(self.rhs)
        object.__setattr__(self, "rhs", rhs)
        _check_monomials(self.base, rhs, len(rhs))

    @property
    def n(self) -> int:
        return len(self.rhs)

    def indeterminates(self) -> list:
        return [indeterminate(i) for i in range(1, self.n + 1)]

    def push_forward(self, h: GroupHom) -> "NullhomologousSystem":
        """The image system over ``h.target`` (group letters mapped by h)."""
        if not _same_group(h.source, self.base):
            raise AmbientMismatch("system base is not the source of the hom")
        table = h.image_map()
        out = []
        for w in self.rhs:
            acc = Word()
            for s, k in w.letters:
                acc = acc * (Word.gen(s, k) if is_indeterminate(s) else table[s] ** k)
            out.append(acc)
        return NullhomologousSystem(h.target, self.e, tuple(out))

    def __str__(self):
        body = " ".join(f"{v} -> {w};" for v, w in zip(self.indeterminates(), self.rhs))
        return f"system over {self.base.name or 'G'} exp {self.e} {{ {body} }}" if body else f"system over {self.base.name or 'G'} exp {self.e} {{ }}"


def validate_system(s: NullhomologousSystem, ring: CoefficientRing) -> bool:
    if not in_denominator_set(ring, s.e):
        return False
    return all(exponent_sum(w, v) == 0 for w in s.rhs for v in s.indeterminates())


def check_solution(s: NullhomologousSystem, assignment: Sequence[Word], class_bound: int = 4) -> Verdict:
    """Do ``$i -> assignment[i]`` satisfy every equation ``$i^e = w_i``?"""
    if len(assignment) != s.n:
        raise ArityMismatch(f"{len(assignment)} values for {s.n} indeterminates")
    gens = set(s.base.generators)
    for g in assignment:
        for sym in g.symbols():
            if sym not in gens:
                raise UnknownSymbol(sym)
    values = dict(zip(s.indeterminates(), assignment))
    verdicts = []
    for g, w in zip(assignment, s.rhs):
        diff = g ** s.e * substitute(w, values).inverse()
        verdicts.append(word_verdict(s.base, diff, class_bound))
    return weakest(verdicts)


def combine_systems(base: Presentation, systems: Sequence[NullhomologousSystem]) -> NullhomologousSystem:
    """One system equivalent to solving all of ``systems`` (common exponent = lcm).

    ``$^a = w`` is raised to ``$^(a m) = w^m``; indeterminates are renumbered
    consecutively.
    """
    e = lcm(*(s.e for s in systems)) if systems else 1
    rhs = []
    offset = 0
    for s in systems:
        if not _same_group(s.base, base):
            raise AmbientMismatch("systems over different presentations")
        shift = {v: indeterminate(offset + i) for i, v in enumerate(s.indeterminates(), 1)}
        rhs.extend(w.rename(shift) ** (e // s.e) for w in s.rhs)
        offset += s.n
    return NullhomologousSystem(base, e, tuple(rhs))


def adjoin_solutions(p: Presentation, s: NullhomologousSystem, ring: CoefficientRing, name: str | None = None):
    """``(P_S, P -> P_S, certificate)`` adjoining a solution of s."""
    if not _same_group(s.base, p):
        raise InvalidSystem("the system is not over this presentation")
    if not validate_system(s, ring):
        raise InvalidSystem(f"not {ring.name}-nullhomologous: {s}")
    gens = list(p.generators)
    fresh = {}
    k = 1
    for v in s.indeterminates():
        while f"z{k}" in gens:
            k += 1
        fresh[v] = f"z{k}"
        gens.append(f"z{k}")
    rels = list(p.relators)
    for v, w in zip(s.indeterminates(), s.rhs):
        z = Word.gen(fresh[v])
        rels.append(z ** s.e * w.rename(fresh).inverse())
    if name is None:
        name = f"{p.name}_S" if p.name else ""
    q = Presentation(tuple(gens), tuple(rels), name)
    h = GroupHom(p, q, tuple(Word.gen(g) for g in p.generators), VERIFIED_FREE, name="adjoin", reason="ADJUNCTION", ring=ring)
    return q, h, certify_omega_R(h, ring)


def enumerate_systems(p: Presentation, ring: CoefficientRing, max_length: int = 2, exponents: Sequence[int] | None = None) -> Iterator[NullhomologousSystem]:
    """Single-equation R-nullhomologous systems over p in a fixed order.

    Ordered by exponent (1 first, then the inverted primes ascending; for Q
    the primes below 10), then right-hand side length, then text.
    """
    if exponents is None:
        if ring.all_primes:
            primes = [2, 3, 5, 7]
        else:
            primes = sorted(ring.inverted_primes)
        exponents = [1] + primes
    letters = [(g, 1) for g in p.generators] + [(g, -1) for g in p.generators] + [("$1", 1), ("$1", -1)]
    words: list = [Word()]
    frontier = [()]
    for _ in range(max_length):
        nxt = []
        for t in frontier:
            for a in letters:
                if t and t[-1][0] == a[0] and t[-1][1] == -a[1]:
                    continue
                nxt.append(t + (a,))
        frontier = nxt
        words.extend(Word.from_letters(t) for t in nxt)
    words = [w for w in words if exponent_sum(w, "$1") == 0]
    words.sort(key=lambda w: (len(w), str(w)))
    for e in exponents:
        for w in words:
            yield NullhomologousSystem(p, e, (w,))


# -------------------------------------------------------------- invisibility


@dataclass(frozen=True)
class InvisibilityCertificate:
    ambient: Presentation
    normal_generators: tuple
    e: int
    witnesses: tuple

    def __post_init__(self):
        if self.e <= 0:
            raise NonPositive(self.e)
        a = tuple(self.normal_generators)
        w = tuple(self.witnesses)
        if len(a) != len(w):
            raise ArityMismatch("one witness per normal generator is required")
        object.__setattr__(self, "normal_generators", a)
        object.__setattr__(self, "witnesses", w)
        _check_monomials(self.ambient, a, 0)
        _check_monomials(self.ambient, w, len(a))

    @property
    def n(self) -> int:
        return len(self.normal_generators)

    def __str__(self):
        body = " ".join(f"{a} -> {w};" for a, w in zip(self.normal_generators, self.witnesses))
        return f"invisible over {self.ambient.name or 'G'} exp {self.e} {{ {body} }}" if body else f"invisible over {self.ambient.name or 'G'} exp {self.e} {{ }}"


def verify_invisibility_certificate(cert: InvisibilityCertificate, ring: CoefficientRing, class_bound: int = 4, exact_only: bool = False) -> Verdict:
    g = cert.ambient
    if not in_denominator_set(ring, cert.e):
        return REFUTED
    snf = smith_normal_form(exponent_matrix(g), g.rank)
    for a in cert.normal_generators:
        if not vanishes_after_localization(snf, exponent_vector(a, g.generators), ring):
            return REFUTED
    names = [indeterminate(i) for i in range(1, cert.n + 1)]
    values = dict(zip(names, cert.normal_generators))
    verdicts = []
    for a, w in zip(cert.normal_generators, cert.witnesses):
        if any(exponent_sum(w, v) for v in names):
            return REFUTED
        verdicts.append(word_verdict(g, substitute(w, _unit_assignment(cert.n)), class_bound, exact_only))
        verdicts.append(word_verdict(g, substitute(w, values) * a ** -cert.e, class_bound, exact_only))
        if verdicts[-1].refuted or verdicts[-2].refuted:
            return REFUTED
    return weakest(verdicts)


def product_certificate(c1: InvisibilityCertificate, c2: InvisibilityCertificate) -> InvisibilityCertificate:
    """Certificate for the product N1 N2 (normal generators concatenated).

    With e = lcm(e1, e2) each witness is raised to e / e_i, so it now
    expresses a_i^e; the second certificate's indeterminates are shifted
    past the first's.
    """
    if not _same_group(c1.ambient, c2.ambient):
        raise AmbientMismatch("certificates live in different groups")
    e = lcm(c1.e, c2.e)
    shift = {indeterminate(i): indeterminate(i + c1.n) for i in range(1, c2.n + 1)}
    ws = [w ** (e // c1.e) for w in c1.witnesses]
    ws += [w.rename(shift) ** (e // c2.e) for w in c2.witnesses]
    return InvisibilityCertificate(c1.ambient, c1.normal_generators + c2.normal_generators, e, tuple(ws))


def _drop_killed_generators(gens: list, rels: list) -> tuple:
    # remove generators that some relator sets equal to 1 outright
    killed = []
    while True:
        hit = next((r for r in rels if len(r.letters) == 1 and abs(r.letters[0][1]) == 1), None)
        if hit is None:
            break
        g = hit.letters[0][0]
        killed.append(g)
        gens = [x for x in gens if x != g]
        rels = [Word.from_letters((s, k) for s, k in r.letters if s != g) for r in rels]
        seen = []
        for r in rels:
            if not r.is_identity() and r not in seen:
                seen.append(r)
        rels = seen
    return gens, rels, killed


def quotient_by_invisible(p: Presentation, cert: InvisibilityCertificate, ring: CoefficientRing, class_bound: int = 4, name: str | None = None):
    """``(P/N, projection, certificate)`` for a verified invisible N."""
    if not _same_group(cert.ambient, p):
        raise AmbientMismatch("certificate is for a different presentation")
    verdict = verify_invisibility_certificate(cert, ring, class_bound)
    if not verdict.at_least(2):
        raise UnverifiedCertificate(f"certificate verdict {verdict}")
    q, _ = adjoin_relators(p, list(cert.normal_generators))
    gens, rels, killed = _drop_killed_generators(list(q.generators), list(q.relators))
    if name is None:
        name = f"{p.name}_q" if p.name else ""
    target = Presentation(tuple(gens), tuple(rels), name)
    images = tuple(Word() if g in killed else Word.gen(g) for g in p.generators)
    h = GroupHom(p, target, images, VERIFIED_FREE, name="kill", reason="INVISIBLE_QUOTIENT", ring=ring)
    return target, h, certify_omega_R(h, ring)


def find_invisible_certificates(p: Presentation, ring: CoefficientRing, max_e: int = 16) -> list:
    """Exactly verified certificates for single generators, from a fixed template list.

    Templates: the identity, ``[h, $1]``, ``[h^-1, $1]``, ``[$1, h]``,
    ``[$1, h^-1]`` for each generator h; exponents run through D_R up to max_e.
    """
    exps = [e for e in range(1, max_e + 1) if in_denominator_set(ring, e)]
    snf = smith_normal_form(exponent_matrix(p), p.rank)
    x = Word.gen("$1")
    templates = [Word()]
    for h in p.generators:
        for hw in (Word.gen(h), Word.gen(h, -1)):
            templates.append(hw * x * hw.inverse() * x.inverse())
            templates.append(x * hw * x.inverse() * hw.inverse())
    found = []
    for g in p.generators:
        a = Word.gen(g)
        if not vanishes_after_localization(snf, exponent_vector(a, p.generators), ring):
            continue
        done = False
        for e in exps:
            for w in templates:
                cert = InvisibilityCertificate(p, (a,), e, (w,))
                if verify_invisibility_certificate(cert, ring, exact_only=True) == VERIFIED_FREE:
                    found.append(cert)
                    done = True
                    break
            if done:
                break
    return found


# -------------------------------------------------------------------- towers


def divisibility_exponent(p: Presentation, w: Word, prime: int, limit: int = 64) -> int | None:
    """Largest k <= limit with the class of w in H_1(p; Z) divisible by prime^k.

    None means divisible by prime^limit (e.g. the class has finite order prime to p).
    """
    snf = smith_normal_form(exponent_matrix(p), p.rank)
    vec = exponent_vector(w, p.generators)
    k = 0
    while k < limit and divides_class(snf, vec, prime ** (k + 1)):
        k += 1
    return None if k == limit else k


@dataclass(frozen=True)
class TowerBudget:
    depth: int
    systems: tuple = ()
    auto_sqrt: bool = False
    enumerate: int = 0
    max_word_length: int = 2
    kill_invisible: bool = False
    class_bound: int = 4


@dataclass
class ClosureTower:
    ring: CoefficientRing
    levels: list
    steps: list
    certificates: list
    log: list
    seed_images: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def level_record(self, k: int) -> dict:
        p = self.levels[k]
        rec = {
            "index": k,
            "presentation": str(p),
            "h1": h1_with_R(p, self.ring).as_dict(),
            "h1_integral": h1_with_R(p, CoefficientRing()).as_dict(),
            "seed_images": [str(w) for w in self.seed_images[k]],
        }
        prime = self.ring.smallest_denominator()
        if prime is not None:
            rec["divisibility"] = {
                "prime": prime,
                "exponents": [divisibility_exponent(p, w, prime) for w in self.seed_images[k]],
            }
        return rec

    def as_dict(self) -> dict:
        steps = []
        for k, (h, cert, entry) in enumerate(zip(self.steps, self.certificates, self.log)):
            steps.append({"from": k, "to": k + 1, "hom": str(h), "certificate": cert.as_dict(), **entry})
        return {
            "ring": self.ring.name,
            "depth": len(self.steps),
            "levels": [self.level_record(k) for k in range(len(self.levels))],
            "steps": steps,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


def build_tower(seed: Presentation, ring: CoefficientRing, budget: TowerBudget) -> ClosureTower:
    """Finite prefix P_0 -> P_1 -> ... -> P_depth of the closure tower.

    Each level adjoins one combined system (explicit systems pushed forward
    from the seed, the auto square-root system on a basis of H_1, and the
    first ``budget.enumerate`` enumerated systems), then optionally kills the
    product of all invisible subgroups found by the template search.
    """
    if budget.depth < 0:
        raise NonPositive(budget.depth)
    tower = ClosureTower(ring, [seed], [], [], [])
    to_current = identity_hom(seed)
    tower.seed_images.append(list(to_current.images))
    p = seed
    for k in range(budget.depth):
        systems = [s.push_forward(to_current) for s in budget.systems]
        if budget.auto_sqrt:
            e = ring.smallest_denominator()
            if e is None:
                if k == 0:
                    tower.warnings.append(f"{ring.name} inverts no primes; auto square roots skipped")
            else:
                basis = h1_free_basis_words(p)
                if basis:
                    systems.append(NullhomologousSystem(p, e, tuple(basis)))
        if budget.enumerate:
            systems.extend(islice(enumerate_systems(p, ring, budget.max_word_length), budget.enumerate))
        combined = combine_systems(p, systems)
        name = f"P{k + 1}"
        q, _, cert = adjoin_solutions(p, combined, ring, name=name)
        entry = {"adjoined": [str(s) for s in systems], "killed": []}
        if budget.kill_invisible:
            found = find_invisible_certificates(q, ring)
            if found:
                prod = _fold(product_certificate, found)
                q, _, kcert = quotient_by_invisible(q, prod, ring, budget.class_bound, name=name)
                cert = compose_certified(cert, kcert)
                entry["killed"] = [str(c) for c in found]
        h = replace(cert.hom, name=f"step{k + 1}")
        cert = replace(cert, hom=h)
        tower.levels.append(q)
        tower.steps.append(h)
        tower.certificates.append(cert)
        tower.log.append(entry)
        to_current = compose(to_current, h)
        tower.seed_images.append(list(to_current.images))
        p = q
    return tower
