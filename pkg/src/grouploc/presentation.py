"""Finitely presented groups and homomorphisms between them.

Equality in a finitely presented group is undecidable in general, so every
claim carries a :class:`Verdict` instead of a boolean:

* ``VERIFIED_FREE``: proved exactly (free reduction, possibly after explicit
  relator substitutions).
* ``VERIFIED_TO_CLASS(c)``: holds in the rational class-c nilpotent quotient;
  nothing stronger is claimed.
* ``REFUTED``: provably false.
* ``UNCHECKED``: no verification attempted.

Presentation grammar::

    [name =] < g1, g2, ... | r1, r2, ... >
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from .errors import NonPositive, ParseError, UnknownSymbol
from .words import Tokenizer, Word, is_indeterminate

__all__ = [
    "Verdict",
    "UNCHECKED",
    "VERIFIED_FREE",
    "REFUTED",
    "verified_to_class",
    "weakest",
    "Presentation",
    "GroupHom",
    "parse_presentation",
    "free_group",
    "adjoin_relators",
    "check_hom_to_class",
    "prove_trivial",
    "identity_hom",
    "compose",
]


@dataclass(frozen=True)
class Verdict:
    kind: str
    class_bound: int | None = None

    def __str__(self):
        if self.kind == "VERIFIED_TO_CLASS":
            return f"VERIFIED_TO_CLASS({self.class_bound})"
        return self.kind

    @property
    def refuted(self) -> bool:
        return self.kind == "REFUTED"

    @property
    def exact(self) -> bool:
        return self.kind == "VERIFIED_FREE"

    def at_least(self, c: int) -> bool:
        """Verified exactly, or in the class-c' quotient for some c' >= c."""
        if self.kind == "VERIFIED_FREE":
            return True
        return self.kind == "VERIFIED_TO_CLASS" and self.class_bound >= c

    def _rank(self):
        order = {"REFUTED": 0, "UNCHECKED": 1, "VERIFIED_TO_CLASS": 2, "VERIFIED_FREE": 3}
        return (order[self.kind], self.class_bound or 0)


UNCHECKED = Verdict("UNCHECKED")
VERIFIED_FREE = Verdict("VERIFIED_FREE")
REFUTED = Verdict("REFUTED")


def verified_to_class(c: int) -> Verdict:
    return Verdict("VERIFIED_TO_CLASS", c)


def weakest(verdicts: Iterable[Verdict]) -> Verdict:
    vs = list(verdicts)
    if not vs:
        return VERIFIED_FREE
    return min(vs, key=Verdict._rank)


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple = ()
    name: str = ""

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError(f"duplicate generators in {gens}")
        for g in gens:
            if is_indeterminate(g):
                raise ValueError(f"generator name {g} is reserved for indeterminates")
        allowed = set(gens)
        rels = []
        for r in self.relators:
            r = r if isinstance(r, Word) else Word.from_letters(r)
            for s, _ in r.letters:
                if s not in allowed:
                    raise UnknownSymbol(s)
            rels.append(Word.from_letters(r.letters))
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def is_free(self) -> bool:
        return all(r.is_identity() for r in self.relators)

    def renamed(self, name: str) -> "Presentation":
        return replace(self, name=name)

    def fresh_generator(self, prefix: str = "z") -> str:
        k = 1
        while f"{prefix}{k}" in self.generators:
            k += 1
        return f"{prefix}{k}"

    def __str__(self):
        inner = ", ".join(self.generators)
        if self.relators:
            inner += " | " + ", ".join(str(r) for r in self.relators)
        body = f"< {inner} >" if inner else "< >"
        return f"{self.name} = {body}" if self.name else body


def parse_presentation(text: str, name: str = "") -> Presentation:
    tz = Tokenizer(text)
    p = _parse_presentation(tz, name)
    if tz.peek()[0] != "eof":
        tz.error("end of presentation")
    return p


def _parse_presentation(tz: Tokenizer, default_name: str = "") -> Presentation:
    name = default_name
    if tz.peek()[0] == "name" and tz.peek(1)[1] == "=":
        name = tz.next()[1]
        tz.next()
    tz.expect("<", "'<' opening a presentation")
    gens = []
    if not tz.at("|") and not tz.at(">"):
        gens.append(tz.expect_kind("name", "a generator name")[1])
        while tz.accept(","):
            gens.append(tz.expect_kind("name", "a generator name")[1])
    rels = []
    if tz.accept("|"):
        alphabet = set(gens)
        if not tz.at(">"):
            rels.append(tz.parse_word(alphabet))
            while tz.accept(","):
                rels.append(tz.parse_word(alphabet))
    tz.expect(">", "'>' closing the presentation")
    return Presentation(tuple(gens), tuple(rels), name)


def free_group(n: int, prefix: str = "x", name: str | None = None) -> Presentation:
    if n < 1:
        raise NonPositive(n)
    gens = tuple(f"{prefix}{i}" for i in range(1, n + 1))
    return Presentation(gens, (), name if name is not None else f"F{n}")


# ------------------------------------------------------------------ homs


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by images of the source generators.

    ``reason``/``ring`` record construction provenance (adjunction of
    solutions, quotient by an invisible subgroup, or a composite of those);
    they are what the 2-connectedness certificates rely on.
    """

    source: Presentation
    target: Presentation
    images: tuple
    status: Verdict = UNCHECKED
    name: str = ""
    reason: str | None = None
    ring: object = field(default=None, compare=False)

    def __post_init__(self):
        imgs = self.images
        if isinstance(imgs, Mapping):
            missing = [g for g in self.source.generators if g not in imgs]
            if missing:
                raise UnknownSymbol(missing[0])
            imgs = tuple(imgs[g] for g in self.source.generators)
        imgs = tuple(imgs)
        if len(imgs) != self.source.rank:
            raise ValueError("one image per source generator is required")
        allowed = set(self.target.generators)
        for w in imgs:
            for s, _ in w.letters:
                if s not in allowed:
                    raise UnknownSymbol(s)
        object.__setattr__(self, "images", imgs)

    def image_map(self) -> dict:
        return dict(zip(self.source.generators, self.images))

    def apply(self, w: Word) -> Word:
        table = self.image_map()
        out = Word()
        for s, k in w.letters:
            if s not in table:
                raise UnknownSymbol(s)
            out = out * table[s] ** k
        return out

    def with_status(self, status: Verdict) -> "GroupHom":
        if self.status.refuted:
            return self
        return replace(self, status=status)

    def __str__(self):
        body = "; ".join(f"{g} -> {w}" for g, w in zip(self.source.generators, self.images))
        src = self.source.name or "src"
        dst = self.target.name or "dst"
        return f"hom {self.name or 'h'}: {src} -> {dst} {{ {body}; }}" if body else f"hom {self.name or 'h'}: {src} -> {dst} {{ }}"


def identity_hom(p: Presentation) -> GroupHom:
    return GroupHom(p, p, tuple(Word.gen(g) for g in p.generators), VERIFIED_FREE, name="id")


def compose(first: GroupHom, second: GroupHom) -> GroupHom:
    """``second . first``; provenance becomes COMPOSITE when both carry one."""
    imgs = tuple(second.apply(w) for w in first.images)
    reason = None
    ring = None
    if first.reason and second.reason:
        reason = "COMPOSITE"
        ring = first.ring.join(second.ring) if first.ring is not None and second.ring is not None else None
    status = weakest([first.status, second.status])
    return GroupHom(first.source, second.target, imgs, status, name=f"{second.name}.{first.name}", reason=reason, ring=ring)


def adjoin_relators(p: Presentation, extra: Sequence[Word], name: str | None = None):
    """Quotient of p by the normal closure of ``extra``, with the projection."""
    allowed = set(p.generators)
    for w in extra:
        for s, _ in w.letters:
            if s not in allowed:
                raise UnknownSymbol(s)
    if not extra:
        q = p
    else:
        q = Presentation(p.generators, p.relators + tuple(extra), name if name is not None else (f"{p.name}/N" if p.name else ""))
    proj = GroupHom(p, q, tuple(Word.gen(g) for g in p.generators), VERIFIED_FREE, name="proj")
    return q, proj


# ------------------------------------------------------- triviality proofs


def _free_reduce(letters: list) -> list:
    out: list = []
    for a in letters:
        if out and out[-1][0] == a[0] and out[-1][1] == -a[1]:
            out.pop()
        else:
            out.append(a)
    return out


def _cyclic_reduce(letters: list) -> list:
    w = _free_reduce(letters)
    i, j = 0, len(w) - 1
    while i < j and w[i][0] == w[j][0] and w[i][1] == -w[j][1]:
        i += 1
        j -= 1
    return w[i : j + 1]


def _inv(letters) -> list:
    return [(s, -e) for s, e in reversed(letters)]


def _symmetrized(relators: Iterable[Word]) -> list:
    out = set()
    for r in relators:
        base = _cyclic_reduce(r.expand())
        for cand in (base, _inv(base)):
            for i in range(len(cand)):
                out.add(tuple(cand[i:] + cand[:i]))
    return sorted(out, key=lambda t: (len(t), t))


def prove_trivial(p: Presentation, w: Word, extra_relators: Sequence[Word] = ()) -> bool:
    """Try to prove ``w == 1`` in p by greedy relator substitutions.

    Every rewrite replaces more than half of a cyclic conjugate of a relator
    by the inverse of the remainder, so success is a proof; failure proves
    nothing.  ``extra_relators`` lets callers add words already known to be
    trivial.
    """
    cur = _cyclic_reduce(w.expand())
    if not cur:
        return True
    rels = _symmetrized(tuple(p.relators) + tuple(extra_relators))
    rels = [r for r in rels if r]
    while cur:
        n = len(cur)
        step = None
        for r in rels:
            L = len(r)
            for i in range(n):
                k = 0
                while k < L and k < n and cur[(i + k) % n] == r[k]:
                    k += 1
                if 2 * k > L:
                    step = (i, k, r)
                    break
            if step:
                break
        if step is None:
            return False
        i, k, r = step
        rotated = cur[i:] + cur[:i]
        cur = _cyclic_reduce(_inv(list(r[k:])) + rotated[k:])
    return True


def check_hom_to_class(h: GroupHom, c: int) -> Verdict:
    """Sound, truncated well-definedness check of a homomorphism.

    Relator images are tested for triviality: exactly by free reduction when
    the target has no relators, otherwise in the rational class-c quotient of
    the target.  A source without relators needs no check at all.
    """
    from .magnus import MalcevQuotient

    if c < 1:
        raise NonPositive(c)
    if h.source.is_free():
        return VERIFIED_FREE
    images = [h.apply(r) for r in h.source.relators]
    if h.target.is_free():
        if any(not u.is_identity() for u in images):
            return REFUTED
        return verified_to_class(c)
    quotient = MalcevQuotient.of(h.target, c)
    for u in images:
        if not quotient.is_trivial(u):
            return REFUTED
    return verified_to_class(c)
