"""Input files: presentations, homomorphisms, systems and invisibility certificates.

One file may hold any number of items::

    # comments run to the end of the line
    G = < a, t | t*a*t^-1*a^-2 >
    H = < t >
    hom q: G -> H { a -> 1; t -> t; }
    system over G exp 2 { $1 -> a*[t,$1]; }
    invisible over G exp 1 { a -> [t,$1]; }

An unnamed presentation takes the name given by the caller (usually the file
stem).  Items may only refer to presentations defined earlier in the file.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .closure import InvisibilityCertificate, NullhomologousSystem
from .errors import ArityMismatch, UnknownSymbol
from .presentation import GroupHom, Presentation, _parse_presentation
from .words import Tokenizer, indeterminate

__all__ = ["Document", "parse_document", "load_document"]


@dataclass
class Document:
    presentations: dict = field(default_factory=dict)
    homs: dict = field(default_factory=dict)
    systems: list = field(default_factory=list)
    certificates: list = field(default_factory=list)

    def presentation(self, name: str | None = None) -> Presentation:
        if name is None:
            if not self.presentations:
                raise UnknownSymbol("<no presentation in input>")
            return next(iter(self.presentations.values()))
        if name not in self.presentations:
            raise UnknownSymbol(name)
        return self.presentations[name]

    def hom(self, name: str | None = None) -> GroupHom:
        if name is None:
            if not self.homs:
                raise UnknownSymbol("<no hom in input>")
            return next(iter(self.homs.values()))
        if name not in self.homs:
            raise UnknownSymbol(name)
        return self.homs[name]


def _lookup(doc: Document, name: str) -> Presentation:
    if name not in doc.presentations:
        raise UnknownSymbol(name)
    return doc.presentations[name]


def _block(tz: Tokenizer, lhs, rhs) -> list:
    """``{ lhs -> rhs; ... }`` with an optional final ';'."""
    tz.expect("{", "'{'")
    items = []
    while not tz.at("}"):
        left = lhs()
        tz.expect("->", "'->'")
        items.append((left, rhs()))
        if not tz.accept(";"):
            break
    tz.expect("}", "'}' closing the block")
    return items


def _parse_hom(tz: Tokenizer, doc: Document) -> GroupHom:
    name = tz.expect_kind("name", "a hom name")[1]
    tz.expect(":", "':'")
    src = _lookup(doc, tz.expect_kind("name", "a source presentation")[1])
    tz.expect("->", "'->'")
    dst = _lookup(doc, tz.expect_kind("name", "a target presentation")[1])
    alphabet = set(dst.generators)

    def gen():
        g = tz.expect_kind("name", "a source generator")[1]
        if g not in src.generators:
            raise UnknownSymbol(g)
        return g

    items = _block(tz, gen, lambda: tz.parse_word(alphabet))
    return GroupHom(src, dst, dict(items), name=name)


def _parse_system(tz: Tokenizer, doc: Document) -> NullhomologousSystem:
    tz.expect("over", "'over'")
    base = _lookup(doc, tz.expect_kind("name", "a presentation name")[1])
    tz.expect("exp", "'exp'")
    e = tz.parse_int()
    items = _block(tz, lambda: tz.expect_kind("ind", "an indeterminate $k")[1], lambda: tz.parse_word())
    for i, (v, _) in enumerate(items, 1):
        if v != indeterminate(i):
            raise ArityMismatch(f"equations must be listed as $1, $2, ... in order; found {v} in position {i}")
    return NullhomologousSystem(base, e, tuple(w for _, w in items))


def _parse_certificate(tz: Tokenizer, doc: Document) -> InvisibilityCertificate:
    tz.expect("over", "'over'")
    ambient = _lookup(doc, tz.expect_kind("name", "a presentation name")[1])
    tz.expect("exp", "'exp'")
    e = tz.parse_int()
    alphabet = set(ambient.generators)
    items = _block(tz, lambda: tz.parse_word(alphabet), lambda: tz.parse_word())
    return InvisibilityCertificate(ambient, tuple(a for a, _ in items), e, tuple(w for _, w in items))


def parse_document(text: str, default_name: str = "G") -> Document:
    tz = Tokenizer(text)
    doc = Document()
    unnamed = 0
    while tz.peek()[0] != "eof":
        kind, val = tz.peek()[:2]
        nxt = tz.peek(1)[1]
        if kind == "name" and val == "hom" and nxt != "=":
            tz.next()
            h = _parse_hom(tz, doc)
            doc.homs[h.name] = h
        elif kind == "name" and val == "system" and nxt != "=":
            tz.next()
            doc.systems.append(_parse_system(tz, doc))
        elif kind == "name" and val == "invisible" and nxt != "=":
            tz.next()
            doc.certificates.append(_parse_certificate(tz, doc))
        elif tz.at("<") or (kind == "name" and nxt == "="):
            name = default_name
            if tz.at("<"):
                unnamed += 1
                if unnamed > 1:
                    name = f"{default_name}{unnamed}"
            p = _parse_presentation(tz, name)
            doc.presentations[p.name] = p
        else:
            tz.error("a presentation, 'hom', 'system' or 'invisible'")
        tz.accept(";")
    return doc


def load_document(path: str | Path) -> Document:
    path = Path(path)
    return parse_document(path.read_text(encoding="utf-8"), path.stem)
