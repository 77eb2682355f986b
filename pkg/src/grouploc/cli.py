"""``grouploc`` command line.

Exit status: 0 on success, 2 when the answer is a negative mathematical
verdict (REFUTED, NOT_ISO, UNSOLVABLE, an invalid system, a non-injective
graded map), 1 on any error including usage errors.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import Sequence

from . import alexander as alx
from .closure import (
    TowerBudget,
    adjoin_solutions,
    build_tower,
    check_solution,
    quotient_by_invisible,
    validate_system,
    verify_invisibility_certificate,
)
from .document import Document, parse_document
from .errors import GroupLocError
from .homology import h1_with_R
from .magnus import DEFAULT_CAP, graded_map_ranks, lcs_degree, magnus_expand, rational_lcs_quotient
from .ring import QQ, parse_ring
from .words import parse_word

NEGATIVE = {"REFUTED", "NOT_ISO", "UNSOLVABLE", "INVALID", "NOT_INJECTIVE"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


# ------------------------------------------------------------------ helpers


def _load(path: str, inputs: dict) -> Document:
    data = Path(path).read_bytes()
    inputs[path] = hashlib.sha256(data).hexdigest()
    return parse_document(data.decode("utf-8"), Path(path).stem)


def _words(text: str, alphabet) -> list:
    if not text.strip():
        return []
    return [parse_word(part, alphabet) for part in text.split(";") if part.strip()]


def _system(doc: Document, index: int):
    if not doc.systems:
        raise GroupLocError("input contains no system")
    if not 0 <= index < len(doc.systems):
        raise GroupLocError(f"system index {index} out of range (file has {len(doc.systems)})")
    return doc.systems[index]


def _certificate(doc: Document, index: int):
    if not doc.certificates:
        raise GroupLocError("input contains no invisibility certificate")
    if not 0 <= index < len(doc.certificates):
        raise GroupLocError(f"certificate index {index} out of range (file has {len(doc.certificates)})")
    return doc.certificates[index]


def _write_doc(path: str, *items) -> None:
    Path(path).write_text("\n".join(str(x) for x in items) + "\n", encoding="utf-8")


# ----------------------------------------------------------------- commands


def cmd_h1(args, inputs, warnings):
    p = _load(args.file, inputs).presentation(args.name)
    ring = parse_ring(args.ring)
    inv = h1_with_R(p, ring)
    return {"presentation": str(p), "ring": ring.name, **inv.as_dict()}


def cmd_check_system(args, inputs, warnings):
    s = _system(_load(args.file, inputs), args.index)
    ring = parse_ring(args.ring)
    valid = validate_system(s, ring)
    out = {"system": str(s), "ring": ring.name, "valid": valid, "class": args.class_bound, "verdict": None if valid else "INVALID"}
    if args.assign is not None:
        values = _words(args.assign, s.base.generators)
        out["assignment"] = [str(w) for w in values]
        out["verdict"] = str(check_solution(s, values, args.class_bound)) if valid else "INVALID"
    return out


def cmd_adjoin(args, inputs, warnings):
    s = _system(_load(args.file, inputs), args.index)
    ring = parse_ring(args.ring)
    q, h, cert = adjoin_solutions(s.base, s, ring, name=args.result_name)
    if args.out:
        _write_doc(args.out, s.base, q, h)
    return {"presentation": str(q), "hom": str(h), "certificate": cert.as_dict(), "verdict": cert.h1_status}


def cmd_invisible(args, inputs, warnings):
    cert = _certificate(_load(args.file, inputs), args.index)
    ring = parse_ring(args.ring)
    if args.action == "verify":
        v = verify_invisibility_certificate(cert, ring, args.class_bound)
        return {"certificate": str(cert), "ring": ring.name, "class": args.class_bound, "verdict": str(v)}
    q, h, c = quotient_by_invisible(cert.ambient, cert, ring, args.class_bound, name=args.result_name)
    if args.out:
        _write_doc(args.out, cert.ambient, q, h)
    return {"presentation": str(q), "hom": str(h), "certificate": c.as_dict(), "verdict": c.h1_status}


def cmd_tower(args, inputs, warnings):
    doc = _load(args.file, inputs)
    seed = doc.presentation(args.name)
    ring = parse_ring(args.ring)
    systems = tuple(s for s in doc.systems if s.base == seed)
    budget = TowerBudget(
        depth=args.depth,
        systems=systems,
        auto_sqrt=args.auto_sqrt,
        enumerate=args.enumerate,
        kill_invisible=args.kill_invisible,
        class_bound=args.class_bound,
    )
    tower = build_tower(seed, ring, budget)
    warnings.extend(tower.warnings)
    result = tower.as_dict()
    if args.out:
        Path(args.out).write_text(json.dumps(result, indent=2) + "\n", encoding="utf-8")
    return result


def cmd_magnus(args, inputs, warnings):
    w = parse_word(args.word)
    series = magnus_expand(w, args.cap)
    return {
        "word": str(w),
        "cap": args.cap,
        "variables": list(series.variables),
        "coefficients": series.as_dict(),
        "lcs_degree": lcs_degree(w, args.cap),
    }


def cmd_lcs(args, inputs, warnings):
    p = _load(args.file, inputs).presentation(args.name)
    return rational_lcs_quotient(p, args.q).as_dict()


def cmd_stallings(args, inputs, warnings):
    h = _load(args.file, inputs).hom(args.name)
    ring = parse_ring(args.ring)
    ranks = graded_map_ranks(h, args.q)
    injective = all(d == r for d, r in ranks)
    if ring != QQ:
        warnings.append("graded quotients are computed rationally; the ring is recorded only")
    return {
        "hom": str(h),
        "q": args.q,
        "ring": ring.name,
        "ranks": [{"degree": k, "source_dim": d, "rank": r} for k, (d, r) in enumerate(ranks, 1)],
        "injective": injective,
        "verdict": "INJECTIVE" if injective else "NOT_INJECTIVE",
    }


def cmd_alexander(args, inputs, warnings):
    p = _load(args.file, inputs).presentation(args.name)
    data = alx.alexander_matrix(p)
    out = data.as_dict()
    out["kh1_rank"] = alx.kh1_rank(p)
    if data.betti == 0:
        warnings.append("Betti number 0: kh1_rank reported as 0 by convention")
    out["alexander_polynomial"] = str(alx.alexander_polynomial(p)) if data.betti == 1 else None
    return out


def cmd_ghn(args, inputs, warnings):
    p = _load(args.file, inputs).presentation(args.name)
    w = parse_word(args.word, p.generators)
    return alx.gh_membership(p, w, args.level).as_dict()


def cmd_divide(args, inputs, warnings):
    p = _load(args.file, inputs).presentation(args.name)
    u = parse_word(args.u, p.generators)
    return {"u": str(u), **alx.divisibility_test(p, u, args.s).as_dict()}


def cmd_container(args, inputs, warnings):
    p = _load(args.file, inputs).presentation(args.name)
    return alx.container_level(p, args.level)


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="grouploc", description="Exact computations with finitely presented groups and homology localization.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, file=True, name=True):
        if file:
            p.add_argument("file", help="input file (presentations, homs, systems, certificates)")
        if name:
            p.add_argument("--name", help="which presentation (or hom) in the file; default: the first")
        p.add_argument("--json", action="store_true", help="print the JSON report")
        p.add_argument("--out", help="also write the main result to this path")

    p = sub.add_parser("h1", help="H_1 with coefficients in a ring")
    common(p)
    p.add_argument("--ring", default="Z")
    p.set_defaults(func=cmd_h1)

    p = sub.add_parser("check-system", help="validate a system and optionally check an assignment")
    common(p, name=False)
    p.add_argument("--ring", default="Z")
    p.add_argument("--index", type=int, default=0, help="which system in the file (0-based)")
    p.add_argument("--assign", help="';'-separated words for $1, $2, ...")
    p.add_argument("--class", dest="class_bound", type=int, default=4)
    p.set_defaults(func=cmd_check_system)

    p = sub.add_parser("adjoin", help="adjoin a solution of a system")
    common(p, name=False)
    p.add_argument("--ring", default="Z")
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--result-name", default=None)
    p.set_defaults(func=cmd_adjoin)

    p = sub.add_parser("invisible", help="verify an invisibility certificate or kill the subgroup")
    p.add_argument("action", choices=["verify", "quotient"])
    common(p, name=False)
    p.add_argument("--ring", default="Z")
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--class", dest="class_bound", type=int, default=4)
    p.add_argument("--result-name", default=None)
    p.set_defaults(func=cmd_invisible)

    p = sub.add_parser("tower", help="build a finite closure tower")
    common(p)
    p.add_argument("--ring", default="Z")
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--auto-sqrt", action="store_true", help="adjoin e-th roots of an H_1 basis at every level")
    p.add_argument("--kill-invisible", action="store_true")
    p.add_argument("--enumerate", type=int, default=0, help="also adjoin the first N enumerated systems per level")
    p.add_argument("--class", dest="class_bound", type=int, default=4)
    p.set_defaults(func=cmd_tower)

    p = sub.add_parser("magnus", help="Magnus expansion of a free group word")
    p.add_argument("word")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    common(p, file=False, name=False)
    p.set_defaults(func=cmd_magnus)

    p = sub.add_parser("lcs", help="rational lower central series dimensions")
    common(p)
    p.add_argument("--q", type=int, default=4)
    p.set_defaults(func=cmd_lcs)

    p = sub.add_parser("stallings", help="injectivity of a hom on graded rational LCS quotients")
    common(p)
    p.add_argument("--q", type=int, default=4)
    p.add_argument("--ring", default="Q")
    p.set_defaults(func=cmd_stallings)

    p = sub.add_parser("alexander", help="Alexander matrix and derived invariants")
    common(p)
    p.set_defaults(func=cmd_alexander)

    p = sub.add_parser("ghn", help="torsion-free derived series membership (levels 1, 2)")
    common(p)
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_ghn)

    p = sub.add_parser("divide", help="divisibility of a commutator class in a rank-two free group")
    common(p)
    p.add_argument("--u", required=True)
    p.add_argument("--s", required=True)
    p.set_defaults(func=cmd_divide)

    p = sub.add_parser("container", help="low levels of the container tower")
    common(p)
    p.add_argument("--level", type=int, default=1)
    p.set_defaults(func=cmd_container)
    return ap


# ------------------------------------------------------------------ output


def render_text(value, indent: int = 0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.extend(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(f"{pad}{_scalar(value)}")
    return lines


def _scalar(v) -> str:
    if isinstance(v, (dict, list)) or v is None or isinstance(v, bool):
        return json.dumps(v)
    return str(v)


def exit_code(results: dict) -> int:
    verdict = results.get("verdict")
    if isinstance(verdict, str) and verdict in NEGATIVE:
        return 2
    if results.get("valid") is False:
        return 2
    return 0


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=stderr)
        return 1
    inputs: dict = {}
    warnings: list = []
    try:
        results = args.func(args, inputs, warnings)
    except (GroupLocError, OSError, UnicodeDecodeError) as exc:
        print(f"grouploc {args.command}: error: {exc}", file=stderr)
        return 1
    report = {"command": args.command, "inputs": inputs, "results": results, "warnings": warnings, "exact": True}
    writes_own = args.command in ("tower", "adjoin") or (args.command == "invisible" and args.action == "quotient")
    if args.out and not writes_own:
        Path(args.out).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    if args.json:
        stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        stdout.write("\n".join(render_text(report)) + "\n")
    return exit_code(results)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
