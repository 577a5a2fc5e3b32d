"""Command-line front end.

    quadlie check|dup|invariant|qdim|extract FILE
    quadlie iso FILE_A FILE_B
    quadlie build (--name N | --jordan K | --partition D | --skew FILE) [-o OUT]
    quadlie enumerate-partitions N

Reports are JSON on stdout.  Exit status 0 on success, 1 on domain errors,
2 on unreadable or malformed input; errors are one line of JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import dblext, iso, orbits
from .errors import DomainError, ParseError, QuadLieError
from .qla import QLA, dup
from .scalar import gauss_parse, gauss_print
from .serialize import (
    dumps,
    loads,
    matrix_to_json,
    orbit_invariant_to_json,
    qla_from_json,
    qla_to_json,
    skew_from_json,
    vector_to_json,
    verdict_to_json,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(f"usage error: {message}")


def _read_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc.__class__.__name__}") from None
    return loads(text)


def load_algebra(path: str) -> QLA:
    return qla_from_json(_read_json(path), where=path)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_check(args) -> dict:
    g = load_algebra(args.file)
    return {
        "dim": g.dim,
        "invariant_form": g.check_invariant_form(),
        "jacobi": g.check_jacobi(),
        "solvable": g.is_solvable(),
        "nilpotent": g.is_nilpotent(),
        "reduced": g.is_reduced(),
        "center_dim": len(g.center()),
        "derived_dim": len(g.derived()),
    }


def _require_valid(g: QLA) -> None:
    if not g.check_invariant_form():
        raise DomainError("bilinear form is not invariant")
    if not g.check_jacobi():
        raise DomainError("bracket fails the Jacobi identity")


def cmd_dup(args) -> dict:
    g = load_algebra(args.file)
    _require_valid(g)
    d = dup(g)
    return {"dup": d.value, "class": d.kind, "dim_V_I": len(d.v_basis), "dim_W_I": len(d.w_basis)}


def cmd_invariant(args) -> dict:
    g = load_algebra(args.file)
    _require_valid(g)
    data = dblext.extract_double_extension(g)
    return orbit_invariant_to_json(orbits.orbit_invariant(data.cbar))


def cmd_qdim(args) -> dict:
    g = load_algebra(args.file)
    _require_valid(g)
    qd = iso.quadratic_dimension(g)
    z = len(g.center())
    reduced_singular = not g.is_abelian() and dup(g).singular and g.is_reduced()
    formula = iso.qdim_formula(g) if reduced_singular else None
    return {
        "quadratic_dimension": qd,
        "center_dim": z,
        "reduced_singular": reduced_singular,
        "formula": formula,
        "formula_holds": (qd == formula) if reduced_singular else None,
    }


def cmd_extract(args) -> dict:
    g = load_algebra(args.file)
    _require_valid(g)
    data = dblext.extract_double_extension(g)
    return {
        "dim": g.dim,
        "x0": vector_to_json(data.x0),
        "y0": vector_to_json(data.y0),
        "core_dim": data.core.dim,
        "core_basis": [vector_to_json(v) for v in data.embedding],
        "core_gram": matrix_to_json(data.core.gram),
        "cbar": matrix_to_json(data.cbar.mat),
        "cbar_rank": data.cbar.mat.rank(),
    }


def cmd_iso(args) -> dict:
    a, b = load_algebra(args.file_a), load_algebra(args.file_b)
    _require_valid(a)
    _require_valid(b)
    return verdict_to_json(iso.decide_iso(a, b))


def _parse_scalar_arg(text: str):
    return gauss_parse(text)


def _build_name(spec: str) -> QLA:
    parts = spec.split(":")
    name = parts[0].lower()
    if name in ("g3", "g4") and len(parts) <= 2:
        return dblext.builtin(name, _parse_scalar_arg(parts[1]) if len(parts) == 2 else None)
    if name in ("g5", "g6") and len(parts) == 1:
        return dblext.builtin(name)
    if name == "g" and len(parts) == 3:
        return dblext.g_lambda_mu(_parse_scalar_arg(parts[1]), _parse_scalar_arg(parts[2]))
    raise ParseError(f"unknown --name value {spec!r}")


def _parse_int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"{what}: expected an integer, got {text!r}") from None


def _build_jordan(spec: str) -> QLA:
    parts = spec.split(":")
    kind = parts[0].lower()
    if kind in ("even", "odd") and len(parts) == 2:
        return dblext.jordan_type_algebra(kind, _parse_int(parts[1], "--jordan"))
    if kind == "scaled" and len(parts) == 3:
        return dblext.jordan_type_algebra(kind, _parse_int(parts[1], "--jordan"), _parse_scalar_arg(parts[2]))
    raise ParseError(f"unknown --jordan value {spec!r}")


def _build_partition(spec: str) -> QLA:
    parts = [_parse_int(x.strip(), "--partition") for x in spec.split(",") if x.strip()]
    return dblext.g_of_partition(parts)


def cmd_build(args) -> dict | None:
    if args.name:
        g = _build_name(args.name)
    elif args.jordan:
        g = _build_jordan(args.jordan)
    elif args.partition:
        g = _build_partition(args.partition)
    else:
        c = skew_from_json(_read_json(args.skew), where=args.skew)
        g = dblext.double_extend(c.space, c)
    report = qla_to_json(g)
    if args.output:
        Path(args.output).write_text(dumps(report), encoding="utf-8")
        return {"written": args.output, "dim": g.dim}
    return report


def cmd_enumerate(args) -> dict:
    n = _parse_int(args.n, "n")
    if n < 1:
        raise ParseError("n must be at least 1")
    return {"n": n, "partitions": [list(p.parts) for p in orbits.enumerate_Pprime(n)]}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quadlie", description="Exact classification of quadratic Lie algebras.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, fn, helptext in (
        ("check", cmd_check, "invariance, Jacobi, solvability, nilpotency, reducedness"),
        ("dup", cmd_dup, "dup-number with V_I and W_I dimensions"),
        ("invariant", cmd_invariant, "orbit invariant of the extracted skew map"),
        ("qdim", cmd_qdim, "quadratic dimension and formula check"),
        ("extract", cmd_extract, "double extension data"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file")
        p.set_defaults(func=fn)
    p = sub.add_parser("iso", help="isomorphism and i-isomorphism verdict")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=cmd_iso)
    p = sub.add_parser("build", help="write QLA-JSON of a constructed algebra")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--name", help="g3:<l> | g4 | g4:<l> | g5 | g6 | g:<l>:<m>")
    group.add_argument("--jordan", help="even:<p> | odd:<p> | scaled:<p>:<l>")
    group.add_argument("--partition", help="comma-separated parts, e.g. 2,2,3")
    group.add_argument("--skew", help="skew-map JSON file to double-extend")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)
    p = sub.add_parser("enumerate-partitions", help="list P'(n)")
    p.add_argument("n")
    p.set_defaults(func=cmd_enumerate)
    return parser


def _error(kind: str, exc: Exception) -> str:
    return json.dumps({"error": kind, "type": exc.__class__.__name__, "message": str(exc)})


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        report = args.func(args)
    except ParseError as exc:
        print(_error("parse", exc))
        return 2
    except QuadLieError as exc:
        print(_error("domain", exc))
        return 1
    sys.stdout.write(dumps(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
