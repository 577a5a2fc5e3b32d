"""JSON file formats and report fragments.

QLA-JSON::

    {"dim": n, "gram": [[scalar, ...], ...],
     "brackets": [{"i": i, "j": j, "c": [scalar x n]}, ...]}

with ``i < j`` zero-based; ``"threeform": [{"ijk": [i, j, k], "c": scalar}]``
may replace ``"brackets"``.  Skew-map files are ``{"dim", "gram", "mat"}``.
Scalars are always strings in the exact text form.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import DomainError, ParseError
from .exterior import AltForm, brackets_from_threeform
from .iso import IsoVerdict, NonSolvableEvidence
from .linalg import Mat, QuadSpace, SkewMap
from .orbits import InvertibleTriple, OrbitInvariant, Partition, TripleEntry
from .qla import QLA
from .scalar import GaussScalar, gauss_parse, gauss_print


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None


def scalar_to_json(z: GaussScalar) -> str:
    return gauss_print(z)


def scalar_from_json(value: Any, where: str) -> GaussScalar:
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a scalar string, got a boolean")
    if isinstance(value, int):
        return GaussScalar(value)
    if not isinstance(value, str):
        raise ParseError(f"{where}: expected a scalar string, got {type(value).__name__}")
    try:
        return gauss_parse(value)
    except ParseError as exc:
        raise ParseError(f"{where}: {exc}") from None


def _require(obj: dict, key: str, kind, where: str):
    if key not in obj:
        raise ParseError(f"{where}: missing key {key!r}")
    value = obj[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise ParseError(f"{where}: key {key!r} has the wrong type")
    return value


def _index(value: Any, n: int, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value < n:
        raise ParseError(f"{where}: index {value!r} out of range for dim {n}")
    return value


def matrix_to_json(m: Mat) -> list[list[str]]:
    return [[gauss_print(x) for x in m.row(i)] for i in range(m.rows)]


def matrix_from_json(rows: Any, n: int, where: str) -> Mat:
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f"{where}: expected {n} rows")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"{where}: row {i} must have {n} entries")
        out.append([scalar_from_json(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    return Mat(out, cols=n)


def vector_to_json(v) -> list[str]:
    return [gauss_print(x) for x in v]


def _space_from_json(obj: dict, where: str) -> QuadSpace:
    n = _require(obj, "dim", int, where)
    if n < 0:
        raise ParseError(f"{where}: negative dim")
    gram = matrix_from_json(_require(obj, "gram", list, where), n, f"{where}.gram")
    try:
        return QuadSpace(gram)
    except DomainError as exc:
        raise ParseError(f"{where}.gram: {exc}") from None


def qla_to_json(g: QLA) -> dict:
    return {
        "dim": g.dim,
        "gram": matrix_to_json(g.space.gram),
        "brackets": [{"i": i, "j": j, "c": vector_to_json(c)} for (i, j), c in sorted(g.structure.items())],
    }


def qla_from_json(obj: Any, where: str = "algebra") -> QLA:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected a JSON object")
    space = _space_from_json(obj, where)
    n = space.dim
    if "brackets" in obj and "threeform" in obj:
        raise ParseError(f"{where}: give either 'brackets' or 'threeform', not both")
    if "threeform" in obj:
        terms = {}
        for t, entry in enumerate(_require(obj, "threeform", list, where)):
            w = f"{where}.threeform[{t}]"
            if not isinstance(entry, dict):
                raise ParseError(f"{w}: expected an object")
            ijk = _require(entry, "ijk", list, w)
            if len(ijk) != 3:
                raise ParseError(f"{w}: 'ijk' needs three indices")
            idx = tuple(_index(x, n, w) for x in ijk)
            if not idx[0] < idx[1] < idx[2]:
                raise ParseError(f"{w}: indices must be strictly increasing")
            if idx in terms:
                raise ParseError(f"{w}: duplicate term {list(idx)}")
            terms[idx] = scalar_from_json(entry.get("c"), f"{w}.c")
        return brackets_from_threeform(space, AltForm(n, 3, terms))
    structure = {}
    for t, entry in enumerate(obj.get("brackets", [])):
        w = f"{where}.brackets[{t}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{w}: expected an object")
        i = _index(_require(entry, "i", int, w), n, w)
        j = _index(_require(entry, "j", int, w), n, w)
        if not i < j:
            raise ParseError(f"{w}: need i < j")
        if (i, j) in structure:
            raise ParseError(f"{w}: duplicate pair ({i}, {j})")
        coeffs = _require(entry, "c", list, w)
        if len(coeffs) != n:
            raise ParseError(f"{w}: 'c' must have {n} entries")
        structure[(i, j)] = [scalar_from_json(x, f"{w}.c[{k}]") for k, x in enumerate(coeffs)]
    return QLA(space, structure)


def skew_to_json(c: SkewMap) -> dict:
    return {"dim": c.dim, "gram": matrix_to_json(c.space.gram), "mat": matrix_to_json(c.mat)}


def skew_from_json(obj: Any, where: str = "skew map") -> SkewMap:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected a JSON object")
    space = _space_from_json(obj, where)
    mat = matrix_from_json(_require(obj, "mat", list, where), space.dim, f"{where}.mat")
    return SkewMap(space, mat)


def orbit_invariant_to_json(inv: OrbitInvariant) -> dict:
    return {
        "nilpotent": list(inv.nilpotent.parts),
        "invertible": [
            {"lambda": gauss_print(e.lam), "mult": e.mult, "jordan": list(e.jordan.parts)}
            for e in inv.invertible.entries
        ],
    }


def orbit_invariant_from_json(obj: dict) -> OrbitInvariant:
    entries = [
        TripleEntry(gauss_parse(e["lambda"]), int(e["mult"]), Partition(tuple(e["jordan"])))
        for e in obj["invertible"]
    ]
    return OrbitInvariant(Partition(tuple(obj["nilpotent"])), InvertibleTriple.build(entries))


def evidence_to_json(ev: Any) -> Any:
    if isinstance(ev, OrbitInvariant):
        return orbit_invariant_to_json(ev)
    if isinstance(ev, NonSolvableEvidence):
        return {"nonsolvable": {"lambda": gauss_print(ev.lam), "central_dim": ev.central_dim}}
    return None


def verdict_to_json(v: IsoVerdict) -> dict:
    return {
        "isomorphic": v.isomorphic,
        "i_isomorphic": v.i_isomorphic,
        "invariant_a": evidence_to_json(v.evidence[0]),
        "invariant_b": evidence_to_json(v.evidence[1]),
    }
