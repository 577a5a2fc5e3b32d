"""Isomorphism of singular quadratic Lie algebras, centromorphisms, quadratic dimension."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .dblext import extract_double_extension, split_nonsolvable_singular
from .errors import DomainError, NotInvariantError
from .linalg import Mat, QuadSpace, sparse_nullspace, subspace_le
from .orbits import OrbitInvariant, orbit_invariant, projective_equal
from .qla import QLA, dup
from .scalar import ZERO


@dataclass(frozen=True)
class NonSolvableEvidence:
    lam: Any
    central_dim: int


@dataclass(frozen=True)
class IsoVerdict:
    isomorphic: bool
    i_isomorphic: bool
    evidence: tuple[Any, Any] = (None, None)


def _require_singular(g: QLA, label: str) -> None:
    if g.is_abelian() or not dup(g).singular:
        raise DomainError(f"{label} is not singular (dup = 0 or Abelian); isomorphism is undecided there")


def evidence_for(g: QLA) -> OrbitInvariant | NonSolvableEvidence:
    if "evidence" not in g._cache:
        if g.is_solvable():
            ev = orbit_invariant(extract_double_extension(g).cbar)
        else:
            lam, central = split_nonsolvable_singular(g)
            ev = NonSolvableEvidence(lam, central)
        g._cache["evidence"] = ev
    return g._cache["evidence"]


def decide_iso(g: QLA, h: QLA) -> IsoVerdict:
    _require_singular(g, "first algebra")
    _require_singular(h, "second algebra")
    ea, eb = evidence_for(g), evidence_for(h)
    if g.dim != h.dim:
        return IsoVerdict(False, False, (ea, eb))
    if isinstance(ea, OrbitInvariant) and isinstance(eb, OrbitInvariant):
        same = projective_equal(ea, eb)
        return IsoVerdict(same, same, (ea, eb))
    if isinstance(ea, NonSolvableEvidence) and isinstance(eb, NonSolvableEvidence):
        return IsoVerdict(True, ea.lam == eb.lam, (ea, eb))
    return IsoVerdict(False, False, (ea, eb))


# ---------------------------------------------------------------------------
# centromorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CentroBasis:
    maps: tuple[Mat, ...]

    def __len__(self):
        return len(self.maps)


def centromorphisms(g: QLA) -> CentroBasis:
    """B-symmetric D commuting with every ad(E_k); unknown D[a][b] is variable a*n + b."""
    n = g.dim
    gram = g.space.gram
    eqs = []
    for k in range(n):
        ad = g.ad_basis(k)
        nz_cols = [[(c, ad[c, b]) for c in range(n) if ad[c, b]] for b in range(n)]
        nz_rows = [[(c, ad[a, c]) for c in range(n) if ad[a, c]] for a in range(n)]
        if not any(nz_cols):
            continue
        for a in range(n):
            for b in range(n):
                # (D ad - ad D)[a][b]
                eq: dict[int, Any] = {}
                for c, v in nz_cols[b]:
                    idx = a * n + c
                    eq[idx] = eq.get(idx, ZERO) + v
                for c, v in nz_rows[a]:
                    idx = c * n + b
                    eq[idx] = eq.get(idx, ZERO) - v
                if any(eq.values()):
                    eqs.append(eq)
    gnz = [[(c, gram[a, c]) for c in range(n) if gram[a, c]] for a in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            # (G D)[a][b] - (G D)[b][a]
            eq = {}
            for c, v in gnz[a]:
                idx = c * n + b
                eq[idx] = eq.get(idx, ZERO) + v
            for c, v in gnz[b]:
                idx = c * n + a
                eq[idx] = eq.get(idx, ZERO) - v
            if any(eq.values()):
                eqs.append(eq)
    sols = sparse_nullspace(eqs, n * n)
    maps = tuple(Mat([list(s[a * n:(a + 1) * n]) for a in range(n)], cols=n) for s in sols)
    return CentroBasis(maps)


def quadratic_dimension(g: QLA) -> int:
    return len(centromorphisms(g))


def qdim_formula(g: QLA) -> int:
    z = len(g.center())
    return 1 + z * (z + 1) // 2


def transported_form(g: QLA, d: Mat) -> QLA:
    """g with the form B'(X, Y) = B(D X, Y)."""
    try:
        space = QuadSpace(d.T() @ g.space.gram)
    except DomainError:
        raise DomainError("transported form is degenerate or not symmetric") from None
    h = QLA(space, g.structure)
    if not h.check_invariant_form():
        raise NotInvariantError("transported form is not invariant")
    return h


def dup_transport_check(g: QLA, d: Mat, require_invertible: bool = True) -> tuple[int, int]:
    if require_invertible and not d.det():
        raise DomainError("centromorphism is not invertible")
    return dup(g).value, dup(transported_form(g, d)).value


def _scalar_part(d: Mat, derived) -> Any:
    """The mu with (D - mu Id) vanishing on [g, g], or None."""
    v = derived[0]
    dv = d.apply(v)
    k = next(i for i, x in enumerate(v) if x)
    mu = dv[k] / v[k]
    for w in derived:
        dw = d.apply(w)
        if any(a - mu * b for a, b in zip(dw, w)):
            return None
    return mu


def centromorphism_shape_check(g: QLA) -> bool:
    """Every centromorphism is mu Id + Z with Z([g,g]) = 0 and Z(g) in the center."""
    if g.is_abelian() or not dup(g).singular or not g.is_reduced():
        raise DomainError("shape check needs a reduced singular algebra")
    n = g.dim
    derived = g.derived()
    center = g.center()
    for d in centromorphisms(g).maps:
        mu = _scalar_part(d, derived)
        if mu is None:
            return False
        z = d - Mat.identity(n).scale(mu)
        if not subspace_le([c for c in z.columns() if any(c)], center, n):
            return False
    return True
