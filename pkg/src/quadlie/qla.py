"""Quadratic Lie algebras given by structure constants on Q(i)^n."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import AbelianError, DomainError, InternalInvariantError, NonSplitForm
from .exterior import AltForm, pair_contraction, threeform_from_brackets, wedge
from .linalg import (
    Mat,
    QuadSpace,
    Vector,
    coordinates,
    dot,
    is_zero_vec,
    kernel,
    orthogonal_complement,
    orthogonal_sum_space,
    span_basis,
    sparse_nullspace,
    subspace_intersection,
    unit_vec,
    vadd,
    vscale,
    zero_vec,
)
from .scalar import ZERO, GaussScalar, gs


class QLA:
    """A vector space with a symmetric form and a skew bracket on its basis.

    ``structure`` maps (i, j) with i < j to the coefficient vector of
    [E_i, E_j]; omitted pairs bracket to zero.  Invariance of the form and the
    Jacobi identity are checked on demand, not at construction.
    """

    def __init__(self, space: QuadSpace, structure: Mapping[tuple[int, int], Sequence] | None = None):
        n = space.dim
        self.space = space
        table = [[None] * n for _ in range(n)]
        zero = zero_vec(n)
        for (i, j), c in (structure or {}).items():
            if not (0 <= i < n and 0 <= j < n):
                raise DomainError(f"bracket index ({i}, {j}) out of range for dim {n}")
            if len(c) != n:
                raise DomainError(f"bracket ({i}, {j}) has {len(c)} coefficients, expected {n}")
            c = tuple(gs(x) for x in c)
            if i == j:
                if any(c):
                    raise DomainError(f"[E_{i}, E_{i}] must vanish")
                continue
            if i > j:
                i, j, c = j, i, tuple(-x for x in c)
            if table[i][j] is not None and table[i][j] != c:
                raise DomainError(f"bracket ({i}, {j}) given twice with different values")
            table[i][j] = c
            table[j][i] = tuple(-x for x in c)
        for i in range(n):
            for j in range(n):
                if table[i][j] is None:
                    table[i][j] = zero
        self._table = table
        self._cache: dict = {}

    # basic access ---------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def structure(self) -> dict[tuple[int, int], Vector]:
        n = self.dim
        return {(i, j): self._table[i][j] for i in range(n) for j in range(i + 1, n) if any(self._table[i][j])}

    def bracket_basis(self, i: int, j: int) -> Vector:
        return self._table[i][j]

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        n = self.dim
        acc = [ZERO] * n
        for i in range(n):
            if not x[i]:
                continue
            for j in range(n):
                if not y[j] or i == j:
                    continue
                c = x[i] * y[j]
                for k, v in enumerate(self._table[i][j]):
                    if v:
                        acc[k] = acc[k] + c * v
        return tuple(acc)

    def ad_basis(self, i: int) -> Mat:
        key = ("ad", i)
        if key not in self._cache:
            self._cache[key] = Mat.from_columns([self._table[i][j] for j in range(self.dim)])
        return self._cache[key]

    def ad(self, x: Sequence) -> Mat:
        n = self.dim
        m = Mat.zeros(n)
        for i in range(n):
            if x[i]:
                m = m + self.ad_basis(i).scale(x[i])
        return m

    def B(self, x, y) -> GaussScalar:
        return self.space.B(x, y)

    def __eq__(self, other):
        return isinstance(other, QLA) and self.space == other.space and self._table == other._table

    def __hash__(self):
        return hash((self.space, tuple(sorted(self.structure.items()))))

    def __repr__(self):
        return f"QLA(dim={self.dim}, nonzero brackets={len(self.structure)})"

    def is_abelian(self) -> bool:
        return not self.structure

    # checks ---------------------------------------------------------------
    def check_invariant_form(self) -> bool:
        """B([E_i, E_j], E_k) == B(E_i, [E_j, E_k]) for every basis triple."""
        key = "invariant"
        if key not in self._cache:
            self._cache[key] = self._scan_invariance()
        return self._cache[key]

    def _scan_invariance(self) -> bool:
        n = self.dim
        low = [[self.space.phi(self._table[i][j]) for j in range(n)] for i in range(n)]
        # low[i][j][k] = B([E_i,E_j],E_k); invariance means it is cyclic
        for i in range(n):
            for j in range(n):
                lij = low[i][j]
                for k in range(n):
                    if lij[k] != low[j][k][i]:
                        return False
        return True

    def check_jacobi(self) -> bool:
        key = "jacobi"
        if key not in self._cache:
            self._cache[key] = self._scan_jacobi()
        return self._cache[key]

    def _scan_jacobi(self) -> bool:
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                bij = self._table[i][j]
                for k in range(j + 1, n):
                    s = self.bracket(bij, unit_vec(n, k))
                    s = vadd(s, self.bracket(self._table[j][k], unit_vec(n, i)))
                    s = vadd(s, self.bracket(self._table[k][i], unit_vec(n, j)))
                    if any(s):
                        return False
        return True

    # intrinsic subspaces ----------------------------------------------------
    def center(self) -> list[Vector]:
        if "center" not in self._cache:
            n = self.dim
            rows = []
            for i in range(n):
                rows.extend(self.ad_basis(i).row_lists())
            self._cache["center"] = kernel(Mat(rows, cols=n)) if rows else []
        return self._cache["center"]

    def derived(self) -> list[Vector]:
        if "derived" not in self._cache:
            self._cache["derived"] = span_basis(self.structure.values(), self.dim)
        return self._cache["derived"]

    def bracket_span(self, a: Sequence[Sequence], b: Sequence[Sequence]) -> list[Vector]:
        return span_basis([self.bracket(x, y) for x in a for y in b], self.dim)

    def is_solvable(self) -> bool:
        if "solvable" not in self._cache:
            cur = [unit_vec(self.dim, i) for i in range(self.dim)]
            while cur:
                nxt = self.bracket_span(cur, cur)
                if len(nxt) == len(cur):
                    break
                cur = nxt
            self._cache["solvable"] = not cur
        return self._cache["solvable"]

    def is_nilpotent(self) -> bool:
        if "nilpotent" not in self._cache:
            full = [unit_vec(self.dim, i) for i in range(self.dim)]
            cur = full
            while cur:
                nxt = self.bracket_span(full, cur)
                if len(nxt) == len(cur):
                    break
                cur = nxt
            self._cache["nilpotent"] = not cur
        return self._cache["nilpotent"]

    def killing_form(self) -> Mat:
        n = self.dim
        ads = [self.ad_basis(i) for i in range(n)]
        return Mat([[(ads[i] @ ads[j]).trace() for j in range(n)] for i in range(n)], cols=n)

    def threeform(self) -> AltForm:
        if "I" not in self._cache:
            self._cache["I"] = threeform_from_brackets(self)
        return self._cache["I"]

    def is_reduced(self) -> bool:
        """The center is totally isotropic."""
        z = self.center()
        return all(not self.B(x, y) for x in z for y in z)


# ---------------------------------------------------------------------------
# dup-number
# ---------------------------------------------------------------------------

_KINDS = {0: "Ordinary", 1: "S1", 3: "S3"}


@dataclass(frozen=True)
class DupClass:
    value: int
    v_basis: tuple[Vector, ...]
    w_basis: tuple[Vector, ...]

    @property
    def kind(self) -> str:
        return _KINDS[self.value]

    @property
    def singular(self) -> bool:
        return self.value > 0


def v_i_basis(form: AltForm) -> list[Vector]:
    """Covectors alpha with alpha ^ I = 0."""
    n = form.space_dim
    eqs: dict[tuple[int, ...], dict[int, GaussScalar]] = {}
    for i in range(n):
        w = wedge(AltForm(n, 1, {(i,): 1}), form)
        for key, c in w.terms.items():
            eqs.setdefault(key, {})[i] = c
    return sparse_nullspace(eqs.values(), n)


def w_i_basis(form: AltForm) -> list[Vector]:
    n = form.space_dim
    vecs = []
    for i in range(n):
        for j in range(i + 1, n):
            c = pair_contraction(i, j, form)
            if not c.is_zero():
                vecs.append(tuple(c.coeff((k,)) for k in range(n)))
    return span_basis(vecs, n)


def dup(g: QLA) -> DupClass:
    if "dup" in g._cache:
        return g._cache["dup"]
    if g.is_abelian():
        raise AbelianError("dup is only defined for non-Abelian algebras")
    form = g.threeform()
    v = v_i_basis(form)
    w = w_i_basis(form)
    if len(v) not in _KINDS:
        raise InternalInvariantError(f"dim V_I = {len(v)} is not in {{0, 1, 3}}; invalid Lie algebra data")
    result = DupClass(len(v), tuple(v), tuple(w))
    g._cache["dup"] = result
    return result


# ---------------------------------------------------------------------------
# reduction and sums
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReduceResult:
    central_dim: int
    reduced: QLA
    l_basis: tuple[Vector, ...]
    z_basis: tuple[Vector, ...]


def subalgebra_on(g: QLA, basis: Sequence[Sequence]) -> QLA:
    """The algebra carried by a nondegenerate subalgebra, in coordinates of ``basis``."""
    space = g.space.restrict(basis)
    k = len(basis)
    pairs = [(a, b) for a in range(k) for b in range(a + 1, k)]
    images = [g.bracket(basis[a], basis[b]) for a, b in pairs]
    coords = coordinates(basis, images) if images else []
    structure = {p: c for p, c in zip(pairs, coords) if any(c)}
    return QLA(space, structure)


def reduce(g: QLA) -> ReduceResult:
    """Split off a nondegenerate central ideal z, leaving l = z^perp with isotropic center."""
    if g.is_abelian():
        raise AbelianError("reduce is only defined for non-Abelian algebras")
    n = g.dim
    z = g.center()
    zd = subspace_intersection(z, g.derived(), n)
    chosen: list[Vector] = []
    span = list(zd)
    for v in z:
        trial = span_basis(span + [v], n)
        if len(trial) > len(span):
            chosen.append(v)
            span = trial
    try:
        g.space.restrict(chosen)
    except DomainError:
        raise NonSplitForm("central complement has a degenerate restricted form") from None
    l_basis = orthogonal_complement(g.space, chosen)
    reduced = subalgebra_on(g, l_basis)
    return ReduceResult(len(chosen), reduced, tuple(l_basis), tuple(chosen))


def is_indecomposable_singular(g: QLA) -> bool:
    if g.is_abelian() or dup(g).value == 0:
        raise DomainError("indecomposability test needs a singular algebra (dup >= 1)")
    return g.is_reduced()


def orthogonal_sum(a: QLA, b: QLA) -> QLA:
    n, m = a.dim, b.dim
    space = orthogonal_sum_space(a.space, b.space)
    structure = {}
    for (i, j), c in a.structure.items():
        structure[(i, j)] = tuple(c) + (ZERO,) * m
    for (i, j), c in b.structure.items():
        structure[(n + i, n + j)] = (ZERO,) * n + tuple(c)
    return QLA(space, structure)


def abelian(space: QuadSpace | int) -> QLA:
    """Abelian algebra; an int gives the orthonormal form of that size."""
    if isinstance(space, int):
        space = QuadSpace(Mat.identity(space))
    return QLA(space, {})


def transform(g: QLA, p: Mat) -> QLA:
    """The same algebra written in the basis given by the columns of p."""
    n = g.dim
    cols = p.columns()
    pinv = p.inverse()
    space = QuadSpace(p.T() @ g.space.gram @ p)
    structure = {}
    for i in range(n):
        for j in range(i + 1, n):
            c = pinv.apply(g.bracket(cols[i], cols[j]))
            if any(c):
                structure[(i, j)] = c
    return QLA(space, structure)


def with_form(g: QLA, gram: Mat) -> QLA:
    return QLA(QuadSpace(gram), g.structure)


def is_central(g: QLA, x: Sequence) -> bool:
    return all(is_zero_vec(g.bracket(unit_vec(g.dim, i), x)) for i in range(g.dim))


def combination(basis: Sequence[Sequence], coeffs: Sequence, n: int) -> Vector:
    acc = zero_vec(n)
    for c, v in zip(coeffs, basis):
        if c:
            acc = vadd(acc, vscale(c, v))
    return acc


__all__ = [
    "QLA",
    "DupClass",
    "ReduceResult",
    "dup",
    "reduce",
    "is_indecomposable_singular",
    "orthogonal_sum",
    "abelian",
    "subalgebra_on",
    "transform",
    "with_form",
    "v_i_basis",
    "w_i_basis",
]
