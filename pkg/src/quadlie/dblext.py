"""Double extensions: builders, the small named algebras, and extraction.

Every builder lays out the (n+2)-dimensional result on the basis
(X1, q_1, ..., q_n, Y1) with B(X1, Y1) = 1, X1 and Y1 isotropic and
orthogonal to the core.  Brackets:

    [Y1, q] = C q,    [q, q'] = B(C q, q') X1,    X1 central.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    DomainError,
    ExtractionFailure,
    InternalInvariantError,
    NotAdmissiblePartition,
    NotRecognized,
    NotSolvable,
    SplitFailure,
)
from .linalg import (
    Mat,
    QuadSpace,
    SkewMap,
    Vector,
    coordinates,
    orthogonal_complement,
    orthogonal_sum_space,
    restrict_map,
    subspace_intersection,
    vadd,
    vscale,
)
from .qla import QLA, dup, orthogonal_sum, subalgebra_on, transform
from .scalar import ONE, ZERO, GaussScalar, Poly, gs, poly_roots_gaussian


# ---------------------------------------------------------------------------
# quadratic spaces and maps
# ---------------------------------------------------------------------------

def canonical_space(n: int) -> QuadSpace:
    """C^n with B(E_i, F_i) = 1 (and B(G, G) = 1 in odd dimension)."""
    p, odd = divmod(n, 2)
    g = Mat.zeros(n)
    rows = g.row_lists()
    shift = p + odd
    for i in range(p):
        rows[i][shift + i] = ONE
        rows[shift + i][i] = ONE
    if odd:
        rows[p][p] = ONE
    return QuadSpace(Mat(rows, cols=n))


def jordan_block(p: int, lam=0) -> Mat:
    lam = gs(lam)
    rows = [[lam if i == j else (ONE if j == i + 1 else ZERO) for j in range(p)] for i in range(p)]
    return Mat(rows, cols=p)


def even_jordan_map(p: int, lam=0) -> SkewMap:
    """diag(J_p(lam), -J_p(lam)^T) on canonical C^(2p)."""
    j = jordan_block(p, lam)
    return SkewMap(canonical_space(2 * p), Mat.block_diag([j, -j.T()]))


def odd_jordan_map(p: int) -> SkewMap:
    """[[J_(p+1), M], [0, -J_p^T]] on canonical C^(2p+1), M with a single -1 at (p+1, p)."""
    n = 2 * p + 1
    rows = Mat.zeros(n).row_lists()
    for i in range(p):
        rows[i][i + 1] = ONE
    if p:
        rows[p][n - 1] = -ONE
    jt = jordan_block(p).T()
    for i in range(p):
        for k in range(p):
            if jt[i, k]:
                rows[p + 1 + i][p + 1 + k] = -jt[i, k]
    return SkewMap(canonical_space(n), Mat(rows, cols=n))


def is_admissible(parts: Sequence[int]) -> bool:
    """Every even part occurs with even multiplicity."""
    return all(v % 2 == 1 or k % 2 == 0 for v, k in Counter(parts).items())


def partition_blocks(parts: Sequence[int]) -> list[SkewMap]:
    """Paired even parts first, then the odd parts, each in decreasing order."""
    parts = list(parts)
    if not parts or any((not isinstance(d, int)) or d < 1 for d in parts):
        raise NotAdmissiblePartition(f"{parts} is not a partition into positive parts")
    if not is_admissible(parts):
        raise NotAdmissiblePartition(f"{parts}: an even part occurs with odd multiplicity")
    counts = Counter(parts)
    blocks = []
    for v in sorted((v for v in counts if v % 2 == 0), reverse=True):
        blocks.extend(even_jordan_map(v) for _ in range(counts[v] // 2))
    for v in sorted((v for v in counts if v % 2 == 1), reverse=True):
        blocks.extend(odd_jordan_map(v // 2) for _ in range(counts[v]))
    return blocks


def direct_sum_maps(maps: Sequence[SkewMap]) -> SkewMap:
    space = maps[0].space
    for m in maps[1:]:
        space = orthogonal_sum_space(space, m.space)
    return SkewMap(space, Mat.block_diag([m.mat for m in maps]))


def partition_map(parts: Sequence[int]) -> SkewMap:
    return direct_sum_maps(partition_blocks(parts))


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def double_extend(core: QuadSpace, cbar: SkewMap | Mat) -> QLA:
    if isinstance(cbar, Mat):
        cbar = SkewMap(core, cbar)
    elif cbar.space != core:
        cbar = SkewMap(core, cbar.mat)
    n = core.dim
    N = n + 2
    g = Mat.zeros(N).row_lists()
    g[0][N - 1] = g[N - 1][0] = ONE
    for i in range(n):
        for j in range(n):
            g[1 + i][1 + j] = core.gram[i, j]
    space = QuadSpace(Mat(g, cols=N))
    c = cbar.mat
    low = (c.T() @ core.gram)  # low[i, j] = B(C q_i, q_j)
    structure = {}
    for j in range(n):
        col = c.col(j)
        if any(col):
            # [q_j, Y1] = -C q_j
            structure[(1 + j, N - 1)] = (ZERO,) + tuple(-x for x in col) + (ZERO,)
        for k in range(j + 1, n):
            b = low[j, k]
            if b:
                structure[(1 + j, 1 + k)] = (b,) + (ZERO,) * (N - 1)
    return QLA(space, structure)


def amalgamate(parts: Sequence[tuple[QuadSpace, SkewMap]]) -> QLA:
    if not parts:
        raise DomainError("amalgamated product of an empty list")
    maps = [SkewMap(space, m.mat if isinstance(m, SkewMap) else m) for space, m in parts]
    total = direct_sum_maps(maps)
    return double_extend(total.space, total)


def jordan_type_map(kind: str, p: int, lam=None) -> SkewMap:
    kind = kind.lower()
    if kind == "scaled":
        lam = gs(0 if lam is None else lam)
        if not lam:
            if p >= 2:
                return even_jordan_map(p)
            raise DomainError("scaled Jordan-type map with lambda = 0 needs p >= 2")
        if p < 1:
            raise DomainError("scaled Jordan-type map needs p >= 1")
        return even_jordan_map(p, lam)
    if kind == "even":
        if p < 2:
            raise DomainError("even Jordan-type algebra needs p >= 2")
        return even_jordan_map(p)
    if kind == "odd":
        if p < 1:
            raise DomainError("odd Jordan-type algebra needs p >= 1")
        return odd_jordan_map(p)
    raise DomainError(f"unknown Jordan-type kind {kind!r}")


def jordan_type_algebra(kind: str, p: int, lam=None) -> QLA:
    m = jordan_type_map(kind, p, lam)
    return double_extend(m.space, m)


def g_of_partition(parts: Sequence[int]) -> QLA:
    m = partition_map(parts)
    return double_extend(m.space, m)


def g4_map(lam=1) -> SkewMap:
    lam = gs(lam)
    if not lam:
        raise DomainError("g4(lambda) needs lambda != 0")
    return SkewMap(canonical_space(2), Mat.diag([lam, -lam]))


def g_lambda_mu(lam, mu) -> QLA:
    """g4(lam) amalgamated with g4(mu)."""
    a, b = g4_map(lam), g4_map(mu)
    return amalgamate([(a.space, a), (b.space, b)])


def o3(lam=1) -> QLA:
    """o(3) on L1, L2, L3 with [L1, L2] = L3 (cyclic) and B = lam * Killing = -2 lam * Id."""
    lam = gs(lam)
    if not lam:
        raise DomainError("g3(lambda) needs lambda != 0")
    space = QuadSpace(Mat.identity(3).scale(-2 * lam))
    structure = {
        (0, 1): (ZERO, ZERO, ONE),
        (1, 2): (ONE, ZERO, ZERO),
        (0, 2): (ZERO, -ONE, ZERO),
    }
    return QLA(space, structure)


def builtin(name: str, lam=None) -> QLA:
    name = name.lower()
    if name == "g3":
        return o3(1 if lam is None else lam)
    if name == "g4":
        m = g4_map(1 if lam is None else lam)
        return double_extend(m.space, m)
    if lam is not None:
        raise DomainError(f"builtin {name!r} takes no parameter")
    if name == "g5":
        m = odd_jordan_map(1)
        return double_extend(m.space, m)
    if name == "g6":
        space = canonical_space(4)
        c = Mat.zeros(4).row_lists()
        c[0][1] = ONE
        c[3][2] = -ONE
        return double_extend(space, SkewMap(space, Mat(c, cols=4)))
    raise DomainError(f"unknown builtin algebra {name!r}")


def with_central(g: QLA, k: int) -> QLA:
    """g plus an orthonormal k-dimensional central ideal."""
    if k == 0:
        return g
    return orthogonal_sum(g, QLA(QuadSpace(Mat.identity(k)), {}))


# ---------------------------------------------------------------------------
# extraction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DoubleExtensionData:
    ambient: QLA
    x0: Vector
    y0: Vector
    core: QuadSpace
    cbar: SkewMap
    embedding: tuple[Vector, ...]

    def rebuilt(self) -> QLA:
        return double_extend(self.core, self.cbar)

    def basis_change(self) -> Mat:
        return Mat.from_columns([self.x0, *self.embedding, self.y0])


def _isotropic_vector(space: QuadSpace, candidates: Sequence[Vector]) -> Vector | None:
    for v in candidates:
        if not space.B(v, v):
            return v
    for a in range(len(candidates)):
        for b in range(a + 1, len(candidates)):
            x, y = candidates[a], candidates[b]
            # B(x + t y, x + t y) = Bxx + 2 t Bxy + t^2 Byy
            poly = Poly([space.B(x, x), 2 * space.B(x, y), space.B(y, y)])
            if poly.degree < 1:
                continue
            try:
                roots = poly_roots_gaussian(poly)
            except SplitFailure:
                continue
            if roots:
                return vadd(x, vscale(roots[0], y))
    return None


def extract_double_extension(g: QLA) -> DoubleExtensionData:
    """Write a solvable singular g as a double extension by C = ad(Y0) on (X0, Y0)^perp."""
    if not g.is_solvable():
        raise NotSolvable("extraction needs a solvable algebra")
    d = dup(g)
    if not d.singular:
        raise DomainError("extraction needs a singular algebra (dup >= 1)")
    space = g.space
    n = g.dim
    dual = [space.phi_inv(alpha) for alpha in d.v_basis]
    candidates = subspace_intersection(g.center(), dual, n)
    x0 = _isotropic_vector(space, candidates)
    if x0 is None:
        raise ExtractionFailure("no isotropic central vector with Gaussian-rational coordinates")
    low = space.phi(x0)
    j = next(k for k in range(n) if low[k])
    y = tuple(ONE / low[j] if k == j else ZERO for k in range(n))
    y0 = vadd(y, vscale(-space.B(y, y) / 2, x0))
    core_basis = orthogonal_complement(space, [x0, y0])
    core = space.restrict(core_basis)
    cmat = restrict_map(g.ad(y0), core_basis)
    cbar = SkewMap(core, cmat)
    data = DoubleExtensionData(g, x0, y0, core, cbar, tuple(core_basis))
    if transform(g, data.basis_change()) != data.rebuilt():
        raise InternalInvariantError("extracted double extension does not reproduce the algebra")
    return data


# ---------------------------------------------------------------------------
# non-solvable singular algebras
# ---------------------------------------------------------------------------

def split_nonsolvable_singular(g: QLA) -> tuple[GaussScalar, int]:
    """(lambda, central_dim) for g = o(3) with lambda*Killing, plus a central ideal."""
    if g.is_solvable():
        raise DomainError("split_nonsolvable_singular needs a non-solvable algebra")
    if not dup(g).singular:
        raise DomainError("split_nonsolvable_singular needs a singular algebra (dup >= 1)")
    n = g.dim
    s = g.derived()
    if len(s) != 3:
        raise NotRecognized(f"derived ideal has dim {len(s)}, expected 3")
    if len(g.bracket_span(s, s)) != 3:
        raise NotRecognized("derived ideal is not perfect")
    try:
        sub = subalgebra_on(g, s)
    except DomainError:
        raise NotRecognized("form degenerates on the derived ideal") from None
    kappa = sub.killing_form()
    gram = sub.space.gram
    lam = None
    for a in range(3):
        for b in range(3):
            if kappa[a, b]:
                lam = gram[a, b] / kappa[a, b]
                break
        if lam is not None:
            break
    if lam is None or gram != kappa.scale(lam):
        raise NotRecognized("form on the derived ideal is not a multiple of the Killing form")
    if len(g.center()) != n - 3:
        raise NotRecognized("center is not a complement of the derived ideal")
    return lam, n - 3


def embed_core_vector(data: DoubleExtensionData, coords: Sequence) -> Vector:
    n = data.ambient.dim
    acc = (ZERO,) * n
    for c, v in zip(coords, data.embedding):
        if c:
            acc = vadd(acc, vscale(c, v))
    return acc


def core_coordinates(data: DoubleExtensionData, vectors: Sequence[Vector]) -> list[Vector]:
    return coordinates(list(data.embedding), vectors)
