"""Exact dense linear algebra over Q(i), quadratic spaces and skew maps.

Conventions: a vector is a tuple of GaussScalar; ``m[i, j]`` is the
coefficient of ``e_i`` in ``m(e_j)``, so the columns of a matrix are the
images of the basis vectors.  Subspaces are lists of vectors kept in reduced
row echelon form, which makes equality of subspaces a list comparison.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import (
    CayleyPoleError,
    DomainError,
    InternalInvariantError,
    NotSkewError,
)
from .scalar import ONE, ZERO, GaussScalar, Poly, gs, multiset

Vector = tuple


def vec(values: Iterable) -> Vector:
    return tuple(gs(v) for v in values)


def zero_vec(n: int) -> Vector:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vadd(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(s, v: Sequence) -> Vector:
    return tuple(s * a for a in v)


def dot(u: Sequence, v: Sequence) -> GaussScalar:
    acc = ZERO
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


def is_zero_vec(v: Sequence) -> bool:
    return not any(v)


class Mat:
    """Dense matrix over Q(i)."""

    __slots__ = ("rows", "cols", "_r")

    def __init__(self, data: Sequence[Sequence], cols: int | None = None):
        self._r = [[gs(x) for x in row] for row in data]
        self.rows = len(self._r)
        if cols is None:
            cols = len(self._r[0]) if self._r else 0
        self.cols = cols
        for row in self._r:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")

    @classmethod
    def _wrap(cls, data: list[list[GaussScalar]], rows: int, cols: int) -> Mat:
        m = object.__new__(cls)
        m._r = data
        m.rows = rows
        m.cols = cols
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> Mat:
        cols = rows if cols is None else cols
        return cls._wrap([[ZERO] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> Mat:
        return cls.diag([ONE] * n)

    @classmethod
    def diag(cls, values: Sequence) -> Mat:
        n = len(values)
        m = cls.zeros(n)
        for i, v in enumerate(values):
            m._r[i][i] = gs(v)
        return m

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> Mat:
        if not columns:
            return cls.zeros(rows or 0, 0)
        nrows = len(columns[0])
        return cls._wrap([[gs(c[i]) for c in columns] for i in range(nrows)], nrows, len(columns))

    @classmethod
    def block_diag(cls, blocks: Sequence[Mat]) -> Mat:
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = cls.zeros(n, m)
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                out._r[r0 + i][c0:c0 + b.cols] = b._r[i]
            r0 += b.rows
            c0 += b.cols
        return out

    # access ---------------------------------------------------------------
    def __getitem__(self, key):
        i, j = key
        return self._r[i][j]

    def row(self, i: int) -> Vector:
        return tuple(self._r[i])

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._r)

    def columns(self) -> list[Vector]:
        return [self.col(j) for j in range(self.cols)]

    def row_lists(self) -> list[list[GaussScalar]]:
        return [list(r) for r in self._r]

    @property
    def entries(self) -> list[GaussScalar]:
        return [x for r in self._r for x in r]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    # algebra --------------------------------------------------------------
    def T(self) -> Mat:
        if not self.rows:
            return Mat.zeros(self.cols, 0)
        return Mat._wrap([list(c) for c in zip(*self._r)], self.cols, self.rows)

    def __add__(self, other: Mat) -> Mat:
        return Mat._wrap([[a + b for a, b in zip(r, s)] for r, s in zip(self._r, other._r)], self.rows, self.cols)

    def __sub__(self, other: Mat) -> Mat:
        return Mat._wrap([[a - b for a, b in zip(r, s)] for r, s in zip(self._r, other._r)], self.rows, self.cols)

    def __neg__(self) -> Mat:
        return Mat._wrap([[-a for a in r] for r in self._r], self.rows, self.cols)

    def scale(self, s) -> Mat:
        s = gs(s)
        return Mat._wrap([[s * a for a in r] for r in self._r], self.rows, self.cols)

    def __matmul__(self, other: Mat) -> Mat:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ocols = list(zip(*other._r)) if other.rows else [()] * other.cols
        out = []
        for r in self._r:
            nz = [(k, a) for k, a in enumerate(r) if a]
            line = []
            for c in ocols:
                acc = ZERO
                for k, a in nz:
                    b = c[k]
                    if b:
                        acc = acc + a * b
                line.append(acc)
            out.append(line)
        return Mat._wrap(out, self.rows, other.cols)

    def apply(self, v: Sequence) -> Vector:
        return tuple(dot(r, v) for r in self._r)

    def __pow__(self, k: int) -> Mat:
        result = Mat.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def trace(self) -> GaussScalar:
        acc = ZERO
        for i in range(min(self.rows, self.cols)):
            acc = acc + self._r[i][i]
        return acc

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._r)

    def __eq__(self, other):
        return isinstance(other, Mat) and self.rows == other.rows and self.cols == other.cols and self._r == other._r

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self._r))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._r)
        return f"Mat({self.rows}x{self.cols}: {body})"

    def inverse(self) -> Mat:
        n = self.rows
        if not self.is_square:
            raise DomainError("inverse of a non-square matrix")
        aug = [self._r[i] + [ONE if j == i else ZERO for j in range(n)] for i in range(n)]
        red, piv = rref(aug, 2 * n)
        if piv[:n] != list(range(n)):
            raise DomainError("matrix is singular")
        return Mat._wrap([r[n:] for r in red[:n]], n, n)

    def det(self) -> GaussScalar:
        n = self.rows
        a = self.row_lists()
        d = ONE
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c]), None)
            if p is None:
                return ZERO
            if p != c:
                a[c], a[p] = a[p], a[c]
                d = -d
            pv = a[c][c]
            d = d * pv
            inv = pv.inverse()
            for r in range(c + 1, n):
                f = a[r][c]
                if f:
                    f = f * inv
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return d

    def rank(self) -> int:
        return len(rref(self.row_lists(), self.cols)[1])


# ---------------------------------------------------------------------------
# elimination and subspaces
# ---------------------------------------------------------------------------

def rref(rows: list[list[GaussScalar]], ncols: int) -> tuple[list[list[GaussScalar]], list[int]]:
    """Gauss-Jordan elimination over Q(i). Returns (nonzero rref rows, pivot columns)."""
    a = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(a)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((k for k in range(r, nrows) if a[k][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = a[r][c].inverse()
        pr = [x * inv for x in a[r]]
        a[r] = pr
        nz = [(j, x) for j, x in enumerate(pr) if x]
        for k in range(nrows):
            if k != r:
                f = a[k][c]
                if f:
                    row = a[k]
                    for j, x in nz:
                        row[j] = row[j] - f * x
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_kernel_image(m: Mat) -> tuple[int, list[Vector], list[Vector]]:
    """Rank, kernel basis and image basis (echelon form) of ``m``."""
    red, piv = rref(m.row_lists(), m.cols)
    rank = len(piv)
    kernel = []
    free = [j for j in range(m.cols) if j not in set(piv)]
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for row, p in zip(red, piv):
            v[p] = -row[f]
        kernel.append(tuple(v))
    image = span_basis(m.columns(), m.rows)
    return rank, span_basis(kernel, m.cols), image


def kernel(m: Mat) -> list[Vector]:
    return rank_kernel_image(m)[1]


def span_basis(vectors: Iterable[Sequence], dim: int) -> list[Vector]:
    """Canonical (reduced echelon) basis of the span of ``vectors``."""
    rows = [list(v) for v in vectors]
    if not rows:
        return []
    red, _ = rref(rows, dim)
    return [tuple(r) for r in red]


def subspace_dim(vectors: Iterable[Sequence], dim: int) -> int:
    return len(span_basis(vectors, dim))


def subspace_sum(a: Sequence[Sequence], b: Sequence[Sequence], dim: int) -> list[Vector]:
    return span_basis(list(a) + list(b), dim)


def subspace_contains(basis: Sequence[Sequence], v: Sequence, dim: int) -> bool:
    return len(span_basis(list(basis) + [v], dim)) == len(span_basis(basis, dim))


def subspace_le(a: Sequence[Sequence], b: Sequence[Sequence], dim: int) -> bool:
    """True when span(a) is contained in span(b)."""
    return len(span_basis(list(a) + list(b), dim)) == len(span_basis(b, dim))


def subspace_intersection(a: Sequence[Sequence], b: Sequence[Sequence], dim: int) -> list[Vector]:
    if not a or not b:
        return []
    # solve sum x_i a_i = sum y_j b_j
    cols = [tuple(v) for v in a] + [tuple(-x for x in v) for v in b]
    ker = kernel(Mat.from_columns(cols))
    out = []
    for k in ker:
        w = zero_vec(dim)
        for coef, v in zip(k[: len(a)], a):
            if coef:
                w = vadd(w, vscale(coef, v))
        out.append(w)
    return span_basis(out, dim)


def solve(a: Mat, b: Mat) -> Mat:
    """Unique-or-particular solution X of a @ X = b; DomainError if inconsistent."""
    n = a.cols
    aug = [ra + rb for ra, rb in zip(a.row_lists(), b.row_lists())]
    red, piv = rref(aug, n + b.cols)
    if piv and piv[-1] >= n:
        raise DomainError("inconsistent linear system")
    x = [[ZERO] * b.cols for _ in range(n)]
    for row, p in zip(red, piv):
        x[p] = row[n:]
    return Mat._wrap(x, n, b.cols)


def coordinates(basis: Sequence[Sequence], vectors: Sequence[Sequence]) -> list[Vector]:
    """Coordinates of each vector in the given (independent) basis."""
    if not vectors:
        return []
    if not basis:
        for v in vectors:
            if not is_zero_vec(v):
                raise DomainError("vector is not in the subspace")
        return [() for _ in vectors]
    sol = solve(Mat.from_columns(basis), Mat.from_columns(vectors))
    return sol.columns()


def restrict_map(m: Mat, basis: Sequence[Sequence]) -> Mat:
    """Matrix of m on the invariant subspace spanned by ``basis``, in basis coordinates."""
    if not basis:
        return Mat.zeros(0, 0)
    images = [m.apply(v) for v in basis]
    return Mat.from_columns(coordinates(basis, images))


def sparse_nullspace(equations: Iterable[Mapping[int, GaussScalar]], nvars: int) -> list[Vector]:
    """Basis of the solution space of sparse homogeneous equations {var: coef}.

    Pivot rows are normalized with their pivot the smallest variable they
    contain, so reducing a new equation only ever introduces larger variables.
    """
    pivots: dict[int, dict[int, GaussScalar]] = {}
    for eq in equations:
        row = {k: v for k, v in eq.items() if v}
        while row:
            hit = [k for k in row if k in pivots]
            if not hit:
                break
            k = min(hit)
            f = row[k]
            for j, x in pivots[k].items():
                val = row.get(j, ZERO) - f * x
                if val:
                    row[j] = val
                else:
                    row.pop(j, None)
        if not row:
            continue
        p = min(row)
        inv = row[p].inverse()
        pivots[p] = {j: x * inv for j, x in row.items()}
    free = [j for j in range(nvars) if j not in pivots]
    order = sorted(pivots, reverse=True)
    basis = []
    for f in free:
        x = {f: ONE}
        for p in order:
            acc = ZERO
            for j, c in pivots[p].items():
                if j != p and j in x:
                    acc = acc - c * x[j]
            if acc:
                x[p] = acc
        basis.append(tuple(x.get(j, ZERO) for j in range(nvars)))
    return span_basis(basis, nvars)


# ---------------------------------------------------------------------------
# characteristic polynomial
# ---------------------------------------------------------------------------

def _hessenberg(m: Mat) -> list[list[GaussScalar]]:
    n = m.rows
    h = m.row_lists()
    for k in range(1, n - 1):
        p = next((r for r in range(k, n) if h[r][k - 1]), None)
        if p is None:
            continue
        if p != k:
            h[k], h[p] = h[p], h[k]
            for row in h:
                row[k], row[p] = row[p], row[k]
        inv = h[k][k - 1].inverse()
        for r in range(k + 1, n):
            f = h[r][k - 1]
            if not f:
                continue
            f = f * inv
            # row_r -= f row_k ; col_k += f col_r (similarity)
            h[r] = [x - f * y for x, y in zip(h[r], h[k])]
            for row in h:
                if row[r]:
                    row[k] = row[k] + f * row[r]
    return h


def char_poly(m: Mat) -> Poly:
    """det(xI - m) via reduction to upper Hessenberg form."""
    if not m.is_square:
        raise DomainError("char_poly needs a square matrix")
    n = m.rows
    h = _hessenberg(m)
    polys = [Poly([1])]
    for k in range(n):
        p = Poly([-h[k][k], 1]) * polys[k]
        prod = ONE
        for i in range(k - 1, -1, -1):
            prod = prod * h[i + 1][i]
            if not prod:
                break
            coef = prod * h[i][k]
            if coef:
                p = p - polys[i] * coef
        polys.append(p)
    return polys[n]


# ---------------------------------------------------------------------------
# quadratic spaces and skew maps
# ---------------------------------------------------------------------------

class QuadSpace:
    """A vector space Q(i)^dim with a nondegenerate symmetric bilinear form."""

    __slots__ = ("dim", "gram", "_gram_inv")

    def __init__(self, gram: Mat | Sequence[Sequence]):
        if not isinstance(gram, Mat):
            gram = Mat(gram, cols=len(gram))
        if not gram.is_square:
            raise DomainError("Gram matrix must be square")
        if gram != gram.T():
            raise DomainError("Gram matrix must be symmetric")
        self.dim = gram.rows
        self.gram = gram
        try:
            self._gram_inv = gram.inverse() if self.dim else Mat.zeros(0)
        except DomainError:
            raise DomainError("Gram matrix is degenerate") from None

    @property
    def gram_inv(self) -> Mat:
        return self._gram_inv

    def B(self, x: Sequence, y: Sequence) -> GaussScalar:
        return dot(x, self.gram.apply(y))

    def phi(self, x: Sequence) -> Vector:
        """The covector B(x, .) in dual-basis coordinates."""
        return self.gram.apply(x)

    def phi_inv(self, alpha: Sequence) -> Vector:
        return self._gram_inv.apply(alpha)

    def restrict(self, basis: Sequence[Sequence]) -> QuadSpace:
        """Subspace with the restricted form; DomainError if it degenerates."""
        b = Mat.from_columns(basis, self.dim) if basis else Mat.zeros(self.dim, 0)
        return QuadSpace(b.T() @ self.gram @ b)

    def __eq__(self, other):
        return isinstance(other, QuadSpace) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        return f"QuadSpace(dim={self.dim})"


def orthogonal_sum_space(a: QuadSpace, b: QuadSpace) -> QuadSpace:
    return QuadSpace(Mat.block_diag([a.gram, b.gram]))


def is_skew(space: QuadSpace, m: Mat) -> bool:
    g = space.gram
    return (m.T() @ g + g @ m).is_zero()


class SkewMap:
    """A map C with B(Cx, y) + B(x, Cy) = 0."""

    __slots__ = ("space", "mat")

    def __init__(self, space: QuadSpace, mat: Mat | Sequence[Sequence]):
        if not isinstance(mat, Mat):
            mat = Mat(mat, cols=space.dim)
        if mat.rows != space.dim or mat.cols != space.dim:
            raise NotSkewError(f"map has shape {mat.rows}x{mat.cols}, space has dim {space.dim}")
        if not is_skew(space, mat):
            raise NotSkewError("map is not skew-symmetric with respect to the form")
        self.space = space
        self.mat = mat

    @property
    def dim(self) -> int:
        return self.space.dim

    def scaled(self, s) -> SkewMap:
        return SkewMap(self.space, self.mat.scale(s))

    def conjugated(self, u: Mat) -> SkewMap:
        """U C U^-1 (U should be an isometry of the space)."""
        return SkewMap(self.space, u @ self.mat @ u.inverse())

    def __eq__(self, other):
        return isinstance(other, SkewMap) and self.space == other.space and self.mat == other.mat

    def __repr__(self):
        return f"SkewMap(dim={self.dim})"


def adjoint_wrt(space: QuadSpace, m: Mat) -> Mat:
    """A* = G^-1 A^T G, the adjoint with respect to B."""
    return space.gram_inv @ m.T() @ space.gram


def orthogonal_complement(space: QuadSpace, basis: Sequence[Sequence]) -> list[Vector]:
    if not basis:
        return [unit_vec(space.dim, i) for i in range(space.dim)]
    rows = Mat([space.phi(w) for w in basis], cols=space.dim)
    return kernel(rows)


def cayley_orthogonal(space: QuadSpace, a: SkewMap) -> Mat:
    """U = (I - A)(I + A)^-1, an isometry of the space."""
    n = space.dim
    ident = Mat.identity(n)
    try:
        inv = (ident + a.mat).inverse()
    except DomainError:
        raise CayleyPoleError("I + A is singular") from None
    return (ident - a.mat) @ inv


def generalized_eigenspaces(m: Mat, roots: Sequence[GaussScalar]) -> dict[GaussScalar, list[Vector]]:
    n = m.rows
    out: dict[GaussScalar, list[Vector]] = {}
    total = 0
    for lam, mult in sorted(multiset(roots).items(), key=lambda kv: kv[0].sort_key()):
        shifted = m - Mat.identity(n).scale(lam)
        space = kernel(shifted ** mult)
        if len(space) != mult:
            raise InternalInvariantError(
                f"generalized eigenspace of {lam} has dim {len(space)}, expected {mult}"
            )
        out[lam] = space
        total += len(space)
    if total != n:
        raise InternalInvariantError("generalized eigenspaces do not span the space")
    return out
