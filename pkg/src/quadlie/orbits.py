"""O(n)-orbit invariants of skew maps.

A skew map C splits (Fitting) into a nilpotent part, classified by a
partition in which even parts come in pairs, and an invertible part,
classified by the triple (spectrum, multiplicities, Jordan data per
eigenvalue).  Two maps give isomorphic double extensions exactly when the
partitions agree and the triples agree up to a global nonzero scalar.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .dblext import canonical_space, is_admissible
from .errors import InternalInvariantError, NotInvertible, NotNilpotent
from .linalg import (
    Mat,
    QuadSpace,
    SkewMap,
    Vector,
    adjoint_wrt,
    char_poly,
    generalized_eigenspaces,
    is_skew,
    kernel,
    rank_kernel_image,
    restrict_map,
)
from .scalar import GaussScalar, gs, poly_roots_gaussian


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if any(p < 1 for p in parts):
            raise ValueError("partition parts must be positive")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def admissible(self) -> bool:
        return is_admissible(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class TripleEntry:
    lam: GaussScalar
    mult: int
    jordan: Partition


@dataclass(frozen=True)
class InvertibleTriple:
    """Entries sorted by eigenvalue (re, im); empty for the zero-dimensional map."""

    entries: tuple[TripleEntry, ...] = ()

    @classmethod
    def build(cls, data) -> InvertibleTriple:
        """From {lambda: (mult, jordan parts)} or an iterable of entries."""
        if isinstance(data, dict):
            items = [TripleEntry(gs(k), int(m), Partition(tuple(d))) for k, (m, d) in data.items()]
        else:
            items = list(data)
        items.sort(key=lambda e: e.lam.sort_key())
        return cls(tuple(items))

    @property
    def spectrum(self) -> tuple[GaussScalar, ...]:
        return tuple(e.lam for e in self.entries)

    @property
    def mult(self) -> dict[GaussScalar, int]:
        return {e.lam: e.mult for e in self.entries}

    @property
    def jordan(self) -> dict[GaussScalar, Partition]:
        return {e.lam: e.jordan for e in self.entries}

    @property
    def dim(self) -> int:
        return sum(e.mult for e in self.entries)

    def is_empty(self) -> bool:
        return not self.entries

    def scaled(self, mu) -> InvertibleTriple:
        mu = gs(mu)
        return InvertibleTriple.build(TripleEntry(e.lam * mu, e.mult, e.jordan) for e in self.entries)

    def validate(self) -> None:
        """Symmetry under lambda -> -lambda and Phi(d) = m."""
        table = {e.lam: e for e in self.entries}
        for e in self.entries:
            if not e.lam:
                raise InternalInvariantError("zero in the spectrum of an invertible map")
            other = table.get(-e.lam)
            if other is None or other.mult != e.mult or other.jordan != e.jordan:
                raise InternalInvariantError(f"spectrum is not symmetric at {e.lam}")
            if e.jordan.size != e.mult:
                raise InternalInvariantError(f"Jordan data at {e.lam} does not sum to its multiplicity")


@dataclass(frozen=True)
class OrbitInvariant:
    nilpotent: Partition
    invertible: InvertibleTriple

    @property
    def dim(self) -> int:
        return self.nilpotent.size + self.invertible.dim


@dataclass(frozen=True)
class FittingSplit:
    nil_part: SkewMap
    inv_part: SkewMap
    nil_basis: tuple[Vector, ...]
    inv_basis: tuple[Vector, ...]


def _empty_map() -> SkewMap:
    return SkewMap(QuadSpace(Mat.zeros(0)), Mat.zeros(0))


def _restricted(c: SkewMap, basis: Sequence[Vector]) -> SkewMap:
    if not basis:
        return _empty_map()
    return SkewMap(c.space.restrict(basis), restrict_map(c.mat, basis))


def fitting(c: SkewMap) -> FittingSplit:
    n = c.dim
    if n == 0:
        return FittingSplit(_empty_map(), _empty_map(), (), ())
    power = c.mat ** n
    _, ker, img = rank_kernel_image(power)
    if len(ker) + len(img) != n:
        raise InternalInvariantError("Fitting subspaces do not span the space")
    return FittingSplit(_restricted(c, ker), _restricted(c, img), tuple(ker), tuple(img))


def _rank_sequence(m: Mat, upto: int) -> list[int]:
    ranks = [m.rows]
    power = Mat.identity(m.rows)
    for _ in range(upto + 1):
        power = power @ m
        ranks.append(power.rank())
    return ranks


def _partition_from_ranks(ranks: list[int]) -> Partition:
    parts = []
    for s in range(1, len(ranks) - 1):
        k = ranks[s - 1] - 2 * ranks[s] + ranks[s + 1]
        parts.extend([s] * k)
    return Partition(tuple(parts))


def jordan_partition(m: Mat) -> Partition:
    """Jordan block sizes of a nilpotent matrix."""
    n = m.rows
    if n == 0:
        return Partition(())
    ranks = _rank_sequence(m, n)
    if ranks[n] != 0:
        raise NotNilpotent("map is not nilpotent")
    return _partition_from_ranks(ranks)


def nilpotent_partition(c: SkewMap, require_nilpotent: bool = True) -> Partition:
    """Partition of the nilpotent map c, or of its Fitting-nilpotent part when not required."""
    n = c.dim
    if n and not (c.mat ** n).is_zero():
        if require_nilpotent:
            raise NotNilpotent("map is not nilpotent")
        c = fitting(c).nil_part
    part = jordan_partition(c.mat)
    if not part.admissible:
        raise InternalInvariantError(f"partition {part} is not admissible; input was not skew")
    return part


def enumerate_partitions(n: int) -> list[tuple[int, ...]]:
    out = []

    def rec(remaining, largest, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for k in range(min(remaining, largest), 0, -1):
            prefix.append(k)
            rec(remaining - k, k, prefix)
            prefix.pop()

    rec(n, n, [])
    return out


def enumerate_Pprime(n: int) -> list[Partition]:
    """Partitions of n whose even parts have even multiplicity, lexicographically sorted."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return sorted(Partition(p) for p in enumerate_partitions(n) if is_admissible(p))


def eigenvalues(c: SkewMap) -> list[GaussScalar]:
    return poly_roots_gaussian(char_poly(c.mat))


def sn_split(c: SkewMap) -> tuple[SkewMap, SkewMap]:
    """Semi-simple and nilpotent parts, c = s + n with s n = n s."""
    n = c.dim
    if n == 0:
        return c, c
    spaces = generalized_eigenspaces(c.mat, eigenvalues(c))
    cols, diag = [], []
    for lam, basis in spaces.items():
        cols.extend(basis)
        diag.extend([lam] * len(basis))
    t = Mat.from_columns(cols)
    s = t @ Mat.diag(diag) @ t.inverse()
    nil = c.mat - s
    if not (is_skew(c.space, s) and is_skew(c.space, nil)):
        raise InternalInvariantError("semi-simple or nilpotent part is not skew")
    return SkewMap(c.space, s), SkewMap(c.space, nil)


def invertible_triple(c: SkewMap) -> InvertibleTriple:
    n = c.dim
    if n == 0:
        return InvertibleTriple()
    if kernel(c.mat):
        raise NotInvertible("map is singular")
    roots = eigenvalues(c)
    spaces = generalized_eigenspaces(c.mat, roots)
    entries = []
    for lam, basis in spaces.items():
        shifted = restrict_map(c.mat, basis) - Mat.identity(len(basis)).scale(lam)
        entries.append(TripleEntry(lam, len(basis), jordan_partition(shifted)))
    triple = InvertibleTriple.build(entries)
    triple.validate()
    return triple


def orbit_invariant(c: SkewMap) -> OrbitInvariant:
    split = fitting(c)
    return OrbitInvariant(
        nilpotent_partition(split.nil_part),
        invertible_triple(split.inv_part),
    )


def projective_equal(a: OrbitInvariant, b: OrbitInvariant) -> bool:
    """Equal partitions and triples equal up to one global nonzero scalar."""
    if a.nilpotent != b.nilpotent:
        return False
    ta, tb = a.invertible, b.invertible
    if ta.is_empty() or tb.is_empty():
        return ta.is_empty() and tb.is_empty()
    if len(ta.entries) != len(tb.entries):
        return False
    anchor = ta.entries[0].lam
    return any(ta.scaled(lam / anchor) == tb for lam in tb.spectrum)


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------

def triple_representatives(triple: InvertibleTriple) -> list[TripleEntry]:
    """One eigenvalue out of each pair {lambda, -lambda}: the larger by (re, im)."""
    return [e for e in triple.entries if (-e.lam).sort_key() < e.lam.sort_key()]


def witness_map(triple: InvertibleTriple) -> SkewMap:
    """S + N on canonical C^(2p): S diagonal, N = N+ - N+^* with Jordan blocks on V_lambda."""
    triple.validate()
    reps = triple_representatives(triple)
    p = sum(e.mult for e in reps)
    diag, blocks = [], []
    for e in reps:
        diag.extend([e.lam] * e.mult)
        for size in e.jordan.parts:
            b = Mat.zeros(size).row_lists()
            for i in range(size - 1):
                b[i][i + 1] = gs(1)
            blocks.append(Mat(b, cols=size))
    a = Mat.block_diag(blocks) if blocks else Mat.zeros(0)
    s = Mat.diag(diag + [-x for x in diag])
    nplus = Mat.block_diag([a, Mat.zeros(p)])
    space = canonical_space(2 * p)
    nmat = nplus - adjoint_wrt(space, nplus)
    return SkewMap(space, s + nmat)


def enumerate_triples(p: int, values: Sequence) -> list[InvertibleTriple]:
    """All triples on C^(2p) whose eigenvalue pairs are drawn from +-values."""
    reps = []
    for v in values:
        v = gs(v)
        if v and not any(v == r or v == -r for r in reps):
            reps.append(v)
    out = []

    def rec(idx, left, chosen):
        if left == 0:
            entries = []
            for lam, part in chosen:
                m = sum(part)
                entries.append(TripleEntry(lam, m, Partition(part)))
                entries.append(TripleEntry(-lam, m, Partition(part)))
            out.append(InvertibleTriple.build(entries))
            return
        if idx == len(reps):
            return
        rec(idx + 1, left, chosen)
        for m in range(1, left + 1):
            for part in enumerate_partitions(m):
                rec(idx + 1, left - m, chosen + [(reps[idx], part)])

    rec(0, p, [])
    return out


__all__ = [
    "Partition",
    "TripleEntry",
    "InvertibleTriple",
    "OrbitInvariant",
    "FittingSplit",
    "fitting",
    "nilpotent_partition",
    "jordan_partition",
    "enumerate_Pprime",
    "enumerate_partitions",
    "sn_split",
    "invertible_triple",
    "orbit_invariant",
    "projective_equal",
    "witness_map",
    "enumerate_triples",
]
