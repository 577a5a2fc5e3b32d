"""Independent brute-force oracles and random generators for the test suite.

The oracles deliberately avoid the library's own algorithms: determinants by
permutation expansion, characteristic polynomials by interpolation, Jacobi by
full triple scans with explicit bracket expansion, partitions by unfiltered
enumeration.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from fractions import Fraction

from quadlie.dblext import canonical_space, direct_sum_maps, partition_map
from quadlie.linalg import Mat, QuadSpace, SkewMap, cayley_orthogonal
from quadlie.orbits import InvertibleTriple, Partition, TripleEntry, witness_map
from quadlie.qla import QLA
from quadlie.scalar import ONE, ZERO, GaussScalar, Poly
from quadlie.scalar import gs as gs_
from quadlie.errors import CayleyPoleError


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_leibniz(rows) -> GaussScalar:
    n = len(rows)
    total = ZERO
    for perm in itertools.permutations(range(n)):
        term = ONE if perm_sign(perm) > 0 else -ONE
        for i, j in enumerate(perm):
            term = term * rows[i][j]
            if not term:
                break
        total = total + term
    return total


def char_poly_interp(m: Mat) -> Poly:
    """det(xI - m) by evaluation at 0..n and Lagrange interpolation."""
    n = m.rows
    xs = [GaussScalar(k) for k in range(n + 1)]
    ys = []
    for x in xs:
        rows = [[(x if i == j else ZERO) - m[i, j] for j in range(n)] for i in range(n)]
        ys.append(det_leibniz(rows) if n <= 6 else Mat(rows, cols=n).det())
    result = Poly([])
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = Poly([1])
        denom = ONE
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * Poly([-xj, 1])
                denom = denom * (xi - xj)
        result = result + basis * (yi / denom)
    return result


def all_partitions(n: int):
    """Every partition of n, generated from compositions (slow, independent)."""
    seen = set()
    for cuts in itertools.product([0, 1], repeat=max(n - 1, 0)):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        seen.add(tuple(sorted(parts, reverse=True)))
    return sorted(seen)


def pprime_oracle(n: int):
    return sorted(p for p in all_partitions(n) if all(v % 2 or k % 2 == 0 for v, k in Counter(p).items()))


def jacobi_oracle(g: QLA) -> bool:
    n = g.dim
    e = [tuple(ONE if k == i else ZERO for k in range(n)) for i in range(n)]
    for i, j, k in itertools.product(range(n), repeat=3):
        s = g.bracket(g.bracket(e[i], e[j]), e[k])
        t = g.bracket(g.bracket(e[j], e[k]), e[i])
        u = g.bracket(g.bracket(e[k], e[i]), e[j])
        if any(a + b + c for a, b, c in zip(s, t, u)):
            return False
    return True


def invariance_oracle(g: QLA) -> bool:
    n = g.dim
    e = [tuple(ONE if k == i else ZERO for k in range(n)) for i in range(n)]
    return all(
        g.B(g.bracket(e[i], e[j]), e[k]) == g.B(e[i], g.bracket(e[j], e[k]))
        for i, j, k in itertools.product(range(n), repeat=3)
    )


def nilpotent_partition_oracle(m: Mat):
    """Jordan sizes via dims of ker m^k (independent of the rank formula ordering)."""
    n = m.rows
    kdims = [0]
    p = Mat.identity(n)
    for _ in range(n):
        p = p @ m
        kdims.append(n - p.rank())
    # number of blocks of size >= k is kdims[k] - kdims[k-1]
    at_least = [kdims[k] - kdims[k - 1] for k in range(1, n + 1)]
    parts = []
    for k in range(1, n + 1):
        exact = at_least[k - 1] - (at_least[k] if k < n else 0)
        parts.extend([k] * exact)
    return tuple(sorted(parts, reverse=True))


def triples_projectively_equal(a: InvertibleTriple, b: InvertibleTriple) -> bool:
    """Try every ratio of eigenvalues as the scalar."""
    if a.is_empty() or b.is_empty():
        return a.is_empty() and b.is_empty()
    target = {(e.lam, e.mult, e.jordan) for e in b.entries}
    for la in a.spectrum:
        for lb in b.spectrum:
            mu = lb / la
            if {(e.lam * mu, e.mult, e.jordan) for e in a.entries} == target:
                return True
    return False


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def rand_rat(rng: random.Random, num: int = 5, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_scalar(rng: random.Random, num: int = 5, den: int = 3, gaussian: bool = True) -> GaussScalar:
    re = rand_rat(rng, num, den)
    im = rand_rat(rng, num, den) if gaussian and rng.random() < 0.5 else 0
    return GaussScalar(re, im)


def rand_nonzero(rng: random.Random, num: int = 3, den: int = 3) -> GaussScalar:
    while True:
        z = rand_scalar(rng, num, den)
        if z:
            return z


def rand_matrix(rng: random.Random, rows: int, cols: int | None = None, num: int = 4) -> Mat:
    cols = rows if cols is None else cols
    return Mat([[rand_scalar(rng, num, 2) for _ in range(cols)] for _ in range(rows)], cols=cols)


def rand_invertible(rng: random.Random, n: int, num: int = 3) -> Mat:
    while True:
        m = rand_matrix(rng, n, num=num)
        if m.det():
            return m


def rand_gram(rng: random.Random, n: int) -> QuadSpace:
    while True:
        rows = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                v = GaussScalar(rng.randint(-3, 3), rng.choice([0, 0, 1, -1]))
                rows[i][j] = rows[j][i] = v
        m = Mat(rows, cols=n)
        if m.det():
            return QuadSpace(m)


def rand_antisym(rng: random.Random, n: int, num: int = 3) -> Mat:
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rand_scalar(rng, num, 2)
            rows[i][j] = v
            rows[j][i] = -v
    return Mat(rows, cols=n)


def rand_skew(rng: random.Random, space: QuadSpace, num: int = 3) -> SkewMap:
    """G^-1 S with S antisymmetric is skew for any Gram G."""
    return SkewMap(space, space.gram_inv @ rand_antisym(rng, space.dim, num))


def rank_two_skew(space: QuadSpace, u, v) -> Mat:
    """x -> B(v, x) u - B(u, x) v."""
    gu, gv = space.phi(u), space.phi(v)
    n = space.dim
    return Mat([[u[i] * gv[j] - v[i] * gu[j] for j in range(n)] for i in range(n)], cols=n)


def rand_isometry(rng: random.Random, space: QuadSpace, num: int = 2) -> Mat:
    while True:
        a = rand_skew(rng, space, num)
        try:
            return cayley_orthogonal(space, a)
        except CayleyPoleError:
            continue


def rand_admissible_partition(rng: random.Random, n: int) -> Partition:
    from quadlie.orbits import enumerate_Pprime

    return rng.choice(enumerate_Pprime(n))


def rand_triple(rng: random.Random, p: int, values=(1, 2, 3, "i", "1+i")) -> InvertibleTriple:
    """Random triple on C^(2p) with eigenvalue pairs chosen from +-values."""
    pool = [gs_(v) for v in values]
    r = rng.randint(1, min(p, len(pool)))
    lams = rng.sample(pool, r)
    cuts = sorted(rng.sample(range(1, p), r - 1))
    mults = [b - a for a, b in zip([0] + cuts, cuts + [p])]
    entries = []
    for lam, m in zip(lams, mults):
        parts = Partition(tuple(rng.choice(_partitions_cache(m))))
        entries.append(TripleEntry(lam, m, parts))
        entries.append(TripleEntry(-lam, m, parts))
    return InvertibleTriple.build(entries)


_PCACHE: dict = {}


def _partitions_cache(m: int):
    if m not in _PCACHE:
        _PCACHE[m] = all_partitions(m)
    return _PCACHE[m]


def orbit_data_map(nil: Partition | None, triple: InvertibleTriple | None) -> SkewMap:
    """Block-orthogonal sum of a partition map and a triple witness."""
    blocks = []
    if nil is not None and nil.size:
        blocks.append(partition_map(nil.parts))
    if triple is not None and not triple.is_empty():
        blocks.append(witness_map(triple))
    if not blocks:
        raise ValueError("empty orbit data")
    return direct_sum_maps(blocks)


def rand_orbit_map(rng: random.Random, max_dim: int = 8):
    """(skew map, nilpotent partition, triple) with total dim between 2 and max_dim."""
    while True:
        k = rng.randint(0, max_dim)
        p = rng.randint(0, (max_dim - k) // 2)
        if k + 2 * p >= 2:
            break
    nil = rand_admissible_partition(rng, k) if k else Partition(())
    triple = rand_triple(rng, p) if p else InvertibleTriple()
    return orbit_data_map(nil, triple), nil, triple


def change_basis(c: SkewMap, p: Mat) -> SkewMap:
    """Same map written in the basis given by the columns of p."""
    space = QuadSpace(p.T() @ c.space.gram @ p)
    return SkewMap(space, p.inverse() @ c.mat @ p)


def canonical(n: int) -> QuadSpace:
    return canonical_space(n)
