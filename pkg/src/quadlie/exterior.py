"""Alternating forms on Q(i)^n: wedge, interior product, super-Poisson bracket.

A k-form is stored sparsely as ``{(i1 < ... < ik): coefficient}`` in the
basis e*_i1 ^ ... ^ e*_ik, with the determinant convention for evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import TYPE_CHECKING, Mapping, Sequence

from .errors import NotInvariantError, ZeroDegreeError
from .linalg import QuadSpace, unit_vec
from .scalar import ZERO, GaussScalar, gs

if TYPE_CHECKING:
    from .qla import QLA


def _sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...] | None]:
    """Sign of the sorting permutation and the sorted tuple (None on repeats)."""
    items = list(idx)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(items, items[1:]):
        if a == b:
            return 0, None
    return sign, tuple(items)


@dataclass(frozen=True)
class AltForm:
    space_dim: int
    degree: int
    terms: Mapping[tuple[int, ...], GaussScalar] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, c in self.terms.items():
            key = tuple(key)
            if len(key) != self.degree or any(a >= b for a, b in zip(key, key[1:])):
                raise ValueError(f"index tuple {key} is not strictly increasing of length {self.degree}")
            if key and not (0 <= key[0] and key[-1] < self.space_dim):
                raise ValueError(f"index tuple {key} out of range")
            c = gs(c)
            if c:
                clean[key] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def zero(cls, n: int, k: int) -> AltForm:
        return cls(n, k, {})

    @classmethod
    def covector(cls, alpha: Sequence) -> AltForm:
        return cls(len(alpha), 1, {(i,): a for i, a in enumerate(alpha) if a})

    @classmethod
    def from_unsorted(cls, n: int, k: int, terms: Mapping[tuple[int, ...], object]) -> AltForm:
        acc: dict[tuple[int, ...], GaussScalar] = {}
        for idx, c in terms.items():
            sign, key = _sort_sign(idx)
            if key is None:
                continue
            acc[key] = acc.get(key, ZERO) + (gs(c) if sign > 0 else -gs(c))
        return cls(n, k, acc)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, idx: Sequence[int]) -> GaussScalar:
        """Value on the basis tuple (e_idx...), any order."""
        sign, key = _sort_sign(idx)
        if key is None:
            return ZERO
        c = self.terms.get(key, ZERO)
        return c if sign > 0 else -c

    def __add__(self, other: AltForm) -> AltForm:
        self._same(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc.get(k, ZERO) + c
        return AltForm(self.space_dim, self.degree, acc)

    def __neg__(self) -> AltForm:
        return AltForm(self.space_dim, self.degree, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: AltForm) -> AltForm:
        return self + (-other)

    def scale(self, s) -> AltForm:
        s = gs(s)
        return AltForm(self.space_dim, self.degree, {k: s * c for k, c in self.terms.items()})

    def _same(self, other: AltForm):
        if self.space_dim != other.space_dim or self.degree != other.degree:
            raise ValueError("forms live in different spaces or degrees")

    def __eq__(self, other):
        return (
            isinstance(other, AltForm)
            and self.space_dim == other.space_dim
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.space_dim, self.degree, tuple(sorted(self.terms.items()))))

    def vector(self, keys: Sequence[tuple[int, ...]]) -> tuple:
        return tuple(self.terms.get(k, ZERO) for k in keys)


def wedge(a: AltForm, b: AltForm) -> AltForm:
    if a.space_dim != b.space_dim:
        raise ValueError("forms live in different spaces")
    acc: dict[tuple[int, ...], GaussScalar] = {}
    for ka, ca in a.terms.items():
        sa = set(ka)
        for kb, cb in b.terms.items():
            if sa.intersection(kb):
                continue
            # inversions between the two blocks
            inv = sum(1 for x in ka for y in kb if x > y)
            key = tuple(sorted(ka + kb))
            c = ca * cb
            acc[key] = acc.get(key, ZERO) + (c if inv % 2 == 0 else -c)
    return AltForm(a.space_dim, a.degree + b.degree, acc)


def contract(v: Sequence, a: AltForm) -> AltForm:
    """Interior product: (i_v a)(x2, ..., xk) = a(v, x2, ..., xk)."""
    if a.degree == 0:
        raise ZeroDegreeError("cannot contract a 0-form")
    if len(v) != a.space_dim:
        raise ValueError("vector length does not match the form's space")
    acc: dict[tuple[int, ...], GaussScalar] = {}
    for key, c in a.terms.items():
        for m, idx in enumerate(key):
            vi = v[idx]
            if not vi:
                continue
            rest = key[:m] + key[m + 1:]
            term = c * vi
            acc[rest] = acc.get(rest, ZERO) + (term if m % 2 == 0 else -term)
    return AltForm(a.space_dim, a.degree - 1, acc)


def contract_basis(i: int, a: AltForm) -> AltForm:
    return contract(unit_vec(a.space_dim, i), a)


def super_poisson(space: QuadSpace, a: AltForm, b: AltForm) -> AltForm:
    """{a, b} = (-1)^(k+1) sum_j i_{e_j}(a) ^ i_{w_j}(b) with B(e_i, w_j) = delta_ij."""
    n = space.dim
    if a.space_dim != n or b.space_dim != n:
        raise ValueError("forms do not live on this space")
    out_deg = a.degree + b.degree - 2
    if a.degree == 0 or b.degree == 0:
        return AltForm.zero(n, max(out_deg, 0))
    acc = AltForm.zero(n, out_deg)
    ginv = space.gram_inv
    for j in range(n):
        ia = contract_basis(j, a)
        if ia.is_zero():
            continue
        ib = contract(ginv.col(j), b)
        if ib.is_zero():
            continue
        acc = acc + wedge(ia, ib)
    return acc if a.degree % 2 == 1 else -acc


def threeform_from_brackets(g: QLA) -> AltForm:
    """I(E_i, E_j, E_k) = B([E_i, E_j], E_k)."""
    if not g.check_invariant_form():
        raise NotInvariantError("bilinear form is not invariant")
    n = g.dim
    terms = {}
    for i in range(n):
        for j in range(i + 1, n):
            c = g.bracket_basis(i, j)
            if not any(c):
                continue
            low = g.space.phi(c)
            for k in range(j + 1, n):
                if low[k]:
                    terms[(i, j, k)] = low[k]
    return AltForm(n, 3, terms)


def brackets_from_threeform(space: QuadSpace, i3: AltForm) -> QLA:
    """[E_i, E_j] = phi^-1(I(E_i, E_j, .))."""
    from .qla import QLA

    if i3.degree != 3 or i3.space_dim != space.dim:
        raise ValueError("expected a 3-form on the given space")
    n = space.dim
    structure = {}
    for i in range(n):
        for j in range(i + 1, n):
            low = tuple(i3.coeff((i, j, k)) for k in range(n))
            if any(low):
                structure[(i, j)] = space.phi_inv(low)
    return QLA(space, structure)


def pair_contraction(i: int, j: int, form: AltForm) -> AltForm:
    """i_{E_i ^ E_j}(form), chosen so that the result is form(E_i, E_j, ...)."""
    return contract_basis(j, contract_basis(i, form))


def degree_keys(n: int, k: int) -> list[tuple[int, ...]]:
    return list(combinations(range(n), k))
