"""Exact arithmetic over the Gaussian rationals Q(i) and Gaussian integers Z[i].

Rationals are ``gmpy2.mpq`` (always in lowest terms, positive denominator).
The text form accepted by :func:`gauss_parse` and produced by
:func:`gauss_print` is the wire format used by every file and report::

    RAT   := "-"? digits ("/" digits)?
    GAUSS := RAT | RAT ("+"|"-") RAT "i" | "-"? RAT "i" | ("+"|"-")? "i"

``1+i`` (coefficient omitted after the sign) is also accepted on input.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from gmpy2 import iroot, mpq, mpz

from .errors import FactorBoundExceeded, ParseError, SplitFailure

DEFAULT_FACTOR_BOUND = 10**12


def factor_bound() -> int:
    """Norm bound for Gaussian factorization; ``QUADLIE_FACTOR_BOUND`` overrides."""
    raw = os.environ.get("QUADLIE_FACTOR_BOUND")
    return int(raw) if raw else DEFAULT_FACTOR_BOUND


class GaussScalar:
    """An element ``re + im*i`` of Q(i). Treat instances as immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = mpq(re)
        self.im = mpq(im)

    @staticmethod
    def _new(re, im) -> GaussScalar:
        z = object.__new__(GaussScalar)
        z.re = re
        z.im = im
        return z

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GaussScalar):
            if isinstance(other, (int, type(_Q0))):
                return GaussScalar._new(self.re + other, self.im)
            return NotImplemented
        return GaussScalar._new(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussScalar):
            if isinstance(other, (int, type(_Q0))):
                return GaussScalar._new(self.re - other, self.im)
            return NotImplemented
        return GaussScalar._new(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return GaussScalar._new(-self.re, -self.im)

    def __mul__(self, other):
        if not isinstance(other, GaussScalar):
            if isinstance(other, (int, type(_Q0))):
                return GaussScalar._new(self.re * other, self.im * other)
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            if not d:
                return GaussScalar._new(a * c, _Q0)
            return GaussScalar._new(a * c, a * d)
        if not d:
            return GaussScalar._new(a * c, b * c)
        return GaussScalar._new(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> GaussScalar:
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("inverse of zero in Q(i)")
            return GaussScalar._new(1 / a, _Q0)
        n = a * a + b * b
        return GaussScalar._new(a / n, -b / n)

    def __truediv__(self, other):
        if not isinstance(other, GaussScalar):
            if isinstance(other, (int, type(_Q0))):
                if not other:
                    raise ZeroDivisionError("division by zero in Q(i)")
                return GaussScalar._new(self.re / other, self.im / other)
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussScalar(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparisons ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussScalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, type(_Q0))):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def sort_key(self):
        return (self.re, self.im)

    # misc -----------------------------------------------------------------
    def conjugate(self) -> GaussScalar:
        return GaussScalar._new(self.re, -self.im)

    def norm(self):
        """Squared absolute value, a rational."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"GaussScalar({gauss_print(self)!r})"

    def __str__(self):
        return gauss_print(self)


_Q0 = mpq(0)
ZERO = GaussScalar._new(mpq(0), mpq(0))
ONE = GaussScalar._new(mpq(1), mpq(0))
I_UNIT = GaussScalar._new(mpq(0), mpq(1))


def gs(value) -> GaussScalar:
    """Coerce an int, rational, GaussScalar or scalar string to a GaussScalar."""
    if isinstance(value, GaussScalar):
        return value
    if isinstance(value, str):
        return gauss_parse(value)
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, complex):
        raise TypeError("floating complex values are not exact")
    if isinstance(value, float):
        raise TypeError("floats are not exact scalars")
    return GaussScalar(value)


# ---------------------------------------------------------------------------
# text form
# ---------------------------------------------------------------------------

def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def _parse_digits(text: str, pos: int) -> tuple[int, int]:
    start = pos
    while pos < len(text) and "0" <= text[pos] <= "9":
        pos += 1
    if pos == start:
        raise ParseError("expected digits", _byte_offset(text, start))
    return int(text[start:pos]), pos


def _parse_rat(text: str, pos: int) -> tuple[mpq, int]:
    neg = False
    if pos < len(text) and text[pos] == "-":
        neg = True
        pos += 1
    num, pos = _parse_digits(text, pos)
    den = 1
    if pos < len(text) and text[pos] == "/":
        den_pos = pos + 1
        den, pos = _parse_digits(text, den_pos)
        if den == 0:
            raise ParseError("zero denominator", _byte_offset(text, den_pos))
    value = mpq(num, den)
    return (-value if neg else value), pos


def gauss_parse(text: str) -> GaussScalar:
    """Parse the exact scalar text form; raises ParseError with a byte offset."""
    if not isinstance(text, str):
        raise ParseError(f"scalar must be a string, got {type(text).__name__}", 0)
    n = len(text)
    if n == 0:
        raise ParseError("empty scalar", 0)

    def expect_end(pos):
        if pos != n:
            raise ParseError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))

    # ("+"|"-")? "i"
    if text in ("i", "+i", "-i"):
        return GaussScalar(0, -1 if text[0] == "-" else 1)

    first, pos = _parse_rat(text, 0)
    if pos == n:
        return GaussScalar(first, 0)
    ch = text[pos]
    if ch == "i":
        expect_end(pos + 1)
        return GaussScalar(0, first)
    if ch in "+-":
        sign = -1 if ch == "-" else 1
        pos += 1
        if pos < n and text[pos] == "i":
            expect_end(pos + 1)
            return GaussScalar(first, sign)
        second, pos = _parse_rat(text, pos)
        if pos >= n or text[pos] != "i":
            raise ParseError("expected 'i' after imaginary part", _byte_offset(text, pos))
        expect_end(pos + 1)
        return GaussScalar(first, sign * second)
    raise ParseError(f"unexpected character {ch!r}", _byte_offset(text, pos))


def _rat_str(q) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def gauss_print(z: GaussScalar) -> str:
    re, im = z.re, z.im
    if not im:
        return _rat_str(re)
    if not re:
        if im == 1:
            return "i"
        if im == -1:
            return "-i"
        return _rat_str(im) + "i"
    sign = "+" if im > 0 else "-"
    return f"{_rat_str(re)}{sign}{_rat_str(abs(im))}i"


# ---------------------------------------------------------------------------
# Gaussian integers
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class GaussInt:
    re: int
    im: int

    def __mul__(self, other: GaussInt) -> GaussInt:
        return GaussInt(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def exact_div(self, other: GaussInt) -> GaussInt | None:
        """Quotient if ``other`` divides ``self`` in Z[i], else None."""
        n = other.norm()
        # self * conj(other) / norm(other)
        a = self.re * other.re + self.im * other.im
        b = self.im * other.re - self.re * other.im
        if a % n or b % n:
            return None
        return GaussInt(a // n, b // n)

    def normalized(self) -> GaussInt:
        """Associate in the first quadrant: re > 0, im >= 0 (zero maps to zero)."""
        z = self
        for _ in range(4):
            if z.re > 0 and z.im >= 0:
                return z
            z = GaussInt(-z.im, z.re)  # multiply by i
        return z

    def to_scalar(self) -> GaussScalar:
        return GaussScalar(self.re, self.im)


UNITS = (GaussInt(1, 0), GaussInt(0, 1), GaussInt(-1, 0), GaussInt(0, -1))


def _sum_of_two_squares(p: int) -> tuple[int, int]:
    """For a prime p = 1 mod 4 return (a, b), a > b > 0, with a^2 + b^2 = p."""
    # find a quadratic non-residue c; then c^((p-1)/4) is a square root of -1
    c = 2
    while pow(c, (p - 1) // 2, p) != p - 1:
        c += 1
    r = pow(c, (p - 1) // 4, p)
    # Euclid on (p, r) stopping below sqrt(p)
    a, b = p, r
    limit = math.isqrt(p)
    while b > limit:
        a, b = b, a % b
    x = b
    y = math.isqrt(p - x * x)
    return (max(x, y), min(x, y))


def _rational_prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def gauss_factor(z: GaussInt, bound: int | None = None) -> list[tuple[GaussInt, int]]:
    """Factor a nonzero Gaussian integer into first-quadrant Gaussian primes.

    The product of ``prime**mult`` over the result equals ``z`` up to a unit.
    Output is sorted by (norm, re, im).
    """
    if z.re == 0 and z.im == 0:
        raise ValueError("cannot factor zero")
    bound = factor_bound() if bound is None else bound
    norm = z.norm()
    if norm > bound:
        raise FactorBoundExceeded(f"norm {norm} exceeds factorization bound {bound}")
    factors: dict[GaussInt, int] = {}
    rest = z
    for p, _ in sorted(_rational_prime_factors(norm).items()):
        if p == 2:
            candidates = [GaussInt(1, 1)]
        elif p % 4 == 3:
            candidates = [GaussInt(p, 0)]
        else:
            a, b = _sum_of_two_squares(p)
            candidates = [GaussInt(a, b), GaussInt(b, a)]
        for q in candidates:
            while True:
                quotient = rest.exact_div(q)
                if quotient is None:
                    break
                factors[q] = factors.get(q, 0) + 1
                rest = quotient
    assert rest.norm() == 1, rest
    return sorted(factors.items(), key=lambda item: (item[0].norm(), item[0].re, item[0].im))


def gauss_divisors(z: GaussInt, bound: int | None = None) -> list[GaussInt]:
    """All first-quadrant divisors of z (one representative per associate class)."""
    divisors = [GaussInt(1, 0)]
    for prime, mult in gauss_factor(z, bound):
        grown = []
        for d in divisors:
            power = d
            grown.append(power)
            for _ in range(mult):
                power = power * prime
                grown.append(power)
        divisors = grown
    return sorted({d.normalized() for d in divisors})


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Univariate polynomial over Q(i); ``coeffs`` lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [gs(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[GaussScalar, ...] = tuple(cs)

    @classmethod
    def from_roots(cls, roots: Iterable) -> Poly:
        p = cls([1])
        for r in roots:
            p = p * cls([-gs(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> GaussScalar:
        return self.coeffs[-1]

    def __call__(self, x) -> GaussScalar:
        x = gs(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: Poly) -> Poly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (ZERO,) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            s = gs(other)
            return Poly(c * s for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv_lead = other.lead().inverse()
        quot = [ZERO] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            coef = rem[k + dq] * inv_lead
            quot[k] = coef
            if coef:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - coef * b
        return Poly(quot), Poly(rem[:dq])

    def monic(self) -> Poly:
        inv = self.lead().inverse()
        return Poly(c * inv for c in self.coeffs)

    def derivative(self) -> Poly:
        return Poly(c * k for k, c in enumerate(self.coeffs) if k)

    def __repr__(self):
        return f"Poly([{', '.join(gauss_print(c) for c in self.coeffs)}])"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                cs = gauss_print(c)
                if c.re and c.im:
                    cs = f"({cs})"
                terms.append(cs + ("*" + mono if mono else ""))
        return " + ".join(terms).replace("+ -", "- ")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


def gauss_gcd(a: GaussInt, b: GaussInt) -> GaussInt:
    """Euclid in Z[i] with nearest-integer quotients; result normalized to the first quadrant."""
    while b.re or b.im:
        n = b.norm()
        # a * conj(b) / n, rounded to the nearest Gaussian integer
        x = a.re * b.re + a.im * b.im
        y = a.im * b.re - a.re * b.im
        q = GaussInt((2 * x + n) // (2 * n), (2 * y + n) // (2 * n))
        prod = q * b
        a, b = b, GaussInt(a.re - prod.re, a.im - prod.im)
    return a.normalized()


def gauss_iroot(w: GaussInt, k: int) -> GaussInt | None:
    """A z in Z[i] with z**k equal to w up to a unit, or None.

    Only gcds and integer roots are used: the (1+i)-part and the rational
    content are split off, and the odd primitive remainder z'**k is coprime
    to its conjugate, so z' = gcd(w', N(z')).
    """
    if k == 1:
        return w
    ramified = GaussInt(1, 1)
    rest, e = w, 0
    while (q := rest.exact_div(ramified)) is not None:
        rest, e = q, e + 1
    if e % k:
        return None
    content = math.gcd(rest.re, rest.im)
    cz, exact = iroot(mpz(content), k)
    if not exact:
        return None
    prim = GaussInt(rest.re // content, rest.im // content)
    m, exact = iroot(mpz(prim.norm()), k)
    if not exact:
        return None
    z = gauss_gcd(prim, GaussInt(int(m), 0)) * GaussInt(int(cz), 0)
    for _ in range(e // k):
        z = z * ramified
    power = GaussInt(1, 0)
    for _ in range(k):
        power = power * z
    return z if power.normalized() == w.normalized() else None


def _gauss_fraction(c: GaussScalar) -> tuple[GaussInt, GaussInt]:
    """c as num/den over Z[i] in lowest terms."""
    d = int(c.re.denominator * c.im.denominator // math.gcd(int(c.re.denominator), int(c.im.denominator)))
    num = GaussInt(int(c.re * d), int(c.im * d))
    g = gauss_gcd(num, GaussInt(d, 0))
    return num.exact_div(g), GaussInt(d, 0).exact_div(g)


_SMALL_PRIME_NORM = 2000


def _small_gaussian_primes() -> list[GaussInt]:
    out = []
    for p in range(2, _SMALL_PRIME_NORM):
        if any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
            continue
        if p == 2:
            out.append(GaussInt(1, 1))
        elif p % 4 == 3:
            if p * p <= _SMALL_PRIME_NORM:
                out.append(GaussInt(p, 0))
        else:
            a, b = _sum_of_two_squares(p)
            out.extend([GaussInt(a, b), GaussInt(b, a)])
    return out


_SMALL_PRIMES = _small_gaussian_primes()


def _root_part(w: GaussInt, k: int, ceiling: bool) -> GaussInt:
    """A Gaussian integer r approximating the k-th root of w.

    Small prime factors are found by trial division and contribute
    prime**ceil(e/k) (or floor). The cofactor contributes its exact k-th root
    when it has one, and otherwise itself (ceiling) or nothing (floor), so
    ceiling=True always gives w | r**k and ceiling=False gives r**k | w.
    """
    r = GaussInt(1, 0)
    for prime in _SMALL_PRIMES:
        e = 0
        while (q := w.exact_div(prime)) is not None:
            w, e = q, e + 1
        for _ in range(-(-e // k) if ceiling else e // k):
            r = r * prime
    if w.norm() > 1:
        root = gauss_iroot(w, k)
        if root is not None:
            r = r * root
        elif ceiling:
            r = r * w
    return r


def _power_scales(p: Poly) -> list[GaussScalar]:
    """Substitutions x = t*y that may shrink the coefficients of monic p.

    The coefficient of y**(n-k) in t**-n p(t y) is c_(n-k) / t**k. Folding
    k-th roots of the denominators into t makes every coefficient integral;
    folding the common k-th root of the numerators undoes a shared Gaussian
    rescaling of all the roots (a skew map known only up to a scalar)
    without factoring anything large.
    """
    n = p.degree
    ks = [k for k in range(1, n + 1) if p.coeffs[n - k]]
    t = ONE
    for k in ks:
        _, den = _gauss_fraction(p.coeffs[n - k] / t ** k)
        if den.norm() > 1:
            t = t / _root_part(den, k, ceiling=True).to_scalar()
    common = None
    for k in ks:
        num, _ = _gauss_fraction(p.coeffs[n - k] / t ** k)
        root = _root_part(num, k, ceiling=False)
        common = root if common is None else gauss_gcd(common, root)
    scales = [ONE, t]
    if common is not None and common.norm() > 1:
        scales.append(t * common.to_scalar())
    return scales


def _integral_coeffs(p: Poly) -> list[GaussInt]:
    den = mpz(1)
    for c in p.coeffs:
        den = den * c.re.denominator // math.gcd(den, c.re.denominator)
        den = den * c.im.denominator // math.gcd(den, c.im.denominator)
    return [GaussInt(int(c.re * den), int(c.im * den)) for c in p.coeffs]


def _rescaled(p: Poly, t: GaussScalar) -> Poly:
    n = p.degree
    return Poly([c * t ** (j - n) for j, c in enumerate(p.coeffs)])


def _candidate_roots(p: Poly) -> list[GaussScalar]:
    """Rational-root-theorem candidates a/b over Z[i]; p has nonzero constant term.

    Denominators are cleared either directly or after one of the
    substitutions from ``_power_scales``, whichever leaves the smallest end
    coefficients.
    """
    options = []
    for t in _power_scales(p):
        ints = _integral_coeffs(_rescaled(p, t))
        options.append((ints[0].norm() * ints[-1].norm(), t, ints))
    _, ds, ints = min(options, key=lambda o: o[0])
    tops = gauss_divisors(ints[0])
    bottoms = gauss_divisors(ints[-1])
    # Cauchy bound: |root| <= 1 + max|c_k / c_n|
    lead_norm = ints[-1].norm()
    ratio = max(c.norm() for c in ints[:-1]) / mpq(lead_norm)
    radius = math.isqrt(int(ratio) + 1) + 2
    radius_sq = radius * radius
    seen = set()
    out = []
    for b in bottoms:
        bs = b.to_scalar()
        for a in tops:
            for u in UNITS:
                cand = (a * u).to_scalar() / bs
                if cand.norm() > radius_sq or cand in seen:
                    continue
                seen.add(cand)
                out.append(cand * ds)
    out.sort(key=lambda z: (z.norm(), z.re, z.im))
    return out


def _deflate(p: Poly, root: GaussScalar) -> Poly | None:
    quot, rem = p.divmod(Poly([-root, 1]))
    return quot if rem.is_zero() else None


def poly_roots_gaussian(p: Poly, bound: int | None = None) -> list[GaussScalar]:
    """All roots of p in Q(i), with multiplicity, sorted by (re, im).

    Raises SplitFailure (carrying the unfactored residual) when p has an
    irreducible factor of degree >= 2 over Q(i).
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no finite root multiset")
    roots: list[GaussScalar] = []
    coeffs = list(p.coeffs)
    while coeffs and not coeffs[0]:
        roots.append(ZERO)
        coeffs.pop(0)
    work = Poly(coeffs)
    if work.degree > 0:
        # roots of the square-free part, then multiplicities by repeated deflation
        sqfree = work.divmod(poly_gcd(work, work.derivative()))[0].monic()
        distinct: list[GaussScalar] = []
        residual = sqfree
        for cand in _candidate_roots(sqfree):
            if residual.degree == 0:
                break
            reduced = _deflate(residual, cand)
            if reduced is not None:
                distinct.append(cand)
                residual = reduced
        if residual.degree > 0:
            raise SplitFailure(residual, roots + distinct)
        for r in distinct:
            while True:
                reduced = _deflate(work, r)
                if reduced is None:
                    break
                roots.append(r)
                work = reduced
        if work.degree > 0:
            raise SplitFailure(work, roots)
    roots.sort(key=GaussScalar.sort_key)
    return roots


def multiset(roots: Sequence[GaussScalar]) -> dict[GaussScalar, int]:
    out: dict[GaussScalar, int] = {}
    for r in roots:
        out[r] = out.get(r, 0) + 1
    return out
