"""Exact real arithmetic for quadratic irrationals.

`QuadraticReal` holds a number (p + q*sqrt(d))/r in a single real quadratic
field and decides floors and comparisons with integer arithmetic only.
`SurdSum` is the small generalisation needed when two parameters live in
different fields (e.g. alpha = sqrt(3), beta = sqrt(2)/2): a rational linear
combination of square roots of distinct squarefree integers.  Zero testing is
exact (square roots of distinct squarefree integers are linearly independent
over Q) and the sign of a non-zero value is settled by fixed-point evaluation
with a rigorous error bound, doubling the precision until it resolves.

`AffineForm` evaluates m -> slope*m + intercept at many integers m and is the
hot path used by the Beatty and sums modules.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Union


class MixedRadicandError(ValueError):
    """Raised when an operation would combine two distinct quadratic fields."""


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


@lru_cache(maxsize=4096)
def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return (s, d) with n = s**2 * d and d squarefree (n >= 0)."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0, 0
    s, d, p = 1, 1, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    return s, d * n


def floor_mul_sqrt(q: int, d: int) -> int:
    """floor(q * sqrt(d)) for integers q and d >= 0."""
    t = q * q * d
    s = isqrt(t)
    if q >= 0:
        return s
    return -s if s * s == t else -s - 1


def surd_sign(a: int, b: int, d: int) -> int:
    """Sign of a + b*sqrt(d), decided with one squaring."""
    sa, sb = _sgn(a), _sgn(b)
    if sb == 0 or d == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    return sa * _sgn(a * a - b * b * d)


class QuadraticReal:
    """The number (p + q*sqrt(d)) / r, kept in canonical form.

    Canonical form: r > 0, gcd(p, q, r) = 1, d squarefree, and d = 0 exactly
    when q = 0.  Two canonical values are equal iff their tuples are equal.
    """

    __slots__ = ("p", "q", "d", "r")

    def __init__(self, p: int = 0, q: int = 0, d: int = 0, r: int = 1):
        if r == 0:
            raise ZeroDivisionError("zero denominator")
        s, d = squarefree_decomposition(d)
        q *= s
        if d == 1:
            p, q, d = p + q, 0, 0
        self._set(p, q, d, r)

    def _set(self, p: int, q: int, d: int, r: int) -> None:
        if q == 0:
            d = 0
        if r < 0:
            p, q, r = -p, -q, -r
        g = gcd(gcd(p, q), r)
        if g > 1:
            p, q, r = p // g, q // g, r // g
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "r", r)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticReal is immutable")

    @classmethod
    def _raw(cls, p: int, q: int, d: int, r: int) -> "QuadraticReal":
        # d must already be squarefree (or 0)
        obj = cls.__new__(cls)
        obj._set(p, q, d, r)
        return obj

    @classmethod
    def sqrt(cls, n: int) -> "QuadraticReal":
        return cls(0, 1, n, 1)

    @classmethod
    def golden(cls) -> "QuadraticReal":
        return cls(1, 1, 5, 2)

    @classmethod
    def coerce(cls, x) -> "QuadraticReal":
        if isinstance(x, QuadraticReal):
            return x
        if isinstance(x, int):
            return cls._raw(x, 0, 0, 1)
        if isinstance(x, Fraction):
            return cls._raw(x.numerator, 0, 0, x.denominator)
        if isinstance(x, SurdSum):
            q = x.as_quadratic()
            if q is None:
                raise MixedRadicandError(f"{x} spans several quadratic fields")
            return q
        raise TypeError(f"cannot convert {type(x).__name__} to QuadraticReal")

    # --- structure -------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if self.q:
            raise ValueError("irrational value")
        return Fraction(self.p, self.r)

    def _field(self, other: "QuadraticReal") -> int:
        if self.d and other.d and self.d != other.d:
            raise MixedRadicandError(
                f"sqrt({self.d}) and sqrt({other.d}) live in different fields")
        return self.d or other.d

    # --- arithmetic ------------------------------------------------------

    def __add__(self, other):
        try:
            o = QuadraticReal.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field(o)
        return QuadraticReal._raw(self.p * o.r + o.p * self.r,
                                  self.q * o.r + o.q * self.r, d, self.r * o.r)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticReal._raw(-self.p, -self.q, self.d, self.r)

    def __sub__(self, other):
        try:
            o = QuadraticReal.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = QuadraticReal.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field(o)
        return QuadraticReal._raw(self.p * o.p + self.q * o.q * d,
                                  self.p * o.q + self.q * o.p, d, self.r * o.r)

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticReal":
        norm = self.p * self.p - self.q * self.q * self.d
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadraticReal._raw(self.r * self.p, -self.r * self.q, self.d, norm)

    def __truediv__(self, other):
        try:
            o = QuadraticReal.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return QuadraticReal.coerce(other) * self.inverse()

    # --- order -----------------------------------------------------------

    def sign(self) -> int:
        return surd_sign(self.p, self.q, self.d)

    def _cmp(self, other) -> int:
        if isinstance(other, SurdSum):
            return -other._cmp(self)
        if isinstance(other, float):
            other = Fraction(other)
        try:
            return (self - other).sign()
        except MixedRadicandError:
            return (SurdSum.of(self) - other).sign()

    def __eq__(self, other):
        if isinstance(other, QuadraticReal):
            return (self.p, self.q, self.d, self.r) == (other.p, other.q, other.d, other.r)
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and Fraction(self.p, self.r) == other
        if isinstance(other, SurdSum):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self.q == 0:
            return hash(Fraction(self.p, self.r))
        return hash((self.p, self.q, self.d, self.r))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def floor(self) -> int:
        return (self.p + floor_mul_sqrt(self.q, self.d)) // self.r

    def ceil(self) -> int:
        return -(-self).floor()

    def frac(self) -> "QuadraticReal":
        return self - self.floor()

    def __floor__(self):
        return self.floor()

    def __ceil__(self):
        return self.ceil()

    def scaled_floor(self, bits: int) -> int:
        """floor(self * 2**bits)."""
        return ((self.p << bits) + floor_mul_sqrt(self.q << bits, self.d)) // self.r

    def __float__(self):
        if self.q == 0:
            return self.p / self.r
        return float(Fraction(self.scaled_floor(128), 1 << 128))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __repr__(self):
        return f"QuadraticReal({self.p}, {self.q}, {self.d}, {self.r})"

    def __str__(self):
        if self.q == 0:
            return str(Fraction(self.p, self.r))
        root = f"√{self.d}" if self.q == 1 else f"-√{self.d}" if self.q == -1 else f"{self.q}√{self.d}"
        num = root if self.p == 0 else f"{self.p}{'+' if self.q > 0 else ''}{root}"
        return num if self.r == 1 else f"({num})/{self.r}"

    def __reduce__(self):
        return (QuadraticReal._raw, (self.p, self.q, self.d, self.r))


class SurdSum:
    """A rational combination sum_d c_d * sqrt(d) over distinct squarefree d.

    The rational part is stored under d = 1.  Immutable.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for d, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[d] = clean.get(d, 0) + c
        object.__setattr__(self, "terms", {d: c for d, c in sorted(clean.items()) if c})

    def __setattr__(self, name, value):
        raise AttributeError("SurdSum is immutable")

    @classmethod
    def of(cls, x) -> "SurdSum":
        if isinstance(x, SurdSum):
            return x
        if isinstance(x, (int, Fraction)):
            return cls({1: Fraction(x)})
        if isinstance(x, QuadraticReal):
            terms = {1: Fraction(x.p, x.r)}
            if x.q:
                terms[x.d] = Fraction(x.q, x.r)
            return cls(terms)
        raise TypeError(f"cannot convert {type(x).__name__} to SurdSum")

    @property
    def radicands(self) -> tuple[int, ...]:
        return tuple(d for d in self.terms if d != 1)

    def as_quadratic(self) -> QuadraticReal | None:
        rads = self.radicands
        if len(rads) > 1:
            return None
        c0 = self.terms.get(1, Fraction(0))
        if not rads:
            return QuadraticReal._raw(c0.numerator, 0, 0, c0.denominator)
        d = rads[0]
        c1 = self.terms[d]
        r = c0.denominator * c1.denominator // gcd(c0.denominator, c1.denominator)
        return QuadraticReal._raw(c0.numerator * (r // c0.denominator),
                                  c1.numerator * (r // c1.denominator), d, r)

    def simplify(self):
        """The QuadraticReal equal to self when one exists, else self."""
        q = self.as_quadratic()
        return self if q is None else q

    def __add__(self, other):
        try:
            o = SurdSum.of(other)
        except TypeError:
            return NotImplemented
        t = dict(self.terms)
        for d, c in o.terms.items():
            t[d] = t.get(d, 0) + c
        return SurdSum(t)

    __radd__ = __add__

    def __neg__(self):
        return SurdSum({d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        try:
            return self + (-SurdSum.of(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = SurdSum.of(other)
        except TypeError:
            return NotImplemented
        t: dict[int, Fraction] = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in o.terms.items():
                g = gcd(d1, d2)
                d = (d1 // g) * (d2 // g)
                t[d] = t.get(d, 0) + c1 * c2 * g
        return SurdSum(t)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def approx(self, bits: int) -> tuple[int, int]:
        """(V, E) with |self * 2**bits - V| <= E."""
        v, e = 0, 0
        for d, c in self.terms.items():
            u, w = c.numerator, c.denominator
            if d == 1:
                v += (u << bits) // w
                e += 1
            else:
                v += u * isqrt(d << (2 * bits)) // w
                e += abs(u) // w + 2
        return v, e

    def sign(self) -> int:
        if not self.terms:
            return 0
        bits = 64
        while True:
            v, e = self.approx(bits)
            if abs(v) > e:
                return _sgn(v)
            bits *= 2

    def floor(self) -> int:
        bits = 64
        v, e = self.approx(bits)
        n = (v + e) >> bits
        return n if (self - n).sign() >= 0 else n - 1

    def ceil(self) -> int:
        return -(-self).floor()

    def frac(self) -> "SurdSum":
        return self - self.floor()

    def __floor__(self):
        return self.floor()

    def scaled_floor(self, bits: int) -> int:
        """floor(self * 2**bits)."""
        v, e = self.approx(bits + 8)
        n = (v + e) >> 8
        return n if (self * (1 << bits) - n).sign() >= 0 else n - 1

    def _cmp(self, other) -> int:
        if isinstance(other, float):
            other = Fraction(other)
        return (self - other).sign()

    def __eq__(self, other):
        try:
            return (self - SurdSum.of(other)).is_zero()
        except TypeError:
            return NotImplemented

    def __hash__(self):
        q = self.as_quadratic()
        return hash(q) if q is not None else hash(tuple(self.terms.items()))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self):
        return float(Fraction(self.scaled_floor(128), 1 << 128))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __repr__(self):
        return f"SurdSum({self.terms!r})"

    def __str__(self):
        parts = [str(c) if d == 1 else f"{c}*√{d}" for d, c in self.terms.items()]
        return " + ".join(parts) or "0"


ExactReal = Union[QuadraticReal, SurdSum]


def exact(x) -> ExactReal:
    """Normalise int/Fraction/QuadraticReal/SurdSum to the narrowest exact type."""
    if isinstance(x, QuadraticReal):
        return x
    if isinstance(x, SurdSum):
        return x.simplify()
    if isinstance(x, (int, Fraction)):
        return QuadraticReal.coerce(x)
    raise TypeError(f"not an exact real: {x!r}")


def xadd(x, y) -> ExactReal:
    """Exact sum that falls back to SurdSum across fields."""
    try:
        return QuadraticReal.coerce(x) + QuadraticReal.coerce(y)
    except MixedRadicandError:
        return (SurdSum.of(x) + SurdSum.of(y)).simplify()


def xmul(x, y) -> ExactReal:
    try:
        return QuadraticReal.coerce(x) * QuadraticReal.coerce(y)
    except MixedRadicandError:
        return (SurdSum.of(x) * SurdSum.of(y)).simplify()


# --- the named operations ------------------------------------------------

def qr_floor(x: QuadraticReal) -> int:
    return QuadraticReal.coerce(x).floor()


def qr_frac(x: QuadraticReal) -> QuadraticReal:
    return QuadraticReal.coerce(x).frac()


def qr_inverse(x: QuadraticReal) -> QuadraticReal:
    return QuadraticReal.coerce(x).inverse()


def qr_affine(x: QuadraticReal, a, b) -> QuadraticReal:
    """Exact a*x + b for rational a.  Distinct radicands raise MixedRadicandError."""
    a = Fraction(a)
    return QuadraticReal.coerce(x) * a + QuadraticReal.coerce(b)


@dataclass(frozen=True)
class FixedPointReal:
    """significand * 2**-fraction_bits."""

    significand: int
    fraction_bits: int = 192

    def __float__(self):
        return float(Fraction(self.significand, 1 << self.fraction_bits))

    def as_fraction(self) -> Fraction:
        return Fraction(self.significand, 1 << self.fraction_bits)

    def frac_significand(self) -> int:
        """The fractional part, as an integer in [0, 2**fraction_bits)."""
        return self.significand & ((1 << self.fraction_bits) - 1)

    def __neg__(self):
        return FixedPointReal(-self.significand, self.fraction_bits)

    def __mul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return FixedPointReal(self.significand * n, self.fraction_bits)

    __rmul__ = __mul__


def to_fixed(x, fraction_bits: int = 192) -> FixedPointReal:
    """Nearest fixed-point value to an exact real (error <= 2**-(bits+1))."""
    if fraction_bits < 64:
        raise ValueError("fraction_bits must be at least 64")
    if isinstance(x, FixedPointReal):
        shift = fraction_bits - x.fraction_bits
        sig = x.significand << shift if shift >= 0 else (x.significand + (1 << (-shift - 1))) >> -shift
        return FixedPointReal(sig, fraction_bits)
    if isinstance(x, float):
        x = Fraction(x)
    if isinstance(x, (int, Fraction)):
        x = QuadraticReal.coerce(x)
    f = x.scaled_floor(fraction_bits + 1)
    return FixedPointReal((f + 1) >> 1, fraction_bits)


class AffineForm:
    """m -> slope*m + intercept evaluated exactly at integer m.

    When both coefficients share one quadratic field the value is
    (P0 + P1*m + (Q0 + Q1*m)*sqrt(d)) / R and floors/signs cost one isqrt.
    Otherwise a 128-bit fixed-point evaluation with a rigorous error bound
    decides, and the exact SurdSum is consulted only when it cannot.
    """

    BITS = 128

    def __init__(self, slope, intercept):
        self.slope = exact(slope)
        self.intercept = exact(intercept)
        s, b = SurdSum.of(self.slope), SurdSum.of(self.intercept)
        rads = sorted(set(s.radicands) | set(b.radicands))
        coeffs = s.terms.values(), b.terms.values()
        R = 1
        for group in coeffs:
            for c in group:
                R = R * c.denominator // gcd(R, c.denominator)
        self.R = R

        def ints(t, d):
            c = t.terms.get(d, Fraction(0))
            return c.numerator * (R // c.denominator)

        self.fast = len(rads) <= 1
        if self.fast:
            self.d = rads[0] if rads else 0
            self.P0, self.P1 = ints(b, 1), ints(s, 1)
            self.Q0, self.Q1 = ints(b, self.d), ints(s, self.d)
        else:
            self._surd_slope, self._surd_intercept = s, b
            self.rows = [(d, ints(b, d), ints(s, d)) for d in [1] + rads]
            self._roots = {}

    def value(self, m: int) -> ExactReal:
        return xadd(xmul(self.slope, m), self.intercept)

    def _approx(self, m: int, bits: int = BITS) -> tuple[int, int]:
        # |value(m) * R * 2**bits - v| <= e
        roots = self._roots.get(bits)
        if roots is None:
            roots = self._roots[bits] = [(1 << bits) if d == 1 else isqrt(d << (2 * bits))
                                         for d, _, _ in self.rows]
        v = e = 0
        for (d, c0, c1), s in zip(self.rows, roots):
            c = c0 + c1 * m
            v += c * s
            if d != 1:
                e += abs(c) + 1
        return v, e

    def floor(self, m: int) -> int:
        if self.fast:
            return (self.P0 + self.P1 * m + floor_mul_sqrt(self.Q0 + self.Q1 * m, self.d)) // self.R
        v, e = self._approx(m)
        scale = self.R << self.BITS
        lo, hi = (v - e) // scale, (v + e) // scale
        if lo == hi:
            return lo
        x = self._surd_slope * m + self._surd_intercept
        return hi if (x - hi).sign() >= 0 else hi - 1

    def cmp(self, m: int, t: int) -> int:
        """Sign of value(m) - t for an integer t."""
        if self.fast:
            return surd_sign(self.P0 + self.P1 * m - t * self.R, self.Q0 + self.Q1 * m, self.d)
        v, e = self._approx(m)
        v -= (t * self.R) << self.BITS
        if abs(v) > e:
            return _sgn(v)
        return (self._surd_slope * m + self._surd_intercept - t).sign()

    def frac_scaled(self, m: int, bits: int) -> int:
        """floor(frac(value(m)) * 2**bits)."""
        fl = self.floor(m)
        if self.fast:
            P = self.P0 + self.P1 * m - fl * self.R
            return ((P << bits) + floor_mul_sqrt((self.Q0 + self.Q1 * m) << bits, self.d)) // self.R
        B = bits + 64
        v, e = self._approx(m, B)
        v -= (fl * self.R) << B
        scale = self.R << (B - bits)
        lo, hi = (v - e) // scale, (v + e) // scale
        if lo == hi:
            return lo
        x = self._surd_slope * m + self._surd_intercept - fl
        return x.scaled_floor(bits)

    def shifted(self, c) -> "AffineForm":
        """The form m -> value(m) - c."""
        return AffineForm(self.slope, xadd(self.intercept, xmul(c, -1)))
