"""Exact scalars with optional error bounds.

Every number the engine touches is either an exact rational or a closed
interval ``[lo, hi]`` of rationals known to contain the true value.  An
interval may additionally be asserted irrational, which sharpens the
discontinuous operations: an irrational value can never sit on an integer,
so its floor is determined whenever no integer lies strictly inside the
interval.

Floor, ceiling, the non-integrality indicator and the fractional part are
discontinuous at integers.  The interval versions therefore fail loudly
(:class:`~geodex.errors.PrecisionError`) instead of guessing when the
answer is not determined by the bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, PrecisionError

RationalLike = "int | Fraction | str"


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and strings ("3", "-2/3", "0.25", "1e-12")."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational number: {value!r}") from exc
    raise InputError(f"cannot interpret {type(value).__name__} as a rational")


def format_rational(x: Fraction) -> str:
    """Canonical string form: integers bare, otherwise 'p/q' in lowest terms."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _has_integer_strictly_inside(lo: Fraction, hi: Fraction) -> bool:
    k = math.ceil(lo)
    if k == lo:
        k += 1
    return k < hi


@dataclass(frozen=True)
class BoundedReal:
    """A real number known to lie in ``[lo, hi]``.

    ``lo == hi`` means the value is an exact rational.  ``irrational=True``
    asserts the true value is irrational (and hence strictly inside the
    interval, since the endpoints are rational).
    """

    lo: Fraction
    hi: Fraction
    irrational: bool = False

    def __post_init__(self):
        if not isinstance(self.lo, Fraction) or not isinstance(self.hi, Fraction):
            object.__setattr__(self, "lo", as_fraction(self.lo))
            object.__setattr__(self, "hi", as_fraction(self.hi))
        if self.lo > self.hi:
            raise InputError(f"empty interval: lo={self.lo} > hi={self.hi}")
        if self.irrational and self.lo == self.hi:
            raise InputError("a zero-width interval pins a rational value; "
                             "it cannot be flagged irrational")

    @classmethod
    def exact(cls, value) -> "BoundedReal":
        v = as_fraction(value)
        return cls(v, v)

    @classmethod
    def from_decimal(cls, text: str, err, irrational: bool = False) -> "BoundedReal":
        center = as_fraction(text)
        spread = as_fraction(err)
        if spread <= 0:
            raise InputError("error bound must be positive")
        return cls(center - spread, center + spread, irrational)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Fraction:
        if not self.is_exact:
            raise PrecisionError(f"interval {self} is not an exact rational")
        return self.lo

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def center(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __str__(self) -> str:
        if self.is_exact:
            return format_rational(self.lo)
        tag = "~" if self.irrational else ""
        return f"{tag}[{format_rational(self.lo)}, {format_rational(self.hi)}]"

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, BoundedReal):
            flag = (self.irrational and other.is_exact) or (other.irrational and self.is_exact)
            return BoundedReal(self.lo + other.lo, self.hi + other.hi, flag)
        o = as_fraction(other)
        return BoundedReal(self.lo + o, self.hi + o, self.irrational)

    __radd__ = __add__

    def __neg__(self):
        return BoundedReal(-self.hi, -self.lo, self.irrational)

    def __sub__(self, other):
        if isinstance(other, BoundedReal):
            return self + (-other)
        return self + (-as_fraction(other))

    def __rsub__(self, other):
        return (-self) + as_fraction(other)

    def __mul__(self, other):
        if isinstance(other, BoundedReal):
            if other.is_exact:
                return self * other.lo
            if self.is_exact:
                return other * self.lo
            corners = [a * b for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
            return BoundedReal(min(corners), max(corners))
        o = as_fraction(other)
        if o == 0:
            return BoundedReal.exact(0)
        if o > 0:
            return BoundedReal(self.lo * o, self.hi * o, self.irrational)
        return BoundedReal(self.hi * o, self.lo * o, self.irrational)

    __rmul__ = __mul__

    def reciprocal(self) -> "BoundedReal":
        if self.lo <= 0 <= self.hi:
            raise PrecisionError(f"interval {self} may contain zero; cannot invert")
        return BoundedReal(1 / self.hi, 1 / self.lo, self.irrational)

    def __truediv__(self, other):
        if isinstance(other, BoundedReal):
            return self * other.reciprocal()
        return self * (1 / as_fraction(other))

    def __rtruediv__(self, other):
        return self.reciprocal() * as_fraction(other)

    # -- order --------------------------------------------------------

    def contains(self, x) -> bool:
        x = as_fraction(x)
        return self.lo <= x <= self.hi

    def definitely_lt(self, other) -> bool:
        hi = self.hi
        lo = other.lo if isinstance(other, BoundedReal) else as_fraction(other)
        return hi < lo

    def definitely_le(self, other) -> bool:
        hi = self.hi
        lo = other.lo if isinstance(other, BoundedReal) else as_fraction(other)
        return hi <= lo

    def definitely_gt(self, other) -> bool:
        lo = self.lo
        hi = other.hi if isinstance(other, BoundedReal) else as_fraction(other)
        return lo > hi

    def definitely_ge(self, other) -> bool:
        lo = self.lo
        hi = other.hi if isinstance(other, BoundedReal) else as_fraction(other)
        return lo >= hi

    def abs_upper(self) -> Fraction:
        """Largest possible absolute value."""
        return max(abs(self.lo), abs(self.hi))


# -- the four discontinuous integer operations -------------------------


def floor_int(a) -> int:
    """Largest integer below or at the value.  Interval inputs must
    determine the answer or a PrecisionError is raised."""
    if isinstance(a, int):
        return a
    if isinstance(a, Fraction):
        return math.floor(a)
    if a.is_exact:
        return math.floor(a.lo)
    if a.irrational:
        if _has_integer_strictly_inside(a.lo, a.hi):
            raise PrecisionError(f"interval {a} straddles an integer; refine the bound")
        return math.floor(a.lo)
    fl, fh = math.floor(a.lo), math.floor(a.hi)
    if fl != fh:
        raise PrecisionError(f"floor undetermined on {a}; refine the bound")
    return fl


def ceil_int(a) -> int:
    """Smallest integer at or above the value, guarded as in floor_int."""
    if isinstance(a, int):
        return a
    if isinstance(a, Fraction):
        return math.ceil(a)
    if a.is_exact:
        return math.ceil(a.lo)
    if a.irrational:
        if _has_integer_strictly_inside(a.lo, a.hi):
            raise PrecisionError(f"interval {a} straddles an integer; refine the bound")
        return math.floor(a.lo) + 1
    cl, ch = math.ceil(a.lo), math.ceil(a.hi)
    if cl != ch:
        raise PrecisionError(f"ceiling undetermined on {a}; refine the bound")
    return cl


def is_noninteger(a) -> int:
    """1 when the value is not an integer, 0 when it is.

    Equals ceiling minus floor, and is the discontinuous weight used by
    the nullity iteration formula.
    """
    if isinstance(a, int):
        return 0
    if isinstance(a, Fraction):
        return 0 if a.denominator == 1 else 1
    if a.is_exact:
        return 0 if a.lo.denominator == 1 else 1
    if a.irrational:
        return 1
    k = math.ceil(a.lo)
    if k > a.hi:
        return 1
    raise PrecisionError(f"integrality undetermined on {a}; refine the bound")


def frac_part(a):
    """Value minus its floor; same kind as the input, in [0, 1)."""
    if isinstance(a, int):
        return Fraction(0)
    if isinstance(a, Fraction):
        return a - math.floor(a)
    f = floor_int(a)
    if a.is_exact:
        return BoundedReal.exact(a.lo - f)
    return BoundedReal(a.lo - f, a.hi - f, a.irrational)


# -- smallest-denominator rationals -------------------------------------


def simplest_rational_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with smallest denominator in the closed interval.

    Classic continued-fraction descent; used to audit irrationality claims
    on decimal rotation numbers.
    """
    lo, hi = as_fraction(lo), as_fraction(hi)
    if lo > hi:
        raise InputError("empty interval")
    if lo == hi:
        return lo
    base = math.floor(lo)
    lo2, hi2 = lo - base, hi - base
    if lo2 == 0:
        return Fraction(base)
    if hi2 >= 1:
        return Fraction(base + 1)
    # 0 < lo2 <= hi2 < 1: recurse on the reciprocal interval
    return base + 1 / simplest_rational_between(1 / hi2, 1 / lo2)
