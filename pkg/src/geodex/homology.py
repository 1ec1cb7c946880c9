"""Equivariant Betti numbers of the free loop space of a sphere.

Two independent routes are implemented and cross-checked: a closed-form
case split on the degree, and coefficient extraction from the generating
function by exact polynomial long division.  For even-dimensional spheres
the generating function is implemented from its fully simplified
single-parameter form; the raw two-factor product it simplifies from is
not executed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise InputError(f"sphere dimension must be an integer >= 2, got {n!r}")


def betti(n: int, q: int) -> int:
    """Rank of the degree-q relative homology of the quotient loop space.

    Values are 0, 1 or 2; the ladder starts in degree n-1 and is supported
    on degrees of that parity.
    """
    _check_n(n)
    if not isinstance(q, int) or q < 0:
        return 0
    if n % 2:  # n = 2k+1
        k = (n - 1) // 2
        base = 2 * k
        if q < base or (q - base) % 2:
            return 0
        if q == base:
            return 1
        step = (q - base) // 2
        return 2 if step % k == 0 else 1
    k = n // 2  # n = 2k
    base = 2 * k - 1
    if q < base or (q - base) % 2:
        return 0
    if q == base:
        return 1
    step = (q - base) // 2
    return 2 if step % (2 * k - 1) == 0 else 1


@dataclass(frozen=True)
class BettiLadder:
    """The Betti sequence b_0..b_{q_max} for one sphere dimension."""

    n: int
    q_max: int
    values: tuple[int, ...]

    def __post_init__(self):
        _check_n(self.n)
        if self.q_max < 0 or len(self.values) != self.q_max + 1:
            raise InputError("ladder length must be q_max + 1")
        for q, b in enumerate(self.values):
            if b not in (0, 1, 2):
                raise InputError(f"ladder entry b_{q} = {b} is outside {{0, 1, 2}}")
            if b and (q < self.n - 1 or (q - (self.n - 1)) % 2):
                raise InputError(
                    f"ladder entry b_{q} = {b} violates the support pattern "
                    f"(degrees >= {self.n - 1} of matching parity)")

    def __getitem__(self, q: int) -> int:
        return self.values[q]


def _series_quotient(num: dict[int, int], den: dict[int, int], q_max: int) -> list[int]:
    """Coefficients of num/den as a power series, by exact long division."""
    coeffs = [0] * (q_max + 1)
    if den.get(0, 0) != 1:
        raise InputError("denominator must have constant term 1")
    for q in range(q_max + 1):
        acc = num.get(q, 0)
        for d, cd in den.items():
            if 1 <= d <= q:
                acc -= cd * coeffs[q - d]
        coeffs[q] = acc
    return coeffs


def poincare_series_coeffs(n: int, q_max: int) -> BettiLadder:
    """Expand the loop-space generating function to degree q_max.

    The function is t^(n-1) (1/(1-t^2) + t^a/(1-t^a)) with a = n-1 for odd
    n and a = 2n-2 for even n, combined over the common denominator
    (1-t^2)(1-t^a) so a single exact long division produces the ladder.
    """
    _check_n(n)
    if q_max < 0:
        raise InputError("q_max must be non-negative")
    a = n - 1 if n % 2 else 2 * n - 2
    shift = n - 1
    # t^shift (1 - t^(a+2)) / ((1 - t^2)(1 - t^a)); exponents may collide
    num = {shift: 1, shift + a + 2: -1}
    den: dict[int, int] = {}
    for exp, coeff in ((0, 1), (2, -1), (a, -1), (a + 2, 1)):
        den[exp] = den.get(exp, 0) + coeff
    return BettiLadder(n, q_max, tuple(_series_quotient(num, den, q_max)))


def mean_index_constant(n: int) -> Fraction:
    """The rational constant on the right side of the mean-index identity:
    (n+1)/(2(n-1)) for odd n and -n/(2(n-1)) for even n."""
    _check_n(n)
    if n % 2:
        return Fraction(n + 1, 2 * (n - 1))
    return Fraction(-n, 2 * (n - 1))


def alternating_betti_sum(n: int, q_max: int) -> int:
    """Exact alternating sum of the ladder through degree q_max."""
    _check_n(n)
    if q_max < 0:
        raise InputError("q_max must be non-negative")
    return sum((-1) ** q * betti(n, q) for q in range(q_max + 1))
