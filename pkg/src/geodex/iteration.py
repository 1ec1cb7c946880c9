"""Iterated Morse indices and nullities from normal-form data.

The m-th iterate of a closed geodesic has its index and nullity determined
by the block decomposition of the linearized return map together with the
index of the underlying prime geodesic.  The formulas only ever evaluate
floors, ceilings and integrality indicators of integer multiples of the
stored rotation numbers, so exact rational angles stay exact and decimal
angles are handled by guarded interval arithmetic.

All functions here are pure; batch evaluation over iterate ranges can be
parallelized freely and is order-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DegenerateError, InputError, PrecisionError
from .scalars import BoundedReal, _has_integer_strictly_inside
from .symplectic import NormalFormDescriptor, RotationNumber


@dataclass(frozen=True)
class GeodesicRecord:
    """A prime closed geodesic: label, initial index, block descriptor.

    The initial nullity is derived from the eigenvalue-one blocks; passing
    it explicitly just cross-checks the caller's bookkeeping.  When the
    descriptor has no hyperbolic part, the initial index parity is pinned
    by the block structure and is validated here.
    """

    label: str
    initial_index: int
    descriptor: NormalFormDescriptor
    initial_nullity: int | None = None

    def __post_init__(self):
        if not self.label:
            raise InputError("geodesic label must be non-empty")
        if not isinstance(self.initial_index, int) or self.initial_index < 0:
            raise InputError(f"{self.label}: initial index must be a non-negative integer")
        d = self.descriptor
        derived = d.p_minus + 2 * d.p_zero + d.p_plus
        if self.initial_nullity is None:
            object.__setattr__(self, "initial_nullity", derived)
        elif self.initial_nullity != derived:
            raise InputError(
                f"{self.label}: initial nullity {self.initial_nullity} does not match "
                f"the eigenvalue-one blocks (expected {derived})")
        if d.hyperbolic_dim == 0:
            parity = (d.p_minus + d.p_zero + d.q_minus + d.q_zero + d.q_plus + d.r) % 2
            if self.initial_index % 2 != parity:
                raise InputError(
                    f"{self.label}: initial index {self.initial_index} has the wrong "
                    f"parity; the block structure forces parity {parity} when no "
                    f"hyperbolic part is present")

    @property
    def is_nondegenerate(self) -> bool:
        """No eigenvalue-one blocks: the prime geodesic itself is nondegenerate."""
        d = self.descriptor
        return d.p_minus == d.p_zero == d.p_plus == 0

    @property
    def is_bumpy(self) -> bool:
        """Every iterate is nondegenerate: no root-of-unity eigenvalues at all."""
        d = self.descriptor
        if not self.is_nondegenerate or d.q_minus or d.q_zero or d.q_plus:
            return False
        return all(r.is_irrational for r in d.all_rotations())


# -- fast guarded evaluation of integer multiples -----------------------
#
# The hot loops evaluate ceil(m * rho) and the non-integrality indicator of
# m * rho for m up to 10^4, so these run on raw numerator/denominator pairs
# rather than building interval objects per term.


def _ceil_mult(rho: RotationNumber, m: int) -> int:
    v = rho.value
    if v.is_exact:
        f = v.lo
        return -((-m * f.numerator) // f.denominator)
    lo, hi = v.lo * m, v.hi * m
    if v.irrational:
        if _has_integer_strictly_inside(lo, hi):
            raise PrecisionError(
                f"rotation {rho} times {m} straddles an integer; refine the decimal")
        return math.floor(lo) + 1
    cl, ch = math.ceil(lo), math.ceil(hi)
    if cl != ch:
        raise PrecisionError(
            f"ceiling of rotation {rho} times {m} is undetermined; refine the decimal")
    return cl


def _phi_mult(rho: RotationNumber, m: int) -> int:
    v = rho.value
    if v.is_exact:
        f = v.lo
        return 0 if (m * f.numerator) % f.denominator == 0 else 1
    if v.irrational:
        return 1
    lo, hi = v.lo * m, v.hi * m
    k = math.ceil(lo)
    if k > hi:
        return 1
    raise PrecisionError(
        f"integrality of rotation {rho} times {m} is undetermined; refine the decimal")


@lru_cache(maxsize=1 << 16)
def index_at(g: GeodesicRecord, m: int) -> int:
    """Morse index of the m-th iterate.

    i(c^m) = m (i + p- + p0 - r) + 2 sum_j ceil(m theta_j) - r - p- - p0
             - [m even] (q0 + q+) + 2 (sum_j phi(m alpha_j) - r*)

    with every rotation number stored as angle/(2*pi).  At m = 1 the
    correction terms cancel exactly and the initial index is returned.
    """
    if m < 1:
        raise InputError("iterate count must be a positive integer")
    d = g.descriptor
    total = m * (g.initial_index + d.p_minus + d.p_zero - d.r)
    total += 2 * sum(_ceil_mult(t, m) for t in d.thetas)
    total -= d.r + d.p_minus + d.p_zero
    if m % 2 == 0:
        total -= d.q_zero + d.q_plus
    total += 2 * (sum(_phi_mult(a, m) for a in d.alphas) - d.r_star)
    return total


@lru_cache(maxsize=1 << 16)
def nullity_at(g: GeodesicRecord, m: int) -> int:
    """Nullity of the m-th iterate.

    nu(c^m) = nu(c) + [m even](q- + 2 q0 + q+) + 2(r + r* + r0)
              - 2 (sum phi(m theta_j) + sum phi(m alpha_j) + sum phi(m beta_j)).
    """
    if m < 1:
        raise InputError("iterate count must be a positive integer")
    d = g.descriptor
    total = g.initial_nullity
    if m % 2 == 0:
        total += d.q_minus + 2 * d.q_zero + d.q_plus
    total += 2 * (d.r + d.r_star + d.r_zero)
    total -= 2 * (sum(_phi_mult(t, m) for t in d.thetas)
                  + sum(_phi_mult(a, m) for a in d.alphas)
                  + sum(_phi_mult(b, m) for b in d.betas))
    return total


def mean_index(g: GeodesicRecord) -> BoundedReal:
    """Average index growth rate lim i(c^m)/m.

    Exact rational whenever every plane-rotation angle is exact; otherwise
    an interval whose width is the accumulated rotation-number uncertainty.
    """
    d = g.descriptor
    out = BoundedReal.exact(g.initial_index + d.p_minus + d.p_zero - d.r)
    for t in d.thetas:
        out = out + t.value * 2
    return out


def splitting_number_at_one(g: GeodesicRecord) -> int:
    """Index jump contribution of eigenvalue one.

    Zero for nondegenerate return maps, which is the only case implemented;
    a general table for eigenvalue-one blocks is out of scope.
    """
    if not g.is_nondegenerate:
        raise DegenerateError(
            f"{g.label}: splitting numbers for eigenvalue-one blocks are not supported")
    return 0


def index_parity_class(g: GeodesicRecord, m: int) -> int:
    """Parity of i(c^m); for bumpy geodesics it depends only on m mod 2."""
    if not g.is_bumpy:
        raise InputError(
            f"{g.label}: parity classes are only defined for bumpy geodesics "
            "(no root-of-unity eigenvalues)")
    return index_at(g, m) % 2


def bott_deviation_bound(g: GeodesicRecord) -> int:
    """An explicit constant C with |i(c^m) - m * mean_index| <= C for all m.

    C = 2 (r + r* + 1) + |i(c)| + p- + p0 + q0 + q+.

    The q-block term is required: on even iterates the index formula
    subtracts q0 + q+, which no combination of the remaining terms bounds.
    """
    d = g.descriptor
    return (2 * (d.r + d.r_star + 1) + abs(g.initial_index)
            + d.p_minus + d.p_zero + d.q_zero + d.q_plus)


def index_table(g: GeodesicRecord, m_max: int) -> tuple[tuple[int, int, int], ...]:
    """Rows (m, i(c^m), nu(c^m)) for m = 1..m_max."""
    if m_max < 1:
        raise InputError("m_max must be positive")
    return tuple((m, index_at(g, m), nullity_at(g, m)) for m in range(1, m_max + 1))
