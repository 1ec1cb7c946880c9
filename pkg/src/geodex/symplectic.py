"""Symplectic matrices, basic normal-form blocks, and descriptors.

Matrices carry exact rational entries, so the symplectic identity
``M^T J M = J`` is decided exactly.  Spectra, by contrast, are computed
numerically at controlled precision (exact characteristic polynomial,
then high-precision root finding) and compared against a descriptor with
an explicit tolerance.

The coordinate convention is the split form ``J = [[0, -I], [I, 0]]``.
Under it the direct sum of two symplectic maps interleaves position and
momentum blocks rather than concatenating them on the diagonal.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import InputError
from .scalars import BoundedReal, as_fraction, simplest_rational_between

Matrix = tuple  # tuple of tuples of Fraction

#: Decimal rotation numbers must be at least this tight.
MAX_ROTATION_ERR = Fraction(1, 10**12)

#: Irrationality audits reject intervals containing a rational with
#: denominator at or below this limit.
DEFAULT_RESOLUTION_LIMIT = 10**4

_CLASSIFY_DPS = 45


# ----------------------------------------------------------------------
# rotation numbers
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class RotationNumber:
    """An eigenvalue angle stored as angle/(2*pi) in (0,1) minus {1/2}.

    Storing the normalized angle keeps every iteration formula free of pi:
    the m-th iterate only ever needs integer multiples of the stored value.
    """

    value: BoundedReal

    def __post_init__(self):
        v = self.value
        if v.lo <= 0 or v.hi >= 1:
            raise InputError(f"rotation number {v} must lie strictly inside (0, 1)")
        half = Fraction(1, 2)
        if v.is_exact:
            if v.lo == half:
                raise InputError("rotation number 1/2 is excluded (angle pi)")
        else:
            if v.hi - v.lo > 2 * MAX_ROTATION_ERR:
                raise InputError(
                    "decimal rotation numbers need an error bound below 1e-12")
            if v.lo <= half <= v.hi:
                raise InputError("rotation interval may not contain 1/2 (angle pi)")

    @classmethod
    def exact(cls, value) -> "RotationNumber":
        return cls(BoundedReal.exact(as_fraction(value)))

    @classmethod
    def decimal(cls, text: str, err, irrational: bool = True,
                resolution_limit: int = DEFAULT_RESOLUTION_LIMIT) -> "RotationNumber":
        v = BoundedReal.from_decimal(text, err, irrational)
        rn = cls(v)
        if irrational:
            witness = simplest_rational_between(v.lo, v.hi)
            if witness.denominator <= resolution_limit:
                raise InputError(
                    f"interval around {text} contains {witness}, a rational with "
                    f"denominator <= {resolution_limit}; irrationality claim rejected")
        return rn

    @property
    def is_exact(self) -> bool:
        return self.value.is_exact

    @property
    def is_irrational(self) -> bool:
        return self.value.irrational

    def __str__(self) -> str:
        return str(self.value)


# ----------------------------------------------------------------------
# descriptors
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class NormalFormDescriptor:
    """Block data of one linearized return map.

    Counts follow the basic normal forms: ``p_*`` are the eigenvalue +1
    blocks (shear with positive sign, identity pairs, shear with negative
    sign), ``q_*`` the analogous eigenvalue -1 blocks, ``thetas`` the plane
    rotation angles, ``alphas``/``betas`` the angles of non-trivial and
    trivial twisted 4x4 blocks, and ``hyperbolic_dim`` the dimension of the
    part with spectrum off the unit circle.  Only the dimension of that
    last part matters to any formula here, so nothing else is stored.
    """

    p_minus: int = 0
    p_zero: int = 0
    p_plus: int = 0
    q_minus: int = 0
    q_zero: int = 0
    q_plus: int = 0
    thetas: tuple = ()
    alphas: tuple = ()
    betas: tuple = ()
    hyperbolic_dim: int = 0

    def __post_init__(self):
        for name in ("p_minus", "p_zero", "p_plus", "q_minus", "q_zero", "q_plus"):
            if not isinstance(getattr(self, name), int) or getattr(self, name) < 0:
                raise InputError(f"block count {name} must be a non-negative integer")
        if not isinstance(self.hyperbolic_dim, int) or self.hyperbolic_dim < 0:
            raise InputError("hyperbolic_dim must be a non-negative integer")
        if self.hyperbolic_dim % 2:
            raise InputError("hyperbolic_dim must be even")
        for name in ("thetas", "alphas", "betas"):
            seq = tuple(getattr(self, name))
            object.__setattr__(self, name, seq)
            if not all(isinstance(r, RotationNumber) for r in seq):
                raise InputError(f"{name} must contain rotation numbers")
        if self.dim <= 0:
            raise InputError("descriptor describes an empty return map")

    @property
    def r(self) -> int:
        return len(self.thetas)

    @property
    def r_star(self) -> int:
        return len(self.alphas)

    @property
    def r_zero(self) -> int:
        return len(self.betas)

    @property
    def dim(self) -> int:
        return (2 * (self.p_minus + self.p_zero + self.p_plus)
                + 2 * (self.q_minus + self.q_zero + self.q_plus)
                + 2 * self.r + 4 * self.r_star + 4 * self.r_zero
                + self.hyperbolic_dim)

    @property
    def elliptic_height(self) -> int:
        return self.dim - self.hyperbolic_dim

    def all_rotations(self) -> tuple:
        return self.thetas + self.alphas + self.betas


def elliptic_height(descriptor: NormalFormDescriptor) -> int:
    """Total multiplicity of unit-circle eigenvalues implied by the blocks."""
    return descriptor.elliptic_height


# ----------------------------------------------------------------------
# exact matrices
# ----------------------------------------------------------------------


def _freeze(rows) -> Matrix:
    out = []
    width = None
    for row in rows:
        r = tuple(as_fraction(x) for x in row)
        if width is None:
            width = len(r)
        elif len(r) != width:
            raise InputError("ragged matrix rows")
        out.append(r)
    return tuple(out)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    if len(a[0]) != k:
        raise InputError("matrix dimensions do not match")
    bt = list(zip(*b))
    return tuple(tuple(sum(ra[i] * cb[i] for i in range(k)) for cb in bt) for ra in a)


def mat_transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def mat_identity(n: int) -> Matrix:
    one, zero = Fraction(1), Fraction(0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def standard_form(dim: int) -> Matrix:
    """The split symplectic form [[0, -I], [I, 0]] in dimension ``dim``."""
    if dim % 2 or dim <= 0:
        raise InputError(f"symplectic form needs a positive even dimension, got {dim}")
    k = dim // 2
    zero, one = Fraction(0), Fraction(1)
    rows = []
    for i in range(k):
        rows.append(tuple(zero for _ in range(k))
                    + tuple(-one if j == i else zero for j in range(k)))
    for i in range(k):
        rows.append(tuple(one if j == i else zero for j in range(k))
                    + tuple(zero for _ in range(k)))
    return tuple(rows)


@dataclass(frozen=True)
class SymplecticMatrix:
    """A square matrix of exact rationals with even dimension.

    Construction does not force the symplectic identity; `check_symplectic`
    decides it exactly, and several operations deliberately accept matrices
    that fail it so the failure can be reported.
    """

    entries: Matrix

    def __post_init__(self):
        frozen = _freeze(self.entries)
        object.__setattr__(self, "entries", frozen)
        n = len(frozen)
        if n == 0 or len(frozen[0]) != n:
            raise InputError("matrix must be square and non-empty")
        if n % 2:
            raise InputError(f"dimension {n} is odd; symplectic matrices are even-dimensional")

    @classmethod
    def from_rows(cls, rows) -> "SymplecticMatrix":
        return cls(_freeze(rows))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        return SymplecticMatrix(mat_mul(self.entries, other.entries))

    def transpose(self) -> "SymplecticMatrix":
        return SymplecticMatrix(mat_transpose(self.entries))

    def minus_identity_kernel_dim(self) -> int:
        """Exact dimension of ker(M - I)."""
        n = self.dim
        delta = [[self.entries[i][j] - (1 if i == j else 0) for j in range(n)]
                 for i in range(n)]
        return n - _rational_rank(delta)


def check_symplectic(m: SymplecticMatrix) -> bool:
    """Exact test of M^T J M = J for the split form J."""
    j = standard_form(m.dim)
    lhs = mat_mul(mat_mul(mat_transpose(m.entries), j), m.entries)
    return lhs == j


def _rational_rank(rows) -> int:
    mat = [list(r) for r in rows]
    n_rows = len(mat)
    n_cols = len(mat[0]) if n_rows else 0
    rank = 0
    col = 0
    while rank < n_rows and col < n_cols:
        pivot = next((i for i in range(rank, n_rows) if mat[i][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for i in range(n_rows):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
        col += 1
    return rank


def symplectic_direct_sum(a: SymplecticMatrix, b: SymplecticMatrix) -> SymplecticMatrix:
    """Symplectic direct sum in split coordinates.

    Positions of the second summand are interleaved after positions of the
    first, then the momenta likewise; plain block-diagonal stacking would
    not preserve the split form.
    """
    ka, kb = a.dim // 2, b.dim // 2
    k = ka + kb
    zero = Fraction(0)
    rows = []
    for out_i in range(2 * k):
        row = [zero] * (2 * k)
        block_i, idx_i = divmod(out_i, k)
        if idx_i < ka:
            for block_j in (0, 1):
                for idx_j in range(ka):
                    row[block_j * k + idx_j] = a.entries[block_i * ka + idx_i][block_j * ka + idx_j]
        else:
            for block_j in (0, 1):
                for idx_j in range(kb):
                    row[block_j * k + ka + idx_j] = b.entries[block_i * kb + idx_i - ka][block_j * kb + idx_j]
        rows.append(tuple(row))
    return SymplecticMatrix(tuple(rows))


# ----------------------------------------------------------------------
# basic 2x2 / 4x4 blocks
# ----------------------------------------------------------------------


class BlockFamily(enum.Enum):
    N1_POS = "N1(1,1)"
    IDENTITY = "I2"
    N1_NEG = "N1(1,-1)"
    N1_MINUS_POS = "N1(-1,1)"
    MINUS_IDENTITY = "-I2"
    N1_MINUS_NEG = "N1(-1,-1)"
    ROTATION = "R(theta)"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class Block2x2:
    family: BlockFamily
    rotation: RotationNumber | None = None

    @property
    def label(self) -> str:
        return self.family.value


def shear_block(eigenvalue: int, sign: int) -> SymplecticMatrix:
    """The 2x2 block [[e, sign], [0, e]] with e = +1 or -1."""
    if eigenvalue not in (1, -1) or sign not in (1, -1):
        raise InputError("shear blocks take eigenvalue and sign in {+1, -1}")
    e = Fraction(eigenvalue)
    return SymplecticMatrix(((e, Fraction(sign)), (Fraction(0), e)))


def identity_block(sign: int = 1) -> SymplecticMatrix:
    e = Fraction(1 if sign >= 0 else -1)
    return SymplecticMatrix(((e, Fraction(0)), (Fraction(0), e)))


def _exact_circle_point(rho: RotationNumber,
                        denominator_limit: int = 10**12) -> tuple[Fraction, Fraction]:
    """A rational point (c, s) with c^2 + s^2 = 1 whose angle/(2*pi) is within
    about 1/denominator_limit of the rotation number.

    Built from a rational tangent half-angle, so the resulting rotation
    matrix is exactly orthogonal and exactly symplectic.
    """
    with mpmath.mp.workdps(40):
        t_real = mpmath.tan(mpmath.pi * mpmath.mpmathify(rho.value.center))
        t = Fraction(mpmath.nstr(t_real, 30)).limit_denominator(denominator_limit)
    c = (1 - t * t) / (1 + t * t)
    s = 2 * t / (1 + t * t)
    return c, s


def rotation_block(rho: RotationNumber) -> SymplecticMatrix:
    """Exactly symplectic plane rotation realizing the rotation number to
    roughly twelve decimal places."""
    c, s = _exact_circle_point(rho)
    return SymplecticMatrix(((c, -s), (s, c)))


def hyperbolic_block(lam) -> SymplecticMatrix:
    lam = as_fraction(lam)
    if lam == 0 or abs(lam) == 1:
        raise InputError("hyperbolic blocks need |eigenvalue| distinct from 0 and 1")
    return SymplecticMatrix(((lam, Fraction(0)), (Fraction(0), 1 / lam)))


def twisted_block(rho: RotationNumber, trivial: bool) -> SymplecticMatrix:
    """The 4x4 block [[R, b], [0, R]] with the off-diagonal coupling chosen
    so the sign invariant distinguishing trivial from non-trivial blocks
    holds; both choices keep the matrix exactly symplectic."""
    c, s = _exact_circle_point(rho)
    sign = Fraction(-1 if trivial else 1)
    b = ((sign * c, -sign * s), (sign * s, sign * c))
    zero = Fraction(0)
    rows = (
        (c, -s, b[0][0], b[0][1]),
        (s, c, b[1][0], b[1][1]),
        (zero, zero, c, -s),
        (zero, zero, s, c),
    )
    return SymplecticMatrix(rows)


def assemble_descriptor(d: NormalFormDescriptor) -> SymplecticMatrix:
    """Realize a descriptor as the direct sum of literal basic blocks.

    The hyperbolic part is instantiated with distinct real eigenvalue pairs
    (lam, 1/lam), lam = 2, 3, ...; only its dimension is contractual.
    """
    blocks: list[SymplecticMatrix] = []
    blocks += [shear_block(1, 1)] * d.p_minus
    blocks += [identity_block(1)] * d.p_zero
    blocks += [shear_block(1, -1)] * d.p_plus
    blocks += [shear_block(-1, 1)] * d.q_minus
    blocks += [identity_block(-1)] * d.q_zero
    blocks += [shear_block(-1, -1)] * d.q_plus
    blocks += [rotation_block(t) for t in d.thetas]
    blocks += [twisted_block(a, trivial=False) for a in d.alphas]
    blocks += [twisted_block(b, trivial=True) for b in d.betas]
    blocks += [hyperbolic_block(2 + i) for i in range(d.hyperbolic_dim // 2)]
    if not blocks:
        raise InputError("descriptor has no blocks to assemble")
    out = blocks[0]
    for blk in blocks[1:]:
        out = symplectic_direct_sum(out, blk)
    return out


# ----------------------------------------------------------------------
# classification of 2x2 blocks
# ----------------------------------------------------------------------


def _det2(m: SymplecticMatrix) -> Fraction:
    ((a, b), (c, d)) = m.entries
    return a * d - b * c


def _omega2(u, w) -> Fraction:
    # u^T J2 w for J2 = [[0,-1],[1,0]]
    return -u[0] * w[1] + u[1] * w[0]


def _nilpotent_sign(m: SymplecticMatrix, shift: int) -> int:
    """Sign of omega(v, (M - shift*I)v) over any v not killed by the shift;
    a symplectic conjugacy invariant separating the two shear families."""
    ((a, b), (c, d)) = m.entries
    n = ((a - shift, b), (c, d - shift))
    for v in ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))):
        w = (n[0][0] * v[0] + n[0][1] * v[1], n[1][0] * v[0] + n[1][1] * v[1])
        if w != (0, 0):
            val = _omega2(v, w)
            if val != 0:
                return 1 if val > 0 else -1
    raise InputError("matrix is the pure scaling; no shear part to classify")


_NIVEN = {
    Fraction(0): (Fraction(1, 4), Fraction(3, 4)),
    Fraction(1, 2): (Fraction(1, 6), Fraction(5, 6)),
    Fraction(-1, 2): (Fraction(1, 3), Fraction(2, 3)),
}


def _rotation_number_from_cos(half_trace: Fraction, positive_sense: bool) -> RotationNumber:
    if half_trace in _NIVEN:
        low, high = _NIVEN[half_trace]
        return RotationNumber.exact(low if positive_sense else high)
    # A rational cosine outside {0, +-1/2, +-1} forces an irrational angle.
    with mpmath.mp.workdps(_CLASSIFY_DPS):
        angle = mpmath.acos(mpmath.mpmathify(half_trace)) / (2 * mpmath.pi)
        text = mpmath.nstr(angle, 32)
    rho = text if positive_sense else str(1 - Fraction(text))
    return RotationNumber.decimal(str(rho), "1e-30", irrational=True)


def classify_2x2(m: SymplecticMatrix) -> Block2x2:
    """Place a 2x2 determinant-one matrix in its symplectic conjugacy family.

    Elliptic matrices report the rotation number recovered from the trace;
    the rotation sense is read off the lower-left entry, which has constant
    sign across the conjugacy class.
    """
    if m.dim != 2:
        raise InputError(f"classification needs a 2x2 matrix, got {m.dim}x{m.dim}")
    if _det2(m) != 1:
        raise InputError("matrix has determinant != 1; not symplectic")
    ((a, b), (c, d)) = m.entries
    tr = a + d
    if tr == 2:
        if (a, b, c, d) == (1, 0, 0, 1):
            return Block2x2(BlockFamily.IDENTITY)
        fam = BlockFamily.N1_POS if _nilpotent_sign(m, 1) > 0 else BlockFamily.N1_NEG
        return Block2x2(fam)
    if tr == -2:
        if (a, b, c, d) == (-1, 0, 0, -1):
            return Block2x2(BlockFamily.MINUS_IDENTITY)
        fam = (BlockFamily.N1_MINUS_POS if _nilpotent_sign(m, -1) > 0
               else BlockFamily.N1_MINUS_NEG)
        return Block2x2(fam)
    if abs(tr) > 2:
        return Block2x2(BlockFamily.HYPERBOLIC)
    rho = _rotation_number_from_cos(tr / 2, positive_sense=c > 0)
    return Block2x2(BlockFamily.ROTATION, rho)


# ----------------------------------------------------------------------
# spectra versus descriptors
# ----------------------------------------------------------------------


def characteristic_polynomial(m: SymplecticMatrix) -> list[Fraction]:
    """Monic characteristic polynomial coefficients, leading term first.

    Faddeev-LeVerrier over exact rationals; no pivoting, no rounding.
    """
    n = m.dim
    a = m.entries
    coeffs = [Fraction(1)]
    work = mat_identity(n)
    for k in range(1, n + 1):
        work = mat_mul(a, work)
        trace = sum(work[i][i] for i in range(n))
        ck = -trace / k
        coeffs.append(ck)
        if k < n:
            work = tuple(tuple(work[i][j] + (ck if i == j else 0) for j in range(n))
                         for i in range(n))
    return coeffs


def _spectrum(m: SymplecticMatrix, dps: int):
    coeffs = characteristic_polynomial(m)
    with mpmath.mp.workdps(dps):
        poly = [mpmath.mpmathify(c) for c in coeffs]
        roots = mpmath.polyroots(poly, maxsteps=200, extraprec=120, error=False)
        return [mpmath.mpc(r) for r in roots]


def descriptor_consistent(m: SymplecticMatrix, d: NormalFormDescriptor, tol) -> bool:
    """Does the unit-circle spectrum of ``m`` match the descriptor within tol?

    The trivial/non-trivial split of the twisted blocks is invisible to the
    spectrum and is deliberately ignored here; it lives only in the
    descriptor.
    """
    tol = as_fraction(tol)
    if tol <= 0:
        raise InputError("tolerance must be positive")
    if m.dim != d.dim:
        raise InputError(f"matrix dimension {m.dim} != descriptor dimension {d.dim}")
    digits = max(30, 15 + int(-mpmath.log10(float(tol))) if tol < 1 else 30)
    roots = _spectrum(m, digits)

    with mpmath.mp.workdps(digits):
        tol_f = mpmath.mpmathify(tol)
        on_circle = [z for z in roots if abs(abs(z) - 1) <= tol_f]
        off_circle = [z for z in roots if abs(abs(z) - 1) > tol_f]
        if len(off_circle) != d.hyperbolic_dim:
            return False

        expected: list[tuple[mpmath.mpc, mpmath.mpf]] = []

        def target(rho: RotationNumber, copies: int):
            slack = tol_f + 2 * mpmath.pi * mpmath.mpmathify(rho.value.width) / 2
            ang = 2 * mpmath.pi * mpmath.mpmathify(rho.value.center)
            z = mpmath.mpc(mpmath.cos(ang), mpmath.sin(ang))
            for _ in range(copies):
                expected.append((z, slack))
                expected.append((mpmath.conj(z), slack))

        for rho in d.thetas:
            target(rho, 1)
        for rho in d.alphas:
            target(rho, 2)
        for rho in d.betas:
            target(rho, 2)
        plus = d.p_minus + d.p_zero + d.p_plus
        minus = d.q_minus + d.q_zero + d.q_plus
        expected.extend((mpmath.mpc(1), tol_f) for _ in range(2 * plus))
        expected.extend((mpmath.mpc(-1), tol_f) for _ in range(2 * minus))

        if len(expected) != len(on_circle):
            return False
        remaining = list(on_circle)
        for z, slack in expected:
            best, best_dist = None, None
            for i, w in enumerate(remaining):
                dist = abs(w - z)
                if best_dist is None or dist < best_dist:
                    best, best_dist = i, dist
            if best is None or best_dist > slack:
                return False
            remaining.pop(best)
        return not remaining
