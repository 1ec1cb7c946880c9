"""Critical modules, Euler characteristics and Morse counts.

For a nondegenerate prime geodesic the local homology of the m-th iterate
is one-dimensional in degree i(c^m) when i(c^m) - i(c) is even and vanishes
otherwise.  Everything in this module is the combinatorics of that rule:
per-iterate Euler characteristics, their period-two average, windowed Morse
counts with a full contributor log, the two-sided Morse inequalities, and
the mean-index identity check.

These operations require every record to be free of eigenvalue-one blocks;
degenerate return maps would need local-homology data this engine does not
model, so they are rejected loudly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateError, InputError, WindowError
from .homology import mean_index_constant
from .iteration import GeodesicRecord, index_at, mean_index
from .scalars import BoundedReal, as_fraction, format_rational


@dataclass(frozen=True)
class CurvatureAssumption:
    """Inert metadata for pinched-curvature configurations.

    Presence of the assumption activates the input filter: every geodesic
    must have initial index at least n-1 and mean index strictly above n-1.
    """

    pinch: Fraction
    reversibility: Fraction

    def __post_init__(self):
        object.__setattr__(self, "pinch", as_fraction(self.pinch))
        object.__setattr__(self, "reversibility", as_fraction(self.reversibility))
        if not 0 < self.pinch <= 1:
            raise InputError(f"pinch constant {self.pinch} must lie in (0, 1]")
        if self.reversibility < 1:
            raise InputError(f"reversibility {self.reversibility} must be >= 1")


@dataclass(frozen=True)
class SphereConfiguration:
    """A finite list of prime closed geodesics on one sphere."""

    n: int
    geodesics: tuple[GeodesicRecord, ...]
    bumpy: bool = False
    curvature_assumption: CurvatureAssumption | None = None

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise InputError(f"sphere dimension must be an integer >= 2, got {self.n!r}")
        object.__setattr__(self, "geodesics", tuple(self.geodesics))
        seen = set()
        for g in self.geodesics:
            if g.label in seen:
                raise InputError(f"duplicate geodesic label {g.label!r}")
            seen.add(g.label)
            if g.descriptor.dim != 2 * (self.n - 1):
                raise InputError(
                    f"{g.label}: descriptor dimension {g.descriptor.dim} does not "
                    f"match the ambient dimension 2(n-1) = {2 * (self.n - 1)}")
            if self.bumpy and not g.is_bumpy:
                raise InputError(
                    f"{g.label}: configuration is flagged bumpy, but the descriptor "
                    "has root-of-unity eigenvalues (eigenvalue +-1 blocks or "
                    "rotation numbers not flagged irrational)")
            if self.curvature_assumption is not None:
                if g.initial_index < self.n - 1:
                    raise InputError(
                        f"{g.label}: initial index {g.initial_index} is below n-1 = "
                        f"{self.n - 1}, violating the pinched-curvature lower bound "
                        "on initial indices")
                if not mean_index(g).definitely_gt(self.n - 1):
                    raise InputError(
                        f"{g.label}: mean index {mean_index(g)} is not strictly above "
                        f"n-1 = {self.n - 1}, violating the pinched-curvature lower "
                        "bound on mean indices")

    def record(self, label: str) -> GeodesicRecord:
        for g in self.geodesics:
            if g.label == label:
                return g
        raise InputError(f"no geodesic labelled {label!r}")


def _require_nondegenerate(cfg_or_record) -> None:
    records = (cfg_or_record.geodesics
               if isinstance(cfg_or_record, SphereConfiguration) else (cfg_or_record,))
    for g in records:
        if not g.is_nondegenerate:
            raise DegenerateError(
                f"{g.label}: critical-module machinery needs a nondegenerate return "
                "map (no eigenvalue-one blocks)")


def critical_module_dim(g: GeodesicRecord, m: int, q: int) -> int:
    """Dimension (0 or 1) of the degree-q local homology of the m-th iterate:
    1 exactly when i(c^m) - i(c) is even and q = i(c^m)."""
    _require_nondegenerate(g)
    im = index_at(g, m)
    return 1 if (im - g.initial_index) % 2 == 0 and q == im else 0


def euler_chi(g: GeodesicRecord, m: int) -> int:
    """Euler characteristic of the m-th iterate's critical module:
    (-1)^{i(c^m)} when the parity criterion holds, else 0."""
    _require_nondegenerate(g)
    im = index_at(g, m)
    if (im - g.initial_index) % 2:
        return 0
    return -1 if im % 2 else 1


def avg_chi(g: GeodesicRecord) -> Fraction:
    """Period-two average (chi(c) + chi(c^2)) / 2 of the iterate Euler
    characteristics; equals the long-run average."""
    return Fraction(euler_chi(g, 1) + euler_chi(g, 2), 2)


def avg_chi_partial(g: GeodesicRecord, n_terms: int) -> Fraction:
    """Plain average of chi(c^m) over m = 1..n_terms, for convergence audits."""
    if n_terms < 1:
        raise InputError("need at least one term")
    return Fraction(sum(euler_chi(g, m) for m in range(1, n_terms + 1)), n_terms)


# -- mean-index identity -------------------------------------------------


@dataclass(frozen=True)
class IdentityTerm:
    label: str
    chi_hat: Fraction
    mean_index: BoundedReal


@dataclass(frozen=True)
class IdentityReport:
    lhs: BoundedReal
    rhs: Fraction
    passed: bool
    terms: tuple[IdentityTerm, ...]

    def describe(self) -> str:
        verdict = "holds" if self.passed else "FAILS"
        return (f"mean-index identity {verdict}: sum = {self.lhs}, "
                f"target = {format_rational(self.rhs)}")


def check_mean_index_identity(cfg: SphereConfiguration) -> IdentityReport:
    """Compare sum_j avg_chi(c_j)/mean_index(c_j) with the parity constant.

    Exact equality is demanded when every mean index is rational; with
    decimal rotation numbers the target must lie inside the propagated
    interval.
    """
    _require_nondegenerate(cfg)
    terms = []
    lhs = BoundedReal.exact(0)
    for g in cfg.geodesics:
        mi = mean_index(g)
        if not mi.definitely_gt(0):
            raise InputError(f"{g.label}: mean index {mi} is not strictly positive; "
                             "the identity is stated for positive mean indices")
        ch = avg_chi(g)
        terms.append(IdentityTerm(g.label, ch, mi))
        lhs = lhs + ch / mi
    rhs = mean_index_constant(cfg.n)
    return IdentityReport(lhs, rhs, lhs.contains(rhs), tuple(terms))


# -- windowed Morse counts ------------------------------------------------


@dataclass(frozen=True)
class MorseWindow:
    q_lo: int
    q_hi: int
    counts: tuple[int, ...]
    contributors: tuple[tuple[str, int, int], ...]  # (label, m, q), sorted

    def count(self, q: int) -> int:
        if not self.q_lo <= q <= self.q_hi:
            raise InputError(f"degree {q} outside window [{self.q_lo}, {self.q_hi}]")
        return self.counts[q - self.q_lo]

    def alternating_sum(self) -> int:
        return sum((-1) ** q * self.count(q) for q in range(self.q_lo, self.q_hi + 1))


def morse_counts(cfg: SphereConfiguration, q_lo: int, q_hi: int,
                 m_max: int) -> MorseWindow:
    """Count critical modules per degree over [q_lo, q_hi] using iterates up
    to m_max, with a full contributor log.

    The bound m_max must provably close the window: iterated indices grow by
    at least i(c) - e/2 per step, so it suffices that this increment is
    non-negative and the (m_max+1)-st index already clears q_hi.  Otherwise
    a WindowError names the offending geodesic.
    """
    _require_nondegenerate(cfg)
    if q_lo > q_hi:
        raise InputError(f"empty degree window [{q_lo}, {q_hi}]")
    if m_max < 1:
        raise InputError("m_max must be positive")
    for g in cfg.geodesics:
        growth = g.initial_index - g.descriptor.elliptic_height // 2
        if growth < 0:
            raise WindowError(
                f"{g.label}: index increments are not certified non-negative "
                f"(initial index {g.initial_index} < half elliptic height "
                f"{g.descriptor.elliptic_height // 2}); cannot close the window")
        if index_at(g, m_max + 1) <= q_hi:
            raise WindowError(
                f"{g.label}: iterate {m_max + 1} still has index "
                f"{index_at(g, m_max + 1)} <= {q_hi}; raise m_max")
    log = []
    for g in cfg.geodesics:
        for m in range(1, m_max + 1):
            im = index_at(g, m)
            if (im - g.initial_index) % 2 == 0 and q_lo <= im <= q_hi:
                log.append((g.label, m, im))
    log.sort()
    counts = [0] * (q_hi - q_lo + 1)
    for _, _, q in log:
        counts[q - q_lo] += 1
    return MorseWindow(q_lo, q_hi, tuple(counts), tuple(log))


# -- Morse inequalities ----------------------------------------------------


@dataclass(frozen=True)
class MorseInequalityReport:
    passed: bool
    first_violation: tuple[str, int] | None  # (kind, degree)

    def describe(self) -> str:
        if self.passed:
            return "Morse inequalities hold (degreewise and alternating)"
        kind, q = self.first_violation
        return f"Morse inequalities FAIL: {kind} inequality at degree {q}"


def check_morse_inequalities(m_seq, b_seq) -> MorseInequalityReport:
    """Verify M_q >= b_q for each degree and every alternating partial sum
    sum_{j<=q} (-1)^(q-j) (M_j - b_j) >= 0; sequences are indexed from 0."""
    m_seq = list(m_seq)
    b_seq = list(b_seq)
    if len(m_seq) != len(b_seq):
        raise InputError(
            f"sequence lengths differ: {len(m_seq)} counts vs {len(b_seq)} ranks")
    violation = None
    for q, (mq, bq) in enumerate(zip(m_seq, b_seq)):
        if mq < bq:
            violation = ("degreewise", q)
            break
    if violation is None:
        # S_q = (M_q - b_q) - S_{q-1} is the alternating partial sum at q
        acc = 0
        for q in range(len(m_seq)):
            acc = (m_seq[q] - b_seq[q]) - acc
            if acc < 0:
                violation = ("alternating", q)
                break
    return MorseInequalityReport(violation is None, violation)
