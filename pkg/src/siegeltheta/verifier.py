"""Numerical replay of the residue-calculus route to the theta1 inversion law.

For tau = iy the logarithm of the theta1 product expands into three Lambert
sums plus an explicit prefactor log; the same expansion at the inverted
point (z/(iy), i/y) gives three more.  Their difference

    phi(z, iy) = log theta1(z, iy) - log theta1(z/(iy), i/y)

has the closed form checked here: six Lambert sums plus
-pi z/y + pi i z - (pi/4)(y - 1/y).

The sums are reproduced a second way through a meromorphic kernel with a
triple pole at 0 and simple poles at ik/N and ky/N (N = n + 1/2): the
closed-form residues summed over |k| <= n equal the Lambert sums truncated
at n, and the kernel's edge limits on the rhombus (-i, y, i, -y) are
+-1/8, which pins the contour integral in the n -> inf limit and yields

    phi(z, iy) + pi z^2/y - pi i/2 = -(1/2) log y,

the log form of the inversion law.  Every step is exposed as an operation
so each can be verified independently at finite n.

Validity domain: z = a + ib with b < 0 < a < 1 and y > |b|.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError, PoleProximityError
from .theta import inversion_rhs, require_tau, theta1

__all__ = [
    "EDGES",
    "DomainPoint",
    "ResidueBreakdown",
    "SeriesConfig",
    "closed_residue_sum",
    "edge_endpoints",
    "edge_limit_residual",
    "edge_limit_target",
    "edge_limit_value",
    "inversion_log_ratio",
    "inversion_log_ratio_lambert",
    "lambert_terms",
    "log_identity_residual",
    "log_theta1_lambert",
    "pole_distance",
    "residue_at_zero",
    "residue_imag_pole",
    "residue_kernel",
    "residue_real_pole",
    "transformation_residual",
]

_PI = math.pi
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class DomainPoint:
    """Evaluation point (z = a + ib, tau = iy) with truncation index n.

    The constraints b < 0 < a < 1 and y > |b| make every series involved
    converge; N = n + 1/2 places the kernel's poles strictly off the
    half-integer lattice used by the contour.
    """

    a: float
    b: float
    y: float
    n: int = 1

    def __post_init__(self):
        for name in ("a", "b", "y"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise DomainError(f"{name} must be a finite real, got {value!r}")
        if not self.b < 0.0:
            raise DomainError(f"b must be negative, got {self.b!r}")
        if not 0.0 < self.a < 1.0:
            raise DomainError(f"a must lie in (0, 1), got {self.a!r}")
        if not self.y > abs(self.b):
            raise DomainError(f"y must exceed |b|, got y={self.y!r}, b={self.b!r}")
        if not (isinstance(self.n, int) and self.n >= 1):
            raise DomainError(f"n must be a positive integer, got {self.n!r}")

    @property
    def z(self) -> complex:
        return complex(self.a, self.b)

    @property
    def N(self) -> float:
        return self.n + 0.5


@dataclass(frozen=True)
class SeriesConfig:
    """Truncation control for the Lambert sums."""

    eps: float = 1e-13
    max_m: int = 4000

    def __post_init__(self):
        if not self.eps > 0.0:
            raise DomainError(f"eps must be positive, got {self.eps!r}")
        if self.max_m < 1:
            raise DomainError(f"max_m must be >= 1, got {self.max_m!r}")


_DEFAULT_CFG = SeriesConfig()


# ---------------------------------------------------------------------------
# Lambert sums
# ---------------------------------------------------------------------------

def _terms_for_rate(rate: float, cfg: SeriesConfig) -> int:
    # smallest M with e^(-2 pi M rate) / (M (1 - e^(-2 pi rate))) < eps,
    # conservatively dropping the helpful 1/M factor
    denom = -math.expm1(-_TWO_PI * rate)
    terms = max(1, math.ceil(-math.log(cfg.eps * denom) / (_TWO_PI * rate)))
    if terms > cfg.max_m:
        achieved = math.exp(-_TWO_PI * cfg.max_m * rate) / (cfg.max_m * denom)
        raise ConvergenceError(
            f"Lambert tail bound {achieved:.3e} > eps={cfg.eps:.3e} "
            f"at max_m={cfg.max_m}",
            achieved=achieved,
        )
    return terms


def lambert_terms(p: DomainPoint, cfg: SeriesConfig | None = None) -> int:
    """Series length needed by the boundary-log sums at p.

    The three sums decay like e^(-2 pi m y), e^(-2 pi m (y-|b|)) and
    e^(-2 pi m |b|); the slowest of these sets the length.
    """
    cfg = cfg or _DEFAULT_CFG
    return _terms_for_rate(min(p.y - abs(p.b), abs(p.b)), cfg)


def _inverted_terms(p: DomainPoint, cfg: SeriesConfig) -> int:
    # inverted-point sums decay at rates 1/y, (1-a)/y, a/y
    return _terms_for_rate(min(p.a, 1.0 - p.a) / p.y, cfg)


def _tau_side_term(m: int, z: complex, y: float) -> complex:
    # (1/m)/(1-e^(2m pi y)) + (e^(2m pi i z)/m)/(1-e^(2m pi y))
    #   + (e^(-2m pi i z)/m) e^(2m pi y)/(1-e^(2m pi y)),
    # rewritten through e^(-2m pi y) so nothing overflows
    s = _TWO_PI * m
    decay = math.exp(-s * y)
    d = 1.0 - decay
    t1 = -decay / d
    t2 = -cmath.exp(s * (1j * z - y)) / d
    t3 = -cmath.exp(-1j * s * z) / d
    return (t1 + t2 + t3) / m


def _inverted_side_term(m: int, z: complex, y: float) -> complex:
    # same three shapes at the inverted point: arguments z/y, modulus 1/y
    s = _TWO_PI * m / y
    decay = math.exp(-s)
    d = 1.0 - decay
    t1 = -decay / d
    t2 = -cmath.exp(s * (z - 1.0)) / d
    t3 = -cmath.exp(-s * z) / d
    return (t1 + t2 + t3) / m


def _ratio_closed_tail(z: complex, y: float) -> complex:
    return -_PI * z / y + 1j * _PI * z - (_PI / 4.0) * (y - 1.0 / y)


def log_theta1_lambert(p: DomainPoint, cfg: SeriesConfig | None = None) -> complex:
    """log theta1(z, iy) in expanded form: -i pi/2 + i pi z - pi y/4 + sums.

    The expansion fixes the branch; no principal log of the product's value
    is ever taken, so the result is directly comparable across arguments.
    """
    cfg = cfg or _DEFAULT_CFG
    z, y = p.z, p.y
    total = complex(0.0, -_PI / 2.0) + 1j * _PI * z - _PI * y / 4.0
    for m in range(1, lambert_terms(p, cfg) + 1):
        total += _tau_side_term(m, z, y)
    return total


def _log_theta1_inverted(p: DomainPoint, cfg: SeriesConfig) -> complex:
    # log theta1(z/(iy), i/y), same expansion with prefactor pi z/y - pi/(4y)
    z, y = p.z, p.y
    total = complex(0.0, -_PI / 2.0) + _PI * z / y - _PI / (4.0 * y)
    for m in range(1, _inverted_terms(p, cfg) + 1):
        total += _inverted_side_term(m, z, y)
    return total


def inversion_log_ratio(p: DomainPoint, cfg: SeriesConfig | None = None) -> complex:
    """phi = log theta1(z, iy) - log theta1(z/(iy), i/y), both logs expanded."""
    cfg = cfg or _DEFAULT_CFG
    return log_theta1_lambert(p, cfg) - _log_theta1_inverted(p, cfg)


def inversion_log_ratio_lambert(
    p: DomainPoint, cfg: SeriesConfig | None = None
) -> complex:
    """phi in its closed arrangement: six Lambert sums plus the closed tail."""
    cfg = cfg or _DEFAULT_CFG
    z, y = p.z, p.y
    terms = max(lambert_terms(p, cfg), _inverted_terms(p, cfg))
    total = 0.0j
    for m in range(1, terms + 1):
        total += _tau_side_term(m, z, y) - _inverted_side_term(m, z, y)
    return total + _ratio_closed_tail(z, y)


# ---------------------------------------------------------------------------
# The residue kernel and its closed-form residues
# ---------------------------------------------------------------------------

def pole_distance(zeta: complex, p: DomainPoint) -> float:
    """Distance from zeta to the kernel's pole set {ik/N} U {ky/N}, k in Z."""
    zeta = complex(zeta)
    cap = p.N
    k_imag = round(zeta.imag * cap)
    d_imag = math.hypot(zeta.real, zeta.imag - k_imag / cap)
    k_real = round(zeta.real * cap / p.y)
    d_real = math.hypot(zeta.real - k_real * p.y / cap, zeta.imag)
    return min(d_imag, d_real)


def _cot(w: complex) -> complex:
    return 1.0 / cmath.tan(w)


def _inv_one_minus_exp(s: complex) -> complex:
    # 1/(1 - e^s) without overflow for Re s >> 0
    if s.real > 0.0:
        es = cmath.exp(-s)
        return -es / (1.0 - es)
    return 1.0 / (1.0 - cmath.exp(s))


def residue_kernel(zeta, p: DomainPoint) -> complex:
    """Meromorphic kernel whose residues reproduce the Lambert sums.

        -cot(pi i N zeta) cot(pi N zeta / y) / (8 zeta)
            + [1/(1-e^(2 pi N zeta))] [e^(-2 pi i (N/y)(1-z) zeta)
               / (1-e^(-2 pi i (N/y) zeta))] / zeta

    Triple pole at 0, simple poles at ik/N and ky/N for nonzero integer k.
    Evaluation closer than 1e-12/N to any pole raises PoleProximityError.
    """
    zeta = complex(zeta)
    if pole_distance(zeta, p) < 1e-12 / p.N:
        raise PoleProximityError(f"zeta={zeta!r} is within 1e-12/N of a kernel pole")
    cap, y, z = p.N, p.y, p.z
    first = -_cot(_PI * 1j * cap * zeta) * _cot(_PI * cap * zeta / y) / (8.0 * zeta)
    b = -2j * _PI * (cap / y) * zeta
    a = (1.0 - z) * b
    if b.real > 0.0:
        ratio = -cmath.exp(a - b) / (1.0 - cmath.exp(-b))
    else:
        ratio = cmath.exp(a) / (1.0 - cmath.exp(b))
    second = _inv_one_minus_exp(_TWO_PI * cap * zeta) * ratio / zeta
    value = first + second
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise OverflowError("residue kernel overflowed the binary64 range")
    return value


def residue_at_zero(p: DomainPoint) -> complex:
    """Residue at the triple pole: i(y - 1/y)/8 + z/2 - i z^2/(2y) + i z/(2y) - 1/4.

    Carries no N, hence no dependence on p.n.
    """
    z, y = p.z, p.y
    return 0.125j * (y - 1.0 / y) + 0.5 * z - 0.5j * z * z / y + 0.5j * z / y - 0.25


def residue_imag_pole(k: int, p: DomainPoint) -> complex:
    """Residue at ik/N for nonzero integer k (closed form, N-free)."""
    if k == 0:
        raise DomainError("k must be nonzero")
    z, y = p.z, p.y
    first = 1.0 / math.tanh(_PI * k / y) / (8j * _PI * k)
    s = _TWO_PI * k / y
    if k > 0:
        second = cmath.exp(-s * z) / (1.0 - math.exp(-s)) / (2j * _PI * k)
    else:
        second = -cmath.exp(s * (1.0 - z)) / (1.0 - math.exp(s)) / (2j * _PI * k)
    return first + second


def residue_real_pole(k: int, p: DomainPoint) -> complex:
    """Residue at ky/N for nonzero integer k (closed form, N-free)."""
    if k == 0:
        raise DomainError("k must be nonzero")
    z, y = p.z, p.y
    first = -1.0 / math.tanh(_PI * k * y) / (8j * _PI * k)
    s = _TWO_PI * k * y
    if k > 0:
        second = -cmath.exp(2j * _PI * k * z - s) / (1.0 - math.exp(-s)) / (2j * _PI * k)
    else:
        second = cmath.exp(2j * _PI * k * z) / (1.0 - math.exp(s)) / (2j * _PI * k)
    return first + second


@dataclass(frozen=True)
class ResidueBreakdown:
    """All residues enclosed by the rhombus for a given n, plus their total."""

    at_zero: complex
    at_imag: tuple[tuple[int, complex], ...]
    at_real: tuple[tuple[int, complex], ...]
    total_times_2pi_i: complex

    @classmethod
    def compute(cls, p: DomainPoint) -> "ResidueBreakdown":
        ks = [k for k in range(-p.n, p.n + 1) if k != 0]
        at_zero = residue_at_zero(p)
        at_imag = tuple((k, residue_imag_pole(k, p)) for k in ks)
        at_real = tuple((k, residue_real_pole(k, p)) for k in ks)
        total = at_zero + sum(v for _, v in at_imag) + sum(v for _, v in at_real)
        return cls(at_zero, at_imag, at_real, 2j * _PI * total)


def closed_residue_sum(p: DomainPoint) -> complex:
    """2 pi i times the enclosed residues, in closed summed form.

    Equals the Lambert sums truncated at n plus
    -(pi/4)(y - 1/y) + pi i z + pi z^2/y - pi z/y - pi i/2; identical to
    `ResidueBreakdown.total_times_2pi_i` up to roundoff.
    """
    z, y = p.z, p.y
    total = 0.0j
    for k in range(1, p.n + 1):
        total += _tau_side_term(k, z, y) - _inverted_side_term(k, z, y)
    return total + _ratio_closed_tail(z, y) + _PI * z * z / y - 0.5j * _PI


# ---------------------------------------------------------------------------
# Edge limits and the closing identities
# ---------------------------------------------------------------------------

EDGES = ("E1", "E2", "E3", "E4")

_EDGE_TARGET = {"E1": -0.125, "E2": 0.125, "E3": -0.125, "E4": 0.125}


def edge_endpoints(edge: str, y: float) -> tuple[complex, complex]:
    """Start and end of a named rhombus edge: E1 (-i,y), E2 (y,i), E3 (i,-y), E4 (-y,-i)."""
    if edge == "E1":
        return -1j, complex(y)
    if edge == "E2":
        return complex(y), 1j
    if edge == "E3":
        return 1j, complex(-y)
    if edge == "E4":
        return complex(-y), -1j
    raise DomainError(f"unknown edge {edge!r}; expected one of {EDGES}")


def edge_limit_target(edge: str) -> float:
    """Limit of zeta * kernel(zeta) on the named edge: +1/8 on E2/E4, -1/8 on E1/E3."""
    try:
        return _EDGE_TARGET[edge]
    except KeyError:
        raise DomainError(f"unknown edge {edge!r}; expected one of {EDGES}") from None


def edge_limit_value(edge: str, t: float, p: DomainPoint) -> complex:
    """zeta * kernel(zeta) at zeta = (1-t) start + t end of the named edge.

    Poles accumulate at the vertices as n grows, so t must stay at least
    0.05 away from the endpoints.
    """
    start, end = edge_endpoints(edge, p.y)
    if not 0.05 <= t <= 0.95:
        raise DomainError(f"t={t!r} must lie in [0.05, 0.95]")
    zeta = (1.0 - t) * start + t * end
    return zeta * residue_kernel(zeta, p)


def edge_limit_residual(edge: str, t: float, p: DomainPoint) -> float:
    """|zeta F(zeta) -+ 1/8| at the named edge point."""
    return abs(edge_limit_value(edge, t, p) - edge_limit_target(edge))


def log_identity_residual(p: DomainPoint, cfg: SeriesConfig | None = None) -> float:
    """|phi + pi z^2/y - pi i/2 + (1/2) log y|, zero iff the log identity holds."""
    phi = inversion_log_ratio_lambert(p, cfg)
    return abs(phi + _PI * p.z * p.z / p.y - 0.5j * _PI + 0.5 * math.log(p.y))


def transformation_residual(z, tau, cfg=None) -> float:
    """Relative gap between theta1(z/tau, -1/tau) and the inversion right side.

    Normalized by max(1, |rhs|); works for general tau in the upper
    half-plane, not only tau = iy.
    """
    tau = require_tau(tau)
    z = complex(z)
    rhs = inversion_rhs(z, tau, cfg)
    lhs = theta1(z / tau, -1.0 / tau, cfg)
    return abs(lhs - rhs) / max(1.0, abs(rhs))
