"""Jacobi theta functions from their infinite products.

theta1 is evaluated from

    theta1(z, tau) = -i w q^(1/4) prod_{n>=1} (1-q^(2n)) (1-w^2 q^(2n)) (1-w^-2 q^(2n-2)),

with q = exp(pi i tau), w = exp(pi i z) and tau in the upper half-plane.
theta3 uses the analogous triple product; theta2 and theta4 are derived
through the half-period shifts theta2(z) = -theta1(z - 1/2) and
theta4(z) = theta3(z + 1/2).

The inversion law

    theta1(z/tau, -1/tau) = -i (-i tau)^(1/2) exp(pi i z^2 / tau) theta1(z, tau)

is exposed both as an identity (`inversion_rhs`) and as an accelerator
(`theta1_reduced`): when |tau| < 1 the product converges much faster at
-1/tau, so the law is solved for theta1(z, tau) and evaluated there.

All arithmetic is binary64; products are truncated by an a priori
geometric tail bound controlled through `EvalConfig`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ConvergenceError, DomainError

__all__ = [
    "EvalConfig",
    "ThetaEval",
    "inversion_rhs",
    "nome",
    "principal_pow",
    "product_terms",
    "require_tau",
    "theta1",
    "theta1_reduced",
    "theta1_series",
    "theta2",
    "theta3",
    "theta4",
]

_PI = math.pi
_IPI = 1j * math.pi


@dataclass(frozen=True)
class EvalConfig:
    """Truncation control for the theta products and series.

    eps: target absolute tolerance for the truncation tail bound.
    max_terms: hard cap on the number of product/series terms.
    reduction_enabled: whether `theta1_reduced` may invert tau.
    """

    eps: float = 1e-12
    max_terms: int = 5000
    reduction_enabled: bool = True

    def __post_init__(self):
        if not 0.0 < self.eps < 1.0:
            raise DomainError(f"eps must lie in (0, 1), got {self.eps!r}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms!r}")


_DEFAULT_CFG = EvalConfig()


class ThetaEval(NamedTuple):
    value: complex
    terms_used: int
    reduced: bool


def _as_complex(value, name: str) -> complex:
    value = complex(value)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def _require_finite(value: complex, what: str) -> complex:
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise OverflowError(f"{what} overflowed the binary64 range")
    return value


def require_tau(tau) -> complex:
    """Validate membership of tau in the upper half-plane and return it."""
    tau = _as_complex(tau, "tau")
    if tau.imag <= 0.0:
        raise DomainError(f"tau={tau!r} is not in the upper half-plane")
    return tau


def nome(tau) -> complex:
    """Nome q = exp(pi i tau); |q| = exp(-pi Im tau) < 1."""
    return cmath.exp(_IPI * require_tau(tau))


def principal_pow(base, exponent) -> complex:
    """base**exponent through exp(exponent * log base) with arg in (-pi, pi].

    A real negative base gets arg = +pi even when its imaginary part is a
    negative zero.
    """
    base = _as_complex(base, "base")
    exponent = _as_complex(exponent, "exponent")
    if base == 0:
        raise DomainError("principal power of a zero base is undefined")
    if base.imag == 0.0:
        base = complex(base.real, 0.0)
    return cmath.exp(exponent * cmath.log(base))


def _log_factor_scale(log_abs_w: float) -> float:
    # log of 1 + |w|^2 + |w|^-2, evaluated without overflow
    two = 2.0 * log_abs_w
    m = max(two, -two, 0.0)
    return m + math.log(math.exp(-m) + math.exp(two - m) + math.exp(-two - m))


def _product_length(abs_q: float, log_abs_w: float, cfg: EvalConfig) -> int:
    """Smallest M with |q|^(2M) (1+|w|^2+|w|^-2) / (1-|q|^2) < eps.

    The left side dominates the sum of the remaining log-factors of the
    product, so the truncated product is within eps of the full one
    (relatively); everything is solved in log space to dodge overflow.
    """
    log_q2 = 2.0 * math.log(abs_q)
    log_c = _log_factor_scale(log_abs_w) - math.log1p(-abs_q * abs_q)
    target = math.log(cfg.eps) - log_c
    terms = max(1, math.ceil(target / log_q2))
    if terms > cfg.max_terms:
        achieved = math.exp(min(700.0, cfg.max_terms * log_q2 + log_c))
        raise ConvergenceError(
            f"product tail bound {achieved:.3e} > eps={cfg.eps:.3e} "
            f"at max_terms={cfg.max_terms}",
            achieved=achieved,
        )
    return terms


def product_terms(z, tau, cfg: EvalConfig | None = None) -> int:
    """Product length the truncation bound dictates at (z, tau)."""
    cfg = cfg or _DEFAULT_CFG
    tau = require_tau(tau)
    z = _as_complex(z, "z")
    abs_q = math.exp(-_PI * tau.imag)
    return _product_length(abs_q, -_PI * z.imag, cfg)


def _theta1_product(z: complex, tau: complex, cfg: EvalConfig):
    terms = product_terms(z, tau, cfg)
    z = complex(z)
    tau = complex(tau)
    prefactor = -1j * cmath.exp(_IPI * (z + tau / 4.0))
    prod = 1.0 + 0.0j
    for n in range(1, terms + 1):
        f1 = 1.0 - cmath.exp(_IPI * (2.0 * n) * tau)
        f2 = 1.0 - cmath.exp(_IPI * ((2.0 * n) * tau + 2.0 * z))
        f3 = 1.0 - cmath.exp(_IPI * ((2.0 * n - 2.0) * tau - 2.0 * z))
        if f1 == 0 or f2 == 0 or f3 == 0:
            # z sits on the zero lattice m + n tau: return the exact zero
            return 0.0j, n
        prod *= f1 * f2 * f3
    return _require_finite(prefactor * prod, "theta1 product"), terms


def theta1(z, tau, cfg: EvalConfig | None = None) -> complex:
    """First theta function, odd in z, from its product representation."""
    value, _ = _theta1_product(z, tau, cfg or _DEFAULT_CFG)
    return value


def theta1_series(z, tau, cfg: EvalConfig | None = None) -> complex:
    """theta1 from the sine series 2 sum (-1)^n q^((n+1/2)^2) sin((2n+1) pi z).

    Entirely independent of the product route, which makes it the natural
    cross-check oracle.  Truncation stops once a geometric bound on the
    remaining terms drops below cfg.eps.
    """
    cfg = cfg or _DEFAULT_CFG
    tau = require_tau(tau)
    z = _as_complex(z, "z")
    log_q = -_PI * tau.imag
    log_growth = 2.0 * _PI * abs(z.imag)
    log_eps = math.log(cfg.eps)
    total = 0.0j
    sign = 1.0
    for n in range(cfg.max_terms):
        half = n + 0.5
        total += 2.0 * sign * cmath.exp(_IPI * tau * half * half) * cmath.sin(
            (2 * n + 1) * _PI * z
        )
        sign = -sign
        # bound on term n+1 and on the ratio of successive term bounds
        log_next = math.log(2.0) + (half + 1.0) ** 2 * log_q + (2 * n + 3) * _PI * abs(z.imag)
        log_ratio = (2 * n + 4) * log_q + log_growth
        if log_ratio < 0.0:
            log_tail = log_next - math.log1p(-math.exp(log_ratio))
            if log_tail < log_eps:
                return _require_finite(total, "theta1 series")
    raise ConvergenceError(
        f"series tail bound not below eps={cfg.eps:.3e} within "
        f"max_terms={cfg.max_terms}",
        achieved=math.exp(min(700.0, log_next)),
    )


def _theta3_product(z: complex, tau: complex, cfg: EvalConfig):
    terms = product_terms(z, tau, cfg)
    z = complex(z)
    tau = complex(tau)
    prod = 1.0 + 0.0j
    for n in range(1, terms + 1):
        f1 = 1.0 - cmath.exp(_IPI * (2.0 * n) * tau)
        f2 = 1.0 + cmath.exp(_IPI * ((2.0 * n - 1.0) * tau + 2.0 * z))
        f3 = 1.0 + cmath.exp(_IPI * ((2.0 * n - 1.0) * tau - 2.0 * z))
        if f1 == 0 or f2 == 0 or f3 == 0:
            return 0.0j, n
        prod *= f1 * f2 * f3
    return _require_finite(prod, "theta3 product"), terms


def theta3(z, tau, cfg: EvalConfig | None = None) -> complex:
    """Third theta function from the triple product."""
    value, _ = _theta3_product(z, tau, cfg or _DEFAULT_CFG)
    return value


def theta4(z, tau, cfg: EvalConfig | None = None) -> complex:
    """theta4(z) = theta3(z + 1/2)."""
    return theta3(_as_complex(z, "z") + 0.5, tau, cfg)


def theta2(z, tau, cfg: EvalConfig | None = None) -> complex:
    """theta2(z) = -theta1(z - 1/2)."""
    return -theta1(_as_complex(z, "z") - 0.5, tau, cfg)


def _inversion_prefactor(z: complex, tau: complex) -> complex:
    return -1j * principal_pow(-1j * tau, 0.5) * cmath.exp(_IPI * z * z / tau)


def inversion_rhs(z, tau, cfg: EvalConfig | None = None) -> complex:
    """Right side of the inversion law: -i (-i tau)^(1/2) e^(pi i z^2/tau) theta1(z, tau)."""
    tau = require_tau(tau)
    z = _as_complex(z, "z")
    return _require_finite(
        _inversion_prefactor(z, tau) * theta1(z, tau, cfg), "inversion right side"
    )


def theta1_reduced(z, tau, cfg: EvalConfig | None = None) -> ThetaEval:
    """Evaluate theta1, inverting tau -> -1/tau first when |tau| < 1.

    Im(-1/tau) = Im(tau)/|tau|^2 exceeds Im(tau) inside the unit disc, so
    the product at the inverted point needs far fewer terms; the inversion
    law is then solved for theta1(z, tau).  Outside the disc (or with
    reduction disabled) this is a plain product evaluation.
    """
    cfg = cfg or _DEFAULT_CFG
    tau = require_tau(tau)
    z = _as_complex(z, "z")
    if not (cfg.reduction_enabled and abs(tau) < 1.0):
        value, terms = _theta1_product(z, tau, cfg)
        return ThetaEval(value, terms, False)
    inner, terms = _theta1_product(z / tau, -1.0 / tau, cfg)
    value = inner / _inversion_prefactor(z, tau)
    return ThetaEval(_require_finite(value, "reduced theta1"), terms, True)
