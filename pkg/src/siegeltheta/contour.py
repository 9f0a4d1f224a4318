"""Polygonal contours in the complex plane, adaptive edge quadrature, and
trapezoid-rule residue extraction on circles."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator

import numpy as np

from .errors import ConvergenceError, DomainError

__all__ = [
    "ContourPath",
    "QuadratureConfig",
    "integrate_closed",
    "integrate_edge",
    "residue_by_circle",
    "rhombus_contour",
]

Integrand = Callable[[complex], complex]


@dataclass(frozen=True)
class QuadratureConfig:
    """tol: absolute error target per edge; max_depth: subdivision limit;
    nodes_per_panel: Gauss-Legendre order per panel (also the trapezoid seed)."""

    tol: float = 1e-10
    max_depth: int = 16
    nodes_per_panel: int = 15

    def __post_init__(self):
        if not self.tol > 0.0:
            raise DomainError(f"tol must be positive, got {self.tol!r}")
        if self.max_depth < 1:
            raise DomainError(f"max_depth must be >= 1, got {self.max_depth!r}")
        if self.nodes_per_panel < 1:
            raise DomainError(
                f"nodes_per_panel must be >= 1, got {self.nodes_per_panel!r}"
            )


_DEFAULT_CFG = QuadratureConfig()


@dataclass(frozen=True)
class ContourPath:
    """Ordered polygonal path; closed paths wrap from the last vertex to the first."""

    vertices: tuple[complex, ...]
    closed: bool = True

    def __post_init__(self):
        vertices = tuple(complex(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vertices)
        if len(vertices) < 2:
            raise DomainError("a path needs at least two vertices")
        pairs = list(zip(vertices, vertices[1:]))
        if self.closed:
            pairs.append((vertices[-1], vertices[0]))
        if any(a == b for a, b in pairs):
            raise DomainError("consecutive vertices must be distinct")

    def edges(self) -> Iterator[tuple[complex, complex]]:
        yield from zip(self.vertices, self.vertices[1:])
        if self.closed:
            yield self.vertices[-1], self.vertices[0]

    def signed_area(self) -> float:
        """Shoelace area; positive for counterclockwise traversal."""
        total = 0.0
        for a, b in self.edges():
            total += a.real * b.imag - b.real * a.imag
        return 0.5 * total

    def is_counterclockwise(self) -> bool:
        return self.signed_area() > 0.0

    def reversed(self) -> "ContourPath":
        return ContourPath(tuple(reversed(self.vertices)), self.closed)


def rhombus_contour(y: float) -> ContourPath:
    """Closed rhombus -i -> y -> i -> -y, counterclockwise; area 2y."""
    if not (isinstance(y, (int, float)) and math.isfinite(y) and y > 0.0):
        raise DomainError(f"y must be a positive finite real, got {y!r}")
    return ContourPath((-1j, complex(y), 1j, complex(-y)), closed=True)


@lru_cache(maxsize=None)
def _gauss_rule(order: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return tuple(nodes.tolist()), tuple(weights.tolist())


def integrate_edge(
    f: Integrand, start, end, cfg: QuadratureConfig | None = None
) -> tuple[complex, float]:
    """Integrate f along the straight segment start -> end.

    Gauss-Legendre panels refined by adaptive bisection until the local
    error estimate (coarse vs refined panel) is below a share of cfg.tol.
    Returns (value, error estimate); raises ConvergenceError if the total
    estimate still exceeds cfg.tol at max_depth.
    """
    cfg = cfg or _DEFAULT_CFG
    start = complex(start)
    end = complex(end)
    nodes, weights = _gauss_rule(cfg.nodes_per_panel)

    def panel(a: complex, b: complex) -> complex:
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        return half * sum(w * f(mid + half * x) for x, w in zip(nodes, weights))

    def refine(a, b, coarse, depth, tol):
        mid = 0.5 * (a + b)
        left = panel(a, mid)
        right = panel(mid, b)
        err = abs(left + right - coarse)
        if err <= tol or depth >= cfg.max_depth:
            return left + right, err
        lv, le = refine(a, mid, left, depth + 1, 0.5 * tol)
        rv, re = refine(mid, b, right, depth + 1, 0.5 * tol)
        return lv + rv, le + re

    value, err = refine(start, end, panel(start, end), 1, cfg.tol)
    if err > cfg.tol:
        raise ConvergenceError(
            f"edge quadrature error estimate {err:.3e} > tol={cfg.tol:.3e} "
            f"at max_depth={cfg.max_depth}",
            achieved=err,
        )
    return value, err


def integrate_closed(
    f: Integrand, path: ContourPath, cfg: QuadratureConfig | None = None
) -> tuple[complex, float]:
    """Sum of edge integrals around a closed path; error estimates add up."""
    if not path.closed:
        raise DomainError("integrate_closed requires a closed path")
    total = 0.0j
    err = 0.0
    for a, b in path.edges():
        value, edge_err = integrate_edge(f, a, b, cfg)
        total += value
        err += edge_err
    return total, err


def residue_by_circle(
    f: Integrand, center, radius: float, cfg: QuadratureConfig | None = None
) -> complex:
    """(1/2 pi i) times the integral of f over the circle around center.

    Periodic trapezoid rule with node doubling; spectrally accurate as long
    as f is analytic in a neighborhood of the circle, so the caller must
    keep radius at most half the distance to the nearest other singularity.
    """
    cfg = cfg or _DEFAULT_CFG
    center = complex(center)
    if not (math.isfinite(radius) and radius > 0.0):
        raise DomainError(f"radius must be a positive finite real, got {radius!r}")
    count = max(4, cfg.nodes_per_panel)
    previous = None
    gap = math.inf
    for _ in range(cfg.max_depth + 1):
        total = 0.0j
        for j in range(count):
            direction = cmath.exp(2j * math.pi * j / count)
            total += f(center + radius * direction) * direction
        approx = total * radius / count
        if previous is not None:
            gap = abs(approx - previous)
            if gap <= cfg.tol:
                return approx
        previous = approx
        count *= 2
    raise ConvergenceError(
        f"circle quadrature did not settle below tol={cfg.tol:.3e} "
        f"within {count // 2} nodes",
        achieved=gap,
    )
