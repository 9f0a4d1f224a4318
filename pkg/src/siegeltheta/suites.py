"""Check suites, seeded samplers, sweeps, and the report records they emit."""

from __future__ import annotations

import cmath
import dataclasses
import json
import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .contour import QuadratureConfig, integrate_closed, residue_by_circle, rhombus_contour
from .errors import DomainError
from .theta import EvalConfig, product_terms, theta1, theta1_reduced
from .verifier import (
    EDGES,
    DomainPoint,
    ResidueBreakdown,
    closed_residue_sum,
    edge_limit_residual,
    inversion_log_ratio,
    inversion_log_ratio_lambert,
    lambert_terms,
    log_identity_residual,
    log_theta1_lambert,
    residue_at_zero,
    residue_imag_pole,
    residue_kernel,
    residue_real_pole,
    transformation_residual,
)

SUITES = ("eq2", "lemma1", "lemma2", "lemma3", "theorem")
SWEEP_TARGETS = ("edge_limit", "reduction_gain", "lambert_tail")

DEFAULT_TOLERANCES = {
    "eq2": 1e-10,
    "lemma1": 1e-10,
    "lemma2": 1e-8,
    "lemma3": 1e-6,
    "theorem": 1e-9,
}
DEFAULT_COUNTS = {"eq2": 25, "lemma1": 10, "theorem": 10}
DEFAULT_N = {"lemma2": 3, "lemma3": 10}

# canonical evaluation points for the fixed-point checks
LEMMA2_POINT = (0.5, -0.25, 2.0)
LEMMA3_POINT = (0.5, -0.25, 1.5)


@dataclass(frozen=True)
class VerificationReport:
    check_name: str
    parameters: dict
    residual: float
    tolerance: float
    passed: bool
    terms_or_nodes: int
    wall_ms: float = 0.0

    @classmethod
    def build(cls, check_name, parameters, residual, tolerance, terms_or_nodes):
        residual = float(residual)
        tolerance = float(tolerance)
        return cls(
            check_name=check_name,
            parameters=dict(parameters),
            residual=residual,
            tolerance=tolerance,
            passed=residual <= tolerance,
            terms_or_nodes=int(terms_or_nodes),
        )


def format_complex(value: complex, digits: int = 15) -> str:
    """Render re+-im i with the given number of significant digits."""
    value = complex(value)
    return f"{value.real:.{digits}g}{value.imag:+.{digits}g}i"


def _format_float(value: float) -> str:
    return format(float(value), ".17g")


def _to_json(value) -> str:
    # deterministic JSON: sorted keys, floats at 17 significant digits
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return repr(value)
    if isinstance(value, float):
        return _format_float(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        items = (f"{json.dumps(str(k))}: {_to_json(v)}" for k, v in sorted(value.items()))
        return "{" + ", ".join(items) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_to_json(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def report_json_line(report: VerificationReport) -> str:
    """One report as a single JSON line."""
    return _to_json(dataclasses.asdict(report))


# ---------------------------------------------------------------------------
# Seeded samplers
# ---------------------------------------------------------------------------

def sample_grid(count: int, seed: int) -> list[tuple[complex, complex]]:
    """Seeded (z, tau) pairs with Im tau in [0.3, 3] and general Re tau."""
    rng = random.Random(seed)
    grid = []
    for _ in range(count):
        z = complex(rng.uniform(-1.0, 1.0), rng.uniform(-0.5, 0.5))
        tau = complex(rng.uniform(-1.0, 1.0), rng.uniform(0.3, 3.0))
        grid.append((z, tau))
    return grid


def sample_domain_points(count: int, seed: int, n: int = 1) -> list[DomainPoint]:
    """Seeded DomainPoints kept away from the slow-convergence boundary."""
    rng = random.Random(seed)
    points = []
    for _ in range(count):
        points.append(
            DomainPoint(
                a=rng.uniform(0.3, 0.7),
                b=-rng.uniform(0.15, 0.35),
                y=rng.uniform(1.2, 2.5),
                n=n,
            )
        )
    return points


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def _execute(builders, threads: int, timing: bool) -> list[VerificationReport]:
    def call(builder: Callable[[], VerificationReport]) -> VerificationReport:
        if not timing:
            return builder()
        started = time.perf_counter()
        report = builder()
        return dataclasses.replace(
            report, wall_ms=(time.perf_counter() - started) * 1e3
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(call, builders))
    return [call(b) for b in builders]


def _point_params(p: DomainPoint) -> dict:
    return {"a": p.a, "b": p.b, "y": p.y, "n": p.n}


def _suite_eq2(seed, count, tol):
    builders = []
    for index, (z, tau) in enumerate(sample_grid(count, seed)):
        def build(index=index, z=z, tau=tau):
            return VerificationReport.build(
                "eq2_inversion_law",
                {"index": index, "z": format_complex(z), "tau": format_complex(tau)},
                transformation_residual(z, tau),
                tol,
                product_terms(z, tau),
            )
        builders.append(build)
    return builders


def _suite_lemma1(seed, count, tol):
    builders = []
    for index, p in enumerate(sample_domain_points(count, seed)):
        def build(index=index, p=p):
            residual = abs(inversion_log_ratio(p) - inversion_log_ratio_lambert(p))
            params = {"index": index, **_point_params(p)}
            return VerificationReport.build(
                "lemma1_log_series_equivalence", params, residual, tol, lambert_terms(p)
            )
        builders.append(build)
    return builders


def _counting(f):
    calls = [0]

    def wrapped(zeta):
        calls[0] += 1
        return f(zeta)

    return wrapped, calls


def _suite_lemma2(n, tol):
    a, b, y = LEMMA2_POINT
    p = DomainPoint(a, b, y, n)
    radius = 1.0 / (4.0 * p.N)
    qcfg = QuadratureConfig(tol=1e-12)
    builders = []

    def build_internal():
        breakdown = ResidueBreakdown.compute(p)
        residual = abs(breakdown.total_times_2pi_i - closed_residue_sum(p))
        return VerificationReport.build(
            "lemma2_breakdown_vs_closed_sum", _point_params(p), residual, tol, 4 * n + 1
        )

    builders.append(build_internal)

    def build_zero():
        f, calls = _counting(lambda zeta: residue_kernel(zeta, p))
        oracle = residue_by_circle(f, 0.0, radius, qcfg)
        residual = abs(residue_at_zero(p) - oracle)
        return VerificationReport.build(
            "lemma2_residue_zero_vs_circle", _point_params(p), residual, tol, calls[0]
        )

    builders.append(build_zero)

    for k in [k for k in range(-min(n, 2), min(n, 2) + 1) if k != 0]:
        def build_imag(k=k):
            f, calls = _counting(lambda zeta: residue_kernel(zeta, p))
            oracle = residue_by_circle(f, 1j * k / p.N, radius, qcfg)
            residual = abs(residue_imag_pole(k, p) - oracle)
            return VerificationReport.build(
                "lemma2_residue_imag_vs_circle",
                {"k": k, **_point_params(p)},
                residual,
                tol,
                calls[0],
            )

        def build_real(k=k):
            f, calls = _counting(lambda zeta: residue_kernel(zeta, p))
            oracle = residue_by_circle(f, k * p.y / p.N, radius, qcfg)
            residual = abs(residue_real_pole(k, p) - oracle)
            return VerificationReport.build(
                "lemma2_residue_real_vs_circle",
                {"k": k, **_point_params(p)},
                residual,
                tol,
                calls[0],
            )

        builders.append(build_imag)
        builders.append(build_real)

    def build_theorem():
        f, calls = _counting(lambda zeta: residue_kernel(zeta, p))
        value, _ = integrate_closed(f, rhombus_contour(p.y), QuadratureConfig(tol=1e-10))
        residual = abs(value - closed_residue_sum(p))
        return VerificationReport.build(
            "lemma2_residue_theorem_contour", _point_params(p), residual, tol, calls[0]
        )

    builders.append(build_theorem)

    def build_partial():
        deep = DomainPoint(a, b, y, 25)
        limit = (
            inversion_log_ratio_lambert(deep)
            + math.pi * deep.z * deep.z / deep.y
            - 0.5j * math.pi
        )
        residual = abs(closed_residue_sum(deep) - limit)
        return VerificationReport.build(
            "lemma2_partial_sum_limit", _point_params(deep), residual, tol, deep.n
        )

    builders.append(build_partial)
    return builders


def _suite_lemma3(n, tol):
    a, b, y = LEMMA3_POINT
    p = DomainPoint(a, b, y, n)
    builders = []
    for edge in EDGES:
        def build(edge=edge):
            residual = edge_limit_residual(edge, 0.5, p)
            params = {"edge": edge, "t": 0.5, **_point_params(p)}
            return VerificationReport.build("lemma3_edge_limit", params, residual, tol, n)
        builders.append(build)
    return builders


def _suite_theorem(seed, count, tol):
    builders = []
    for index, p in enumerate(sample_domain_points(count, seed)):
        def build(index=index, p=p):
            params = {"index": index, **_point_params(p)}
            return VerificationReport.build(
                "theorem_log_identity", params, log_identity_residual(p), tol,
                lambert_terms(p),
            )
        builders.append(build)
    return builders


def run_suite(
    suite: str,
    seed: int = 0,
    count: int | None = None,
    tol: float | None = None,
    n: int | None = None,
    threads: int = 1,
    timing: bool = False,
) -> list[VerificationReport]:
    """Run one named suite (or 'all') and return its reports in emission order."""
    if suite == "all":
        reports = []
        for name in SUITES:
            reports.extend(
                run_suite(name, seed=seed, count=count, tol=tol, n=n,
                          threads=threads, timing=timing)
            )
        return reports
    if suite not in SUITES:
        raise DomainError(f"unknown suite {suite!r}; expected one of {SUITES + ('all',)}")
    tol = DEFAULT_TOLERANCES[suite] if tol is None else float(tol)
    if suite == "eq2":
        builders = _suite_eq2(seed, count or DEFAULT_COUNTS["eq2"], tol)
    elif suite == "lemma1":
        builders = _suite_lemma1(seed, count or DEFAULT_COUNTS["lemma1"], tol)
    elif suite == "lemma2":
        builders = _suite_lemma2(n or DEFAULT_N["lemma2"], tol)
    elif suite == "lemma3":
        builders = _suite_lemma3(n or DEFAULT_N["lemma3"], tol)
    else:
        builders = _suite_theorem(seed, count or DEFAULT_COUNTS["theorem"], tol)
    return _execute(builders, threads, timing)


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

def _geometric(start: float, stop: float, steps: int) -> list[float]:
    if start > stop:
        return []
    if steps <= 1 or start == stop:
        return [start]
    ratio = (stop / start) ** (1.0 / (steps - 1))
    return [start * ratio**i for i in range(steps)]


def _linear(start: float, stop: float, steps: int) -> list[float]:
    if start > stop:
        return []
    if steps <= 1 or start == stop:
        return [start]
    step = (stop - start) / (steps - 1)
    return [start + step * i for i in range(steps)]


def sweep_rows(target, start=None, stop=None, steps=None):
    """Header and rows for a named sweep target."""
    if target == "edge_limit":
        first = 2 if start is None else int(start)
        last = 20 if stop is None else int(stop)
        header = ["n", "edge", "t", "a", "b", "y", "residual"]
        rows = []
        for n in range(first, last + 1):
            p = DomainPoint(0.5, -0.25, 2.0, n)
            rows.append([n, "E2", 0.5, p.a, p.b, p.y, edge_limit_residual("E2", 0.5, p)])
        return header, rows

    if target == "reduction_gain":
        values = _geometric(
            0.01 if start is None else float(start),
            1.0 if stop is None else float(stop),
            10 if steps is None else int(steps),
        )
        header = ["im_tau", "z", "eps", "terms_direct", "terms_reduced", "gain", "abs_diff"]
        z = 0.3
        eps = 1e-12
        on = EvalConfig(eps=eps, reduction_enabled=True)
        off = EvalConfig(eps=eps, reduction_enabled=False)
        rows = []
        for im_tau in values:
            tau = complex(0.0, im_tau)
            reduced = theta1_reduced(z, tau, on)
            direct = theta1_reduced(z, tau, off)
            rows.append([
                im_tau, z, eps, direct.terms_used, reduced.terms_used,
                direct.terms_used / reduced.terms_used,
                abs(reduced.value - direct.value),
            ])
        return header, rows

    if target == "lambert_tail":
        values = _linear(
            1.1 if start is None else float(start),
            5.0 if stop is None else float(stop),
            10 if steps is None else int(steps),
        )
        header = ["y", "a", "b", "eps", "terms", "residual"]
        rows = []
        for y in values:
            p = DomainPoint(0.5, -0.25, y)
            product = theta1(p.z, complex(0.0, y))
            expanded = cmath.exp(log_theta1_lambert(p))
            residual = abs(expanded - product) / max(1.0, abs(product))
            rows.append([y, p.a, p.b, 1e-13, lambert_terms(p), residual])
        return header, rows

    raise DomainError(f"unknown sweep target {target!r}; expected one of {SWEEP_TARGETS}")


def render_sweep_csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, float):
                cells.append(_format_float(cell))
            else:
                cells.append(str(cell))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def render_sweep_json(header, rows) -> str:
    records = [dict(zip(header, row)) for row in rows]
    return _to_json(records) + "\n"
