import cmath
import math

import pytest

from siegeltheta import (
    ContourPath,
    ConvergenceError,
    DomainError,
    QuadratureConfig,
    integrate_closed,
    integrate_edge,
    residue_by_circle,
    rhombus_contour,
)

TWO_PI_I = 2j * math.pi


def test_rhombus_geometry():
    path = rhombus_contour(2.0)
    assert path.vertices == (-1j, 2 + 0j, 1j, -2 + 0j)
    assert path.closed
    assert abs(path.signed_area() - 4.0) < 1e-15
    assert path.is_counterclockwise()


def test_rhombus_unit_square_on_circle():
    path = rhombus_contour(1.0)
    assert all(abs(abs(v) - 1.0) < 1e-15 for v in path.vertices)


def test_rhombus_encloses_kernel_poles():
    # poles ik/N and ky/N with |k| <= n satisfy |Re/y| + |Im| = k/N < 1
    y, n = 2.0, 7
    cap = n + 0.5
    for k in range(1, n + 1):
        assert k / cap < 1.0
        assert abs(k * y / cap) / y + 0.0 < 1.0


def test_rhombus_rejects_bad_y():
    with pytest.raises(DomainError):
        rhombus_contour(0.0)
    with pytest.raises(DomainError):
        rhombus_contour(-1.0)


def test_path_validation():
    with pytest.raises(DomainError):
        ContourPath((1 + 0j,))
    with pytest.raises(DomainError):
        ContourPath((0j, 0j, 1j))
    with pytest.raises(DomainError):
        ContourPath((0j, 1j, 0j), closed=True)  # wraparound duplicate
    # the same vertex list is fine when the path stays open
    ContourPath((0j, 1j, 0.0001j), closed=False)


def test_path_edges_and_reverse():
    path = rhombus_contour(1.5)
    assert len(list(path.edges())) == 4
    back = path.reversed()
    assert back.vertices == tuple(reversed(path.vertices))
    assert not back.is_counterclockwise()


def test_edge_integral_of_inverse():
    value, err = integrate_edge(lambda w: 1.0 / w, 2.0, 1j)
    assert abs(value - (-math.log(2.0) + 0.5j * math.pi)) < 1e-12
    assert err <= 1e-10


def test_edge_integral_of_constant():
    value, _ = integrate_edge(lambda w: 1.0 + 0j, 0.3 + 0.2j, -1.5 + 0.9j)
    assert abs(value - (-1.8 + 0.7j)) < 1e-13


def test_closed_integral_of_entire_function():
    value, _ = integrate_closed(lambda w: w * w, rhombus_contour(2.0))
    assert abs(value) < 1e-12


def test_closed_integral_cauchy_zero_for_polynomials():
    poly = lambda w: (2 - 3j) * w**3 + w - 5.0
    for path in (rhombus_contour(2.0), ContourPath((0j, 1 + 0j, 1 + 1j, 0.5j))):
        value, _ = integrate_closed(poly, path)
        assert abs(value) < 1e-11


def test_closed_integral_unit_residue():
    value, _ = integrate_closed(lambda w: 1.0 / w, rhombus_contour(2.0))
    assert abs(value - TWO_PI_I) < 1e-10


def test_closed_integral_pole_outside():
    value, _ = integrate_closed(lambda w: 1.0 / (w - 5.0), rhombus_contour(2.0))
    assert abs(value) < 1e-10


def test_orientation_reversal_negates():
    path = rhombus_contour(2.0)
    forward, _ = integrate_closed(lambda w: 1.0 / w, path)
    backward, _ = integrate_closed(lambda w: 1.0 / w, path.reversed())
    assert abs(forward + backward) < 1e-13


def test_edge_split_additivity():
    f = lambda w: cmath.exp(w) * w
    a, b = -1 + 0.2j, 2 - 0.5j
    whole, _ = integrate_edge(f, a, b)
    mid = a + 0.37 * (b - a)
    first, _ = integrate_edge(f, a, mid)
    second, _ = integrate_edge(f, mid, b)
    assert abs(whole - (first + second)) < 1e-10


def test_closed_requires_closed_path():
    with pytest.raises(DomainError):
        integrate_closed(lambda w: w, ContourPath((0j, 1 + 0j), closed=False))


def test_edge_quadrature_reports_failure():
    cfg = QuadratureConfig(tol=1e-14, max_depth=2)
    with pytest.raises(ConvergenceError) as info:
        integrate_edge(lambda w: 1.0 / (w - (0.5 + 1e-6j)), 0.0, 1.0, cfg)
    assert info.value.achieved > 1e-14


def test_residue_by_circle_simple_pole():
    assert abs(residue_by_circle(lambda w: 1.0 / w, 0.0, 0.7) - 1.0) < 1e-13


def test_residue_by_circle_double_pole():
    # e^w / w^2 has residue d/dw e^w |_0 = 1
    value = residue_by_circle(lambda w: cmath.exp(w) / (w * w), 0.0, 0.5)
    assert abs(value - 1.0) < 1e-12


@pytest.mark.parametrize("center", [0j, 2 - 1j, -0.3 + 0.4j])
def test_residue_by_circle_shifted_pole(center):
    for radius in (0.1, 0.25, 1.0):
        value = residue_by_circle(lambda w: 1.0 / (w - center), center, radius)
        assert abs(value - 1.0) < 1e-12


def test_residue_by_circle_rejects_bad_radius():
    with pytest.raises(DomainError):
        residue_by_circle(lambda w: 1.0 / w, 0.0, 0.0)


def test_residue_by_circle_reports_failure():
    # singularity just inside the circle stalls the node-doubling
    cfg = QuadratureConfig(tol=1e-14, max_depth=1, nodes_per_panel=8)
    with pytest.raises(ConvergenceError):
        residue_by_circle(lambda w: 1.0 / (w - 0.999), 0.0, 1.0, cfg)


def test_quadrature_config_validation():
    with pytest.raises(DomainError):
        QuadratureConfig(tol=0.0)
    with pytest.raises(DomainError):
        QuadratureConfig(max_depth=0)
    with pytest.raises(DomainError):
        QuadratureConfig(nodes_per_panel=0)
