"""Connection, curvature and the radial curvature integral on hand-checkable
metrics (polar plane, round sphere, surfaces of revolution)."""

import math

import numpy as np
import pytest

from hkgeo import geometry, jets
from hkgeo.fields import Chart, FormField, MetricField, VectorFieldR
from hkgeo.geometry import (
    MetricDomainError,
    christoffel,
    christoffel_fd,
    covariant_derivative_02,
    euler_characteristic,
    gaussian_curvature,
    killing_deviation,
    ricci_scalar,
    riemann,
    riemann_lowered,
)

POLAR = MetricField(Chart(("r", "phi")),
                    lambda c: [[1.0, 0.0], [None, c[0] * c[0]]],
                    name="flat polar")

SPHERE = MetricField(Chart(("theta", "phi")),
                     lambda c: [[1.0, 0.0], [None, jets.sin(c[0]) ** 2]],
                     name="unit sphere")


def test_polar_christoffel():
    G = christoffel(POLAR, [2.0, 0.3])
    want = np.zeros((2, 2, 2))
    want[0, 1, 1] = -2.0          # Gamma^r_phiphi = -r
    want[1, 0, 1] = want[1, 1, 0] = 0.5   # Gamma^phi_rphi = 1/r
    assert np.allclose(G, want, atol=1e-12)


def test_christoffel_fd_agreement():
    p = [1.7, 0.9]
    assert np.max(np.abs(christoffel(SPHERE, p) - christoffel_fd(SPHERE, p))) < 1e-7


def test_polar_plane_is_flat():
    R = riemann(POLAR, [1.3, 2.0])
    assert np.max(np.abs(R)) < 1e-12
    assert abs(ricci_scalar(POLAR, [1.3, 2.0])) < 1e-12


def test_non_positive_metric_rejected():
    bad = MetricField(Chart(("u", "v")),
                      lambda c: [[1.0, 2.0], [None, 1.0]])
    with pytest.raises(MetricDomainError):
        christoffel(bad, [0.0, 0.0])


def test_sphere_curvature_scalar():
    # R_{0101} = sin^2(theta), det g = sin^2(theta): curvature scalar 2
    p = [1.1, 0.4]
    R = riemann_lowered(SPHERE, p)
    assert R[0, 1, 0, 1] == pytest.approx(math.sin(1.1) ** 2, abs=1e-9)
    assert gaussian_curvature(SPHERE, p) == pytest.approx(2.0, abs=1e-8)
    assert ricci_scalar(SPHERE, p) == pytest.approx(2.0, abs=1e-8)


def test_two_routes_agree_on_warped_metric():
    g = MetricField(Chart(("r", "chi")),
                    lambda c: [[1.0 + c[0] ** 2, 0.0],
                               [None, c[0] ** 2 / (1.0 + c[0] ** 2)]])
    for r in (0.4, 1.0, 2.7):
        p = [r, 0.2]
        assert gaussian_curvature(g, p) == pytest.approx(
            float(ricci_scalar(g, p)), abs=1e-8)


def test_killing_rotation_flat_plane():
    cart = MetricField(Chart(("x", "y")), lambda c: np.eye(2))
    rot = VectorFieldR(cart.chart, lambda c: [-c[1], c[0]])
    dev = killing_deviation(cart, rot, [0.7, -1.2])
    assert np.max(np.abs(dev)) < 1e-12


def test_killing_negative_control():
    # radial scaling is not an isometry: L_V g = 2g for V = (x, y)
    cart = MetricField(Chart(("x", "y")), lambda c: np.eye(2))
    scale = VectorFieldR(cart.chart, lambda c: [c[0], c[1]])
    dev = killing_deviation(cart, scale, [0.7, -1.2])
    assert np.allclose(dev, 2.0 * np.eye(2), atol=1e-12)


def test_small_radius_needs_extended_precision():
    # cigar-type metric degenerates at r = 0; mpmath path stays accurate
    g = MetricField(Chart(("r", "chi")),
                    lambda c: [[1.0 + c[0] ** 2, 0.0],
                               [None, c[0] ** 2 / (1.0 + c[0] ** 2)]])
    K = gaussian_curvature(g, [1e-6, 0.0], dps=40)
    assert K == pytest.approx(8.0, abs=1e-9)


def test_volume_form_covariantly_constant():
    # any oriented 2D metric: nabla of the area form vanishes identically
    g = MetricField(Chart(("r", "chi")),
                    lambda c: [[1.0 + c[0] ** 2, 0.0],
                               [None, c[0] ** 2 / (1.0 + c[0] ** 2)]])
    area = FormField(g.chart, 2, lambda c: [[0.0, c[0]], [None, 0.0]])
    for r in (0.5, 1.5):
        dw = covariant_derivative_02(g, area, [r, 1.0])
        assert np.max(np.abs(dw)) < 1e-12


def test_euler_characteristic_cigar():
    g = MetricField(Chart(("r", "chi")),
                    lambda c: [[1.0 + c[0] ** 2, 0.0],
                               [None, c[0] ** 2 / (1.0 + c[0] ** 2)]])
    val, err = euler_characteristic(g)
    assert val == pytest.approx(2.0, abs=1e-9)
    assert err < 1e-8


def test_euler_characteristic_weight_is_linear():
    g = MetricField(Chart(("r", "chi")),
                    lambda c: [[1.0 + c[0] ** 2, 0.0],
                               [None, c[0] ** 2 / (1.0 + c[0] ** 2)]])
    val, _ = euler_characteristic(g, weight=lambda r: 0.5)
    assert val == pytest.approx(1.0, abs=1e-9)


def test_euler_characteristic_divergence_guard():
    g = MetricField(Chart(("r", "chi")),
                    lambda c: [[1.0 + c[0] ** 2, 0.0],
                               [None, c[0] ** 2 / (1.0 + c[0] ** 2)]])
    # an oscillatory weight the quadrature cannot resolve to 1e-12
    import warnings

    with pytest.raises(geometry.DivergenceError), warnings.catch_warnings():
        warnings.simplefilter("ignore")
        euler_characteristic(g, quad_tol=1e-30,
                             weight=lambda r: math.sin(200.0 * r))
