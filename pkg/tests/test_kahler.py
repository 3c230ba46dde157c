"""Hermitian fields, the unit-determinant (C-proportionality) test, and the
quaternionic triple built from passing metrics."""

import numpy as np
import pytest

from hkgeo import kahler
from hkgeo.geometry import MetricDomainError, covariant_derivative_02
from hkgeo.kahler import (
    ComplexChart,
    HeavenlyViolation,
    coset_metric,
    heavenly_check,
    heavenly_constant,
    metric_from_potential,
    quaternion_form_fields,
    quaternion_residual,
    sp_generators,
    sp_residual,
    spin_connection_trace,
    symplectic_matrix,
    triple_at,
    unit_determinant_shear_field,
    non_unimodular_field,
    single_mode_field,
    x_matrices,
)

RNG = np.random.default_rng(42)


def test_symplectic_matrix():
    for n in (2, 4):
        om = symplectic_matrix(n)
        assert np.array_equal(om, -om.T)
        assert np.array_equal(om @ om, -np.eye(n))


@pytest.mark.parametrize("n,count", [(2, 3), (4, 10)])
def test_generator_count_and_algebra(n, count):
    gens = sp_generators(n)
    assert len(gens) == count
    om = symplectic_matrix(n)
    for t in gens:
        assert np.max(np.abs(t - t.conj().T)) == 0.0   # Hermitian
        assert sp_residual(t, om) == 0.0


def test_generators_linearly_independent():
    gens = sp_generators(4)
    flat = np.stack([t.reshape(-1) for t in gens])
    M = np.concatenate([flat.real, flat.imag], axis=1)
    assert np.linalg.matrix_rank(M) == len(gens)


@pytest.mark.parametrize("n", [2, 4])
def test_coset_metric_passes(n):
    om = symplectic_matrix(n)
    gens = sp_generators(n)
    for _ in range(25):
        h = coset_metric(RNG.normal(scale=0.7, size=len(gens)), gens)
        hm = h.matrix([0.0] * (2 * n))
        assert np.max(np.abs(hm - hm.conj().T)) < 1e-14
        assert np.min(np.linalg.eigvalsh(hm)) > 0.0
        assert heavenly_check(hm, om) == pytest.approx(1.0, abs=1e-12)


def test_constant_equals_determinant_n2():
    om = symplectic_matrix(2)
    shear = unit_determinant_shear_field()
    for p in RNG.uniform(-1.2, 1.2, size=(20, 4)):
        hm = shear.matrix(p)
        C = heavenly_check(hm, om)
        assert C == pytest.approx(float(np.real(np.linalg.det(hm))), abs=1e-13)


def test_scaled_diagonal_rejected():
    om = symplectic_matrix(4)
    with pytest.raises(HeavenlyViolation) as exc:
        heavenly_check(np.diag([1.0, 1.0, 2.0, 1.0]).astype(complex), om)
    assert exc.value.residual == pytest.approx(0.5, abs=1e-12)


def test_negative_constant_rejected():
    # h Omega h^T = -Omega: proportional but with the wrong sign
    om = symplectic_matrix(2)
    with pytest.raises(HeavenlyViolation, match="not positive"):
        heavenly_check(np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex), om)


def test_potential_reproduces_entries():
    shear = unit_determinant_shear_field()
    for p in RNG.uniform(-1.0, 1.0, size=(10, 4)):
        direct = shear.matrix(p)
        from_pot = metric_from_potential(shear.potential, 2, p)
        assert np.max(np.abs(direct - from_pot)) < 1e-12
    single = single_mode_field()
    for p in RNG.uniform(-1.0, 1.0, size=(5, 2)):
        assert np.max(np.abs(single.matrix(p)
                             - metric_from_potential(single.potential, 1, p))) < 1e-12


def test_constancy_across_points():
    om = symplectic_matrix(2)
    pts = RNG.uniform(-1.2, 1.2, size=(30, 4))
    res = heavenly_constant(unit_determinant_shear_field(), om, pts)
    assert res.C == pytest.approx(1.0, abs=1e-12)
    assert res.spread < 1e-12
    with pytest.raises(HeavenlyViolation):
        heavenly_constant(non_unimodular_field(), om, pts)


def test_triple_quaternion_algebra():
    om = symplectic_matrix(2)
    shear = unit_determinant_shear_field()
    for p in RNG.uniform(-1.2, 1.2, size=(15, 4)):
        t = triple_at(shear, om, p)
        assert quaternion_residual(t) < 1e-12


def test_triple_compatibility():
    # each 2-form is the metric composed with its structure: w = g X
    om = symplectic_matrix(2)
    t = triple_at(unit_determinant_shear_field(), om, [0.3, -0.4, 0.7, 0.1])
    for W, X in ((t.omega_I, t.I), (t.omega_J, t.J), (t.omega_K, t.K)):
        assert np.max(np.abs(W + t.g @ X)) < 1e-12
        assert np.max(np.abs(W + W.T)) < 1e-12


def test_covariant_constancy_and_control():
    om = symplectic_matrix(2)
    shear = unit_determinant_shear_field()
    fJ, fK = quaternion_form_fields(shear, om)
    g = shear.real_metric()
    p = [0.4, -0.2, 0.8, 0.5]
    dJ = covariant_derivative_02(g, fJ, p)
    dK = covariant_derivative_02(g, fK, p)
    assert np.max(np.abs(dJ)) < 1e-12
    assert np.max(np.abs(dK)) < 1e-12

    ctrl = non_unimodular_field()
    fJc, _ = quaternion_form_fields(ctrl, om)
    dJc = covariant_derivative_02(ctrl.real_metric(), fJc, p)
    assert np.max(np.abs(dJc)) > 1e-3


def test_x_matrices_in_algebra():
    om = symplectic_matrix(2)
    shear = unit_determinant_shear_field()
    for p in RNG.uniform(-1.0, 1.0, size=(10, 4)):
        for X in x_matrices(shear, p):
            assert sp_residual(X, om) < 1e-13

    worst = max(sp_residual(X, om)
                for X in x_matrices(non_unimodular_field(), [0.5, 0.1, 0.0, 0.0]))
    assert worst > 1e-2


def test_spin_trace_vanishes_when_determinant_constant():
    holo, anti = spin_connection_trace(unit_determinant_shear_field(),
                                       [0.6, -0.3, 0.2, 0.9])
    assert np.max(np.abs(holo)) < 1e-12
    assert np.max(np.abs(anti)) < 1e-12


def test_spin_trace_single_mode():
    # h = 1 + |z|^2 at z = 1: d log det h = du log(1 + u^2 + v^2) = 1,
    # Wirtinger holomorphic component (t_u - i t_v)/8 with t = 2 d log h
    holo, anti = spin_connection_trace(single_mode_field(), [1.0, 0.0])
    assert holo[0] == pytest.approx(0.25, abs=1e-12)
    assert anti[0] == pytest.approx(np.conj(holo[0]), abs=1e-12)


def test_spin_trace_requires_positive_definite():
    bad = kahler.HermitianMetricField(1, lambda c: [[-1.0]])
    with pytest.raises(MetricDomainError):
        spin_connection_trace(bad, [0.0, 0.0])


def test_complex_chart_round_trip():
    chart = ComplexChart(3)
    p = RNG.uniform(-1.0, 1.0, size=6)
    z = chart.to_complex(p)
    assert np.allclose(chart.from_complex(z), p)
    assert chart.real_chart().names == ("u1", "v1", "u2", "v2", "u3", "v3")


def test_real_metric_block_structure():
    shear = unit_determinant_shear_field()
    p = [0.7, 0.2, -0.5, 0.3]
    h = shear.matrix(p)
    g = shear.real_metric().value(p)
    for i in range(2):
        for k in range(2):
            blk = g[2 * i:2 * i + 2, 2 * k:2 * k + 2]
            A, B = h[i, k].real, h[i, k].imag
            assert np.allclose(blk, [[A, B], [-B, A]], atol=1e-14)
    assert np.allclose(g, g.T)
    assert np.min(np.linalg.eigvalsh(g)) > 0.0
