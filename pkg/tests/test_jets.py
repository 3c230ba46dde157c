"""Forward-mode jet arithmetic against hand derivatives and stencils."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hkgeo import jets
from hkgeo.jets import (
    EvaluationError,
    Jet2,
    StencilExclusionError,
    evaluate_jet,
    fd_oracle,
    fd_step,
)


def test_variable_seeding():
    x = Jet2.variable(3.0, 0, 2)
    assert x.value == 3.0
    assert np.array_equal(x.gradient, [1.0, 0.0])
    assert np.all(x.hessian == 0.0)


def test_product_rule():
    # (fg)'' = f''g + 2f'g' + fg'' entry by entry
    f = Jet2(2.0, np.array([1.0, -3.0]), np.array([[0.5, 1.0], [1.0, 0.0]]))
    g = Jet2(-1.5, np.array([2.0, 0.5]), np.array([[0.0, -1.0], [-1.0, 2.0]]))
    h = f * g
    assert h.value == 2.0 * -1.5
    assert np.allclose(h.gradient, f.gradient * g.value + f.value * g.gradient)
    want = (f.hessian * g.value + f.value * g.hessian
            + np.outer(f.gradient, g.gradient)
            + np.outer(g.gradient, f.gradient))
    assert np.allclose(h.hessian, want)


def test_polynomial_hand_check():
    # f = x^2 y + y^3 at (2, -1): grad (-4, 7), hessian [[-2,4],[4,-6]]
    j = evaluate_jet(lambda c: c[0] ** 2 * c[1] + c[1] ** 3, [2.0, -1.0])
    assert j.value == pytest.approx(-5.0)
    assert np.allclose(j.gradient, [-4.0, 7.0])
    assert np.allclose(j.hessian, [[-2.0, 4.0], [4.0, -6.0]])


def test_quotient_and_sqrt():
    j = evaluate_jet(lambda c: jets.sqrt(c[0]) / c[1], [4.0, 2.0])
    assert j.value == pytest.approx(1.0)
    assert np.allclose(j.gradient, [1.0 / 8.0, -0.5])
    # d2/dx2 = -1/(4 x^(3/2) y), d2/dxdy = -1/(2 sqrt(x) y^2), d2/dy2 = 2 sqrt(x)/y^3
    assert np.allclose(j.hessian, [[-1.0 / 64.0, -1.0 / 16.0],
                                   [-1.0 / 16.0, 0.5]])


def test_transcendental_chain():
    p = [0.7, -0.3]
    j = evaluate_jet(lambda c: jets.exp(jets.sin(c[0] * c[1])), p)
    u = p[0] * p[1]
    assert j.value == pytest.approx(math.exp(math.sin(u)))
    d_du = math.cos(u) * math.exp(math.sin(u))
    assert j.gradient[0] == pytest.approx(d_du * p[1])
    assert j.gradient[1] == pytest.approx(d_du * p[0])


def test_atan2_quadrants():
    for y, x in [(1.0, 2.0), (1.0, -2.0), (-1.0, -2.0), (-1.0, 2.0)]:
        j = evaluate_jet(lambda c: jets.atan2(c[0], c[1]), [y, x])
        assert j.value == pytest.approx(math.atan2(y, x))
        r2 = x * x + y * y
        assert np.allclose(j.gradient, [x / r2, -y / r2])


def test_atan2_branch_cut_gradient():
    # the gradient is smooth across the negative-x cut even though the value jumps
    j = evaluate_jet(lambda c: jets.atan2(c[0], c[1]), [1e-8, -1.0])
    assert j.gradient[0] == pytest.approx(-1.0, rel=1e-6)


def test_pow_negative_exponent():
    j = evaluate_jet(lambda c: c[0] ** -2, [2.0])
    assert j.value == pytest.approx(0.25)
    assert j.gradient[0] == pytest.approx(-0.25)
    assert j.hessian[0, 0] == pytest.approx(0.375)


def test_rtruediv():
    j = evaluate_jet(lambda c: 3.0 / c[0], [2.0])
    assert j.value == pytest.approx(1.5)
    assert j.gradient[0] == pytest.approx(-0.75)
    assert j.hessian[0, 0] == pytest.approx(0.75)


def test_evaluation_error_on_nonfinite_value():
    with pytest.raises(EvaluationError):
        evaluate_jet(lambda c: c[0] * float("nan"), [1.0])


def test_evaluation_error_on_nonfinite_derivative():
    # finite value, infinite gradient: the error names the coordinate
    bad = Jet2(1.0, np.array([float("inf")]), np.zeros((1, 1)))
    with pytest.raises(EvaluationError) as exc:
        evaluate_jet(lambda c: bad, [1.0])
    assert exc.value.index == 0


def test_fd_step_scales_with_coordinate():
    assert fd_step(0.0) == 1e-5
    assert fd_step(1.0) == 1e-5
    assert fd_step(1e3) == pytest.approx(1e-2)
    assert fd_step(-1e3) == pytest.approx(1e-2)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.floats(min_value=-1.4, max_value=1.4), min_size=2, max_size=3),
    st.integers(min_value=0, max_value=3),
)
def test_fd_matches_jets(coords, which):
    fns = [
        lambda c: c[0] ** 2 * c[1] + 0.3 * c[1] ** 3,
        lambda c: jets.sin(c[0]) * jets.cosh(c[1]),
        lambda c: jets.exp(0.4 * c[0] * c[1]),
        lambda c: jets.atan(c[0] + 0.5 * c[1]) + c[0] * c[1],
    ]
    f = fns[which]
    jet = evaluate_jet(f, coords)
    ora = fd_oracle(f, coords)
    assert np.max(np.abs(jet.gradient - ora.gradient)) < 1e-6
    assert np.max(np.abs(jet.hessian - ora.hessian)) < 1e-4


def test_fd_oracle_exclusion_guard():
    # stencil points falling in an excluded zone must raise, not silently
    # evaluate garbage
    bad = lambda p: abs(p[0]) < 2e-5
    bad.name = "near-origin"
    with pytest.raises(StencilExclusionError):
        fd_oracle(lambda c: c[0] ** 2, [0.0], exclusions=(bad,))


def test_mp_dtype_passthrough():
    import mpmath

    with mpmath.workdps(30):
        p = [mpmath.mpf("0.5"), mpmath.mpf("2")]
        j = evaluate_jet(lambda c: c[0] * c[0] * c[1], p)
        assert j.gradient.dtype == object
        assert mpmath.almosteq(j.gradient[0], mpmath.mpf("2"))
        assert mpmath.almosteq(j.hessian[0, 0], mpmath.mpf("4"))
