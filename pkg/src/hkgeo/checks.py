"""Verification suites over the model registry, with reproducible reports.

Every check draws its own random stream from ``(run seed, crc32(check id))``,
so the report for a fixed seed is bit-stable no matter which subset of
checks runs or in what order.  A check returns its worst absolute error and
the tolerance it is judged against; "expected failure" checks (negative
controls) report error 0 when the failure is correctly detected and 1 when
it is not.
"""

from __future__ import annotations

import time
import zlib
from dataclasses import dataclass

import numpy as np

from . import geometry, kahler, mechanics, models, reduction
from ._version import __version__
from .jets import evaluate_jet, fd_oracle
from .sampling import SampleSpec, sample_points

__all__ = [
    "CheckReport",
    "RunManifest",
    "CheckContext",
    "REPORT_SCHEMA",
    "SUITE_NAMES",
    "run_suite",
]

A_SWEEP = (0.5, 1.0, 2.0)


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one named check."""

    check_id: str
    description: str
    samples: int
    max_abs_error: float
    tolerance: float
    passed: bool
    elapsed_ms: int

    def to_dict(self):
        return {
            "check_id": self.check_id,
            "description": self.description,
            "samples": self.samples,
            "max_abs_error": self.max_abs_error,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "elapsed_ms": self.elapsed_ms,
        }


@dataclass(frozen=True)
class RunManifest:
    """One verification run: configuration plus ordered check reports."""

    seed: int
    samples: int
    a: float
    a_sweep: tuple
    version: str
    checks: tuple

    @property
    def all_passed(self):
        return all(c.passed for c in self.checks)

    def to_dict(self):
        return {
            "seed": self.seed,
            "samples": self.samples,
            "a": self.a,
            "a_sweep": list(self.a_sweep),
            "version": self.version,
            "checks": [c.to_dict() for c in self.checks],
        }


REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "hkgeo verification report",
    "type": "object",
    "required": ["seed", "samples", "a", "a_sweep", "version", "checks"],
    "additionalProperties": False,
    "properties": {
        "seed": {"type": "integer"},
        "samples": {"type": "integer", "minimum": 1},
        "a": {"type": "number", "exclusiveMinimum": 0},
        "a_sweep": {"type": "array", "items": {"type": "number"}},
        "version": {"type": "string"},
        "checks": {"type": "array", "items": {"$ref": "#/definitions/check"}},
    },
    "definitions": {
        "check": {
            "type": "object",
            "required": ["check_id", "description", "samples", "max_abs_error",
                         "tolerance", "passed", "elapsed_ms"],
            "additionalProperties": False,
            "properties": {
                "check_id": {"type": "string"},
                "description": {"type": "string"},
                "samples": {"type": "integer", "minimum": 0},
                "max_abs_error": {"type": "number"},
                "tolerance": {"type": "number"},
                "passed": {"type": "boolean"},
                "elapsed_ms": {"type": "integer", "minimum": 0},
            },
        }
    },
}


@dataclass(frozen=True)
class CheckContext:
    seed: int
    samples: int
    a: float

    def rng(self, check_id):
        return np.random.default_rng([self.seed, zlib.crc32(check_id.encode())])

    def subseed(self, rng):
        return int(rng.integers(2 ** 31))


def _box_points(box, exclusions, count, seed):
    spec = SampleSpec(np.asarray(box, dtype=float), count, seed, tuple(exclusions))
    return sample_points(spec)


# ---------------------------------------------------------------------------
# heavenly suite


def _coset_fields(ctx, rng, n, count):
    gens = kahler.sp_generators(n)
    for _ in range(count):
        v = rng.normal(scale=0.6, size=len(gens))
        yield kahler.coset_metric(v, gens)


def check_coset_constant(ctx, rng, n):
    om = kahler.symplectic_matrix(n)
    count = max(ctx.samples, 100)
    worst = 0.0
    for hf in _coset_fields(ctx, rng, n, count):
        C = kahler.heavenly_check(hf.matrix([0.0] * (2 * n)), om)
        worst = max(worst, abs(C - 1.0))
    return worst, 1e-10, count, (
        f"unit-determinant condition h Om h^T = C Om with C = 1 on {count} "
        f"random exp(v.t) metrics, n = {n}"
    )


def check_det_equality(ctx, rng):
    om = kahler.symplectic_matrix(2)
    count = max(ctx.samples, 100)
    worst = 0.0
    for hf in _coset_fields(ctx, rng, 2, count):
        h = hf.matrix([0.0, 0.0, 0.0, 0.0])
        C = kahler.heavenly_check(h, om)
        worst = max(worst, abs(C - float(np.real(np.linalg.det(h)))))
    shear = kahler.unit_determinant_shear_field()
    pts = _box_points(((-1.5, 1.5),) * 4, (), 20, ctx.subseed(rng))
    for p in pts:
        h = shear.matrix(p)
        C = kahler.heavenly_check(h, om)
        worst = max(worst, abs(C - float(np.real(np.linalg.det(h)))))
    return worst, 1e-12, count + 20, (
        "for n = 2 the proportionality constant C equals det h"
    )


def check_negative_control(ctx, rng):
    om = kahler.symplectic_matrix(4)
    try:
        kahler.heavenly_check(np.diag([1.0, 1.0, 2.0, 1.0]).astype(complex), om)
        err = 1.0
    except kahler.HeavenlyViolation:
        err = 0.0
    return err, 0.0, 1, (
        "diag(1, 1, 2, 1) must be rejected by the unit-determinant check "
        "(expected failure is detected)"
    )


def check_quaternion_triple(ctx, rng):
    worst = 0.0
    n_metrics = 0
    for n in (2, 4):
        om = kahler.symplectic_matrix(n)
        for hf in _coset_fields(ctx, rng, n, 10):
            t = kahler.triple_at(hf, om, [0.0] * (2 * n))
            worst = max(worst, kahler.quaternion_residual(t))
            n_metrics += 1
    om2 = kahler.symplectic_matrix(2)
    shear = kahler.unit_determinant_shear_field()
    for p in _box_points(((-1.5, 1.5),) * 4, (), 20, ctx.subseed(rng)):
        t = kahler.triple_at(shear, om2, p)
        worst = max(worst, kahler.quaternion_residual(t))
        n_metrics += 1
    return worst, 1e-10, n_metrics, (
        "I, J, K from passing metrics obey the quaternion algebra "
        "(squares -1, IJ = K, JK = I, KI = J)"
    )


def check_covariant_constancy(ctx, rng):
    om = kahler.symplectic_matrix(2)
    shear = kahler.unit_determinant_shear_field()
    greal = shear.real_metric()
    fJ, fK = kahler.quaternion_form_fields(shear, om)
    worst = 0.0
    pts = _box_points(((-1.5, 1.5),) * 4, (), max(10, ctx.samples // 5),
                      ctx.subseed(rng))
    for p in pts:
        dJ = geometry.covariant_derivative_02(greal, fJ, p)
        dK = geometry.covariant_derivative_02(greal, fK, p)
        worst = max(worst, float(np.max(np.abs(dJ + 1j * dK))),
                    float(np.max(np.abs(dJ - 1j * dK))))
    return worst, 1e-8, len(pts), (
        "the J/K pair is covariantly constant for the varying "
        "unit-determinant metric (both J + iK and J - iK)"
    )


def check_covariant_negative_control(ctx, rng):
    om = kahler.symplectic_matrix(2)
    ctrl = kahler.non_unimodular_field()
    greal = ctrl.real_metric()
    fJ, _ = kahler.quaternion_form_fields(ctrl, om)
    dev = 0.0
    for p in _box_points(((-1.5, 1.5),) * 4, (), 10, ctx.subseed(rng)):
        dev = max(dev, float(np.max(np.abs(
            geometry.covariant_derivative_02(greal, fJ, p)))))
    err = 0.0 if dev > 1e-3 else 1.0
    return err, 0.0, 10, (
        "varying-determinant control metric must break covariant constancy "
        f"by more than 1e-3 (observed {dev:.2e}; expected failure is detected)"
    )


def check_sp_algebra(ctx, rng):
    om = kahler.symplectic_matrix(2)
    shear = kahler.unit_determinant_shear_field()
    worst = 0.0
    pts = _box_points(((-1.5, 1.5),) * 4, (), max(10, ctx.samples // 5),
                      ctx.subseed(rng))
    for p in pts:
        for X in kahler.x_matrices(shear, p):
            worst = max(worst, kahler.sp_residual(X, om))
    return worst, 1e-8, len(pts), (
        "derivative matrices 2 (d_p h) h^-1 of a passing metric lie in the "
        "symplectic algebra (X Om + Om X^T = 0)"
    )


# ---------------------------------------------------------------------------
# toy suite


def check_toy_contraction(ctx, rng):
    m = models.build("toy-parent", ctx.a)
    worst = 0.0
    pts = m.sample(ctx.samples, ctx.subseed(rng))
    for p in pts:
        got = reduction.contract(m.forms["omega"], m.killing["shift"], p)
        want = np.array([p[0], 0.0, m.a, 0.0])
        worst = max(worst, float(np.max(np.abs(got - want))))
    return worst, 1e-12, len(pts), (
        "contraction of the symplectic form with the shift vector gives "
        "r dr + a dx"
    )


def check_toy_killing(ctx, rng):
    m = models.build("toy-parent", ctx.a)
    spec = reduction.ReductionSpec(m.metric, (m.forms["omega"],),
                                   m.killing["shift"], m.embeddings["level"],
                                   m.invariant, m.fiber_index)
    pts = m.sample(max(10, ctx.samples // 5), ctx.subseed(rng))
    kd, closed = spec.validate(pts)
    return max(kd, max(closed)), 1e-10, len(pts), (
        "shift vector is Killing and its contraction with the form is closed"
    )


def check_toy_moment(ctx, rng):
    m = models.build("toy-parent", ctx.a)
    alpha = reduction.contraction_field(m.forms["omega"], m.killing["shift"])
    base = np.asarray(m.extras["moment_base"])
    mu = m.targets["moment_map"]
    worst = 0.0
    pts = m.sample(ctx.samples, ctx.subseed(rng))
    for p in pts:
        got = reduction.recover_moment_map(alpha, base, p, base_value=mu(base))
        worst = max(worst, abs(got - mu(p)))
    return worst, 1e-8, len(pts), (
        "line-integrated moment map matches r^2/2 + a x"
    )


def check_toy_level_pullback(ctx, rng):
    m = models.build("toy-parent", ctx.a)
    lev = m.embeddings["level"]
    lm = m.extras["level_metric"]
    worst = 0.0
    pts = _box_points(m.extras["level_box"], (), ctx.samples, ctx.subseed(rng))
    for p in pts:
        got = reduction.pullback_metric(m.metric, lev, p)
        worst = max(worst, float(np.max(np.abs(got - lm.value(p)))))
    return worst, 1e-10, len(pts), (
        "pullback onto the zero level set matches the closed-form 3-metric"
    )


def check_toy_quotient(ctx, rng):
    m = models.build("toy-parent", ctx.a)
    red = models.build("toy-reduced", ctx.a)
    lm = m.extras["level_metric"]
    fiber = m.extras["level_fiber"]
    worst = 0.0
    pts = _box_points(m.extras["level_box"], (), ctx.samples, ctx.subseed(rng))
    for p in pts:
        got = reduction.quotient_metric(lm, fiber, m.invariant, p)
        want = red.metric.value([p[0], p[2]])
        worst = max(worst, float(np.max(np.abs(got - want))))
    return worst, 1e-10, len(pts), (
        "orthogonal-projection quotient matches the reduced surface metric"
    )


def check_toy_quotient_form(ctx, rng):
    m = models.build("toy-parent", ctx.a)
    red = models.build("toy-reduced", ctx.a)
    lev = m.embeddings["level"]
    worst = 0.0
    pts = _box_points(m.extras["level_box"], (), ctx.samples, ctx.subseed(rng))
    for p in pts:
        W = reduction.pullback_form(m.forms["omega"], lev, p)
        Wq = reduction.quotient_form(W, m.fiber_index, m.invariant, p)
        want = red.forms["omega"].value([p[0], p[2]])
        worst = max(worst, float(np.max(np.abs(Wq - want))))
    return worst, 1e-10, len(pts), (
        "fiber components of the pulled-back form cancel and the rest is "
        "the area form r dr d chi"
    )


def check_toy_complex_structure(ctx, rng):
    red = models.build("toy-reduced", ctx.a)
    worst = 0.0
    pts = red.sample(max(10, ctx.samples // 5), ctx.subseed(rng))
    for p in pts:
        gv = red.metric.value(p)
        W = red.forms["omega"].value(p)
        I = reduction.complex_structure(gv, W)
        worst = max(worst, float(np.max(np.abs(I @ I + np.eye(2)))))
        dW = geometry.covariant_derivative_02(red.metric, red.forms["omega"], p)
        dI = reduction.raise_first_index(gv, dW)
        worst = max(worst, float(np.max(np.abs(dI))))
    return worst, 1e-8, len(pts), (
        "quotient complex structure squares to -1 and is covariantly constant"
    )


def check_toy_mechanics(ctx, rng):
    m = models.build("toy-parent", ctx.a)
    lm = m.extras["level_metric"]
    L = mechanics.QuadraticKinetic(m.extras["level_chart"].names, lm.fn,
                                   name="toy kinetic")
    pts = _box_points(m.extras["level_box"], (), ctx.samples, ctx.subseed(rng))
    L2 = mechanics.constrain_and_reduce(L, m.fiber_index,
                                        probe_points=[list(p) for p in pts[:3]])
    fiber = m.extras["level_fiber"]
    worst = 0.0
    for p in pts:
        got = L2.matrix([p[0], p[2]])
        want = reduction.quotient_metric(lm, fiber, m.invariant, p)
        worst = max(worst, float(np.max(np.abs(got - want))))
    return worst, 1e-12, len(pts), (
        "setting the fiber momentum to zero reproduces the geometric quotient"
    )


def check_toy_brackets(ctx, rng):
    m = models.build("toy-parent", ctx.a)
    lm = m.extras["level_metric"]
    L = mechanics.QuadraticKinetic(m.extras["level_chart"].names, lm.fn,
                                   name="toy kinetic")
    H = mechanics.hamiltonian_field(L)
    worst = 0.0
    pts = _box_points(m.extras["level_box"], (), max(10, ctx.samples // 5),
                      ctx.subseed(rng))
    for p in pts:
        mom = rng.normal(size=L.dim)
        s = mechanics.PhasePoint(tuple(p), tuple(mom))
        for c in m.extras["level_cyclic"]:
            pf = mechanics.momentum_field(c, L.dim)
            worst = max(worst, abs(mechanics.poisson_bracket(pf, H, s)))
    return worst, 1e-12, len(pts), (
        "momenta of the cyclic angles Poisson-commute with the Hamiltonian"
    )


def check_toy_curvature(ctx, rng):
    worst = 0.0
    n = 0
    for a in A_SWEEP:
        red = models.build("toy-reduced", a)
        K = red.targets["curvature"]
        rs = np.concatenate([[1e-6, 1e-4, 1e-2],
                             rng.uniform(0.05, 10.0, size=10), [10.0]])
        for r in rs:
            dps = 40 if r < 0.05 else None
            got = geometry.gaussian_curvature(red.metric, [float(r), 1.0], dps=dps)
            worst = max(worst, abs(got - K(r)))
            n += 1
    return worst, 1e-6, n, (
        "numeric curvature of the reduced surface matches "
        "8 a^4 / (r^2 + a^2)^3 over r in [1e-6, 10], a in {0.5, 1, 2}"
    )


def check_toy_euler(ctx, rng):
    worst = 0.0
    for a in A_SWEEP:
        red = models.build("toy-reduced", a)
        val, quad_err = geometry.euler_characteristic(red.metric, r_scale=a)
        worst = max(worst, abs(val - 2.0) + quad_err)
    return worst, 1e-6, len(A_SWEEP), (
        "total-curvature integral gives Euler characteristic 2 (sphere)"
    )


# ---------------------------------------------------------------------------
# taubnut suite


def check_tn_radius(ctx, rng):
    gh = models.build("gh-flat", ctx.a)
    vc = gh.embeddings["to_monopole"]
    worst = 0.0
    pts = _box_points(gh.extras["cart_box"], gh.extras["cart_exclusions"],
                      ctx.samples, ctx.subseed(rng))
    for y in pts:
        x = vc.value(y)
        r = float(np.sqrt(x[0] ** 2 + x[1] ** 2 + x[2] ** 2))
        worst = max(worst, abs(r - gh.targets["radius"](y)))
    return worst, 1e-10, len(pts), (
        "|x(y)| equals the squared Cartesian radius of y"
    )


def check_tn_gh_metric(ctx, rng):
    gh = models.build("gh-flat", ctx.a)
    vc = gh.embeddings["to_monopole"]
    worst = 0.0
    pts = _box_points(gh.extras["cart_box"], gh.extras["cart_exclusions"],
                      ctx.samples, ctx.subseed(rng))
    for y in pts:
        got = reduction.pullback_metric(gh.metric, vc, y)
        worst = max(worst, float(np.max(np.abs(got - np.eye(4)))))
    return worst, 1e-8, len(pts), (
        "monopole-coordinate metric pulls back to the flat Cartesian metric"
    )


def check_tn_gh_triple(ctx, rng):
    gh = models.build("gh-flat", ctx.a)
    inv = gh.embeddings["to_cartesian"]
    worst = 0.0
    pts = gh.sample(ctx.samples, ctx.subseed(rng))
    for p in pts:
        for k, form in gh.forms.items():
            got = reduction.pullback_form(gh.extras["cart_forms"][k], inv, p)
            worst = max(worst, float(np.max(np.abs(got - form.value(p)))))
    return worst, 1e-8, len(pts), (
        "Cartesian symplectic triple re-expressed in (x, Psi) matches the "
        "monopole-potential closed forms"
    )


def check_tn_curl(ctx, rng):
    worst = 0.0
    pts = _box_points(((-2.0, 2.0),) * 3, (models._string_exclusion(0.4),),
                      ctx.samples, ctx.subseed(rng))
    for x in pts:
        jA1 = fd_oracle(lambda c: models.monopole_potential(c)[0], x)
        jA2 = fd_oracle(lambda c: models.monopole_potential(c)[1], x)
        curl = np.array([-jA2.gradient[2], jA1.gradient[2],
                         jA2.gradient[0] - jA1.gradient[1]])
        r = float(np.linalg.norm(x))
        want = models.MONOPOLE_CURL_SIGN * np.asarray(x, dtype=float) / r ** 3
        worst = max(worst, float(np.max(np.abs(curl - want))))
    return worst, 1e-6, len(pts), (
        "finite-difference curl of the monopole potential is -x/r^3"
    )


def check_tn_moment_gradients(ctx, rng):
    m = models.build("r8-parent", ctx.a)
    worst = 0.0
    pts = _box_points(m.extras["cart_box"], m.extras["cart_exclusions"],
                      ctx.samples, ctx.subseed(rng))
    pairs = (("omega_I", "mu_I"), ("omega_J", "mu_J"), ("omega_K", "mu_K"))
    for q in pts:
        for wk, mk in pairs:
            alpha = reduction.contract(m.extras["cart_forms"][wk],
                                       m.extras["cart_killing"], q)
            grad = evaluate_jet(m.extras["cart_moments"][mk], q).gradient
            worst = max(worst, float(np.max(np.abs(alpha - grad))))
    return worst, 1e-8, len(pts), (
        "each contraction i_V omega is the gradient of its moment map"
    )


def check_tn_level_moments(ctx, rng):
    m = models.build("r8-parent", ctx.a)
    lev = m.embeddings["level"]
    worst = 0.0
    pts = _box_points(m.extras["level_box"], m.extras["level_exclusions"],
                      ctx.samples, ctx.subseed(rng))
    for p in pts:
        P = lev.value(p)
        for mk in ("mu_I", "mu_J", "mu_K"):
            worst = max(worst, abs(m.targets[mk](P)))
    return worst, 1e-12, len(pts), (
        "all three moment maps vanish along the declared level-set embedding"
    )


def check_tn_killing(ctx, rng):
    m = models.build("r8-parent", ctx.a)
    worst = 0.0
    pts = m.sample(max(10, ctx.samples // 5), ctx.subseed(rng))
    for p in pts:
        worst = max(worst, float(np.max(np.abs(
            geometry.killing_deviation(m.metric, m.killing["G"], p)))))
    cpts = _box_points(m.extras["cart_box"], m.extras["cart_exclusions"],
                       max(10, ctx.samples // 5), ctx.subseed(rng))
    for q in cpts:
        worst = max(worst, float(np.max(np.abs(geometry.killing_deviation(
            m.extras["cart_metric"], m.extras["cart_killing"], q)))))
    return worst, 1e-10, len(pts) + len(cpts), (
        "the rotation + shift isometry is Killing in both charts"
    )


def check_tn_level_pullback(ctx, rng):
    m = models.build("r8-parent", ctx.a)
    lev = m.embeddings["level"]
    lm = m.extras["level_metric"]
    worst = 0.0
    pts = _box_points(m.extras["level_box"], m.extras["level_exclusions"],
                      ctx.samples, ctx.subseed(rng))
    for p in pts:
        got = reduction.pullback_metric(m.metric, lev, p)
        worst = max(worst, float(np.max(np.abs(got - lm.value(p)))))
    return worst, 1e-10, len(pts), (
        "metric restricted to the triple zero level set matches the "
        "closed-form 5-metric"
    )


def check_tn_quotient_metric(ctx, rng):
    m = models.build("r8-parent", ctx.a)
    lm = m.extras["level_metric"]
    fiber = m.extras["level_fiber"]
    worst = 0.0
    pts = _box_points(m.extras["level_box"], m.extras["level_exclusions"],
                      ctx.samples, ctx.subseed(rng))
    for p in pts:
        got = reduction.quotient_metric(lm, fiber, m.invariant, p)
        worst = max(worst, float(np.max(np.abs(
            got - models.taub_nut_metric(p[:3], m.a)))))
    return worst, 1e-10, len(pts), (
        "projecting out the circle fiber of the 5-metric gives the "
        "Taub-NUT closed form"
    )


def check_tn_quotient_triple(ctx, rng):
    m = models.build("r8-parent", ctx.a)
    lev = m.embeddings["level"]
    worst = 0.0
    pts = _box_points(m.extras["level_box"], m.extras["level_exclusions"],
                      ctx.samples, ctx.subseed(rng))
    keys = ("omega_I", "omega_J", "omega_K")
    for p in pts:
        want = models.taub_nut_triple(p[:3], m.a)
        for i, k in enumerate(keys):
            W5 = reduction.pullback_form(m.forms[k], lev, p)
            Wq = reduction.quotient_form(W5, m.fiber_index, m.invariant, p)
            worst = max(worst, float(np.max(np.abs(Wq - want[i]))))
    return worst, 1e-8, len(pts), (
        "pulled-back triple drops its fiber components and equals the flat "
        "forms with 1/r -> 1/r + 1/a^2"
    )


def check_tn_triple_closed(ctx, rng):
    tn = models.build("taub-nut", ctx.a)
    worst = 0.0
    pts = tn.sample(max(10, ctx.samples // 5), ctx.subseed(rng))
    for p in pts:
        for f in tn.forms.values():
            worst = max(worst, float(np.max(np.abs(
                reduction.exterior_derivative(f, p)))))
    return worst, 1e-8, len(pts), "quotient triple is closed"


def check_tn_hyperkahler(ctx, rng):
    tn = models.build("taub-nut", ctx.a)
    worst = 0.0
    pts = tn.sample(ctx.samples, ctx.subseed(rng))
    eye = np.eye(4)
    keys = ("omega_I", "omega_J", "omega_K")
    for p in pts:
        gv = tn.metric.value(p)
        I, J, K = (-np.linalg.solve(gv, tn.forms[k].value(p)) for k in keys)
        for D in (I @ I + eye, J @ J + eye, K @ K + eye,
                  I @ J - K, J @ K - I, K @ I - J):
            worst = max(worst, float(np.max(np.abs(D))))
        for f in tn.forms.values():
            worst = max(worst, float(np.max(np.abs(
                geometry.covariant_derivative_02(tn.metric, f, p)))))
    return worst, 1e-7, len(pts), (
        "Taub-NUT triple is quaternionic and covariantly constant"
    )


def check_tn_mechanics(ctx, rng):
    m = models.build("r8-parent", ctx.a)
    lm = m.extras["level_metric"]
    L = mechanics.QuadraticKinetic(m.extras["level_chart"].names, lm.fn,
                                   name="5-chart kinetic")
    pts = _box_points(m.extras["level_box"], m.extras["level_exclusions"],
                      max(10, ctx.samples // 2), ctx.subseed(rng))
    L2 = mechanics.constrain_and_reduce(L, m.fiber_index,
                                        probe_points=[list(p) for p in pts[:2]])
    fiber = m.extras["level_fiber"]
    worst = 0.0
    for p in pts:
        got = L2.matrix(list(p[:4]))
        want = reduction.quotient_metric(lm, fiber, m.invariant, p)
        worst = max(worst, float(np.max(np.abs(got - want))))
    return worst, 1e-12, len(pts), (
        "Hamiltonian reduction of the 5-chart kinetic term equals the "
        "geometric quotient"
    )


# ---------------------------------------------------------------------------
# mechanics suite


def check_mech_roundtrip(ctx, rng):
    worst = 0.0
    count = max(10, ctx.samples // 2)
    for _ in range(count):
        d = int(rng.integers(2, 5))
        Q, _ = np.linalg.qr(rng.normal(size=(d, d)))
        M = (Q * np.exp(rng.uniform(-0.7, 0.7, size=d))) @ Q.T
        M = 0.5 * (M + M.T)
        L = mechanics.QuadraticKinetic([f"q{i}" for i in range(d)],
                                       lambda c, M=M: M)
        Minv = mechanics.legendre_to_hamiltonian(L, [0.0] * d)
        worst = max(worst, float(np.max(np.abs(np.linalg.inv(Minv) - M))))
    return worst, 1e-12, count, (
        "Legendre transform is an involution on random SPD mass matrices"
    )


def check_mech_toy_matrix(ctx, rng):
    m = models.build("toy-parent", ctx.a)
    a = m.a
    L = mechanics.QuadraticKinetic(m.extras["level_chart"].names,
                                   m.extras["level_metric"].fn)
    worst = 0.0
    pts = _box_points(m.extras["level_box"], (), ctx.samples, ctx.subseed(rng))
    for p in pts:
        Minv = mechanics.legendre_to_hamiltonian(L, p)
        r2 = p[0] * p[0]
        want = np.array([
            [1.0 / (1.0 + r2 / a ** 2), 0.0, 0.0],
            [0.0, 1.0 / a ** 2, -1.0 / a ** 2],
            [0.0, -1.0 / a ** 2, (1.0 + r2 / a ** 2) / r2],
        ])
        worst = max(worst, float(np.max(np.abs(Minv - want))))
    return worst, 1e-12, len(pts), (
        "toy Hamiltonian kinetic matrix matches the closed-form coefficients"
    )


def check_mech_conserved(ctx, rng):
    worst = 0.0
    n_pts = 0
    for name in ("toy-parent", "r8-parent"):
        m = models.build(name, ctx.a)
        lm = m.extras["level_metric"]
        L = mechanics.QuadraticKinetic(m.extras["level_chart"].names, lm.fn)
        H = mechanics.hamiltonian_field(L)
        pts = _box_points(m.extras["level_box"],
                          m.extras.get("level_exclusions", ()),
                          max(5, ctx.samples // 10), ctx.subseed(rng))
        for p in pts:
            s = mechanics.PhasePoint(tuple(p), tuple(rng.normal(size=L.dim)))
            for c in m.extras["level_cyclic"]:
                pf = mechanics.momentum_field(c, L.dim)
                worst = max(worst, abs(mechanics.poisson_bracket(pf, H, s)))
            n_pts += 1
    return worst, 1e-12, n_pts, (
        "declared cyclic momenta Poisson-commute with both model Hamiltonians"
    )


def check_mech_equivalence(ctx, rng):
    err_toy = check_toy_mechanics(ctx, rng)[0]
    err_tn = check_tn_mechanics(ctx, rng)[0]
    return max(err_toy, err_tn), 1e-12, 2, (
        "constraining the fiber momentum equals the metric quotient on every "
        "registered reduction model"
    )


def check_mech_singular(ctx, rng):
    L = mechanics.QuadraticKinetic(("u", "v"),
                                   lambda c: [[1.0, 1.0], [None, 1.0]])
    try:
        mechanics.legendre_to_hamiltonian(L, [0.0, 0.0])
        err = 1.0
    except mechanics.DegenerateLagrangianError:
        err = 0.0
    return err, 0.0, 1, (
        "singular mass matrix is rejected (expected failure is detected)"
    )


# ---------------------------------------------------------------------------
# derivative-oracle hygiene


def check_hygiene_jets_vs_fd(ctx, rng):
    worst_g = worst_h = 0.0
    n = 0
    for spec in models.scalar_fields(ctx.a):
        pts = _box_points(spec.box, spec.exclusions, 8, ctx.subseed(rng))
        for p in pts:
            jet = evaluate_jet(spec.fn, p)
            ora = fd_oracle(spec.fn, p, exclusions=spec.exclusions)
            worst_g = max(worst_g, float(np.max(np.abs(jet.gradient - ora.gradient))))
            worst_h = max(worst_h, float(np.max(np.abs(jet.hessian - ora.hessian))))
            n += 1
    # gradients judged at 1e-6, second derivatives at 1e-4; scale the latter
    # so a single worst-error number respects both
    err = max(worst_g, worst_h * (1e-6 / 1e-4))
    return err, 1e-6, n, (
        "jet derivatives match central differences on every registered "
        "scalar field (gradient 1e-6, second derivatives 1e-4)"
    )


SUITES = {
    "heavenly": [
        ("heavenly.coset_constant_n2", lambda c, r: check_coset_constant(c, r, 2)),
        ("heavenly.coset_constant_n4", lambda c, r: check_coset_constant(c, r, 4)),
        ("heavenly.det_equality_n2", check_det_equality),
        ("heavenly.negative_control", check_negative_control),
        ("heavenly.quaternion_triple", check_quaternion_triple),
        ("heavenly.covariant_constancy", check_covariant_constancy),
        ("heavenly.covariant_negative_control", check_covariant_negative_control),
        ("heavenly.sp_algebra", check_sp_algebra),
    ],
    "toy": [
        ("toy.contraction", check_toy_contraction),
        ("toy.killing_and_closure", check_toy_killing),
        ("toy.moment_recovery", check_toy_moment),
        ("toy.level_pullback", check_toy_level_pullback),
        ("toy.quotient_metric", check_toy_quotient),
        ("toy.quotient_form", check_toy_quotient_form),
        ("toy.quotient_complex_structure", check_toy_complex_structure),
        ("toy.hamiltonian_equivalence", check_toy_mechanics),
        ("toy.cyclic_brackets", check_toy_brackets),
        ("toy.curvature_profile", check_toy_curvature),
        ("toy.euler_characteristic", check_toy_euler),
    ],
    "taubnut": [
        ("taubnut.radius_identity", check_tn_radius),
        ("taubnut.cartesian_metric", check_tn_gh_metric),
        ("taubnut.coordinate_triple", check_tn_gh_triple),
        ("taubnut.monopole_curl", check_tn_curl),
        ("taubnut.moment_gradients", check_tn_moment_gradients),
        ("taubnut.level_moments_vanish", check_tn_level_moments),
        ("taubnut.killing", check_tn_killing),
        ("taubnut.level_pullback", check_tn_level_pullback),
        ("taubnut.quotient_metric", check_tn_quotient_metric),
        ("taubnut.quotient_triple", check_tn_quotient_triple),
        ("taubnut.triple_closed", check_tn_triple_closed),
        ("taubnut.hyperkahler", check_tn_hyperkahler),
        ("taubnut.hamiltonian_equivalence", check_tn_mechanics),
    ],
    "mechanics": [
        ("mechanics.legendre_roundtrip", check_mech_roundtrip),
        ("mechanics.toy_kinetic_matrix", check_mech_toy_matrix),
        ("mechanics.conserved_momenta", check_mech_conserved),
        ("mechanics.reduction_equivalence", check_mech_equivalence),
        ("mechanics.singular_mass_rejected", check_mech_singular),
    ],
}

SUITES["all"] = (SUITES["heavenly"] + SUITES["toy"] + SUITES["taubnut"]
                 + SUITES["mechanics"]
                 + [("hygiene.jets_vs_finite_differences", check_hygiene_jets_vs_fd)])

SUITE_NAMES = ("all", "heavenly", "toy", "taubnut", "mechanics")


def run_suite(suite, seed=0, samples=50, a=1.0):
    """Run a named suite and return its :class:`RunManifest`."""
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {SUITE_NAMES}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    ctx = CheckContext(seed=int(seed), samples=int(samples), a=float(a))
    reports = []
    for check_id, fn in SUITES[suite]:
        rng = ctx.rng(check_id)
        t0 = time.perf_counter()
        err, tol, n, description = fn(ctx, rng)
        elapsed = int(round((time.perf_counter() - t0) * 1000.0))
        reports.append(CheckReport(
            check_id=check_id,
            description=description,
            samples=int(n),
            max_abs_error=float(err),
            tolerance=float(tol),
            passed=bool(err <= tol),
            elapsed_ms=elapsed,
        ))
    reports.sort(key=lambda c: c.check_id)
    return RunManifest(
        seed=int(seed),
        samples=int(samples),
        a=float(a),
        a_sweep=A_SWEEP,
        version=__version__,
        checks=tuple(reports),
    )
