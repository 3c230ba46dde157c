"""Symplectic reduction toolkit: contractions, moment maps, pullbacks and
quotients.

The pipeline implemented here is the standard one: contract a closed 2-form
with a Killing vector, integrate the resulting exact 1-form to a moment
map, restrict to its zero level set through an explicit embedding, and
project out the fiber direction.  Metrics descend by orthogonal projection

    g_red(U, W) = g(U, W) - g(U, V) g(W, V) / g(V, V)

restricted to the invariant coordinates (the coordinate-free form of
completing the square on the fiber and dropping it); 2-forms descend by
simply keeping their invariant block, which is only legitimate when every
fiber component cancels -- a condition that is checked, not assumed.

Coefficient conventions follow :class:`~hkgeo.fields.FormField`: a 2-form
is the antisymmetric matrix of displayed wedge coefficients, and the
contraction is ``(i_V w)_M = w_MN V^N``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .fields import FormField, MetricField, VectorFieldR
from .geometry import DivergenceError, killing_deviation

__all__ = [
    "NotExactError",
    "DegenerateFiberError",
    "ObstructionError",
    "DegeneratePullbackWarning",
    "contract",
    "contraction_field",
    "exterior_derivative",
    "recover_moment_map",
    "pullback_metric",
    "pullback_form",
    "quotient_metric",
    "quotient_form",
    "complex_structure",
    "raise_first_index",
    "ReductionSpec",
]


class NotExactError(ValueError):
    """A 1-form that must be closed/exact measurably is not."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DegenerateFiberError(ValueError):
    """The fiber direction has non-positive norm; the quotient metric is undefined."""


class ObstructionError(ValueError):
    """A form has non-cancelling fiber components and does not descend."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DegeneratePullbackWarning(UserWarning):
    """Jacobian of the map is rank deficient; the pullback is degenerate."""


def _antisym_entries(raw, d):
    """Full antisymmetric nested list from the strict upper triangle of ``raw``."""
    out = [[0.0] * d for _ in range(d)]
    for M in range(d):
        for N in range(M + 1, d):
            e = raw[M][N]
            out[M][N] = e
            out[N][M] = -e
    return out


def _as_vector_fn(V, dim):
    if isinstance(V, VectorFieldR):
        return V.fn
    v = np.asarray(V, dtype=float)
    if v.shape != (dim,):
        raise ValueError(f"vector of shape {v.shape} on a {dim}-dimensional chart")
    return lambda coords: list(v)


def contract(form, V, p):
    """Value of ``i_V w`` at ``p``: components ``w_MN V^N``."""
    if form.degree != 2:
        raise ValueError("contraction is defined here for degree-2 forms")
    W = form.value(p)
    v = V.value(p) if isinstance(V, VectorFieldR) else np.asarray(V, dtype=float)
    return W @ v


def contraction_field(form, V, name=""):
    """``i_V w`` as a jet-capable degree-1 field on the same chart."""
    if form.degree != 2:
        raise ValueError("contraction is defined here for degree-2 forms")
    d = form.dim
    vfn = _as_vector_fn(V, d)

    def fn(coords):
        W = _antisym_entries(form.fn(coords), d)
        v = vfn(coords)
        out = []
        for M in range(d):
            s = 0.0
            for N in range(d):
                w = W[M][N]
                if isinstance(w, float) and w == 0.0:
                    continue
                s = s + w * v[N]
            out.append(s)
        return out

    return FormField(form.chart, 1, fn, name=name or f"i_V {form.name}")


def exterior_derivative(form, p):
    """Coordinate exterior derivative at ``p``.

    Degree 1 returns the antisymmetric matrix ``d_M a_N - d_N a_M``;
    degree 2 returns the rank-3 cyclic sum
    ``d_M w_NP + d_N w_PM + d_P w_MN``.  Either vanishes identically iff
    the form is closed, which is all the callers test.
    """
    _, D1, _ = form.jet(p)
    if form.degree == 1:
        return D1 - D1.T
    d = form.dim
    T = np.zeros((d, d, d))
    for M in range(d):
        for N in range(d):
            for P in range(d):
                T[M, N, P] = D1[M, N, P] + D1[N, P, M] + D1[P, M, N]
    return T


def recover_moment_map(alpha, base, p, base_value=0.0, closure_tol=1e-6,
                       quad_tol=1e-9):
    """Integrate an exact 1-form along the straight segment ``base -> p``.

    Returns ``base_value + integral``, the potential normalised to the
    declared value at ``base``.  Closedness of ``alpha`` is verified at
    points along the segment first (residual of the exterior derivative
    above ``closure_tol`` raises :class:`NotExactError`); the quadrature
    must converge to absolute error below ``quad_tol`` or
    :class:`~hkgeo.geometry.DivergenceError` is raised.
    """
    base = np.asarray(base, dtype=float)
    p = np.asarray(p, dtype=float)
    if base.shape != p.shape:
        raise ValueError("base and target points live on different charts")
    for t in np.linspace(0.0, 1.0, 5):
        q = base + t * (p - base)
        res = float(np.max(np.abs(exterior_derivative(alpha, q))))
        if res > closure_tol:
            raise NotExactError(
                f"form is not closed along the path (residual {res:.3e} at t={t:.2f})",
                residual=res,
            )
    delta = p - base

    def integrand(t):
        return float(alpha.value(base + t * delta) @ delta)

    val, err = integrate.quad(integrand, 0.0, 1.0, epsabs=1e-12, epsrel=1e-12,
                              limit=200)
    if err > quad_tol:
        raise DivergenceError(
            f"line integral error estimate {err:.3e} exceeds {quad_tol:.1e}"
        )
    return base_value + val


def _jacobian_checked(phi, p):
    J = phi.jacobian(p)
    if np.linalg.matrix_rank(J) < phi.source.dim:
        warnings.warn(
            f"jacobian of {phi.name or 'map'} is rank deficient at {list(p)}",
            DegeneratePullbackWarning,
            stacklevel=3,
        )
    return J


def pullback_metric(g, phi, p):
    """``(phi* g)_mn = d_m phi^M d_n phi^N g_MN`` at the source point ``p``."""
    J = _jacobian_checked(phi, p)
    gv = g.value(phi.value(p))
    return J.T @ gv @ J


def pullback_form(form, phi, p):
    """Pull a 1- or 2-form on the target back through ``phi``."""
    J = _jacobian_checked(phi, p)
    W = form.value(phi.value(p))
    if form.degree == 1:
        return J.T @ W
    return J.T @ W @ J


def quotient_metric(g, V, invariant, p):
    """Project out the fiber direction of ``V`` and keep the invariant block.

    ``g`` is the level-set metric field (or a plain matrix), ``V`` the
    fiber vector (field or constant components).  Raises
    :class:`DegenerateFiberError` when ``g(V, V) <= 0``.
    """
    gv = g.value(p) if isinstance(g, MetricField) else np.asarray(g, dtype=float)
    v = V.value(p) if isinstance(V, VectorFieldR) else np.asarray(V, dtype=float)
    gvv = float(v @ gv @ v)
    if gvv <= 0.0:
        raise DegenerateFiberError(f"fiber norm g(V, V) = {gvv:.3e} at {list(p)}")
    gu = gv @ v
    proj = gv - np.outer(gu, gu) / gvv
    idx = np.asarray(invariant, dtype=int)
    return proj[np.ix_(idx, idx)]


def quotient_form(form, fiber_index, invariant, p, tol=1e-10):
    """Invariant block of a form whose fiber components cancel.

    The cancellation is a theorem for the pipelines assembled here, so a
    fiber component above ``tol`` means the input is wrong and raises
    :class:`ObstructionError` (with the offending residual) instead of
    being projected away silently.
    """
    W = form.value(p) if isinstance(form, FormField) else np.asarray(form, dtype=float)
    residual = float(np.max(np.abs(W[fiber_index, :])))
    if residual > tol:
        raise ObstructionError(
            f"fiber components of {getattr(form, 'name', 'form') or 'form'} do not "
            f"cancel (max {residual:.3e} > {tol:.1e})",
            residual=residual,
        )
    idx = np.asarray(invariant, dtype=int)
    return W[np.ix_(idx, idx)]


def complex_structure(gv, W):
    """Mixed structure ``I^M_N = g^MP W_PN`` from a metric and 2-form value."""
    return np.linalg.solve(gv, W)


def raise_first_index(gv, T):
    """Raise the first lower index of ``T[P, M, N]`` slices with ``gv``."""
    return np.stack([np.linalg.solve(gv, T[P]) for P in range(T.shape[0])])


@dataclass(frozen=True)
class ReductionSpec:
    """A reduction pipeline bundled as data.

    Fields: the parent metric, the parent 2-forms, the Killing vector
    generating the fiber, the level-set embedding, the invariant coordinate
    indices of the level chart and the fiber coordinate index.
    """

    parent_metric: MetricField
    parent_forms: tuple
    killing: VectorFieldR
    embedding: object
    invariant: tuple
    fiber_index: int

    def validate(self, points, closed_tol=1e-8, killing_tol=1e-10):
        """Check the declared symmetry at ``points``.

        Returns the worst Killing deviation of the parent metric and the
        worst closedness residual of each contracted form; raises nothing,
        callers assert on the numbers.
        """
        worst_killing = 0.0
        for p in points:
            dev = killing_deviation(self.parent_metric, self.killing, p)
            worst_killing = max(worst_killing, float(np.max(np.abs(dev))))
        worst_closed = []
        for form in self.parent_forms:
            alpha = contraction_field(form, self.killing)
            w = 0.0
            for p in points:
                w = max(w, float(np.max(np.abs(exterior_derivative(alpha, p)))))
            worst_closed.append(w)
        return worst_killing, worst_closed
