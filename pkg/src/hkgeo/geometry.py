"""Levi-Civita connection, curvature and isometry checks.

Index conventions
-----------------
Christoffel symbols are stored as ``G[S, M, N] = Gamma^S_{MN}`` and the
curvature as

    R^A_{BCD} = d_C Gamma^A_{DB} - d_D Gamma^A_{CB}
                + Gamma^A_{CS} Gamma^S_{DB} - Gamma^A_{DS} Gamma^S_{CB},

the sign fixed so that the round sphere has positive curvature.

``gaussian_curvature`` returns the curvature scalar of a 2-dimensional
metric normalised as ``2 R_{0101} / det g`` (the 2D Ricci scalar, i.e.
twice the sectional value); with this normalisation the rotationally
symmetric reductions built in :mod:`hkgeo.models` integrate to their
expected topological count via :func:`euler_characteristic`.

Inverse-metric contractions go through a Cholesky factorisation, so a
non-positive-definite metric surfaces as a :class:`MetricDomainError`
instead of a silent wrong answer.
"""

from __future__ import annotations

import math

import mpmath
import numpy as np
import scipy.integrate
import scipy.linalg

from .jets import fd_oracle

__all__ = [
    "MetricDomainError",
    "DivergenceError",
    "christoffel",
    "christoffel_fd",
    "christoffel_with_derivative",
    "riemann",
    "riemann_lowered",
    "ricci_scalar",
    "gaussian_curvature",
    "covariant_derivative_02",
    "killing_deviation",
    "euler_characteristic",
]


class MetricDomainError(ValueError):
    """Metric failed to be positive definite where it was needed."""


class DivergenceError(RuntimeError):
    """Improper curvature integral did not converge to tolerance."""


def _assert_spd(gv, context=""):
    try:
        np.linalg.cholesky(np.asarray(gv, dtype=float))
    except np.linalg.LinAlgError as err:
        raise MetricDomainError(f"metric not positive definite {context}: {err}") from err


def _solve(gv, B):
    """Solve ``gv @ X = B`` for SPD ``gv``; dtype-generic."""
    _assert_spd(gv)
    if gv.dtype != object:
        c = scipy.linalg.cho_factor(gv)
        return scipy.linalg.cho_solve(c, B)
    # object dtype (mpmath entries): plain Gaussian elimination, partial pivot
    d = gv.shape[0]
    A = gv.copy()
    X = B.copy()
    for k in range(d):
        piv = max(range(k, d), key=lambda r: abs(A[r, k]))
        if piv != k:
            A[[k, piv]] = A[[piv, k]]
            X[[k, piv]] = X[[piv, k]]
        for r in range(k + 1, d):
            m = A[r, k] / A[k, k]
            A[r, k:] = A[r, k:] - m * A[k, k:]
            X[r] = X[r] - m * X[k]
    for k in range(d - 1, -1, -1):
        for r in range(k + 1, d):
            X[k] = X[k] - A[k, r] * X[r]
        X[k] = X[k] / A[k, k]
    return X


def _det(gv):
    if gv.dtype != object:
        return float(np.linalg.det(gv))
    if gv.shape == (2, 2):
        return gv[0, 0] * gv[1, 1] - gv[0, 1] * gv[1, 0]
    raise NotImplementedError("extended-precision determinant only needed for 2x2")


def _christoffel_from(gv, dg):
    d = gv.shape[0]
    T = np.zeros((d, d * d), dtype=gv.dtype)
    for P in range(d):
        for M in range(d):
            for N in range(d):
                T[P, M * d + N] = (dg[M, P, N] + dg[N, P, M] - dg[P, M, N]) / 2
    return _solve(gv, T).reshape(d, d, d)


def christoffel(g, p):
    """``Gamma^S_{MN}`` of ``g`` at ``p`` from jet derivatives."""
    gv, dg, _ = g.jet(p)
    return _christoffel_from(gv, dg)


def christoffel_fd(g, p):
    """Same connection, but every metric derivative from central differences.

    Kept deliberately free of jet arithmetic so it can arbitrate against
    :func:`christoffel`.
    """
    d = g.dim
    gv = g.value(p)
    dg = np.zeros((d, d, d))
    for M in range(d):
        for N in range(M, d):
            comp = fd_oracle(lambda q, M=M, N=N: float(g.fn(q)[M][N]), p)
            dg[:, M, N] = comp.gradient
            dg[:, N, M] = comp.gradient
    return _christoffel_from(gv, dg)


def christoffel_with_derivative(g, p):
    """Connection and its coordinate derivative ``dG[Q, S, M, N] = d_Q Gamma^S_{MN}``."""
    gv, dg, d2g = g.jet(p)
    d = gv.shape[0]
    G = _christoffel_from(gv, dg)
    ginv = _solve(gv, np.eye(d) if gv.dtype != object else _object_eye(d))
    dG = np.zeros((d, d, d, d), dtype=gv.dtype)
    for Q in range(d):
        # d_Q g^{SP} = -(g^{-1} (d_Q g) g^{-1})^{SP}
        dginv = -np.dot(ginv, np.dot(dg[Q], ginv))
        for S in range(d):
            for M in range(d):
                for N in range(d):
                    acc = 0 * gv[0, 0]
                    for P in range(d):
                        t = (dg[M, P, N] + dg[N, P, M] - dg[P, M, N]) / 2
                        dt = (d2g[Q, M, P, N] + d2g[Q, N, P, M] - d2g[Q, P, M, N]) / 2
                        acc = acc + dginv[S, P] * t + ginv[S, P] * dt
                    dG[Q, S, M, N] = acc
    return G, dG


def _object_eye(d):
    eye = np.full((d, d), mpmath.mpf(0), dtype=object)
    for i in range(d):
        eye[i, i] = mpmath.mpf(1)
    return eye


def riemann(g, p):
    """``R[A, B, C, D] = R^A_{BCD}`` at ``p``."""
    G, dG = christoffel_with_derivative(g, p)
    d = G.shape[0]
    R = np.zeros((d, d, d, d), dtype=G.dtype)
    for A in range(d):
        for B in range(d):
            for C in range(d):
                for D in range(d):
                    acc = dG[C, A, D, B] - dG[D, A, C, B]
                    for S in range(d):
                        acc = acc + G[A, C, S] * G[S, D, B] - G[A, D, S] * G[S, C, B]
                    R[A, B, C, D] = acc
    return R


def riemann_lowered(g, p):
    """``R_{ABCD} = g_{AE} R^E_{BCD}``."""
    gv = g.value(p) if not _needs_object(p) else _value_object(g, p)
    R = riemann(g, p)
    return np.tensordot(gv, R, axes=([1], [0]))


def _needs_object(p):
    return any(isinstance(x, (mpmath.mpf, mpmath.mpc)) for x in p)


def _value_object(g, p):
    from .fields import _value_square

    return _value_square(g.fn, p, +1)


def ricci_scalar(g, p):
    """Scalar curvature by full contraction ``g^{BD} R^A_{BAD}``.

    Independent of :func:`gaussian_curvature`'s single-component route; the
    two must agree on 2-dimensional metrics.
    """
    R = riemann(g, p)
    d = R.shape[0]
    ric = np.zeros((d, d), dtype=R.dtype)
    for B in range(d):
        for D in range(d):
            acc = 0 * R[0, 0, 0, 0]
            for A in range(d):
                acc = acc + R[A, B, A, D]
            ric[B, D] = acc
    gv = g.value(p) if not _needs_object(p) else _value_object(g, p)
    contracted = _solve(gv, ric)  # g^{BP} ric[P, D]
    out = 0 * contracted[0, 0]
    for B in range(d):
        out = out + contracted[B, B]
    return out


def gaussian_curvature(g, p, dps=None):
    """Curvature scalar of a 2D metric, ``2 R_{0101} / det g``.

    Normalised so a flat chart gives 0 and the round sphere a positive
    value.  Polar-type charts degenerate towards their origin and amplify
    float64 roundoff like ``1/r**2``; passing ``dps`` re-evaluates the whole
    chain (metric components included) in mpmath arithmetic with that many
    digits, which keeps the result honest down to ``r ~ 1e-6``.
    """
    if g.dim != 2:
        raise ValueError("gaussian_curvature expects a 2-dimensional metric")
    if dps is not None:
        with mpmath.workdps(dps):
            q = [mpmath.mpf(float(x)) for x in p]
            R = riemann_lowered(g, q)
            gv = _value_object(g, q)
            K = 2 * R[0, 1, 0, 1] / _det(gv)
            return float(K)
    R = riemann_lowered(g, p)
    gv = g.value(p)
    return float(2 * R[0, 1, 0, 1] / _det(gv))


def covariant_derivative_02(g, T, p):
    """``nabla_P T_{MN}`` of a rank-(0,2) field along ``g``'s connection."""
    G = christoffel(g, p)
    Tv, dT, _ = T.jet(p)
    d = G.shape[0]
    out = np.array(dT, dtype=dT.dtype, copy=True)
    for P in range(d):
        for M in range(d):
            for N in range(d):
                acc = out[P, M, N]
                for S in range(d):
                    acc = acc - G[S, P, M] * Tv[S, N] - G[S, P, N] * Tv[M, S]
                out[P, M, N] = acc
    return out


def killing_deviation(g, V, p):
    """Lie derivative ``(L_V g)_{MN}``; identically zero iff V is Killing."""
    gv, dg, _ = g.jet(p)
    Vv, dV = V.jet(p)
    d = gv.shape[0]
    L = np.zeros((d, d), dtype=gv.dtype)
    for M in range(d):
        for N in range(d):
            acc = 0 * gv[0, 0]
            for P in range(d):
                acc = (acc + Vv[P] * dg[P, M, N]
                       + gv[P, N] * dV[M, P] + gv[M, P] * dV[N, P])
            L[M, N] = acc
    return L


def euler_characteristic(g, period=2 * math.pi, r_scale=1.0, quad_tol=1e-8,
                         weight=None, r_floor=1e-6):
    """Improper curvature integral ``(period / 2 pi) * int_0^inf K sqrt(g) dr``.

    The radial half line is compactified with ``r = r_scale * u / (1 - u)``,
    ``u in [0, 1)``, and integrated by adaptive Gauss-Kronrod quadrature.
    The metric must be 2-dimensional with chart order (radial, angular) and
    angle-independent components.  ``weight(r)``, if given, multiplies the
    integrand (useful for linearity checks).

    Returns
    -------
    (value, abs_error) : tuple of float

    Raises
    ------
    DivergenceError
        If the quadrature error estimate exceeds ``quad_tol``.
    """
    if g.dim != 2:
        raise ValueError("euler_characteristic expects a 2-dimensional metric")

    def integrand(u):
        r = r_scale * u / (1.0 - u)
        jac = r_scale / (1.0 - u) ** 2
        r = max(r, r_floor)
        point = [r, 0.0]
        K = gaussian_curvature(g, point)
        sg = math.sqrt(_det(g.value(point)))
        val = (period / (2 * math.pi)) * K * sg * jac
        if weight is not None:
            val *= weight(r)
        return val

    value, err = scipy.integrate.quad(integrand, 0.0, 1.0, epsabs=1e-10,
                                      epsrel=1e-10, limit=200)
    if err > quad_tol:
        raise DivergenceError(
            f"quadrature error {err:.3e} above tolerance {quad_tol:.1e}"
        )
    return value, err
