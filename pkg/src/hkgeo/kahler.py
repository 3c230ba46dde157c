"""Hermitian metrics on complex charts, the unit-determinant (heavenly)
condition, and the associated triple of symplectic structures.

Real realisation
----------------
A complex chart of dimension ``n`` is carried on ``2n`` real coordinates
interleaved as ``(u1, v1, ..., un, vn)`` with ``z^j = u^j + i v^j``.  A
Hermitian component matrix ``h`` with ``h = A + iB`` realifies to the block
pattern ``[[A, B], [-B, A]]`` per index pair, normalised so the flat
potential ``sum |z|^2`` gives the identity metric.

Forms
-----
Degree-2 forms are stored as antisymmetric coefficient matrices ``W`` with
``w = sum_{M<N} W_MN dx^M ^ dx^N``.  The three structures attached to a
Hermitian ``h`` on a symplectic pairing ``Omega`` (block-diagonal
``[[0, 1], [-1, 0]]``) are, in that storage,

* ``omega_I``: the Kaehler form of ``h`` (depends on the metric),
* ``omega_J``, ``omega_K``: the real and imaginary parts of the
  holomorphic pairing built from ``Omega`` (metric independent).

Mixed-index structures are raised by ``X = -g^{-1} W``, the convention in
which ``w(U, V) = g(XU, V)`` and the flat case satisfies the quaternion
algebra ``I J = K``, ``J K = I``, ``K I = J``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .fields import Chart, FormField, MetricField
from .geometry import MetricDomainError
from .jets import Jet2, evaluate_jet

__all__ = [
    "ComplexChart",
    "HermitianMetricField",
    "HermiticityError",
    "HeavenlyViolation",
    "HeavenlyResult",
    "Triple",
    "metric_from_potential",
    "symplectic_matrix",
    "sp_generators",
    "sp_residual",
    "coset_metric",
    "heavenly_check",
    "heavenly_constant",
    "realify",
    "triple_at",
    "quaternion_residual",
    "spin_connection_trace",
    "x_matrices",
    "unit_determinant_shear_field",
    "non_unimodular_field",
    "single_mode_field",
]


class HermiticityError(ArithmeticError):
    """A matrix that must be Hermitian came out measurably non-Hermitian."""


class HeavenlyViolation(ValueError):
    """``h Omega h^T`` is not proportional to ``Omega`` (or not positively so)."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class ComplexChart:
    """``n`` complex coordinates over interleaved real ones."""

    n: int

    def real_chart(self):
        names = []
        for j in range(1, self.n + 1):
            names += [f"u{j}", f"v{j}"]
        return Chart(tuple(names))

    def to_complex(self, p):
        p = np.asarray(p, dtype=float)
        return p[0::2] + 1j * p[1::2]

    def from_complex(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.empty(2 * self.n)
        out[0::2] = z.real
        out[1::2] = z.imag
        return out


# ---------------------------------------------------------------------------
# potentials and Hermitian fields


def metric_from_potential(potential, n, p):
    """Hermitian component matrix ``d^2 K / dz^i dzbar^k`` at real point ``p``.

    ``potential`` is a real scalar field over the ``2n`` interleaved real
    coordinates.  The Wirtinger combination of its real Hessian is

        h_ik = (K_uu + K_vv) / 4 + i (K_uv - K_vu) / 4,

    per index pair.  The result is checked to be Hermitian to 1e-12
    (relative); a failure indicates an inconsistent potential evaluation and
    raises :class:`HermiticityError`.
    """
    jet = evaluate_jet(potential, p)
    H = jet.hessian
    h = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for k in range(n):
            re = 0.25 * (H[2 * i, 2 * k] + H[2 * i + 1, 2 * k + 1])
            im = 0.25 * (H[2 * i, 2 * k + 1] - H[2 * i + 1, 2 * k])
            h[i, k] = re + 1j * im
    dev = float(np.max(np.abs(h - h.conj().T)))
    if dev > 1e-12 * max(1.0, float(np.max(np.abs(h)))):
        raise HermiticityError(f"Hessian combination non-Hermitian by {dev:.3e}")
    return h


def _mirror_sym(raw, n):
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for k in range(i, n):
            out[i][k] = raw[i][k]
            if k != i:
                out[k][i] = raw[i][k]
    return out


def _mirror_antisym(raw, n, zero):
    out = [[zero] * n for _ in range(n)]
    for i in range(n):
        for k in range(i + 1, n):
            out[i][k] = raw[i][k]
            out[k][i] = -raw[i][k] if isinstance(raw[i][k], Jet2) else -raw[i][k]
    return out


class HermitianMetricField:
    """Hermitian metric components as explicit real/imaginary part fields.

    Parameters
    ----------
    n : int
        Complex dimension.
    re_fn, im_fn : callable
        Map interleaved real coordinates to the n x n real and imaginary
        parts.  Only the upper triangles are read; the mirrors (symmetric
        for ``re_fn``, antisymmetric with zero diagonal for ``im_fn``) are
        filled in, so Hermiticity is exact by storage.
    potential : callable, optional
        Real Kaehler potential generating the same components; kept for
        cross-checks, not used in evaluation.
    """

    def __init__(self, n, re_fn, im_fn=None, potential=None, name=""):
        self.n = n
        self.chart = ComplexChart(n)
        self.re_fn = re_fn
        self.im_fn = im_fn or (lambda coords: [[0.0] * n for _ in range(n)])
        self.potential = potential
        self.name = name

    def _parts(self, coords):
        A = _mirror_sym(self.re_fn(coords), self.n)
        B = _mirror_antisym(self.im_fn(coords), self.n, 0.0)
        return A, B

    def matrix(self, p):
        """Complex component matrix at interleaved real point ``p``."""
        A, B = self._parts([float(x) for x in p])
        out = np.zeros((self.n, self.n), dtype=complex)
        for i in range(self.n):
            for k in range(self.n):
                out[i, k] = float(A[i][k]) + 1j * float(B[i][k])
        return out

    def real_metric(self):
        """The realified metric as a jet-capable :class:`MetricField`."""
        n = self.n

        def fn(coords):
            A, B = self._parts(coords)
            rows = [[None] * (2 * n) for _ in range(2 * n)]
            for i in range(n):
                for k in range(n):
                    rows[2 * i][2 * k] = A[i][k]
                    rows[2 * i + 1][2 * k + 1] = A[i][k]
                    rows[2 * i][2 * k + 1] = B[i][k]
                    rows[2 * i + 1][2 * k] = -B[i][k] if isinstance(B[i][k], Jet2) else -B[i][k]
            return rows

        return MetricField(self.chart.real_chart(), fn, name=f"realify({self.name})")

    def _entry_jets(self, p):
        dim = 2 * self.n
        coords = [Jet2.variable(float(x), i, dim) for i, x in enumerate(p)]
        A, B = self._parts(coords)
        lift = lambda e: e if isinstance(e, Jet2) else Jet2.constant(float(e), dim)
        return ([[lift(A[i][k]) for k in range(self.n)] for i in range(self.n)],
                [[lift(B[i][k]) for k in range(self.n)] for i in range(self.n)])

    def holomorphic_derivative(self, p):
        """``dH[p, m, q] = d h_mq / d z^p`` (Wirtinger) at ``p``."""
        A, B = self._entry_jets(p)
        n = self.n
        dH = np.zeros((n, n, n), dtype=complex)
        for m in range(n):
            for q in range(n):
                grad = A[m][q].gradient + 1j * B[m][q].gradient
                for pd in range(n):
                    dH[pd, m, q] = 0.5 * (grad[2 * pd] - 1j * grad[2 * pd + 1])
        return dH

    def __repr__(self):
        return f"HermitianMetricField(n={self.n}, {self.name!r})"


# ---------------------------------------------------------------------------
# symplectic pairing, coset generators, heavenly condition

_EPS2 = np.array([[0.0, 1.0], [-1.0, 0.0]])

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def symplectic_matrix(n):
    """Block-diagonal pairing ``diag(eps, ..., eps)`` with ``eps = [[0,1],[-1,0]]``."""
    if n < 2 or n % 2:
        raise ValueError(f"need even n >= 2, got {n}")
    out = np.zeros((n, n))
    for b in range(n // 2):
        out[2 * b: 2 * b + 2, 2 * b: 2 * b + 2] = _EPS2
    return out


def sp_generators(n):
    """Hermitian generators ``t`` with ``t^T Omega + Omega t = 0``.

    Explicit integer/half-integer entries, so the defining relations hold
    exactly in floating point.  For ``n = 2`` the list is precisely the
    three Pauli matrices; generally there are ``m (2m + 1)`` generators for
    ``n = 2m``.
    """
    if n < 2 or n % 2:
        raise ValueError(f"need even n >= 2, got {n}")
    m = n // 2
    gens = []
    for I in range(m):
        for s in _PAULI:
            X = np.zeros((n, n), dtype=complex)
            X[2 * I: 2 * I + 2, 2 * I: 2 * I + 2] = s
            gens.append(X)
    off_blocks = _PAULI + (1j * np.eye(2),)
    for I in range(m):
        for J in range(I + 1, m):
            for Q in off_blocks:
                X = np.zeros((n, n), dtype=complex)
                X[2 * I: 2 * I + 2, 2 * J: 2 * J + 2] = Q
                X[2 * J: 2 * J + 2, 2 * I: 2 * I + 2] = Q.conj().T
                gens.append(X)
    assert len(gens) == m * (2 * m + 1)
    return gens


def sp_residual(X, omega):
    """``max |X^T Omega + Omega X|``; zero iff X is in the symplectic algebra."""
    return float(np.max(np.abs(X.T @ omega + omega @ X)))


def coset_metric(v, generators, name=""):
    """Constant Hermitian field ``exp(sum_a v_a t_a)``.

    The exponential is taken by eigendecomposition of the Hermitian
    combination, so the result is Hermitian positive definite by
    construction.
    """
    v = np.asarray(v, dtype=float)
    if len(v) != len(generators):
        raise ValueError(f"{len(v)} coefficients for {len(generators)} generators")
    H = sum(c * t for c, t in zip(v, generators))
    w, U = np.linalg.eigh(H)
    h0 = (U * np.exp(w)) @ U.conj().T
    h0 = 0.5 * (h0 + h0.conj().T)
    n = h0.shape[0]
    A, B = h0.real.copy(), h0.imag.copy()
    field = HermitianMetricField(
        n,
        lambda coords: A,
        lambda coords: B,
        name=name or f"coset(|v|={np.linalg.norm(v):.3g})",
    )
    return field


class HeavenlyResult(NamedTuple):
    C: float
    max_residual: float
    spread: float


def heavenly_check(h, omega, tol=1e-10):
    """Best constant ``C`` with ``h Omega h^T = C Omega``, or raise.

    ``C`` is the Frobenius projection ``<Omega, M> / <Omega, Omega>`` of
    ``M = h Omega h^T``; the violation is measured as
    ``max |M - C Omega|`` against ``tol * max(1, max |M|)``.

    Raises
    ------
    HeavenlyViolation
        If the residual exceeds tolerance or ``C <= 0``.
    """
    h = np.asarray(h, dtype=complex)
    omega = np.asarray(omega, dtype=float)
    M = h @ omega @ h.T
    C = float(np.real(np.sum(omega * M)) / np.sum(omega * omega))
    residual = float(np.max(np.abs(M - C * omega)))
    scale = max(1.0, float(np.max(np.abs(M))))
    if residual > tol * scale:
        raise HeavenlyViolation(
            f"h Omega h^T deviates from C Omega by {residual:.3e} (C = {C:.6g})",
            residual=residual,
        )
    if C <= 0:
        raise HeavenlyViolation(f"proportionality constant C = {C:.6g} is not positive",
                                residual=residual)
    return C


def heavenly_constant(hfield, omega, points, tol=1e-10):
    """Pointwise heavenly check plus constancy of ``C`` across ``points``."""
    Cs = []
    max_residual = 0.0
    for p in points:
        h = hfield.matrix(p)
        M = h @ omega @ h.T
        C = heavenly_check(h, omega, tol=tol)
        max_residual = max(max_residual, float(np.max(np.abs(M - C * omega))))
        Cs.append(C)
    Cs = np.asarray(Cs)
    spread = float(Cs.max() - Cs.min())
    C = float(Cs.mean())
    if spread > tol * max(1.0, abs(C)):
        raise HeavenlyViolation(
            f"C varies by {spread:.3e} across {len(points)} points", residual=spread
        )
    return HeavenlyResult(C, max_residual, spread)


# ---------------------------------------------------------------------------
# triple of structures


def realify(h):
    """Real 2n x 2n metric of Hermitian ``h`` in interleaved coordinates."""
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    g = np.zeros((2 * n, 2 * n))
    g[0::2, 0::2] = h.real
    g[1::2, 1::2] = h.real
    g[0::2, 1::2] = h.imag
    g[1::2, 0::2] = -h.imag
    return g


def _wedge_add(T, a, b, c):
    T[a, b] += c
    T[b, a] -= c


def _mixed_form_to_real(F):
    """Realify ``sum_{m,q} F_mq dz^m ^ dzbar^q`` (F anti-Hermitian)."""
    n = F.shape[0]
    T = np.zeros((2 * n, 2 * n))
    for m in range(n):
        for q in range(n):
            re, im = F[m, q].real, F[m, q].imag
            um, vm, uq, vq = 2 * m, 2 * m + 1, 2 * q, 2 * q + 1
            _wedge_add(T, um, uq, re)
            _wedge_add(T, vm, vq, re)
            _wedge_add(T, vm, uq, -im)
            _wedge_add(T, um, vq, +im)
    return T


def _pair_form_to_real(P):
    """Realify ``sum_{m<q} (P_mq dz^m ^ dz^q + conj)`` (P antisymmetric)."""
    n = P.shape[0]
    T = np.zeros((2 * n, 2 * n))
    for m in range(n):
        for q in range(m + 1, n):
            re, im = P[m, q].real, P[m, q].imag
            um, vm, uq, vq = 2 * m, 2 * m + 1, 2 * q, 2 * q + 1
            _wedge_add(T, um, uq, 2 * re)
            _wedge_add(T, vm, vq, -2 * re)
            _wedge_add(T, um, vq, -2 * im)
            _wedge_add(T, vm, uq, -2 * im)
    return T


@dataclass(frozen=True)
class Triple:
    """Lowered forms, mixed-index structures and the real metric at a point."""

    omega_I: np.ndarray
    omega_J: np.ndarray
    omega_K: np.ndarray
    I: np.ndarray
    J: np.ndarray
    K: np.ndarray
    g: np.ndarray


def triple_at(h, omega, p=None):
    """The (I, J, K) structures of Hermitian ``h`` over pairing ``omega``.

    ``h`` may be a matrix or a :class:`HermitianMetricField` with point
    ``p``.  The construction is pointwise; the quaternion relations among
    the mixed structures hold precisely when ``h`` passes
    :func:`heavenly_check` with ``C = 1``.
    """
    if isinstance(h, HermitianMetricField):
        h = h.matrix(p)
    h = np.asarray(h, dtype=complex)
    g = realify(h)
    W_I = _mixed_form_to_real(0.5j * h)
    W_J = _pair_form_to_real(omega / 2.0)
    W_K = _pair_form_to_real(-0.5j * np.asarray(omega, dtype=complex))
    try:
        mix = lambda W: -np.linalg.solve(g, W)
    except np.linalg.LinAlgError as err:  # pragma: no cover - defensive
        raise MetricDomainError(str(err)) from err
    return Triple(W_I, W_J, W_K, mix(W_I), mix(W_J), mix(W_K), g)


def quaternion_residual(t):
    """Largest deviation from ``I^2 = J^2 = K^2 = -1``, ``IJ=K, JK=I, KI=J``."""
    eye = np.eye(t.I.shape[0])
    devs = [
        t.I @ t.I + eye,
        t.J @ t.J + eye,
        t.K @ t.K + eye,
        t.I @ t.J - t.K,
        t.J @ t.K - t.I,
        t.K @ t.I - t.J,
    ]
    return float(max(np.max(np.abs(d)) for d in devs))


def quaternion_form_fields(hfield, omega):
    """Constant J/K coefficient forms on the real chart of ``hfield``.

    These do not depend on the metric; their covariant constancy under the
    realified Levi-Civita connection is what singles out unit-determinant
    (heavenly) Hermitian fields.
    """
    chart = hfield.chart.real_chart()
    W_J = _pair_form_to_real(np.asarray(omega) / 2.0)
    W_K = _pair_form_to_real(-0.5j * np.asarray(omega, dtype=complex))
    return (FormField(chart, 2, lambda coords: W_J, name="omega_J"),
            FormField(chart, 2, lambda coords: W_K, name="omega_K"))


# ---------------------------------------------------------------------------
# derived quantities on Hermitian fields


def spin_connection_trace(hfield, p):
    """Traced spin connection ``(1/2) d log det h`` in Wirtinger components.

    The vielbein is the Cholesky factor of ``h`` (whose determinant is
    ``sqrt(det h)``), so the trace part of the connection reduces to half
    the log-determinant gradient; the holomorphic and antiholomorphic
    component vectors are returned as a pair.  Non-positive-definite ``h``
    raises :class:`~hkgeo.geometry.MetricDomainError`.
    """
    hmat = hfield.matrix(p)
    try:
        np.linalg.cholesky(hmat)
    except np.linalg.LinAlgError as err:
        raise MetricDomainError(f"Hermitian metric not positive definite at {p}") from err
    greal = hfield.real_metric()
    gv, dg, _ = greal.jet(p)
    d = gv.shape[0]
    t = np.array([np.trace(np.linalg.solve(gv, dg[P])) for P in range(d)])
    n = hfield.n
    holo = np.zeros(n, dtype=complex)
    anti = np.zeros(n, dtype=complex)
    for i in range(n):
        holo[i] = (t[2 * i] - 1j * t[2 * i + 1]) / 8.0
        anti[i] = (t[2 * i] + 1j * t[2 * i + 1]) / 8.0
    return holo, anti


def x_matrices(hfield, p):
    """``X_p = 2 (d_p h) h^{-1}`` for each holomorphic direction.

    For fields valued in the exponential of the Hermitian symplectic slice
    these land in the symplectic algebra (see :func:`sp_residual`), which is
    the linear-algebra step behind covariant constancy of the J/K pair.
    """
    H = hfield.matrix(p)
    dH = hfield.holomorphic_derivative(p)
    Hinv = np.linalg.inv(H)
    return np.array([2.0 * dH[pd] @ Hinv for pd in range(hfield.n)])


# ---------------------------------------------------------------------------
# stock verification fields


def unit_determinant_shear_field():
    """Non-constant Hermitian field ``[[1 + |z1|^2, z1], [z1bar, 1]]``.

    Its determinant is identically 1, so it passes the heavenly test with
    ``C = 1`` at every point while having genuinely varying components; it
    is the standard positive fixture for the covariant-constancy and
    symplectic-algebra checks.  Generated by the potential

        |z1|^2 + |z1|^4 / 4 + |z2|^2 + Re(z1^2 zbar2).
    """

    def re_fn(c):
        u1, v1, u2, v2 = c
        return [[1.0 + u1 * u1 + v1 * v1, u1], [None, 1.0]]

    def im_fn(c):
        u1, v1, u2, v2 = c
        return [[0.0, v1], [None, 0.0]]

    def potential(c):
        u1, v1, u2, v2 = c
        r2 = u1 * u1 + v1 * v1
        return (r2 + r2 * r2 / 4.0 + u2 * u2 + v2 * v2
                + (u1 * u1 - v1 * v1) * u2 + 2.0 * u1 * v1 * v2)

    return HermitianMetricField(2, re_fn, im_fn, potential=potential,
                                name="unit-determinant shear")


def non_unimodular_field():
    """Kaehler but with varying determinant: ``diag(1 + |z1|^2, 1)``.

    The negative control: it fails the heavenly constancy test, and the J/K
    pair is not covariantly constant for it.
    """

    def re_fn(c):
        u1, v1, u2, v2 = c
        return [[1.0 + u1 * u1 + v1 * v1, 0.0], [None, 1.0]]

    def potential(c):
        u1, v1, u2, v2 = c
        r2 = u1 * u1 + v1 * v1
        return r2 + r2 * r2 / 4.0 + u2 * u2 + v2 * v2

    return HermitianMetricField(2, re_fn, potential=potential,
                                name="non-unimodular control")


def single_mode_field():
    """One complex dimension, ``h = 1 + |z|^2`` from ``|z|^2 + |z|^4/4``."""

    def re_fn(c):
        u, v = c
        return [[1.0 + u * u + v * v]]

    def potential(c):
        u, v = c
        r2 = u * u + v * v
        return r2 + r2 * r2 / 4.0

    return HermitianMetricField(1, re_fn, potential=potential, name="1 + |z|^2")
