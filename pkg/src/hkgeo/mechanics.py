"""Quadratic kinetic Lagrangians and Hamiltonian reduction.

Only kinetic terms ``L = q'^T M(q) q' / 2`` appear here, so the Legendre
transform is exact matrix inversion (``H = p^T M^{-1} p / 2``) and imposing
a conserved momentum ``p_fiber = 0`` is pure linear algebra: delete the
fiber row and column of ``M^{-1}`` and invert the rest.  By the Schur
complement identity this equals the orthogonal-projection quotient of the
metric ``M``, which is the point the cross-module tests drive home.

Phase-space scalars are plain callables over the ``2n`` coordinates
``(q_1 .. q_n, p_1 .. p_n)``; Poisson brackets differentiate them with
jets, so no finite differencing is involved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import Chart, MetricField
from .jets import Jet2, evaluate_jet

__all__ = [
    "DegenerateLagrangianError",
    "InvalidConstraintError",
    "PhasePoint",
    "QuadraticKinetic",
    "legendre_to_hamiltonian",
    "hamiltonian_field",
    "momentum_field",
    "poisson_bracket",
    "constrain_and_reduce",
]


class DegenerateLagrangianError(ValueError):
    """The mass matrix is singular; no Hamiltonian exists."""


class InvalidConstraintError(ValueError):
    """The requested constraint momentum is not conserved."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class PhasePoint:
    """Configuration ``q`` with conjugate momenta ``p``."""

    q: tuple
    p: tuple

    def __post_init__(self):
        if len(self.q) != len(self.p):
            raise ValueError("q and p must have the same length")
        if not all(np.isfinite(x) for x in (*self.q, *self.p)):
            raise ValueError("non-finite phase-space entries")

    @property
    def coords(self):
        return [float(x) for x in (*self.q, *self.p)]


class QuadraticKinetic:
    """Kinetic Lagrangian ``L = q'^T M(q) q' / 2``.

    ``fn(coords)`` supplies the mass matrix components (upper triangle
    read, symmetry by storage, jets welcome) over the labelled
    configuration coordinates.
    """

    def __init__(self, labels, fn, name=""):
        self.labels = tuple(labels)
        self.field = MetricField(Chart(self.labels), fn, name=name)
        self.name = name

    @property
    def dim(self):
        return len(self.labels)

    @property
    def fn(self):
        return self.field.fn

    def matrix(self, q):
        return self.field.value(q)

    def __repr__(self):
        return f"QuadraticKinetic({self.name or self.labels})"


def _pivot_size(x):
    return abs(x.value) if isinstance(x, Jet2) else abs(float(x))


def _gauss_invert(rows, d):
    """Invert a nested matrix of floats/jets by Gauss-Jordan elimination.

    Partial pivoting keyed on the value part.  A vanishing pivot (relative
    to the largest entry seen) means a singular mass matrix.
    """
    A = [list(r) for r in rows]
    eye = [[1.0 if i == j else 0.0 for j in range(d)] for i in range(d)]
    scale = max((_pivot_size(A[i][j]) for i in range(d) for j in range(d)), default=0.0)
    if scale == 0.0:
        raise DegenerateLagrangianError("zero mass matrix")
    for col in range(d):
        piv = max(range(col, d), key=lambda r: _pivot_size(A[r][col]))
        if _pivot_size(A[piv][col]) <= 1e-13 * scale:
            raise DegenerateLagrangianError(
                f"mass matrix is singular (pivot {_pivot_size(A[piv][col]):.3e})"
            )
        A[col], A[piv] = A[piv], A[col]
        eye[col], eye[piv] = eye[piv], eye[col]
        inv_p = 1.0 / A[col][col]
        A[col] = [x * inv_p for x in A[col]]
        eye[col] = [x * inv_p for x in eye[col]]
        for r in range(d):
            if r == col:
                continue
            f = A[r][col]
            if isinstance(f, float) and f == 0.0:
                continue
            A[r] = [a - f * b for a, b in zip(A[r], A[col])]
            eye[r] = [a - f * b for a, b in zip(eye[r], eye[col])]
    return eye


def _mirror_upper(raw, d):
    out = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            out[i][j] = raw[i][j]
            out[j][i] = raw[i][j]
    return out


def legendre_to_hamiltonian(L, q):
    """Kinetic matrix ``M(q)^{-1}`` of the Hamiltonian ``p^T M^{-1} p / 2``."""
    M = L.matrix(q)
    d = M.shape[0]
    if not np.all(np.isfinite(M)) or 1.0 / np.linalg.cond(M) < 1e-13:
        raise DegenerateLagrangianError(f"mass matrix is singular at {list(q)}")
    Minv = np.linalg.inv(M)
    return 0.5 * (Minv + Minv.T)


def hamiltonian_field(L):
    """The Hamiltonian as a jet-capable phase-space scalar.

    Evaluates ``p^T M(q)^{-1} p / 2`` without forming the inverse: the
    linear system ``M x = p`` is solved in jet arithmetic, so Poisson
    brackets of the result are exact derivatives.
    """
    n = L.dim

    def H(coords):
        q, mom = coords[:n], coords[n:]
        M = _mirror_upper(L.fn(q), n)
        Minv = _gauss_invert(M, n)
        x = [sum(Minv[i][j] * mom[j] for j in range(n)) for i in range(n)]
        acc = 0.0
        for pi, xi in zip(mom, x):
            acc = acc + pi * xi
        return 0.5 * acc

    return H


def momentum_field(i, n):
    """The phase-space scalar ``p_i`` on an ``n``-coordinate configuration."""

    def f(coords):
        return coords[n + i]

    return f


def poisson_bracket(f, g, s):
    """``{f, g}`` at a :class:`PhasePoint`, by jet differentiation."""
    coords = s.coords
    n = len(s.q)
    jf = evaluate_jet(f, coords)
    jg = evaluate_jet(g, coords)
    acc = 0.0
    for i in range(n):
        acc += jf.gradient[i] * jg.gradient[n + i] - jf.gradient[n + i] * jg.gradient[i]
    return float(acc)


def _probe_momenta(d):
    probes = []
    for j in range(d):
        e = [0.0] * d
        e[j] = 1.0
        probes.append(e)
        for k in range(j + 1, d):
            ee = list(e)
            ee[k] = 1.0
            probes.append(ee)
    return probes


def constrain_and_reduce(L, fiber_index, probe_points=None, tol=1e-10):
    """Impose ``p_fiber = 0`` and return the reduced kinetic Lagrangian.

    The fiber coordinate must be cyclic; this is checked literally, as
    Poisson brackets ``{p_fiber, H}`` over a basis of probe momenta at the
    given configuration points (default: the all-ones configuration).  A
    residual above ``tol`` raises :class:`InvalidConstraintError`.

    The reduced mass matrix is computed per evaluation by deleting the
    fiber row/column of ``M^{-1}`` and inverting the remaining block, in
    jet-capable arithmetic.
    """
    n = L.dim
    if not 0 <= fiber_index < n:
        raise ValueError(f"fiber index {fiber_index} outside 0..{n - 1}")
    H = hamiltonian_field(L)
    pf = momentum_field(fiber_index, n)
    points = probe_points if probe_points is not None else [[1.0] * n]
    worst = 0.0
    for q in points:
        for mom in _probe_momenta(n):
            s = PhasePoint(tuple(q), tuple(mom))
            worst = max(worst, abs(poisson_bracket(pf, H, s)))
    if worst > tol:
        raise InvalidConstraintError(
            f"coordinate {L.labels[fiber_index]!r} is not cyclic "
            f"(bracket residual {worst:.3e})",
            residual=worst,
        )

    keep = [i for i in range(n) if i != fiber_index]
    labels = tuple(L.labels[i] for i in keep)

    def reduced_fn(coords):
        full = list(coords)
        full.insert(fiber_index, 0.0)
        Minv = _gauss_invert(_mirror_upper(L.fn(full), n), n)
        block = [[Minv[i][j] for j in keep] for i in keep]
        return _gauss_invert(block, n - 1)

    return QuadraticKinetic(labels, reduced_fn,
                            name=f"{L.name or 'kinetic'} / {L.labels[fiber_index]}")
