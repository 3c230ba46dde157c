"""Coordinate charts and tensor-field carriers.

A field here is a plain callable over chart coordinates, written with the
dispatching math helpers of :mod:`hkgeo.jets` so it can be evaluated on
floats or on jet seeds.  The wrapper classes add the bookkeeping the
geometry operations need: exact symmetry / antisymmetry by storage (only
one triangle of the component matrix is ever read), and jet extraction of
all components in a single pass.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .jets import Jet2, evaluate_jet

__all__ = [
    "Chart",
    "MetricField",
    "FormField",
    "VectorFieldR",
    "EmbeddingMap",
    "constant_form",
    "check_point",
]


@dataclass(frozen=True)
class Chart:
    """Ordered coordinate names of a real chart."""

    names: tuple

    @property
    def dim(self):
        return len(self.names)

    def index(self, name):
        return self.names.index(name)

    def __str__(self):
        return "(" + ", ".join(self.names) + ")"


def check_point(p, dim):
    """Validate and return a coordinate array for a ``dim``-dimensional chart."""
    q = np.asarray(p, dtype=object if any(not isinstance(x, (int, float, np.floating)) for x in p) else float)
    if q.shape != (dim,):
        raise ValueError(f"point of length {q.shape} does not fit a {dim}-dimensional chart")
    if q.dtype != object and not np.all(np.isfinite(q.astype(float))):
        raise ValueError(f"non-finite coordinates in {p!r}")
    return q


def _seed_coords(p):
    dim = len(p)
    return [Jet2.variable(x, i, dim) for i, x in enumerate(p)]


def _use_object_dtype(p):
    return any(not isinstance(x, (int, float, np.floating)) for x in p)


def _entry_jet(e, dim, like):
    return e if isinstance(e, Jet2) else Jet2.constant(e, dim, like=like)


def _collect_square(fn, p, sym):
    """Jet-evaluate a matrix-valued field; mirror one triangle.

    ``sym`` is +1 (symmetric), -1 (antisymmetric, zero diagonal) or 0.
    Returns ``(V, D1, D2)`` with ``D1[P, M, N] = d_P V[M, N]`` and
    ``D2[P, Q, M, N]`` the second derivatives.
    """
    dim = len(p)
    coords = _seed_coords(p)
    raw = fn(coords)
    d = len(raw)
    dt = object if _use_object_dtype(p) else float
    V = np.zeros((d, d), dtype=dt)
    D1 = np.zeros((dim, d, d), dtype=dt)
    D2 = np.zeros((dim, dim, d, d), dtype=dt)

    def put(M, N, jet):
        V[M, N] = jet.value
        D1[:, M, N] = jet.gradient
        D2[:, :, M, N] = jet.hessian
        if sym and M != N:
            V[N, M] = sym * jet.value
            D1[:, N, M] = sym * jet.gradient
            D2[:, :, N, M] = sym * jet.hessian

    for M in range(d):
        N0 = M if sym == 1 else (M + 1 if sym == -1 else 0)
        for N in range(N0, d):
            put(M, N, _entry_jet(raw[M][N], dim, p[0]))
    return V, D1, D2


def _value_square(fn, p, sym):
    raw = fn(list(p))
    d = len(raw)
    dt = object if _use_object_dtype(p) else float
    V = np.zeros((d, d), dtype=dt)
    for M in range(d):
        N0 = M if sym == 1 else (M + 1 if sym == -1 else 0)
        for N in range(N0, d):
            V[M, N] = raw[M][N]
            if sym and M != N:
                V[N, M] = sym * raw[M][N]
    return V


class MetricField:
    """Symmetric rank-(0,2) field; components must admit jets.

    ``fn(coords)`` returns a nested sequence (or array) of components; only
    the upper triangle is read, the lower is mirrored, so symmetry is exact
    by construction.
    """

    def __init__(self, chart, fn, name=""):
        self.chart = chart
        self.fn = fn
        self.name = name

    @property
    def dim(self):
        return self.chart.dim

    def value(self, p):
        return _value_square(self.fn, p, +1)

    def jet(self, p):
        return _collect_square(self.fn, p, +1)

    def __repr__(self):
        return f"MetricField({self.name or self.chart})"


class FormField:
    """Differential form of degree 1 or 2 with jet-capable components.

    Degree 1: ``fn`` returns a coefficient vector ``a_M`` for ``a_M dx^M``.
    Degree 2: ``fn`` returns the coefficient matrix ``w_MN`` of
    ``sum_{M<N} w_MN dx^M ^ dx^N``; only the strict upper triangle is read
    and the lower mirror carries the opposite sign, so antisymmetry is exact.
    """

    def __init__(self, chart, degree, fn, name=""):
        if degree not in (1, 2):
            raise ValueError("only degree-1 and degree-2 forms are supported")
        self.chart = chart
        self.degree = degree
        self.fn = fn
        self.name = name

    @property
    def dim(self):
        return self.chart.dim

    def value(self, p):
        if self.degree == 1:
            return np.array([float(x) for x in self.fn(list(p))])
        return _value_square(self.fn, p, -1)

    def jet(self, p):
        """Components and first/second derivatives at ``p``."""
        if self.degree == 1:
            dim = len(p)
            coords = _seed_coords(p)
            raw = self.fn(coords)
            V = np.zeros(len(raw))
            D1 = np.zeros((dim, len(raw)))
            D2 = np.zeros((dim, dim, len(raw)))
            for M, e in enumerate(raw):
                j = _entry_jet(e, dim, p[0])
                V[M] = j.value
                D1[:, M] = j.gradient
                D2[:, :, M] = j.hessian
            return V, D1, D2
        return _collect_square(self.fn, p, -1)

    def __repr__(self):
        return f"FormField(degree={self.degree}, {self.name or self.chart})"


def constant_form(chart, matrix, name=""):
    """Degree-2 form with constant coefficient matrix."""
    W = np.asarray(matrix, dtype=float)
    if not np.allclose(W, -W.T):
        raise ValueError("constant 2-form coefficients must be antisymmetric")
    return FormField(chart, 2, lambda coords: W, name=name)


class VectorFieldR:
    """Real vector field ``V^M`` on a chart."""

    def __init__(self, chart, fn, name=""):
        self.chart = chart
        self.fn = fn
        self.name = name

    @property
    def dim(self):
        return self.chart.dim

    def value(self, p):
        return np.array([float(v) for v in self.fn(list(p))])

    def jet(self, p):
        """Component values and first derivatives ``dV[P, M] = d_P V^M``."""
        dim = len(p)
        coords = _seed_coords(p)
        raw = self.fn(coords)
        V = np.zeros(len(raw))
        dV = np.zeros((dim, len(raw)))
        for M, e in enumerate(raw):
            j = _entry_jet(e, dim, p[0])
            V[M] = j.value
            dV[:, M] = j.gradient
        return V, dV

    def __repr__(self):
        return f"VectorFieldR({self.name or self.chart})"


class EmbeddingMap:
    """Smooth map between charts, with jet-derived Jacobian."""

    def __init__(self, source, target, fn, name=""):
        self.source = source
        self.target = target
        self.fn = fn
        self.name = name

    def value(self, p):
        out = self.fn(list(p))
        if len(out) != self.target.dim:
            raise ValueError(
                f"map produced {len(out)} components for target {self.target}"
            )
        return np.array([float(x) for x in out])

    def jacobian(self, p):
        """``J[M, m] = d phi^M / d x^m`` (target index first)."""
        coords = _seed_coords(p)
        raw = self.fn(coords)
        J = np.zeros((self.target.dim, self.source.dim))
        for M, e in enumerate(raw):
            j = _entry_jet(e, self.source.dim, p[0])
            J[M, :] = j.gradient
        return J

    def __repr__(self):
        return f"EmbeddingMap({self.name or (str(self.source) + ' -> ' + str(self.target))})"
