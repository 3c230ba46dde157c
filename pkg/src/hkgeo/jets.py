"""Second-order forward-mode jets with a finite-difference cross check.

A :class:`Jet2` carries the value, gradient and Hessian of a scalar quantity
at a point, propagated through arithmetic by the truncated second-order
Taylor rules.  Field code throughout the package is written against the
dispatching math helpers in this module (:func:`sqrt`, :func:`exp`,
:func:`atan2`, ...) so the same expression evaluates on plain floats, on
jets, or on mpmath numbers when extra precision is required (curvature of
nearly degenerate polar charts, for instance).

:func:`fd_oracle` produces the same (value, gradient, Hessian) triple from
central differences only.  It shares no derivative code with `Jet2` and is
used as the independent reference wherever jet output is trusted.
"""

from __future__ import annotations

import math

import mpmath
import numpy as np

__all__ = [
    "Jet2",
    "EvaluationError",
    "StencilExclusionError",
    "evaluate_jet",
    "fd_oracle",
    "fd_step",
    "exp",
    "log",
    "sqrt",
    "sin",
    "cos",
    "atan",
    "atan2",
    "sinh",
    "cosh",
]

#: Relative finite-difference step.  ``h = max(1e-5, 1e-5 |x|)`` balances the
#: truncation error of the second-difference stencil against roundoff for
#: coordinates of order unity.
FD_STEP = 1e-5


class EvaluationError(ArithmeticError):
    """A field evaluation produced a non-finite value or derivative."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class StencilExclusionError(ValueError):
    """A finite-difference stencil point landed on an excluded locus."""

    def __init__(self, message, exclusion=None):
        super().__init__(message)
        self.exclusion = exclusion


def _is_mp(x):
    return isinstance(x, (mpmath.mpf, mpmath.mpc))


def _mathmod(x):
    return mpmath if _is_mp(x) else math


def _zeros(shape, like):
    if _is_mp(like):
        return np.full(shape, mpmath.mpf(0), dtype=object)
    return np.zeros(shape)


class Jet2:
    """Value, gradient and symmetric Hessian of a scalar at a point.

    Arithmetic follows the second-order product/chain rules; the Hessian
    stays exactly symmetric because every update is built from symmetric
    terms (``outer(a, b) + outer(b, a)`` and scalar multiples of symmetric
    arrays).
    """

    __slots__ = ("value", "gradient", "hessian")

    def __init__(self, value, gradient, hessian):
        self.value = value
        self.gradient = np.asarray(gradient)
        self.hessian = np.asarray(hessian)

    # -- constructors -----------------------------------------------------

    @classmethod
    def variable(cls, value, index, dim):
        """Seed jet for coordinate ``index`` of a ``dim``-dimensional chart."""
        g = _zeros(dim, value)
        g[index] = value * 0 + 1  # one of the same scalar type as `value`
        return cls(value, g, _zeros((dim, dim), value))

    @classmethod
    def constant(cls, value, dim, like=None):
        ref = value if like is None else like
        return cls(value, _zeros(dim, ref), _zeros((dim, dim), ref))

    @property
    def dim(self):
        return self.gradient.shape[0]

    def __repr__(self):
        return f"Jet2(value={self.value!r}, dim={self.dim})"

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Jet2):
            return Jet2(self.value + other.value,
                        self.gradient + other.gradient,
                        self.hessian + other.hessian)
        return Jet2(self.value + other, self.gradient, self.hessian)

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.value, -self.gradient, -self.hessian)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet2):
            ga, gb = self.gradient, other.gradient
            return Jet2(
                self.value * other.value,
                self.value * gb + other.value * ga,
                self.value * other.hessian + other.value * self.hessian
                + np.outer(ga, gb) + np.outer(gb, ga),
            )
        return Jet2(self.value * other, self.gradient * other, self.hessian * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet2):
            return self * other._reciprocal()
        return self * (1.0 / other)

    def __rtruediv__(self, other):
        return self._reciprocal() * other

    def __pow__(self, k):
        if k == 0:
            return Jet2.constant(self.value * 0 + 1, self.dim, like=self.value)
        if k == 1:
            return self
        u = self.value
        return self._compose(u ** k, k * u ** (k - 1), k * (k - 1) * u ** (k - 2))

    # -- composition with smooth scalar functions -------------------------

    def _compose(self, f0, f1, f2):
        """Jet of ``f(self)`` given ``f``, ``f'``, ``f''`` at ``self.value``."""
        g = self.gradient
        return Jet2(f0, f1 * g, f1 * self.hessian + f2 * np.outer(g, g))

    def _reciprocal(self):
        u = self.value
        return self._compose(1 / u, -1 / (u * u), 2 / (u * u * u))

    def exp(self):
        e = _mathmod(self.value).exp(self.value)
        return self._compose(e, e, e)

    def log(self):
        u = self.value
        return self._compose(_mathmod(u).log(u), 1 / u, -1 / (u * u))

    def sqrt(self):
        r = _mathmod(self.value).sqrt(self.value)
        return self._compose(r, 1 / (2 * r), -1 / (4 * r * r * r))

    def sin(self):
        m = _mathmod(self.value)
        s, c = m.sin(self.value), m.cos(self.value)
        return self._compose(s, c, -s)

    def cos(self):
        m = _mathmod(self.value)
        s, c = m.sin(self.value), m.cos(self.value)
        return self._compose(c, -s, -c)

    def atan(self):
        u = self.value
        d = 1 + u * u
        return self._compose(_mathmod(u).atan(u), 1 / d, -2 * u / (d * d))

    def sinh(self):
        m = _mathmod(self.value)
        return self._compose(m.sinh(self.value), m.cosh(self.value), m.sinh(self.value))

    def cosh(self):
        m = _mathmod(self.value)
        return self._compose(m.cosh(self.value), m.sinh(self.value), m.cosh(self.value))


def _compose2(a, b, f0, fa, fb, faa, fab, fbb):
    """Jet of a smooth two-argument function given its partials at (a, b)."""
    ga, gb = a.gradient, b.gradient
    grad = fa * ga + fb * gb
    hess = (fa * a.hessian + fb * b.hessian
            + faa * np.outer(ga, ga)
            + fab * (np.outer(ga, gb) + np.outer(gb, ga))
            + fbb * np.outer(gb, gb))
    return Jet2(f0, grad, hess)


# -- dispatching scalar helpers ------------------------------------------


def exp(x):
    return x.exp() if isinstance(x, Jet2) else _mathmod(x).exp(x)


def log(x):
    return x.log() if isinstance(x, Jet2) else _mathmod(x).log(x)


def sqrt(x):
    return x.sqrt() if isinstance(x, Jet2) else _mathmod(x).sqrt(x)


def sin(x):
    return x.sin() if isinstance(x, Jet2) else _mathmod(x).sin(x)


def cos(x):
    return x.cos() if isinstance(x, Jet2) else _mathmod(x).cos(x)


def atan(x):
    return x.atan() if isinstance(x, Jet2) else _mathmod(x).atan(x)


def sinh(x):
    return x.sinh() if isinstance(x, Jet2) else _mathmod(x).sinh(x)


def cosh(x):
    return x.cosh() if isinstance(x, Jet2) else _mathmod(x).cosh(x)


def atan2(y, x):
    """Two-argument arctangent, jet-aware in either slot.

    Smooth away from the half line ``{y = 0, x <= 0}``; callers sampling near
    the cut are expected to guard it with an exclusion predicate.
    """
    if not isinstance(y, Jet2) and not isinstance(x, Jet2):
        return _mathmod(y).atan2(y, x)
    if not isinstance(y, Jet2):
        y = Jet2.constant(y, x.dim, like=x.value)
    if not isinstance(x, Jet2):
        x = Jet2.constant(x, y.dim, like=y.value)
    xv, yv = x.value, y.value
    r2 = xv * xv + yv * yv
    r4 = r2 * r2
    f0 = _mathmod(yv).atan2(yv, xv)
    # partials of atan2(y, x): smooth off the origin and the cut
    fy, fx = xv / r2, -yv / r2
    fyy = -2 * xv * yv / r4
    fxx = 2 * xv * yv / r4
    fxy = (yv * yv - xv * xv) / r4
    return _compose2(y, x, f0, fy, fx, fyy, fxy, fxx)


# -- evaluation entry points ---------------------------------------------


def _isfinite(x):
    if _is_mp(x):
        return mpmath.isfinite(x)
    return math.isfinite(x)


def evaluate_jet(f, p):
    """Evaluate scalar field ``f`` at ``p`` with jet coordinates.

    Parameters
    ----------
    f : callable
        Accepts a list of coordinate values (floats or `Jet2`) and returns a
        scalar.  Must be written with the dispatching helpers of this module.
    p : sequence of float (or mpmath.mpf)

    Returns
    -------
    Jet2

    Raises
    ------
    EvaluationError
        If the result or any derivative is non-finite; the error carries the
        first offending coordinate index when one can be identified.
    """
    p = list(p)
    dim = len(p)
    coords = [Jet2.variable(x, i, dim) for i, x in enumerate(p)]
    out = f(coords)
    if not isinstance(out, Jet2):
        out = Jet2.constant(out, dim, like=p[0])
    if not _isfinite(out.value):
        raise EvaluationError(f"non-finite value at {p}")
    for i in range(dim):
        if not _isfinite(out.gradient[i]) or any(
            not _isfinite(out.hessian[i, j]) for j in range(dim)
        ):
            raise EvaluationError(
                f"non-finite derivative in coordinate {i} at {p}", index=i
            )
    return out


def fd_step(x):
    """Central-difference step for a coordinate value ``x``."""
    return max(FD_STEP, FD_STEP * abs(x))


def fd_oracle(f, p, exclusions=()):
    """Finite-difference (value, gradient, Hessian) of ``f`` at ``p``.

    Central differences with per-coordinate step :func:`fd_step`; second
    mixed derivatives use the four-point cross stencil.  The result is
    packaged as a :class:`Jet2` so it compares directly against
    :func:`evaluate_jet`, but no jet arithmetic is involved.

    ``exclusions`` are guard predicates (objects with ``.name`` and
    ``.predicate``, or bare callables); if any stencil point is rejected a
    :class:`StencilExclusionError` is raised rather than silently sampling a
    singular locus.
    """
    p = [float(x) for x in p]
    dim = len(p)
    h = [fd_step(x) for x in p]

    def guarded(q):
        for excl in exclusions:
            pred = getattr(excl, "predicate", excl)
            if pred(q):
                name = getattr(excl, "name", getattr(excl, "__name__", repr(excl)))
                raise StencilExclusionError(
                    f"stencil point {q} rejected by exclusion {name!r}", exclusion=name
                )
        return f(q)

    def at(shifts):
        q = list(p)
        for i, s in shifts.items():
            q[i] = q[i] + s
        return guarded(q)

    f0 = guarded(list(p))
    grad = np.zeros(dim)
    hess = np.zeros((dim, dim))
    for i in range(dim):
        fp = at({i: +h[i]})
        fm = at({i: -h[i]})
        grad[i] = (fp - fm) / (2 * h[i])
        hess[i, i] = (fp - 2 * f0 + fm) / (h[i] * h[i])
    for i in range(dim):
        for j in range(i + 1, dim):
            fpp = at({i: +h[i], j: +h[j]})
            fpm = at({i: +h[i], j: -h[j]})
            fmp = at({i: -h[i], j: +h[j]})
            fmm = at({i: -h[i], j: -h[j]})
            hess[i, j] = hess[j, i] = (fpp - fpm - fmp + fmm) / (4 * h[i] * h[j])
    return Jet2(f0, grad, hess)
