"""Deterministic box sampling with singular-locus guards.

All randomness in the package flows through :func:`sample_points`, which
draws from numpy's 64-bit PCG64 generator seeded explicitly.  Identical
specs therefore reproduce identical point sets across runs and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = ["Exclusion", "SampleSpec", "SamplingExhaustedError", "sample_points"]


class SamplingExhaustedError(RuntimeError):
    """Rejection sampling burned its candidate budget without filling the quota."""


@dataclass(frozen=True)
class Exclusion:
    """Named guard predicate; ``predicate(point) == True`` rejects the point."""

    name: str
    predicate: Callable[[Sequence[float]], bool]

    def __call__(self, point):
        return self.predicate(point)


@dataclass(frozen=True)
class SampleSpec:
    """Axis-aligned sampling box with exclusions.

    Attributes
    ----------
    box : tuple of (lo, hi) pairs, one per coordinate
    count : int
        Number of points to draw; must be >= 1.
    seed : int
        Seed for ``numpy.random.default_rng``.
    exclusions : tuple of Exclusion
    """

    box: tuple
    count: int
    seed: int = 0
    exclusions: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count}")
        for k, (lo, hi) in enumerate(self.box):
            if not lo < hi:
                raise ValueError(f"empty interval {lo!r} >= {hi!r} in coordinate {k}")

    @property
    def dim(self):
        return len(self.box)


def sample_points(spec: SampleSpec) -> list[np.ndarray]:
    """Draw ``spec.count`` points uniformly from the box, honouring exclusions.

    Candidates are drawn one at a time, coordinate by coordinate, so the
    accepted sequence is a pure function of the seed.  If the exclusion
    predicates reject more than ``10 * count`` candidates a
    :class:`SamplingExhaustedError` is raised; that usually means the box and
    the guards disagree.
    """
    rng = np.random.default_rng(spec.seed)
    out: list[np.ndarray] = []
    rejected = 0
    budget = 10 * spec.count
    while len(out) < spec.count:
        candidate = np.array([rng.uniform(lo, hi) for lo, hi in spec.box])
        if any(excl(candidate) for excl in spec.exclusions):
            rejected += 1
            if rejected > budget:
                raise SamplingExhaustedError(
                    f"rejected {rejected} candidates for {spec.count} requested points; "
                    f"exclusions {[e.name for e in spec.exclusions]} are too tight for the box"
                )
            continue
        out.append(candidate)
    return out
