"""Rejection sampler: determinism, box membership, exhaustion."""

import numpy as np
import pytest

from hkgeo.sampling import (
    Exclusion,
    SampleSpec,
    SamplingExhaustedError,
    sample_points,
)

BOX = np.array([[0.5, 2.0], [-1.0, 1.0]])


def test_points_inside_box():
    pts = sample_points(SampleSpec(BOX, 40, 3, ()))
    assert len(pts) == 40
    arr = np.stack(pts)
    assert np.all(arr[:, 0] >= 0.5) and np.all(arr[:, 0] <= 2.0)
    assert np.all(np.abs(arr[:, 1]) <= 1.0)


def test_same_seed_same_points():
    a = sample_points(SampleSpec(BOX, 10, 7, ()))
    b = sample_points(SampleSpec(BOX, 10, 7, ()))
    assert all(np.array_equal(x, y) for x, y in zip(a, b))


def test_different_seed_different_points():
    a = sample_points(SampleSpec(BOX, 10, 0, ()))
    b = sample_points(SampleSpec(BOX, 10, 1, ()))
    assert not all(np.array_equal(x, y) for x, y in zip(a, b))


def test_exclusion_respected():
    keep_out = Exclusion("left-half", lambda p: p[0] < 1.25)
    pts = sample_points(SampleSpec(BOX, 30, 0, (keep_out,)))
    assert all(p[0] >= 1.25 for p in pts)


def test_exhaustion_raises():
    everything = Exclusion("everything", lambda p: True)
    with pytest.raises(SamplingExhaustedError):
        sample_points(SampleSpec(BOX, 5, 0, (everything,)))


def test_bad_box_rejected():
    with pytest.raises(ValueError):
        SampleSpec(np.array([[1.0, 0.0]]), 5, 0, ())
    with pytest.raises(ValueError):
        SampleSpec(BOX, 0, 0, ())
