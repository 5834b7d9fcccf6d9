import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qhjtraj import (
    Harmonic,
    InfiniteWell,
    Microstate,
    PhysicalConstants,
    StepSizeError,
    ValidationError,
    make_grid,
    sample_trajectory,
    time_of_transit,
)
from qhjtraj.trajectory import allowed_region, default_delta

U = PhysicalConstants()
R2 = math.sqrt(2.0)
WELL = InfiniteWell(math.pi)
GRID = make_grid(0.0, math.pi, 2001)
CLASSICAL = Microstate(R2, R2, 0.0)


def _closed(ms, energy=0.5, delta=None, tau=0.0, check=True):
    return time_of_transit(WELL, U, ms, energy, GRID, convention="closed-form-family",
                           delta_E=delta, tau=tau, check=check)


@pytest.mark.parametrize("ms", [CLASSICAL, Microstate(3.0, 3.0, 0.0), Microstate(0.1, 0.1, 0.0)])
def test_classical_transit_time(ms):
    curve = _closed(ms)
    np.testing.assert_allclose(curve.t_minus_tau, GRID.x, atol=1e-6)
    assert curve.t_minus_tau[1000] == pytest.approx(math.pi / 2, abs=1e-6)
    assert curve.t_minus_tau[0] == pytest.approx(0.0, abs=1e-6)
    assert curve.convention == "closed-form-family"
    assert curve.delta_E == 1e-6


@pytest.mark.parametrize("energy", [0.5, 2.0, 8.0])
def test_transit_time_scales_with_energy(energy):
    curve = _closed(CLASSICAL, energy=energy)
    np.testing.assert_allclose(curve.t_minus_tau, GRID.x * math.sqrt(1 / (2 * energy)), atol=1e-6)


def test_richardson_factor_closed_form():
    t = [_closed(CLASSICAL, delta=d, check=False).t_minus_tau for d in (1e-2, 5e-3, 2.5e-3)]
    d1, d2 = np.abs(t[0] - t[1]), np.abs(t[1] - t[2])
    region = d2 > 1e-14  # t vanishes identically at x = 0
    assert np.min(d1[region] / d2[region]) >= 3.5


def test_distinct_rays_give_distinct_trajectories():
    a = _closed(CLASSICAL).t_minus_tau
    b = _closed(Microstate(2.0, 1.0, 0.0)).t_minus_tau
    assert np.max(np.abs(a - b)) > 0.01


@settings(deadline=None, max_examples=20)
@given(lam=st.floats(0.05, 20.0))
def test_same_ray_same_trajectory(lam):
    ms = Microstate(2.0, 1.0, 0.3)
    np.testing.assert_allclose(_closed(ms.scaled(lam)).t_minus_tau, _closed(ms).t_minus_tau, atol=1e-9)


def test_fixed_anchor_identity_frame():
    # phi = cos(k u), theta = sin(k u)/k with u = x - pi/2; at k = 1, t = u - sin u cos u
    curve = time_of_transit(WELL, U, CLASSICAL, 0.5, GRID, math.pi / 2, "fixed-anchor")
    u = GRID.x - math.pi / 2
    np.testing.assert_allclose(curve.t_minus_tau, u - np.sin(u) * np.cos(u), atol=1e-6)
    assert curve.convention == "fixed-anchor"


def test_fixed_anchor_deterministic(harmonic, harmonic_grid):
    args = (harmonic, U, Microstate(1.0, 2.0, 0.5), 1.5, harmonic_grid, 0.0, "fixed-anchor")
    a, b = time_of_transit(*args), time_of_transit(*args)
    i = harmonic_grid.index_of(0.0)
    assert abs(a.t_minus_tau[i] - b.t_minus_tau[i]) <= 1e-9
    np.testing.assert_array_equal(a.t_minus_tau, b.t_minus_tau)
    assert np.all(np.isfinite(a.t_minus_tau[~a.clamped]))


def test_fixed_anchor_off_eigenvalue_is_legitimate(harmonic, harmonic_grid):
    curve = time_of_transit(harmonic, U, Microstate(1.0, 1.0, 0.0), 0.73, harmonic_grid)
    assert curve.richardson <= 1e-4
    assert curve.t_minus_tau[harmonic_grid.index_of(0.0)] == pytest.approx(0.0, abs=1e-9)


def test_step_too_large():
    with pytest.raises(StepSizeError):
        time_of_transit(WELL, U, Microstate(2.0, 1.0, 0.0), 0.5, GRID, math.pi / 2, delta_E=0.45)


@pytest.mark.parametrize("kwargs", [{"convention": "bohmian"}, {"delta_E": 0.0}, {"delta_E": -1e-3}])
def test_bad_arguments(kwargs):
    with pytest.raises(ValidationError):
        time_of_transit(WELL, U, CLASSICAL, 0.5, GRID, math.pi / 2, **kwargs)


@pytest.mark.parametrize("energy,expected", [(0.5, 1e-6), (-3.0, 3e-6), (1e4, 1e-2), (0.0, 1e-6)])
def test_default_delta(energy, expected):
    assert default_delta(energy) == pytest.approx(expected, rel=1e-15)


def test_allowed_region(harmonic):
    g = make_grid(-2, 2, 5)
    assert allowed_region(harmonic, g, 0.5).tolist() == [False, False, True, False, False]


def test_sample_trajectory_on_line():
    pairs = sample_trajectory(_closed(CLASSICAL))
    assert len(pairs) == GRID.n_points
    xs, ts = np.array(pairs).T
    np.testing.assert_allclose(ts, xs, atol=1e-6)
    assert list(xs) == sorted(xs)


@settings(deadline=None, max_examples=20)
@given(tau=st.floats(-100, 100))
def test_epoch_shift(tau):
    base = np.array(sample_trajectory(_closed(CLASSICAL)))
    shifted = np.array(sample_trajectory(_closed(CLASSICAL, tau=tau)))
    np.testing.assert_array_equal(shifted[:, 0], base[:, 0])
    np.testing.assert_allclose(shifted[:, 1] - base[:, 1], tau, atol=1e-12 * (1 + abs(tau)))


def test_epoch_five():
    base = sample_trajectory(_closed(CLASSICAL))
    five = sample_trajectory(_closed(CLASSICAL, tau=5.0))
    assert [t - 5.0 for _, t in five] == pytest.approx([t for _, t in base], abs=1e-12)


def test_sample_skips_clamped():
    curve = _closed(CLASSICAL)
    mask = np.zeros(GRID.n_points, dtype=bool)
    mask[:10] = True
    assert len(sample_trajectory(replace(curve, clamped=mask))) == GRID.n_points - 10
    assert sample_trajectory(replace(curve, clamped=np.ones(GRID.n_points, dtype=bool))) == []


def test_harmonic_clamped_region_is_nan():
    g = make_grid(-30, 30, 6001)
    curve = time_of_transit(Harmonic(1.0), U, Microstate(1.0, 1.0, 0.0), 0.5, g)
    assert curve.clamped.any()
    assert np.all(np.isnan(curve.t_minus_tau[curve.clamped]))
    assert len(sample_trajectory(curve)) == int((~curve.clamped).sum())
