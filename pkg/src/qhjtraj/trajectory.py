"""Trajectories in configuration space from t - tau = dW/dE.

The energy derivative is a central difference at fixed microstate. How the
basis pair itself moves with E must be declared:

* ``fixed-anchor``: both probe energies integrate from the same
  E-independent anchor conditions;
* ``closed-form-family``: the exact well basis sin(kx), -cos(kx).

The Wronskian scaling is reapplied at every probe energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import StepSizeError, ValidationError
from .model import Grid, PhysicalConstants, Potential
from .qhj import Microstate, characteristic_function
from .schrodinger import closed_form_pair, integrate_pair, scale_wronskian

__all__ = ["CONVENTIONS", "TrajectoryCurve", "default_delta", "time_of_transit", "sample_trajectory"]

CONVENTIONS = ("fixed-anchor", "closed-form-family")
RICHARDSON_RTOL = 1e-4


@dataclass(frozen=True, eq=False)
class TrajectoryCurve:
    grid: Grid
    t_minus_tau: np.ndarray
    energy: float
    microstate: Microstate
    tau: float
    convention: str
    delta_E: float
    clamped: np.ndarray
    richardson: float  # max |t(delta) - t(delta/2)| / max |t| over the allowed region


def default_delta(energy: float) -> float:
    return max(1e-6, 1e-6 * abs(energy))


def _default_anchor(model: Potential, grid: Grid) -> float:
    left, right = model.walls
    lo = grid.x_min if left is None else max(grid.x_min, left)
    hi = grid.x_max if right is None else min(grid.x_max, right)
    return float(grid.x[grid.index_of(0.5 * (lo + hi))])


def _w_at(model, constants, ms, energy, grid, convention, anchor_x0, anchor_conditions):
    if convention == "closed-form-family":
        pair = closed_form_pair(model, constants, energy, grid)
    else:
        pair = integrate_pair(model, constants, energy, grid, anchor_x0, anchor_conditions)
    pair = scale_wronskian(pair, ms, constants)
    cf = characteristic_function(pair, ms, 0.0, constants)
    return cf.samples


def _central(model, constants, ms, energy, grid, convention, anchor_x0, conds, delta):
    w_hi = _w_at(model, constants, ms, energy + delta, grid, convention, anchor_x0, conds)
    w_lo = _w_at(model, constants, ms, energy - delta, grid, convention, anchor_x0, conds)
    return (w_hi - w_lo) / (2.0 * delta)


def allowed_region(model: Potential, grid: Grid, energy: float) -> np.ndarray:
    left, right = model.walls
    x = np.clip(grid.x, left if left is not None else -np.inf, right if right is not None else np.inf)
    return np.asarray(model(x)) < energy


def time_of_transit(model: Potential, constants: PhysicalConstants, ms: Microstate, energy: float,
                    grid: Grid, anchor_x0: float | None = None,
                    convention: str = "fixed-anchor", delta_E: float | None = None,
                    anchor_conditions=(1.0, 0.0, 0.0, 1.0), tau: float = 0.0,
                    check: bool = True) -> TrajectoryCurve:
    """t - tau along the grid for one microstate at energy E.

    The result at step delta is compared with the one at delta/2 over the
    classically allowed region; a relative disagreement above 1e-4 raises
    StepSizeError (pass ``check=False`` to skip, e.g. in convergence studies).
    """
    if convention not in CONVENTIONS:
        raise ValidationError(f"unknown convention {convention!r}; choose from {CONVENTIONS}")
    delta = default_delta(energy) if delta_E is None else float(delta_E)
    if not delta > 0:
        raise ValidationError("delta_E must be positive")
    if anchor_x0 is None:
        anchor_x0 = _default_anchor(model, grid)
    conds = tuple(anchor_conditions)

    t = _central(model, constants, ms, energy, grid, convention, anchor_x0, conds, delta)
    clamped = ~np.isfinite(t)
    richardson = math.nan
    if check:
        t_half = _central(model, constants, ms, energy, grid, convention, anchor_x0, conds, 0.5 * delta)
        region = ~clamped & np.isfinite(t_half) & allowed_region(model, grid, energy)
        if not np.any(region):
            region = ~clamped & np.isfinite(t_half)
        scale = max(float(np.max(np.abs(t_half[region]))), 1e-300)
        richardson = float(np.max(np.abs(t[region] - t_half[region]))) / scale
        if richardson > RICHARDSON_RTOL:
            raise StepSizeError(
                f"delta_E={delta:g} disagrees with delta_E/2 by {richardson:.2e} (relative)"
            )
    t = np.where(clamped, np.nan, t)
    return TrajectoryCurve(grid, t, float(energy), ms, float(tau), convention, delta, clamped,
                           richardson)


def sample_trajectory(curve: TrajectoryCurve) -> list[tuple[float, float]]:
    """(x, t) pairs on the unclamped region, in grid order."""
    x = curve.grid.x
    return [(float(xi), curve.tau + float(ti))
            for xi, ti, c in zip(x, curve.t_minus_tau, curve.clamped) if not c]
