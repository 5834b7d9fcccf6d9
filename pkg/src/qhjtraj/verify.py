"""Machine checks of the trajectory-representation identities.

Residuals of the quantum stationary Hamilton-Jacobi equation use second
and third derivatives of W obtained analytically from the basis pair (the
Schroedinger equation supplies phi'' and theta''), so they measure only how
well the basis solves that equation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import DomainError, PrecisionWarning
from .model import Grid, PhysicalConstants, Potential
from .qhj import (
    CharacteristicFunction,
    Microstate,
    characteristic_function,
    conjugate_momentum,
    reconstruct_trig,
)
from .schrodinger import (
    BasisPair,
    eigen_pair,
    find_eigenvalue,
    integrate_pair,
    scale_wronskian,
)

__all__ = [
    "ResidualReport",
    "InvarianceEntry",
    "InvarianceReport",
    "FrontierReport",
    "NodeReport",
    "qshje_residual",
    "substitution_residuals",
    "microstate_invariance_check",
    "boundary_node_check",
    "action_increment",
    "action_tail_bound",
]

NODE_RATIO = 1e-6
ACTION_TAIL_WARN = 1e-6


@dataclass
class ResidualReport:
    max_abs: float
    l2: float
    per_term: dict[str, float]
    grid_h: float
    n_samples: int

    def to_dict(self) -> dict:
        return asdict(self)


def _report(residual: np.ndarray, h: float, per_term: dict[str, float]) -> ResidualReport:
    r = np.abs(residual)
    return ResidualReport(float(r.max()), float(math.sqrt(h * np.sum(r * r))), per_term, h, int(r.size))


def _node_potential(pair: BasisPair) -> np.ndarray:
    left, right = pair.model.walls
    x = np.clip(pair.grid.x, left if left is not None else -np.inf,
                right if right is not None else np.inf)
    return np.asarray(pair.model(x), dtype=float)


def qshje_residual(pair: BasisPair, ms: Microstate,
                   constants: PhysicalConstants | None = None) -> ResidualReport:
    """Pointwise residual of (W')^2/2m + V - E + (hbar^2/4m)[W'''/W' - 3/2 (W''/W')^2].

    With Q = a phi^2 + b theta^2 + c phi theta, W' = sqrt(2m)/Q gives
    W''/W' = -Q'/Q and W'''/W' = -Q''/Q + 2 (Q'/Q)^2, where Q'' uses
    phi'' = 2m(V - E) phi / hbar^2 (likewise for theta).

    Raises:
        DomainError: no unclamped sample with W' > 0.
    """
    constants = constants or pair.constants
    m, hbar = constants.mass, constants.hbar
    a, b, c = ms.a, ms.b, ms.c
    phi, dphi, theta, dtheta = pair.phi, pair.phi_prime, pair.theta, pair.theta_prime
    with np.errstate(invalid="ignore"):
        q = a * phi * phi + b * theta * theta + c * phi * theta
        valid = pair.valid & (q > 0)
    if not np.any(valid):
        raise DomainError("no sample where W' is defined and positive")
    phi, dphi, theta, dtheta, q = (arr[valid] for arr in (phi, dphi, theta, dtheta, q))
    v = _node_potential(pair)[valid]
    kappa = constants.kinetic_factor * (v - pair.energy)

    dq = 2.0 * a * phi * dphi + 2.0 * b * theta * dtheta + c * (dphi * theta + phi * dtheta)
    p = a * dphi * dphi + b * dtheta * dtheta + c * dphi * dtheta
    ddq_over_q = 2.0 * p / q + 2.0 * kappa
    wp = math.sqrt(2.0 * m) / q
    r1 = -dq / q  # W''/W'
    r2 = -ddq_over_q + 2.0 * r1 * r1  # W'''/W'

    classical = wp * wp / (2.0 * m) + v - pair.energy
    quantum = hbar**2 / (4.0 * m) * (r2 - 1.5 * r1 * r1)
    residual = classical + quantum
    return _report(residual, pair.grid.h, {
        "classical": float(np.max(np.abs(classical))),
        "schwarzian": float(np.max(np.abs(quantum))),
    })


def _second_derivative(first: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order finite difference of ``first`` (one-sided stencils at the edges)."""
    f = first
    if f.size < 5:
        return np.gradient(f, h, edge_order=2)
    out = np.empty_like(f)
    out[2:-2] = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / (12.0 * h)
    out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h)
    out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h)
    out[-1] = (25.0 * f[-1] - 48.0 * f[-2] + 36.0 * f[-3] - 16.0 * f[-4] + 3.0 * f[-5]) / (12.0 * h)
    out[-2] = (3.0 * f[-1] + 10.0 * f[-2] - 18.0 * f[-3] + 6.0 * f[-4] - f[-5]) / (12.0 * h)
    return out


def substitution_residuals(pair: BasisPair, ms: Microstate,
                           constants: PhysicalConstants | None = None) -> ResidualReport:
    """The three bracketed expressions obtained by substituting W' into the QSHJE.

    ``per_term`` holds max norms of -hbar^2 phi''/2m - (E - V) phi, the same
    for theta, and |W^2 hbar^2 (ab - c^2/4)/2m - 1| (stored Wronskian).
    ``max_abs``/``l2`` describe the weighted sum of all three, which is the
    full substitution residual.
    """
    constants = constants or pair.constants
    m, hbar = constants.mass, constants.hbar
    a, b, c = ms.a, ms.b, ms.c
    h = pair.grid.h
    d2phi = pair.phi_second if pair.phi_second is not None else _second_derivative(pair.phi_prime, h)
    d2theta = (pair.theta_second if pair.theta_second is not None
               else _second_derivative(pair.theta_prime, h))
    v = _node_potential(pair)
    e = pair.energy
    phi, theta = pair.phi, pair.theta
    with np.errstate(invalid="ignore"):
        q = a * phi * phi + b * theta * theta + c * phi * theta
        valid = pair.valid & (q > 0) & np.isfinite(d2phi) & np.isfinite(d2theta)
    if not np.any(valid):
        raise DomainError("no sample where W' is defined and positive")

    bracket_phi = (-hbar**2 * d2phi / (2.0 * m) - (e - v) * phi)[valid]
    bracket_theta = (-hbar**2 * d2theta / (2.0 * m) - (e - v) * theta)[valid]
    bracket_w = pair.wronskian**2 * hbar**2 * ms.det / (2.0 * m) - 1.0
    qv, pv, tv = q[valid], phi[valid], theta[valid]
    total = ((a * pv + 0.5 * c * tv) * bracket_phi + (b * tv + 0.5 * c * pv) * bracket_theta) / qv \
        - bracket_w / qv**2
    return _report(total, h, {
        "phi_equation": float(np.max(np.abs(bracket_phi))),
        "theta_equation": float(np.max(np.abs(bracket_theta))),
        "wronskian_normalization": float(abs(bracket_w)),
    })


@dataclass
class InvarianceEntry:
    microstate: tuple[float, float, float]
    deviation: float
    passed: bool


@dataclass
class InvarianceReport:
    level: int
    eigen_energy: float
    energy: float
    tol: float
    entries: list[InvarianceEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def max_deviation(self) -> float:
        return max((e.deviation for e in self.entries), default=0.0)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        d["max_deviation"] = self.max_deviation
        return d


def _normalized_at_peak(f: np.ndarray, ref: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # one shared index: levels with several equal-height extrema (sin 2x) would
    # otherwise let roundoff pick peaks of opposite sign
    i = int(np.argmax(np.abs(ref)))
    return f / f[i], ref / ref[i]


def microstate_invariance_check(model: Potential, n: int, microstates, grid: Grid, tol: float,
                                constants: PhysicalConstants | None = None,
                                energy_offset: float = 0.0, bracket=None) -> InvarianceReport:
    """Compare the trigonometric reconstruction with the level-n eigenfunction for each microstate.

    Both curves are divided by their value where |phi_n| peaks before the
    max deviation is taken. A nonzero ``energy_offset`` rebuilds the basis at
    E_n + offset from the eigen pair's anchor data, which is expected to
    fail: the identity only holds at eigenvalues.
    """
    constants = constants or PhysicalConstants()
    eig = find_eigenvalue(model, constants, n, grid, bracket)
    base = eigen_pair(eig)
    energy = eig.energy + energy_offset
    if energy_offset:
        base = integrate_pair(model, constants, energy, grid, base.anchor_x0, base.anchor_conditions)
    reference = eig.phi
    report = InvarianceReport(n, eig.energy, energy, tol)
    for ms in microstates:
        pair = scale_wronskian(base, ms, constants)
        out = reconstruct_trig(pair, ms, constants)
        ok = pair.valid & np.isfinite(out)
        a, b = _normalized_at_peak(out[ok], reference[ok])
        dev = float(np.max(np.abs(a - b)))
        report.entries.append(InvarianceEntry(ms.as_tuple(), dev, dev <= tol))
    return report


@dataclass
class FrontierReport:
    side: str
    kind: str  # "node", "wall", "open"
    position: float
    monotone: bool | None = None
    frontier_ratio: float | None = None
    passed: bool | None = None


@dataclass
class NodeReport:
    frontiers: list[FrontierReport]

    @property
    def applicable(self) -> bool:
        return any(f.kind in ("node", "wall") for f in self.frontiers)

    @property
    def passed(self) -> bool | None:
        """None when no frontier is confining (the check is skipped)."""
        if not self.applicable:
            return None
        return all(f.passed for f in self.frontiers if f.kind != "open")

    def side(self, name: str) -> FrontierReport:
        return next(f for f in self.frontiers if f.side == name)

    def to_dict(self) -> dict:
        return {"frontiers": [asdict(f) for f in self.frontiers], "applicable": self.applicable,
                "passed": self.passed}


def boundary_node_check(pair: BasisPair, ms: Microstate, constants: PhysicalConstants | None = None,
                        fraction: float = 0.1) -> NodeReport:
    """Classify each grid end and test for the nodal limit W' -> 0 on confining sides.

    A side is a ``wall`` when a hard wall sits there (the turning point is the
    wall itself), a ``node`` when the end is classically forbidden, and
    ``open`` otherwise. A node side passes when W' decreases monotonically
    over the outermost ``fraction`` of unclamped samples and its frontier
    value is below 1e-6 of the peak.
    """
    constants = constants or pair.constants
    wp = conjugate_momentum(pair, ms, constants).samples
    idx = np.flatnonzero(pair.valid)
    if idx.size < 3:
        raise DomainError("too few unclamped samples for a boundary check")
    peak = float(wp[idx].max())
    left_wall, right_wall = pair.model.walls
    x = pair.grid.x
    tol = 1e-9 * max(1.0, pair.grid.h)
    span = max(2, int(math.ceil(fraction * idx.size)))
    out = []
    for side, wall, end_index, tail in (
        ("left", left_wall, idx[0], idx[:span][::-1]),
        ("right", right_wall, idx[-1], idx[-span:]),
    ):
        pos = float(x[end_index])
        if wall is not None and abs(pos - wall) <= tol:
            ok = bool(np.isfinite(wp[end_index]) and wp[end_index] > 0)
            out.append(FrontierReport(side, "wall", float(wall), passed=ok))
            continue
        v_end = float(pair.model(pos))
        if v_end <= pair.energy:
            out.append(FrontierReport(side, "open", pos))
            continue
        seq = wp[tail]
        monotone = bool(np.all(np.diff(seq) <= 0))
        ratio = float(wp[end_index] / peak)
        out.append(FrontierReport(side, "node", pos, monotone, ratio, monotone and ratio < NODE_RATIO))
    return NodeReport(out)


def action_tail_bound(cf: CharacteristicFunction) -> float:
    """Upper bound on the action beyond the outermost unclamped samples."""
    idx = np.flatnonzero(~cf.clamped)
    ends = cf.tangent[[idx[0], idx[-1]]]
    with np.errstate(divide="ignore"):
        return float(cf.hbar * np.sum(np.arctan(1.0 / np.abs(ends))))


def action_increment(pair: BasisPair, ms: Microstate, cf: CharacteristicFunction | None = None,
                     constants: PhysicalConstants | None = None) -> float:
    """Total increment of W across the unclamped region.

    Emits PrecisionWarning when the analytic tail bound beyond the frontier
    exceeds 1e-6 hbar.
    """
    constants = constants or pair.constants
    if cf is None:
        cf = characteristic_function(pair, ms, 0.0, constants)
    idx = np.flatnonzero(~cf.clamped)
    delta = float(cf.samples[idx[-1]] - cf.samples[idx[0]])
    tail = action_tail_bound(cf)
    if tail > ACTION_TAIL_WARN * constants.hbar:
        warnings.warn(f"action tail beyond the frontier may reach {tail:.3e}", PrecisionWarning,
                      stacklevel=2)
    return delta
