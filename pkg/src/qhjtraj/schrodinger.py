"""Time-independent Schroedinger solves: basis pairs, eigenvalues, Wronskian scaling.

All integrations use fixed-step RK4 on (u, u') so that u' is available to
the same order as u. Solutions that grow past the clamp threshold stop
there; the remaining samples are flagged ``clamped`` and hold NaN.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import TYPE_CHECKING

import numpy as np

from ._rk4 import rk4_sweep
from .errors import BracketError, ConvergenceError, DomainError, ValidationError
from .model import Grid, InfiniteWell, PhysicalConstants, Potential

if TYPE_CHECKING:
    from .qhj import Microstate

__all__ = [
    "BasisPair",
    "EigenSolution",
    "integrate_pair",
    "closed_form_pair",
    "pair_from_solution",
    "eigen_pair",
    "decaying_solution",
    "node_count",
    "bracket_level",
    "find_eigenvalue",
    "scale_wronskian",
]

EIGEN_RTOL = 1e-12
MAX_ITER = 200


@dataclass(frozen=True, eq=False)
class BasisPair:
    """Two independent solutions (phi, theta) with first derivatives on a grid.

    ``phi_second``/``theta_second`` are optional exact second derivatives
    (closed-form bases supply them); verification falls back to finite
    differences of the first derivatives when they are absent.
    """

    grid: Grid
    energy: float
    phi: np.ndarray
    phi_prime: np.ndarray
    theta: np.ndarray
    theta_prime: np.ndarray
    wronskian: float
    anchor_x0: float
    anchor_conditions: tuple[float, float, float, float]
    model: Potential
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)
    clamped: np.ndarray | None = None
    phi_second: np.ndarray | None = None
    theta_second: np.ndarray | None = None

    def __post_init__(self):
        if self.clamped is None:
            object.__setattr__(self, "clamped", np.zeros(self.grid.n_points, dtype=bool))

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    @property
    def valid(self) -> np.ndarray:
        return ~self.clamped

    def pointwise_wronskian(self) -> np.ndarray:
        return self.phi * self.theta_prime - self.phi_prime * self.theta

    def wronskian_deviation(self) -> float:
        """max |W(x) - W| / |W| over the unclamped region."""
        w = self.pointwise_wronskian()[self.valid]
        if w.size == 0:
            return 0.0
        return float(np.max(np.abs(w - self.wronskian)) / abs(self.wronskian))


@dataclass(frozen=True, eq=False)
class EigenSolution:
    level: int
    energy: float
    phi: np.ndarray
    phi_prime: np.ndarray
    node_count: int
    grid: Grid
    model: Potential
    constants: PhysicalConstants
    mismatch: float
    match_x: float


@lru_cache(maxsize=32)
def _potential_samples(model: Potential, grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    left, right = model.walls
    tol = 1e-12 * max(1.0, abs(grid.x_min), abs(grid.x_max))
    if (left is not None and grid.x_min < left - tol) or (right is not None and grid.x_max > right + tol):
        raise DomainError(f"grid [{grid.x_min}, {grid.x_max}] extends past the walls of {model}")
    x = np.clip(grid.x, left if left is not None else -np.inf, right if right is not None else np.inf)
    v_mid = model(grid.midpoints)
    v_nodes = v_mid if model.piecewise_constant else model(x)
    return np.asarray(v_nodes, dtype=float), np.asarray(v_mid, dtype=float)


def _stage_kappas(model, constants, energy, grid, i_start, i_stop):
    """kappa at start/middle/end of every step of a sweep from i_start to i_stop."""
    v_nodes, v_mid = _potential_samples(model, grid)
    c = constants.kinetic_factor
    if i_stop > i_start:
        mids = v_mid[i_start:i_stop]
        if model.piecewise_constant:
            k = c * (mids - energy)
            return k, k, k
        return (c * (v_nodes[i_start:i_stop] - energy), c * (mids - energy),
                c * (v_nodes[i_start + 1:i_stop + 1] - energy))
    mids = v_mid[i_stop:i_start][::-1]
    if model.piecewise_constant:
        k = c * (mids - energy)
        return k, k, k
    return (c * (v_nodes[i_stop + 1:i_start + 1][::-1] - energy), c * (mids - energy),
            c * (v_nodes[i_stop:i_start][::-1] - energy))


def _sweep(model, constants, energy, grid, i_start, i_stop, u0, v0, renormalize=False):
    """RK4 from node i_start to node i_stop; samples come back in sweep order."""
    if i_start == i_stop:
        return np.array([u0]), np.array([v0]), 1, 0
    k0, km, k1 = _stage_kappas(model, constants, energy, grid, i_start, i_stop)
    h = grid.h if i_stop > i_start else -grid.h
    return rk4_sweep(np.ascontiguousarray(k0), np.ascontiguousarray(km),
                     np.ascontiguousarray(k1), h, float(u0), float(v0), renormalize)


def _partial_step(model, constants, energy, x_from, x_to, u0, v0):
    """One RK4 step between arbitrary points (used for off-grid anchors)."""
    mid = 0.5 * (x_from + x_to)
    c = constants.kinetic_factor
    if model.piecewise_constant:
        ks = [c * (model(mid) - energy)] * 3
    else:
        ks = [c * (model(p) - energy) for p in (x_from, mid, x_to)]
    arrs = [np.array([k]) for k in ks]
    u, v, _, _ = rk4_sweep(arrs[0], arrs[1], arrs[2], x_to - x_from, float(u0), float(v0), False)
    return u[1], v[1]


def _solve_from(model, constants, energy, grid, i0, u0, v0, renormalize=False):
    """Integrate one solution outward from node i0 in both directions."""
    n = grid.n_points
    u = np.full(n, np.nan)
    v = np.full(n, np.nan)
    uf, vf, nf, _ = _sweep(model, constants, energy, grid, i0, n - 1, u0, v0, renormalize)
    u[i0:i0 + nf] = uf[:nf]
    v[i0:i0 + nf] = vf[:nf]
    ub, vb, nb, _ = _sweep(model, constants, energy, grid, i0, 0, u0, v0, renormalize)
    u[i0 - nb + 1:i0 + 1] = ub[:nb][::-1]
    v[i0 - nb + 1:i0 + 1] = vb[:nb][::-1]
    return u, v


def _check_anchor(model, grid, anchor_x0):
    if not grid.contains(anchor_x0):
        raise ValidationError(f"anchor x0={anchor_x0} lies outside the grid")
    left, right = model.walls
    if (left is not None and anchor_x0 <= left) or (right is not None and anchor_x0 >= right):
        raise ValidationError(f"anchor x0={anchor_x0} must lie strictly inside the hard walls")


def integrate_pair(model: Potential, constants: PhysicalConstants, energy: float, grid: Grid,
                   anchor_x0: float, anchor_conditions) -> BasisPair:
    """Integrate two solutions outward from ``anchor_x0`` across the whole grid.

    Args:
        anchor_conditions: (phi(x0), phi'(x0), theta(x0), theta'(x0)). Keep
            these independent of the energy when building an energy family.

    The Wronskian is taken from the anchor data; if it is negative, theta
    is negated so that every pair describes motion toward +x.
    """
    _check_anchor(model, grid, anchor_x0)
    conds = tuple(float(c) for c in anchor_conditions)
    if len(conds) != 4 or not all(math.isfinite(c) for c in conds):
        raise ValidationError("anchor_conditions must be four finite reals")
    p0, dp0, t0, dt0 = conds
    w = p0 * dt0 - dp0 * t0
    scale = math.hypot(p0, dp0) * math.hypot(t0, dt0)
    if scale == 0 or abs(w) <= 1e-14 * scale:
        raise ValidationError("anchor conditions are linearly dependent (zero Wronskian)")
    if w < 0:
        t0, dt0, w = -t0, -dt0, -w
        conds = (p0, dp0, t0, dt0)

    i0 = grid.index_of(anchor_x0)
    x_node = grid.x[i0]
    if abs(x_node - anchor_x0) > 1e-12 * max(1.0, abs(anchor_x0)):
        p0, dp0 = _partial_step(model, constants, energy, anchor_x0, x_node, p0, dp0)
        t0, dt0 = _partial_step(model, constants, energy, anchor_x0, x_node, t0, dt0)

    phi, dphi = _solve_from(model, constants, energy, grid, i0, p0, dp0)
    theta, dtheta = _solve_from(model, constants, energy, grid, i0, t0, dt0)
    clamped = ~(np.isfinite(phi) & np.isfinite(theta))
    for arr in (phi, dphi, theta, dtheta):
        arr[clamped] = np.nan
    return BasisPair(grid, float(energy), phi, dphi, theta, dtheta, w, float(anchor_x0), conds,
                     model, constants, clamped)


def closed_form_pair(model: Potential, constants: PhysicalConstants, energy: float,
                     grid: Grid) -> BasisPair:
    """Exact basis phi = sin(k s), theta = -cos(k s) inside an infinite well.

    s is the distance from the left wall and k = sqrt(2 m E)/hbar, so phi
    vanishes at the left wall for every energy (the closed-form family used
    for energy derivatives). The wall is the anchor. Exact second
    derivatives are attached.
    """
    if not isinstance(model, InfiniteWell):
        raise ValidationError(f"no closed-form basis family is available for {model.name}")
    if energy <= 0:
        raise ValidationError("the closed-form well basis needs E > 0")
    _potential_samples(model, grid)
    k = math.sqrt(2.0 * constants.mass * energy) / constants.hbar
    s = grid.x - model.walls[0]
    sn, cs = np.sin(k * s), np.cos(k * s)
    x0 = model.walls[0]
    conds = (0.0, k, -1.0, 0.0)
    return BasisPair(grid, float(energy), sn, k * cs, -cs, k * sn, k, x0, conds, model, constants,
                     phi_second=-k * k * sn, theta_second=k * k * cs)


def pair_from_solution(model: Potential, constants: PhysicalConstants, energy: float, grid: Grid,
                       phi: np.ndarray, phi_prime: np.ndarray,
                       anchor_x0: float | None = None) -> BasisPair:
    """Complete a known solution phi with an independent partner theta.

    theta is integrated outward from the anchor (default: where |phi| peaks)
    with conditions chosen so that the Wronskian equals 1. Because theta is
    the growing partner it is integrated in its stable direction.
    """
    phi = np.asarray(phi, dtype=float)
    phi_prime = np.asarray(phi_prime, dtype=float)
    if anchor_x0 is None:
        i0 = int(np.argmax(np.abs(phi)))
    else:
        _check_anchor(model, grid, anchor_x0)
        i0 = grid.index_of(anchor_x0)
    p0, dp0 = float(phi[i0]), float(phi_prime[i0])
    d = p0 * p0 + dp0 * dp0
    if d == 0:
        raise ValidationError("phi and phi' both vanish at the anchor")
    t0, dt0 = -dp0 / d, p0 / d
    theta, dtheta = _solve_from(model, constants, energy, grid, i0, t0, dt0)
    clamped = ~np.isfinite(theta)
    phi, phi_prime = phi.copy(), phi_prime.copy()
    phi[clamped] = np.nan
    phi_prime[clamped] = np.nan
    return BasisPair(grid, float(energy), phi, phi_prime, theta, dtheta, 1.0, float(grid.x[i0]),
                     (p0, dp0, t0, dt0), model, constants, clamped)


def eigen_pair(eig: EigenSolution) -> BasisPair:
    """Basis pair whose phi is the bound eigenfunction."""
    return pair_from_solution(eig.model, eig.constants, eig.energy, eig.grid, eig.phi, eig.phi_prime)


def decaying_solution(model: Potential, constants: PhysicalConstants, energy: float,
                      grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    """Solution that decays into the right end of the grid, integrated inward.

    Starts from the local decaying exponential when the right end is
    classically forbidden (exact for a constant tail), else from a node.
    Normalized to max|phi| = 1.
    """
    v_nodes, _ = _potential_samples(model, grid)
    n = grid.n_points
    excess = constants.kinetic_factor * (v_nodes[-1] - energy)
    u0, v0 = (1.0, -math.sqrt(excess)) if excess > 0 else (0.0, -1.0)
    u, v, _, _ = _sweep(model, constants, energy, grid, n - 1, 0, u0, v0, renormalize=True)
    phi, dphi = u[::-1].copy(), v[::-1].copy()
    return _normalize(phi, dphi)


def _normalize(phi, dphi):
    i = int(np.argmax(np.abs(phi)))
    s = phi[i]
    return phi / s, dphi / s


def node_count(model: Potential, constants: PhysicalConstants, energy: float, grid: Grid) -> int:
    """Number of Dirichlet eigenvalues on the grid interval lying below ``energy``.

    Sturm count: sign changes of the solution leaving the left end with
    u = 0, u' = 1, swept across the whole grid.
    """
    _, _, _, nodes = _sweep(model, constants, energy, grid, 0, grid.n_points - 1, 0.0, 1.0,
                            renormalize=True)
    return int(nodes)


def _bound_threshold(model, grid):
    """Energy below which states are confined on this grid."""
    v_nodes, _ = _potential_samples(model, grid)
    left, right = model.walls
    ends = []
    if left is None:
        ends.append(v_nodes[0])
    if right is None:
        ends.append(v_nodes[-1])
    return min(ends) if ends else math.inf


def bracket_level(model: Potential, constants: PhysicalConstants, n: int, grid: Grid) -> tuple[float, float]:
    """Expand an energy window upward from min V until it holds level n."""
    v_nodes, v_mid = _potential_samples(model, grid)
    lo = float(min(v_nodes.min(), v_mid.min()))
    step = max(1.0, abs(lo))
    hi = lo + step
    for _ in range(200):
        if node_count(model, constants, hi, grid) >= n + 1:
            return lo, hi
        step *= 2.0
        hi = lo + step
    raise BracketError(f"could not bracket level {n}")


def _match_index(model, grid, energy):
    left, right = model.walls
    interior = [t for t in model.turning_points(energy)
                if t != left and t != right and grid.x_min < t < grid.x_max]
    if not interior:
        return grid.n_points // 2
    return int(np.clip(grid.index_of(min(interior)), 2, grid.n_points - 3))


def _inward(model, constants, energy, grid, m):
    uL, vL, _, _ = _sweep(model, constants, energy, grid, 0, m, 0.0, 1.0, renormalize=True)
    uR, vR, _, _ = _sweep(model, constants, energy, grid, grid.n_points - 1, m, 0.0, -1.0,
                          renormalize=True)
    return uL, vL, uR, vR


def _mismatch(model, constants, energy, grid, m):
    """Sine of the angle between the inward (u, u') vectors at the match node."""
    uL, vL, uR, vR = _inward(model, constants, energy, grid, m)
    a, da, b, db = uL[-1], vL[-1], uR[-1], vR[-1]
    return (a * db - da * b) / (math.hypot(a, da) * math.hypot(b, db))


def find_eigenvalue(model: Potential, constants: PhysicalConstants, n: int, grid: Grid,
                    bracket: tuple[float, float] | None = None) -> EigenSolution:
    """Locate bound level n by node-count isolation plus inward-shooting bisection.

    The bracket is first narrowed on Sturm node counts until it holds only
    level n, then bisected on the sign of the matching mismatch between
    integrations coming in from both ends (matched at the leftmost
    classical turning point). The eigenfunction is returned with
    max|phi| = 1, positive at its peak.

    Raises:
        BracketError: the bracket does not straddle level n, or the level
            is not confined on this grid.
        ConvergenceError: more than 200 bisection steps were needed.
    """
    if n < 0 or int(n) != n:
        raise ValidationError(f"level must be a nonnegative integer, got {n}")
    n = int(n)
    if bracket is None:
        bracket = bracket_level(model, constants, n, grid)
    lo, hi = map(float, bracket)
    if not lo < hi:
        raise BracketError(f"empty bracket ({lo}, {hi})")
    threshold = _bound_threshold(model, grid)
    if lo >= threshold:
        raise BracketError(f"bracket lies above the confinement threshold {threshold} of {model}")
    c_lo = node_count(model, constants, lo, grid)
    c_hi = node_count(model, constants, hi, grid)
    if not (c_lo <= n < c_hi):
        raise BracketError(f"bracket ({lo}, {hi}) holds levels [{c_lo}, {c_hi}), not level {n}")

    for _ in range(MAX_ITER):
        if c_lo == n and c_hi == n + 1:
            break
        mid = 0.5 * (lo + hi)
        c_mid = node_count(model, constants, mid, grid)
        if c_mid <= n:
            lo, c_lo = mid, c_mid
        else:
            hi, c_hi = mid, c_mid
    else:
        raise ConvergenceError(f"could not isolate level {n}")

    m = _match_index(model, grid, 0.5 * (lo + hi))
    g_lo = _mismatch(model, constants, lo, grid, m)
    g_hi = _mismatch(model, constants, hi, grid, m)
    use_counts = not (g_lo * g_hi < 0)
    for _ in range(MAX_ITER):
        if hi - lo <= EIGEN_RTOL * max(1.0, abs(lo), abs(hi)):
            break
        mid = 0.5 * (lo + hi)
        if use_counts:
            if node_count(model, constants, mid, grid) <= n:
                lo = mid
            else:
                hi = mid
            continue
        g_mid = _mismatch(model, constants, mid, grid, m)
        if g_mid == 0:
            lo = hi = mid
        elif g_mid * g_lo < 0:
            hi, g_hi = mid, g_mid
        else:
            lo, g_lo = mid, g_mid
    else:
        raise ConvergenceError(f"level {n} did not converge in {MAX_ITER} bisections")

    energy = 0.5 * (lo + hi)
    if energy >= threshold:
        raise BracketError(f"level {n} (E={energy}) is not confined on this grid")
    uL, vL, uR, vR = _inward(model, constants, energy, grid, m)
    uR, vR = uR[::-1], vR[::-1]
    f = (uL[-1] * uR[0] + vL[-1] * vR[0]) / (uR[0] ** 2 + vR[0] ** 2)
    phi = np.concatenate([uL, f * uR[1:]])
    dphi = np.concatenate([vL, f * vR[1:]])
    phi, dphi = _normalize(phi, dphi)
    s = np.sign(phi)
    s = s[s != 0]
    nodes = int(np.count_nonzero(s[1:] != s[:-1]))
    if nodes != n:
        raise ConvergenceError(f"level {n} eigenfunction has {nodes} nodes; refine the grid")
    mismatch = abs(_mismatch(model, constants, energy, grid, m))
    return EigenSolution(n, energy, phi, dphi, nodes, grid, model, constants, mismatch,
                         float(grid.x[m]))


def scale_wronskian(pair: BasisPair, ms: Microstate,
                    constants: PhysicalConstants | None = None) -> BasisPair:
    """Rescale both solutions so that W^2 = 2m / (hbar^2 (ab - c^2/4)).

    Both solutions are multiplied by s = sqrt(W_target / W_current), which
    leaves theta/phi (and hence the phase of W) untouched.
    """
    constants = constants or pair.constants
    if not pair.wronskian > 0:
        raise ValidationError("pair Wronskian must be positive before scaling")
    target = math.sqrt(constants.kinetic_factor / ms.det)
    s = math.sqrt(target / pair.wronskian)

    def sc(a):
        return None if a is None else a * s

    return replace(pair, phi=sc(pair.phi), phi_prime=sc(pair.phi_prime), theta=sc(pair.theta),
                   theta_prime=sc(pair.theta_prime), wronskian=target,
                   anchor_conditions=tuple(c * s for c in pair.anchor_conditions),
                   phi_second=sc(pair.phi_second), theta_second=sc(pair.theta_second),
                   constants=constants)
