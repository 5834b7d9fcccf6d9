"""Microstate algebra of the generalized Hamilton-Jacobi representation.

A microstate is a triple (a, b, c) with a, b > 0 and ab - c^2/4 > 0. Given
a basis pair (phi, theta) whose Wronskian is scaled to match it, the
conjugate momentum is

    W' = sqrt(2m) / (a phi^2 + b theta^2 + c phi theta)

and the characteristic function is hbar * arctan((b theta/phi + c/2) / sqrt(ab - c^2/4)) + K,
unwrapped across the zeros of phi so that it stays continuous.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ResolutionError, ValidationError
from .model import Grid, PhysicalConstants
from .schrodinger import BasisPair

__all__ = [
    "Microstate",
    "MomentumField",
    "CharacteristicFunction",
    "SuperpositionCoeffs",
    "DegenerateFamily",
    "is_admissible",
    "random_microstates",
    "canonical_microstate",
    "conjugate_momentum",
    "characteristic_function",
    "reconstruct_polar",
    "reconstruct_trig",
    "microstate_to_superposition",
    "superposition_from_initial_conditions",
    "microstate_from_initial_conditions",
]

SCALING_RTOL = 1e-10
CURRENT_RTOL = 1e-12


def is_admissible(a: float, b: float, c: float) -> bool:
    return a > 0 and b > 0 and a * b - 0.25 * c * c > 0


@dataclass(frozen=True)
class Microstate:
    """Coefficient triple (a, b, c); ``direction`` is +1 for motion toward +x."""

    a: float
    b: float
    c: float
    direction: int = 1

    def __post_init__(self):
        for name in ("a", "b", "c"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"microstate {name} must be finite")
        if not self.a > 0:
            raise ValidationError(f"inadmissible microstate: a > 0 violated (a={self.a})")
        if not self.b > 0:
            raise ValidationError(f"inadmissible microstate: b > 0 violated (b={self.b})")
        if not self.det > 0:
            raise ValidationError(
                f"inadmissible microstate: ab - c^2/4 > 0 violated (ab - c^2/4 = {self.det:g})"
            )
        if self.direction not in (1, -1):
            raise ValidationError("direction must be +1 or -1")

    @property
    def det(self) -> float:
        """ab - c^2/4."""
        return self.a * self.b - 0.25 * self.c * self.c

    def scaled(self, lam: float) -> Microstate:
        return Microstate(lam * self.a, lam * self.b, lam * self.c, self.direction)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)


def random_microstates(count: int, seed: int) -> list[Microstate]:
    """Seeded admissible triples: a, b ~ U[0.5, 5], |c| < 0.9 * 2 sqrt(ab)."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        a, b = rng.uniform(0.5, 5.0, size=2)
        cmax = 0.9 * 2.0 * math.sqrt(a * b)
        c = rng.uniform(-cmax, cmax)
        out.append(Microstate(float(a), float(b), float(c)))
    return out


def canonical_microstate(ms: Microstate, wronskian: float, constants: PhysicalConstants) -> Microstate:
    """Representative of the ray lambda*(a, b, c) whose scaling leaves ``wronskian`` unchanged."""
    lam = math.sqrt(constants.kinetic_factor / (wronskian**2 * ms.det))
    return ms.scaled(lam)


@dataclass(frozen=True, eq=False)
class MomentumField:
    grid: Grid
    samples: np.ndarray
    microstate: Microstate
    clamped: np.ndarray
    direction: int = 1


@dataclass(frozen=True, eq=False)
class CharacteristicFunction:
    """Continuous branch of W on the grid.

    ``phase_cos``/``phase_sin`` hold cos and sin of (W - K)/hbar evaluated
    from the branch decomposition rather than from W itself; far in a
    forbidden region W sits within 1e-40 of a multiple of pi/2 and a float
    cannot carry that offset.
    """

    grid: Grid
    samples: np.ndarray
    branch_count: np.ndarray
    K: float
    hbar: float
    nodes: np.ndarray
    phase_cos: np.ndarray
    phase_sin: np.ndarray
    tangent: np.ndarray
    clamped: np.ndarray

    def cos_phase(self) -> np.ndarray:
        """cos(W/hbar)."""
        k = self.K / self.hbar
        return self.phase_cos * math.cos(k) - self.phase_sin * math.sin(k)

    def exp_phase(self) -> np.ndarray:
        """exp(i W/hbar)."""
        return (self.phase_cos + 1j * self.phase_sin) * np.exp(1j * self.K / self.hbar)


@dataclass(frozen=True)
class SuperpositionCoeffs:
    """psi = alpha * phi + beta * theta."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        if self.alpha == 0 and self.beta == 0:
            raise ValidationError("alpha and beta cannot both vanish")

    @property
    def current(self) -> float:
        """Im(conj(alpha) beta); proportional to the probability current."""
        return (self.alpha.conjugate() * self.beta).imag


@dataclass(frozen=True)
class DegenerateFamily:
    """Zero-current (real) initial data: an uncountable family of microstates fits it."""

    alpha: complex
    beta: complex
    current: float
    reason: str = "zero probability current: W and W' are not fixed by the wave function"


def _check_scaled(pair: BasisPair, ms: Microstate, constants: PhysicalConstants):
    mismatch = pair.wronskian**2 * ms.det / constants.kinetic_factor - 1.0
    if abs(mismatch) > SCALING_RTOL:
        raise ValidationError(
            f"pair is not Wronskian-scaled for {ms.as_tuple()} "
            f"(W^2 hbar^2 (ab - c^2/4)/2m - 1 = {mismatch:.3e}); call scale_wronskian first"
        )


def _quadratic_form(pair: BasisPair, ms: Microstate) -> np.ndarray:
    phi, theta = pair.phi, pair.theta
    return ms.a * phi * phi + ms.b * theta * theta + ms.c * phi * theta


def conjugate_momentum(pair: BasisPair, ms: Microstate,
                       constants: PhysicalConstants | None = None) -> MomentumField:
    """Positive branch of W' on the grid; exactly 0 at clamped samples."""
    constants = constants or pair.constants
    _check_scaled(pair, ms, constants)
    q = _quadratic_form(pair, ms)
    wp = np.zeros(pair.grid.n_points)
    valid = pair.valid
    wp[valid] = math.sqrt(2.0 * constants.mass) / q[valid]
    return MomentumField(pair.grid, wp, ms, pair.clamped.copy())


def _crossings(p: np.ndarray, valid: np.ndarray) -> np.ndarray:
    """Boolean per cell: does phi change branch between nodes i and i+1?

    A sample with phi exactly 0 belongs to the branch on its left.
    """
    both = valid[:-1] & valid[1:]
    pl, pr = p[:-1], p[1:]
    strict = (pl != 0) & (pr != 0) & (np.sign(pl) != np.sign(pr))
    from_zero = (pl == 0) & (pr != 0)
    if np.any(both & (pl == 0) & (pr == 0)):
        raise ResolutionError("phi vanishes on two adjacent grid nodes")
    return both & (strict | from_zero)


def characteristic_function(pair: BasisPair, ms: Microstate, K: float = 0.0,
                            constants: PhysicalConstants | None = None) -> CharacteristicFunction:
    """Unwrapped W = hbar * (arctan(g) + pi * N) + K with g = (b theta/phi + c/2)/sqrt(ab - c^2/4).

    N counts zeros of phi crossed since the anchor, signed by direction, so
    W(anchor) lies on the principal branch and W is continuous elsewhere.
    When phi vanishes at the anchor the next sample to the right is the
    reference, which keeps W continuous in E for families anchored on a node.

    Raises:
        ResolutionError: zeros of phi fall in adjacent grid cells.
    """
    constants = constants or pair.constants
    hbar = constants.hbar
    _check_scaled(pair, ms, constants)
    valid = pair.valid
    root = math.sqrt(ms.det)
    phi = np.where(valid, pair.phi, 0.0)
    theta = np.where(valid, pair.theta, 0.0)
    p = phi * root
    q = ms.b * theta + 0.5 * ms.c * phi

    with np.errstate(divide="ignore", invalid="ignore"):
        tangent = q / p
        principal = np.where(p != 0, np.arctan(tangent), 0.5 * math.pi)
        r = np.hypot(p, q)
        base_cos = np.where(p != 0, np.abs(p) / r, 0.0)
        base_sin = np.where(p != 0, np.sign(p) * q / r, 1.0)

    cross = _crossings(p, valid)
    if np.any(cross[:-1] & cross[1:]):
        raise ResolutionError("grid too coarse: zeros of phi in adjacent cells")
    jumps = np.where(cross, np.sign(principal[:-1] - principal[1:]), 0.0)
    cumulative = np.concatenate([[0.0], np.cumsum(jumps)])
    i0 = pair.grid.index_of(pair.anchor_x0)
    if p[i0] == 0 and i0 + 1 < p.size:
        # a zero opens the branch on its right; reference that branch instead
        i0 += 1
    branch = np.rint(cumulative - cumulative[i0]).astype(int)

    x = pair.grid.x
    idx = np.flatnonzero(cross)
    pl, pr = pair.phi[idx], pair.phi[idx + 1]
    with np.errstate(divide="ignore", invalid="ignore"):
        frac = np.where(pl == 0, 0.0, pl / (pl - pr))
    nodes = x[idx] + frac * (x[idx + 1] - x[idx])

    parity = np.where(branch % 2 == 0, 1.0, -1.0)
    W = hbar * (principal + math.pi * branch) + K
    W[~valid] = np.nan
    pc = np.where(valid, parity * base_cos, np.nan)
    ps = np.where(valid, parity * base_sin, np.nan)
    tangent = np.where(valid, tangent, np.nan)
    return CharacteristicFunction(pair.grid, W, branch, float(K), hbar, nodes, pc, ps, tangent,
                                  pair.clamped.copy())


def _amplitude(wp: np.ndarray, ms: Microstate, constants: PhysicalConstants, valid: np.ndarray):
    amp = np.full(wp.shape, np.nan)
    amp[valid] = (2.0 * constants.mass) ** 0.25 / (
        np.sqrt(wp[valid]) * math.sqrt(ms.a - ms.c**2 / (4.0 * ms.b))
    )
    return amp


def reconstruct_polar(pair: BasisPair, ms: Microstate,
                      constants: PhysicalConstants | None = None, K: float = 0.0) -> np.ndarray:
    """psi = (2m)^(1/4) exp(iW/hbar) / (sqrt(W') sqrt(a - c^2/(4b))); NaN at clamped samples."""
    constants = constants or pair.constants
    wp = conjugate_momentum(pair, ms, constants).samples
    cf = characteristic_function(pair, ms, K, constants)
    return _amplitude(wp, ms, constants, pair.valid) * cf.exp_phase()


def reconstruct_trig(pair: BasisPair, ms: Microstate,
                     constants: PhysicalConstants | None = None, K: float = 0.0) -> np.ndarray:
    """Real trigonometric form (2m)^(1/4) cos(W/hbar) / (sqrt(W') sqrt(a - c^2/(4b))).

    For a bound eigenfunction phi this reproduces phi for every admissible
    microstate; NaN at clamped samples.
    """
    constants = constants or pair.constants
    wp = conjugate_momentum(pair, ms, constants).samples
    cf = characteristic_function(pair, ms, K, constants)
    return _amplitude(wp, ms, constants, pair.valid) * cf.cos_phase()


def microstate_to_superposition(ms: Microstate) -> SuperpositionCoeffs:
    alpha = 1.0 + 1j * ms.c / math.sqrt(4.0 * ms.a * ms.b - ms.c**2)
    beta = 1j * ms.b / math.sqrt(ms.det)
    return SuperpositionCoeffs(alpha, beta)


def _anchor_values(pair: BasisPair, x0: float):
    if not pair.grid.contains(x0):
        raise ValidationError(f"x0={x0} lies outside the grid")
    i = pair.grid.index_of(x0)
    if not pair.valid[i]:
        raise ValidationError(f"x0={x0} lies in the clamped region")
    return pair.phi[i], pair.phi_prime[i], pair.theta[i], pair.theta_prime[i]


def superposition_from_initial_conditions(psi0: complex, dpsi0: complex, pair: BasisPair,
                                          x0: float) -> SuperpositionCoeffs:
    """Unique (alpha, beta) with alpha phi + beta theta matching psi(x0), psi'(x0)."""
    psi0, dpsi0 = complex(psi0), complex(dpsi0)
    if psi0 == 0 and dpsi0 == 0:
        raise ValidationError("initial data psi(x0) = psi'(x0) = 0 defines no state")
    p, dp, t, dt = _anchor_values(pair, x0)
    w = p * dt - dp * t
    alpha = (psi0 * dt - dpsi0 * t) / w
    beta = -(psi0 * dp - dpsi0 * p) / w
    return SuperpositionCoeffs(alpha, beta)


def microstate_from_initial_conditions(psi0: complex, dpsi0: complex, pair: BasisPair, x0: float,
                                       constants: PhysicalConstants | None = None):
    """Invert initial data to the microstate it fixes, or flag a degenerate family.

    With nonzero current the data determine (a, b, c) uniquely once the
    Wronskian normalization is imposed: a complex factor gamma is chosen so
    that gamma*alpha has real part 1 and gamma*beta is purely imaginary.
    Data carrying current toward -x are conjugated and flagged with
    direction -1. Zero-current (real) data return ``DegenerateFamily``.
    """
    constants = constants or pair.constants
    coeffs = superposition_from_initial_conditions(psi0, dpsi0, pair, x0)
    alpha, beta = coeffs.alpha, coeffs.beta
    current = coeffs.current
    if abs(current) <= CURRENT_RTOL * abs(alpha) * abs(beta):
        return DegenerateFamily(alpha, beta, current)
    direction = 1
    if current < 0:
        alpha, beta, direction = alpha.conjugate(), beta.conjugate(), -1
    omega = math.sqrt(2.0 * constants.mass) / (constants.hbar * pair.wronskian)
    # Re(gamma alpha) = 1, Re(gamma beta) = 0 for gamma = gr + i gi
    m = np.array([[alpha.real, -alpha.imag], [beta.real, -beta.imag]])
    gr, gi = np.linalg.solve(m, [1.0, 0.0])
    gamma = complex(gr, gi)
    c = 2.0 * omega * (gamma * alpha).imag
    b = omega * (gamma * beta).imag
    a = (omega**2 + 0.25 * c * c) / b
    return Microstate(a, b, c, direction)
