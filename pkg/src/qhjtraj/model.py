"""Physical constants, the 1-D potential catalog and uniform grids.

Every potential is an immutable dataclass. Hard walls are carried as
metadata (``walls``) rather than as large finite values, so a wall sits
exactly where the wave function must vanish.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError, ValidationError

__all__ = [
    "PhysicalConstants",
    "Potential",
    "InfiniteWell",
    "Harmonic",
    "FiniteWell",
    "LinearRamp",
    "StepBarrier",
    "Grid",
    "make_grid",
    "potential_eval",
    "turning_points",
    "parse_potential",
]


def _require_positive(**params: float) -> None:
    for name, value in params.items():
        if not (math.isfinite(value) and value > 0):
            raise ValidationError(f"{name} must be a finite positive number, got {value!r}")


@dataclass(frozen=True)
class PhysicalConstants:
    """Reduced Planck constant and particle mass. Defaults are dimensionless."""

    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        _require_positive(hbar=self.hbar, mass=self.mass)

    @property
    def kinetic_factor(self) -> float:
        """2m/hbar^2, the factor turning V - E into psi''/psi."""
        return 2.0 * self.mass / self.hbar**2


@dataclass(frozen=True)
class Potential:
    """Base class of the closed potential catalog."""

    #: True when V is constant between breakpoints; the integrator then
    #: evaluates V once per cell (at its midpoint) so jumps on grid nodes
    #: do not cost an order of accuracy.
    piecewise_constant = False

    @property
    def walls(self) -> tuple[float | None, float | None]:
        """(left, right) hard-wall positions, ``None`` where there is no wall."""
        return (None, None)

    @property
    def name(self) -> str:
        return type(self).__name__

    def params(self) -> dict[str, float]:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}

    def _values(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, x):
        xa = np.asarray(x, dtype=float)
        left, right = self.walls
        if left is not None and np.any(xa < left):
            raise DomainError(f"{self.name}: x below the hard wall at {left}")
        if right is not None and np.any(xa > right):
            raise DomainError(f"{self.name}: x above the hard wall at {right}")
        values = self._values(xa)
        if np.ndim(x) == 0:
            return float(values)
        return values

    def minimum(self) -> float:
        raise NotImplementedError

    def turning_points(self, energy: float) -> list[float]:
        raise NotImplementedError


@dataclass(frozen=True)
class InfiniteWell(Potential):
    """V = 0 on [0, width], hard walls at both edges."""

    width: float = math.pi
    piecewise_constant = True

    def __post_init__(self):
        _require_positive(width=self.width)

    @property
    def walls(self):
        return (0.0, self.width)

    def _values(self, x):
        return np.zeros_like(x)

    def minimum(self):
        return 0.0

    def turning_points(self, energy):
        # the classical particle bounces off the walls themselves
        return [0.0, self.width] if energy > 0 else []


@dataclass(frozen=True)
class Harmonic(Potential):
    """V = k x^2 / 2."""

    stiffness: float = 1.0

    def __post_init__(self):
        _require_positive(stiffness=self.stiffness)

    def _values(self, x):
        return 0.5 * self.stiffness * x * x

    def minimum(self):
        return 0.0

    def turning_points(self, energy):
        if energy < 0:
            return []
        r = math.sqrt(2.0 * energy / self.stiffness)
        return [-r, r] if r > 0 else [0.0]


@dataclass(frozen=True)
class FiniteWell(Potential):
    """V = -depth for |x| < width/2 and 0 elsewhere."""

    depth: float = 1.0
    width: float = 2.0
    piecewise_constant = True

    def __post_init__(self):
        _require_positive(depth=self.depth, width=self.width)

    def _values(self, x):
        return np.where(np.abs(x) < 0.5 * self.width, -self.depth, 0.0)

    def minimum(self):
        return -self.depth

    def turning_points(self, energy):
        if -self.depth < energy < 0:
            return [-0.5 * self.width, 0.5 * self.width]
        return []


@dataclass(frozen=True)
class LinearRamp(Potential):
    """V = slope * x for x >= 0 with a hard wall at x = 0."""

    slope: float = 1.0

    def __post_init__(self):
        _require_positive(slope=self.slope)

    @property
    def walls(self):
        return (0.0, None)

    def _values(self, x):
        return self.slope * x

    def minimum(self):
        return 0.0

    def turning_points(self, energy):
        return [energy / self.slope] if energy > 0 else []


@dataclass(frozen=True)
class StepBarrier(Potential):
    """Semi-infinite rectangular barrier: V = 0 for x < 0, V = height for x >= 0."""

    height: float = 2.0
    piecewise_constant = True

    def __post_init__(self):
        _require_positive(height=self.height)

    def _values(self, x):
        return np.where(x < 0, 0.0, self.height)

    def minimum(self):
        return 0.0

    def turning_points(self, energy):
        return [0.0] if 0 < energy < self.height else []


def potential_eval(model: Potential, x):
    """Evaluate V(x); raises DomainError outside hard walls."""
    return model(x)


def turning_points(model: Potential, energy: float) -> list[float]:
    """Sorted classical turning points (roots of V(x) = E, or the walls of a box)."""
    return sorted(model.turning_points(float(energy)))


_POTENTIAL_ALIASES = {
    "infinite-well": (InfiniteWell, {"L": "width", "width": "width"}),
    "harmonic": (Harmonic, {"k": "stiffness", "stiffness": "stiffness"}),
    "finite-well": (FiniteWell, {"V0": "depth", "depth": "depth", "L": "width", "width": "width"}),
    "linear-ramp": (LinearRamp, {"g": "slope", "slope": "slope"}),
    "step": (StepBarrier, {"V0": "height", "height": "height"}),
}


def parse_potential(text: str) -> Potential:
    """Build a potential from ``"name:key=value,key=value"``.

    Names: infinite-well (L), harmonic (k), finite-well (V0, L),
    linear-ramp (g), step (V0).
    """
    name, _, rest = text.strip().partition(":")
    try:
        cls, aliases = _POTENTIAL_ALIASES[name]
    except KeyError:
        raise ValidationError(
            f"unknown potential {name!r}; choose from {sorted(_POTENTIAL_ALIASES)}"
        ) from None
    kwargs = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, sep, value = item.partition("=")
        if not sep or key not in aliases:
            raise ValidationError(f"bad parameter {item!r} for potential {name!r}")
        try:
            kwargs[aliases[key]] = float(value)
        except ValueError:
            raise ValidationError(f"parameter {key} of {name!r} is not a number: {value!r}") from None
    return cls(**kwargs)


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [x_min, x_max] with n_points nodes (both bounds included)."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise ValidationError("grid bounds must be finite")
        if not self.x_min < self.x_max:
            raise ValidationError(f"grid needs x_min < x_max, got {self.x_min} >= {self.x_max}")
        if int(self.n_points) != self.n_points or self.n_points < 3:
            raise ValidationError(f"grid needs an integer n_points >= 3, got {self.n_points}")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @cached_property
    def x(self) -> np.ndarray:
        pts = np.linspace(self.x_min, self.x_max, self.n_points)
        pts.flags.writeable = False
        return pts

    @cached_property
    def midpoints(self) -> np.ndarray:
        mids = 0.5 * (self.x[:-1] + self.x[1:])
        mids.flags.writeable = False
        return mids

    def index_of(self, x0: float) -> int:
        """Index of the grid node nearest to x0."""
        return int(np.clip(round((x0 - self.x_min) / self.h), 0, self.n_points - 1))

    def contains(self, x0: float) -> bool:
        return self.x_min <= x0 <= self.x_max

    def refined(self) -> Grid:
        """Same interval with the spacing halved."""
        return Grid(self.x_min, self.x_max, 2 * self.n_points - 1)


def make_grid(x_min: float, x_max: float, n_points: int) -> Grid:
    return Grid(float(x_min), float(x_max), n_points)
