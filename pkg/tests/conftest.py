"""Shared fixtures: the harmonic eigen pairs are the expensive part, so solve them once."""

from __future__ import annotations

import math

import pytest

from qhjtraj import Harmonic, InfiniteWell, PhysicalConstants, closed_form_pair, make_grid
from qhjtraj.schrodinger import eigen_pair, find_eigenvalue

UNIT = PhysicalConstants()


@pytest.fixture(scope="session")
def units():
    return UNIT


@pytest.fixture(scope="session")
def harmonic():
    return Harmonic(1.0)


@pytest.fixture(scope="session")
def harmonic_grid():
    # h = 1e-3 on [-10, 10]
    return make_grid(-10.0, 10.0, 20001)


@pytest.fixture(scope="session")
def harmonic_levels(harmonic, harmonic_grid):
    """Eigen solutions n = 0..5 keyed by level."""
    return {n: find_eigenvalue(harmonic, UNIT, n, harmonic_grid, (n, n + 1)) for n in range(6)}


@pytest.fixture(scope="session")
def harmonic_pairs(harmonic_levels):
    return {n: eigen_pair(e) for n, e in harmonic_levels.items()}


@pytest.fixture(scope="session")
def well():
    return InfiniteWell(math.pi)


@pytest.fixture(scope="session")
def well_grid():
    return make_grid(0.0, math.pi, 2001)


@pytest.fixture(scope="session")
def well_pair(well, well_grid):
    """Exact basis sin x, -cos x at E = 1/2 (Wronskian 1)."""
    return closed_form_pair(well, UNIT, 0.5, well_grid)


_ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
