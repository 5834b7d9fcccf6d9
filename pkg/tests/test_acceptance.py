"""Acceptance criteria 1-10, each at its stated tolerance.

Every test prints one PASS/FAIL line (also collected into the terminal
summary) before asserting, so a failing criterion still reports its
measured value.
"""

import math
import time
from dataclasses import replace
from pathlib import Path

import numpy as np
import pytest
from conftest import record_acceptance
from scipy.integrate import simpson

from qhjtraj import (
    DegenerateFamily,
    Harmonic,
    InfiniteWell,
    Microstate,
    PhysicalConstants,
    StepBarrier,
    canonical_microstate,
    closed_form_pair,
    conjugate_momentum,
    integrate_pair,
    make_grid,
    microstate_from_initial_conditions,
    microstate_to_superposition,
    random_microstates,
    scale_wronskian,
    time_of_transit,
)
from qhjtraj.cli import main as cli_main
from qhjtraj.schrodinger import decaying_solution, eigen_pair, find_eigenvalue, pair_from_solution
from qhjtraj.verify import (
    action_increment,
    boundary_node_check,
    microstate_invariance_check,
    qshje_residual,
    substitution_residuals,
)

U = PhysicalConstants()
R2 = math.sqrt(2.0)
WELL = InfiniteWell(math.pi)
OSC = Harmonic(1.0)
SEED = 20240601
ELAPSED: dict[int, float] = {}


def _report(number, title, passed, detail, seconds):
    ELAPSED[number] = seconds
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {title}: {detail} ({seconds:.2f} s)"
    print(line)
    record_acceptance(line)
    return passed


def test_criterion_01_closed_form_well_identity():
    t0 = time.perf_counter()
    grid = make_grid(0.0, math.pi, 2001)
    ms = Microstate(R2, R2, 0.0)
    pair = scale_wronskian(closed_form_pair(WELL, U, 0.5, grid), ms)
    wp = conjugate_momentum(pair, ms).samples
    err = float(np.max(np.abs(wp - math.sqrt(2 * 0.5))))
    dt = time.perf_counter() - t0
    ok = _report(1, "closed-form well W' = sqrt(2E)", err <= 1e-12 and dt < 1.0,
                 f"max|W'-1| = {err:.1e} (tol 1e-12), runtime < 1 s", dt)
    assert ok


def test_criterion_02_microstate_invariance():
    t0 = time.perf_counter()
    grid = make_grid(-10.0, 10.0, 20001)
    worst = 0.0
    failures = []
    for n in range(6):
        rep = microstate_invariance_check(OSC, n, random_microstates(10, SEED + n), grid, 1e-6, U,
                                          bracket=(n, n + 1))
        worst = max(worst, rep.max_deviation)
        if not rep.passed:
            failures.append(n)
    dt = time.perf_counter() - t0
    ok = _report(2, "microstate invariance, Harmonic n=0..5 x 10 microstates",
                 not failures and dt < 20.0,
                 f"max deviation {worst:.1e} (tol 1e-6) at h=1e-3, runtime < 20 s", dt)
    assert ok


def _osc_residual(n_points, ms):
    grid = make_grid(-10.0, 10.0, n_points)
    pair = eigen_pair(find_eigenvalue(OSC, U, 0, grid, (0.0, 1.0)))
    return qshje_residual(scale_wronskian(pair, ms), ms).max_abs


def test_criterion_03_qshje_residual():
    t0 = time.perf_counter()
    microstates = [Microstate(2.0, 1.0, 0.0)] + random_microstates(5, SEED)
    grid = make_grid(0.0, math.pi, 2001)
    closed = max(qshje_residual(scale_wronskian(closed_form_pair(WELL, U, e, grid), ms), ms).max_abs
                 for e in (0.5, 2.0, 4.5) for ms in microstates)

    fine = make_grid(-10.0, 10.0, 20001)
    numeric = 0.0
    for n in range(6):
        pair = eigen_pair(find_eigenvalue(OSC, U, n, fine, (n, n + 1)))
        for ms in microstates:
            numeric = max(numeric, qshje_residual(scale_wronskian(pair, ms), ms).max_abs)
    outward = integrate_pair(OSC, U, 0.5, fine, 0.0, (1.0, 0.0, 0.0, 1.0))
    for ms in microstates:
        numeric = max(numeric, qshje_residual(scale_wronskian(outward, ms), ms).max_abs)

    # order measured where truncation dominates; at h = 1e-3 the residual is at the roundoff floor
    ms = microstates[1]
    seq = [_osc_residual(n, ms) for n in (201, 401, 801)]
    order = min(math.log2(seq[i] / seq[i + 1]) for i in range(2))
    dt = time.perf_counter() - t0
    ok = closed <= 1e-10 and numeric <= 1e-7 and order >= 3.5
    _report(3, "QSHJE residual", ok,
            f"closed form {closed:.1e} (tol 1e-10); RK4 Harmonic h=1e-3 {numeric:.1e} (tol 1e-7); "
            f"observed order {order:.2f} on h=0.1/0.05/0.025 (min 3.5)", dt)
    assert ok


def test_criterion_04_substitution_identity():
    t0 = time.perf_counter()
    grid = make_grid(0.0, math.pi, 2001)
    base = closed_form_pair(WELL, U, 0.5, grid)
    clean = 0.0
    for ms in [Microstate(2.0, 1.0, 0.0)] + random_microstates(5, SEED):
        clean = max(clean, max(substitution_residuals(scale_wronskian(base, ms), ms).per_term.values()))

    ms = Microstate(2.0, 1.0, 0.0)
    scaled = scale_wronskian(base, ms)
    bad_theta = substitution_residuals(replace(scaled, theta=scaled.theta + 0.01 * grid.x), ms).per_term
    theta_only = (bad_theta["theta_equation"] > 1e-3 and bad_theta["phi_equation"] <= 1e-12
                  and bad_theta["wronskian_normalization"] <= 1e-12)

    lop = Microstate(1.0, 1.0, 0.0)
    predicted = abs(base.wronskian**2 * lop.det / 2.0 - 1.0)
    unscaled = substitution_residuals(base, lop).per_term
    w_only = (abs(unscaled["wronskian_normalization"] - predicted) <= 1e-15 and predicted > 0.1
              and unscaled["phi_equation"] <= 1e-12 and unscaled["theta_equation"] <= 1e-12)
    dt = time.perf_counter() - t0
    ok = clean <= 1e-12 and theta_only and w_only
    _report(4, "substitution identity", ok,
            f"closed-form terms {clean:.1e} (tol 1e-12); non-solution theta trips only theta term "
            f"({bad_theta['theta_equation']:.1e}); unscaled pair trips only Wronskian term "
            f"({unscaled['wronskian_normalization']:.3f} = predicted {predicted:.3f})", dt)
    assert ok


def test_criterion_05_eigenvalues():
    t0 = time.perf_counter()
    osc_grid = make_grid(-10.0, 10.0, 20001)
    osc = max(abs(find_eigenvalue(OSC, U, n, osc_grid).energy - (n + 0.5)) for n in range(6))
    well_grid = make_grid(0.0, math.pi, 8001)
    well = max(abs(find_eigenvalue(WELL, U, n, well_grid).energy - (n + 1) ** 2 / 2) for n in range(6))
    dt = time.perf_counter() - t0
    ok = osc <= 1e-9 and well <= 1e-10
    _report(5, "eigenvalues", ok,
            f"Harmonic n=0..5 max err {osc:.1e} (tol 1e-9); InfiniteWell n=0..5 max err {well:.1e} "
            f"(tol 1e-10)", dt)
    assert ok


def test_criterion_06_action_increment():
    t0 = time.perf_counter()
    microstates = random_microstates(10, SEED)
    grid = make_grid(0.0, math.pi, 2001)
    closed_err, spread = 0.0, 0.0
    for n in range(5):
        k = n + 1
        pair = closed_form_pair(WELL, U, k * k / 2, grid)
        vals = [action_increment(scale_wronskian(pair, ms), ms) for ms in microstates]
        closed_err = max(closed_err, max(abs(v - k * math.pi) for v in vals))
        spread = max(spread, max(vals) - min(vals))

    osc_grid = make_grid(-10.0, 10.0, 20001)
    quad_err = 0.0
    for n in range(4):
        pair = eigen_pair(find_eigenvalue(OSC, U, n, osc_grid, (n, n + 1)))
        vals = []
        for ms in microstates:
            wp = conjugate_momentum(scale_wronskian(pair, ms), ms).samples
            vals.append(float(simpson(wp, x=osc_grid.x)))
        quad_err = max(quad_err, max(abs(v - (n + 1) * math.pi) for v in vals))
        spread = max(spread, max(vals) - min(vals))
    dt = time.perf_counter() - t0
    ok = closed_err <= 1e-12 and quad_err <= 1e-4 and spread <= 1e-6
    _report(6, "action increment (n+1) pi", ok,
            f"InfiniteWell n=0..4 closed form err {closed_err:.1e} (tol 1e-12); Harmonic n=0..3 "
            f"quadrature err {quad_err:.1e} (tol 1e-4); spread across microstates {spread:.1e} (tol 1e-6)",
            dt)
    assert ok


def test_criterion_07_trajectory_oracle():
    t0 = time.perf_counter()
    grid = make_grid(0.0, math.pi, 2001)
    energy = 0.5
    line = grid.x * math.sqrt(1.0 / (2.0 * energy))
    err = 0.0
    for ms in (Microstate(R2, R2, 0.0), Microstate(3.0, 3.0, 0.0)):
        curve = time_of_transit(WELL, U, ms, energy, grid, convention="closed-form-family")
        err = max(err, float(np.max(np.abs(curve.t_minus_tau - line))))

    ms = Microstate(R2, R2, 0.0)
    t = [time_of_transit(WELL, U, ms, energy, grid, convention="closed-form-family", delta_E=d,
                         check=False).t_minus_tau for d in (1e-2, 5e-3, 2.5e-3)]
    d1, d2 = np.abs(t[0] - t[1]), np.abs(t[1] - t[2])
    # at x = 0 every step gives t = 0 exactly; there is no truncation error to shrink
    moving = d2 > 0
    factor = float(np.min(d1[moving] / d2[moving]))

    other = time_of_transit(WELL, U, Microstate(2.0, 1.0, 0.0), energy, grid,
                            convention="closed-form-family").t_minus_tau
    split = float(np.max(np.abs(other - line)))
    dt = time.perf_counter() - t0
    ok = err <= 1e-6 and factor >= 3.5 and split > 1e-6
    _report(7, "trajectory oracle t = x sqrt(m/2E)", ok,
            f"max err {err:.1e} (tol 1e-6); min Richardson factor {factor:.3f} (min 3.5, "
            f"{int(moving.sum())} allowed-region points); distinct rays differ by {split:.3f} (> 1e-6)", dt)
    assert ok


def test_criterion_08_initial_value_dichotomy():
    t0 = time.perf_counter()
    grid = make_grid(0.0, math.pi, 2001)
    x0 = math.pi / 2
    pair = integrate_pair(WELL, U, 0.5, grid, x0, (1.0, 0.0, 0.0, 1.0))
    i = grid.index_of(x0)
    unique = microstate_from_initial_conditions(1.0, 1j, pair, x0)
    direct = float(np.max(np.abs(np.array(unique.as_tuple()) - [R2, R2, 0.0])))
    worst = 0.0
    for ms in random_microstates(100, SEED):
        co = microstate_to_superposition(ms)
        psi0 = co.alpha * pair.phi[i] + co.beta * pair.theta[i]
        dpsi0 = co.alpha * pair.phi_prime[i] + co.beta * pair.theta_prime[i]
        back = np.array(microstate_from_initial_conditions(psi0, dpsi0, pair, x0).as_tuple())
        want = np.array(canonical_microstate(ms, pair.wronskian, U).as_tuple())
        worst = max(worst, float(np.max(np.abs(back - want) / np.maximum(np.abs(want), 1.0))))
    degenerate = isinstance(microstate_from_initial_conditions(1.0, 0.0, pair, x0), DegenerateFamily)
    dt = time.perf_counter() - t0
    ok = direct <= 1e-9 and worst <= 1e-9 and degenerate
    _report(8, "initial-value dichotomy", ok,
            f"(1, i) -> (sqrt2, sqrt2, 0) err {direct:.1e}; round trip over 100 microstates "
            f"{worst:.1e} (tol 1e-9); zero-current data -> DegenerateFamily: {degenerate}", dt)
    assert ok


def test_criterion_09_step_barrier():
    t0 = time.perf_counter()
    energy, height = 1.0, 2.0
    model = StepBarrier(height)
    grid = make_grid(-10.0, 10.0, 20001)
    phi, dphi = decaying_solution(model, U, energy, grid)
    ms = Microstate(1.0, 1.0, 0.0)
    pair = scale_wronskian(pair_from_solution(model, U, energy, grid, phi, dphi), ms)
    nodes = boundary_node_check(pair, ms)
    right = nodes.side("right")

    k, kappa = math.sqrt(2 * energy), math.sqrt(2 * (height - energy))
    left = grid.x < 0
    basis = np.column_stack([np.cos(k * grid.x[left]), np.sin(k * grid.x[left])])
    (p, q), *_ = np.linalg.lstsq(basis, phi[left], rcond=None)
    r = complex(p, q) / complex(p, -q)
    r_exact = (1j * k + kappa) / (1j * k - kappa)
    mod_err, val_err = abs(abs(r) - 1.0), abs(r - r_exact)
    dt = time.perf_counter() - t0
    ok = (right.kind == "node" and right.monotone and right.frontier_ratio < 1e-6
          and nodes.side("left").kind == "open" and mod_err <= 1e-9 and val_err <= 1e-9)
    _report(9, "step-barrier nodal singularity", ok,
            f"W' decreasing into barrier: {right.monotone}, frontier W'/max {right.frontier_ratio:.1e} "
            f"(< 1e-6); ||r|-1| {mod_err:.1e}, |r - r_exact| {val_err:.1e} (tol 1e-9)", dt)
    assert ok


def test_criterion_10_runtime(tmp_path):
    missing = sorted(set(range(1, 10)) - set(ELAPSED))
    t0 = time.perf_counter()
    codes = [cli_main(["--scenario", s, "--out", str(Path(tmp_path) / s)])
             for s in ("bound-microstates", "initial-value-unique", "step-barrier-node")]
    cli = time.perf_counter() - t0
    total = sum(ELAPSED.values()) + cli
    ok = not missing and total < 60.0 and codes == [0, 0, 0]
    _report(10, "full verification suite under 60 s", ok,
            f"criteria 1-9 {sum(ELAPSED.values()):.1f} s + three CLI scenarios {cli:.1f} s = {total:.1f} s "
            f"(limit 60 s); CLI exit codes {codes}", total)
    assert ok, f"criteria not run in this session: {missing}" if missing else None
