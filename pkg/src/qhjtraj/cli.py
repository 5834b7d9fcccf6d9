"""Command-line frontend: run one scenario, write CSV curves and a JSON report.

Exit codes: 0 when every check passes, 1 when any check fails, 2 for usage
errors (raised before any computation), 3 when a precondition fails mid-run.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from . import __version__
from .errors import QHJError, StepSizeError, ValidationError
from .model import Grid, PhysicalConstants, Potential, parse_potential
from .qhj import (
    DegenerateFamily,
    Microstate,
    characteristic_function,
    conjugate_momentum,
    microstate_from_initial_conditions,
    microstate_to_superposition,
    random_microstates,
    reconstruct_polar,
    superposition_from_initial_conditions,
)
from .schrodinger import (
    decaying_solution,
    eigen_pair,
    find_eigenvalue,
    integrate_pair,
    pair_from_solution,
    scale_wronskian,
)
from .trajectory import time_of_transit
from .verify import (
    action_increment,
    boundary_node_check,
    microstate_invariance_check,
    qshje_residual,
    substitution_residuals,
)

__all__ = ["SCENARIOS", "ScenarioConfig", "OutputBundle", "parse_args", "run_scenario", "main"]

SCENARIOS = ("bound-microstates", "initial-value-unique", "step-barrier-node")
CSV_HEADER = ("x", "V", "phi", "theta", "Wp", "W", "psi_re", "psi_im", "t")

DEFAULT_TOLERANCES = {
    "invariance": 1e-6,
    "residual": 1e-7,
    "substitution": 1e-6,
    "node": 1e-6,
    "action": 1e-4,
    "action_spread": 1e-6,
    "roundtrip": 1e-9,
    "initial_data": 1e-12,
    "reflection": 1e-9,
}

_SCENARIO_DEFAULTS = {
    "bound-microstates": {"potential": "harmonic:k=1", "grid": (-10.0, 10.0, 20001), "level": 0},
    "initial-value-unique": {"potential": f"infinite-well:L={math.pi!r}",
                             "grid": (0.0, math.pi, 2001), "energy": 0.5,
                             "psi0": 1 + 0j, "dpsi0": 1j},
    "step-barrier-node": {"potential": "step:V0=2", "grid": (-10.0, 10.0, 20001), "energy": 1.0,
                          "microstates": [(1.0, 1.0, 0.0)]},
}


@dataclass
class ScenarioConfig:
    scenario: str
    potential: str
    grid: tuple[float, float, int]
    hbar: float = 1.0
    mass: float = 1.0
    level: int | None = None
    energy: float | None = None
    microstates: list[tuple[float, float, float]] = field(default_factory=list)
    random_ms: int | None = None
    seed: int = 0
    delta_e: float | None = None
    out: str = "qhj-out"
    tol: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    psi0: complex | None = None
    dpsi0: complex | None = None
    x0: float | None = None

    def build_model(self) -> Potential:
        return parse_potential(self.potential)

    def build_grid(self) -> Grid:
        return Grid(*self.grid)

    def build_constants(self) -> PhysicalConstants:
        return PhysicalConstants(self.hbar, self.mass)

    def build_microstates(self) -> list[Microstate]:
        explicit = [Microstate(*t) for t in self.microstates]
        seeded = random_microstates(self.random_ms, self.seed) if self.random_ms else []
        return explicit + seeded

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("psi0", "dpsi0"):
            if d[key] is not None:
                d[key] = [d[key].real, d[key].imag]
        d["grid"] = list(d["grid"])
        d["microstates"] = [list(t) for t in d["microstates"]]
        return d


@dataclass
class OutputBundle:
    directory: Path
    csv_files: list[Path]
    json_files: list[Path]
    manifest_path: Path
    report: dict
    exit_code: int


# ---------------------------------------------------------------- parsing

def _parse_complex(text) -> complex:
    if isinstance(text, (list, tuple)) and len(text) == 2:
        return complex(float(text[0]), float(text[1]))
    if isinstance(text, (int, float, complex)):
        return complex(text)
    try:
        return complex(str(text).strip().replace(" ", "").replace("i", "j"))
    except ValueError:
        raise ValidationError(f"not a complex number: {text!r}") from None


def _parse_grid(text: str) -> tuple[float, float, int]:
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ValidationError(f"grid must be min:max:n, got {text!r}")
    try:
        n = int(parts[2])
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise ValidationError(f"grid must be min:max:n with integer n, got {text!r}") from None
    return lo, hi, n


def _parse_triple(text) -> tuple[float, float, float]:
    if isinstance(text, (list, tuple)):
        parts = list(text)
    else:
        parts = str(text).split(",")
    if len(parts) != 3:
        raise ValidationError(f"microstate must be a,b,c, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except (TypeError, ValueError):
        raise ValidationError(f"microstate entries must be numbers, got {text!r}") from None


def _parse_tol(text: str) -> tuple[str, float]:
    name, sep, value = str(text).partition("=")
    if not sep:
        raise ValidationError(f"tolerance must be NAME=VALUE, got {text!r}")
    if name not in DEFAULT_TOLERANCES:
        raise ValidationError(f"unknown tolerance {name!r}; choose from {sorted(DEFAULT_TOLERANCES)}")
    try:
        tol = float(value)
    except ValueError:
        raise ValidationError(f"tolerance {name} is not a number: {value!r}") from None
    if not tol > 0:
        raise ValidationError(f"tolerance {name} must be positive")
    return name, tol


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qhjtraj", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="JSON file supplying any option below (flags override)")
    p.add_argument("--scenario", choices=SCENARIOS)
    p.add_argument("--potential", help='e.g. "harmonic:k=1", "infinite-well:L=3.14", "step:V0=2"')
    level = p.add_mutually_exclusive_group()
    level.add_argument("--level", type=int, help="bound level n (0 = ground state)")
    level.add_argument("--energy", type=float)
    p.add_argument("--grid", help="min:max:n")
    p.add_argument("--microstate", action="append", metavar="A,B,C", help="repeatable")
    p.add_argument("--random-ms", type=int, metavar="N")
    p.add_argument("--seed", type=int)
    p.add_argument("--delta-e", type=float)
    p.add_argument("--out", metavar="DIR", help="output directory (fallback: $QHJ_OUT_DIR)")
    p.add_argument("--tol", action="append", metavar="NAME=VALUE")
    p.add_argument("--hbar", type=float)
    p.add_argument("--mass", type=float)
    p.add_argument("--psi0", help="complex initial value, e.g. 1 or 0.5+1i")
    p.add_argument("--dpsi0", help="complex initial slope")
    p.add_argument("--x0", type=float, help="initial-data point (default: grid centre)")
    return p


def _load_config_file(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ValidationError("config file must hold a JSON object")
    known = {f.name for f in fields(ScenarioConfig)} | {"microstate", "random-ms", "delta-e"}
    unknown = set(data) - known
    if unknown:
        raise ValidationError(f"unknown config keys: {sorted(unknown)}")
    return {k.replace("-", "_"): v for k, v in data.items()}


def _merge(args: argparse.Namespace) -> dict:
    raw = _load_config_file(args.config) if args.config else {}
    flags = {k: v for k, v in vars(args).items() if v is not None and k != "config"}
    if "tol" in flags:
        merged = dict(raw.get("tol", {}))
        merged.update(_parse_tol(t) for t in flags["tol"])
        flags["tol"] = merged
    if "microstate" in flags:
        raw.pop("microstates", None)
    if "level" in flags:
        raw.pop("energy", None)
    if "energy" in flags:
        raw.pop("level", None)
    raw.update(flags)
    return raw


def _validate(raw: dict) -> ScenarioConfig:
    scenario = raw.get("scenario")
    if scenario not in SCENARIOS:
        raise ValidationError(f"scenario must be one of {SCENARIOS}, got {scenario!r}")
    defaults = _SCENARIO_DEFAULTS[scenario]

    grid = raw.get("grid", defaults["grid"])
    grid = _parse_grid(grid) if isinstance(grid, str) else tuple(grid)
    Grid(*grid)

    micro = raw.get("microstate", raw.get("microstates"))
    micro = [_parse_triple(t) for t in micro] if micro else []
    for t in micro:
        Microstate(*t)
    random_ms = raw.get("random_ms")
    if random_ms is not None and int(random_ms) < 0:
        raise ValidationError("--random-ms must be >= 0")
    if not micro and not random_ms:
        micro = list(defaults.get("microstates", []))
        if not micro:
            random_ms = 10

    tol = dict(DEFAULT_TOLERANCES)
    given = raw.get("tol", {})
    items = given.items() if isinstance(given, dict) else (_parse_tol(t) for t in given)
    for name, value in items:
        name, value = _parse_tol(f"{name}={value}")
        tol[name] = value

    level, energy = raw.get("level"), raw.get("energy")
    if level is not None and energy is not None:
        raise ValidationError("give either a level or an energy, not both")
    if level is None and energy is None:
        level, energy = defaults.get("level"), defaults.get("energy")
    if level is not None and int(level) < 0:
        raise ValidationError(f"level must be >= 0, got {level}")
    if scenario == "step-barrier-node" and level is not None:
        raise ValidationError("step-barrier-node takes an energy, not a level")

    cfg = ScenarioConfig(
        scenario=scenario,
        potential=str(raw.get("potential", defaults["potential"])),
        grid=(float(grid[0]), float(grid[1]), int(grid[2])),
        hbar=float(raw.get("hbar", 1.0)),
        mass=float(raw.get("mass", 1.0)),
        level=None if level is None else int(level),
        energy=None if energy is None else float(energy),
        microstates=micro,
        random_ms=None if random_ms is None else int(random_ms),
        seed=int(raw.get("seed", 0)),
        delta_e=None if raw.get("delta_e") is None else float(raw["delta_e"]),
        out=str(raw.get("out") or os.environ.get("QHJ_OUT_DIR") or "qhj-out"),
        tol=tol,
        psi0=_parse_complex(raw.get("psi0", defaults.get("psi0", 1))),
        dpsi0=_parse_complex(raw.get("dpsi0", defaults.get("dpsi0", 1j))),
        x0=None if raw.get("x0") is None else float(raw["x0"]),
    )
    if cfg.delta_e is not None and not cfg.delta_e > 0:
        raise ValidationError("--delta-e must be positive")
    if cfg.psi0 == 0 and cfg.dpsi0 == 0:
        raise ValidationError("initial data psi0 = dpsi0 = 0 defines no state")

    model = cfg.build_model()
    cfg.build_constants()
    g = cfg.build_grid()
    left, right = model.walls
    if (left is not None and g.x_min < left) or (right is not None and g.x_max > right):
        raise ValidationError(f"grid [{g.x_min}, {g.x_max}] extends past the walls {model.walls}")
    if cfg.x0 is not None and not g.contains(cfg.x0):
        raise ValidationError(f"x0={cfg.x0} lies outside the grid")
    return cfg


def parse_args(argv: list[str] | None = None) -> ScenarioConfig:
    """Parse and validate command-line tokens; usage errors exit with status 2."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _validate(_merge(args))
    except (ValidationError, ValueError, TypeError) as exc:
        parser.error(str(exc))


# ---------------------------------------------------------------- output

def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _write_csv(path: Path, columns: dict[str, np.ndarray]) -> None:
    rows = np.column_stack([np.asarray(columns[name], dtype=float) for name in CSV_HEADER])
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def _json_safe(obj):
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return float(obj) if math.isfinite(obj) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def _write_json(path: Path, data: dict) -> None:
    with open(path, "w") as fh:
        json.dump(_json_safe(data), fh, indent=2, sort_keys=False, allow_nan=False)
        fh.write("\n")


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


class _Checks:
    def __init__(self):
        self.items: list[dict] = []

    def add(self, name: str, value: float, tolerance: float, passed: bool | None = None):
        if passed is None:
            passed = bool(math.isfinite(value) and value <= tolerance)
        self.items.append({"name": name, "value": float(value), "tolerance": float(tolerance),
                           "pass": bool(passed)})

    @property
    def all_passed(self) -> bool:
        return all(c["pass"] for c in self.items)


def _curve_columns(pair, ms, constants, t=None) -> dict[str, np.ndarray]:
    x = pair.grid.x
    left, right = pair.model.walls
    xv = np.clip(x, -np.inf if left is None else left, np.inf if right is None else right)
    psi = reconstruct_polar(pair, ms, constants)
    cf = characteristic_function(pair, ms, 0.0, constants)
    return {
        "x": x,
        "V": np.asarray(pair.model(xv), dtype=float),
        "phi": pair.phi,
        "theta": pair.theta,
        "Wp": conjugate_momentum(pair, ms, constants).samples,
        "W": cf.samples,
        "psi_re": psi.real,
        "psi_im": psi.imag,
        "t": np.full(x.shape, np.nan) if t is None else t,
    }


def _transit(cfg, model, constants, ms, energy, grid, pair, checks, label):
    """t - tau at fixed anchor conditions frozen from ``pair``; failures become checks."""
    try:
        curve = time_of_transit(model, constants, ms, energy, grid, pair.anchor_x0,
                                "fixed-anchor", cfg.delta_e, pair.anchor_conditions)
    except StepSizeError as exc:
        checks.add(f"richardson[{label}]", math.inf, 1e-4, False)
        print(f"warning: {exc}", file=sys.stderr)
        return None
    checks.add(f"richardson[{label}]", curve.richardson, 1e-4)
    return curve.t_minus_tau


# ---------------------------------------------------------------- scenarios

def _bound_microstates(cfg: ScenarioConfig, timings: dict):
    model, constants, grid = cfg.build_model(), cfg.build_constants(), cfg.build_grid()
    tol = cfg.tol
    checks, curves, results = _Checks(), {}, {}
    microstates = cfg.build_microstates()

    t0 = time.perf_counter()
    if cfg.level is None:
        raise ValidationError("bound-microstates needs a level")
    n = cfg.level
    eig = find_eigenvalue(model, constants, n, grid)
    base = eigen_pair(eig)
    results["energy"] = eig.energy
    results["level"] = n
    timings["eigen_solve"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    inv = microstate_invariance_check(model, n, microstates, grid, tol["invariance"], constants)
    timings["invariance"] = time.perf_counter() - t0
    for i, entry in enumerate(inv.entries):
        checks.add(f"invariance[{i}]", entry.deviation, tol["invariance"])

    t0 = time.perf_counter()
    target = (n + 1) * math.pi * constants.hbar
    increments = []
    for i, ms in enumerate(microstates):
        pair = scale_wronskian(base, ms, constants)
        checks.add(f"qshje_residual[{i}]", qshje_residual(pair, ms, constants).max_abs, tol["residual"])
        sub = substitution_residuals(pair, ms, constants)
        checks.add(f"substitution[{i}]", sub.max_abs, tol["substitution"])
        checks.add(f"wronskian_normalization[{i}]", sub.per_term["wronskian_normalization"],
                   tol["substitution"])
        nodes = boundary_node_check(pair, ms, constants)
        if nodes.applicable:
            ratios = [f.frontier_ratio for f in nodes.frontiers if f.kind == "node"]
            checks.add(f"boundary_node[{i}]", max(ratios, default=0.0), tol["node"], nodes.passed)
        cf = characteristic_function(pair, ms, 0.0, constants)
        dw = action_increment(pair, ms, cf, constants)
        increments.append(dw)
        checks.add(f"action_increment[{i}]", abs(dw - target), tol["action"])
        t = _transit(cfg, model, constants, ms, eig.energy, grid, base, checks, i)
        curves[f"curve_ms{i:03d}.csv"] = _curve_columns(pair, ms, constants, t)
    if increments:
        checks.add("action_spread", max(increments) - min(increments), tol["action_spread"])
    results["microstates"] = [ms.as_tuple() for ms in microstates]
    results["action_increments"] = increments
    results["action_target"] = target
    timings["per_microstate"] = time.perf_counter() - t0
    return checks, curves, results


def _initial_value_unique(cfg: ScenarioConfig, timings: dict):
    model, constants, grid = cfg.build_model(), cfg.build_constants(), cfg.build_grid()
    tol = cfg.tol
    checks, curves, results = _Checks(), {}, {}

    t0 = time.perf_counter()
    if cfg.energy is not None:
        energy = cfg.energy
    else:
        energy = find_eigenvalue(model, constants, cfg.level, grid).energy
    left, right = model.walls
    lo = grid.x_min if left is None else max(grid.x_min, left)
    hi = grid.x_max if right is None else min(grid.x_max, right)
    x0 = float(grid.x[grid.index_of(0.5 * (lo + hi) if cfg.x0 is None else cfg.x0)])
    pair = integrate_pair(model, constants, energy, grid, x0, (1.0, 0.0, 0.0, 1.0))
    results.update(energy=energy, x0=x0, psi0=cfg.psi0, dpsi0=cfg.dpsi0)

    raw = superposition_from_initial_conditions(cfg.psi0, cfg.dpsi0, pair, x0)
    i = grid.index_of(x0)
    fit = max(abs(raw.alpha * pair.phi[i] + raw.beta * pair.theta[i] - cfg.psi0),
              abs(raw.alpha * pair.phi_prime[i] + raw.beta * pair.theta_prime[i] - cfg.dpsi0))
    checks.add("initial_data_match", fit, tol["initial_data"])
    out = microstate_from_initial_conditions(cfg.psi0, cfg.dpsi0, pair, x0, constants)
    timings["inversion"] = time.perf_counter() - t0
    if isinstance(out, DegenerateFamily):
        scale = abs(out.alpha) * abs(out.beta)
        results["degenerate_family"] = {"alpha": out.alpha, "beta": out.beta,
                                        "current": out.current, "reason": out.reason}
        checks.add("degenerate_family", abs(out.current) / scale if scale else 0.0, 1e-12)
        return checks, curves, results

    ms = out
    results["microstate"] = ms.as_tuple()
    results["direction"] = ms.direction
    co = microstate_to_superposition(ms)
    psi = co.alpha * pair.phi[i] + co.beta * pair.theta[i]
    dpsi = co.alpha * pair.phi_prime[i] + co.beta * pair.theta_prime[i]
    # rebuilt data must be a complex multiple of the given data (conjugated for -x motion)
    given = (cfg.psi0, cfg.dpsi0) if ms.direction > 0 else (cfg.psi0.conjugate(), cfg.dpsi0.conjugate())
    cross = abs(psi * given[1] - dpsi * given[0]) / (abs(psi) * abs(given[1]) + abs(dpsi) * abs(given[0]))
    checks.add("initial_data_ray", cross, tol["roundtrip"])
    again = microstate_from_initial_conditions(psi, dpsi, pair, x0, constants)
    err = max(abs(u - v) / abs(v) if v else abs(u)
              for u, v in zip(again.as_tuple(), ms.as_tuple()))
    checks.add("roundtrip", err, tol["roundtrip"])

    scaled = scale_wronskian(pair, ms, constants)
    t = _transit(cfg, model, constants, ms, energy, grid, pair, checks, 0)
    curves["curve_ms000.csv"] = _curve_columns(scaled, ms, constants, t)
    return checks, curves, results


def _step_barrier_node(cfg: ScenarioConfig, timings: dict):
    model, constants, grid = cfg.build_model(), cfg.build_constants(), cfg.build_grid()
    tol = cfg.tol
    checks, curves, results = _Checks(), {}, {}
    energy = cfg.energy
    height = model.params().get("height")
    if height is None or not 0 < energy < height:
        raise ValidationError("step-barrier-node needs a step potential with 0 < E < V0")
    if not grid.x_min < 0 < grid.x_max:
        raise ValidationError("step-barrier-node needs a grid spanning x = 0")

    t0 = time.perf_counter()
    phi, dphi = decaying_solution(model, constants, energy, grid)
    pair = pair_from_solution(model, constants, energy, grid, phi, dphi)
    timings["solve"] = time.perf_counter() - t0

    k = math.sqrt(constants.kinetic_factor * energy)
    kappa = math.sqrt(constants.kinetic_factor * (height - energy))
    left = grid.x < 0
    basis = np.column_stack([np.cos(k * grid.x[left]), np.sin(k * grid.x[left])])
    (p, q), *_ = np.linalg.lstsq(basis, phi[left], rcond=None)
    r = complex(p, q) / complex(p, -q)
    r_exact = (1j * k + kappa) / (1j * k - kappa)
    results.update(reflection=r, reflection_exact=r_exact)
    checks.add("reflection_modulus", abs(abs(r) - 1.0), tol["reflection"])
    checks.add("reflection_vs_closed_form", abs(r - r_exact), tol["reflection"])

    for i, ms in enumerate(cfg.build_microstates()):
        scaled = scale_wronskian(pair, ms, constants)
        nodes = boundary_node_check(scaled, ms, constants)
        right, left_side = nodes.side("right"), nodes.side("left")
        checks.add(f"node_right[{i}]", right.frontier_ratio if right.kind == "node" else math.inf,
                   tol["node"], right.kind == "node" and bool(right.passed))
        checks.add(f"no_node_left[{i}]", 0.0 if left_side.kind == "open" else 1.0, 0.0)
        results.setdefault("frontiers", []).append(nodes.to_dict())
        t = _transit(cfg, model, constants, ms, energy, grid, pair, checks, i)
        curves[f"curve_ms{i:03d}.csv"] = _curve_columns(scaled, ms, constants, t)
    return checks, curves, results


_RUNNERS = {
    "bound-microstates": _bound_microstates,
    "initial-value-unique": _initial_value_unique,
    "step-barrier-node": _step_barrier_node,
}


def run_scenario(config: ScenarioConfig) -> OutputBundle:
    """Execute one scenario end to end and write its outputs.

    Files are written once all computation has finished: one CSV per curve,
    ``report.json`` and a ``manifest.json`` that lists every file with its
    SHA-256 checksum.
    """
    outdir = Path(config.out)
    outdir.mkdir(parents=True, exist_ok=True)
    timings: dict[str, float] = {}
    start = time.perf_counter()
    checks, curves, results = _RUNNERS[config.scenario](config, timings)
    timings["total"] = time.perf_counter() - start

    csv_files = []
    for name, columns in curves.items():
        path = outdir / name
        _write_csv(path, columns)
        csv_files.append(path)
    manifest = {
        "tool": "qhjtraj",
        "version": __version__,
        "config": config.to_dict(),
        "timings": timings,
        "files": [{"name": p.name, "sha256": _sha256(p)} for p in csv_files],
    }
    report = {"scenario": config.scenario, "checks": checks.items, "results": results,
              "manifest": manifest}
    report_path = outdir / "report.json"
    _write_json(report_path, report)
    full_manifest = dict(manifest)
    full_manifest["files"] = manifest["files"] + [{"name": report_path.name,
                                                   "sha256": _sha256(report_path)}]
    manifest_path = outdir / "manifest.json"
    _write_json(manifest_path, full_manifest)
    return OutputBundle(outdir, csv_files, [report_path], manifest_path, report,
                        0 if checks.all_passed else 1)


def main(argv: list[str] | None = None) -> int:
    config = parse_args(argv)
    try:
        bundle = run_scenario(config)
    except (QHJError, OSError) as exc:
        print(f"qhjtraj: precondition failed: {exc}", file=sys.stderr)
        return 3
    failed = [c["name"] for c in bundle.report["checks"] if not c["pass"]]
    status = "all checks passed" if not failed else f"{len(failed)} check(s) failed: {', '.join(failed)}"
    print(f"{config.scenario}: {status}; outputs in {bundle.directory}")
    return bundle.exit_code


if __name__ == "__main__":
    sys.exit(main())
