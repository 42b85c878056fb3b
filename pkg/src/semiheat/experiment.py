"""Config-driven sweep runner.

A config is a JSON object:

    {
      "manifold": {"kind": "sphere_zonal", "n": 2, "size": 1.0, "resolution": 256},
      "p_values": [2.0, 3.0],
      "scenarios": [
        {
          "name": "perturbed",
          "initial": {"type": "trivial_plus_mode",
                      "T_blow": 0.0, "t_start": -12.0, "eps": 0.05, "mode": 1},
          "window": {"t0": -12.0, "t1": -1.0},
          "controls": {"dt_max": 0.01, "snapshot_every": 1}
        }
      ],
      "checkers": [
        {"id": "decay", "T_blow": 0.0, "c_cap": 2.0},
        {"id": "positivity"}
      ],
      "out_dir": "runs",
      "seed": 0
    }

Initial-data recipes: "constant" (value), "trivial_plus_mode" (T_blow,
t_start, eps, mode), "talenti" (radial static profile, n >= 3),
"random_uniform" (low, high; drawn from the config seed), "custom"
(path to a one-value-per-line file matching the resolution).

The sweep runs every scenario at every p (cardinality = len(scenarios) *
len(p_values)).  Scenarios run in a bounded worker pool; a failing scenario
is recorded and never disturbs the others.  The report is written even when
checks fail: failures are the interesting output.  Everything in the report
except the "timing" block is a pure function of the config, and the config
hash is the sha256 of the canonicalized (key-sorted, compact) JSON text.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .estimates import (
    EstimateParams,
    check_decay,
    check_gradient_estimate,
    check_lower_bound_lemma,
    check_positivity_min_ode,
    check_triviality,
    check_universal,
    exponent_regime,
)
from .evolve import EvolveControls, SolverAbort, evolve
from .geometry import KINDS, build_manifold, laplacian_spectrum
from .reaction_ode import trivial_ancient

ENV_OUT_DIR = "SEMIHEAT_OUT_DIR"

_RECIPES = ("constant", "trivial_plus_mode", "talenti", "random_uniform", "custom")

_CHECKER_REQUIRED = {
    "positivity": (),
    "gradient": ("variant", "D"),
    "decay": ("T_blow",),
    "universal": ("T0", "T"),
    "lower_bound": ("delta", "L", "A", "r0", "C_delta_cap"),
    "triviality": (),
}


class ConfigError(ValueError):
    """Config validation failure; carries the offending field path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.field_path = path


@dataclass(frozen=True)
class ExperimentConfig:
    manifold: dict
    p_values: tuple
    scenarios: tuple
    checkers: tuple
    out_dir: str | None
    seed: int
    raw: dict


@dataclass
class RunReport:
    config_hash: str
    entries: list
    regimes: dict
    timing: dict = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        for entry in self.entries:
            if entry["status"] != "ok":
                return False
            for rep in entry["checks"].values():
                if rep.get("status") == "error" or not rep.get("passed", False):
                    return False
        return True

    def to_json_dict(self) -> dict:
        return {
            "config_hash": self.config_hash,
            "entries": self.entries,
            "regimes": self.regimes,
            "all_passed": self.all_passed,
            "timing": self.timing,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "RunReport":
        return cls(
            config_hash=d["config_hash"],
            entries=d["entries"],
            regimes=d.get("regimes", {}),
            timing=d.get("timing", {}),
        )


def config_hash(raw: dict) -> str:
    text = json.dumps(raw, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _require(d: dict, key: str, path: str):
    if key not in d:
        raise ConfigError(f"{path}.{key}", "missing required field")
    return d[key]


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, f"expected a number, got {value!r}")
    return float(value)


def validate_config(raw: dict) -> ExperimentConfig:
    """Validate a parsed config dict; errors name the offending field."""
    if not isinstance(raw, dict):
        raise ConfigError("<root>", "config must be a JSON object")

    man = _require(raw, "manifold", "<root>")
    if not isinstance(man, dict):
        raise ConfigError("manifold", "must be an object")
    kind = _require(man, "kind", "manifold")
    if kind not in KINDS:
        raise ConfigError("manifold.kind", f"unknown manifold kind {kind!r}")
    n = _require(man, "n", "manifold")
    if not isinstance(n, int) or n < 1:
        raise ConfigError("manifold.n", "must be a positive integer")
    size = _number(_require(man, "size", "manifold"), "manifold.size")
    if size <= 0:
        raise ConfigError("manifold.size", "must be positive")
    resolution = _require(man, "resolution", "manifold")
    if not isinstance(resolution, int) or resolution < 16:
        raise ConfigError("manifold.resolution", "must be an integer >= 16")

    p_values = raw.get("p_values", [])
    if not isinstance(p_values, list):
        raise ConfigError("p_values", "must be a list")
    for i, p in enumerate(p_values):
        if _number(p, f"p_values[{i}]") <= 1.0:
            raise ConfigError(f"p_values[{i}]", "exponent must exceed 1")

    scenarios = raw.get("scenarios", [])
    if not isinstance(scenarios, list):
        raise ConfigError("scenarios", "must be a list")
    seen_names = set()
    for i, sc in enumerate(scenarios):
        path = f"scenarios[{i}]"
        if not isinstance(sc, dict):
            raise ConfigError(path, "must be an object")
        name = _require(sc, "name", path)
        if not isinstance(name, str) or not name or not all(
            ch.isalnum() or ch in "_-" for ch in name
        ):
            raise ConfigError(f"{path}.name", "must match [A-Za-z0-9_-]+")
        if name in seen_names:
            raise ConfigError(f"{path}.name", f"duplicate scenario name {name!r}")
        seen_names.add(name)
        initial = _require(sc, "initial", path)
        if not isinstance(initial, dict):
            raise ConfigError(f"{path}.initial", "must be an object")
        recipe = _require(initial, "type", f"{path}.initial")
        if recipe not in _RECIPES:
            raise ConfigError(f"{path}.initial.type", f"unknown recipe {recipe!r}")
        if recipe == "constant":
            _number(_require(initial, "value", f"{path}.initial"), f"{path}.initial.value")
        elif recipe == "trivial_plus_mode":
            for key in ("T_blow", "t_start", "eps"):
                _number(_require(initial, key, f"{path}.initial"), f"{path}.initial.{key}")
            mode = _require(initial, "mode", f"{path}.initial")
            if not isinstance(mode, int) or mode < 0:
                raise ConfigError(f"{path}.initial.mode", "must be a nonnegative integer")
        elif recipe == "talenti":
            if kind != "euclidean_radial" or n < 3:
                raise ConfigError(
                    f"{path}.initial.type",
                    "talenti profile needs the euclidean_radial kind with n >= 3",
                )
        elif recipe == "random_uniform":
            lo = _number(_require(initial, "low", f"{path}.initial"), f"{path}.initial.low")
            hi = _number(_require(initial, "high", f"{path}.initial"), f"{path}.initial.high")
            if hi <= lo:
                raise ConfigError(f"{path}.initial.high", "must exceed low")
        elif recipe == "custom":
            _require(initial, "path", f"{path}.initial")
        window = _require(sc, "window", path)
        if not isinstance(window, dict):
            raise ConfigError(f"{path}.window", "must be an object")
        t0 = _number(_require(window, "t0", f"{path}.window"), f"{path}.window.t0")
        t1 = _number(_require(window, "t1", f"{path}.window"), f"{path}.window.t1")
        if t1 <= t0:
            raise ConfigError(f"{path}.window.t1", "must exceed t0")
        controls = sc.get("controls", {})
        if not isinstance(controls, dict):
            raise ConfigError(f"{path}.controls", "must be an object")
        unknown = set(controls) - {"dt_max", "blow_threshold", "reaction_on", "snapshot_every"}
        if unknown:
            raise ConfigError(f"{path}.controls", f"unknown control fields {sorted(unknown)}")

    checkers = raw.get("checkers", [])
    if not isinstance(checkers, list):
        raise ConfigError("checkers", "must be a list")
    for i, ck in enumerate(checkers):
        path = f"checkers[{i}]"
        if not isinstance(ck, dict):
            raise ConfigError(path, "must be an object")
        cid = _require(ck, "id", path)
        if cid not in _CHECKER_REQUIRED:
            raise ConfigError(f"{path}.id", f"unknown checker id {cid!r}")
        for key in _CHECKER_REQUIRED[cid]:
            if key not in ck:
                raise ConfigError(f"{path}.{key}", f"missing required field for checker {cid!r}")

    out_dir = raw.get("out_dir")
    if out_dir is not None and not isinstance(out_dir, str):
        raise ConfigError("out_dir", "must be a string")
    seed = raw.get("seed", 0)
    if not isinstance(seed, int):
        raise ConfigError("seed", "must be an integer")

    return ExperimentConfig(
        manifold={"kind": kind, "n": n, "size": size, "resolution": resolution},
        p_values=tuple(float(p) for p in p_values),
        scenarios=tuple(scenarios),
        checkers=tuple(checkers),
        out_dir=out_dir,
        seed=seed,
        raw=raw,
    )


def load_config(path: str) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError("<root>", f"invalid JSON: {exc}") from exc
    return validate_config(raw)


def _initial_data(m, recipe: dict, p: float, seed: int, entry_index: int) -> np.ndarray:
    kind = recipe["type"]
    if kind == "constant":
        return np.full(m.node_count, float(recipe["value"]))
    if kind == "trivial_plus_mode":
        bg = trivial_ancient(p, float(recipe["T_blow"]), float(recipe["t_start"]))
        _, modes = laplacian_spectrum(m)
        mode = int(recipe["mode"])
        if not 0 <= mode < modes.shape[1]:
            raise ValueError(f"mode index {mode} out of range for {modes.shape[1]} nodes")
        return bg * (1.0 + float(recipe["eps"]) * modes[:, mode])
    if kind == "talenti":
        c = float(m.n * (m.n - 2))
        return (c / (c + m.nodes**2)) ** ((m.n - 2) / 2.0)
    if kind == "random_uniform":
        rng = np.random.default_rng([seed, entry_index])
        return rng.uniform(float(recipe["low"]), float(recipe["high"]), m.node_count)
    values = np.loadtxt(recipe["path"], dtype=float).ravel()
    if values.size != m.node_count:
        raise ValueError(
            f"custom initial data has {values.size} values, manifold has {m.node_count} nodes"
        )
    return values


def _run_checker(cfg: dict, traj, p: float) -> dict:
    cid = cfg["id"]
    c_cap = float(cfg.get("c_cap", math.inf))
    if cid == "positivity":
        rep = check_positivity_min_ode(traj, p)
    elif cid == "gradient":
        params = EstimateParams(
            D=cfg.get("D"),
            K=cfg.get("K"),
            R=cfg.get("R"),
            T=cfg.get("T"),
            T0=cfg.get("T0"),
            u_floor=cfg.get("u_floor"),
        )
        rep = check_gradient_estimate(
            traj, params, cfg["variant"], p, c_cap=c_cap, grad_tol=float(cfg.get("grad_tol", 1e-6))
        )
    elif cid == "decay":
        rep = check_decay(traj, float(cfg["T_blow"]), p, c_cap=c_cap)
    elif cid == "universal":
        rep = check_universal(traj, float(cfg["T0"]), float(cfg["T"]), p, c_cap=c_cap)
    elif cid == "lower_bound":
        params = EstimateParams(
            K=cfg.get("K"),
            T=cfg.get("T"),
            delta=float(cfg["delta"]),
            L=float(cfg["L"]),
            A=float(cfg["A"]),
            r0=float(cfg["r0"]),
        )
        rep = check_lower_bound_lemma(traj, params, float(cfg["C_delta_cap"]), p)
    elif cid == "triviality":
        rep = check_triviality(
            traj,
            traj.manifold,
            p,
            rate_tol=float(cfg.get("rate_tol", 0.2)),
            osc_floor=float(cfg.get("osc_floor", 1e-10)),
        )
    else:
        raise ValueError(f"unknown checker id {cid!r}")
    return rep


def _run_entry(config: ExperimentConfig, scenario: dict, p: float, entry_index: int, out_dir: str):
    name = f"{scenario['name']}__p{p:g}"
    entry = {"name": name, "scenario": scenario["name"], "p": p, "status": "ok", "checks": {}}
    started = time.perf_counter()
    try:
        man = config.manifold
        m = build_manifold(man["kind"], man["n"], man["size"], man["resolution"])
        u0 = _initial_data(m, scenario["initial"], p, config.seed, entry_index)
        controls = EvolveControls(**scenario.get("controls", {}))
        window = scenario["window"]
        traj = evolve(m, u0, float(window["t0"]), float(window["t1"]), p, controls)
    except (SolverAbort, ValueError, FloatingPointError, OSError) as exc:
        entry["status"] = "error"
        entry["error"] = str(exc)
        entry["wall_seconds"] = time.perf_counter() - started
        return entry

    entry["trajectory"] = {
        "snapshot_count": int(traj.times.size),
        "step_count": int(traj.step_times.size),
        "first_time": float(traj.times[0]),
        "final_time": float(traj.times[-1]),
        "max_abs_value": float(np.max(np.abs(traj.snapshots))),
        "negative_data": bool(traj.negative_data),
        "blowup": None
        if traj.blowup is None
        else {"detected_time": traj.blowup.detected_time, "method": traj.blowup.method},
    }
    for cfg in config.checkers:
        cid = cfg["id"]
        try:
            rep = _run_checker(cfg, traj, p)
        except (ValueError, FloatingPointError) as exc:
            entry["checks"][cid] = {"status": "error", "error": str(exc)}
            continue
        d = rep.to_json_dict()
        d.pop("extras", None)
        d["status"] = "checked"
        entry["checks"][cid] = d
        csv_path = os.path.join(out_dir, f"{name}_{cid}.csv")
        with open(csv_path, "w", encoding="utf-8") as fh:
            fh.write("t,lhs,structural_rhs,ratio\n")
            for row in rep.csv_rows():
                fh.write(",".join(row) + "\n")
    entry["wall_seconds"] = time.perf_counter() - started
    return entry


def resolve_out_dir(config: ExperimentConfig, override: str | None = None) -> str:
    """--out-dir beats the config, the config beats the environment default."""
    if override:
        return override
    if config.out_dir:
        return config.out_dir
    return os.environ.get(ENV_OUT_DIR, ".")


def run_experiment(
    config: ExperimentConfig, out_dir: str | None = None, jobs: int = 1, verbose: bool = False
) -> RunReport:
    """Execute the sweep and write report JSON plus per-checker CSVs."""
    target = resolve_out_dir(config, out_dir)
    os.makedirs(target, exist_ok=True)
    digest = config_hash(config.raw)

    started = time.perf_counter()
    tasks = [
        (scenario, p) for scenario in config.scenarios for p in config.p_values
    ]
    entries = [None] * len(tasks)
    if tasks:
        with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
            futures = {
                pool.submit(_run_entry, config, scenario, p, i, target): i
                for i, (scenario, p) in enumerate(tasks)
            }
            for fut in futures:
                i = futures[fut]
                entries[i] = fut.result()
                if verbose:
                    e = entries[i]
                    print(f"  [{e['status']}] {e['name']}", flush=True)

    n = config.manifold["n"]
    regimes = {f"{p:g}": exponent_regime(n, p) for p in config.p_values}
    wall = time.perf_counter() - started
    report = RunReport(
        config_hash=digest,
        entries=entries,
        regimes={"n": n, "by_p": regimes},
        timing={
            "wall_seconds": wall,
            "per_entry": {e["name"]: e.pop("wall_seconds", None) for e in entries},
        },
    )
    report_path = os.path.join(target, f"report_{digest[:12]}.json")
    with open(report_path, "w", encoding="utf-8") as fh:
        json.dump(report.to_json_dict(), fh, sort_keys=True, indent=2)
        fh.write("\n")
    report.timing["report_path"] = report_path
    return report


def emit_plot_data(report: RunReport, which: str, out_dir: str = ".") -> list[str]:
    """Write one tidy CSV for checker ``which``: scenario, p, t, lhs,
    structural rhs, ratio per snapshot row.  Emitting twice is
    byte-identical."""
    present = {cid for entry in report.entries for cid in entry.get("checks", {})}
    if which not in _CHECKER_REQUIRED:
        raise ValueError(f"unknown checker id {which!r}")
    if report.entries and present and which not in present:
        raise ValueError(f"checker {which!r} not present in the report")
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"plot_{which}_{report.config_hash[:12]}.csv")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("scenario,p,t,lhs,structural_rhs,ratio\n")
        for entry in report.entries:
            rep = entry.get("checks", {}).get(which)
            if rep is None or rep.get("status") != "checked":
                continue
            for t, a, b, r in zip(rep["times"], rep["lhs"], rep["rhs"], rep["ratio"]):
                fh.write(
                    f"{entry['scenario']},{repr(float(entry['p']))},"
                    f"{repr(float(t))},{repr(float(a))},{repr(float(b))},{repr(float(r))}\n"
                )
    return [path]
