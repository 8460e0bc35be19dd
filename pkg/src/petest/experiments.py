"""Config-driven Monte Carlo runner for null calibration, power grids and phase curves.

Replication ``r`` of grid cell ``c`` draws every random quantity from the
stream ``make_rng(seed, c, r)``; memberships held fixed across a cell
(``resample_memberships = false``) come from ``make_rng(seed, c, FIXED_STREAM)``.
Work is split into chunks that are evaluated independently and merged in
(cell, replication) order, so outputs do not depend on the worker count.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ConfigError, DegenerateModelError, ParameterError
from .model import make_rng, params_from_dict, read_edgelist, sample_network
from .scenarios import build_scenario, is_null_scenario, scenario_knobs
from .stats import CALIBRATIONS, chi2_statistic, osq_statistic, pe_statistic, run_tests
from .theory import theory_from_params

__all__ = [
    "ExperimentConfig",
    "CellResult",
    "StatSummary",
    "load_config",
    "run_experiment",
    "run_null_calibration",
    "run_power_grid",
    "run_phase_curve",
    "results_to_csv",
    "results_to_json",
    "write_results",
    "test_file",
]

log = logging.getLogger(__name__)

STATISTICS = ("chi2", "osq", "pe")
KINDS = ("null", "power", "phase")
FIXED_STREAM = 2**32 - 1
CSV_TAIL = ["statistic", "power", "mean_norm", "sd_norm", "reps", "delta_n", "tau_n", "beta_n", "seconds"]


@dataclass
class ExperimentConfig:
    scenario: object = "er"
    grid: dict = field(default_factory=dict)
    knobs: dict = field(default_factory=dict)
    replications: int = 500
    level: float = 0.05
    seed: int = 0
    statistics: list = field(default_factory=lambda: list(STATISTICS))
    resample_memberships: bool = True
    calibration: str = "corrected"
    experiment: str = "power"
    output: str | None = None
    format: str = "csv"
    record_time: bool = False
    threads: int = 1
    chunk_size: int = 50

    def __post_init__(self):
        if not isinstance(self.grid, dict) or not self.grid:
            raise ConfigError("grid must be a non-empty mapping of knob -> list of values")
        grid = {}
        for key, values in self.grid.items():
            if not isinstance(values, (list, tuple)):
                values = [values]
            if len(values) == 0:
                raise ConfigError(f"grid knob {key!r} has no values")
            grid[str(key)] = list(values)
        self.grid = grid
        if not isinstance(self.knobs, dict):
            raise ConfigError("knobs must be a mapping")
        try:
            self.replications = int(self.replications)
            self.level = float(self.level)
            self.seed = int(self.seed)
            self.threads = int(self.threads)
            self.chunk_size = int(self.chunk_size)
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from None
        if self.replications < 1:
            raise ConfigError("replications must be >= 1")
        if not 0.0 < self.level < 1.0:
            raise ConfigError(f"level must lie in (0, 1), got {self.level}")
        if self.threads < 1 or self.chunk_size < 1:
            raise ConfigError("threads and chunk_size must be >= 1")
        stats = [str(s) for s in self.statistics]
        bad = [s for s in stats if s not in STATISTICS]
        if bad or not stats:
            raise ConfigError(f"statistics must be a non-empty subset of {STATISTICS}, got {stats}")
        self.statistics = [s for s in STATISTICS if s in stats]
        if self.calibration not in CALIBRATIONS:
            raise ConfigError(f"calibration must be one of {CALIBRATIONS}")
        if self.experiment not in KINDS:
            raise ConfigError(f"experiment must be one of {KINDS}")
        if self.format not in ("csv", "json"):
            raise ConfigError("format must be 'csv' or 'json'")
        self._check_knobs()

    def _check_knobs(self):
        for cell in self.cells():
            try:
                _cell_params(self.scenario, self.knobs, cell, None)
            except ParameterError as exc:
                raise ConfigError(f"cell {cell}: {exc}") from None

    @classmethod
    def from_dict(cls, doc):
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown config field(s): {sorted(unknown)}")
        return cls(**doc)

    def to_dict(self):
        return asdict(self)

    def cells(self):
        keys = list(self.grid)
        return [dict(zip(keys, values)) for values in itertools.product(*self.grid.values())]


def load_config(path, **overrides):
    with open(os.fspath(path), encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from None
    doc.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig.from_dict(doc)


# ----------------------------------------------------------------------------
# Per-replication work


def _cell_params(scenario, knobs, cell, rng):
    cell = dict(cell)
    name = cell.pop("scenario", scenario)
    merged = {**knobs, **cell}
    if isinstance(name, dict):
        params = params_from_dict(name)
        extra = set(merged) - {"n"}
        if extra:
            raise ParameterError(f"explicit parameters accept only the knob 'n', got {sorted(extra)}")
        if "n" in merged:
            params = params.with_n(int(merged["n"]))
        return params
    if not isinstance(name, str):
        raise ParameterError(f"scenario must be a preset name or a parameter mapping, got {name!r}")
    known = scenario_knobs(name)
    unknown = set(merged) - set(known)
    if unknown:
        raise ParameterError(f"scenario {name!r} has no knob(s) {sorted(unknown)}")
    if "n" in merged:
        merged["n"] = int(merged["n"])
    return build_scenario(name, rng, **merged)


def _cell_scenario_name(scenario, cell):
    name = cell.get("scenario", scenario)
    return name if isinstance(name, str) else None


def _run_chunk(task):
    (scenario, knobs, cell, cell_index, reps, seed, level, calibration, resample) = task
    out = []
    fixed_pi = None
    fixed_params = None
    if not resample:
        frng = make_rng(seed, cell_index, FIXED_STREAM)
        fixed_params = _cell_params(scenario, knobs, cell, frng)
        fixed_pi = fixed_params.membership.sample(fixed_params.n, frng)
    for r in reps:
        rng = make_rng(seed, cell_index, r)
        if resample:
            params = _cell_params(scenario, knobs, cell, rng)
            A, _ = sample_network(params, rng)
        else:
            A, _ = sample_network(fixed_params, rng, pi=fixed_pi)
        reports = run_tests(A, level, calibration)
        out.append({k: (rep.normalized, rep.reject) for k, rep in reports.items()})
    return out


# ----------------------------------------------------------------------------
# Results


@dataclass
class StatSummary:
    power: float
    mean_norm: float
    sd_norm: float


@dataclass
class CellResult:
    coords: dict
    stats: dict
    reps: int
    delta_n: float
    tau_n: float
    beta_n: float
    seconds: float | None = None


def _summarize(values):
    x = np.array([v[0] for v in values], dtype=float)
    rej = np.array([v[1] for v in values], dtype=bool)
    sd = float(np.std(x, ddof=1)) if x.size > 1 else 0.0
    return StatSummary(float(rej.mean()), float(x.mean()), sd)


def _theory_columns(scenario, knobs, cell):
    try:
        params = _cell_params(scenario, knobs, cell, None)
        rep = theory_from_params(params, warn=False)
        return rep.delta_n, rep.tau_n, rep.beta_n
    except DegenerateModelError:
        return math.nan, math.nan, math.nan


def _execute(config):
    cells = config.cells()
    tasks = []
    for ci, cell in enumerate(cells):
        for start in range(0, config.replications, config.chunk_size):
            reps = range(start, min(start + config.chunk_size, config.replications))
            tasks.append((ci, (config.scenario, config.knobs, cell, ci, list(reps), config.seed,
                               config.level, config.calibration, config.resample_memberships)))

    per_cell = [[] for _ in cells]
    started = [None] * len(cells)
    finished = [None] * len(cells)

    def consume(ci, chunk):
        per_cell[ci].extend(chunk)
        finished[ci] = time.perf_counter()

    if config.threads == 1:
        for ci, task in tasks:
            if started[ci] is None:
                started[ci] = time.perf_counter()
                log.info("cell %d/%d %s", ci + 1, len(cells), cells[ci])
            consume(ci, _run_chunk(task))
    else:
        t0 = time.perf_counter()
        with ProcessPoolExecutor(max_workers=config.threads) as pool:
            for (ci, _), chunk in zip(tasks, pool.map(_run_chunk, [t for _, t in tasks])):
                if started[ci] is None:
                    started[ci] = t0 if ci == 0 else finished[ci - 1]
                    log.info("cell %d/%d %s", ci + 1, len(cells), cells[ci])
                consume(ci, chunk)

    results = []
    for ci, cell in enumerate(cells):
        stats = {s: _summarize([rep[s] for rep in per_cell[ci]]) for s in config.statistics}
        delta, tau, beta = _theory_columns(config.scenario, config.knobs, cell)
        seconds = finished[ci] - started[ci] if config.record_time else None
        results.append(CellResult(cell, stats, len(per_cell[ci]), delta, tau, beta, seconds))
    return results


def run_null_calibration(config):
    """Rejection rates on null (Erdos-Renyi) scenarios."""
    for cell in config.cells():
        name = _cell_scenario_name(config.scenario, cell)
        if name is None or not is_null_scenario(name):
            raise ConfigError(f"null calibration needs an Erdos-Renyi scenario, got {name or 'explicit parameters'}")
    return _execute(config)


def run_power_grid(config):
    """Empirical power of each requested statistic on every grid cell."""
    return _execute(config)


def run_phase_curve(config):
    """Power along a single swept knob, with delta_n, tau_n, beta_n per cell."""
    swept = [k for k, v in config.grid.items() if k != "scenario" or len(v) > 1]
    if len(swept) != 1 or "scenario" in swept:
        raise ConfigError(f"phase curve needs exactly one swept model knob, got {list(config.grid)}")
    return _execute(config)


def run_experiment(config):
    runner = {"null": run_null_calibration, "power": run_power_grid, "phase": run_phase_curve}
    return runner[config.experiment](config)


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".10g")
    return str(x)


def _rows(results):
    for res in results:
        for name, s in res.stats.items():
            row = dict(res.coords)
            row.update({
                "statistic": name,
                "power": s.power,
                "mean_norm": s.mean_norm,
                "sd_norm": s.sd_norm,
                "reps": res.reps,
                "delta_n": res.delta_n,
                "tau_n": res.tau_n,
                "beta_n": res.beta_n,
                "seconds": res.seconds,
            })
            yield row


def results_to_csv(results):
    keys = list(results[0].coords) if results else []
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(keys + CSV_TAIL)
    for row in _rows(results):
        writer.writerow([_fmt(row[k]) for k in keys + CSV_TAIL])
    return buf.getvalue()


def results_to_json(results):
    def clean(v):
        if isinstance(v, float) and not math.isfinite(v):
            return None
        return v

    rows = [{k: clean(v) for k, v in row.items()} for row in _rows(results)]
    return json.dumps(rows, indent=2) + "\n"


def write_results(results, output=None, fmt="csv"):
    text = results_to_csv(results) if fmt == "csv" else results_to_json(results)
    if output is None or output == "-":
        return text
    with open(os.fspath(output), "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return text


def test_file(path, statistic="pe", level=0.05, calibration="corrected"):
    """Load an edge-list file and run one test on it."""
    A = read_edgelist(path)
    fns = {"chi2": chi2_statistic, "osq": osq_statistic, "pe": pe_statistic}
    try:
        fn = fns[statistic]
    except KeyError:
        raise ParameterError(f"unknown statistic {statistic!r}; use one of {list(fns)}") from None
    return fn(A, level=level, calibration=calibration)


test_file.__test__ = False
