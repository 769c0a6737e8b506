"""Command-line driver producing CSV tables for parameter sweeps.

Usage::

    qotto mode-sweep   --preset fig1b-22 --out fig1b.csv
    qotto work-contour --preset fig1d --sweep omega_c=0.05:1:40
    qotto tradeoff     --preset fig2b-gc2 --set beta_c=12
    qotto fluct-sweep  --preset fig2a-42
    qotto emp-sweep    --preset fig3 --jobs 4
    qotto sample       --preset fig2b --n 1000000 --seed 7

Settings are layered: built-in preset, then ``--config`` file (flat
``key=value`` lines), then ``--set``/``--sweep`` flags.  A value written as
``start:stop:count`` is a sweep.  Without ``--out`` the table goes to
``$QOTTO_OUTPUT_DIR/<command>.csv`` when that variable is set, else stdout.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import cycle, optimizer, stochastic
from .csvio import DEFAULT_PRECISION, MISSING, format_number, render, write_text
from .two_level import CycleConfig

log = logging.getLogger("qotto")

OUTPUT_DIR_ENV = "QOTTO_OUTPUT_DIR"

BASE = dict(beta_c=10.0, beta_h=2.0, sigma_c=1.0, sigma_h=1.0,
            tau_c=math.inf, tau_h=math.inf, tau_adi=0.0)

PRESETS = {
    "mode-sweep": {
        "fig1b-22": dict(gamma_c=2.0, gamma_h=2.0, omega_c=0.36, r="0.5:3:2501"),
        "fig1b-24": dict(gamma_c=2.0, gamma_h=4.0, omega_c=0.36, r="0.5:3:2501"),
        "fig1b-42": dict(gamma_c=4.0, gamma_h=2.0, omega_c=0.36, r="0.5:3:2501"),
    },
    "work-contour": {
        "fig1c": dict(gamma_c=2.0, gamma_h=2.0, omega_c="0.02:2:100", omega_h="0.02:2:100"),
        "fig1d": dict(gamma_c=2.0, gamma_h=4.0, omega_c="0.02:2:100", omega_h="0.02:2:100"),
        "fig1e": dict(gamma_c=4.0, gamma_h=2.0, omega_c="0.02:2:100", omega_h="0.02:2:100"),
    },
    "tradeoff": {
        "fig2b-gc2": dict(gamma_c=2.0, omega_c=0.2, omega_h=0.85, gamma_h="1.5:2.5:101"),
        "fig2b-gc4": dict(gamma_c=4.0, omega_c=0.2, omega_h=0.85, gamma_h="3:5:201"),
    },
    "fluct-sweep": {
        "fig2a-22": dict(gamma_c=2.0, gamma_h=2.0, omega_c=0.2, r="1:3:201"),
        "fig2a-24": dict(gamma_c=2.0, gamma_h=4.0, omega_c=0.2, r="1:3:201"),
        "fig2a-42": dict(gamma_c=4.0, gamma_h=2.0, omega_c=0.2, r="1:3:201"),
    },
    "emp-sweep": {
        "fig3": dict(beta_h=2.0, eta_C="0.05:0.95:19", gammas="2x2,2x4,4x2"),
    },
    "sample": {
        "fig2b": dict(gamma_c=2.0, gamma_h=1.78, omega_c=0.2, omega_h=0.85, n=1_000_000),
    },
}

SWEEP_AXES = {
    "mode-sweep": ("r",),
    "work-contour": ("omega_c", "omega_h"),
    "tradeoff": ("gamma_h",),
    "fluct-sweep": ("r",),
    "emp-sweep": ("eta_C", "beta_c"),
    "sample": (),
}

PHYSICAL = {"omega_c", "omega_h", "gamma_c", "gamma_h", "beta_c", "beta_h",
            "sigma_c", "sigma_h", "tau_c", "tau_h", "tau_adi", "r", "eta_C"}


class ConfigError(ValueError):
    pass


@dataclass
class Sweep:
    start: float
    stop: float
    count: int

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass
class RunConfig:
    command: str
    sweeps: dict = field(default_factory=dict)
    fixed: dict = field(default_factory=dict)
    out: Optional[str] = None
    seed: int = 0
    precision: int = DEFAULT_PRECISION
    n: int = 100_000
    shards: int = 1
    gammas: tuple = ((2.0, 2.0), (2.0, 4.0), (4.0, 2.0))


def parse_sweep(text: str) -> Sweep:
    try:
        start, stop, count = text.split(":")
        sweep = Sweep(float(start), float(stop), int(count))
    except ValueError:
        raise ConfigError(f"bad range {text!r}; expected start:stop:count") from None
    if sweep.count < 1:
        raise ConfigError(f"range {text!r} must have count >= 1")
    return sweep


def parse_gammas(text: str) -> tuple:
    try:
        return tuple(tuple(float(g) for g in item.split("x")) for item in text.split(","))
    except ValueError:
        raise ConfigError(f"bad gamma list {text!r}; expected e.g. 2x2,2x4") from None


def read_config_file(path) -> dict:
    entries = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            entries[key] = value
    return entries


def _split_assignment(text):
    if "=" not in text:
        raise ConfigError(f"expected symbol=value, got {text!r}")
    key, value = text.split("=", 1)
    return key.strip(), value.strip()


def build_run_config(args) -> RunConfig:
    command = args.command
    layers = [dict(BASE)]
    presets = PRESETS[command]
    file_entries = read_config_file(args.config) if args.config else {}
    preset = args.preset or file_entries.pop("preset", None) or next(iter(presets))
    file_entries.pop("preset", None)
    if preset not in presets:
        raise ConfigError(f"unknown preset {preset!r} for {command}; choose from {sorted(presets)}")
    layers.append(presets[preset])
    layers.append(file_entries)
    flags = {}
    for item in args.set or []:
        key, value = _split_assignment(item)
        flags[key] = value
    for item in args.sweep or []:
        key, value = _split_assignment(item)
        if ":" not in value:
            raise ConfigError(f"--sweep {item!r} needs start:stop:count")
        flags[key] = value
    for name in ("out", "seed", "precision", "n", "shards"):
        if getattr(args, name, None) is not None:
            flags[name] = getattr(args, name)
    layers.append(flags)

    merged = {}
    for layer in layers:
        merged.update(layer)

    run = RunConfig(command=command)
    for key, value in merged.items():
        if key in PHYSICAL:
            if isinstance(value, str) and ":" in value:
                if key not in SWEEP_AXES[command]:
                    raise ConfigError(f"{command} cannot sweep {key!r}; sweepable: {SWEEP_AXES[command]}")
                run.sweeps[key] = parse_sweep(value)
            else:
                try:
                    run.fixed[key] = float(value)
                except ValueError:
                    raise ConfigError(f"bad value for {key}: {value!r}") from None
        elif key == "gammas":
            run.gammas = parse_gammas(value) if isinstance(value, str) else tuple(value)
        elif key in ("seed", "precision", "n", "shards"):
            try:
                setattr(run, key, int(value))
            except ValueError:
                raise ConfigError(f"bad value for {key}: {value!r}") from None
        elif key == "out":
            run.out = value
        else:
            raise ConfigError(f"unknown setting {key!r}")
    if command == "emp-sweep":
        # eta_C and beta_c are two handles on one quantity; a user-given beta_c wins over the preset
        user = {**file_entries, **flags}
        if "beta_c" in user and "eta_C" not in user:
            run.sweeps.pop("eta_C", None)
            run.fixed.pop("eta_C", None)
        elif "eta_C" in user and "beta_c" in user:
            raise ConfigError("give either eta_C or beta_c, not both")
    if run.precision < 1:
        raise ConfigError("precision must be >= 1")
    if run.seed < 0 or run.seed >= 2 ** 64:
        raise ConfigError("seed must be an unsigned 64-bit integer")
    return run


# --- point evaluation (module-level so worker processes can pickle them) ------

def _config(p) -> CycleConfig:
    return CycleConfig.build(p["omega_c"], p["omega_h"], p["gamma_c"], p["gamma_h"],
                             p["beta_c"], p["beta_h"], p["tau_c"], p["tau_h"],
                             p["sigma_c"], p["sigma_h"], p["tau_adi"])


def _mode_row(p):
    cfg = _config(p)
    m = cycle.evaluate(cfg)
    ratio = m.efficiency / cfg.carnot if m.efficiency is not None else None
    return [p["r"], ratio, cycle.Classification(m.mode, m.boundary).label()]


def _contour_row(p):
    cfg = _config(p)
    m = cycle.evaluate(cfg)
    return [p["omega_c"], p["omega_h"], m.mean_work, cycle.Classification(m.mode, m.boundary).label()]


def _tradeoff_row(p):
    m = cycle.evaluate(_config(p))
    label = cycle.Classification(m.mode, m.boundary).label()
    eta = m.efficiency if m.efficiency is not None else label
    return [p["gamma_h"], eta, m.rel_power_fluct, m.mean_work, m.work_variance]


def _fluct_row(p):
    m = cycle.evaluate(_config(p))
    return [p["r"], m.mean_work, m.work_variance, math.sqrt(m.work_variance), m.rel_power_fluct,
            cycle.Classification(m.mode, m.boundary).label()]


def _emp_row(p):
    eta_c = 1.0 - p["beta_h"] / p["beta_c"]
    row, failed = [eta_c], False
    for gc, gh in p["gammas"]:
        try:
            row.append(optimizer.emp(p["beta_c"], p["beta_h"], gc, gh))
        except optimizer.OptimizationError as exc:
            row.append(None)
            failed = True
            log.warning("eta_C=%.6g gammas=(%g, %g): %s", eta_c, gc, gh, exc)
    row += [optimizer.emp_analytic(eta_c), optimizer.ca_efficiency(eta_c)]
    return row, failed


def _points(run: RunConfig):
    """Expand sweeps into per-point parameter dicts, in deterministic order."""
    fixed = dict(run.fixed)
    axes = [(k, run.sweeps[k].values()) for k in SWEEP_AXES[run.command] if k in run.sweeps]
    grids = np.meshgrid(*[v for _, v in axes], indexing="ij") if axes else []
    points = []
    count = grids[0].size if axes else 1
    for i in range(count):
        p = dict(fixed)
        for (name, _), grid in zip(axes, grids):
            p[name] = float(grid.flat[i])
        points.append(p)
    return points


def _complete(p, command):
    if command in ("mode-sweep", "fluct-sweep"):
        if "r" not in p or "omega_c" not in p:
            raise ConfigError(f"{command} needs r and omega_c")
        p["omega_h"] = p["omega_c"] * p["r"] ** 2
    if command == "emp-sweep":
        if "eta_C" in p:
            p["beta_c"] = optimizer.beta_cold_for(p["eta_C"], p["beta_h"])
        if not p["beta_c"] > p["beta_h"]:
            raise ConfigError("emp-sweep needs beta_c > beta_h at every point")
        return p
    required = ("omega_c", "omega_h", "gamma_c", "gamma_h")
    missing = [k for k in required if k not in p]
    if missing:
        raise ConfigError(f"missing parameters: {', '.join(missing)}")
    try:
        _config(p)
    except ValueError as exc:
        raise ConfigError(f"invalid cycle parameters {p}: {exc}") from None
    if not p["beta_c"] > p["beta_h"]:
        raise ConfigError("beta_c must exceed beta_h")
    return p


HEADERS = {
    "mode-sweep": ["r", "eta_over_etaC", "mode"],
    "work-contour": ["omega_c", "omega_h", "mean_work", "mode"],
    "tradeoff": ["gamma_h", "eta", "f_P", "mean_work", "work_variance"],
    "fluct-sweep": ["r", "mean_work", "work_variance", "work_std", "f_P", "mode"],
}
ROW_FUNCS = {
    "mode-sweep": _mode_row,
    "work-contour": _contour_row,
    "tradeoff": _tradeoff_row,
    "fluct-sweep": _fluct_row,
}


def _map(func, items, jobs):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(func, items, chunksize=max(1, len(items) // (4 * jobs))))
    return [func(item) for item in items]


def _fmt(row, precision):
    return [format_number(v, precision) for v in row]


def run_sweep(run: RunConfig, jobs: int = 1):
    """Compute a sweep table; returns ``(csv_text, n_failed, summary_lines)``."""
    points = [_complete(p, run.command) for p in _points(run)]
    summary = []
    failed = 0
    if run.command == "emp-sweep":
        for p in points:
            p["gammas"] = run.gammas
        header = ["eta_C"] + [f"eta_star_{gc:g}_{gh:g}" for gc, gh in run.gammas]
        header += ["eta_star_analytic", "eta_CA"]
        results = _map(_emp_row, points, jobs)
        rows = [r for r, _ in results]
        failed = sum(f for _, f in results)
    else:
        header = HEADERS[run.command]
        rows = _map(ROW_FUNCS[run.command], points, jobs)
    if run.command == "mode-sweep":
        engine = [row[0] for row in rows if row[2] in ("engine", "boundary:engine")]
        if engine:
            summary.append(f"engine band: r in [{engine[0]:.6g}, {engine[-1]:.6g}] ({len(engine)} points)")
        else:
            summary.append("engine band: empty")
    text = render(header, [_fmt(r, run.precision) for r in rows])
    return text, failed, summary


def run_sample(run: RunConfig):
    p = _complete(dict(run.fixed), "sample")
    cfg = _config(p)
    pmf = stochastic.work_pmf(cfg)
    sample = stochastic.sample_work(pmf, run.n, run.seed, shards=run.shards)
    text = render(["value", "probability", "count", "frequency"],
                  stochastic.histogram_rows(pmf, sample, run.precision))
    se = stochastic.standard_error(pmf, run.n)
    summary = [
        f"exact mean {pmf.mean:.{run.precision}g}, sample mean {sample.mean:.{run.precision}g}, "
        f"standard error {se:.3g}",
        f"exact variance {pmf.variance:.{run.precision}g}, sample variance {sample.variance:.{run.precision}g}",
        f"chi-square p-value {stochastic.chi_square_pvalue(sample, pmf):.4g}",
    ]
    return text, 0, summary


def _output_path(run: RunConfig):
    if run.out:
        return run.out
    directory = os.environ.get(OUTPUT_DIR_ENV)
    if directory:
        return os.path.join(directory, f"{run.command}.csv")
    return None


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qotto", description="Two-level quantum Otto engine sweeps")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in PRESETS:
        p = sub.add_parser(name)
        p.add_argument("--preset", help=f"one of: {', '.join(PRESETS[name])}")
        p.add_argument("--config", help="flat key=value file")
        p.add_argument("--set", action="append", metavar="SYMBOL=VALUE")
        p.add_argument("--sweep", action="append", metavar="SYMBOL=START:STOP:COUNT")
        p.add_argument("--out")
        p.add_argument("--seed", type=int)
        p.add_argument("--precision", type=int)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--allow-failures", action="store_true",
                       help="exit 0 even when some points are reported as NA")
        if name == "sample":
            p.add_argument("--n", type=int)
            p.add_argument("--shards", type=int)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    args = make_parser().parse_args(argv)
    try:
        run = build_run_config(args)
        if run.command == "sample":
            text, failed, summary = run_sample(run)
        else:
            text, failed, summary = run_sweep(run, jobs=args.jobs)
    except (ConfigError, ValueError) as exc:
        print(f"qotto {args.command}: error: {exc}", file=sys.stderr)
        return 2
    write_text(text, _output_path(run))
    for line in summary:
        print(line, file=sys.stderr)
    if failed:
        print(f"{failed} point(s) reported as {MISSING}", file=sys.stderr)
        return 0 if args.allow_failures else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
