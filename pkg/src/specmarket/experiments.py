"""Scenario runner: summary-table reproduction, exponent ensembles,
bubble sweeps and pooled crash tails.

Every experiment derives per-path seeds from a master seed with the
documented splitting rule (see :func:`specmarket.rng.path_seeds`) and
aggregates records in seed order, so a report is a pure function of
(parameters, master seed, software version).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .errors import DiagnosticError, ValidationError
from .model import SimulationPath, simulate_linear
from .params import ModelParams, declining_value, table1_general, table1_speculative
from .rng import path_seeds
from .stylized import TailFit, sample_acf, select_xmin, summary_stats, tail_fit_ls

__all__ = [
    "SeedRecord",
    "ExperimentReport",
    "BubbleMetrics",
    "fit_return_tail",
    "bubble_metrics",
    "reproduce_table1",
    "ensemble_alpha",
    "bubble_sweep",
    "crash_tail",
]

TABLE1_COLUMNS = {
    "speculative": table1_speculative,
    "general": table1_general,
}

MIN_POOLED_OBS = 500


@dataclass(frozen=True)
class SeedRecord:
    """Per-seed outcome inside an experiment."""

    seed: int
    mean_r: float
    std_r: float
    alpha_hat: float | None = None
    tail: TailFit | None = None
    acf_abs_mean: float | None = None
    acf_raw_mean: float | None = None
    diagnostic: str | None = None
    bubble: "BubbleMetrics | None" = None


@dataclass(frozen=True)
class ExperimentReport:
    """Per-seed records plus aggregates, with full provenance."""

    scenario: str
    records: tuple[SeedRecord, ...]
    aggregates: dict
    params: ModelParams
    master_seed: int
    version: str = __version__


@dataclass(frozen=True)
class BubbleMetrics:
    """Bubble descriptors of one declining-value session.

    amplitude: peak of (p - v_e)/v_0; rad: mean of |p - v_e|/v_0
    (relative absolute deviation); peak_period: argmax of p - v_e;
    crash_depth: (max p - final p)/max p.
    """

    amplitude: float
    rad: float
    peak_period: int
    crash_depth: float

    def __post_init__(self):
        if self.rad < 0:
            raise ValidationError("rad must be nonnegative")
        if not 0.0 <= self.crash_depth <= 1.0:
            raise ValidationError("crash_depth must be within [0, 1]")
        if self.peak_period < 1:
            raise ValidationError("peak_period must be >= 1")


def fit_return_tail(returns) -> TailFit:
    """Cutoff-selected least-squares tail fit of |returns|."""
    magnitudes = np.abs(np.asarray(returns, dtype=float))
    magnitudes = magnitudes[magnitudes > 0]
    x_min = select_xmin(magnitudes)
    return tail_fit_ls(magnitudes, x_min)


def bubble_metrics(path: SimulationPath, v0: float) -> BubbleMetrics:
    """Compute bubble descriptors from a simulated session."""
    if v0 <= 0:
        raise ValidationError("v0 must be positive")
    gap = path.p - path.v_e
    peak = int(np.argmax(gap))
    max_p = float(np.max(path.p))
    return BubbleMetrics(
        amplitude=float(gap[peak]) / v0,
        rad=float(np.mean(np.abs(gap))) / v0,
        peak_period=peak + 1,
        crash_depth=(max_p - float(path.p[-1])) / max_p,
    )


def _tail_record(seed: int, path: SimulationPath, *, with_acf: bool = False) -> SeedRecord:
    stats = summary_stats(path.r)
    alpha = None
    tail = None
    diagnostic = None
    try:
        tail = fit_return_tail(path.r)
        alpha = tail.alpha_hat
    except (ValidationError, DiagnosticError) as exc:
        diagnostic = str(exc)
    acf_abs = acf_raw = None
    if with_acf:
        try:
            acf_abs = float(np.mean(sample_acf(path.r, "absolute", 100).values))
            acf_raw = float(np.mean(np.abs(sample_acf(path.r, "raw", 100).values)))
        except ValidationError as exc:
            diagnostic = diagnostic or str(exc)
    return SeedRecord(seed=seed, mean_r=stats.mean, std_r=stats.std,
                      alpha_hat=alpha, tail=tail,
                      acf_abs_mean=acf_abs, acf_raw_mean=acf_raw,
                      diagnostic=diagnostic)


def _quartiles(values) -> dict:
    arr = np.asarray([v for v in values if v is not None], dtype=float)
    if arr.size == 0:
        return {"median": None, "q1": None, "q3": None, "count": 0}
    return {
        "median": float(np.median(arr)),
        "q1": float(np.percentile(arr, 25)),
        "q3": float(np.percentile(arr, 75)),
        "count": int(arr.size),
    }


def reproduce_table1(column: str, n_seeds: int = 50, master_seed: int = 0,
                     *, with_acf: bool = False) -> ExperimentReport:
    """Run one summary-table column: per-seed mean, std and tail exponent."""
    if column not in TABLE1_COLUMNS:
        raise ValidationError(f"unknown column {column!r}; "
                              f"choose from {sorted(TABLE1_COLUMNS)}")
    if n_seeds < 1:
        raise ValidationError("n_seeds must be >= 1")
    params = TABLE1_COLUMNS[column]()
    records = []
    for seed in path_seeds(master_seed, n_seeds):
        path = simulate_linear(params, seed)
        records.append(_tail_record(seed, path, with_acf=with_acf))
    aggregates = {
        "alpha_hat": _quartiles(r.alpha_hat for r in records),
        "std_r": _quartiles(r.std_r for r in records),
        "mean_r": _quartiles(r.mean_r for r in records),
    }
    if with_acf:
        aggregates["acf_abs_mean"] = _quartiles(r.acf_abs_mean for r in records)
        aggregates["acf_raw_mean"] = _quartiles(r.acf_raw_mean for r in records)
    return ExperimentReport(scenario=f"table1-{column}", records=tuple(records),
                            aggregates=aggregates, params=params,
                            master_seed=master_seed)


def ensemble_alpha(params: ModelParams, n_paths: int, master_seed: int = 0,
                   bin_width: float = 0.25) -> dict:
    """Tail-exponent ensemble over seeded paths plus a histogram summary.

    Paths whose tail fit is refused contribute a diagnostic instead of an
    exponent (degenerate parameterizations report no estimates at all).
    """
    if n_paths < 2:
        raise ValidationError("n_paths must be >= 2")
    alphas: list[float | None] = []
    diagnostics: list[str | None] = []
    for seed in path_seeds(master_seed, n_paths):
        try:
            path = simulate_linear(params, seed)
            fit = fit_return_tail(path.r)
            alphas.append(fit.alpha_hat)
            diagnostics.append(None)
        except (ValidationError, DiagnosticError) as exc:
            alphas.append(None)
            diagnostics.append(str(exc))
    valid = np.asarray([a for a in alphas if a is not None], dtype=float)
    if valid.size:
        lo = np.floor(valid.min() / bin_width) * bin_width
        hi = np.ceil(valid.max() / bin_width) * bin_width
        edges = np.arange(lo, hi + bin_width / 2, bin_width)
        if edges.size < 2:
            edges = np.array([lo, lo + bin_width])
        counts, edges = np.histogram(valid, bins=edges)
    else:
        counts, edges = np.array([], dtype=int), np.array([])
    return {
        "alphas": alphas,
        "diagnostics": diagnostics,
        "histogram": {"edges": edges.tolist(), "counts": counts.tolist()},
        "median": float(np.median(valid)) if valid.size else None,
        "n_paths": n_paths,
        "master_seed": master_seed,
    }


def bubble_sweep(mean_nI_values, T_values, n_seeds: int = 20,
                 master_seed: int = 0) -> dict:
    """Seed-averaged bubble metrics per (mean_nI, T) cell.

    Cells use the declining-value configuration: lab dividends, zero
    discounting, v0 = T * E(d), p0 = v0 / 2.
    """
    if n_seeds < 1:
        raise ValidationError("n_seeds must be >= 1")
    cells = []
    for mean_nI in mean_nI_values:
        for T in T_values:
            params = declining_value(T=int(T), mean_nI=float(mean_nI))
            metrics = []
            for seed in path_seeds(master_seed, n_seeds):
                path = simulate_linear(params, seed)
                metrics.append(bubble_metrics(path, params.v0))
            cells.append({
                "mean_nI": float(mean_nI),
                "T": int(T),
                "amplitude": float(np.mean([m.amplitude for m in metrics])),
                "rad": float(np.mean([m.rad for m in metrics])),
                "crash_depth": float(np.mean([m.crash_depth for m in metrics])),
                "peak_period": float(np.mean([m.peak_period for m in metrics])),
                "n_seeds": n_seeds,
            })
    return {"cells": cells, "master_seed": master_seed}


def crash_tail(n_sessions: int, T: int = 100, master_seed: int = 0,
               mean_nI: float | None = None) -> TailFit:
    """Pooled tail fit of |returns| across declining-value sessions.

    Sessions are independent seeded runs of the declining-value
    configuration; their absolute returns are concatenated before the
    fit. Refused when the pool is too small to carry a tail.
    """
    if n_sessions < 1:
        raise ValidationError("n_sessions must be >= 1")
    kwargs = {} if mean_nI is None else {"mean_nI": mean_nI}
    params = declining_value(T=T, **kwargs)
    pooled = []
    for seed in path_seeds(master_seed, n_sessions):
        path = simulate_linear(params, seed)
        pooled.append(np.abs(path.r))
    data = np.concatenate(pooled)
    data = data[data > 0]
    if data.size < MIN_POOLED_OBS:
        raise ValidationError(
            f"insufficient pooled tail: {data.size} observations across "
            f"{n_sessions} sessions, need {MIN_POOLED_OBS}")
    x_min = select_xmin(data)
    return tail_fit_ls(data, x_min)
