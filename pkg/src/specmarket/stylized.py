"""Estimators for the three stylized facts: tails, clustering, long memory.

Conventions used throughout (they matter for reproducing numbers):

* :func:`empirical_ccdf` counts with a strict inequality, so the largest
  observation gets H = 0 and H at the sample minimum is (n - k)/n with k
  the multiplicity of the minimum.
* The least-squares tail fit instead places the k-th largest tail point
  at H = (k - 0.5) / n_tail (midpoint plotting positions), which keeps
  every tail point usable on a log scale.
* Tail exponents are reported as positive numbers (the magnitude of the
  log-log slope).
* Sample autocorrelations normalize by the global mean and variance of
  the transformed series, so every value lies in [-1, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DiagnosticError, ValidationError

__all__ = [
    "TailFit",
    "AcfResult",
    "SummaryStats",
    "empirical_ccdf",
    "tail_fit_ls",
    "tail_fit_mle",
    "select_xmin",
    "sample_acf",
    "acf_power_fit",
    "summary_stats",
]

MIN_TAIL = 10
MIN_XMIN_SAMPLES = 50
MAX_XMIN_CANDIDATES = 1000


@dataclass(frozen=True)
class TailFit:
    """Fitted power-law tail: prob{X > x} ~ c x^(-alpha_hat) for x >= x_min."""

    alpha_hat: float
    x_min: float
    n_tail: int
    ks: float
    method: str

    def __post_init__(self):
        if self.alpha_hat <= 0 or self.x_min <= 0:
            raise ValidationError("tail fit requires positive alpha_hat and x_min")
        if self.n_tail < MIN_TAIL:
            raise ValidationError(f"tail fit requires at least {MIN_TAIL} observations")
        if not 0.0 <= self.ks <= 1.0:
            raise ValidationError("ks must be within [0, 1]")


@dataclass(frozen=True)
class AcfResult:
    """Sample autocorrelation of a transformed series at lags 1..H."""

    transform: str
    lags: np.ndarray
    values: np.ndarray

    def abs_sum(self) -> float:
        """Sum of |acf| over the available lags.

        A descriptive integrability diagnostic: long memory would make the
        infinite sum diverge, but a finite sample can only ever indicate it.
        """
        return float(np.sum(np.abs(self.values)))


@dataclass(frozen=True)
class SummaryStats:
    mean: float
    std: float
    min: float
    max: float
    skew: float
    kurtosis: float


def _positive(data) -> np.ndarray:
    x = np.asarray(data, dtype=float)
    if x.ndim != 1:
        x = x.ravel()
    return x


def empirical_ccdf(data) -> tuple[np.ndarray, np.ndarray]:
    """Empirical complementary CDF H(x) = #{samples > x} / n at distinct values.

    Returns (x, H) with x strictly increasing and H strictly decreasing.
    """
    x = _positive(data)
    if x.size < 2:
        raise ValidationError("need at least 2 samples")
    if np.any(x < 0):
        raise ValidationError("data must be nonnegative")
    if not np.any(x > 0):
        raise ValidationError("all-zero data has no distribution tail")
    values, counts = np.unique(x, return_counts=True)
    n = x.size
    greater = n - np.cumsum(counts)
    return values, greater / n


def _tail(data, x_min: float) -> np.ndarray:
    if x_min <= 0:
        raise ValidationError("x_min must be positive")
    x = _positive(data)
    tail = np.sort(x[x >= x_min])
    if tail.size < MIN_TAIL:
        raise ValidationError(
            f"insufficient tail: {tail.size} observations >= x_min, need {MIN_TAIL}")
    return tail


def _ks_distance(tail_sorted: np.ndarray, x_min: float, alpha: float) -> float:
    """Two-sided KS distance between the tail sample and the fitted law."""
    m = tail_sorted.size
    model = 1.0 - np.exp(-alpha * (np.log(tail_sorted) - math.log(x_min)))
    hi = np.arange(1, m + 1) / m
    lo = np.arange(0, m) / m
    return float(np.max(np.maximum(np.abs(hi - model), np.abs(lo - model))))


def tail_fit_ls(data, x_min: float) -> TailFit:
    """Least-squares tail exponent: |slope| of log H(x) on log x over the tail.

    Tail points use midpoint plotting positions H_k = (k - 0.5)/m for the
    k-th largest of m tail observations.
    """
    tail = _tail(data, x_min)
    m = tail.size
    log_x = np.log(tail[::-1])
    log_h = np.log((np.arange(1, m + 1) - 0.5) / m)
    lx = log_x - log_x.mean()
    var = float(np.dot(lx, lx))
    if var == 0.0:
        raise DiagnosticError("degenerate tail: all observations equal")
    slope = float(np.dot(lx, log_h - log_h.mean())) / var
    alpha = abs(slope)
    if alpha <= 0:
        raise DiagnosticError("tail fit produced a nonpositive exponent")
    return TailFit(alpha_hat=alpha, x_min=float(x_min), n_tail=m,
                   ks=_ks_distance(tail, x_min, alpha), method="least-squares")


def tail_fit_mle(data, x_min: float) -> TailFit:
    """Hill (maximum-likelihood) tail exponent: m / sum(log(x_i / x_min)).

    Documented as similar to the least-squares fit but with a slight
    downward bias on finite samples.
    """
    tail = _tail(data, x_min)
    if np.any(tail < x_min):
        raise ValidationError("tail samples below x_min")
    m = tail.size
    log_sum = float(np.sum(np.log(tail)) - m * math.log(x_min))
    if log_sum <= 0.0:
        raise DiagnosticError("degenerate tail: all observations at x_min")
    alpha = m / log_sum
    return TailFit(alpha_hat=alpha, x_min=float(x_min), n_tail=m,
                   ks=_ks_distance(tail, x_min, alpha), method="mle")


def select_xmin(data, max_candidates: int = MAX_XMIN_CANDIDATES) -> float:
    """Choose the tail cutoff minimizing the KS distance to the fitted law.

    Candidates are the distinct sample values (decimated evenly to at most
    ``max_candidates``) that leave at least MIN_TAIL observations in the
    tail; each candidate is scored with its Hill fit. Ties break toward
    the smaller cutoff.
    """
    x = _positive(data)
    x = np.sort(x[x > 0])
    if x.size < MIN_XMIN_SAMPLES:
        raise ValidationError(
            f"need at least {MIN_XMIN_SAMPLES} positive samples, got {x.size}")
    distinct = np.unique(x)
    if distinct.size < 2:
        raise ValidationError("constant data has no tail cutoff")
    distinct = distinct[distinct <= x[-MIN_TAIL]]
    if distinct.size == 0:
        raise DiagnosticError("no candidate cutoff leaves enough tail observations")
    if distinct.size > max_candidates:
        idx = np.unique(np.linspace(0, distinct.size - 1, max_candidates).astype(int))
        distinct = distinct[idx]

    n = x.size
    log_x = np.log(x)
    # suffix sums of log(x) so each candidate's Hill estimate is O(1)
    suffix = np.concatenate([np.cumsum(log_x[::-1])[::-1], [0.0]])

    best_ks = math.inf
    best_xmin = None
    for c in distinct:
        i = int(np.searchsorted(x, c, side="left"))
        m = n - i
        if m < MIN_TAIL:
            continue
        log_sum = suffix[i] - m * math.log(c)
        if log_sum <= 0.0:
            continue
        alpha = m / log_sum
        tail_logs = log_x[i:]
        model = 1.0 - np.exp(-alpha * (tail_logs - math.log(c)))
        ranks = np.arange(m + 1) / m
        ks = float(np.max(np.maximum(np.abs(ranks[1:] - model),
                                     np.abs(ranks[:-1] - model))))
        if ks < best_ks:
            best_ks = ks
            best_xmin = float(c)
    if best_xmin is None:
        raise DiagnosticError("no admissible tail cutoff found")
    return best_xmin


def sample_acf(series, transform: str = "raw", max_lag: int = 100) -> AcfResult:
    """Sample autocorrelation at lags 1..max_lag.

    ``transform`` is one of 'raw', 'absolute', 'squared'. Normalization
    uses the global mean and variance of the transformed series.
    """
    y = _positive(series)
    if transform == "raw":
        pass
    elif transform == "absolute":
        y = np.abs(y)
    elif transform == "squared":
        y = y * y
    else:
        raise ValidationError(f"unknown transform {transform!r}")
    if max_lag < 1:
        raise ValidationError("max_lag must be >= 1")
    if y.size <= max_lag + 1:
        raise ValidationError("series too short for the requested max_lag")
    yc = y - y.mean()
    denom = float(np.dot(yc, yc))
    if denom == 0.0:
        raise ValidationError("zero-variance series has no autocorrelation")
    values = np.empty(max_lag)
    for h in range(1, max_lag + 1):
        values[h - 1] = float(np.dot(yc[:-h], yc[h:])) / denom
    return AcfResult(transform=transform, lags=np.arange(1, max_lag + 1), values=values)


def acf_power_fit(acf: AcfResult, lag_range: tuple[int, int]) -> float:
    """Power-law decay exponent beta from cor(h) ~ h^(-beta) over a lag range.

    Descriptive only: a geometric population ACF can produce a perfectly
    reasonable-looking power-law fit on a finite lag window.
    """
    lo, hi = lag_range
    mask = (acf.lags >= lo) & (acf.lags <= hi)
    if not np.any(mask):
        raise ValidationError("empty lag range")
    vals = acf.values[mask]
    lags = acf.lags[mask]
    if np.any(vals <= 0):
        raise ValidationError("ACF values must be positive over the fit range")
    log_h = np.log(lags.astype(float))
    log_v = np.log(vals)
    lh = log_h - log_h.mean()
    var = float(np.dot(lh, lh))
    if var == 0.0:
        raise ValidationError("need at least two distinct lags")
    slope = float(np.dot(lh, log_v - log_v.mean())) / var
    return -slope


def summary_stats(returns) -> SummaryStats:
    """Mean, population std, min, max, skewness and excess kurtosis."""
    x = _positive(returns)
    if x.size == 0:
        raise ValidationError("empty series")
    mean = float(x.mean())
    std = float(x.std())
    if std == 0.0:
        skew = 0.0
        kurt = 0.0
    else:
        z = (x - mean) / std
        skew = float(np.mean(z ** 3))
        kurt = float(np.mean(z ** 4)) - 3.0
    return SummaryStats(mean=mean, std=std, min=float(x.min()), max=float(x.max()),
                        skew=skew, kurtosis=kurt)
