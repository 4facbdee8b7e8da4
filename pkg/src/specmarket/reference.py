"""Benchmark generators: GARCH(1,1), exact Pareto samples, reciprocal tails.

The GARCH implementation uses the standard variance recursion

    r_t = sigma_t * z_t,   sigma_t^2 = c + a * r_{t-1}^2 + b * sigma_{t-1}^2

with i.i.d. standard Gaussian z_t. This is the form for which the
squared-return autocorrelation identity (a + b)^h and the usual
stationarity algebra are meaningful; a volatility-level recursion with
the same letters does not admit them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DiagnosticError, ValidationError
from .stylized import TailFit, select_xmin, tail_fit_ls

__all__ = [
    "GarchParams",
    "garch_simulate",
    "garch_acf_theoretical",
    "pareto_sample",
    "reciprocal_tail_check",
]


@dataclass(frozen=True)
class GarchParams:
    """GARCH(1,1) coefficients: variance intercept c, shock a, persistence b."""

    c: float
    a: float
    b: float

    def __post_init__(self):
        if self.c <= 0:
            raise ValidationError("c must be positive")
        if self.a < 0 or self.b < 0:
            raise ValidationError("a and b must be nonnegative")

    @property
    def persistence(self) -> float:
        return self.a + self.b

    @property
    def is_stationary(self) -> bool:
        return self.persistence < 1.0


def garch_simulate(params: GarchParams, T: int, seed: int) -> np.ndarray:
    """Simulate T returns of the GARCH(1,1) process.

    The variance starts at its stationary value c/(1-a-b) when a+b < 1,
    else at c. Deterministic given (params, T, seed).
    """
    if T < 1:
        raise ValidationError("T must be >= 1")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(T).tolist()
    var = params.c / (1.0 - params.persistence) if params.is_stationary else params.c
    a, b, c = params.a, params.b, params.c
    out = np.empty(T)
    r_prev_sq = 0.0
    for t in range(T):
        if t > 0:
            var = c + a * r_prev_sq + b * var
        r = math.sqrt(var) * z[t]
        out[t] = r
        r_prev_sq = r * r
    return out


def garch_acf_theoretical(a: float, b: float, lags) -> np.ndarray:
    """Geometric autocorrelation benchmark (a + b)^h for the requested lags."""
    if a < 0 or b < 0:
        raise ValidationError("a and b must be nonnegative")
    h = np.asarray(lags, dtype=float)
    return (a + b) ** h


def pareto_sample(alpha: float, x_min: float, N: int, seed: int) -> np.ndarray:
    """Inverse-CDF Pareto draws x_min * U^(-1/alpha), U uniform on (0, 1]."""
    if alpha <= 0 or x_min <= 0:
        raise ValidationError("alpha and x_min must be positive")
    if N < 1:
        raise ValidationError("N must be >= 1")
    rng = np.random.default_rng(seed)
    u = 1.0 - rng.random(N)  # (0, 1]; u = 1 maps to the x_min boundary
    return x_min * u ** (-1.0 / alpha)


def reciprocal_tail_check(price_samples, *, near_zero_divisor: float = 50.0,
                          min_near_zero: int = 10) -> TailFit:
    """Fit the tail exponent of |1/p|; expected exponent 1 when the price
    density is positive at zero.

    Requires mass near zero: at least ``min_near_zero`` samples with
    |p| < median(|p|) / near_zero_divisor, else the reciprocals are
    bounded and there is no tail to fit (DiagnosticError).
    """
    p = np.asarray(price_samples, dtype=float).ravel()
    absp = np.abs(p)
    absp = absp[absp > 0]
    if absp.size < 100:
        raise ValidationError("need at least 100 nonzero price samples")
    med = float(np.median(absp))
    near = int(np.sum(absp < med / near_zero_divisor))
    if near < min_near_zero:
        raise DiagnosticError(
            f"no mass near zero ({near} samples below median/{near_zero_divisor:g}); "
            "reciprocals are bounded and carry no power-law tail")
    recip = 1.0 / absp
    x_min = select_xmin(recip)
    return tail_fit_ls(recip, x_min)
