"""Speculation-only market model and the Kesten tail machinery.

With no value investors the return follows a random-coefficient
autoregression: r_t = n_t * r_e_t - gamma, where the expected return
feeds on realized returns and news. At zero memory this is exactly

    r_t = n_t * r_{t-1} + n_t * eps_t * news_t - gamma,

whose stationary law has a power tail prob{|r| > x} ~ c x^(-alpha) with
alpha solving E[n^alpha] = 1. For exponential weights with mean m the
moment has the closed form m^alpha * Gamma(alpha + 1), so the predicted
exponent is a one-dimensional root-finding problem, and the prediction
can be validated against a long simulated path of the recursion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import DiagnosticError, ValidationError
from .model import SimulationPath, simulate_linear
from .params import ModelParams
from .stylized import TailFit, select_xmin, tail_fit_ls

__all__ = [
    "EULER_GAMMA",
    "KestenRoot",
    "simulate_speculative",
    "kesten_moment",
    "kesten_tail_root",
    "stationarity_margin",
    "validate_stationary_tail",
]

EULER_GAMMA = 0.5772156649015329

# root bracket: covers every empirically relevant tail exponent
_ALPHA_LO = 1e-6
_ALPHA_HI = 64.0


@dataclass(frozen=True)
class KestenRoot:
    """Tail-exponent prediction E[n^alpha*] = 1 for exponential n.

    ``alpha_star`` is None when no root exists (nonstationary regime,
    E[log n] >= 0, or the crossing lies beyond the search bracket).
    """

    alpha_star: float | None
    residual: float
    log_moment: float
    mean_n: float

    @property
    def exists(self) -> bool:
        return self.alpha_star is not None


def simulate_speculative(params: ModelParams, seed: int) -> SimulationPath:
    """Simulate the speculation-only model (mean_nII must be 0, mu_I < 1).

    Runs the same engine as :func:`simulate_linear`; with a zero
    value-investor weight the clearing step reduces exactly to
    r_t = n_I_t * r_e_t - gamma, and at mu_I = 0 further to the
    first-order random-coefficient autoregression. Paths are therefore
    bit-identical with simulate_linear under shared (params, seed).
    """
    if params.mean_nII != 0.0:
        raise ValidationError("speculative model requires mean_nII = 0")
    if params.mu_I >= 1.0:
        raise ValidationError("speculative model requires mu_I < 1")
    return simulate_linear(params, seed)


def _log_moment_fn(mean_n: float):
    log_m = math.log(mean_n)

    def g(alpha: float) -> float:
        # log E[n^alpha] = alpha*log(mean_n) + log Gamma(alpha+1)
        return alpha * log_m + float(gammaln(alpha + 1.0))

    return g


def kesten_moment(mean_n: float, alpha: float) -> float:
    """E[n^alpha] for n exponential with mean ``mean_n``: m^alpha * Gamma(alpha+1)."""
    if mean_n <= 0 or alpha <= 0:
        raise ValidationError("mean_n and alpha must be positive")
    return math.exp(_log_moment_fn(mean_n)(alpha))


def stationarity_margin(mean_n: float) -> float:
    """E[log n] for exponential n: log(mean_n) - Euler's gamma.

    Negative values are the stationarity condition for the recursion; the
    margin hits zero at mean_n = e^gamma ~ 1.781.
    """
    if mean_n <= 0:
        raise ValidationError("mean_n must be positive")
    return math.log(mean_n) - EULER_GAMMA


def kesten_tail_root(mean_n: float, tol: float = 1e-12) -> KestenRoot:
    """Solve E[n^alpha] = 1 for alpha > 0 by bracketed bisection.

    Works on g(alpha) = log E[n^alpha], which starts at 0, dips negative
    when E[log n] < 0, and crosses back exactly once. Returns a no-root
    KestenRoot when E[log n] >= 0 (no power-law prediction) or when the
    crossing lies above the alpha = 64 bracket.
    """
    log_moment = stationarity_margin(mean_n)
    if log_moment >= 0.0:
        return KestenRoot(alpha_star=None, residual=math.nan,
                          log_moment=log_moment, mean_n=mean_n)
    g = _log_moment_fn(mean_n)

    lo = _ALPHA_LO
    if g(lo) >= 0.0:  # cannot happen for log_moment < 0, defensive
        return KestenRoot(alpha_star=None, residual=math.nan,
                          log_moment=log_moment, mean_n=mean_n)
    hi = 1.0
    while g(hi) < 0.0:
        hi *= 2.0
        if hi > _ALPHA_HI:
            return KestenRoot(alpha_star=None, residual=math.nan,
                              log_moment=log_moment, mean_n=mean_n)

    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol * max(1.0, hi):
            break
    alpha_star = 0.5 * (lo + hi)
    residual = abs(math.expm1(g(alpha_star)))
    return KestenRoot(alpha_star=alpha_star, residual=residual,
                      log_moment=log_moment, mean_n=mean_n)


def simulate_kesten_recursion(mean_n: float, std_eps: float, gamma: float,
                              n_samples: int, seed: int, *,
                              mean_eps: float = 0.0,
                              prob_news: float = 1.0) -> np.ndarray:
    """Iterate r_t = n_t r_{t-1} + n_t eps_t news_t - gamma from r_0 = 0."""
    if mean_n <= 0:
        raise ValidationError("mean_n must be positive")
    if n_samples < 1:
        raise ValidationError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    n = rng.exponential(mean_n, n_samples)
    eps = rng.normal(mean_eps, std_eps, n_samples)
    if prob_news >= 1.0:
        news = 1.0
        b = n * eps - gamma
    else:
        news = (rng.random(n_samples) < prob_news)
        b = n * eps * news - gamma
    a_list = n.tolist()
    b_list = b.tolist()
    out = np.empty(n_samples)
    r = 0.0
    for i in range(n_samples):
        r = a_list[i] * r + b_list[i]
        out[i] = r
    return out


def validate_stationary_tail(mean_n: float, std_eps: float, gamma: float,
                             n_samples: int, seed: int, *,
                             mean_eps: float = 0.0, prob_news: float = 1.0,
                             burn_frac: float = 0.1,
                             min_burn: int = 1000) -> TailFit:
    """Estimate the tail exponent of the simulated zero-memory recursion.

    Discards a burn-in prefix (10% of the path, at least 1000 samples) so
    the remainder approximates the stationary law, then fits the tail of
    |r| with the cutoff-selected least-squares estimator. Raises
    DiagnosticError when no power-law prediction exists for ``mean_n`` or
    when the path is degenerate (no usable tail).
    """
    root = kesten_tail_root(mean_n)
    if not root.exists:
        raise DiagnosticError(
            f"no power-law prediction for mean_n={mean_n} "
            f"(E[log n] = {root.log_moment:+.4f})")
    path = simulate_kesten_recursion(mean_n, std_eps, gamma, n_samples, seed,
                                     mean_eps=mean_eps, prob_news=prob_news)
    burn = max(min_burn, int(burn_frac * n_samples))
    if burn >= n_samples:
        raise DiagnosticError("path shorter than the burn-in prefix")
    tail_data = np.abs(path[burn:])
    tail_data = tail_data[tail_data > 0]
    if tail_data.size < 50:
        raise DiagnosticError("insufficient tail: degenerate recursion output")
    try:
        x_min = select_xmin(tail_data)
        return tail_fit_ls(tail_data, x_min)
    except ValidationError as exc:
        raise DiagnosticError(f"insufficient tail: {exc}") from exc
