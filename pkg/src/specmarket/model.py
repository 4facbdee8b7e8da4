"""Market model core: single-step recursions and the linear path simulator.

The per-period state is (price, return, dividend, expected dividend,
expected fundamental value, expected return). One period runs as:

1. draw the news flag, shocks and the two trading-type weights;
2. advance the dividend (positive random walk, or a uniform draw from a
   discrete set in lab mode);
3. update the expected dividend from last period's dividend, then the
   expected fundamental value, then the expected return from last
   period's realized return;
4. clear the market in two stages: the value-investor (mispricing)
   demand equilibrates against its own price impact, closed form in
   :func:`value_clearing_return`; then momentum demand and the impact
   drift move the price as period-end market orders,
   ``r = (1 + z) * (1 + n_I * r_e - gamma) - 1``.

Stage 4 resolves the simultaneity of the return law, whose mispricing
term references the within-period price: evaluating it at the fully
lagged price lets weight draws above 1 overshoot the correction and
roughly doubles the return variance, while a single fixed point over
both demand components damps the momentum channel as well and
undershoots it. Clearing the elastic (price-sensitive) demand first and
applying the inelastic order flow afterwards keeps every period explicit
and reproduces the documented summary statistics; with ``mean_nII = 0``
the step reduces exactly to ``r = n_I * r_e - gamma``.

Period 1 is an initialization period: its return and expected return are
pinned to ``r1e`` (the dividend and value forecasts still advance), so
the stochastic return recursion starts at period 2.

Prices are clamped at ``price_floor_ratio * p0`` (returns at or below
-100% would otherwise produce nonpositive prices); clamped periods are
flagged on the path and exempt from the price/return consistency
invariant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DiagnosticError, ValidationError
from .params import DISCRETE_UNIFORM, RANDOM_WALK, ModelParams
from .rng import substreams

__all__ = [
    "SimulationPath",
    "LiquidityAccount",
    "step_dividend",
    "adaptive_update",
    "fundamental_update",
    "market_return",
    "value_clearing_return",
    "price_update",
    "liquidity_weights",
    "cash_and_liquidity",
    "simulate_linear",
]


@dataclass(frozen=True)
class SimulationPath:
    """Aligned per-period series (index t = 1..T) from one seeded run."""

    t: np.ndarray
    p: np.ndarray
    r: np.ndarray
    d: np.ndarray
    d_e: np.ndarray
    v_e: np.ndarray
    r_e: np.ndarray
    n_I: np.ndarray
    n_II: np.ndarray
    news: np.ndarray
    seed: int
    clamped: np.ndarray = None

    def __post_init__(self):
        if self.clamped is None:
            object.__setattr__(self, "clamped", np.zeros(self.t.size, dtype=bool))
        n = self.t.size
        for name in ("p", "r", "d", "d_e", "v_e", "r_e", "n_I", "n_II", "news", "clamped"):
            if getattr(self, name).size != n:
                raise ValidationError(f"series '{name}' length differs from t")

    def __len__(self):
        return self.t.size


@dataclass(frozen=True)
class LiquidityAccount:
    """Static cash-and-units accounting for the market as a whole.

    ``L_I``/``L_II`` split total liquidity between the two trading types;
    ``rho_max_I``/``rho_max_II`` are the upper bounds of the uniform
    minimum-acceptable-return distributions.
    """

    C0: float
    S0: float
    r_f: float = 0.0
    rho_max_I: float = 1e-3
    rho_max_II: float = 1e-3
    L_I: float = 0.0
    L_II: float = 0.0

    def __post_init__(self):
        if self.C0 < 0 or self.S0 < 0:
            raise ValidationError("C0 and S0 must be nonnegative")
        if self.L_I < 0 or self.L_II < 0:
            raise ValidationError("liquidity split must be nonnegative")


def step_dividend(mode: str, d_prev: float, shock: float = 0.0, *,
                  dividend_set=None, rng: np.random.Generator | None = None) -> float:
    """Advance the dividend one period.

    Random-walk mode returns ``max(0, d_prev + shock)``; discrete mode
    ignores ``d_prev`` and draws uniformly from ``dividend_set`` (``rng``
    required).
    """
    if d_prev < 0:
        raise ValidationError("d_prev must be nonnegative")
    if mode == RANDOM_WALK:
        return max(0.0, d_prev + shock)
    if mode == DISCRETE_UNIFORM:
        if not dividend_set:
            raise ValidationError("discrete dividend mode needs a nonempty set")
        if rng is None:
            raise ValidationError("discrete dividend mode needs an rng")
        return float(dividend_set[rng.integers(0, len(dividend_set))])
    raise ValidationError(f"unknown dividend mode {mode!r}")


def adaptive_update(prev: float, observed: float, mu: float,
                    eps: float = 0.0, news: int = 0) -> float:
    """News-corrected adaptive expectation: mu*prev + (1-mu)*observed + eps*news."""
    if not 0.0 <= mu <= 1.0:
        raise ValidationError("mu must be within [0, 1]")
    return mu * prev + (1.0 - mu) * observed + eps * news


def fundamental_update(v_prev: float, rho: float, d_e: float) -> float:
    """Advance the expected fundamental value: (1+rho)*v_prev - d_e.

    Negative outputs are allowed (the recursion can undershoot zero when
    dividend forecasts exceed the discounted value); callers record them
    rather than clamping.
    """
    return (1.0 + rho) * v_prev - d_e


def market_return(n_I: float, r_e: float, n_II: float, v_e: float,
                  p_prev: float, gamma: float) -> float:
    """One-shot linear return law: n_I*r_e + n_II*(v_e - p_prev)/p_prev - gamma.

    Both demand components are evaluated against the standing price. The
    path simulators use the two-stage clearing step instead (see the
    module docstring); this explicit form is their common linearization
    and the one used for single-step reasoning and the agent-ensemble
    aggregation checks.
    """
    if p_prev <= 0:
        raise ValidationError("p_prev must be positive")
    return n_I * r_e + n_II * (v_e - p_prev) / p_prev - gamma


def value_clearing_return(n_II: float, v_e: float, p_prev: float) -> float:
    """Return moved by value-investor demand clearing against its own impact.

    Solves z = n_II * ((v_e - p)/p) at p = p_prev * (1 + z), i.e. the
    quadratic z^2 + (1 + n_II) z - n_II * m = 0 with m the mispricing at
    the standing price, taking the branch that is continuous in m around
    zero. When the discriminant is negative (value target far below any
    clearable price) the demand cascades and the function returns -1,
    which the price floor then intercepts.
    """
    if p_prev <= 0:
        raise ValidationError("p_prev must be positive")
    if n_II < 0:
        raise ValidationError("n_II must be nonnegative")
    if n_II == 0.0:
        return 0.0
    m = (v_e - p_prev) / p_prev
    disc = (1.0 + n_II) ** 2 + 4.0 * n_II * m
    if disc < 0.0:
        return -1.0
    return (-(1.0 + n_II) + math.sqrt(disc)) / 2.0


def price_update(p_prev: float, r: float, floor: float) -> tuple[float, bool]:
    """Apply a return to the price, clamping at ``floor``.

    Returns ``(price, clamped)``; the flag is True iff the floor bound.
    """
    p = (1.0 + r) * p_prev
    if p < floor:
        return floor, True
    return p, False


def liquidity_weights(account: LiquidityAccount, gamma: float) -> tuple[float, float]:
    """Trading-type weights from the liquidity split.

    n_J = 2 * (gamma / rho_max_J) * L_J / (L_I + L_II) for J = I, II.
    """
    total = account.L_I + account.L_II
    if total <= 0:
        raise ValidationError("total liquidity must be positive")
    if account.rho_max_I <= 0 or account.rho_max_II <= 0:
        raise ValidationError("rho_max bounds must be positive")
    n_I = 2.0 * (gamma / account.rho_max_I) * account.L_I / total
    n_II = 2.0 * (gamma / account.rho_max_II) * account.L_II / total
    return n_I, n_II


def cash_and_liquidity(C0: float, S0: float, r_f: float, dividends) -> tuple[np.ndarray, np.ndarray]:
    """Cash spending power and market liquidity for t = 0..T.

    C_t = (1+r_f)^t C_0 + S_0 * sum_{tau<=t} d_tau (1+r_f)^(t-tau), with
    dividends paid at t = 1..T, and L_t = S_0 + C_t.
    """
    if C0 < 0 or S0 < 0:
        raise ValidationError("C0 and S0 must be nonnegative")
    d = np.asarray(dividends, dtype=float)
    T = d.size
    C = np.empty(T + 1)
    C[0] = C0
    for t in range(1, T + 1):
        C[t] = (1.0 + r_f) * C[t - 1] + S0 * d[t - 1]
    L = S0 + C
    return C, L


def _draw_period_arrays(params: ModelParams, seed: int) -> dict[str, np.ndarray]:
    """Pre-draw every stochastic source for all T periods."""
    streams = substreams(seed)
    T = params.T
    arrays = {
        "news": (streams["news"].random(T) < params.prob_news).astype(np.int8),
        "eps_I": streams["eps_I"].normal(params.mean_eps_I, params.std_eps_I, T),
        "eps_II": streams["eps_II"].normal(0.0, params.std_eps_II, T),
        "n_I": streams["n_I"].exponential(params.mean_nI, T) if params.mean_nI > 0
               else np.zeros(T),
        "n_II": streams["n_II"].exponential(params.mean_nII, T) if params.mean_nII > 0
                else np.zeros(T),
    }
    if params.dividend_mode == DISCRETE_UNIFORM:
        choices = np.asarray(params.dividend_set, dtype=float)
        idx = streams["dividend"].integers(0, choices.size, T)
        arrays["dividend"] = choices[idx]
    else:
        arrays["dividend"] = streams["dividend"].normal(0.0, params.std_eps_d, T)
    return arrays


def simulate_linear(params: ModelParams, seed: int) -> SimulationPath:
    """Simulate the linear market model for T periods.

    Deterministic given (params, seed). Raises DiagnosticError if any
    state becomes non-finite.
    """
    params.validate()
    draws = _draw_period_arrays(params, seed)
    T = params.T
    discrete = params.dividend_mode == DISCRETE_UNIFORM
    floor = params.price_floor

    news = draws["news"].tolist()
    eps_I = draws["eps_I"].tolist()
    eps_II = draws["eps_II"].tolist()
    n_I = draws["n_I"].tolist()
    n_II = draws["n_II"].tolist()
    div = draws["dividend"].tolist()

    p = np.empty(T)
    r = np.empty(T)
    d = np.empty(T)
    d_e = np.empty(T)
    v_e = np.empty(T)
    r_e = np.empty(T)
    clamped = np.zeros(T, dtype=bool)

    p_prev = params.p0
    d_prev = params.d0
    de_prev = params.de0
    ve_prev = params.v0
    re_prev = params.r1e
    r_prev = params.r1e
    mu_I, mu_II, rho, gamma = params.mu_I, params.mu_II, params.rho, params.gamma

    for t in range(T):
        d_t = div[t] if discrete else max(0.0, d_prev + div[t])
        de_t = mu_II * de_prev + (1.0 - mu_II) * d_prev + eps_II[t] * news[t]
        ve_t = (1.0 + rho) * ve_prev - de_t
        if t == 0:
            re_t = params.r1e
            r_t = params.r1e
        else:
            re_t = mu_I * re_prev + (1.0 - mu_I) * r_prev + eps_I[t] * news[t]
            nii = n_II[t]
            if nii > 0.0:
                m = (ve_t - p_prev) / p_prev
                disc = (1.0 + nii) ** 2 + 4.0 * nii * m
                z = (-(1.0 + nii) + math.sqrt(disc)) / 2.0 if disc >= 0.0 else -1.0
            else:
                z = 0.0
            r_t = (1.0 + z) * (1.0 + n_I[t] * re_t - gamma) - 1.0
        p_t = (1.0 + r_t) * p_prev
        if p_t < floor:
            p_t = floor
            clamped[t] = True
        if not (math.isfinite(p_t) and math.isfinite(ve_t) and math.isfinite(re_t)):
            raise DiagnosticError(f"non-finite state at period {t + 1} (seed {seed})")

        p[t], r[t], d[t], d_e[t], v_e[t], r_e[t] = p_t, r_t, d_t, de_t, ve_t, re_t
        p_prev, r_prev, d_prev, de_prev, ve_prev, re_prev = p_t, r_t, d_t, de_t, ve_t, re_t

    return SimulationPath(
        t=np.arange(1, T + 1),
        p=p, r=r, d=d, d_e=d_e, v_e=v_e, r_e=r_e,
        n_I=draws["n_I"], n_II=draws["n_II"], news=draws["news"],
        seed=seed, clamped=clamped,
    )
