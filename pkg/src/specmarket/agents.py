"""Agent-ensemble simulator: explicit traders with +-1 unitary demands.

Each trader carries a minimum acceptable return rho_i (uniform on
[0, rho_max] for its type) and submits a unitary signed demand: +1 when
the trader's anticipated return clears its threshold, -1 otherwise. The
fraction of buyers within a type is the empirical CDF of the drawn
thresholds evaluated at the type's forecast, so the aggregate return is

    r_t = n_I_t * rho_max_I * Fhat_I + n_II_t * rho_max_II * Fhat_II - gamma

which converges to the linear model's return law as populations grow,
for forecasts inside the linear range (0, rho_max) of the threshold
distribution. Below zero the buyer fraction saturates at 0 (every trader
of the type sells), which is where the ensemble and the unclamped linear
law genuinely part ways.

Clearing follows the same two stages as the linear engine: the
value-investor fraction equilibrates against its own price impact (a
scalar fixed point, since thresholds enter through the empirical CDF),
then momentum demand and the impact drift apply as market orders.

Type I forecasts update per trader (memory may be heterogeneous); type
II value forecasts use the common discount rate, so the trader mean
stays aligned with the aggregate recursion over long horizons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DiagnosticError, ValidationError
from .model import SimulationPath, _draw_period_arrays
from .params import DISCRETE_UNIFORM, ModelParams
from .rng import substreams

__all__ = ["TraderPopulation", "simulate_agents"]


@dataclass(frozen=True)
class TraderPopulation:
    """Static trader configuration: thresholds and memories per type."""

    rho_I: np.ndarray
    rho_II: np.ndarray
    mu_I: np.ndarray
    mu_II: np.ndarray
    rho_max_I: float
    rho_max_II: float

    def __post_init__(self):
        if self.rho_I.size + self.rho_II.size < 1:
            raise ValidationError("population must contain at least one trader")
        if self.rho_max_I <= 0 or self.rho_max_II <= 0:
            raise ValidationError("rho_max bounds must be positive")
        for arr, name in ((self.rho_I, "rho_I"), (self.rho_II, "rho_II")):
            if arr.size and np.any(arr < 0):
                raise ValidationError(f"{name} thresholds must be nonnegative")
        if self.mu_I.size != self.rho_I.size or self.mu_II.size != self.rho_II.size:
            raise ValidationError("memory arrays must match threshold arrays")

    @property
    def N_I(self) -> int:
        return self.rho_I.size

    @property
    def N_II(self) -> int:
        return self.rho_II.size

    @classmethod
    def from_params(cls, params: ModelParams, n_I: int, n_II: int, seed: int,
                    rho_max_I: float = 0.25, rho_max_II: float = 0.25):
        """Draw a population matched to ``params``.

        Thresholds are uniform on [0, rho_max]; memories are the model's
        type-level values. ``rho_max`` sets the width of the linear
        response range and should comfortably cover the forecasts the
        parameterization produces.
        """
        rng = substreams(seed)["trader"]
        rho_I = rng.uniform(0.0, rho_max_I, n_I)
        rho_II = rng.uniform(0.0, rho_max_II, n_II)
        return cls(
            rho_I=rho_I, rho_II=rho_II,
            mu_I=np.full(n_I, params.mu_I), mu_II=np.full(n_II, params.mu_II),
            rho_max_I=rho_max_I, rho_max_II=rho_max_II,
        )


def _buyer_fraction(sorted_w: np.ndarray, p_a: float) -> float:
    """Fraction of value traders with v_i / (1 + rho_i) >= clearing price."""
    n = sorted_w.size
    return (n - np.searchsorted(sorted_w, p_a, side="left")) / n


def _solve_value_clearing(sorted_w: np.ndarray, weight: float, p_prev: float) -> float:
    """Fixed point z = weight * Fhat((v - p)/p >= rho) at p = p_prev (1 + z).

    The right-hand side is nonincreasing in z and bounded in [0, weight],
    so bisection on [0, weight] (or a degenerate zero) converges; weight
    is n_II_t * rho_max_II.
    """
    if weight <= 0.0:
        return 0.0
    lo, hi = 0.0, weight
    f_lo = weight * _buyer_fraction(sorted_w, p_prev) - lo
    if f_lo <= 0.0:
        return 0.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        val = weight * _buyer_fraction(sorted_w, p_prev * (1.0 + mid)) - mid
        if val > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15 * max(1.0, weight):
            break
    return 0.5 * (lo + hi)


def simulate_agents(params: ModelParams, pop: TraderPopulation,
                    seed: int) -> tuple[SimulationPath, np.ndarray]:
    """Simulate the trader ensemble; returns (path, excess demand series).

    Shares the named random substreams with :func:`simulate_linear`, so a
    run under the same (params, seed) faces identical news, shocks and
    weight draws, and the two paths differ only by finite-population
    effects of the threshold draws. The excess demand series is the
    normalized demand imbalance r_t / gamma implied by the impact law.
    """
    params.validate()
    if pop.N_I + pop.N_II < 1:
        raise ValidationError("empty population")
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

    has_I, has_II = pop.N_I > 0, pop.N_II > 0
    re_i = np.full(pop.N_I, params.r1e)
    de_i = np.full(pop.N_II, params.de0)
    ve_i = np.full(pop.N_II, params.v0)
    one_plus_rho_II = 1.0 + pop.rho_II

    p = np.empty(T)
    r = np.empty(T)
    d = np.empty(T)
    d_e = np.empty(T)
    v_e = np.empty(T)
    r_e = np.empty(T)
    zeta = np.empty(T)
    clamped = np.zeros(T, dtype=bool)

    p_prev = params.p0
    d_prev = params.d0
    r_prev = params.r1e
    gamma = params.gamma

    for t in range(T):
        d_t = div[t] if discrete else max(0.0, d_prev + div[t])
        if has_II:
            de_i = pop.mu_II * de_i + (1.0 - pop.mu_II) * d_prev + eps_II[t] * news[t]
            ve_i = (1.0 + params.rho) * ve_i - de_i
        if t == 0:
            r_t = params.r1e
        else:
            if has_I:
                re_i = pop.mu_I * re_i + (1.0 - pop.mu_I) * r_prev + eps_I[t] * news[t]
                fhat_I = float(np.mean(re_i >= pop.rho_I))
                g = n_I[t] * pop.rho_max_I * fhat_I - gamma
            else:
                g = -gamma
            if has_II and n_II[t] > 0.0:
                sorted_w = np.sort(ve_i / one_plus_rho_II)
                z = _solve_value_clearing(sorted_w, n_II[t] * pop.rho_max_II, p_prev)
            else:
                z = 0.0
            r_t = (1.0 + z) * (1.0 + g) - 1.0
        p_t = (1.0 + r_t) * p_prev
        if p_t < floor:
            p_t = floor
            clamped[t] = True
        if not math.isfinite(p_t):
            raise DiagnosticError(f"non-finite state at period {t + 1} (seed {seed})")

        p[t], r[t], d[t] = p_t, r_t, d_t
        d_e[t] = float(de_i.mean()) if has_II else params.de0
        v_e[t] = float(ve_i.mean()) if has_II else params.v0
        r_e[t] = float(re_i.mean()) if has_I else params.r1e
        zeta[t] = r_t / gamma
        p_prev, r_prev, d_prev = p_t, r_t, d_t

    path = SimulationPath(
        t=np.arange(1, T + 1),
        p=p, r=r, d=d, d_e=d_e, v_e=v_e, r_e=r_e,
        n_I=draws["n_I"], n_II=draws["n_II"], news=draws["news"],
        seed=seed, clamped=clamped,
    )
    return path, zeta
