"""Model parameters and the standard simulation presets."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import ValidationError

RANDOM_WALK = "random-walk"
DISCRETE_UNIFORM = "discrete-uniform"

#: Standard laboratory dividend set for declining-value sessions.
LAB_DIVIDEND_SET = (0.0, 4.0, 8.0, 20.0)


@dataclass(frozen=True)
class ModelParams:
    """Exogenous constants of the linear market model plus initial conditions.

    Defaults reproduce the general-model preset (see :func:`table1_general`).

    Notes on units: ``rho`` is the per-period discount rate used in the
    expected-fundamental-value recursion; ``gamma`` is the price-impact
    drift (return per unit of normalized excess demand); ``mean_nI`` and
    ``mean_nII`` are the means of the exponential distributions of the
    per-period trading-type weights; shocks are Gaussian with the given
    moments; ``prob_news`` is the per-period Bernoulli news probability.
    """

    rho: float = 1e-4
    gamma: float = 1e-4
    mu_I: float = 0.99
    mu_II: float = 1.0
    mean_nI: float = 0.2
    mean_nII: float = 0.8
    std_eps_d: float = 0.1
    std_eps_I: float = 0.01
    mean_eps_I: float = 0.0
    std_eps_II: float = 0.1
    prob_news: float = 0.2
    T: int = 10_000
    p0: float = 1e5
    v0: float = 1e5
    d0: float = 10.0
    de0: float = 10.0
    r1e: float = 0.0
    dividend_mode: str = RANDOM_WALK
    dividend_set: tuple[float, ...] = LAB_DIVIDEND_SET
    price_floor_ratio: float = 1e-9

    def __post_init__(self):
        self.validate()

    def validate(self):
        checks = [
            (0.0 <= self.mu_I <= 1.0, "mu_I must be within [0, 1]"),
            (0.0 <= self.mu_II <= 1.0, "mu_II must be within [0, 1]"),
            (0.0 <= self.prob_news <= 1.0, "prob_news must be within [0, 1]"),
            (self.gamma > 0.0, "gamma must be positive"),
            (self.T >= 1, "T must be >= 1"),
            (self.p0 > 0.0, "p0 must be positive"),
            (self.mean_nI >= 0.0, "mean_nI must be nonnegative"),
            (self.mean_nII >= 0.0, "mean_nII must be nonnegative"),
            (self.std_eps_d >= 0.0, "std_eps_d must be nonnegative"),
            (self.std_eps_I >= 0.0, "std_eps_I must be nonnegative"),
            (self.std_eps_II >= 0.0, "std_eps_II must be nonnegative"),
            (self.d0 >= 0.0, "d0 must be nonnegative"),
            (self.price_floor_ratio > 0.0, "price_floor_ratio must be positive"),
            (self.dividend_mode in (RANDOM_WALK, DISCRETE_UNIFORM),
             f"dividend_mode must be '{RANDOM_WALK}' or '{DISCRETE_UNIFORM}'"),
        ]
        if self.dividend_mode == DISCRETE_UNIFORM:
            checks.append((len(self.dividend_set) > 0, "dividend_set must be nonempty"))
            checks.append((all(d >= 0 for d in self.dividend_set),
                           "dividend_set values must be nonnegative"))
        for ok, msg in checks:
            if not ok:
                raise ValidationError(msg)

    def with_overrides(self, **kwargs) -> "ModelParams":
        return replace(self, **kwargs)

    @property
    def price_floor(self) -> float:
        return self.price_floor_ratio * self.p0


def table1_general() -> ModelParams:
    """General-model preset: both trading types, long news memory.

    The discount rate is the per-period value consistent with the initial
    dividend yield (d0 / v0 = 1e-4), which keeps the expected fundamental
    value fluctuating around its starting level over a 10^4-period run.
    """
    return ModelParams()


def table1_speculative() -> ModelParams:
    """Speculation-only preset: no value investors, news every period.

    The news-impact mean is 0.01% and its standard deviation 1%; the
    trading weight is exponential with mean 0.55, which places the
    predicted power-law tail exponent at 3. The return memory is the
    moderate value that reproduces the column's documented summary
    statistics (std(r) near 1.3%); the zero-memory reduction is exercised
    separately where the short-memory property itself is under test.
    """
    return ModelParams(
        rho=0.0,
        gamma=1e-4,
        mu_I=0.4,
        mu_II=1.0,
        mean_nI=0.55,
        mean_nII=0.0,
        std_eps_d=0.0,
        std_eps_I=0.01,
        mean_eps_I=1e-4,
        std_eps_II=0.0,
        prob_news=1.0,
        T=10_000,
        p0=1e5,
        v0=1e5,
        d0=10.0,
        de0=10.0,
    )


def declining_value(T: int = 100, mean_nI: float = 0.2) -> ModelParams:
    """Bubble-and-crash session preset: lab dividends, zero discounting.

    Dividends are uniform draws from {0, 4, 8, 20}; the expected dividend
    forecast starts at the set mean (8), so the expected fundamental value
    steps down from T * 8 toward zero, and the price starts at half of it.
    """
    mean_d = sum(LAB_DIVIDEND_SET) / len(LAB_DIVIDEND_SET)
    v0 = T * mean_d
    base = table1_general()
    return base.with_overrides(
        rho=0.0,
        T=T,
        mean_nI=mean_nI,
        dividend_mode=DISCRETE_UNIFORM,
        dividend_set=LAB_DIVIDEND_SET,
        d0=mean_d,
        de0=mean_d,
        v0=v0,
        p0=v0 / 2.0,
    )


PRESETS = {
    "general": table1_general,
    "speculative": table1_speculative,
    "declining": declining_value,
}
