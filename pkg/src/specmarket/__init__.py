"""specmarket: speculative asset market simulation and stylized-fact estimators.

A linear market model with adaptive, news-corrected expectations and two
trading types; its speculation-only reduction, a random-coefficient
autoregression whose power-law tail exponent is predicted by a moment
condition; estimators for fat tails, volatility clustering and long
memory; GARCH and Pareto reference processes; and seeded, reproducible
experiments (summary-table columns, exponent ensembles, bubble sweeps,
pooled crash tails) with CSV/JSON/SVG output.
"""

__version__ = "0.1.0"

from .errors import DiagnosticError, ValidationError
from .params import (
    DISCRETE_UNIFORM,
    LAB_DIVIDEND_SET,
    RANDOM_WALK,
    ModelParams,
    declining_value,
    table1_general,
    table1_speculative,
)
from .rng import path_seeds, substreams
from .model import (
    LiquidityAccount,
    SimulationPath,
    adaptive_update,
    cash_and_liquidity,
    fundamental_update,
    liquidity_weights,
    market_return,
    price_update,
    simulate_linear,
    step_dividend,
    value_clearing_return,
)
from .agents import TraderPopulation, simulate_agents
from .speculative import (
    EULER_GAMMA,
    KestenRoot,
    kesten_moment,
    kesten_tail_root,
    simulate_kesten_recursion,
    simulate_speculative,
    stationarity_margin,
    validate_stationary_tail,
)
from .stylized import (
    AcfResult,
    SummaryStats,
    TailFit,
    acf_power_fit,
    empirical_ccdf,
    sample_acf,
    select_xmin,
    summary_stats,
    tail_fit_ls,
    tail_fit_mle,
)
from .reference import (
    GarchParams,
    garch_acf_theoretical,
    garch_simulate,
    pareto_sample,
    reciprocal_tail_check,
)
from .experiments import (
    BubbleMetrics,
    ExperimentReport,
    SeedRecord,
    bubble_metrics,
    bubble_sweep,
    crash_tail,
    ensemble_alpha,
    fit_return_tail,
    reproduce_table1,
)
