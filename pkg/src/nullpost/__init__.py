"""Posterior probability of a point null hypothesis after a significant result.

Beta-distributed uncertainty about the prior probability of the null and
about statistical power is propagated by Monte Carlo to the distribution of
the posterior probability of the null, with named scenarios, a CLI, and an
HTTP API.
"""
from .betadist import (
    BetaParams,
    beta_cdf,
    beta_mean,
    beta_pdf,
    beta_quantile,
    beta_sample,
    beta_sample_batch,
    density_grid,
    log_gamma,
)
from .posterior import (
    DEFAULT_CI_LEVEL,
    DEFAULT_N,
    HISTOGRAM_BINS,
    DegenerateInputError,
    ErrorConfig,
    NullPrior,
    PosteriorSummary,
    SampleSet,
    TypeIISpec,
    analytic_posterior_quantile,
    analytic_prior_summary,
    posterior_null_given_sig,
    prob_sig,
    propagate,
    summarize,
)
from .rng import RandomStream
from .scenarios import (
    ALPHA_LEVELS,
    DEFAULT_ROOT_SEED,
    POWER_LEVELS,
    PRIOR_LEVELS,
    ScenarioResult,
    ScenarioSpec,
    builtin_scenarios,
    get_scenario,
    run_grid,
    run_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHA_LEVELS",
    "BetaParams",
    "DEFAULT_CI_LEVEL",
    "DEFAULT_N",
    "DEFAULT_ROOT_SEED",
    "DegenerateInputError",
    "ErrorConfig",
    "HISTOGRAM_BINS",
    "NullPrior",
    "POWER_LEVELS",
    "PRIOR_LEVELS",
    "PosteriorSummary",
    "RandomStream",
    "SampleSet",
    "ScenarioResult",
    "ScenarioSpec",
    "TypeIISpec",
    "analytic_posterior_quantile",
    "analytic_prior_summary",
    "beta_cdf",
    "beta_mean",
    "beta_pdf",
    "beta_quantile",
    "beta_sample",
    "beta_sample_batch",
    "builtin_scenarios",
    "density_grid",
    "get_scenario",
    "log_gamma",
    "posterior_null_given_sig",
    "prob_sig",
    "propagate",
    "run_grid",
    "run_scenario",
    "summarize",
    "__version__",
]
