"""Posterior probability of the null hypothesis given a significant result.

Point formula, marginal probability of significance, Monte Carlo propagation
of Beta-distributed uncertainty in the null-prior probability and in Type II
error, and summaries (mean, equal-tailed credible interval, histogram).
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .betadist import BetaParams, beta_cdf, beta_mean, beta_quantile, beta_sample_lanes
from .rng import RandomStream

HISTOGRAM_BINS = 512
DEFAULT_N = 100_000
DEFAULT_CI_LEVEL = 0.95


class DegenerateInputError(ValueError):
    """The posterior formula's denominator is exactly zero for these inputs."""


@dataclass(frozen=True)
class NullPrior:
    """Beta distribution of the probability that the null hypothesis is true."""

    dist: BetaParams


@dataclass(frozen=True)
class TypeIISpec:
    """Type II error as a fixed point value or a Beta distribution.

    Exactly one of ``point`` / ``dist`` is set.  Draws from the distribution
    form are Type II errors; power is one minus the draw.
    """

    point: float | None = None
    dist: BetaParams | None = None

    def __post_init__(self):
        if (self.point is None) == (self.dist is None):
            raise ValueError("specify exactly one of point or dist")
        if self.point is not None and not 0.0 <= self.point < 1.0:
            raise ValueError(f"point Type II error must lie in [0, 1), got {self.point}")

    @classmethod
    def from_point(cls, value: float) -> "TypeIISpec":
        return cls(point=value)

    @classmethod
    def from_beta(cls, a: float, b: float) -> "TypeIISpec":
        return cls(dist=BetaParams(a, b))

    @property
    def is_point(self) -> bool:
        return self.point is not None

    def to_dict(self) -> dict:
        if self.is_point:
            return {"point": self.point}
        return {"a": self.dist.a, "b": self.dist.b}


@dataclass(frozen=True)
class ErrorConfig:
    """Type I error level together with the Type II specification."""

    alpha: float
    type2: TypeIISpec

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")


@dataclass(frozen=True)
class SampleSet:
    """Monte Carlo draws of the posterior probability of the null."""

    draws: np.ndarray
    seed: int
    n: int

    def __post_init__(self):
        if self.draws.shape != (self.n,):
            raise ValueError("draws length must equal n")


@dataclass(frozen=True)
class PosteriorSummary:
    """Mean, equal-tailed credible interval, and histogram of a sample set."""

    mean: float
    ci_lower: float
    ci_upper: float
    ci_level: float
    histogram: np.ndarray  # counts over HISTOGRAM_BINS equal bins on [0, 1]
    n: int
    seed: int | None = None

    def to_dict(self) -> dict:
        counts = self.histogram.tolist()
        return {
            "mean": float(self.mean),
            "ci": [float(self.ci_lower), float(self.ci_upper)],
            "ci_level": float(self.ci_level),
            "n": int(self.n),
            "histogram": {"bins": int(self.histogram.shape[0]), "counts": counts},
            "seed": self.seed,
        }


def _validate_unit(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")


def posterior_null_given_sig(theta: float, alpha: float, power: float) -> float:
    """P(null true | significant) = alpha*theta / (alpha*theta + power*(1-theta)).

    Boundary inputs collapse naturally (theta=0 gives 0, theta=1 with
    alpha>0 gives 1); a denominator of exactly zero raises
    :class:`DegenerateInputError`.
    """
    _validate_unit("theta", theta)
    _validate_unit("alpha", alpha)
    _validate_unit("power", power)
    num = alpha * theta
    den = num + power * (1.0 - theta)
    if den == 0.0:
        raise DegenerateInputError(
            f"posterior undefined: alpha*theta + power*(1-theta) = 0 "
            f"(theta={theta}, alpha={alpha}, power={power})"
        )
    return num / den


def prob_sig(theta: float, alpha: float, power: float) -> float:
    """Marginal probability of a significant result: alpha*theta + power*(1-theta)."""
    _validate_unit("theta", theta)
    _validate_unit("alpha", alpha)
    _validate_unit("power", power)
    return alpha * theta + power * (1.0 - theta)


def _posterior_array(theta: np.ndarray, alpha: float, power) -> np.ndarray:
    """Vectorized posterior with the boundary-collapse rules (keeps MC runs total)."""
    num = alpha * theta
    den = num + power * (1.0 - theta)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(den > 0.0, num / np.where(den > 0.0, den, 1.0),
                       np.where(theta <= 0.0, 0.0, 1.0))
    return out


def propagate(
    prior: NullPrior,
    cfg: ErrorConfig,
    n: int = DEFAULT_N,
    seed: int = 0,
    workers: int = 1,
) -> SampleSet:
    """Monte Carlo distribution of the posterior probability of the null.

    Each iteration draws the null-prior probability (and, for a
    distributional Type II spec, a Type II error) and evaluates the point
    posterior.  Draw ``k`` depends only on ``(seed, k)``: results are
    bit-identical for any ``workers`` count or chunk layout.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    root = RandomStream(seed)
    theta_key = root.spawn(0).key
    type2_key = root.spawn(1).key

    def shard(start: int, count: int) -> np.ndarray:
        theta = beta_sample_lanes(theta_key, start, count, prior.dist)
        if cfg.type2.is_point:
            power = 1.0 - cfg.type2.point
        else:
            power = 1.0 - beta_sample_lanes(type2_key, start, count, cfg.type2.dist)
        return _posterior_array(theta, cfg.alpha, power)

    draws = np.empty(n, dtype=np.float64)
    if workers == 1:
        draws[:] = shard(0, n)
    else:
        bounds = np.linspace(0, n, workers + 1, dtype=int)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                (i, pool.submit(shard, int(bounds[i]), int(bounds[i + 1] - bounds[i])))
                for i in range(workers)
                if bounds[i + 1] > bounds[i]
            ]
            for i, fut in futures:
                draws[bounds[i]:bounds[i + 1]] = fut.result()
    return SampleSet(draws=draws, seed=seed, n=n)


def summarize(samples: SampleSet, ci_level: float = DEFAULT_CI_LEVEL) -> PosteriorSummary:
    """Mean, equal-tailed interval (type-7 interpolated quantiles), histogram."""
    if not 0.0 < ci_level < 1.0:
        raise ValueError(f"ci_level must lie in (0, 1), got {ci_level}")
    if samples.n < 2:
        raise ValueError("summarize requires at least 2 draws")
    tail = (1.0 - ci_level) / 2.0
    lo, hi = np.quantile(samples.draws, [tail, 1.0 - tail], method="linear")
    counts, _ = np.histogram(samples.draws, bins=HISTOGRAM_BINS, range=(0.0, 1.0))
    return PosteriorSummary(
        mean=float(samples.draws.mean()),
        ci_lower=float(lo),
        ci_upper=float(hi),
        ci_level=ci_level,
        histogram=counts,
        n=samples.n,
        seed=samples.seed,
    )


def analytic_posterior_quantile(
    prior: NullPrior,
    alpha: float,
    power_point: float | TypeIISpec,
    u: float,
) -> float:
    """Exact posterior quantile for a point Type II error.

    The posterior is strictly increasing in the null-prior probability when
    alpha and power are fixed, so its u-quantile is the transformed
    u-quantile of the prior.  Serves as the reference for point-Type-II
    Monte Carlo runs; distributional specs are rejected.
    """
    if isinstance(power_point, TypeIISpec):
        if not power_point.is_point:
            raise ValueError("analytic quantile is only valid for a point Type II error")
        power = 1.0 - power_point.point
    else:
        power = float(power_point)
    theta_u = beta_quantile(u, prior.dist)
    return posterior_null_given_sig(theta_u, alpha, power)


def analytic_prior_summary(
    prior: NullPrior,
    n: int = DEFAULT_N,
    ci_level: float = DEFAULT_CI_LEVEL,
) -> PosteriorSummary:
    """Summary of the null-prior distribution itself, computed analytically.

    Histogram holds expected counts (n times each bin's exact probability
    mass) so the payload is shape-compatible with Monte Carlo summaries.
    """
    if not 0.0 < ci_level < 1.0:
        raise ValueError(f"ci_level must lie in (0, 1), got {ci_level}")
    tail = (1.0 - ci_level) / 2.0
    edges = np.linspace(0.0, 1.0, HISTOGRAM_BINS + 1)
    cdf_vals = np.array([beta_cdf(float(x), prior.dist) for x in edges])
    expected = np.diff(cdf_vals) * n
    return PosteriorSummary(
        mean=beta_mean(prior.dist),
        ci_lower=beta_quantile(tail, prior.dist),
        ci_upper=beta_quantile(1.0 - tail, prior.dist),
        ci_level=ci_level,
        histogram=expected,
        n=n,
        seed=None,
    )
