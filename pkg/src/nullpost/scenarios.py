"""Named scenario registry and grid runner.

Eight named scenarios (S1..S8) vary Type I error and the Type II
specification under a high null-prior probability; the full grid crosses
three prior levels, three Type II distributions, and three alpha levels
(27 cells).  All seeds derive from one documented root so every run is
reproducible and any cell can be re-run in isolation.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .betadist import BetaParams
from .posterior import (
    DEFAULT_CI_LEVEL,
    DEFAULT_N,
    ErrorConfig,
    NullPrior,
    PosteriorSummary,
    TypeIISpec,
    analytic_prior_summary,
    propagate,
    summarize,
)
from .rng import derive_key, derive_seed, spawn_key

# Root of all builtin seeds; change it and every builtin scenario reseeds.
DEFAULT_ROOT_SEED = 7151

# Prior-probability levels for the null being true.  The "low" level uses
# Beta(3,8), whose true mean is 3/11 ~ 0.27.
PRIOR_LEVELS: dict[str, BetaParams] = {
    "high": BetaParams(60, 6),
    "medium": BetaParams(15, 15),
    "low": BetaParams(3, 8),
}

# Type II error distributions keyed by the power level they correspond to
# (power = 1 - Type II error): mean power 2/7, 1/2, 10/11.
POWER_LEVELS: dict[str, BetaParams] = {
    "low": BetaParams(10, 4),
    "medium": BetaParams(8, 8),
    "high": BetaParams(2, 20),
}

ALPHA_LEVELS: tuple[float, ...] = (0.05, 0.01, 0.005)

_GRID_SPAWN_INDEX = 100  # grid root = spawn 100 of the root seed


@dataclass(frozen=True)
class ScenarioSpec:
    """A named, fully seeded configuration for one Monte Carlo run."""

    id: str
    label: str
    prior: NullPrior
    cfg: ErrorConfig
    n: int = DEFAULT_N
    seed: int = 0

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "label": self.label,
            "prior": {"a": self.prior.dist.a, "b": self.prior.dist.b},
            "alpha": self.cfg.alpha,
            "type2": self.cfg.type2.to_dict(),
            "n": self.n,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class ScenarioResult:
    """Prior and posterior summaries for one scenario."""

    spec: ScenarioSpec
    prior_summary: PosteriorSummary
    posterior: PosteriorSummary

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "prior_summary": self.prior_summary.to_dict(),
            "posterior": self.posterior.to_dict(),
        }


def cell_seed(root_seed: int, i: int, j: int, k: int) -> int:
    """Seed of grid cell (prior i, power j, alpha k): root hashed per index.

    Truncated to 53 bits so the seed survives the JSON/JavaScript boundary.
    """
    return derive_seed(derive_key(derive_key(root_seed, i), j), k)


def _named_specs(n: int, root_seed: int) -> list[ScenarioSpec]:
    high = NullPrior(PRIOR_LEVELS["high"])
    point9 = TypeIISpec.from_point(0.9)
    low_t2 = TypeIISpec(dist=POWER_LEVELS["low"])
    high_t2 = TypeIISpec(dist=POWER_LEVELS["high"])
    rows = [
        ("S1", "Point low power 0.10, alpha 0.05, high prior", point9, 0.05),
        ("S2", "Point low power 0.10, alpha 0.01, high prior", point9, 0.01),
        ("S3", "Low power Beta(10,4), alpha 0.05, high prior", low_t2, 0.05),
        ("S4", "Low power Beta(10,4), alpha 0.01, high prior", low_t2, 0.01),
        ("S5", "Low power Beta(10,4), alpha 0.005, high prior", low_t2, 0.005),
        ("S6", "High power Beta(2,20), alpha 0.05, high prior", high_t2, 0.05),
        ("S7", "High power Beta(2,20), alpha 0.01, high prior", high_t2, 0.01),
        ("S8", "High power Beta(2,20), alpha 0.005, high prior", high_t2, 0.005),
    ]
    return [
        ScenarioSpec(
            id=sid,
            label=label,
            prior=high,
            cfg=ErrorConfig(alpha=alpha, type2=t2),
            n=n,
            seed=derive_seed(root_seed, idx + 1),
        )
        for idx, (sid, label, t2, alpha) in enumerate(rows)
    ]


def _grid_specs(n: int, root_seed: int) -> list[ScenarioSpec]:
    grid_root = spawn_key(root_seed, _GRID_SPAWN_INDEX)
    specs = []
    for i, (pname, pshape) in enumerate(PRIOR_LEVELS.items()):
        for j, (wname, t2shape) in enumerate(POWER_LEVELS.items()):
            for k, alpha in enumerate(ALPHA_LEVELS):
                pm = 100.0 * pshape.a / (pshape.a + pshape.b)
                wm = 100.0 * (1.0 - t2shape.a / (t2shape.a + t2shape.b))
                specs.append(ScenarioSpec(
                    id=f"grid-{pname}-{wname}-a{alpha:g}",
                    label=(
                        f"{pname.capitalize()} prior Beta({pshape.a:g},{pshape.b:g}) "
                        f"(mean {pm:.0f}%), {wname} power Beta({t2shape.a:g},{t2shape.b:g}) "
                        f"(mean power {wm:.0f}%), alpha {alpha:g}"
                    ),
                    prior=NullPrior(pshape),
                    cfg=ErrorConfig(alpha=alpha, type2=TypeIISpec(dist=t2shape)),
                    n=n,
                    seed=cell_seed(grid_root, i, j, k),
                ))
    return specs


def builtin_scenarios(n: int = DEFAULT_N, root_seed: int = DEFAULT_ROOT_SEED) -> list[ScenarioSpec]:
    """S1..S8 plus the 27 grid cells, seeded deterministically from the root."""
    return _named_specs(n, root_seed) + _grid_specs(n, root_seed)


def get_scenario(scenario_id: str, n: int = DEFAULT_N,
                 root_seed: int = DEFAULT_ROOT_SEED) -> ScenarioSpec:
    """Look up one builtin scenario by id."""
    for spec in builtin_scenarios(n=n, root_seed=root_seed):
        if spec.id == scenario_id:
            return spec
    raise KeyError(f"unknown scenario id: {scenario_id!r}")


def run_scenario(spec: ScenarioSpec, ci_level: float = DEFAULT_CI_LEVEL,
                 workers: int = 1) -> ScenarioResult:
    """Analytic prior summary plus Monte Carlo posterior summary."""
    prior_summary = analytic_prior_summary(spec.prior, n=spec.n, ci_level=ci_level)
    samples = propagate(spec.prior, spec.cfg, n=spec.n, seed=spec.seed, workers=workers)
    return ScenarioResult(
        spec=spec,
        prior_summary=prior_summary,
        posterior=summarize(samples, ci_level=ci_level),
    )


def run_grid(
    priors: list[NullPrior],
    type2s: list[TypeIISpec],
    alphas: list[float],
    n: int = DEFAULT_N,
    seed: int = DEFAULT_ROOT_SEED,
    ci_level: float = DEFAULT_CI_LEVEL,
    workers: int = 1,
) -> list[list[list[ScenarioResult]]]:
    """One ScenarioResult per (prior, type2, alpha) cell, indexed [i][j][k].

    Cell seeds derive from the root seed and the cell index, so individual
    cells re-run in isolation bit-identically.  Cells are independent; with
    ``workers > 1`` they run concurrently and land in index order.
    """
    if not priors or not type2s or not alphas:
        raise ValueError("grid axes must be non-empty")
    specs: list[ScenarioSpec] = []
    for i, prior in enumerate(priors):
        for j, t2 in enumerate(type2s):
            for k, alpha in enumerate(alphas):
                specs.append(ScenarioSpec(
                    id=f"cell-{i}-{j}-{k}",
                    label=f"grid cell ({i},{j},{k})",
                    prior=prior,
                    cfg=ErrorConfig(alpha=alpha, type2=t2),
                    n=n,
                    seed=cell_seed(seed, i, j, k),
                ))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            flat = list(pool.map(lambda s: run_scenario(s, ci_level=ci_level), specs))
    else:
        flat = [run_scenario(s, ci_level=ci_level) for s in specs]
    nj, nk = len(type2s), len(alphas)
    return [
        [[flat[(i * nj + j) * nk + k] for k in range(nk)] for j in range(nj)]
        for i in range(len(priors))
    ]


def grid_to_dict(matrix: list[list[list[ScenarioResult]]]) -> dict:
    """JSON document keyed by cell coordinates ``"i,j,k"``."""
    cells = {}
    for i, plane in enumerate(matrix):
        for j, row in enumerate(plane):
            for k, result in enumerate(row):
                cells[f"{i},{j},{k}"] = result.to_dict()
    return {
        "shape": [len(matrix), len(matrix[0]), len(matrix[0][0])],
        "cells": cells,
    }


CSV_COLUMNS = (
    "prior_a", "prior_b", "type2_form", "type2_params", "alpha",
    "mean", "ci_lo", "ci_hi", "n", "seed",
)


def result_csv_row(result: ScenarioResult) -> list:
    """Flatten one result into the fixed CSV column order."""
    spec = result.spec
    t2 = spec.cfg.type2
    if t2.is_point:
        form, params = "point", f"{t2.point:g}"
    else:
        form, params = "beta", f"{t2.dist.a:g},{t2.dist.b:g}"
    post = result.posterior
    return [
        spec.prior.dist.a, spec.prior.dist.b, form, params, spec.cfg.alpha,
        post.mean, post.ci_lower, post.ci_upper, post.n, spec.seed,
    ]


def grid_to_csv_rows(matrix: list[list[list[ScenarioResult]]]) -> list[list]:
    """Header plus one flattened row per cell, in index order."""
    rows: list[list] = [list(CSV_COLUMNS)]
    for plane in matrix:
        for row in plane:
            for result in row:
                rows.append(result_csv_row(result))
    return rows
