"""HTTP JSON API exposing the posterior computation and scenario registry.

Validation failures return 400 with field-level messages; degenerate numeric
configurations return 422; unexpected failures return 500 with an opaque id
only.  When the client omits a seed the server chooses one and echoes it, so
every response is reproducible by re-submission.  Optionally also serves the
browser UI's static files.
"""
from __future__ import annotations

import itertools
import secrets
import threading
import uuid
from typing import Union

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .betadist import BetaParams, beta_mean, beta_quantile, density_grid
from .posterior import (
    DEFAULT_CI_LEVEL,
    DegenerateInputError,
    ErrorConfig,
    NullPrior,
    TypeIISpec,
    propagate,
    summarize,
)
from .rng import derive_seed
from .scenarios import builtin_scenarios

MAX_N = 10_000_000


class PriorModel(BaseModel, extra="forbid"):
    a: float = Field(gt=0)
    b: float = Field(gt=0)


class Type2PointModel(BaseModel, extra="forbid"):
    point: float = Field(ge=0, lt=1)


class Type2BetaModel(BaseModel, extra="forbid"):
    a: float = Field(gt=0)
    b: float = Field(gt=0)


class PosteriorRequest(BaseModel, extra="forbid"):
    prior: PriorModel
    alpha: float = Field(gt=0, le=1)
    type2: Union[Type2PointModel, Type2BetaModel]
    n: int = Field(default=100_000, ge=2, le=MAX_N)
    seed: int | None = None
    ci_level: float = Field(default=DEFAULT_CI_LEVEL, gt=0, lt=1)


def _type2_spec(model: Union[Type2PointModel, Type2BetaModel]) -> TypeIISpec:
    if isinstance(model, Type2PointModel):
        return TypeIISpec.from_point(model.point)
    return TypeIISpec.from_beta(model.a, model.b)


class _SeedSource:
    """Server-chosen seeds: derived from a root when given (reproducible
    server sessions), otherwise cryptographically random."""

    def __init__(self, root_seed: int | None):
        self._root = root_seed
        self._counter = itertools.count()
        self._lock = threading.Lock()

    def next(self) -> int:
        # 53-bit seeds: exact through JSON/JavaScript number round trips.
        if self._root is None:
            return secrets.randbits(53)
        with self._lock:
            i = next(self._counter)
        return derive_seed(self._root, i)


def create_app(root_seed: int | None = None, ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="nullpost", version="0.1.0", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    seeds = _SeedSource(root_seed)

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        fields = [
            {
                "field": ".".join(str(p) for p in err["loc"] if p not in ("body", "query")),
                "message": err["msg"],
            }
            for err in exc.errors()
        ]
        return JSONResponse(status_code=400, content={"error": "validation", "fields": fields})

    @app.exception_handler(DegenerateInputError)
    async def degenerate_handler(request: Request, exc: DegenerateInputError):
        return JSONResponse(status_code=422, content={"error": "degenerate", "message": str(exc)})

    @app.exception_handler(Exception)
    async def internal_handler(request: Request, exc: Exception):
        return JSONResponse(status_code=500,
                            content={"error": "internal", "id": uuid.uuid4().hex})

    @app.get("/healthz", response_class=PlainTextResponse)
    async def healthz() -> str:
        return "ok"

    @app.post("/v1/posterior")
    def compute_posterior(req: PosteriorRequest):
        seed = req.seed if req.seed is not None else seeds.next()
        prior = NullPrior(BetaParams(req.prior.a, req.prior.b))
        cfg = ErrorConfig(alpha=req.alpha, type2=_type2_spec(req.type2))
        samples = propagate(prior, cfg, n=req.n, seed=seed)
        summary = summarize(samples, ci_level=req.ci_level)
        resolved = {
            "prior": {"a": req.prior.a, "b": req.prior.b},
            "alpha": req.alpha,
            "type2": cfg.type2.to_dict(),
            "n": req.n,
            "seed": seed,
            "ci_level": req.ci_level,
        }
        return {"request": resolved, "summary": summary.to_dict()}

    @app.get("/v1/prior-preview")
    def prior_preview(a: float = Query(gt=0), b: float = Query(gt=0)):
        params = BetaParams(a, b)
        xs, dens = density_grid(params, points=512)
        return {
            "a": a,
            "b": b,
            "mean": beta_mean(params),
            "ci": [beta_quantile(0.025, params), beta_quantile(0.975, params)],
            "ci_level": 0.95,
            "grid": xs.tolist(),
            "density": dens.tolist(),
        }

    @app.get("/v1/scenarios")
    def scenarios():
        return {"scenarios": [spec.to_dict() for spec in builtin_scenarios()]}

    if ui_dir is not None:
        # API routes above take precedence; everything else is the UI.
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
