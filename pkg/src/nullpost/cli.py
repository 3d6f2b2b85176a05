"""Command-line front door: single computations, scenario export, service launcher.

Exit codes: 0 success, 2 invalid arguments (with the offending flag named),
1 internal numeric or I/O failure.  Every randomized command either receives
a seed or generates one and prints it, so each run is reproducible.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import secrets
import socket
import sys
from pathlib import Path

from .betadist import BetaParams, density_grid
from .posterior import (
    DEFAULT_CI_LEVEL,
    DEFAULT_N,
    ErrorConfig,
    NullPrior,
    TypeIISpec,
    analytic_prior_summary,
    propagate,
    summarize,
)
from .scenarios import (
    DEFAULT_ROOT_SEED,
    POWER_LEVELS,
    builtin_scenarios,
    grid_to_csv_rows,
    grid_to_dict,
    result_csv_row,
    run_scenario,
    CSV_COLUMNS,
)

SEED_ENV_VAR = "NULLPOST_SEED"
OUTPUT_FORMATS = ("table", "json", "csv")


def _parse_shape_pair(text: str, flag: str, parser: argparse.ArgumentParser) -> BetaParams:
    parts = text.split(",")
    if len(parts) != 2:
        parser.error(f"{flag} expects two comma-separated shapes like '60,6', got {text!r}")
    try:
        return BetaParams(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        parser.error(f"{flag}: {exc}")


def _parse_type2(text: str, parser: argparse.ArgumentParser) -> TypeIISpec:
    # A comma means a Beta distribution on the Type II error; otherwise a point.
    try:
        if "," in text:
            shapes = _parse_shape_pair(text, "--type2", parser)
            return TypeIISpec(dist=shapes)
        return TypeIISpec.from_point(float(text))
    except ValueError as exc:
        parser.error(f"--type2: {exc}")


def _resolve_seed(arg_seed: int | None) -> int:
    if arg_seed is not None:
        return arg_seed
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {env!r}")
    return secrets.randbits(53)  # JS-safe like all generated seeds


def _summary_table(prior_summary, post_summary, cfg: ErrorConfig, seed: int, n: int) -> str:
    t2 = cfg.type2
    t2_text = f"point {t2.point:g}" if t2.is_point else f"Beta({t2.dist.a:g},{t2.dist.b:g})"
    lines = [
        f"seed: {seed}",
        f"{'':<10}{'mean':>10}{'ci_lo':>10}{'ci_hi':>10}",
        f"{'prior':<10}{prior_summary.mean:>10.6f}{prior_summary.ci_lower:>10.6f}"
        f"{prior_summary.ci_upper:>10.6f}",
        f"{'posterior':<10}{post_summary.mean:>10.6f}{post_summary.ci_lower:>10.6f}"
        f"{post_summary.ci_upper:>10.6f}",
        f"(n={n}, ci_level={post_summary.ci_level:g}, alpha={cfg.alpha:g}, type2={t2_text})",
    ]
    return "\n".join(lines)


def cmd_compute(args, parser: argparse.ArgumentParser) -> int:
    prior_shapes = _parse_shape_pair(args.prior, "--prior", parser)
    type2 = _parse_type2(args.type2, parser)
    if not 0.0 < args.alpha <= 1.0:
        parser.error(f"--alpha must lie in (0, 1], got {args.alpha}")
    if args.n < 2:
        parser.error(f"--n must be at least 2, got {args.n}")
    if not 0.0 < args.ci_level < 1.0:
        parser.error(f"--ci-level must lie in (0, 1), got {args.ci_level}")
    if args.workers < 1:
        parser.error(f"--workers must be >= 1, got {args.workers}")
    try:
        seed = _resolve_seed(args.seed)
    except ValueError as exc:
        parser.error(str(exc))

    prior = NullPrior(prior_shapes)
    cfg = ErrorConfig(alpha=args.alpha, type2=type2)
    prior_summary = analytic_prior_summary(prior, n=args.n, ci_level=args.ci_level)
    samples = propagate(prior, cfg, n=args.n, seed=seed, workers=args.workers)
    post_summary = summarize(samples, ci_level=args.ci_level)

    if args.format == "json":
        doc = {
            "request": {
                "prior": {"a": prior_shapes.a, "b": prior_shapes.b},
                "alpha": args.alpha,
                "type2": type2.to_dict(),
                "n": args.n,
                "seed": seed,
                "ci_level": args.ci_level,
            },
            "prior": prior_summary.to_dict(),
            "posterior": post_summary.to_dict(),
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(CSV_COLUMNS)
        t2 = cfg.type2
        form, params = ("point", f"{t2.point:g}") if t2.is_point else \
            ("beta", f"{t2.dist.a:g},{t2.dist.b:g}")
        writer.writerow([
            prior_shapes.a, prior_shapes.b, form, params, cfg.alpha,
            post_summary.mean, post_summary.ci_lower, post_summary.ci_upper,
            args.n, seed,
        ])
    else:
        print(_summary_table(prior_summary, post_summary, cfg, seed, args.n))
    return 0


def cmd_export(args, parser: argparse.ArgumentParser) -> int:
    if args.n < 2:
        parser.error(f"--n must be at least 2, got {args.n}")
    try:
        seed = _resolve_seed(args.seed) if args.seed is not None else DEFAULT_ROOT_SEED
    except ValueError as exc:
        parser.error(str(exc))
    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"error: cannot create output directory {out_dir}: {exc}", file=sys.stderr)
        return 1

    written: list[Path] = []

    def emit(name: str, payload: str) -> None:
        path = out_dir / name
        path.write_text(payload)
        written.append(path)

    try:
        specs = builtin_scenarios(n=args.n, root_seed=seed)
        named = [s for s in specs if not s.id.startswith("grid-")]
        grid_specs = [s for s in specs if s.id.startswith("grid-")]

        for spec in named:
            result = run_scenario(spec, workers=args.workers)
            emit(f"{spec.id}.json", json.dumps(result.to_dict(), indent=2, sort_keys=True))

        grid_results = [run_scenario(s, workers=args.workers) for s in grid_specs]
        matrix = [
            [[grid_results[(i * 3 + j) * 3 + k] for k in range(3)] for j in range(3)]
            for i in range(3)
        ]
        emit("grid.json", json.dumps(grid_to_dict(matrix), indent=2, sort_keys=True))
        rows = grid_to_csv_rows(matrix)
        csv_text = "\n".join(",".join(str(v) for v in row) for row in rows) + "\n"
        emit("grid.csv", csv_text)

        for level, shapes in POWER_LEVELS.items():
            xs, dens = density_grid(shapes, points=512)
            emit(
                f"density_type2_{level}.json",
                json.dumps(
                    {
                        "a": shapes.a,
                        "b": shapes.b,
                        "mean": shapes.mean,
                        "mean_power": 1.0 - shapes.mean,
                        "grid": xs.tolist(),
                        "density": dens.tolist(),
                    },
                    indent=2,
                    sort_keys=True,
                ),
            )
    except OSError as exc:
        for path in written:
            path.unlink(missing_ok=True)
        print(f"error: failed writing under {out_dir}: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # numeric failure: remove partial outputs
        for path in written:
            path.unlink(missing_ok=True)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {len(written)} files to {out_dir}")
    return 0


def cmd_serve(args, parser: argparse.ArgumentParser) -> int:
    if args.ui_dir is not None and not Path(args.ui_dir).is_dir():
        parser.error(f"--ui-dir is not a directory: {args.ui_dir}")
    try:
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((args.host, args.port))
        probe.close()
    except (OSError, OverflowError, ValueError) as exc:
        print(f"error: cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return 1

    import uvicorn

    from .service import create_app

    app = create_app(root_seed=args.seed, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nullpost",
        description=(
            "Posterior probability that a point null hypothesis is true given a "
            "significant result, with Beta uncertainty on the prior and on power."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="one posterior computation")
    p_compute.add_argument("--prior", required=True, metavar="A,B",
                           help="Beta shapes of the null-prior probability, e.g. 60,6")
    p_compute.add_argument("--alpha", required=True, type=float, help="Type I error in (0,1]")
    p_compute.add_argument("--type2", required=True, metavar="B|A,B",
                           help="Type II error: point value like 0.9 or Beta shapes like 10,4")
    p_compute.add_argument("--n", type=int, default=DEFAULT_N, help="Monte Carlo draws")
    p_compute.add_argument("--seed", type=int, default=None,
                           help=f"RNG seed (default: ${SEED_ENV_VAR} or random, printed)")
    p_compute.add_argument("--ci-level", type=float, default=DEFAULT_CI_LEVEL)
    p_compute.add_argument("--format", choices=OUTPUT_FORMATS, default="table")
    p_compute.add_argument("--workers", type=int, default=1)

    p_export = sub.add_parser("export", help="export all builtin scenarios, grid, densities")
    p_export.add_argument("--out", required=True, help="output directory")
    p_export.add_argument("--n", type=int, default=DEFAULT_N)
    p_export.add_argument("--seed", type=int, default=None,
                         help=f"root seed (default {DEFAULT_ROOT_SEED})")
    p_export.add_argument("--workers", type=int, default=1)

    p_serve = sub.add_parser("serve", help="run the HTTP API")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--seed", type=int, default=None,
                         help="root seed for server-generated request seeds")
    p_serve.add_argument("--ui-dir", default=None,
                         help="directory of built web UI assets to serve at /")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"compute": cmd_compute, "export": cmd_export, "serve": cmd_serve}
    try:
        return handlers[args.command](args, parser)
    except BrokenPipeError:
        return 0
    except Exception as exc:  # internal numeric failure
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
