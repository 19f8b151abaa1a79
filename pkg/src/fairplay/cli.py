"""Command-line front door: impute, sensitivity, simulate, serve.

Exit codes are a stable contract: 0 success, 2 usage errors (argparse),
3 data validation failures, 4 runtime failures.
"""

from __future__ import annotations

import argparse
import json
import os
import socket
import sys
from pathlib import Path

from .errors import DegenerateContextError, FairplayError, TournamentFileError
from .imputation import (
    attach_interval,
    blup_weight,
    build_context,
    context_posterior,
    elo_expectation,
    impute_bayes_blup,
    impute_pure_elo,
    prior_from_context,
    sensitivity_sweep,
)
from .model import DEFAULT_K, Method
from .montecarlo import run_grid
from .reports import render_text_report, summary_csv, write_reports
from .standings import ReportingPolicy, apply_policy, export_crosstable, render_standings
from .tournament_io import load_tournament

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_RUNTIME = 4

_METHOD_ALIASES = {
    "forfeit": Method.FORFEIT,
    "annul": Method.ANNULMENT,
    "elo": Method.PURE_ELO,
    "performance": Method.PURE_PERFORMANCE,
    "bayes": Method.BAYES_BLUP,
}

DEFAULT_SEED = 42
DEFAULT_TOURNAMENTS = 10000


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fairplay",
        description="Score unplayed round-robin games after a withdrawal.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_impute = sub.add_parser("impute", help="impute unplayed games and print standings")
    p_impute.add_argument("file", help="tournament JSON document")
    p_impute.add_argument("--method", choices=sorted(_METHOD_ALIASES), default="bayes")
    p_impute.add_argument("--k", type=float, default=None, help="prior strength (default: file value or 3)")
    p_impute.add_argument("--level", type=float, default=0.95, help="credible-interval level")
    p_impute.add_argument("--report", choices=ReportingPolicy.ALL, default=ReportingPolicy.ONE_DECIMAL_TOTAL)
    p_impute.add_argument("--format", choices=("csv", "text"), default="text")
    p_impute.add_argument("--out", default=None, help="also write the crosstable CSV here")
    p_impute.set_defaults(func=cmd_impute)

    p_sens = sub.add_parser("sensitivity", help="sweep the prior strength parameter")
    p_sens.add_argument("file")
    p_sens.add_argument(
        "--k",
        type=float,
        action="append",
        dest="k_values",
        help="prior strength (repeatable; default 1..5)",
    )
    p_sens.add_argument("--format", choices=("csv", "text"), default="text")
    p_sens.set_defaults(func=cmd_sensitivity)

    p_sim = sub.add_parser("simulate", help="run the Monte Carlo cross-validation study")
    p_sim.add_argument("--config", default=None, help="JSON config file")
    p_sim.add_argument("--seed", type=int, default=None)
    p_sim.add_argument("--n-per-scenario", type=int, default=None)
    p_sim.add_argument("--k", type=float, default=DEFAULT_K)
    p_sim.add_argument("--out", default=None, help="report directory (default: reports)")
    p_sim.add_argument("--format", choices=("csv", "text"), default=None)
    p_sim.set_defaults(func=cmd_simulate)

    p_serve = sub.add_parser("serve", help="serve the JSON API (and UI bundle if present)")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--ui-dir", default=None, help="static bundle directory (default: ./frontend/dist)")
    p_serve.set_defaults(func=cmd_serve)
    return parser


def _fmt3(x: float) -> str:
    return f"{x:.3f}"


def cmd_impute(args) -> int:
    tournament = load_tournament(args.file)
    k = args.k if args.k is not None else tournament.k
    crosstable = tournament.crosstable
    withdrawn = crosstable.player(tournament.withdrawn_id)
    unplayed = crosstable.unplayed_opponents(withdrawn.id)
    method = _METHOD_ALIASES[args.method]

    ctx = None
    try:
        ctx = build_context(crosstable, withdrawn.id)
    except DegenerateContextError:
        print(
            "warning: the withdrawn player completed no games; imputing from "
            "ratings alone (weight w(0)=0). FIDE regulations prescribe annulment "
            "for withdrawals this early.",
            file=sys.stderr,
        )
        if method in (Method.PURE_PERFORMANCE, Method.BAYES_BLUP):
            method = Method.PURE_ELO

    rows = apply_policy(crosstable, withdrawn.id, method, k)
    if args.format == "csv":
        out_text = export_crosstable(crosstable, rows)
        print(out_text, end="")
    else:
        print(f"{tournament.name} - withdrawal of {withdrawn.name} ({withdrawn.rating:g})")
        if ctx is not None:
            posterior = context_posterior(ctx, k)
            prior = prior_from_context(ctx, k)
            weight = blup_weight(ctx.n, k)
            adjustment = weight * (1.0 - ctx.mean_score - ctx.mean_played_expectation)
            print(
                f"played n={ctx.n}, points P={ctx.total_points:g}, "
                f"scoring rate s-bar={_fmt3(ctx.mean_score)}, "
                f"mean opponent expectation E-bar={_fmt3(ctx.mean_played_expectation)}"
            )
            print(
                f"prior theta0={_fmt3(prior.theta0)} (k={k:g}), weight w={_fmt3(weight)}, "
                f"adjustment delta={_fmt3(adjustment)}, posterior "
                f"Beta({posterior.alpha:.2f}, {posterior.beta:.2f}) mean {_fmt3(posterior.mean)}"
            )
        print()
        header = (
            f"{'player':<26} {'rating':>6} {'elo exp':>8} {'perf':>6} "
            f"{'imputed':>8} {'trad':>6}  {'interval':>16}"
        )
        print(header)
        print("-" * len(header))
        for opp in unplayed:
            e = elo_expectation(opp.rating, withdrawn.rating)
            if ctx is not None:
                result = attach_interval(
                    impute_bayes_blup(ctx, opp, k),
                    ctx.n,
                    k,
                    tournament.sigma2,
                    args.level,
                )
                lo, hi = result.credible_interval
                perf = _fmt3(1.0 - ctx.mean_score)
                imputed = _fmt3(result.score)
                interval = f"[{_fmt3(lo)}, {_fmt3(hi)}]"
            else:
                perf, imputed, interval = "-", _fmt3(e), "-"
            print(
                f"{opp.name:<26} {opp.rating:>6g} {_fmt3(e):>8} {perf:>6} "
                f"{imputed:>8} {1.0:>6.3f}  {interval:>16}"
            )
        print()
        print(f"standings ({args.method} policy):")
        print(render_standings(rows, args.report), end="")

    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        tmp = Path(args.out).with_suffix(Path(args.out).suffix + ".tmp")
        tmp.write_text(export_crosstable(crosstable, rows), encoding="utf-8")
        os.replace(tmp, args.out)
    return EXIT_OK


def cmd_sensitivity(args) -> int:
    tournament = load_tournament(args.file)
    crosstable = tournament.crosstable
    ctx = build_context(crosstable, tournament.withdrawn_id)
    unplayed = crosstable.unplayed_opponents(tournament.withdrawn_id)
    k_values = args.k_values if args.k_values else [1.0, 2.0, 3.0, 4.0, 5.0]
    rows = sensitivity_sweep(ctx, list(unplayed), k_values)
    if args.format == "csv":
        ids = [opp.id for opp in unplayed]
        print("k,w," + ",".join(ids) + ",spread")
        for row in rows:
            scores = dict(row.scores)
            cells = ",".join(f"{scores[i]:.6f}" for i in ids)
            print(f"{row.k:g},{row.weight:.6f},{cells},{row.spread:.6f}")
    else:
        names = {opp.id: opp.name for opp in unplayed}
        print(f"prior-strength sweep for {tournament.name}")
        header = f"{'k':>5} {'w(n)':>7}  " + "  ".join(
            f"{names[i][:14]:>14}" for i, _ in rows[0].scores
        ) + f"  {'spread':>7}"
        print(header)
        print("-" * len(header))
        for row in rows:
            cells = "  ".join(f"{score:>14.3f}" for _, score in row.scores)
            print(f"{row.k:>5g} {row.weight:>7.3f}  {cells}  {row.spread:>7.3f}")
    return EXIT_OK


def _load_sim_config(args) -> tuple[int, int, Path, str]:
    seed = DEFAULT_SEED
    tournaments = DEFAULT_TOURNAMENTS
    out_dir = "reports"
    fmt = "text"
    if args.config:
        try:
            doc = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise TournamentFileError(
                f"line {exc.lineno}", f"invalid JSON in config: {exc.msg}"
            ) from exc
        if not isinstance(doc, dict):
            raise TournamentFileError("$", "config must be a JSON object")
        seed = doc.get("seed", seed)
        tournaments = doc.get("tournamentsPerScenario", tournaments)
        out_dir = doc.get("out", out_dir)
        fmt = doc.get("format", fmt)
    if args.seed is not None:
        seed = args.seed
    if args.n_per_scenario is not None:
        tournaments = args.n_per_scenario
    if args.out is not None:
        out_dir = args.out
    if args.format is not None:
        fmt = args.format
    env_seed = os.environ.get("FAIRPLAY_SEED")
    if env_seed is not None:
        seed = int(env_seed)
    if not isinstance(tournaments, int) or tournaments < 1:
        raise TournamentFileError("tournamentsPerScenario", "must be a positive integer")
    if not isinstance(seed, int) or seed < 0:
        raise TournamentFileError("seed", "must be a non-negative integer")
    if fmt not in ("csv", "text"):
        raise TournamentFileError("format", "must be 'csv' or 'text'")
    return seed, tournaments, Path(out_dir), fmt


def cmd_simulate(args) -> int:
    seed, tournaments, out_dir, fmt = _load_sim_config(args)
    grid = run_grid(seed, tournaments, k=args.k)
    paths = write_reports(grid, out_dir)
    if fmt == "csv":
        print(summary_csv(grid), end="")
    else:
        print(render_text_report(grid), end="")
    print(f"reports written to {out_dir}/ ({', '.join(p.name for p in paths)})", file=sys.stderr)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    ui_dir = Path(args.ui_dir) if args.ui_dir else Path("frontend/dist")
    # Fail fast with a clear message when the port is taken.
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((args.host, args.port))
    except OSError as exc:
        print(f"error: cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    finally:
        probe.close()
    app = create_app(ui_dir if ui_dir.is_dir() else None)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TournamentFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except FairplayError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
