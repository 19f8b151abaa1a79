"""Stateless JSON-over-HTTP facade for the imputation engine.

Every handler is a pure function of its request body, so responses are
identical under any request ordering or concurrency. Schema problems
return 400 with the offending field path; domain problems (valid shape,
impossible request) return 422.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from .errors import DegenerateContextError, FairplayError, TournamentFileError
from .imputation import (
    attach_interval,
    beta_posterior,
    blup_weight,
    build_context,
    context_posterior,
    elo_expectation,
    impute_annulment_equivalent,
    impute_bayes_blup,
    impute_forfeit,
    impute_pure_elo,
    impute_pure_performance,
    prior_from_context,
    prior_theta0,
    sensitivity_sweep,
)
from .model import Crosstable, Method, PriorSpec
from .standings import StandingsRow, apply_policy
from .tournament_io import Tournament, parse_tournament

_METHOD_ALIASES = {
    "forfeit": Method.FORFEIT,
    "annul": Method.ANNULMENT,
    "annulment": Method.ANNULMENT,
    "elo": Method.PURE_ELO,
    "performance": Method.PURE_PERFORMANCE,
    "bayes": Method.BAYES_BLUP,
}

#: Label order used by the compare endpoint (both FIDE variants included).
COMPARE_METHODS = (
    ("forfeit", Method.FORFEIT),
    ("annulment", Method.ANNULMENT),
    ("elo", Method.PURE_ELO),
    ("performance", Method.PURE_PERFORMANCE),
    ("bayes", Method.BAYES_BLUP),
)


def _row_json(row: StandingsRow) -> dict:
    return {
        "playerId": row.player.id,
        "name": row.player.name,
        "rating": row.player.rating,
        "playedPoints": row.played_points,
        "imputedPoints": row.imputed_points,
        "total": row.total,
        "sonnebornBerger": row.sonneborn_berger,
        "rank": row.rank,
        "withdrawn": row.withdrawn,
    }


def _standings_json(crosstable: Crosstable, rows: list[StandingsRow]) -> list[dict]:
    """Rows in seating order (identical across methods); rank is a field."""
    by_id = {r.player.id: r for r in rows}
    return [_row_json(by_id[p.id]) for p in crosstable.players if p.id in by_id]


def _parse_body_tournament(body: dict, path_prefix: str = "") -> Tournament:
    if not isinstance(body, dict):
        raise TournamentFileError(path_prefix or "$", "request body must be a JSON object")
    return parse_tournament(body)


def create_app(ui_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="fairplay", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.middleware("http")
    async def require_json(request: Request, call_next):
        if request.method == "POST" and request.url.path.startswith("/api/"):
            ctype = request.headers.get("content-type", "")
            if not ctype.lower().startswith("application/json"):
                return JSONResponse(
                    status_code=400,
                    content={"error": "content-type must be application/json", "path": "$"},
                )
        return await call_next(request)

    @app.exception_handler(TournamentFileError)
    async def on_tournament_error(_request, exc: TournamentFileError):
        return JSONResponse(status_code=400, content={"error": exc.reason, "path": exc.path})

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(_request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        loc = ".".join(str(p) for p in first.get("loc", ()))
        return JSONResponse(
            status_code=400,
            content={"error": first.get("msg", "invalid request"), "path": loc or "$"},
        )

    @app.exception_handler(FairplayError)
    async def on_domain_error(_request, exc: FairplayError):
        return JSONResponse(status_code=422, content={"error": str(exc)})

    @app.get("/api/health")
    def health() -> PlainTextResponse:
        return PlainTextResponse("ok")

    @app.post("/api/impute")
    def impute(body: dict):
        tournament = _parse_body_tournament(body)
        method_name = body.get("method", "bayes")
        if not isinstance(method_name, str) or method_name not in _METHOD_ALIASES:
            raise TournamentFileError("method", f"must be one of {sorted(set(_METHOD_ALIASES))}")
        level = body.get("level", 0.95)
        if isinstance(level, bool) or not isinstance(level, (int, float)) or not 0 <= level < 1:
            raise TournamentFileError("level", "must be a number in [0, 1)")
        method = _METHOD_ALIASES[method_name]
        k = tournament.k
        crosstable = tournament.crosstable
        withdrawn = crosstable.player(tournament.withdrawn_id)
        unplayed = crosstable.unplayed_opponents(withdrawn.id)

        try:
            ctx = build_context(crosstable, withdrawn.id)
        except DegenerateContextError:
            ctx = None
            if method in (Method.PURE_PERFORMANCE, Method.BAYES_BLUP):
                method = Method.PURE_ELO

        imputations = []
        for opp in unplayed:
            if method is Method.FORFEIT:
                result = impute_forfeit(opp, withdrawn)
            elif method is Method.ANNULMENT:
                result = impute_annulment_equivalent(crosstable, opp.id, withdrawn.id)
            elif method is Method.PURE_ELO:
                result = impute_pure_elo(withdrawn, opp)
            elif method is Method.PURE_PERFORMANCE:
                result = impute_pure_performance(ctx, opp)
            else:
                result = attach_interval(
                    impute_bayes_blup(ctx, opp, k), ctx.n, k, tournament.sigma2, level
                )
            imputations.append(
                {
                    "opponentId": opp.id,
                    "eloExpectation": result.elo_expectation,
                    "score": result.score,
                    "interval": list(result.credible_interval)
                    if result.credible_interval
                    else None,
                }
            )

        rows = apply_policy(crosstable, withdrawn.id, method, k)
        if ctx is not None:
            weight = blup_weight(ctx.n, k)
            adjustment = weight * (1.0 - ctx.mean_score - ctx.mean_played_expectation)
            posterior = context_posterior(ctx, k)
        else:
            weight = 0.0
            adjustment = 0.0
            others = [p.rating for p in crosstable.players if p.id != withdrawn.id]
            theta0 = prior_theta0(withdrawn.rating, sum(others) / len(others))
            posterior = beta_posterior(PriorSpec(k=k, theta0=theta0), 0.0, 1)

        return {
            "imputations": imputations,
            "standings": _standings_json(crosstable, rows),
            "adjustment": adjustment,
            "weight": weight,
            "posterior": {
                "alpha": posterior.alpha,
                "beta": posterior.beta,
                "mean": posterior.mean,
            },
        }

    @app.post("/api/sensitivity")
    def sensitivity(body: dict):
        if not isinstance(body, dict) or "tournament" not in body:
            raise TournamentFileError("tournament", "missing required field")
        tournament = _parse_body_tournament(body["tournament"], "tournament")
        k_values = body.get("kValues")
        if not isinstance(k_values, list) or not k_values:
            raise TournamentFileError("kValues", "must be a non-empty list of positive numbers")
        for i, k in enumerate(k_values):
            if isinstance(k, bool) or not isinstance(k, (int, float)) or not k > 0:
                raise TournamentFileError(f"kValues[{i}]", "must be a positive number")
        crosstable = tournament.crosstable
        ctx = build_context(crosstable, tournament.withdrawn_id)
        unplayed = crosstable.unplayed_opponents(tournament.withdrawn_id)
        rows = sensitivity_sweep(ctx, list(unplayed), [float(k) for k in k_values])
        return {
            "rows": [
                {
                    "k": row.k,
                    "w": row.weight,
                    "scores": dict(row.scores),
                    "spread": row.spread,
                }
                for row in rows
            ],
            "spread": rows[0].spread,
            "opponents": [opp.id for opp in unplayed],
        }

    @app.post("/api/compare")
    def compare(body: dict):
        if not isinstance(body, dict) or "tournament" not in body:
            raise TournamentFileError("tournament", "missing required field")
        tournament = _parse_body_tournament(body["tournament"], "tournament")
        k = body.get("k", tournament.k)
        if isinstance(k, bool) or not isinstance(k, (int, float)) or not k > 0:
            raise TournamentFileError("k", "must be a positive number")
        crosstable = tournament.crosstable
        withdrawn_id = tournament.withdrawn_id
        withdrawn = crosstable.player(withdrawn_id)
        unplayed = crosstable.unplayed_opponents(withdrawn_id)
        ctx = build_context(crosstable, withdrawn_id)  # 422 when degenerate

        methods_json = {}
        for label, method in COMPARE_METHODS:
            rows = apply_policy(crosstable, withdrawn_id, method, k)
            methods_json[label] = _standings_json(crosstable, rows)

        matrix = []
        for opp in unplayed:
            per_method: dict[str, float | None] = {
                "forfeit": 1.0,
                "elo": elo_expectation(opp.rating, withdrawn.rating),
                "performance": 1.0 - ctx.mean_score,
                "bayes": impute_bayes_blup(ctx, opp, k).score,
            }
            try:
                per_method["annulment"] = impute_annulment_equivalent(
                    crosstable, opp.id, withdrawn_id
                ).score
            except DegenerateContextError:
                per_method["annulment"] = None
            matrix.append({"opponentId": opp.id, "perMethod": per_method})

        return {"methods": methods_json, "imputations": matrix, "k": k}

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
