"""Estimators and imputation policies for unplayed round-robin games.

The central quantity is the shrinkage imputation

    I = E + w(n) * (1 - s_bar - E_bar),        w(n) = n / (n + k)

which adds a uniform form adjustment, learned from the withdrawn player's n
played games, to each unplayed opponent's Elo expectation E. The same
adjustment applies to every opponent, so rating differences are preserved
while observed form shifts the whole block. The remaining policies (forfeit,
annulment-equivalent, pure Elo, pure performance) are the classical
baselines it is compared against.

All functions are pure; nothing here mutates its inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from statistics import NormalDist

from .errors import (
    DegenerateContextError,
    DomainError,
    InvalidInputError,
    UnsupportedMethodError,
)
from .model import (
    DEFAULT_K,
    DEFAULT_SIGMA2,
    BetaPosterior,
    Crosstable,
    ImputationResult,
    Method,
    PlayerRecord,
    PriorSpec,
    WithdrawalContext,
    validate_rating,
)

__all__ = [
    "elo_expectation",
    "prior_theta0",
    "beta_posterior",
    "blup_weight",
    "build_context",
    "prior_from_context",
    "context_posterior",
    "impute_bayes_blup",
    "impute_for_withdrawn",
    "impute_forfeit",
    "impute_pure_elo",
    "impute_pure_performance",
    "impute_annulment_equivalent",
    "posterior_variance",
    "credible_interval",
    "attach_interval",
    "sensitivity_sweep",
    "SweepRow",
]


def elo_expectation(player_rating: float, withdrawn_rating: float) -> float:
    """Expected score of a player against the withdrawn player.

    Standard logistic Elo curve: 1 / (1 + 10^((R_W - R_i)/400)). Strictly
    increasing in ``player_rating``; the two directions of a pairing sum
    to one.
    """
    player_rating = validate_rating(player_rating, "player rating")
    withdrawn_rating = validate_rating(withdrawn_rating, "withdrawn rating")
    return 1.0 / (1.0 + 10.0 ** ((withdrawn_rating - player_rating) / 400.0))


def prior_theta0(withdrawn_rating: float, reference_rating: float) -> float:
    """Prior scoring rate of the withdrawn player against a reference opponent."""
    return elo_expectation(withdrawn_rating, reference_rating)


def beta_posterior(prior: PriorSpec, total_points: float, n: int) -> BetaPosterior:
    """Conjugate Beta update after observing ``total_points`` from ``n`` games.

    Draws enter as half-point pseudo-counts, so ``total_points`` may be
    fractional. The posterior mean is the shrinkage combination
    (k*theta0 + P) / (k + n).
    """
    if n < 1:
        raise InvalidInputError(f"need at least one observed game, got n={n}")
    if not 0.0 <= total_points <= n:
        raise InvalidInputError(
            f"total points must lie in [0, {n}], got {total_points!r}"
        )
    return BetaPosterior(
        alpha=prior.k * prior.theta0 + total_points,
        beta=prior.k * (1.0 - prior.theta0) + n - total_points,
    )


def blup_weight(n: int, k: float = DEFAULT_K) -> float:
    """Weight n/(n+k) placed on observed performance versus the prior."""
    if not math.isfinite(k) or k <= 0:
        raise InvalidInputError(f"prior strength k must be positive, got {k!r}")
    if n < 0:
        raise InvalidInputError(f"game count must be non-negative, got {n}")
    return n / (n + k)


def build_context(crosstable: Crosstable, withdrawn_id: str) -> WithdrawalContext:
    """Assemble the withdrawal context (played games and their summary stats).

    Games are ordered by round when the crosstable carries a schedule,
    otherwise by seating order. Raises DegenerateContextError when the
    withdrawn player has no completed games (the caller decides whether to
    fall back to pure Elo).
    """
    w = crosstable.index_of(withdrawn_id)
    withdrawn = crosstable.players[w]
    games: list[tuple[int, PlayerRecord, float]] = []
    for j, opp in enumerate(crosstable.players):
        if j == w:
            continue
        score = crosstable.results[w][j]
        if score is None:
            continue
        rnd = None
        if crosstable.schedule is not None:
            rnd = crosstable.schedule[w][j]
        games.append((rnd if rnd is not None else j, opp, score))
    if not games:
        raise DegenerateContextError(
            f"{withdrawn_id!r} has no completed games; nothing to learn form from"
        )
    games.sort(key=lambda item: item[0])
    played = tuple((opp, score) for _, opp, score in games)
    total = sum(score for _, score in played)
    n = len(played)
    e_bar = sum(elo_expectation(opp.rating, withdrawn.rating) for opp, _ in played) / n
    return WithdrawalContext(
        withdrawn=withdrawn,
        played=played,
        total_points=total,
        mean_score=total / n,
        mean_played_expectation=e_bar,
    )


def prior_from_context(ctx: WithdrawalContext, k: float = DEFAULT_K) -> PriorSpec:
    """Prior centered on the expectation against the average faced opponent.

    The reference rating is the mean rating of the opponents actually
    played, which is what the worked Bucharest numbers use.
    """
    reference = sum(opp.rating for opp, _ in ctx.played) / ctx.n
    return PriorSpec(k=k, theta0=prior_theta0(ctx.withdrawn.rating, reference))


def context_posterior(ctx: WithdrawalContext, k: float = DEFAULT_K) -> BetaPosterior:
    """Beta posterior of the withdrawn player's scoring rate."""
    return beta_posterior(prior_from_context(ctx, k), ctx.total_points, ctx.n)


def _clamp01(x: float) -> float:
    return 0.0 if x < 0.0 else (1.0 if x > 1.0 else x)


def _check_unplayed(ctx: WithdrawalContext, opponent: PlayerRecord) -> None:
    if opponent.id == ctx.withdrawn.id:
        raise DomainError("cannot impute the withdrawn player's game against themselves")
    if opponent.id in ctx.opponent_ids:
        raise DomainError(f"{opponent.id!r} already played the withdrawn player")


def impute_bayes_blup(
    ctx: WithdrawalContext, opponent: PlayerRecord, k: float = DEFAULT_K
) -> ImputationResult:
    """Shrinkage-imputed score for one unplayed opponent.

    The adjustment w(n)*(1 - s_bar - E_bar) is identical for every opponent
    of the same context; scores are clamped to [0,1] with the raw value
    retained on the result.
    """
    _check_unplayed(ctx, opponent)
    e = elo_expectation(opponent.rating, ctx.withdrawn.rating)
    adjustment = blup_weight(ctx.n, k) * (
        1.0 - ctx.mean_score - ctx.mean_played_expectation
    )
    raw = e + adjustment
    return ImputationResult(
        opponent=opponent,
        method=Method.BAYES_BLUP,
        score=_clamp01(raw),
        elo_expectation=e,
        adjustment=adjustment,
        unclamped_score=raw,
    )


def impute_for_withdrawn(
    ctx: WithdrawalContext, opponent: PlayerRecord, k: float = DEFAULT_K
) -> ImputationResult:
    """The withdrawn player's side of an imputed pairing: 1 - BLUP score.

    Computed as the exact complement of the opponent's unclamped score, so
    the pair conserves one point before clamping.
    """
    blup = impute_bayes_blup(ctx, opponent, k)
    raw = 1.0 - blup.unclamped_score
    return ImputationResult(
        opponent=opponent,
        method=Method.BAYES_BLUP,
        score=_clamp01(raw),
        elo_expectation=1.0 - blup.elo_expectation,
        adjustment=-blup.adjustment,
        unclamped_score=raw,
    )


def impute_forfeit(
    opponent: PlayerRecord, withdrawn: PlayerRecord | None = None
) -> ImputationResult:
    """Traditional full-point award for an unplayed opponent."""
    e = (
        elo_expectation(opponent.rating, withdrawn.rating)
        if withdrawn is not None
        else None
    )
    return ImputationResult(
        opponent=opponent, method=Method.FORFEIT, score=1.0, elo_expectation=e
    )


def impute_pure_elo(withdrawn: PlayerRecord, opponent: PlayerRecord) -> ImputationResult:
    """Rating-only imputation: the opponent receives their Elo expectation."""
    e = elo_expectation(opponent.rating, withdrawn.rating)
    return ImputationResult(
        opponent=opponent, method=Method.PURE_ELO, score=e, elo_expectation=e
    )


def impute_pure_performance(
    ctx: WithdrawalContext, opponent: PlayerRecord
) -> ImputationResult:
    """Form-only imputation: every opponent receives 1 - s_bar."""
    return ImputationResult(
        opponent=opponent,
        method=Method.PURE_PERFORMANCE,
        score=1.0 - ctx.mean_score,
        elo_expectation=elo_expectation(opponent.rating, ctx.withdrawn.rating),
    )


def impute_annulment_equivalent(
    crosstable: Crosstable, opponent_id: str, withdrawn_id: str
) -> ImputationResult:
    """The score annulment implicitly awards: the opponent's rate elsewhere.

    Striking the withdrawn player's games and re-ranking on percentage is
    equivalent to crediting each opponent with their mean score over their
    own played games against everyone else.
    """
    j = crosstable.index_of(opponent_id)
    w = crosstable.index_of(withdrawn_id)
    if j == w:
        raise DomainError("the withdrawn player has no annulment-equivalent score")
    opponent = crosstable.players[j]
    scores = [
        s
        for m, s in enumerate(crosstable.results[j])
        if m != w and s is not None
    ]
    if not scores:
        raise DegenerateContextError(
            f"{opponent_id!r} has no played games apart from the withdrawn player"
        )
    return ImputationResult(
        opponent=opponent,
        method=Method.ANNULMENT,
        score=sum(scores) / len(scores),
        elo_expectation=elo_expectation(
            opponent.rating, crosstable.players[w].rating
        ),
    )


def posterior_variance(n: int, k: float, sigma2: float = DEFAULT_SIGMA2) -> float:
    """Posterior variance of the common form effect after n games.

    With tau2 = sigma2/k this is tau2 / (1 + n/k) = sigma2 / (k + n):
    the prior variance at n = 0, shrinking hyperbolically as games accrue.
    """
    if n < 0:
        raise InvalidInputError(f"game count must be non-negative, got {n}")
    if not math.isfinite(k) or k <= 0:
        raise InvalidInputError(f"prior strength k must be positive, got {k!r}")
    if not math.isfinite(sigma2) or sigma2 <= 0:
        raise InvalidInputError(f"sigma2 must be positive, got {sigma2!r}")
    return sigma2 / (k + n)


def credible_interval(
    result: ImputationResult,
    n: int,
    k: float,
    sigma2: float = DEFAULT_SIGMA2,
    level: float = 0.95,
) -> tuple[float, float]:
    """Normal credible interval for a BLUP-imputed score, truncated to [0,1].

    The interval reflects posterior uncertainty about the common form
    effect only; per-game noise is not included, so it understates full
    predictive uncertainty for a single game.
    """
    if result.method is not Method.BAYES_BLUP:
        raise UnsupportedMethodError(
            f"credible intervals are defined for the BLUP method, not {result.method.value!r}"
        )
    if not 0.0 <= level < 1.0:
        raise InvalidInputError(f"level must lie in [0,1), got {level!r}")
    sd = math.sqrt(posterior_variance(n, k, sigma2))
    z = NormalDist().inv_cdf(0.5 + level / 2.0) if level > 0.0 else 0.0
    lo = max(0.0, result.score - z * sd)
    hi = min(1.0, result.score + z * sd)
    return (lo, hi)


def attach_interval(
    result: ImputationResult,
    n: int,
    k: float,
    sigma2: float = DEFAULT_SIGMA2,
    level: float = 0.95,
) -> ImputationResult:
    """Return a copy of ``result`` carrying its credible interval."""
    return replace(result, credible_interval=credible_interval(result, n, k, sigma2, level))


@dataclass(frozen=True)
class SweepRow:
    """One prior-strength setting of a sensitivity sweep."""

    k: float
    weight: float
    scores: tuple[tuple[str, float], ...]  # (opponent id, imputed score)
    spread: float


def sensitivity_sweep(
    ctx: WithdrawalContext,
    opponents: list[PlayerRecord] | tuple[PlayerRecord, ...],
    k_values: list[float] | tuple[float, ...],
) -> list[SweepRow]:
    """Imputed scores for each opponent across a range of prior strengths.

    Because the form adjustment is uniform across opponents, the spread
    (max - min) equals the spread of the Elo expectations and is constant
    in k; it is reported per row so consumers can verify that.
    """
    if not opponents:
        raise InvalidInputError("sensitivity sweep needs at least one opponent")
    for k in k_values:
        if not math.isfinite(k) or k <= 0:
            raise InvalidInputError(f"prior strengths must be positive, got {k!r}")
    rows = []
    for k in k_values:
        results = [impute_bayes_blup(ctx, opp, k) for opp in opponents]
        scores = tuple((r.opponent.id, r.score) for r in results)
        values = [r.score for r in results]
        rows.append(
            SweepRow(
                k=float(k),
                weight=blup_weight(ctx.n, k),
                scores=scores,
                spread=max(values) - min(values),
            )
        )
    return rows
