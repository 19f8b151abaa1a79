"""Unit tests for the estimator and imputation operations."""

import math

import pytest

from fairplay.errors import (
    DegenerateContextError,
    DomainError,
    InvalidInputError,
    UnsupportedMethodError,
)
from fairplay.imputation import (
    attach_interval,
    beta_posterior,
    blup_weight,
    build_context,
    context_posterior,
    credible_interval,
    elo_expectation,
    impute_annulment_equivalent,
    impute_bayes_blup,
    impute_for_withdrawn,
    impute_forfeit,
    impute_pure_elo,
    impute_pure_performance,
    posterior_variance,
    prior_from_context,
    prior_theta0,
    sensitivity_sweep,
)
from fairplay.model import (
    Crosstable,
    Method,
    PlayerRecord,
    PriorSpec,
    VarianceComponents,
    WithdrawalContext,
)
from fairplay.tournament_io import bucharest_fixture


def player(pid: str, rating: float) -> PlayerRecord:
    return PlayerRecord(id=pid, name=pid.title(), rating=rating)


def make_ctx(withdrawn_rating, games):
    """games: list of (opponent rating, withdrawn player's score)."""
    withdrawn = player("w", withdrawn_rating)
    played = tuple(
        (player(f"o{i}", r), s) for i, (r, s) in enumerate(games)
    )
    total = sum(s for _, s in played)
    n = len(played)
    e_bar = sum(elo_expectation(p.rating, withdrawn_rating) for p, _ in played) / n
    return WithdrawalContext(
        withdrawn=withdrawn,
        played=played,
        total_points=total,
        mean_score=total / n,
        mean_played_expectation=e_bar,
    )


@pytest.fixture(scope="module")
def bucharest():
    tournament = bucharest_fixture()
    ctx = build_context(tournament.crosstable, tournament.withdrawn_id)
    return tournament, ctx


class TestEloExpectation:
    def test_keymer_value(self):
        assert elo_expectation(2762, 2759) == pytest.approx(0.504, abs=1e-3)

    def test_deac_value(self):
        assert elo_expectation(2655, 2759) == pytest.approx(0.355, abs=1e-3)

    def test_equal_ratings_exact_half(self):
        assert elo_expectation(2500, 2500) == 0.5

    def test_monotone_in_player_rating(self):
        values = [elo_expectation(r, 2700) for r in (2500, 2600, 2700, 2800, 2900)]
        assert all(a < b for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("bad", [float("nan"), float("inf"), -1.0, 0.0])
    def test_invalid_rating_rejected(self, bad):
        with pytest.raises(InvalidInputError):
            elo_expectation(bad, 2700)
        with pytest.raises(InvalidInputError):
            elo_expectation(2700, bad)


class TestPriorTheta0:
    def test_worked_example(self):
        assert prior_theta0(2759, 2750) == pytest.approx(0.51, abs=5e-3)

    def test_equal_ratings(self):
        assert prior_theta0(2650, 2650) == 0.5

    def test_four_hundred_point_deficit(self):
        # direct logistic evaluation: 1 / (1 + 10^1) = 1/11
        assert prior_theta0(2759, 2759 + 400) == pytest.approx(1.0 / 11.0, abs=1e-12)

    def test_matches_elo_expectation(self):
        assert prior_theta0(2700, 2640) == elo_expectation(2700, 2640)


class TestBetaPosterior:
    def test_bucharest_posterior(self):
        post = beta_posterior(PriorSpec(k=3.0, theta0=0.51), 1.0, 5)
        assert post.alpha == pytest.approx(2.53, abs=1e-9)
        assert post.beta == pytest.approx(5.47, abs=1e-9)
        assert post.mean == pytest.approx(0.316, abs=1e-3)

    def test_prior_mean_preserved_when_rate_matches(self):
        post = beta_posterior(PriorSpec(k=3.0, theta0=0.5), 1.5, 3)
        assert post.mean == pytest.approx(0.5, abs=1e-12)

    def test_perfect_score(self):
        post = beta_posterior(PriorSpec(k=3.0, theta0=0.51), 5.0, 5)
        assert post.mean == pytest.approx(6.53 / 8.0, abs=1e-12)

    def test_fractional_points_accepted(self):
        post = beta_posterior(PriorSpec(k=2.0, theta0=0.4), 2.5, 4)
        assert post.alpha == pytest.approx(2.0 * 0.4 + 2.5, abs=1e-12)

    @pytest.mark.parametrize("points,n", [(-0.5, 5), (5.5, 5)])
    def test_points_out_of_range(self, points, n):
        with pytest.raises(InvalidInputError):
            beta_posterior(PriorSpec(), points, n)


class TestBlupWeight:
    def test_recommended_setting(self):
        assert blup_weight(5, 3.0) == 0.625

    def test_no_games_no_weight(self):
        assert blup_weight(0, 3.0) == 0.0

    def test_table_value_n5_k2(self):
        assert blup_weight(5, 2.0) == pytest.approx(0.714, abs=1e-3)

    def test_n4_k2(self):
        assert blup_weight(4, 2.0) == pytest.approx(2.0 / 3.0, abs=1e-12)

    def test_strictly_increasing_in_n(self):
        weights = [blup_weight(n, 3.0) for n in range(10)]
        assert all(a < b for a, b in zip(weights, weights[1:]))

    @pytest.mark.parametrize("k", [0.0, -1.0])
    def test_invalid_prior_strength(self, k):
        with pytest.raises(InvalidInputError):
            blup_weight(5, k)


class TestBayesBlup:
    def test_bucharest_table(self, bucharest):
        tournament, ctx = bucharest
        expected = {
            "keymer": 0.700,
            "so": 0.689,
            "vanforeest": 0.663,
            "deac": 0.551,
        }
        for pid, want in expected.items():
            result = impute_bayes_blup(ctx, tournament.crosstable.player(pid), 3.0)
            assert result.score == pytest.approx(want, abs=2e-3)
            assert result.method is Method.BAYES_BLUP

    def test_adjustment_uniform_across_opponents(self, bucharest):
        tournament, ctx = bucharest
        results = [
            impute_bayes_blup(ctx, tournament.crosstable.player(pid), 3.0)
            for pid in ("keymer", "so", "vanforeest", "deac")
        ]
        assert len({r.adjustment for r in results}) == 1
        assert results[0].adjustment == pytest.approx(0.196, abs=2e-3)

    def test_zero_adjustment_returns_expectation_exactly(self):
        # one drawn game against an equal-rated opponent: 1 - 0.5 - 0.5 = 0
        ctx = make_ctx(2700, [(2700, 0.5)])
        opp = player("x", 2764)
        result = impute_bayes_blup(ctx, opp, 3.0)
        assert result.adjustment == 0.0
        assert result.score == elo_expectation(2764, 2700)

    def test_played_opponent_rejected(self, bucharest):
        tournament, ctx = bucharest
        with pytest.raises(DomainError):
            impute_bayes_blup(ctx, tournament.crosstable.player("caruana"), 3.0)

    def test_withdrawn_player_rejected(self, bucharest):
        tournament, ctx = bucharest
        with pytest.raises(DomainError):
            impute_bayes_blup(ctx, tournament.crosstable.player("firouzja"), 3.0)

    def test_clamped_score_keeps_raw_value(self):
        # hopeless withdrawn player, huge positive adjustment
        ctx = make_ctx(2900, [(2100, 0.0)] * 6)
        result = impute_bayes_blup(ctx, player("x", 2899), 3.0)
        assert result.score == 1.0
        assert result.unclamped_score > 1.0


class TestImputeForWithdrawn:
    def test_keymer_complement(self, bucharest):
        tournament, ctx = bucharest
        result = impute_for_withdrawn(ctx, tournament.crosstable.player("keymer"), 3.0)
        assert result.score == pytest.approx(0.300, abs=2e-3)

    def test_deac_complement(self, bucharest):
        tournament, ctx = bucharest
        result = impute_for_withdrawn(ctx, tournament.crosstable.player("deac"), 3.0)
        assert result.score == pytest.approx(1.0 - 0.551, abs=2e-3)

    def test_zero_adjustment_complement(self):
        ctx = make_ctx(2700, [(2700, 0.5)])
        opp = player("x", 2764)
        result = impute_for_withdrawn(ctx, opp, 3.0)
        assert result.score == 1.0 - elo_expectation(2764, 2700)

    def test_exact_pair_conservation(self, bucharest):
        tournament, ctx = bucharest
        opp = tournament.crosstable.player("so")
        a = impute_bayes_blup(ctx, opp, 3.0)
        b = impute_for_withdrawn(ctx, opp, 3.0)
        assert a.unclamped_score + b.unclamped_score == 1.0


class TestBaselinePolicies:
    def test_forfeit_always_full_point(self, bucharest):
        tournament, _ = bucharest
        for pid in ("keymer", "so", "deac"):
            result = impute_forfeit(tournament.crosstable.player(pid))
            assert result.score == 1.0
            assert result.method is Method.FORFEIT

    def test_pure_elo_keymer(self, bucharest):
        tournament, _ = bucharest
        w = tournament.crosstable.player("firouzja")
        assert impute_pure_elo(w, tournament.crosstable.player("keymer")).score == pytest.approx(
            0.504, abs=1e-3
        )
        assert impute_pure_elo(w, tournament.crosstable.player("deac")).score == pytest.approx(
            0.355, abs=1e-3
        )

    def test_pure_elo_equal_ratings(self):
        assert impute_pure_elo(player("a", 2600), player("b", 2600)).score == 0.5

    def test_pure_performance_bucharest(self, bucharest):
        tournament, ctx = bucharest
        result = impute_pure_performance(ctx, tournament.crosstable.player("keymer"))
        assert result.score == pytest.approx(0.800, abs=1e-12)

    def test_pure_performance_extremes(self):
        ctx = make_ctx(2700, [(2690, 1.0), (2710, 1.0)])
        assert impute_pure_performance(ctx, player("x", 2700)).score == 0.0
        ctx = make_ctx(2700, [(2690, 0.5), (2710, 0.5)])
        assert impute_pure_performance(ctx, player("x", 2700)).score == 0.5


def annulment_crosstable(scores_elsewhere, unplayed_vs_w=True):
    """Crosstable where player 'j' has the given scores against fillers."""
    m = len(scores_elsewhere)
    players = [player("w", 2750), player("j", 2700)] + [
        player(f"f{i}", 2650 + i) for i in range(m)
    ]
    n = len(players)
    results = [[None] * n for _ in range(n)]
    for i, s in enumerate(scores_elsewhere):
        results[1][2 + i] = s
        results[2 + i][1] = 1.0 - s
    if not unplayed_vs_w:
        results[0][1] = 1.0
        results[1][0] = 0.0
    return Crosstable(
        players=tuple(players), results=tuple(tuple(r) for r in results)
    )


class TestAnnulmentEquivalent:
    def test_six_of_eight(self):
        ct = annulment_crosstable([1, 1, 1, 1, 1, 1, 0, 0])
        assert impute_annulment_equivalent(ct, "j", "w").score == 0.75

    def test_all_draws(self):
        ct = annulment_crosstable([0.5] * 6)
        assert impute_annulment_equivalent(ct, "j", "w").score == 0.5

    def test_three_and_a_half_of_seven(self):
        ct = annulment_crosstable([1, 1, 1, 0.5, 0, 0, 0])
        assert impute_annulment_equivalent(ct, "j", "w").score == 0.5

    def test_game_against_withdrawn_not_counted(self):
        ct = annulment_crosstable([1, 1, 0, 0], unplayed_vs_w=False)
        assert impute_annulment_equivalent(ct, "j", "w").score == 0.5

    def test_no_qualifying_games(self):
        ct = annulment_crosstable([], unplayed_vs_w=False)
        with pytest.raises(DegenerateContextError):
            impute_annulment_equivalent(ct, "j", "w")


class TestPosteriorVariance:
    def test_worked_value(self):
        var = posterior_variance(5, 3.0, 0.25)
        assert var == pytest.approx(0.03125, abs=1e-15)
        assert math.sqrt(var) == pytest.approx(0.177, abs=1e-3)

    def test_prior_variance_at_zero_games(self):
        assert posterior_variance(0, 3.0, 0.25) == pytest.approx(0.25 / 3.0, abs=1e-15)

    def test_vanishes_for_large_n(self):
        assert posterior_variance(10**9, 3.0, 0.25) < 1e-9

    @pytest.mark.parametrize("n,k,s2", [(-1, 3.0, 0.25), (5, 0.0, 0.25), (5, 3.0, 0.0)])
    def test_invalid_parameters(self, n, k, s2):
        with pytest.raises(InvalidInputError):
            posterior_variance(n, k, s2)


class TestCredibleInterval:
    def test_bucharest_keymer(self, bucharest):
        tournament, ctx = bucharest
        result = impute_bayes_blup(ctx, tournament.crosstable.player("keymer"), 3.0)
        lo, hi = credible_interval(result, ctx.n, 3.0, 0.25, 0.95)
        assert lo == pytest.approx(0.354, abs=2e-3)
        assert hi == 1.0  # truncated

    def test_zero_level_collapses(self, bucharest):
        tournament, ctx = bucharest
        result = impute_bayes_blup(ctx, tournament.crosstable.player("so"), 3.0)
        assert credible_interval(result, ctx.n, 3.0, 0.25, 0.0) == (result.score, result.score)

    def test_large_n_collapses_toward_point(self, bucharest):
        tournament, ctx = bucharest
        result = impute_bayes_blup(ctx, tournament.crosstable.player("so"), 3.0)
        lo, hi = credible_interval(result, 10**8, 3.0, 0.25, 0.95)
        assert hi - lo < 1e-3

    def test_unsupported_method(self, bucharest):
        tournament, _ = bucharest
        result = impute_forfeit(tournament.crosstable.player("keymer"))
        with pytest.raises(UnsupportedMethodError):
            credible_interval(result, 5, 3.0)

    def test_attach_interval_round_trip(self, bucharest):
        tournament, ctx = bucharest
        result = attach_interval(
            impute_bayes_blup(ctx, tournament.crosstable.player("keymer"), 3.0),
            ctx.n,
            3.0,
        )
        lo, hi = result.credible_interval
        assert lo <= result.score <= hi


class TestSensitivitySweep:
    def test_recommended_row_matches_worked_table(self, bucharest):
        tournament, ctx = bucharest
        opponents = [tournament.crosstable.player(p) for p in ("keymer", "deac")]
        rows = sensitivity_sweep(ctx, opponents, [3.0])
        scores = dict(rows[0].scores)
        assert scores["keymer"] == pytest.approx(0.700, abs=2e-3)
        assert scores["deac"] == pytest.approx(0.551, abs=2e-3)
        assert rows[0].spread == pytest.approx(0.149, abs=2e-3)

    def test_low_k_row_follows_formula(self, bucharest):
        tournament, ctx = bucharest
        opponents = [tournament.crosstable.player(p) for p in ("keymer", "deac")]
        rows = sensitivity_sweep(ctx, opponents, [1.0])
        scores = dict(rows[0].scores)
        assert scores["keymer"] == pytest.approx(0.765, abs=1e-3)
        assert scores["deac"] == pytest.approx(0.616, abs=1e-3)

    def test_spread_constant_across_k(self, bucharest):
        tournament, ctx = bucharest
        opponents = list(tournament.crosstable.unplayed_opponents("firouzja"))
        rows = sensitivity_sweep(ctx, opponents, [0.5, 1.0, 2.0, 3.0, 5.0, 10.0])
        spreads = {round(r.spread, 12) for r in rows}
        assert len(spreads) == 1

    def test_huge_k_approaches_elo_expectation(self, bucharest):
        tournament, ctx = bucharest
        opp = tournament.crosstable.player("keymer")
        rows = sensitivity_sweep(ctx, [opp], [1e9])
        assert dict(rows[0].scores)["keymer"] == pytest.approx(
            elo_expectation(opp.rating, ctx.withdrawn.rating), abs=1e-8
        )

    def test_rejects_nonpositive_k(self, bucharest):
        tournament, ctx = bucharest
        opp = tournament.crosstable.player("keymer")
        with pytest.raises(InvalidInputError):
            sensitivity_sweep(ctx, [opp], [3.0, -1.0])


class TestContextPrior:
    def test_reference_is_mean_played_opponent_rating(self, bucharest):
        _, ctx = bucharest
        prior = prior_from_context(ctx, 3.0)
        # played opponents: 2793, 2741, 2717, 2753, 2745 -> mean 2749.8
        assert prior.theta0 == pytest.approx(prior_theta0(2759, 2749.8), abs=1e-12)

    def test_posterior_matches_worked_example(self, bucharest):
        _, ctx = bucharest
        post = context_posterior(ctx, 3.0)
        assert post.alpha == pytest.approx(2.53, abs=0.01)
        assert post.beta == pytest.approx(5.47, abs=0.01)
        assert post.mean == pytest.approx(0.316, abs=2e-3)


class TestVarianceComponents:
    def test_k_round_trip(self):
        vc = VarianceComponents.from_prior(3.0, 0.25)
        assert vc.k == pytest.approx(3.0, abs=1e-12)
        assert vc.tau2 == pytest.approx(0.25 / 3.0, abs=1e-15)

    def test_invalid(self):
        with pytest.raises(InvalidInputError):
            VarianceComponents(sigma2=0.0, tau2=0.1)


class TestBuildContext:
    def test_bucharest_summary_stats(self, bucharest):
        _, ctx = bucharest
        assert ctx.n == 5
        assert ctx.total_points == 1.0
        assert ctx.mean_score == pytest.approx(0.200, abs=1e-12)
        assert ctx.mean_played_expectation == pytest.approx(0.487, abs=2e-3)

    def test_games_in_round_order(self, bucharest):
        _, ctx = bucharest
        assert [opp.id for opp, _ in ctx.played] == [
            "caruana",
            "pragg",
            "mvl",
            "giri",
            "sindarov",
        ]

    def test_degenerate_when_no_games(self):
        players = (player("w", 2700), player("a", 2600), player("b", 2650))
        results = (
            (None, None, None),
            (None, None, 0.5),
            (None, 0.5, None),
        )
        ct = Crosstable(players=players, results=results)
        with pytest.raises(DegenerateContextError):
            build_context(ct, "w")
