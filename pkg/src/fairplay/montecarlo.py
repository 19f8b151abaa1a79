"""Seeded Monte Carlo study: tournament generator, LOOCV evaluator, grid.

The study simulates 10-player round-robins in which one player withdraws
after n games, then scores every imputation policy by leave-one-out
cross-validation: each played game is held out, the policy predicts the
held-out opponent's score from the remaining n-1 games, and the error
against the actual result is pooled into per-scenario RMSE and bias.

Game outcomes follow a draw-adjusted Elo model chosen so that the expected
score equals the Elo expectation exactly: with expectation E and base draw
rate b, p_draw = b * (1 - 2|E - 0.5|) (clamped to keep the simplex valid)
and p_win = E - p_draw / 2. The withdrawn player's games are sampled from
their form-adjusted rating R_W + delta while every estimator sees only the
official R_W.

Tournaments own independent derived RNG streams, so any (seed, scenario,
tournament) cell reproduces bit-for-bit and chunks can run in any order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernel
from .errors import InsufficientDataError, InvalidInputError
from .imputation import blup_weight, build_context, elo_expectation
from .model import Crosstable, Method, PlayerRecord, WithdrawalContext
from .rng import SplitMix64, substream

__all__ = [
    "FieldShape",
    "FideRule",
    "GameModelParams",
    "ScenarioSpec",
    "MethodError",
    "ScenarioReport",
    "GridSummary",
    "GridResult",
    "NARROW_FIELD",
    "WIDE_FIELD",
    "WITHDRAWN_RATING",
    "make_field",
    "game_probabilities",
    "sample_game",
    "round_robin_rounds",
    "seated_ratings",
    "simulate_tournament",
    "loocv_evaluate",
    "scenario_grid",
    "run_scenario_stats",
    "run_grid",
    "FORM_DELTAS",
    "TIMINGS",
    "form_label",
]

#: Elite-event field: range 2725-2790, sample sd ~= 16.
NARROW_FIELD = (2725.0, 2735.0, 2741.0, 2745.0, 2748.0, 2750.0, 2755.0, 2758.0, 2766.0, 2790.0)
#: Open-event field: range 2540-2790, sample sd ~= 75.
WIDE_FIELD = (2540.0, 2610.0, 2645.0, 2665.0, 2685.0, 2705.0, 2725.0, 2750.0, 2770.0, 2790.0)
#: The withdrawing player is the mid-field 2750 in both compositions.
WITHDRAWN_RATING = 2750.0

TIMINGS = (3, 4, 5)
FORM_DELTAS = (-150.0, 0.0, 100.0)

_FIDE_THRESHOLD = 4.5  # 50% of nine scheduled games


class FieldShape(str, Enum):
    NARROW = "narrow"
    WIDE = "wide"


class FideRule(str, Enum):
    ANNUL = "annul"
    FORFEIT = "forfeit"


def form_label(delta: float) -> str:
    if delta < 0:
        return "under"
    if delta > 0:
        return "over"
    return "neutral"


def make_field(shape: FieldShape | str) -> tuple[float, ...]:
    """The fixed 10-player rating vector for a field composition."""
    shape = FieldShape(shape)
    return NARROW_FIELD if shape is FieldShape.NARROW else WIDE_FIELD


@dataclass(frozen=True)
class GameModelParams:
    """Draw-adjusted Elo game model parameters.

    ``base_draw_rate`` is the draw probability between equals;
    ``draw_decay`` scales how fast draws die off as the expectation moves
    away from one half.
    """

    base_draw_rate: float = 0.5
    draw_decay: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.base_draw_rate <= 1.0:
            raise InvalidInputError("base draw rate must lie in [0,1]")
        if not 0.0 <= self.draw_decay:
            raise InvalidInputError("draw decay must be non-negative")


DEFAULT_PARAMS = GameModelParams()


def game_probabilities(
    rating_a: float, rating_b: float, params: GameModelParams = DEFAULT_PARAMS
) -> tuple[float, float, float]:
    """(win, draw, loss) probabilities for player a; mean equals Elo exactly."""
    e = elo_expectation(rating_a, rating_b)
    p_draw = params.base_draw_rate * (1.0 - params.draw_decay * 2.0 * abs(e - 0.5))
    if p_draw < 0.0:
        p_draw = 0.0
    cap = 2.0 * min(e, 1.0 - e)  # keeps both win and loss probabilities >= 0
    if p_draw > cap:
        p_draw = cap
    p_win = e - 0.5 * p_draw
    return p_win, p_draw, 1.0 - p_win - p_draw


def sample_game(
    rating_a: float,
    rating_b: float,
    params: GameModelParams,
    rng: SplitMix64,
) -> float:
    """Sample player a's score (1, 0.5 or 0) from one uniform draw."""
    p_win, p_draw, _ = game_probabilities(rating_a, rating_b, params)
    u = rng.uniform()
    if u < p_win:
        return 1.0
    if u < p_win + p_draw:
        return 0.5
    return 0.0


@dataclass(frozen=True)
class ScenarioSpec:
    """One cell of the factorial study design."""

    field_shape: FieldShape
    timing: int  # games completed before withdrawal
    form_delta: float  # Elo points added to the withdrawn player's true strength
    tournaments: int
    seed: int

    def __post_init__(self):
        if self.timing not in TIMINGS:
            raise InvalidInputError(f"timing must be one of {TIMINGS}, got {self.timing}")
        if float(self.form_delta) not in FORM_DELTAS:
            raise InvalidInputError(
                f"form delta must be one of {FORM_DELTAS}, got {self.form_delta}"
            )
        if self.tournaments < 1:
            raise InvalidInputError("tournament count must be positive")

    @property
    def fide_rule(self) -> FideRule:
        return FideRule.ANNUL if self.timing < _FIDE_THRESHOLD else FideRule.FORFEIT


def round_robin_rounds(n_players: int) -> list[list[tuple[int, int]]]:
    """Circle-method schedule: n-1 rounds of n/2 pairings over seats 0..n-1.

    Seat 0 stays fixed; the rest rotate, so seat 0's opponent in round r is
    seat n-1-r.
    """
    if n_players < 2 or n_players % 2:
        raise InvalidInputError("round-robin schedule needs an even player count")
    arr = list(range(n_players))
    rounds = []
    for _ in range(n_players - 1):
        rounds.append([(arr[i], arr[n_players - 1 - i]) for i in range(n_players // 2)])
        arr = [arr[0], arr[-1]] + arr[1:-1]
    return rounds


def seated_ratings(ratings: tuple[float, ...], withdrawn_rating: float = WITHDRAWN_RATING) -> list[float]:
    """Seat the field for the circle schedule.

    The withdrawing player takes the fixed seat 0. Remaining seats are
    filled strongest-first, which sends the weakest opponents to the early
    rounds (seat 0 meets seat 9 first).
    """
    pool = list(ratings)
    try:
        pool.remove(withdrawn_rating)
    except ValueError:
        raise InvalidInputError(
            f"field does not contain the withdrawn player's rating {withdrawn_rating}"
        ) from None
    return [withdrawn_rating] + sorted(pool, reverse=True)


@dataclass(frozen=True)
class _CompiledScenario:
    """Per-scenario constants handed to the kernel backends."""

    p_win: np.ndarray
    p_draw: np.ndarray
    w_round: np.ndarray
    w_game: np.ndarray
    e_opp: np.ndarray
    opp_games: np.ndarray
    opp_is_a: np.ndarray
    opp_other_count: int
    seats: list[float]
    rounds: list[list[tuple[int, int]]]


def _compile_scenario(spec: ScenarioSpec, params: GameModelParams) -> _CompiledScenario:
    seats = seated_ratings(make_field(spec.field_shape))
    n_players = len(seats)
    rounds = round_robin_rounds(n_players)
    adjusted = list(seats)
    adjusted[0] = seats[0] + spec.form_delta

    n_games = (n_players - 1) * (n_players // 2)
    p_win = np.zeros(n_games)
    p_draw = np.zeros(n_games)
    w_round = np.full(n_games, -1, dtype=np.int32)
    w_game = np.zeros(n_players - 1, dtype=np.int32)
    opp_seat = np.zeros(n_players - 1, dtype=np.int32)
    games_of: dict[int, list[tuple[int, bool]]] = {s: [] for s in range(n_players)}

    g = 0
    for r, pairs in enumerate(rounds):
        for a, b in pairs:
            pw, pd, _ = game_probabilities(adjusted[a], adjusted[b], params)
            p_win[g] = pw
            p_draw[g] = pd
            if a == 0:  # seat 0 is always the first element of its pairing
                w_round[g] = r
                w_game[r] = g
                opp_seat[r] = b
            else:
                games_of[a].append((g, True))
                games_of[b].append((g, False))
            g += 1

    e_opp = np.array(
        [elo_expectation(seats[opp_seat[r]], seats[0]) for r in range(n_players - 1)]
    )
    opp_other_count = n_players - 2
    opp_games = np.zeros((n_players - 1) * opp_other_count, dtype=np.int32)
    opp_is_a = np.zeros((n_players - 1) * opp_other_count, dtype=np.uint8)
    for r in range(n_players - 1):
        own = games_of[int(opp_seat[r])]
        for m, (idx, is_a) in enumerate(own):
            opp_games[r * opp_other_count + m] = idx
            opp_is_a[r * opp_other_count + m] = 1 if is_a else 0

    return _CompiledScenario(
        p_win=p_win,
        p_draw=p_draw,
        w_round=w_round,
        w_game=w_game,
        e_opp=e_opp,
        opp_games=opp_games,
        opp_is_a=opp_is_a,
        opp_other_count=opp_other_count,
        seats=seats,
        rounds=rounds,
    )


def simulate_tournament(
    spec: ScenarioSpec,
    tournament_index: int,
    params: GameModelParams = DEFAULT_PARAMS,
) -> tuple[Crosstable, WithdrawalContext]:
    """Materialize one simulated tournament as domain objects.

    Every scheduled game except the withdrawn player's post-withdrawal
    games is sampled from its own derived RNG stream; the crosstable
    carries official ratings only (the form delta stays latent).
    """
    seats = seated_ratings(make_field(spec.field_shape))
    n_players = len(seats)
    rounds = round_robin_rounds(n_players)
    adjusted = list(seats)
    adjusted[0] = seats[0] + spec.form_delta
    players = tuple(
        PlayerRecord(id=f"p{s}", name=f"Player {s}", rating=seats[s])
        for s in range(n_players)
    )
    results: list[list[float | None]] = [[None] * n_players for _ in range(n_players)]
    schedule: list[list[int | None]] = [[None] * n_players for _ in range(n_players)]
    t_seed = substream(spec.seed, tournament_index)
    g = 0
    for r, pairs in enumerate(rounds):
        for a, b in pairs:
            schedule[a][b] = schedule[b][a] = r + 1
            if (a == 0 or b == 0) and r >= spec.timing:
                g += 1
                continue
            score = sample_game(adjusted[a], adjusted[b], params, SplitMix64(substream(t_seed, g)))
            results[a][b] = score
            results[b][a] = 1.0 - score
            g += 1
    crosstable = Crosstable(
        players=players,
        results=tuple(tuple(row) for row in results),
        schedule=tuple(tuple(row) for row in schedule),
    )
    return crosstable, build_context(crosstable, "p0")


_LOOCV_METHODS = (
    Method.FORFEIT,
    Method.ANNULMENT,
    Method.PURE_ELO,
    Method.PURE_PERFORMANCE,
    Method.BAYES_BLUP,
)


def loocv_evaluate(
    crosstable: Crosstable,
    ctx: WithdrawalContext,
    methods: tuple[Method, ...] = _LOOCV_METHODS,
    k: float = 3.0,
) -> dict[Method, list[float]]:
    """Leave-one-out prediction errors for each policy.

    For each held-out played game the remaining n-1 games form the
    training record; each method predicts the held-out opponent's score
    and the signed error (prediction minus actual) is recorded in game
    order.
    """
    n = ctx.n
    if n < 2:
        raise InsufficientDataError("leave-one-out needs at least two played games")
    w = crosstable.index_of(ctx.withdrawn.id)
    e_by_game = [
        elo_expectation(opp.rating, ctx.withdrawn.rating) for opp, _ in ctx.played
    ]
    sum_scores = sum(score for _, score in ctx.played)
    sum_e = sum(e_by_game)
    weight = blup_weight(n - 1, k)
    errors: dict[Method, list[float]] = {m: [] for m in methods}
    for g, (opp, w_score) in enumerate(ctx.played):
        actual = 1.0 - w_score
        s_train = (sum_scores - w_score) / (n - 1)
        e_train = (sum_e - e_by_game[g]) / (n - 1)
        j = crosstable.index_of(opp.id)
        for method in methods:
            if method is Method.FORFEIT:
                pred = 1.0
            elif method is Method.ANNULMENT:
                others = [
                    s
                    for m, s in enumerate(crosstable.results[j])
                    if m != w and s is not None
                ]
                if not others:
                    raise InsufficientDataError(
                        f"{opp.id!r} has no games besides the withdrawn player"
                    )
                pred = sum(others) / len(others)
            elif method is Method.PURE_ELO:
                pred = e_by_game[g]
            elif method is Method.PURE_PERFORMANCE:
                pred = 1.0 - s_train
            else:  # BAYES_BLUP on the n-1 training games
                pred = e_by_game[g] + weight * (1.0 - s_train - e_train)
                pred = min(1.0, max(0.0, pred))
            errors[method].append(pred - actual)
    return errors


@dataclass
class MethodError:
    """Running error accumulator for one method."""

    method: str
    sum_sq: float = 0.0
    sum_signed: float = 0.0
    count: int = 0

    def add(self, err: float) -> None:
        self.sum_sq += err * err
        self.sum_signed += err
        self.count += 1

    def merge(self, other: "MethodError") -> "MethodError":
        if other.method != self.method:
            raise InvalidInputError("cannot merge accumulators of different methods")
        return MethodError(
            self.method,
            self.sum_sq + other.sum_sq,
            self.sum_signed + other.sum_signed,
            self.count + other.count,
        )

    @property
    def rmse(self) -> float:
        return math.sqrt(self.sum_sq / self.count) if self.count else math.nan

    @property
    def bias(self) -> float:
        return self.sum_signed / self.count if self.count else math.nan


#: Column order of the kernel output.
_KERNEL_METHODS = ("forfeit", "annul", "elo", "perf", "bayes")
#: Methods competing in the per-scenario winner column.
COMPARED_METHODS = ("fide", "elo", "perf", "bayes")


@dataclass(frozen=True)
class ScenarioReport:
    """Per-scenario pooled errors; ``fide`` is the rule the timing triggers."""

    spec: ScenarioSpec
    per_method: dict[str, MethodError]

    def __post_init__(self):
        counts = {m.count for m in self.per_method.values()}
        if len(counts) != 1:
            raise InvalidInputError("method evaluation counts differ within a scenario")

    @property
    def winner(self) -> str:
        return min(COMPARED_METHODS, key=lambda m: self.per_method[m].rmse)


@dataclass(frozen=True)
class GridSummary:
    overall: dict[str, MethodError]
    by_rule: dict[str, tuple[float, float, float]]  # rule -> (fide, bayes, improvement %)
    by_form: dict[str, tuple[float, float]]  # form -> (% vs fide, % vs elo)


@dataclass(frozen=True)
class GridResult:
    scenarios: list[ScenarioReport]
    summary: GridSummary
    global_seed: int
    tournaments_per_scenario: int


def scenario_grid(global_seed: int, tournaments_per_scenario: int) -> list[ScenarioSpec]:
    """The 2x3x3 factorial grid in canonical order (field, timing, form)."""
    if tournaments_per_scenario < 1:
        raise InvalidInputError("tournaments per scenario must be positive")
    specs = []
    index = 0
    for shape in (FieldShape.NARROW, FieldShape.WIDE):
        for timing in TIMINGS:
            for delta in FORM_DELTAS:
                specs.append(
                    ScenarioSpec(
                        field_shape=shape,
                        timing=timing,
                        form_delta=delta,
                        tournaments=tournaments_per_scenario,
                        seed=substream(global_seed, index),
                    )
                )
                index += 1
    return specs


#: Tournaments per kernel call. Fixed so that chunked (or parallel) execution
#: merges partial sums at the same boundaries and reports stay bit-identical.
CHUNK = 1024


def run_scenario_stats(
    spec: ScenarioSpec,
    params: GameModelParams = DEFAULT_PARAMS,
    k: float = 3.0,
    chunk: int = CHUNK,
) -> dict[str, MethodError]:
    """Pooled LOOCV error statistics for one scenario (all five policies)."""
    compiled = _compile_scenario(spec, params)
    totals = np.zeros((5, 3))
    for t0 in range(0, spec.tournaments, chunk):
        t1 = min(t0 + chunk, spec.tournaments)
        totals += _kernel.run_scenario(
            compiled.p_win,
            compiled.p_draw,
            compiled.w_round,
            compiled.w_game,
            compiled.e_opp,
            compiled.opp_games,
            compiled.opp_is_a,
            compiled.opp_other_count,
            spec.timing,
            k,
            spec.seed,
            t0,
            t1,
        )
    stats = {
        name: MethodError(name, totals[i, 0], totals[i, 1], int(totals[i, 2]))
        for i, name in enumerate(_KERNEL_METHODS)
    }
    applied = stats["annul" if spec.fide_rule is FideRule.ANNUL else "forfeit"]
    stats["fide"] = MethodError("fide", applied.sum_sq, applied.sum_signed, applied.count)
    return stats


def _pooled(reports: list[ScenarioReport], method: str) -> MethodError:
    acc = MethodError(method)
    for rep in reports:
        acc = acc.merge(
            MethodError(
                method,
                rep.per_method[method].sum_sq,
                rep.per_method[method].sum_signed,
                rep.per_method[method].count,
            )
        )
    return acc


def _improvement(base: float, better: float) -> float:
    return 100.0 * (1.0 - better / base)


def summarize(reports: list[ScenarioReport]) -> GridSummary:
    overall = {m: _pooled(reports, m) for m in ("fide", "elo", "perf", "bayes")}
    by_rule = {}
    for rule in (FideRule.ANNUL, FideRule.FORFEIT):
        subset = [r for r in reports if r.spec.fide_rule is rule]
        fide = _pooled(subset, "fide").rmse
        bayes = _pooled(subset, "bayes").rmse
        by_rule[rule.value] = (fide, bayes, _improvement(fide, bayes))
    by_form = {}
    for delta in FORM_DELTAS:
        subset = [r for r in reports if r.spec.form_delta == delta]
        fide = _pooled(subset, "fide").rmse
        elo = _pooled(subset, "elo").rmse
        bayes = _pooled(subset, "bayes").rmse
        by_form[form_label(delta)] = (_improvement(fide, bayes), _improvement(elo, bayes))
    return GridSummary(overall=overall, by_rule=by_rule, by_form=by_form)


def run_grid(
    global_seed: int,
    tournaments_per_scenario: int,
    params: GameModelParams = DEFAULT_PARAMS,
    k: float = 3.0,
) -> GridResult:
    """Run the full 18-scenario study. Deterministic in (seed, count)."""
    reports = []
    for spec in scenario_grid(global_seed, tournaments_per_scenario):
        reports.append(ScenarioReport(spec=spec, per_method=run_scenario_stats(spec, params, k)))
    return GridResult(
        scenarios=reports,
        summary=summarize(reports),
        global_seed=global_seed,
        tournaments_per_scenario=tournaments_per_scenario,
    )
