"""Domain types: players, crosstables, withdrawal contexts, posteriors.

Everything here is an immutable value object. Derived quantities that must
stay consistent with their inputs (totals, means) are validated at
construction time so downstream code can trust them blindly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import InvalidInputError

#: Recommended prior strength: three games' worth of confidence in ratings.
DEFAULT_K = 3.0
#: Per-game outcome variance for a near-even chess game.
DEFAULT_SIGMA2 = 0.25

_CONSISTENCY_TOL = 1e-12


class Method(str, Enum):
    """The five withdrawal-scoring policies."""

    FORFEIT = "forfeit"
    ANNULMENT = "annulment"
    PURE_ELO = "elo"
    PURE_PERFORMANCE = "performance"
    BAYES_BLUP = "bayes"


def validate_rating(value: float, what: str = "rating") -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0:
        raise InvalidInputError(f"{what} must be finite and positive, got {value!r}")
    return value


@dataclass(frozen=True)
class PlayerRecord:
    id: str
    name: str
    rating: float

    def __post_init__(self):
        validate_rating(self.rating, f"rating of {self.id!r}")


@dataclass(frozen=True)
class PriorSpec:
    """Beta prior on the withdrawn player's scoring rate.

    ``k`` is the prior strength in game-equivalents, ``theta0`` the prior
    scoring rate (the Elo expectation against a reference opponent).
    """

    k: float = DEFAULT_K
    theta0: float = 0.5

    def __post_init__(self):
        if not math.isfinite(self.k) or self.k <= 0:
            raise InvalidInputError(f"prior strength k must be positive, got {self.k!r}")
        if not 0.0 < self.theta0 < 1.0:
            raise InvalidInputError(f"theta0 must lie strictly inside (0,1), got {self.theta0!r}")


@dataclass(frozen=True)
class BetaPosterior:
    alpha: float
    beta: float

    def __post_init__(self):
        if self.alpha <= 0 or self.beta <= 0:
            raise InvalidInputError("Beta parameters must be positive")

    @property
    def mean(self) -> float:
        return self.alpha / (self.alpha + self.beta)

    @property
    def variance(self) -> float:
        s = self.alpha + self.beta
        return self.alpha * self.beta / (s * s * (s + 1.0))


@dataclass(frozen=True)
class VarianceComponents:
    """Per-game noise variance and form random-effect variance.

    The ratio sigma2/tau2 is the prior strength k.
    """

    sigma2: float
    tau2: float

    def __post_init__(self):
        if self.sigma2 <= 0 or self.tau2 <= 0:
            raise InvalidInputError("variance components must be positive")

    @property
    def k(self) -> float:
        return self.sigma2 / self.tau2

    @classmethod
    def from_prior(cls, k: float, sigma2: float = DEFAULT_SIGMA2) -> "VarianceComponents":
        if k <= 0 or sigma2 <= 0:
            raise InvalidInputError("k and sigma2 must be positive")
        return cls(sigma2=sigma2, tau2=sigma2 / k)


@dataclass(frozen=True)
class WithdrawalContext:
    """The withdrawn player's observed record at the moment of withdrawal.

    ``played`` pairs each faced opponent with the score the *withdrawn*
    player achieved against them, in the order the games were played.
    ``mean_played_expectation`` is the mean Elo expectation of those
    opponents against the withdrawn player (their side of the game).
    """

    withdrawn: PlayerRecord
    played: tuple[tuple[PlayerRecord, float], ...]
    total_points: float
    mean_score: float
    mean_played_expectation: float

    def __post_init__(self):
        n = len(self.played)
        if n < 1:
            raise InvalidInputError("a withdrawal context needs at least one played game")
        for opp, score in self.played:
            if score not in (0.0, 0.5, 1.0):
                raise InvalidInputError(
                    f"played score vs {opp.id!r} must be 0, 0.5 or 1, got {score!r}"
                )
        total = sum(score for _, score in self.played)
        if abs(total - self.total_points) > _CONSISTENCY_TOL:
            raise InvalidInputError("total_points does not match the played games")
        if abs(self.total_points / n - self.mean_score) > _CONSISTENCY_TOL:
            raise InvalidInputError("mean_score does not equal total_points/n")
        if not 0.0 < self.mean_played_expectation < 1.0:
            raise InvalidInputError("mean_played_expectation must lie in (0,1)")

    @property
    def n(self) -> int:
        return len(self.played)

    @property
    def opponent_ids(self) -> frozenset[str]:
        return frozenset(opp.id for opp, _ in self.played)


@dataclass(frozen=True)
class ImputationResult:
    """One imputed (or policy-assigned) score for an unplayed pairing.

    ``unclamped_score`` keeps the raw BLUP value so point-conservation can
    be checked before the [0,1] clamp; for the other methods it equals
    ``score``. ``adjustment`` is the uniform shift added to the Elo
    expectation (zero for non-BLUP methods).
    """

    opponent: PlayerRecord
    method: Method
    score: float
    elo_expectation: float | None = None
    adjustment: float = 0.0
    unclamped_score: float | None = None
    credible_interval: tuple[float, float] | None = None

    def __post_init__(self):
        if not 0.0 <= self.score <= 1.0:
            raise InvalidInputError(f"imputed score must lie in [0,1], got {self.score!r}")
        if self.elo_expectation is not None and not 0.0 < self.elo_expectation < 1.0:
            raise InvalidInputError("elo_expectation must lie in (0,1)")
        if self.credible_interval is not None:
            if self.method is not Method.BAYES_BLUP:
                raise InvalidInputError("credible intervals exist only for the BLUP method")
            lo, hi = self.credible_interval
            if not 0.0 <= lo <= self.score <= hi <= 1.0:
                raise InvalidInputError(
                    f"interval ({lo}, {hi}) must satisfy 0 <= lo <= score <= hi <= 1"
                )


@dataclass(frozen=True)
class Crosstable:
    """Dense result matrix of a (possibly unfinished) round-robin.

    ``results[i][j]`` is player i's score against player j, ``None`` when
    the game has not been played. ``schedule[i][j]`` optionally carries the
    round number of the pairing.
    """

    players: tuple[PlayerRecord, ...]
    results: tuple[tuple[float | None, ...], ...]
    schedule: tuple[tuple[int | None, ...], ...] | None = None

    def __post_init__(self):
        n = len(self.players)
        ids = {p.id for p in self.players}
        if len(ids) != n:
            raise InvalidInputError("player ids must be unique")
        if len(self.results) != n or any(len(row) != n for row in self.results):
            raise InvalidInputError("results matrix dimension must equal the player count")
        for i in range(n):
            if self.results[i][i] is not None:
                raise InvalidInputError("diagonal entries must be absent")
            for j in range(n):
                a, b = self.results[i][j], self.results[j][i]
                if (a is None) != (b is None):
                    raise InvalidInputError(
                        f"result between {self.players[i].id!r} and "
                        f"{self.players[j].id!r} is one-sided"
                    )
                if a is not None:
                    if a not in (0.0, 0.5, 1.0):
                        raise InvalidInputError("played scores must be 0, 0.5 or 1")
                    if abs(a + b - 1.0) > _CONSISTENCY_TOL:
                        raise InvalidInputError("paired results must sum to 1")
        if self.schedule is not None:
            if len(self.schedule) != n or any(len(row) != n for row in self.schedule):
                raise InvalidInputError("schedule dimension must equal the player count")

    def index_of(self, player_id: str) -> int:
        for i, p in enumerate(self.players):
            if p.id == player_id:
                return i
        raise InvalidInputError(f"unknown player id {player_id!r}")

    def player(self, player_id: str) -> PlayerRecord:
        return self.players[self.index_of(player_id)]

    def played_count(self) -> int:
        n = len(self.players)
        return sum(
            1 for i in range(n) for j in range(i + 1, n) if self.results[i][j] is not None
        )

    def unplayed_opponents(self, player_id: str) -> tuple[PlayerRecord, ...]:
        """Players who have no recorded game against ``player_id``."""
        w = self.index_of(player_id)
        return tuple(
            p
            for j, p in enumerate(self.players)
            if j != w and self.results[w][j] is None
        )
