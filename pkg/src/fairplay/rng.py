"""Deterministic multi-stream random numbers for the simulation study.

SplitMix64 underneath: a 64-bit counter sequence pushed through an avalanche
mix. Child streams are derived by jumping the counter, so any (seed,
scenario, tournament, game) address maps to the same uniform on every
platform and backend. The compiled kernel re-implements exactly this
arithmetic; ``tests/test_montecarlo.py`` locks the two together.
"""

from __future__ import annotations

from dataclasses import dataclass

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

_INV_2_53 = 2.0 ** -53


def mix64(z: int) -> int:
    """SplitMix64 output (avalanche) function."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def substream(seed: int, index: int) -> int:
    """Seed of child stream ``index``: the parent's output at offset index+1."""
    return mix64((seed + (index + 1) * GOLDEN) & MASK64)


class SplitMix64:
    """Sequential generator over one stream."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + GOLDEN) & MASK64
        return mix64(self._state)

    def uniform(self) -> float:
        """Uniform double in [0, 1) with 53 random bits."""
        return (self.next_uint64() >> 11) * _INV_2_53


@dataclass(frozen=True)
class RngStream:
    """Addressable stream for one (scenario, tournament) cell of a study."""

    seed: int
    scenario_index: int
    tournament_index: int

    @property
    def tournament_seed(self) -> int:
        return substream(substream(self.seed, self.scenario_index), self.tournament_index)

    def game_rng(self, game_index: int) -> SplitMix64:
        """Independent generator for one scheduled game."""
        return SplitMix64(substream(self.tournament_seed, game_index))
