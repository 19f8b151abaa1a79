#!/usr/bin/env python3
"""Benchmark the compiled simulation kernel against the pure-Python fallback.

Runs one representative scenario (narrow field, withdrawal after five
games, neutral form) at increasing tournament counts through both
backends, verifies they agree bit-for-bit, and prints the throughput
ratio.

Usage: python benchmarks/kernel_benchmark.py [--tournaments N]
"""

import argparse
import time

import numpy as np

from fairplay._kernel import pure
from fairplay.montecarlo import (
    FieldShape,
    GameModelParams,
    ScenarioSpec,
    _compile_scenario,
)

try:
    from fairplay._kernel import engine
except ImportError:
    engine = None


def run(backend, compiled, spec, k, t_end):
    started = time.perf_counter()
    out = backend.run_scenario(
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
        0,
        t_end,
    )
    return out, time.perf_counter() - started


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tournaments", type=int, default=50_000)
    args = parser.parse_args()

    spec = ScenarioSpec(FieldShape.NARROW, 5, 0.0, args.tournaments, seed=42)
    compiled = _compile_scenario(spec, GameModelParams())

    print(f"scenario: narrow field, n=5, neutral form, {args.tournaments} tournaments")
    out_pure, t_pure = run(pure, compiled, spec, 3.0, args.tournaments)
    rate_pure = args.tournaments / t_pure
    print(f"pure python : {t_pure:8.3f}s  ({rate_pure:12,.0f} tournaments/s)")

    if engine is None:
        print("compiled    : unavailable (extension not built)")
        return 0

    out_cy, t_cy = run(engine, compiled, spec, 3.0, args.tournaments)
    rate_cy = args.tournaments / t_cy
    print(f"compiled    : {t_cy:8.3f}s  ({rate_cy:12,.0f} tournaments/s)")
    print(f"speedup     : {t_pure / t_cy:8.1f}x")
    identical = np.array_equal(out_pure, out_cy)
    print(f"bit-identical results: {identical}")
    return 0 if identical else 1


if __name__ == "__main__":
    raise SystemExit(main())
