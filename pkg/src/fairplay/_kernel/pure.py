"""Pure-Python simulation kernel.

Reference implementation of the batch tournament loop. The compiled
backend (``engine.pyx``) mirrors this file statement for statement; both
must produce bit-identical accumulators for the same inputs, which the
test suite asserts. Keep the arithmetic order in the two files in sync.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_INV_2_53 = 2.0 ** -53

N_METHODS = 5  # forfeit, annulment, elo, performance, bayes


def _mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def _substream(seed: int, index: int) -> int:
    return _mix64((seed + (index + 1) * GOLDEN) & MASK64)


def _uniform(seed: int) -> float:
    return (_mix64((seed + GOLDEN) & MASK64) >> 11) * _INV_2_53


def run_scenario(
    p_win,
    p_draw,
    w_round,
    w_game,
    e_opp,
    opp_games,
    opp_is_a,
    opp_other_count: int,
    n_played: int,
    k: float,
    scenario_seed: int,
    t_start: int,
    t_end: int,
):
    """Accumulate held-out prediction errors over a range of tournaments.

    Returns a float64 array of shape (5, 3): per method, the sum of
    squared errors, the sum of signed errors and the evaluation count.
    Method order: forfeit, annulment, pure Elo, pure performance, BLUP.
    """
    p_win = np.asarray(p_win, dtype=np.float64)
    p_draw = np.asarray(p_draw, dtype=np.float64)
    w_round = np.asarray(w_round, dtype=np.int32)
    w_game = np.asarray(w_game, dtype=np.int32)
    e_opp = np.asarray(e_opp, dtype=np.float64)
    opp_games = np.asarray(opp_games, dtype=np.int32)
    opp_is_a = np.asarray(opp_is_a, dtype=np.uint8)

    n_games = len(p_win)
    out = np.zeros((N_METHODS, 3), dtype=np.float64)
    acc = [[0.0, 0.0, 0.0] for _ in range(N_METHODS)]
    scores = [0.0] * n_games
    pw = p_win.tolist()
    pd = p_draw.tolist()
    wr = w_round.tolist()
    wg = w_game.tolist()
    eo = e_opp.tolist()
    og = opp_games.tolist()
    oa = opp_is_a.tolist()
    denom = float(n_played - 1)
    wgt = denom / (denom + k)

    for t in range(t_start, t_end):
        t_seed = _substream(scenario_seed, t)
        for g in range(n_games):
            r = wr[g]
            if r >= n_played and r >= 0:
                continue
            u = _uniform(_substream(t_seed, g))
            if u < pw[g]:
                scores[g] = 1.0
            elif u < pw[g] + pd[g]:
                scores[g] = 0.5
            else:
                scores[g] = 0.0
        sum_w = 0.0
        sum_e = 0.0
        for r in range(n_played):
            sum_w += scores[wg[r]]
            sum_e += eo[r]
        for r in range(n_played):
            sw = scores[wg[r]]
            actual = 1.0 - sw
            sbar = (sum_w - sw) / denom
            ebar = (sum_e - eo[r]) / denom
            other = 0.0
            base = r * opp_other_count
            for m in range(opp_other_count):
                sc = scores[og[base + m]]
                if oa[base + m] == 0:
                    sc = 1.0 - sc
                other += sc
            pred_annul = other / opp_other_count
            pred_bayes = eo[r] + wgt * (1.0 - sbar - ebar)
            if pred_bayes < 0.0:
                pred_bayes = 0.0
            elif pred_bayes > 1.0:
                pred_bayes = 1.0
            err0 = 1.0 - actual
            err1 = pred_annul - actual
            err2 = eo[r] - actual
            err3 = (1.0 - sbar) - actual
            err4 = pred_bayes - actual
            for mi, err in enumerate((err0, err1, err2, err3, err4)):
                acc[mi][0] += err * err
                acc[mi][1] += err
                acc[mi][2] += 1.0

    for mi in range(N_METHODS):
        out[mi, 0] = acc[mi][0]
        out[mi, 1] = acc[mi][1]
        out[mi, 2] = acc[mi][2]
    return out


def withdrawn_score_sums(
    p_win,
    p_draw,
    w_game,
    n_played: int,
    scenario_seed: int,
    t_start: int,
    t_end: int,
):
    """Sum of the withdrawn player's per-game scores over many tournaments.

    Cheap calibration helper (only the withdrawn player's games are
    realized). Returns (total score, game count).
    """
    p_win = np.asarray(p_win, dtype=np.float64)
    p_draw = np.asarray(p_draw, dtype=np.float64)
    w_game = np.asarray(w_game, dtype=np.int32)
    pw = p_win.tolist()
    pd = p_draw.tolist()
    wg = w_game.tolist()
    total = 0.0
    count = 0
    for t in range(t_start, t_end):
        t_seed = _substream(scenario_seed, t)
        for r in range(n_played):
            g = wg[r]
            u = _uniform(_substream(t_seed, g))
            if u < pw[g]:
                total += 1.0
            elif u < pw[g] + pd[g]:
                total += 0.5
            count += 1
    return total, count
