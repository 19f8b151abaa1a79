# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled simulation kernel.

Statement-for-statement mirror of ``pure.py`` (see that file for the
contract). Compiled with -ffp-contract=off so the floating-point results
are bit-identical to the pure-Python backend.
"""

import numpy as np

from libc.stdint cimport int32_t, uint8_t, uint64_t

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15
cdef double INV_2_53 = 1.0 / 9007199254740992.0

cdef inline uint64_t _mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef inline uint64_t _substream(uint64_t seed, uint64_t index) nogil:
    return _mix64(seed + (index + 1) * GOLDEN)


cdef inline double _uniform(uint64_t seed) nogil:
    return <double>(_mix64(seed + GOLDEN) >> 11) * INV_2_53


def run_scenario(
    double[::1] p_win,
    double[::1] p_draw,
    int32_t[::1] w_round,
    int32_t[::1] w_game,
    double[::1] e_opp,
    int32_t[::1] opp_games,
    uint8_t[::1] opp_is_a,
    int opp_other_count,
    int n_played,
    double k,
    unsigned long long scenario_seed,
    long t_start,
    long t_end,
):
    """See ``fairplay._kernel.pure.run_scenario``."""
    cdef int n_games = p_win.shape[0]
    out = np.zeros((5, 3), dtype=np.float64)
    cdef double[:, ::1] o = out
    scores_arr = np.zeros(n_games, dtype=np.float64)
    cdef double[::1] scores = scores_arr
    cdef double acc[5][3]
    cdef double errs[5]
    cdef long t
    cdef int g, r, m, mi, base
    cdef uint64_t t_seed
    cdef double u, sum_w, sum_e, sw, actual, sbar, ebar, other, sc
    cdef double pred_annul, pred_bayes, err
    cdef double denom = <double>(n_played - 1)
    cdef double wgt = denom / (denom + k)

    for mi in range(5):
        acc[mi][0] = 0.0
        acc[mi][1] = 0.0
        acc[mi][2] = 0.0

    with nogil:
        for t in range(t_start, t_end):
            t_seed = _substream(scenario_seed, <uint64_t>t)
            for g in range(n_games):
                r = w_round[g]
                if r >= n_played and r >= 0:
                    continue
                u = _uniform(_substream(t_seed, <uint64_t>g))
                if u < p_win[g]:
                    scores[g] = 1.0
                elif u < p_win[g] + p_draw[g]:
                    scores[g] = 0.5
                else:
                    scores[g] = 0.0
            sum_w = 0.0
            sum_e = 0.0
            for r in range(n_played):
                sum_w += scores[w_game[r]]
                sum_e += e_opp[r]
            for r in range(n_played):
                sw = scores[w_game[r]]
                actual = 1.0 - sw
                sbar = (sum_w - sw) / denom
                ebar = (sum_e - e_opp[r]) / denom
                other = 0.0
                base = r * opp_other_count
                for m in range(opp_other_count):
                    sc = scores[opp_games[base + m]]
                    if opp_is_a[base + m] == 0:
                        sc = 1.0 - sc
                    other += sc
                pred_annul = other / opp_other_count
                pred_bayes = e_opp[r] + wgt * (1.0 - sbar - ebar)
                if pred_bayes < 0.0:
                    pred_bayes = 0.0
                elif pred_bayes > 1.0:
                    pred_bayes = 1.0
                errs[0] = 1.0 - actual
                errs[1] = pred_annul - actual
                errs[2] = e_opp[r] - actual
                errs[3] = (1.0 - sbar) - actual
                errs[4] = pred_bayes - actual
                for mi in range(5):
                    err = errs[mi]
                    acc[mi][0] += err * err
                    acc[mi][1] += err
                    acc[mi][2] += 1.0

    for mi in range(5):
        o[mi, 0] = acc[mi][0]
        o[mi, 1] = acc[mi][1]
        o[mi, 2] = acc[mi][2]
    return out


def withdrawn_score_sums(
    double[::1] p_win,
    double[::1] p_draw,
    int32_t[::1] w_game,
    int n_played,
    unsigned long long scenario_seed,
    long t_start,
    long t_end,
):
    """See ``fairplay._kernel.pure.withdrawn_score_sums``."""
    cdef double total = 0.0
    cdef long count = 0
    cdef long t
    cdef int r, g
    cdef uint64_t t_seed
    cdef double u
    with nogil:
        for t in range(t_start, t_end):
            t_seed = _substream(scenario_seed, <uint64_t>t)
            for r in range(n_played):
                g = w_game[r]
                u = _uniform(_substream(t_seed, <uint64_t>g))
                if u < p_win[g]:
                    total += 1.0
                elif u < p_win[g] + p_draw[g]:
                    total += 0.5
                count += 1
    return total, count
