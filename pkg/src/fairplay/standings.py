"""Standings recomputation, tiebreaks, reporting and CSV interchange.

A withdrawal policy turns a partially played crosstable into a ranked
standings list. Played results always stand (except under annulment);
the policy decides what each unplayed pairing is worth. Tiebreaks follow
the post-withdrawal convention: Sonneborn-Berger over games among active
players only, then rating, then id.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .errors import DegenerateContextError, InvalidInputError, UnsupportedMethodError
from .imputation import (
    build_context,
    impute_annulment_equivalent,
    impute_bayes_blup,
    impute_for_withdrawn,
    impute_forfeit,
    impute_pure_elo,
    impute_pure_performance,
)
from .model import DEFAULT_K, Crosstable, Method, PlayerRecord

__all__ = [
    "ReportingPolicy",
    "StandingsRow",
    "sonneborn_berger",
    "base_standings",
    "apply_policy",
    "render_standings",
    "export_crosstable",
    "parse_crosstable_csv",
]


class ReportingPolicy:
    """How fractional imputed scores are communicated."""

    EARNED_ONLY_FOOTNOTED = "earned"
    ROUND_HALF_POINT = "half"
    ONE_DECIMAL_TOTAL = "decimal"

    ALL = (EARNED_ONLY_FOOTNOTED, ROUND_HALF_POINT, ONE_DECIMAL_TOTAL)


@dataclass(frozen=True)
class StandingsRow:
    player: PlayerRecord
    played_points: float
    imputed_games: tuple[tuple[str, float], ...]  # (opponent id, score), sorted by id
    sonneborn_berger: float
    rank: int
    withdrawn: bool = False

    @property
    def imputed_points(self) -> float:
        return sum(score for _, score in self.imputed_games)

    @property
    def total(self) -> float:
        return self.played_points + self.imputed_points


def sonneborn_berger(
    crosstable: Crosstable, exclude_id: str | None = None
) -> dict[str, float]:
    """Sonneborn-Berger scores, optionally ignoring one player's games.

    SB_i = sum of defeated opponents' totals + half the drawn opponents'
    totals, where the opponents' totals are themselves computed over the
    included games only. With ``exclude_id`` set, every game involving that
    player is struck from both the sums and the totals.
    """
    players = crosstable.players
    n = len(players)
    excl = crosstable.index_of(exclude_id) if exclude_id is not None else None

    def included(i: int, j: int) -> bool:
        return i != excl and j != excl and crosstable.results[i][j] is not None

    totals = [
        sum(crosstable.results[i][j] for j in range(n) if included(i, j))
        for i in range(n)
    ]
    sb: dict[str, float] = {}
    for i in range(n):
        acc = 0.0
        for j in range(n):
            if not included(i, j):
                continue
            score = crosstable.results[i][j]
            if score == 1.0:
                acc += totals[j]
            elif score == 0.5:
                acc += 0.5 * totals[j]
        sb[players[i].id] = acc
    return sb


def _ranked(entries: list[StandingsRow]) -> list[StandingsRow]:
    """Assign ranks by total, then SB, then rating, then id."""
    order = sorted(
        entries,
        key=lambda r: (-r.total, -r.sonneborn_berger, -r.player.rating, r.player.id),
    )
    return [
        StandingsRow(
            player=r.player,
            played_points=r.played_points,
            imputed_games=r.imputed_games,
            sonneborn_berger=r.sonneborn_berger,
            rank=pos + 1,
            withdrawn=r.withdrawn,
        )
        for pos, r in enumerate(order)
    ]


def _played_points(crosstable: Crosstable, i: int) -> float:
    return sum(s for s in crosstable.results[i] if s is not None)


def base_standings(crosstable: Crosstable) -> list[StandingsRow]:
    """Standings of a crosstable as it stands: no imputation, classical SB."""
    sb = sonneborn_berger(crosstable)
    rows = [
        StandingsRow(
            player=p,
            played_points=_played_points(crosstable, i),
            imputed_games=(),
            sonneborn_berger=sb[p.id],
            rank=0,
        )
        for i, p in enumerate(crosstable.players)
    ]
    return _ranked(rows)


def reduced_crosstable(crosstable: Crosstable, without_id: str) -> Crosstable:
    """The crosstable with one player (and all their games) removed."""
    w = crosstable.index_of(without_id)
    keep = [i for i in range(len(crosstable.players)) if i != w]
    return Crosstable(
        players=tuple(crosstable.players[i] for i in keep),
        results=tuple(tuple(crosstable.results[i][j] for j in keep) for i in keep),
        schedule=None
        if crosstable.schedule is None
        else tuple(tuple(crosstable.schedule[i][j] for j in keep) for i in keep),
    )


def apply_policy(
    crosstable: Crosstable,
    withdrawn_id: str,
    method: Method | str,
    k: float = DEFAULT_K,
) -> list[StandingsRow]:
    """Recompute standings under one withdrawal-scoring policy.

    Forfeit: played results stand, every unplayed opponent gains 1.0 and
    the withdrawn player's retained row gains nothing. Annulment: all of
    the withdrawn player's games are struck and the reduced field is
    ranked on its own. The imputation methods credit each unplayed
    opponent with the method's score and the withdrawn player with its
    complement. Sonneborn-Berger is always computed over games among
    active players only.
    """
    try:
        method = Method(method)
    except ValueError:
        raise UnsupportedMethodError(f"unknown method {method!r}") from None
    w = crosstable.index_of(withdrawn_id)
    withdrawn = crosstable.players[w]

    if method is Method.ANNULMENT:
        return base_standings(reduced_crosstable(crosstable, withdrawn_id))

    unplayed = crosstable.unplayed_opponents(withdrawn_id)
    if method is Method.FORFEIT:
        opp_scores = {opp.id: 1.0 for opp in unplayed}
        w_scores = {opp.id: 0.0 for opp in unplayed}
    elif method is Method.PURE_ELO:
        results = [impute_pure_elo(withdrawn, opp) for opp in unplayed]
        opp_scores = {r.opponent.id: r.score for r in results}
        w_scores = {r.opponent.id: 1.0 - r.score for r in results}
    else:
        ctx = build_context(crosstable, withdrawn_id)  # raises when n = 0
        if method is Method.PURE_PERFORMANCE:
            results = [impute_pure_performance(ctx, opp) for opp in unplayed]
            opp_scores = {r.opponent.id: r.score for r in results}
            w_scores = {opp.id: ctx.mean_score for opp in unplayed}
        else:  # BAYES_BLUP
            opp_scores = {
                opp.id: impute_bayes_blup(ctx, opp, k).score for opp in unplayed
            }
            w_scores = {
                opp.id: impute_for_withdrawn(ctx, opp, k).score for opp in unplayed
            }

    sb = sonneborn_berger(crosstable, exclude_id=withdrawn_id)
    rows = []
    for i, p in enumerate(crosstable.players):
        if p.id == withdrawn_id:
            games = tuple(sorted(w_scores.items()))
        elif p.id in opp_scores:
            games = ((withdrawn_id, opp_scores[p.id]),)
        else:
            games = ()
        rows.append(
            StandingsRow(
                player=p,
                played_points=_played_points(crosstable, i),
                imputed_games=games,
                sonneborn_berger=sb[p.id],
                rank=0,
                withdrawn=p.id == withdrawn_id,
            )
        )
    return _ranked(rows)


def _round_half_point(score: float) -> float:
    """Nearest half point; exact ties resolve toward the draw value 0.5."""
    lo = math.floor(score * 2.0) / 2.0
    hi = lo + 0.5
    if abs(score - lo) < abs(score - hi):
        return lo
    if abs(score - hi) < abs(score - lo):
        return hi
    return lo if abs(lo - 0.5) < abs(hi - 0.5) else hi


def _fmt_points(x: float) -> str:
    return f"{x:g}"


def render_standings(rows: list[StandingsRow], policy: str) -> str:
    """Format ranked standings as a text table under a reporting policy.

    Pure function: identical rows and policy produce identical bytes.
    """
    if policy not in ReportingPolicy.ALL:
        raise InvalidInputError(f"unknown reporting policy {policy!r}")
    games = len(rows) - 1
    lines = []
    footnotes = []
    header = f"{'#':>2}  {'player':<24} {'rating':>6}  {'score':>9}  {'SB':>7}"
    lines.append(header)
    lines.append("-" * len(header))
    for row in sorted(rows, key=lambda r: r.rank):
        name = row.player.name + (" (wd)" if row.withdrawn else "")
        if policy == ReportingPolicy.ONE_DECIMAL_TOTAL:
            score = f"{row.total:.1f}/{games}"
        elif policy == ReportingPolicy.ROUND_HALF_POINT:
            rounded = row.played_points + sum(
                _round_half_point(s) for _, s in row.imputed_games
            )
            score = f"{_fmt_points(rounded)}/{games}"
        else:  # earned-only with footnoted imputations
            marker = " -" if row.imputed_games else ""
            score = f"{_fmt_points(row.played_points)}/{games}{marker}"
            for opp_id, s in row.imputed_games:
                footnotes.append(f"  - {row.player.name} vs {opp_id}: imputed {s:.3f}")
        lines.append(
            f"{row.rank:>2}  {name:<24} {row.player.rating:>6g}  {score:>9}  "
            f"{row.sonneborn_berger:>7.3f}"
        )
    if footnotes:
        lines.append("")
        lines.append("unplayed games (imputed values, not earned over the board):")
        lines.extend(footnotes)
    return "\n".join(lines) + "\n"


def export_crosstable(crosstable: Crosstable, rows: list[StandingsRow]) -> str:
    """Render a policy result as CSV: one row per player, seating order.

    Per-opponent cells hold the row player's score; imputed cells carry a
    ``*`` suffix; rank is a column, so parsing recovers both the played
    crosstable (players and results; round assignments are not serialized)
    and the standings exactly. Floats use shortest round-trip notation.
    """
    present = {r.player.id: r for r in rows}
    order = [present[p.id] for p in crosstable.players if p.id in present]
    ids = [r.player.id for r in order]
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        ["id", "name", "rating"]
        + ids
        + ["played", "imputed", "total", "sb", "rank", "withdrawn"]
    )
    for row in order:
        i = crosstable.index_of(row.player.id)
        imputed = dict(row.imputed_games)
        cells = []
        for opp_id in ids:
            if opp_id == row.player.id:
                cells.append("")
                continue
            j = crosstable.index_of(opp_id)
            played = crosstable.results[i][j]
            if played is not None:
                cells.append(repr(played))
            elif opp_id in imputed:
                cells.append(repr(imputed[opp_id]) + "*")
            else:
                cells.append("")
        writer.writerow(
            [row.player.id, row.player.name, repr(row.player.rating)]
            + cells
            + [
                repr(row.played_points),
                repr(row.imputed_points),
                repr(row.total),
                repr(row.sonneborn_berger),
                str(row.rank),
                "true" if row.withdrawn else "false",
            ]
        )
    return buf.getvalue()


def parse_crosstable_csv(text: str) -> tuple[Crosstable, list[StandingsRow]]:
    """Inverse of :func:`export_crosstable` (starred cells stay imputed)."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise InvalidInputError("empty CSV document") from None
    if len(header) < 9 or header[:3] != ["id", "name", "rating"]:
        raise InvalidInputError("unrecognized standings CSV header")
    opp_ids = header[3:-6]
    records = list(reader)
    players_by_id: dict[str, PlayerRecord] = {}
    for rec in records:
        players_by_id[rec[0]] = PlayerRecord(id=rec[0], name=rec[1], rating=float(rec[2]))
    # crosstable in the exported (rank) order
    players = tuple(players_by_id[rec[0]] for rec in records)
    index = {p.id: i for i, p in enumerate(players)}
    n = len(players)
    results: list[list[float | None]] = [[None] * n for _ in range(n)]
    rows: list[StandingsRow] = []
    for rec in records:
        i = index[rec[0]]
        imputed: list[tuple[str, float]] = []
        for col, opp_id in enumerate(opp_ids):
            cell = rec[3 + col]
            if not cell or opp_id not in index:
                continue
            if cell.endswith("*"):
                imputed.append((opp_id, float(cell[:-1])))
            else:
                results[i][index[opp_id]] = float(cell)
        played, _imp, _total, sb, rank, withdrawn = rec[-6:]
        rows.append(
            StandingsRow(
                player=players[i],
                played_points=float(played),
                imputed_games=tuple(sorted(imputed)),
                sonneborn_berger=float(sb),
                rank=int(rank),
                withdrawn=withdrawn == "true",
            )
        )
    crosstable = Crosstable(
        players=players,
        results=tuple(tuple(row) for row in results),
    )
    return crosstable, rows
