"""Tournament interchange format: a small JSON document.

Schema::

    {
      "name": str,
      "players": [{"id": str, "name": str, "rating": number}, ...],
      "games":   [{"white": id, "black": id,
                   "result": "1-0" | "0-1" | "1/2-1/2", "round": int}, ...],
      "withdrawn": id,
      "k": number > 0        (optional, default 3),
      "sigma2": number > 0   (optional, default 0.25)
    }

Validation failures name the offending field (``games[3].result``) so both
the CLI and the HTTP API can point at the exact problem.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import TournamentFileError
from .model import DEFAULT_K, DEFAULT_SIGMA2, Crosstable, PlayerRecord

__all__ = ["Tournament", "parse_tournament", "load_tournament", "bucharest_fixture", "RESULT_SCORES"]

RESULT_SCORES = {"1-0": 1.0, "0-1": 0.0, "1/2-1/2": 0.5}


@dataclass(frozen=True)
class Tournament:
    name: str
    crosstable: Crosstable
    withdrawn_id: str
    k: float
    sigma2: float


def _require(doc: dict, key: str, kind, path: str):
    if key not in doc:
        raise TournamentFileError(f"{path}.{key}" if path else key, "missing required field")
    value = doc[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise TournamentFileError(_join(path, key), "must be a number")
        return float(value)
    if not isinstance(value, kind):
        raise TournamentFileError(_join(path, key), f"must be of type {kind.__name__}")
    return value


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def parse_tournament(doc) -> Tournament:
    if not isinstance(doc, dict):
        raise TournamentFileError("$", "document must be a JSON object")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise TournamentFileError("name", "must be a string")

    raw_players = _require(doc, "players", list, "")
    if not raw_players:
        raise TournamentFileError("players", "must not be empty")
    players: list[PlayerRecord] = []
    seen: set[str] = set()
    for i, entry in enumerate(raw_players):
        path = f"players[{i}]"
        if not isinstance(entry, dict):
            raise TournamentFileError(path, "must be an object")
        pid = _require(entry, "id", str, path)
        pname = _require(entry, "name", str, path)
        rating = _require(entry, "rating", float, path)
        if not (math.isfinite(rating) and rating > 0):
            raise TournamentFileError(f"{path}.rating", "must be a positive finite number")
        if pid in seen:
            raise TournamentFileError(f"{path}.id", f"duplicate player id {pid!r}")
        seen.add(pid)
        players.append(PlayerRecord(id=pid, name=pname, rating=rating))
    index = {p.id: i for i, p in enumerate(players)}

    n = len(players)
    results: list[list[float | None]] = [[None] * n for _ in range(n)]
    schedule: list[list[int | None]] = [[None] * n for _ in range(n)]
    raw_games = _require(doc, "games", list, "")
    for g, entry in enumerate(raw_games):
        path = f"games[{g}]"
        if not isinstance(entry, dict):
            raise TournamentFileError(path, "must be an object")
        white = _require(entry, "white", str, path)
        black = _require(entry, "black", str, path)
        result = _require(entry, "result", str, path)
        rnd = entry.get("round")
        if not isinstance(rnd, int) or isinstance(rnd, bool) or rnd < 1:
            raise TournamentFileError(f"{path}.round", "must be a positive integer")
        for field, pid in (("white", white), ("black", black)):
            if pid not in index:
                raise TournamentFileError(f"{path}.{field}", f"unknown player id {pid!r}")
        if white == black:
            raise TournamentFileError(f"{path}.black", "players cannot face themselves")
        if result not in RESULT_SCORES:
            raise TournamentFileError(
                f"{path}.result", f"must be one of {sorted(RESULT_SCORES)}"
            )
        i, j = index[white], index[black]
        if results[i][j] is not None:
            raise TournamentFileError(path, f"duplicate pairing {white!r} vs {black!r}")
        score = RESULT_SCORES[result]
        results[i][j] = score
        results[j][i] = 1.0 - score
        schedule[i][j] = schedule[j][i] = rnd

    withdrawn = _require(doc, "withdrawn", str, "")
    if withdrawn not in index:
        raise TournamentFileError("withdrawn", f"unknown player id {withdrawn!r}")

    k = doc.get("k", DEFAULT_K)
    if isinstance(k, bool) or not isinstance(k, (int, float)) or not k > 0:
        raise TournamentFileError("k", "must be a positive number")
    sigma2 = doc.get("sigma2", DEFAULT_SIGMA2)
    if isinstance(sigma2, bool) or not isinstance(sigma2, (int, float)) or not sigma2 > 0:
        raise TournamentFileError("sigma2", "must be a positive number")

    crosstable = Crosstable(
        players=tuple(players),
        results=tuple(tuple(row) for row in results),
        schedule=tuple(tuple(row) for row in schedule),
    )
    return Tournament(
        name=name,
        crosstable=crosstable,
        withdrawn_id=withdrawn,
        k=float(k),
        sigma2=float(sigma2),
    )


def load_tournament(path: str | Path) -> Tournament:
    """Read and validate a tournament file from disk."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TournamentFileError(
            f"line {exc.lineno}, column {exc.colno}", f"invalid JSON: {exc.msg}"
        ) from exc
    return parse_tournament(doc)


def bucharest_fixture() -> Tournament:
    """The bundled Bucharest 2026 withdrawal (the canonical worked example)."""
    with resources.files("fairplay.data").joinpath("bucharest_2026.json").open(
        "r", encoding="utf-8"
    ) as fh:
        return parse_tournament(json.load(fh))
