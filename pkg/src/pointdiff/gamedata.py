"""Score ingestion and team-season assembly.

The canonical input is one CSV row per team per game
(``season,team,game_no,pts_for,pts_against``).  A game-level layout with
home/away columns is also accepted and expanded into two team rows.  All
structures are immutable once built and safe for concurrent reads.
"""
from __future__ import annotations

import csv
import io
import re
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Sequence, Union

from .errors import DegenerateSeasonError, IntegrityError, ParseError, ValidationError

TEAM_GAME_COLUMNS = ("season", "team", "game_no", "pts_for", "pts_against")
GAME_LEVEL_COLUMNS = (
    "season",
    "game_no_home",
    "game_no_away",
    "home",
    "away",
    "home_pts",
    "away_pts",
)

# Base-10 integers only; int() would also accept "1_000".
_INT_RE = re.compile(r"^[+-]?[0-9]+$")

Source = Union[str, Path, IO[str], IO[bytes]]


@dataclass(frozen=True)
class GameResult:
    """One team's view of one game."""

    season_year: int
    team_id: str
    game_index: int
    points_for: int
    points_against: int

    def __post_init__(self) -> None:
        if self.game_index < 1:
            raise ValidationError(f"game_index must be >= 1, got {self.game_index}")
        if self.points_for < 0 or self.points_against < 0:
            raise ValidationError(
                f"negative score {self.points_for}-{self.points_against} "
                f"for {self.team_id} in {self.season_year}"
            )
        if self.points_for == self.points_against:
            raise ValidationError(
                f"tie score {self.points_for}-{self.points_against} "
                f"for {self.team_id} in {self.season_year}; NBA games cannot tie"
            )

    @property
    def margin(self) -> int:
        """Signed point margin, e.g. +4 for a 4-point win."""
        return self.points_for - self.points_against


@dataclass(frozen=True)
class TeamSeason:
    """Ordered game list for one team in one season."""

    season_year: int
    team_id: str
    games: tuple[GameResult, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "games", tuple(self.games))
        if len(self.games) < 2:
            raise DegenerateSeasonError(
                f"season {self.season_year} team {self.team_id} has "
                f"{len(self.games)} game(s); need at least 2 to split halves"
            )
        for pos, g in enumerate(self.games, start=1):
            if (g.season_year, g.team_id) != (self.season_year, self.team_id):
                raise IntegrityError(
                    f"game for {g.team_id}/{g.season_year} grouped under "
                    f"{self.team_id}/{self.season_year}"
                )
            if g.game_index != pos:
                raise IntegrityError(
                    f"season {self.season_year} team {self.team_id}: expected "
                    f"game_index {pos} at position {pos}, got {g.game_index}"
                )

    @property
    def n_games(self) -> int:
        return len(self.games)

    @property
    def key(self) -> tuple[int, str]:
        return (self.season_year, self.team_id)


@dataclass(frozen=True)
class HalfSplit:
    """First-half games plus the second-half win fraction they predict."""

    first_half: tuple[GameResult, ...]
    second_half_win_fraction: float


def split_half(season: TeamSeason) -> HalfSplit:
    """Split a season into its first ``floor(N/2)`` games and the target fraction.

    A win is any positive margin; the fraction is wins over games in the
    remaining (larger for odd N) half.
    """
    n = season.n_games
    if n < 2:
        raise DegenerateSeasonError(
            f"season {season.season_year} team {season.team_id} has {n} game(s)"
        )
    n_first = n // 2
    first = season.games[:n_first]
    second = season.games[n_first:]
    wins = sum(1 for g in second if g.margin > 0)
    return HalfSplit(first_half=first, second_half_win_fraction=wins / len(second))


def _read_rows(source: Source) -> list[list[str]]:
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as fh:
            return list(csv.reader(fh))
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return list(csv.reader(io.StringIO(data)))


def _check_header(row: Sequence[str], expected: Sequence[str]) -> bool:
    return [c.strip().lower() for c in row] == list(expected)


def _int_field(text: str, name: str, line_no: int) -> int:
    text = text.strip()
    if not _INT_RE.match(text):
        raise ParseError(f"line {line_no}: {name} is not a base-10 integer: {text!r}")
    return int(text)


def _parse_team_game_rows(rows: list[list[str]]) -> list[GameResult]:
    games: list[GameResult] = []
    for line_no, row in enumerate(rows[1:], start=2):
        if len(row) != len(TEAM_GAME_COLUMNS):
            raise ParseError(
                f"line {line_no}: expected {len(TEAM_GAME_COLUMNS)} columns, got {len(row)}"
            )
        season = _int_field(row[0], "season", line_no)
        team = row[1].strip()
        if not team:
            raise ParseError(f"line {line_no}: empty team id")
        game_no = _int_field(row[2], "game_no", line_no)
        pts_for = _int_field(row[3], "pts_for", line_no)
        pts_against = _int_field(row[4], "pts_against", line_no)
        try:
            games.append(GameResult(season, team, game_no, pts_for, pts_against))
        except ValidationError as exc:
            raise ValidationError(f"line {line_no}: {exc}") from exc
    return games


def _parse_game_level_rows(rows: list[list[str]]) -> list[GameResult]:
    games: list[GameResult] = []
    for line_no, row in enumerate(rows[1:], start=2):
        if len(row) != len(GAME_LEVEL_COLUMNS):
            raise ParseError(
                f"line {line_no}: expected {len(GAME_LEVEL_COLUMNS)} columns, got {len(row)}"
            )
        season = _int_field(row[0], "season", line_no)
        no_home = _int_field(row[1], "game_no_home", line_no)
        no_away = _int_field(row[2], "game_no_away", line_no)
        home, away = row[3].strip(), row[4].strip()
        if not home or not away:
            raise ParseError(f"line {line_no}: empty team id")
        home_pts = _int_field(row[5], "home_pts", line_no)
        away_pts = _int_field(row[6], "away_pts", line_no)
        try:
            games.append(GameResult(season, home, no_home, home_pts, away_pts))
            games.append(GameResult(season, away, no_away, away_pts, home_pts))
        except ValidationError as exc:
            raise ValidationError(f"line {line_no}: {exc}") from exc
    return games


def parse_games(source: Source) -> list[GameResult]:
    """Parse canonical team-game CSV; preserves row order.

    An empty source yields an empty list.  A present header must match
    ``season,team,game_no,pts_for,pts_against``.
    """
    rows = _read_rows(source)
    if not rows:
        return []
    if not _check_header(rows[0], TEAM_GAME_COLUMNS):
        raise ParseError(
            f"line 1: expected header {','.join(TEAM_GAME_COLUMNS)}, got {','.join(rows[0])}"
        )
    return _parse_team_game_rows(rows)


def parse_game_level(source: Source) -> list[GameResult]:
    """Parse game-level CSV, expanding each game into two team rows (home first)."""
    rows = _read_rows(source)
    if not rows:
        return []
    if not _check_header(rows[0], GAME_LEVEL_COLUMNS):
        raise ParseError(
            f"line 1: expected header {','.join(GAME_LEVEL_COLUMNS)}, got {','.join(rows[0])}"
        )
    return _parse_game_level_rows(rows)


def load_games(source: Source) -> list[GameResult]:
    """Parse either CSV layout, dispatching on the header row."""
    rows = _read_rows(source)
    if not rows:
        return []
    if _check_header(rows[0], TEAM_GAME_COLUMNS):
        return _parse_team_game_rows(rows)
    if _check_header(rows[0], GAME_LEVEL_COLUMNS):
        return _parse_game_level_rows(rows)
    raise ParseError(
        f"line 1: header matches neither {','.join(TEAM_GAME_COLUMNS)} "
        f"nor {','.join(GAME_LEVEL_COLUMNS)}"
    )


def write_games(games: Iterable[GameResult], dest: Union[str, Path, IO[str]]) -> None:
    """Emit canonical team-game CSV; re-parsing round-trips exactly."""
    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8", newline="") as fh:
            write_games(games, fh)
        return
    writer = csv.writer(dest, lineterminator="\n")
    writer.writerow(TEAM_GAME_COLUMNS)
    for g in games:
        writer.writerow(
            [g.season_year, g.team_id, g.game_index, g.points_for, g.points_against]
        )


def build_team_seasons(games: Iterable[GameResult]) -> list[TeamSeason]:
    """Group games into team-seasons, sorted by (season, team).

    Game indices within each group must be exactly 1..N with no duplicates
    or gaps.
    """
    groups: dict[tuple[int, str], list[GameResult]] = defaultdict(list)
    for g in games:
        groups[(g.season_year, g.team_id)].append(g)

    seasons: list[TeamSeason] = []
    for year, team in sorted(groups):
        group = sorted(groups[(year, team)], key=lambda g: g.game_index)
        label = f"season {year} team {team}"
        for prev, cur in zip(group, group[1:]):
            if cur.game_index == prev.game_index:
                raise IntegrityError(f"{label}: duplicate game_index {cur.game_index}")
        indices = [g.game_index for g in group]
        if indices != list(range(1, len(group) + 1)):
            raise IntegrityError(
                f"{label}: game_index values {indices} are not contiguous from 1"
            )
        if len(group) < 2:
            raise DegenerateSeasonError(f"{label}: only {len(group)} game(s)")
        seasons.append(TeamSeason(year, team, tuple(group)))
    return seasons
