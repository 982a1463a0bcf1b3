"""Shared construction helpers for the test suite."""
from __future__ import annotations

from pointdiff import GameResult, TeamSeason


def make_season(
    margins, year: int = 1994, team: str = "CHI", base: int = 100
) -> TeamSeason:
    """Build a season whose game margins are exactly the given list.

    The loser of each game scores ``base`` points, the winner ``base``
    plus the margin, so the margin list fully determines the season.
    """
    games = tuple(
        GameResult(year, team, i + 1, base + max(m, 0), base + max(-m, 0))
        for i, m in enumerate(margins)
    )
    return TeamSeason(year, team, games)


def two_level_seasons(n_pairs: int = 3) -> list[TeamSeason]:
    """Seasons taking exactly two (indicator, target) values, co-varying.

    Archetype A loses every first-half game by 3 and wins 1 of 5 in the
    second half; archetype B mirrors it.  Any strictly increasing odd
    weighting then correlates perfectly with the second-half fraction.
    """
    seasons = []
    for i in range(n_pairs):
        for sign, wins, tag in ((-1, 1, "A"), (+1, 4, "B")):
            first = [3 * sign] * 5
            second = [+2] * wins + [-2] * (5 - wins)
            seasons.append(make_season(first + second, year=2000 + i, team=f"{tag}{i}"))
    return seasons
