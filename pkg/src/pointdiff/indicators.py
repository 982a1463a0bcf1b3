"""First-half-season strength indicators.

Each indicator maps a team-season to one real number computed from the
first half only; the second-half win fraction is the quantity it tries
to predict.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Callable, Iterable, Sequence, Union

import numpy as np

from .errors import ValidationError
from .gamedata import TeamSeason, split_half
from .weighting import WeightFunction


@dataclass(frozen=True)
class IndicatorValue:
    season_year: int
    team_id: str
    value: float

    @property
    def key(self) -> tuple[int, str]:
        return (self.season_year, self.team_id)


def wpd(season: TeamSeason, weight_fn: WeightFunction) -> float:
    """Weighted point-differential: mean of w(margin) over first-half games."""
    half = split_half(season)
    margins = np.array([g.margin for g in half.first_half], dtype=np.int64)
    return float(np.mean(weight_fn(margins)))


def win_loss_indicator(season: TeamSeason) -> float:
    """First-half wins divided by first-half games."""
    half = split_half(season)
    wins = sum(1 for g in half.first_half if g.margin > 0)
    return wins / len(half.first_half)


def pythagorean(season: TeamSeason, exp: float) -> float:
    """scored^exp / (scored^exp + allowed^exp) over first-half point totals."""
    exp = float(exp)
    if not math.isfinite(exp) or exp <= 0:
        raise ValidationError(f"exponent must be positive and finite, got {exp!r}")
    half = split_half(season)
    scored = sum(g.points_for for g in half.first_half)
    allowed = sum(g.points_against for g in half.first_half)
    if scored == 0 or allowed == 0:
        raise ValidationError(
            f"season {season.season_year} team {season.team_id}: first-half point "
            f"totals {scored}/{allowed} are degenerate for the Pythagorean indicator"
        )
    s = float(scored) ** exp
    a = float(allowed) ** exp
    return s / (s + a)


def indicator_values(
    seasons: Sequence[TeamSeason], indicator: Callable[[TeamSeason], float]
) -> list[IndicatorValue]:
    """Evaluate an indicator per team-season, keeping the (season, team) keys."""
    return [
        IndicatorValue(s.season_year, s.team_id, float(indicator(s))) for s in seasons
    ]


def write_indicator_csv(
    values: Iterable[IndicatorValue], dest: Union[str, Path, IO[str]]
) -> None:
    """Write ``season,team,value`` rows for external plotting."""
    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8", newline="") as fh:
            write_indicator_csv(values, fh)
        return
    writer = csv.writer(dest, lineterminator="\n")
    writer.writerow(["season", "team", "value"])
    for v in values:
        writer.writerow([v.season_year, v.team_id, repr(v.value)])
