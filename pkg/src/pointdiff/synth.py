"""Deterministic synthetic season generator.

Gives the pipeline something to chew on without real score data: each
team draws a latent strength per season, margins are strength differences
plus Gaussian noise, and both sides of every game are emitted so the
league-wide margin sum is zero.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .gamedata import GameResult

BASELINE_POINTS = 100
_TIE_REROLLS = 8


@dataclass(frozen=True)
class SynthConfig:
    n_teams: int
    n_games: int
    n_seasons: int
    strength_spread: float
    noise_std: float
    seed: int
    start_year: int = 1970

    def __post_init__(self) -> None:
        for name in ("n_teams", "n_games", "n_seasons"):
            if getattr(self, name) < 1:
                raise ValidationError(f"{name} must be >= 1, got {getattr(self, name)}")
        # Round-robin scheduling pairs every team each round.
        if self.n_teams % 2 != 0:
            raise ValidationError(f"n_teams must be even, got {self.n_teams}")
        for name in ("strength_spread", "noise_std"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise ValidationError(f"{name} must be >= 0, got {value!r}")


def _round_robin_rounds(n_teams: int, n_rounds: int):
    """Circle-method pairings; every team plays exactly once per round."""
    order = list(range(n_teams))
    for _ in range(n_rounds):
        yield [(order[i], order[n_teams - 1 - i]) for i in range(n_teams // 2)]
        order = [order[0], order[-1]] + order[1:-1]


def _draw_margin(rng: np.random.Generator, diff: float, noise_std: float) -> int:
    """Integer margin near diff; zero roundings re-roll, then fall back to sign."""
    for _ in range(_TIE_REROLLS):
        raw = diff + rng.normal(0.0, noise_std)
        margin = int(np.rint(raw))
        if margin != 0:
            return margin
    if raw > 0:
        return 1
    if raw < 0:
        return -1
    return 1 if rng.random() < 0.5 else -1


def generate(cfg: SynthConfig) -> list[GameResult]:
    """Generate team-game rows; identical seed, identical output."""
    rng = np.random.default_rng(cfg.seed)
    games: list[GameResult] = []
    for s in range(cfg.n_seasons):
        year = cfg.start_year + s
        strengths = rng.normal(0.0, cfg.strength_spread, cfg.n_teams)
        for round_no, pairs in enumerate(
            _round_robin_rounds(cfg.n_teams, cfg.n_games), start=1
        ):
            for a, b in pairs:
                margin = _draw_margin(rng, strengths[a] - strengths[b], cfg.noise_std)
                pts_a = BASELINE_POINTS + max(margin, 0)
                pts_b = BASELINE_POINTS + max(-margin, 0)
                games.append(GameResult(year, _team_id(a), round_no, pts_a, pts_b))
                games.append(GameResult(year, _team_id(b), round_no, pts_b, pts_a))
    return games


def _team_id(index: int) -> str:
    return f"T{index + 1:02d}"
