"""Correlation benchmarking: Pearson r, parameter sweeps, and the summary report.

Every correlation here is between per-team-season indicator values from
first-half games and second-half win fractions, pooled over all supplied
team-seasons as one sample.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Callable, Sequence, Union

import numpy as np

from .errors import UndefinedCorrelationError, ValidationError
from .gamedata import TeamSeason, split_half
from .weighting import HardCap, Identity, SOFT_CAP_KINDS, WeightFunction, soft_cap


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Sample Pearson correlation, clamped into [-1, 1].

    Raises for mismatched lengths, fewer than 2 points, or a constant
    vector (the correlation would be 0/0).
    """
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.ndim != 1 or ya.ndim != 1:
        raise ValidationError("pearson expects 1-D vectors")
    if xa.shape != ya.shape:
        raise ValidationError(f"length mismatch: {xa.shape[0]} vs {ya.shape[0]}")
    if xa.shape[0] < 2:
        raise ValidationError("pearson needs at least 2 points")
    xc = xa - xa.mean()
    yc = ya - ya.mean()
    sxx = float(np.dot(xc, xc))
    syy = float(np.dot(yc, yc))
    if sxx == 0.0 or syy == 0.0:
        raise UndefinedCorrelationError("correlation undefined for a constant vector")
    r = float(np.dot(xc, yc) / np.sqrt(sxx * syy))
    return min(1.0, max(-1.0, r))


def evaluate_indicator(
    seasons: Sequence[TeamSeason], indicator: Callable[[TeamSeason], float]
) -> float:
    """Pearson r between an indicator and second-half win fractions."""
    values = [float(indicator(s)) for s in seasons]
    targets = [split_half(s).second_half_win_fraction for s in seasons]
    return pearson(values, targets)


@dataclass(frozen=True)
class _Panel:
    """Per-season arrays precomputed once so sweeps stay vectorized."""

    margins: np.ndarray  # all first-half margins, season blocks concatenated
    offsets: np.ndarray  # start of each season's block
    counts: np.ndarray  # first-half game counts
    wins: np.ndarray  # first-half wins
    scored: np.ndarray  # first-half points for
    allowed: np.ndarray  # first-half points against
    targets: np.ndarray  # second-half win fractions


def _build_panel(seasons: Sequence[TeamSeason]) -> _Panel:
    margins: list[int] = []
    offsets = np.empty(len(seasons), dtype=np.int64)
    counts = np.empty(len(seasons), dtype=np.int64)
    wins = np.empty(len(seasons), dtype=np.int64)
    scored = np.empty(len(seasons), dtype=np.int64)
    allowed = np.empty(len(seasons), dtype=np.int64)
    targets = np.empty(len(seasons))
    pos = 0
    for i, season in enumerate(seasons):
        half = split_half(season)
        ms = [g.margin for g in half.first_half]
        offsets[i] = pos
        counts[i] = len(ms)
        wins[i] = sum(1 for m in ms if m > 0)
        scored[i] = sum(g.points_for for g in half.first_half)
        allowed[i] = sum(g.points_against for g in half.first_half)
        targets[i] = half.second_half_win_fraction
        margins.extend(ms)
        pos += len(ms)
    return _Panel(
        margins=np.array(margins, dtype=np.int64),
        offsets=offsets,
        counts=counts,
        wins=wins,
        scored=scored,
        allowed=allowed,
        targets=targets,
    )


def _weighted_means(panel: _Panel, weight_fn: WeightFunction) -> np.ndarray:
    weighted = np.asarray(weight_fn(panel.margins), dtype=float)
    sums = np.add.reduceat(weighted, panel.offsets)
    return sums / panel.counts


@dataclass(frozen=True)
class SweepResult:
    """(parameter -> correlation) curve plus its maximizer."""

    parameter_name: str
    points: tuple[tuple[float, float], ...]
    argmax: tuple[float, float]

    @classmethod
    def from_points(
        cls, parameter_name: str, points: Sequence[tuple[float, float]]
    ) -> "SweepResult":
        pts = tuple((float(p), float(r)) for p, r in points)
        if not pts:
            raise ValidationError("sweep produced no points")
        params = [p for p, _ in pts]
        if any(b <= a for a, b in zip(params, params[1:])):
            raise ValidationError("sweep parameters must be strictly ascending")
        best = max(pts, key=lambda pr: pr[1])  # first maximum wins ties
        return cls(parameter_name=parameter_name, points=pts, argmax=best)

    def to_csv(self, dest: Union[str, Path, IO[str]]) -> None:
        """Write ``parameter,correlation`` rows at full float precision."""
        if isinstance(dest, (str, Path)):
            with open(dest, "w", encoding="utf-8", newline="") as fh:
                self.to_csv(fh)
            return
        writer = csv.writer(dest, lineterminator="\n")
        writer.writerow(["parameter", "correlation"])
        for p, r in self.points:
            writer.writerow([repr(p), repr(r)])

    def to_json(self) -> dict:
        return {
            "parameter_name": self.parameter_name,
            "points": [[p, r] for p, r in self.points],
            "argmax": {"parameter": self.argmax[0], "correlation": self.argmax[1]},
        }

    def to_text(self) -> str:
        lines = [f"{'parameter':>12}  {'correlation':>12}"]
        for p, r in self.points:
            lines.append(f"{p:>12.6g}  {r:>12.6g}")
        lines.append(
            f"best: {self.parameter_name}={self.argmax[0]:.6g} "
            f"with correlation {self.argmax[1]:.6g}"
        )
        return "\n".join(lines) + "\n"


def default_d_grid() -> list[float]:
    """Scale grid 0.5, 1.0, ..., 40.0 used by the soft-cap sweep."""
    return [k * 0.5 for k in range(1, 81)]


def default_exp_grid() -> list[float]:
    """Exponent grid 0.5, 0.55, ..., 5.0 used by the Pythagorean sweep."""
    return [round(0.5 + 0.05 * k, 10) for k in range(91)]


def sweep_cap(
    seasons: Sequence[TeamSeason], cap_min: int = 1, cap_max: int = 40
) -> SweepResult:
    """Correlation of the hard-capped point-differential at each integer cap."""
    if int(cap_min) != cap_min or int(cap_max) != cap_max:
        raise ValidationError("cap bounds must be integers")
    cap_min, cap_max = int(cap_min), int(cap_max)
    if cap_min < 1 or cap_min > cap_max:
        raise ValidationError(
            f"need 1 <= cap_min <= cap_max, got {cap_min}..{cap_max}"
        )
    panel = _build_panel(seasons)
    points = []
    for cap in range(cap_min, cap_max + 1):
        values = _weighted_means(panel, HardCap(cap))
        points.append((float(cap), pearson(values, panel.targets)))
    return SweepResult.from_points("cap", points)


def sweep_softcap(
    seasons: Sequence[TeamSeason],
    kind: str,
    d_values: Sequence[float] | None = None,
) -> SweepResult:
    """Correlation of one soft-cap weighting at each scale D."""
    if kind not in SOFT_CAP_KINDS:
        raise ValidationError(
            f"unknown soft cap kind {kind!r}; expected one of {sorted(SOFT_CAP_KINDS)}"
        )
    if d_values is None:
        d_values = default_d_grid()
    ds = [float(d) for d in d_values]
    if not ds:
        raise ValidationError("d_values must be nonempty")
    panel = _build_panel(seasons)
    points = []
    for d in ds:
        values = _weighted_means(panel, soft_cap(kind, d))
        points.append((d, pearson(values, panel.targets)))
    points.sort(key=lambda pr: pr[0])
    return SweepResult.from_points("d", points)


def sweep_pythagorean(
    seasons: Sequence[TeamSeason], exp_values: Sequence[float] | None = None
) -> SweepResult:
    """Correlation of the Pythagorean winning percentage at each exponent."""
    if exp_values is None:
        exp_values = default_exp_grid()
    exps = [float(e) for e in exp_values]
    if not exps:
        raise ValidationError("exp_values must be nonempty")
    for e in exps:
        if not np.isfinite(e) or e <= 0:
            raise ValidationError(f"exponent must be positive and finite, got {e!r}")
    panel = _build_panel(seasons)
    scored = panel.scored.astype(float)
    allowed = panel.allowed.astype(float)
    if np.any(scored == 0) or np.any(allowed == 0):
        raise ValidationError("zero first-half point totals are degenerate")
    points = []
    for e in exps:
        s = scored**e
        a = allowed**e
        points.append((e, pearson(s / (s + a), panel.targets)))
    points.sort(key=lambda pr: pr[0])
    return SweepResult.from_points("exp", points)


@dataclass(frozen=True)
class ReportRow:
    indicator: str
    parameter: float | None
    correlation: float | None
    error: str | None = None


@dataclass(frozen=True)
class IndicatorReport:
    """Summary comparison of every indicator at its best parameter."""

    rows: tuple[ReportRow, ...]

    def to_text(self) -> str:
        width = max(len(r.indicator) for r in self.rows)
        lines = [f"{'indicator':<{width}}  {'parameter':>10}  {'correlation':>12}"]
        lines.append("-" * len(lines[0]))
        for r in self.rows:
            param = f"{r.parameter:.6g}" if r.parameter is not None else "-"
            if r.correlation is not None:
                corr = f"{r.correlation:.6g}"
            else:
                corr = f"undefined ({r.error})"
            lines.append(f"{r.indicator:<{width}}  {param:>10}  {corr:>12}")
        return "\n".join(lines) + "\n"

    def to_csv(self, dest: Union[str, Path, IO[str]]) -> None:
        if isinstance(dest, (str, Path)):
            with open(dest, "w", encoding="utf-8", newline="") as fh:
                self.to_csv(fh)
            return
        writer = csv.writer(dest, lineterminator="\n")
        writer.writerow(["indicator", "parameter", "correlation"])
        for r in self.rows:
            writer.writerow(
                [
                    r.indicator,
                    "" if r.parameter is None else repr(r.parameter),
                    "" if r.correlation is None else repr(r.correlation),
                ]
            )

    def to_json(self) -> dict:
        return {
            "rows": [
                {
                    "indicator": r.indicator,
                    "parameter": r.parameter,
                    "correlation": r.correlation,
                    "error": r.error,
                }
                for r in self.rows
            ]
        }


def table1_report(
    seasons: Sequence[TeamSeason],
    cap_range: tuple[int, int] = (1, 40),
    d_values: Sequence[float] | None = None,
    exp_values: Sequence[float] | None = None,
) -> IndicatorReport:
    """Compare all indicators, each parameterized one at its sweep argmax.

    An undefined correlation (constant indicator on degenerate data) is
    surfaced on its own row instead of aborting the whole report.
    """
    panel = _build_panel(seasons)
    rows: list[ReportRow] = []

    def add(indicator: str, compute: Callable[[], tuple[float | None, float]]) -> None:
        try:
            parameter, corr = compute()
        except UndefinedCorrelationError as exc:
            rows.append(ReportRow(indicator, None, None, str(exc)))
        else:
            rows.append(ReportRow(indicator, parameter, corr))

    def from_sweep(sweep: Callable[[], SweepResult]) -> tuple[float, float]:
        return sweep().argmax

    add("win-loss", lambda: (None, pearson(panel.wins / panel.counts, panel.targets)))
    add(
        "point-differential",
        lambda: (None, pearson(_weighted_means(panel, Identity()), panel.targets)),
    )
    add(
        "capped point-differential",
        lambda: from_sweep(lambda: sweep_cap(seasons, *cap_range)),
    )
    for kind, label in (
        ("tanh", "hyperbolic tangent"),
        ("erf", "error function"),
        ("exp", "exponential"),
    ):
        add(
            label,
            lambda k=kind: from_sweep(lambda: sweep_softcap(seasons, k, d_values)),
        )
    add(
        "pythagorean",
        lambda: from_sweep(lambda: sweep_pythagorean(seasons, exp_values)),
    )
    return IndicatorReport(rows=tuple(rows))


def write_json(payload: dict, dest: Union[str, Path, IO[str]]) -> None:
    """Serialize a report or sweep payload deterministically."""
    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8", newline="") as fh:
            write_json(payload, fh)
        return
    json.dump(payload, dest, indent=2)
    dest.write("\n")
