"""Figure rendering for sweeps, reports, and fitted weights.

Renders to files only (Agg backend); the CLI writes these next to the
delimited output when asked to.
"""
from __future__ import annotations

from pathlib import Path
from typing import Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .evaluation import IndicatorReport, SweepResult
from .regression import FitResult
from .weighting import MARGIN_MAX, MARGIN_MIN

_AXIS_LABELS = {
    "cap": "cap (points)",
    "d": "scale D",
    "exp": "exponent",
}

_DPI = 150


def _save(fig, dest: Union[str, Path]) -> Path:
    dest = Path(dest)
    fig.savefig(dest, dpi=_DPI, metadata={"Software": None})
    plt.close(fig)
    return dest


def plot_sweep(sweep: SweepResult, dest: Union[str, Path], title: str | None = None) -> Path:
    """Line plot of correlation over the swept parameter, argmax marked."""
    params = [p for p, _ in sweep.points]
    corrs = [r for _, r in sweep.points]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(params, corrs, lw=1.5)
    ax.plot(*sweep.argmax, "o", color="crimson", ms=6)
    ax.annotate(
        f"{sweep.argmax[0]:.6g} -> {sweep.argmax[1]:.4f}",
        xy=sweep.argmax,
        xytext=(6, -12),
        textcoords="offset points",
        fontsize=9,
    )
    ax.set_xlabel(_AXIS_LABELS.get(sweep.parameter_name, sweep.parameter_name))
    ax.set_ylabel("correlation to second-half win fraction")
    if title:
        ax.set_title(title)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    return _save(fig, dest)


def plot_report(report: IndicatorReport, dest: Union[str, Path]) -> Path:
    """Horizontal bars comparing indicator correlations."""
    rows = [r for r in report.rows if r.correlation is not None]
    names = [r.indicator for r in rows]
    corrs = [r.correlation for r in rows]
    fig, ax = plt.subplots(figsize=(7, 0.6 * max(len(rows), 4) + 1.2))
    ypos = np.arange(len(rows))[::-1]
    ax.barh(ypos, corrs, color="steelblue")
    ax.set_yticks(ypos, labels=names)
    for y, c in zip(ypos, corrs):
        ax.text(c, y, f" {c:.4f}", va="center", fontsize=9)
    ax.set_xlabel("correlation to second-half win fraction")
    lo = min(corrs + [0.0])
    hi = max(corrs + [0.0])
    pad = 0.12 * max(hi - lo, 0.1)
    ax.set_xlim(min(lo, 0.0), hi + pad)
    ax.grid(axis="x", alpha=0.3)
    fig.tight_layout()
    return _save(fig, dest)


def plot_fit(fit: FitResult, dest: Union[str, Path]) -> Path:
    """Learned per-margin weights beside the descent correlation trace."""
    fig, (ax_w, ax_t) = plt.subplots(1, 2, figsize=(11, 4.2))
    margins = np.arange(MARGIN_MIN, MARGIN_MAX + 1)
    ax_w.plot(margins, fit.weights, ".-", ms=4, lw=0.9)
    ax_w.axhline(0.0, color="gray", lw=0.7)
    ax_w.axvline(0.0, color="gray", lw=0.7)
    ax_w.set_xlabel("point margin")
    ax_w.set_ylabel("weight")
    ax_w.set_title(f"learned weights (lambda={fit.ridge_lambda:g})")
    ax_w.grid(alpha=0.3)

    its = [i for i, _ in fit.trace]
    corrs = [r for _, r in fit.trace]
    ax_t.plot(its, corrs, lw=1.2)
    ax_t.set_xlabel("iteration")
    ax_t.set_ylabel("in-sample correlation")
    ax_t.set_title("descent trace")
    ax_t.grid(alpha=0.3)
    fig.tight_layout()
    return _save(fig, dest)
