"""Odd weighting functions over single-game point margins.

Every analytic kind satisfies w(-x) = -w(x).  The three soft caps (tanh,
erf, exponential) are bounded by -1 and 1 and controlled by a scale D:
near-linear for |margin| well below D, saturating well above it.  A
learned 81-entry lookup table covers margins -40..+40.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Union

import numpy as np
from scipy.special import erf as _erf

from .errors import ParseError, ValidationError

MARGIN_MIN = -40
MARGIN_MAX = 40
N_BINS = MARGIN_MAX - MARGIN_MIN + 1


def margin_bin(pm: int) -> int:
    """Bin index for a margin; out-of-range margins clamp to the edge bins."""
    return int(np.clip(pm, MARGIN_MIN, MARGIN_MAX)) - MARGIN_MIN


@dataclass(frozen=True)
class WeightVector:
    """81 per-margin weights, index 0 for margin -40 up to index 80 for +40."""

    weights: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.weights, dtype=float)
        if arr.shape != (N_BINS,):
            raise ValidationError(
                f"weight vector must have exactly {N_BINS} entries, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValidationError("weight vector entries must all be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "weights", arr)

    @staticmethod
    def margin_of(index: int) -> int:
        return index + MARGIN_MIN

    def to_csv(self, dest: Union[str, Path, IO[str]]) -> None:
        """Write ``margin,weight`` rows for margins -40..+40 ascending."""
        if isinstance(dest, (str, Path)):
            with open(dest, "w", encoding="utf-8", newline="") as fh:
                self.to_csv(fh)
            return
        writer = csv.writer(dest, lineterminator="\n")
        writer.writerow(["margin", "weight"])
        for i, w in enumerate(self.weights):
            writer.writerow([self.margin_of(i), repr(float(w))])

    @classmethod
    def from_csv(cls, source: Union[str, Path, IO[str], IO[bytes]]) -> "WeightVector":
        if isinstance(source, (str, Path)):
            with open(source, "r", encoding="utf-8", newline="") as fh:
                return cls.from_csv(fh)
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        rows = list(csv.reader(io.StringIO(data)))
        if not rows or [c.strip().lower() for c in rows[0]] != ["margin", "weight"]:
            raise ParseError("line 1: expected header margin,weight")
        if len(rows) != N_BINS + 1:
            raise ParseError(f"expected {N_BINS} weight rows, got {len(rows) - 1}")
        values = np.empty(N_BINS)
        for line_no, row in enumerate(rows[1:], start=2):
            if len(row) != 2:
                raise ParseError(f"line {line_no}: expected 2 columns, got {len(row)}")
            expected_margin = line_no - 2 + MARGIN_MIN
            try:
                margin = int(row[0])
                value = float(row[1])
            except ValueError as exc:
                raise ParseError(f"line {line_no}: {exc}") from exc
            if margin != expected_margin:
                raise ParseError(
                    f"line {line_no}: expected margin {expected_margin}, got {margin}"
                )
            values[line_no - 2] = value
        return cls(values)


def _apply(pm, fn):
    """Evaluate fn on pm as float64; scalars in, scalars out."""
    arr = np.asarray(pm, dtype=float)
    out = fn(arr)
    if arr.ndim == 0:
        return float(out)
    return out


class WeightFunction:
    """Callable mapping signed point margins to weights (scalar or array)."""

    name = ""

    def __call__(self, pm):
        raise NotImplementedError


@dataclass(frozen=True)
class Identity(WeightFunction):
    """w(pm) = pm.  Averaging this gives classic point-differential."""

    name = "identity"

    def __call__(self, pm):
        return _apply(pm, lambda x: x)


@dataclass(frozen=True)
class HardCap(WeightFunction):
    """w(pm) = clamp(pm, -cap, +cap)."""

    cap: int
    name = "hard_cap"

    def __post_init__(self) -> None:
        if int(self.cap) != self.cap or self.cap < 1:
            raise ValidationError(f"cap must be a positive integer, got {self.cap!r}")
        object.__setattr__(self, "cap", int(self.cap))

    def __call__(self, pm):
        return _apply(pm, lambda x: np.clip(x, -self.cap, self.cap))


def _check_scale(d) -> float:
    d = float(d)
    if not np.isfinite(d) or d <= 0:
        raise ValidationError(f"scale D must be positive and finite, got {d!r}")
    return d


@dataclass(frozen=True)
class Tanh(WeightFunction):
    """w(pm) = tanh(pm / D)."""

    d: float
    name = "tanh"

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", _check_scale(self.d))

    def __call__(self, pm):
        return _apply(pm, lambda x: np.tanh(x / self.d))


@dataclass(frozen=True)
class Erf(WeightFunction):
    """w(pm) = erf(pm / D).

    The symmetric Gaussian integral from -pm/D to +pm/D with a 1/sqrt(pi)
    prefactor collapses to the standard error function, evaluated here via
    SciPy's Cephes rational approximations (double-precision accurate).
    """

    d: float
    name = "erf"

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", _check_scale(self.d))

    def __call__(self, pm):
        return _apply(pm, lambda x: _erf(x / self.d))


@dataclass(frozen=True)
class Exp(WeightFunction):
    """w(pm) = sign(pm) * (1 - e^(-|pm| / D)), with sign(0) = 0.

    Uses expm1 so the near-linear small-|pm|/D regime keeps full relative
    precision.
    """

    d: float
    name = "exp"

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", _check_scale(self.d))

    def __call__(self, pm):
        return _apply(pm, lambda x: np.sign(x) * -np.expm1(-np.abs(x) / self.d))


@dataclass(frozen=True)
class Lookup(WeightFunction):
    """Weights read from a learned table; margins beyond +-40 clamp to the edges."""

    table: WeightVector
    name = "lookup"

    def __call__(self, pm):
        arr = np.asarray(pm)
        idx = np.clip(arr, MARGIN_MIN, MARGIN_MAX).astype(np.int64) - MARGIN_MIN
        out = self.table.weights[idx]
        if arr.ndim == 0:
            return float(out)
        return out


SOFT_CAP_KINDS = {"tanh": Tanh, "erf": Erf, "exp": Exp}


def soft_cap(kind: str, d: float) -> WeightFunction:
    """Construct one of the bounded soft-cap weightings by name."""
    if kind not in SOFT_CAP_KINDS:
        raise ValidationError(
            f"unknown soft cap kind {kind!r}; expected one of {sorted(SOFT_CAP_KINDS)}"
        )
    return SOFT_CAP_KINDS[kind](d)
