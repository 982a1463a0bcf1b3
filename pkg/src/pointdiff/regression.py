"""Margin-histogram featurization and ridge-penalized weight fitting.

The design matrix counts each team-season's first-half games per integer
margin bin (-40..+40).  Weights minimizing ||y - Xw||^2 + lambda*||w||^2
are fit by full-batch gradient descent; a direct normal-equations solve
serves as an independent cross-check.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Sequence, Union

import numpy as np

from .errors import (
    DivergenceError,
    NumericError,
    SingularSystemError,
    ValidationError,
)
from .evaluation import pearson
from .gamedata import TeamSeason, split_half
from .indicators import IndicatorValue, wpd
from .weighting import Lookup, MARGIN_MAX, MARGIN_MIN, N_BINS, WeightVector

OOB_CLAMP = "clamp"
OOB_DROP = "drop"

CONVERGENCE_RTOL = 1e-12
DIVERGENCE_PATIENCE = 5


@dataclass(frozen=True)
class DesignMatrix:
    """Nonnegative margin-bin counts, one row per team-season."""

    counts: np.ndarray
    row_keys: tuple[tuple[int, str], ...]

    def __post_init__(self) -> None:
        arr = np.array(self.counts, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != N_BINS:
            raise ValidationError(
                f"design matrix must be (rows, {N_BINS}), got {arr.shape}"
            )
        if np.any(arr < 0):
            raise ValidationError("design matrix counts must be nonnegative")
        if arr.shape[0] != len(self.row_keys):
            raise ValidationError("row_keys length must match the number of rows")
        arr.flags.writeable = False
        object.__setattr__(self, "counts", arr)
        object.__setattr__(self, "row_keys", tuple(self.row_keys))

    @property
    def n_rows(self) -> int:
        return self.counts.shape[0]


def featurize(
    seasons: Sequence[TeamSeason], oob: str = OOB_CLAMP
) -> tuple[DesignMatrix, np.ndarray]:
    """Bucket first-half margins into per-season bin counts plus targets.

    ``oob`` controls margins beyond +-40: ``clamp`` folds them into the
    edge bins (row sums stay equal to first-half game counts), ``drop``
    discards those games from the counts.
    """
    if oob not in (OOB_CLAMP, OOB_DROP):
        raise ValidationError(f"oob must be '{OOB_CLAMP}' or '{OOB_DROP}', got {oob!r}")
    counts = np.zeros((len(seasons), N_BINS), dtype=np.int64)
    targets = np.empty(len(seasons))
    keys = []
    for r, season in enumerate(seasons):
        half = split_half(season)
        margins = np.array([g.margin for g in half.first_half], dtype=np.int64)
        if oob == OOB_CLAMP:
            margins = np.clip(margins, MARGIN_MIN, MARGIN_MAX)
        else:
            margins = margins[(margins >= MARGIN_MIN) & (margins <= MARGIN_MAX)]
        counts[r] = np.bincount(margins - MARGIN_MIN, minlength=N_BINS)
        targets[r] = half.second_half_win_fraction
        keys.append(season.key)
    return DesignMatrix(counts=counts, row_keys=tuple(keys)), targets


def _as_matrix(X) -> np.ndarray:
    if isinstance(X, DesignMatrix):
        return X.counts.astype(float)
    arr = np.asarray(X, dtype=float)
    if arr.ndim != 2:
        raise ValidationError(f"X must be 2-D, got ndim={arr.ndim}")
    return arr


def ridge_loss(X, y, w, ridge_lambda: float) -> float:
    """||y - Xw||^2 + lambda * ||w||^2."""
    A = _as_matrix(X)
    resid = np.asarray(y, dtype=float) - A @ np.asarray(w, dtype=float)
    w = np.asarray(w, dtype=float)
    return float(resid @ resid + ridge_lambda * (w @ w))


def ridge_gradient(X, y, w, ridge_lambda: float) -> np.ndarray:
    """Gradient of the ridge loss: -2 X^T (y - Xw) + 2 lambda w."""
    A = _as_matrix(X)
    w = np.asarray(w, dtype=float)
    resid = np.asarray(y, dtype=float) - A @ w
    return -2.0 * (A.T @ resid) + 2.0 * ridge_lambda * w


def default_learning_rate(X, ridge_lambda: float) -> float:
    """1 / (trace(X^T X) + lambda * n_cols), a cheap safe step-size bound.

    trace(X^T X) bounds the largest eigenvalue of X^T X from above, so
    this step size keeps the quadratic loss non-increasing.
    """
    A = _as_matrix(X)
    return 1.0 / (float(np.sum(A * A)) + ridge_lambda * A.shape[1])


@dataclass(frozen=True)
class FitResult:
    """Fitted weights plus the correlation trace of the descent."""

    weights: np.ndarray
    trace: tuple[tuple[int, float], ...]
    ridge_lambda: float
    iterations: int
    learning_rate: float

    def __post_init__(self) -> None:
        arr = np.array(self.weights, dtype=float)
        arr.flags.writeable = False
        object.__setattr__(self, "weights", arr)
        object.__setattr__(
            self, "trace", tuple((int(i), float(r)) for i, r in self.trace)
        )

    @property
    def final_correlation(self) -> float:
        return self.trace[-1][1]

    def weight_vector(self) -> WeightVector:
        """The weights as an 81-entry margin lookup table."""
        if self.weights.shape != (N_BINS,):
            raise ValidationError(
                f"fit has {self.weights.shape[0]} weights, expected {N_BINS}"
            )
        return WeightVector(self.weights)

    def to_json(self) -> dict:
        return {
            "lambda": self.ridge_lambda,
            "learning_rate": self.learning_rate,
            "iterations": self.iterations,
            "weights": [float(w) for w in self.weights],
            "trace": [[i, r] for i, r in self.trace],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "FitResult":
        return cls(
            weights=np.array(payload["weights"], dtype=float),
            trace=tuple((int(i), float(r)) for i, r in payload["trace"]),
            ridge_lambda=float(payload["lambda"]),
            iterations=int(payload["iterations"]),
            learning_rate=float(payload["learning_rate"]),
        )

    def save(self, dest: Union[str, Path, IO[str]]) -> None:
        if isinstance(dest, (str, Path)):
            with open(dest, "w", encoding="utf-8", newline="") as fh:
                self.save(fh)
            return
        json.dump(self.to_json(), dest, indent=2)
        dest.write("\n")

    @classmethod
    def load(cls, source: Union[str, Path, IO[str]]) -> "FitResult":
        if isinstance(source, (str, Path)):
            with open(source, "r", encoding="utf-8") as fh:
                return cls.load(fh)
        return cls.from_json(json.load(source))


def ridge_gd_fit(
    X,
    y,
    ridge_lambda: float,
    learning_rate: float | None = None,
    iterations: int = 50_000,
    trace_every: int | None = None,
) -> FitResult:
    """Fit ridge weights by full-batch gradient descent from w = 0.

    Loss and in-sample correlation are checked every ``trace_every``
    iterations (default: about 200 checkpoints).  The descent stops early
    once the relative loss change between checkpoints falls below 1e-12,
    and aborts with a divergence error if the loss increases at several
    consecutive checkpoints.
    """
    A = _as_matrix(X)
    yv = np.asarray(y, dtype=float)
    if yv.ndim != 1 or yv.shape[0] != A.shape[0]:
        raise ValidationError(
            f"y must be a vector of length {A.shape[0]}, got shape {yv.shape}"
        )
    if A.shape[0] == 0:
        raise ValidationError("X must be nonempty")
    ridge_lambda = float(ridge_lambda)
    if not np.isfinite(ridge_lambda) or ridge_lambda < 0:
        raise ValidationError(f"lambda must be nonnegative, got {ridge_lambda!r}")
    iterations = int(iterations)
    if iterations < 1:
        raise ValidationError(f"iterations must be positive, got {iterations}")
    if learning_rate is None:
        learning_rate = default_learning_rate(A, ridge_lambda)
    learning_rate = float(learning_rate)
    if not np.isfinite(learning_rate) or learning_rate <= 0:
        raise ValidationError(f"learning_rate must be positive, got {learning_rate!r}")
    if trace_every is None:
        trace_every = max(1, iterations // 200)
    trace_every = int(trace_every)
    if trace_every < 1:
        raise ValidationError(f"trace_every must be positive, got {trace_every}")

    w = np.zeros(A.shape[1])
    trace: list[tuple[int, float]] = []
    last_loss = ridge_loss(A, yv, w, ridge_lambda)
    rising = 0
    it = 0
    # Overflow on a runaway step is an expected, detected condition below;
    # keep numpy from warning about it.
    with np.errstate(over="ignore", invalid="ignore"):
        for it in range(1, iterations + 1):
            resid = yv - A @ w
            grad = -2.0 * (A.T @ resid) + 2.0 * ridge_lambda * w
            w = w - learning_rate * grad
            if it % trace_every == 0 or it == iterations:
                if not np.all(np.isfinite(w)):
                    raise NumericError(
                        f"non-finite weights at iteration {it}; reduce learning_rate"
                    )
                loss = ridge_loss(A, yv, w, ridge_lambda)
                if loss > last_loss:
                    rising += 1
                    if rising >= DIVERGENCE_PATIENCE:
                        raise DivergenceError(
                            f"loss increased over {rising} consecutive checkpoints "
                            f"(iteration {it}); try a smaller learning_rate"
                        )
                else:
                    rising = 0
                trace.append((it, pearson(A @ w, yv)))
                denom = max(abs(last_loss), abs(loss), 1e-300)
                converged = abs(last_loss - loss) / denom < CONVERGENCE_RTOL
                last_loss = loss
                if converged:
                    break
    return FitResult(
        weights=w,
        trace=tuple(trace),
        ridge_lambda=ridge_lambda,
        iterations=it,
        learning_rate=learning_rate,
    )


def ridge_closed_form(X, y, ridge_lambda: float) -> np.ndarray:
    """Solve (X^T X + lambda I) w = X^T y with a direct dense solve."""
    A = _as_matrix(X)
    yv = np.asarray(y, dtype=float)
    if yv.ndim != 1 or yv.shape[0] != A.shape[0]:
        raise ValidationError(
            f"y must be a vector of length {A.shape[0]}, got shape {yv.shape}"
        )
    ridge_lambda = float(ridge_lambda)
    if not np.isfinite(ridge_lambda) or ridge_lambda < 0:
        raise ValidationError(f"lambda must be nonnegative, got {ridge_lambda!r}")
    gram = A.T @ A + ridge_lambda * np.eye(A.shape[1])
    try:
        return np.linalg.solve(gram, A.T @ yv)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(
            f"normal equations are singular at lambda={ridge_lambda}: {exc}"
        ) from exc


def fit_margin_weights(
    seasons: Sequence[TeamSeason],
    ridge_lambda: float = 1.0,
    learning_rate: float | None = None,
    iterations: int = 50_000,
    oob: str = OOB_CLAMP,
    trace_every: int | None = None,
) -> FitResult:
    """Featurize team-seasons and fit the 81-entry margin weight vector."""
    X, y = featurize(seasons, oob=oob)
    return ridge_gd_fit(
        X,
        y,
        ridge_lambda=ridge_lambda,
        learning_rate=learning_rate,
        iterations=iterations,
        trace_every=trace_every,
    )


def learned_weights_indicator(
    seasons: Sequence[TeamSeason], fit: FitResult
) -> list[IndicatorValue]:
    """Evaluate the fitted weight table as a per-season indicator."""
    lookup = Lookup(fit.weight_vector())
    return [
        IndicatorValue(s.season_year, s.team_id, wpd(s, lookup)) for s in seasons
    ]
