"""Weighted point-differential indicators of NBA team strength.

First-half-season indicators (capped, soft-capped, Pythagorean, learned
per-margin weights) benchmarked by Pearson correlation against
second-half win-loss record.
"""

__version__ = "0.1.0"

from .errors import (
    DegenerateSeasonError,
    DivergenceError,
    IntegrityError,
    NumericError,
    ParseError,
    PointDiffError,
    SingularSystemError,
    UndefinedCorrelationError,
    ValidationError,
)
from .evaluation import (
    IndicatorReport,
    ReportRow,
    SweepResult,
    default_d_grid,
    default_exp_grid,
    evaluate_indicator,
    pearson,
    sweep_cap,
    sweep_pythagorean,
    sweep_softcap,
    table1_report,
)
from .gamedata import (
    GameResult,
    HalfSplit,
    TeamSeason,
    build_team_seasons,
    load_games,
    parse_game_level,
    parse_games,
    split_half,
    write_games,
)
from .indicators import (
    IndicatorValue,
    indicator_values,
    pythagorean,
    win_loss_indicator,
    wpd,
    write_indicator_csv,
)
from .regression import (
    DesignMatrix,
    FitResult,
    default_learning_rate,
    featurize,
    fit_margin_weights,
    learned_weights_indicator,
    ridge_closed_form,
    ridge_gd_fit,
    ridge_gradient,
    ridge_loss,
)
from .synth import SynthConfig, generate
from .weighting import (
    Erf,
    Exp,
    HardCap,
    Identity,
    Lookup,
    MARGIN_MAX,
    MARGIN_MIN,
    N_BINS,
    Tanh,
    WeightFunction,
    WeightVector,
    margin_bin,
    soft_cap,
)
