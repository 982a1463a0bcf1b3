"""Command-line entry point.

Subcommands cover ingestion checking, the three parameter sweeps, the
weight fit, the summary report, and synthetic data generation.  Runs are
deterministic: identical inputs and flags produce identical outputs.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import __version__
from .errors import EXIT_IO, PointDiffError, ValidationError
from .evaluation import (
    sweep_cap,
    sweep_pythagorean,
    sweep_softcap,
    table1_report,
    write_json,
)
from .gamedata import build_team_seasons, load_games, write_games
from .regression import OOB_CLAMP, OOB_DROP, fit_margin_weights
from .synth import SynthConfig, generate

EXIT_CODES_HELP = """\
exit codes:
  0  success
  2  validation error (bad parameters or malformed input)
  3  data integrity error (duplicate or missing game indices)
  4  numeric error (undefined correlation, divergence, singular system)
  5  I/O error
"""

_PLOT_AUTO = "__auto__"


def _load_seasons(path: str):
    return build_team_seasons(load_games(path))


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="")


def _grid(lo: float, hi: float, step: float, name: str) -> list[float]:
    if not (math.isfinite(lo) and math.isfinite(hi) and math.isfinite(step)):
        raise ValidationError(f"{name} grid bounds must be finite")
    if lo <= 0 or step <= 0 or hi < lo:
        raise ValidationError(
            f"{name} grid needs 0 < min <= max and step > 0, "
            f"got min={lo} max={hi} step={step}"
        )
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + i * step, 10) for i in range(n)]


def _plot_path(args) -> Path | None:
    if args.plot is None:
        return None
    if args.plot != _PLOT_AUTO:
        return Path(args.plot)
    if args.out is None:
        raise ValidationError("--plot without a path needs --out to derive one from")
    return Path(args.out).with_suffix(".png")


def _write_sweep(sweep, args) -> None:
    if args.format == "csv":
        if args.out is None:
            sweep.to_csv(sys.stdout)
        else:
            sweep.to_csv(args.out)
    elif args.format == "json":
        if args.out is None:
            write_json(sweep.to_json(), sys.stdout)
        else:
            write_json(sweep.to_json(), args.out)
    else:
        _emit(sweep.to_text(), args.out)
    plot = _plot_path(args)
    if plot is not None:
        from .plots import plot_sweep

        plot_sweep(sweep, plot)


def _cmd_ingest_check(args) -> None:
    games = load_games(args.input)
    seasons = build_team_seasons(games)
    years = sorted({s.season_year for s in seasons})
    summary = {
        "rows": len(games),
        "team_seasons": len(seasons),
        "teams": len({s.team_id for s in seasons}),
        "season_years": f"{years[0]}..{years[-1]}" if years else "",
        "games_min": min((s.n_games for s in seasons), default=0),
        "games_max": max((s.n_games for s in seasons), default=0),
        "max_abs_margin": max(
            (abs(g.margin) for s in seasons for g in s.games), default=0
        ),
    }
    if args.format == "json":
        if args.out is None:
            write_json(summary, sys.stdout)
        else:
            write_json(summary, args.out)
    else:
        width = max(len(k) for k in summary)
        lines = [f"{k:<{width}}  {v}" for k, v in summary.items()]
        _emit("\n".join(lines) + "\n", args.out)


def _cmd_sweep_cap(args) -> None:
    seasons = _load_seasons(args.input)
    _write_sweep(sweep_cap(seasons, args.cap_min, args.cap_max), args)


def _cmd_sweep_soft(args) -> None:
    seasons = _load_seasons(args.input)
    grid = _grid(args.d_min, args.d_max, args.d_step, "D")
    _write_sweep(sweep_softcap(seasons, args.fn, grid), args)


def _cmd_sweep_pyth(args) -> None:
    seasons = _load_seasons(args.input)
    grid = _grid(args.exp_min, args.exp_max, args.exp_step, "exponent")
    _write_sweep(sweep_pythagorean(seasons, grid), args)


def _cmd_fit_weights(args) -> None:
    seasons = _load_seasons(args.input)
    fit = fit_margin_weights(
        seasons,
        ridge_lambda=args.ridge_lambda,
        learning_rate=args.lr,
        iterations=args.iters,
        oob=args.oob,
    )
    if args.format == "json":
        if args.out is None:
            fit.save(sys.stdout)
        else:
            fit.save(args.out)
    elif args.format == "csv":
        if args.out is None:
            fit.weight_vector().to_csv(sys.stdout)
        else:
            fit.weight_vector().to_csv(args.out)
    else:
        text = (
            f"lambda         {fit.ridge_lambda:.6g}\n"
            f"learning rate  {fit.learning_rate:.6g}\n"
            f"iterations     {fit.iterations}\n"
            f"correlation    {fit.final_correlation:.6g} (in-sample)\n"
        )
        _emit(text, args.out)
    if args.weights_csv is not None:
        fit.weight_vector().to_csv(args.weights_csv)
    plot = _plot_path(args)
    if plot is not None:
        from .plots import plot_fit

        plot_fit(fit, plot)


def _cmd_table1(args) -> None:
    seasons = _load_seasons(args.input)
    report = table1_report(
        seasons,
        cap_range=(args.cap_min, args.cap_max),
        d_values=_grid(args.d_min, args.d_max, args.d_step, "D"),
        exp_values=_grid(args.exp_min, args.exp_max, args.exp_step, "exponent"),
    )
    if args.format == "csv":
        if args.out is None:
            report.to_csv(sys.stdout)
        else:
            report.to_csv(args.out)
    elif args.format == "json":
        if args.out is None:
            write_json(report.to_json(), sys.stdout)
        else:
            write_json(report.to_json(), args.out)
    else:
        _emit(report.to_text(), args.out)
    plot = _plot_path(args)
    if plot is not None:
        from .plots import plot_report

        plot_report(report, plot)


def _cmd_synth(args) -> None:
    cfg = SynthConfig(
        n_teams=args.teams,
        n_games=args.games,
        n_seasons=args.seasons,
        strength_spread=args.spread,
        noise_std=args.noise,
        seed=args.seed,
        start_year=args.start_year,
    )
    write_games(generate(cfg), args.out)


def _add_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--in", dest="input", required=True, metavar="CSV", help="input games CSV"
    )


def _add_output(parser: argparse.ArgumentParser, formats: tuple[str, ...]) -> None:
    parser.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    parser.add_argument(
        "--format",
        choices=formats,
        default=formats[0],
        help=f"output format (default: {formats[0]})",
    )


def _add_plot(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--plot",
        nargs="?",
        const=_PLOT_AUTO,
        metavar="PNG",
        help="also render a figure (default path: --out with a .png suffix)",
    )


def _add_cap_grid(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--cap-min", type=int, default=1, help="smallest cap (default 1)")
    parser.add_argument("--cap-max", type=int, default=40, help="largest cap (default 40)")


def _add_d_grid(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--d-min", type=float, default=0.5, help="smallest scale D (default 0.5)")
    parser.add_argument("--d-max", type=float, default=40.0, help="largest scale D (default 40)")
    parser.add_argument("--d-step", type=float, default=0.5, help="scale D step (default 0.5)")


def _add_exp_grid(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--exp-min", type=float, default=0.5, help="smallest exponent (default 0.5)")
    parser.add_argument("--exp-max", type=float, default=5.0, help="largest exponent (default 5)")
    parser.add_argument("--exp-step", type=float, default=0.05, help="exponent step (default 0.05)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pointdiff",
        description=(
            "Weighted point-differential indicators of team strength: "
            "first-half indicators benchmarked against second-half win-loss record."
        ),
        epilog=EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(
            name,
            help=help_text,
            epilog=EXIT_CODES_HELP,
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )

    p = command("ingest-check", "parse and validate a games CSV, print a summary")
    _add_input(p)
    _add_output(p, ("text", "json"))
    p.set_defaults(func=_cmd_ingest_check)

    p = command("sweep-cap", "correlation of capped point-differential over cap values")
    _add_input(p)
    _add_cap_grid(p)
    _add_output(p, ("csv", "json", "text"))
    _add_plot(p)
    p.set_defaults(func=_cmd_sweep_cap)

    p = command("sweep-soft", "correlation of one soft-cap weighting over scale D")
    _add_input(p)
    p.add_argument(
        "--fn", choices=("tanh", "erf", "exp"), required=True, help="soft-cap kind"
    )
    _add_d_grid(p)
    _add_output(p, ("csv", "json", "text"))
    _add_plot(p)
    p.set_defaults(func=_cmd_sweep_soft)

    p = command("sweep-pyth", "correlation of Pythagorean winning percentage over exponents")
    _add_input(p)
    _add_exp_grid(p)
    _add_output(p, ("csv", "json", "text"))
    _add_plot(p)
    p.set_defaults(func=_cmd_sweep_pyth)

    p = command("fit-weights", "fit per-margin weights by ridge gradient descent")
    _add_input(p)
    p.add_argument(
        "--lambda",
        dest="ridge_lambda",
        type=float,
        default=1.0,
        help="ridge penalty (default 1.0)",
    )
    p.add_argument(
        "--lr",
        type=float,
        default=None,
        help="learning rate (default: 1 / (trace(X^T X) + lambda * 81))",
    )
    p.add_argument(
        "--iters", type=int, default=50_000, help="max iterations (default 50000)"
    )
    p.add_argument(
        "--oob",
        choices=(OOB_CLAMP, OOB_DROP),
        default=OOB_CLAMP,
        help="margins beyond +-40: clamp into edge bins or drop (default clamp)",
    )
    p.add_argument(
        "--weights-csv",
        metavar="PATH",
        help="also write the fitted weights as margin,weight CSV",
    )
    _add_output(p, ("json", "csv", "text"))
    _add_plot(p)
    p.set_defaults(func=_cmd_fit_weights)

    p = command("table1", "summary report comparing every indicator at its best parameter")
    _add_input(p)
    _add_cap_grid(p)
    _add_d_grid(p)
    _add_exp_grid(p)
    _add_output(p, ("text", "csv", "json"))
    _add_plot(p)
    p.set_defaults(func=_cmd_table1)

    p = command("synth", "generate a deterministic synthetic games CSV")
    p.add_argument("--seed", type=int, required=True, help="RNG seed")
    p.add_argument("--teams", type=int, required=True, help="teams per season (even)")
    p.add_argument("--games", type=int, required=True, help="games per team-season")
    p.add_argument("--seasons", type=int, required=True, help="number of seasons")
    p.add_argument(
        "--spread",
        type=float,
        default=6.0,
        help="std of latent team strength in margin points (default 6)",
    )
    p.add_argument(
        "--noise", type=float, default=12.0, help="per-game margin noise std (default 12)"
    )
    p.add_argument(
        "--start-year", type=int, default=1970, help="first season year (default 1970)"
    )
    p.add_argument("--out", required=True, metavar="PATH", help="output games CSV")
    p.set_defaults(func=_cmd_synth)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except PointDiffError as exc:
        kind = {2: "validation", 3: "integrity", 4: "numeric", 5: "io"}.get(
            exc.exit_code, "error"
        )
        message = str(exc).replace("\n", "; ")
        print(f"error: {kind}: {message}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
