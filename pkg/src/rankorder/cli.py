"""Command line front end.

Exit codes: 0 success, 1 unreadable or invalid input, 2 fit failure,
64 invalid flags or parameters.
"""

import argparse
import math
import sys
import typing as t

import attr
import structlog

from . import __version__, disciplines, fit, generate, ingest, log, models
from .config import ConfigSource, FitConfig, IngestMode, IngestOptions, LogSection
from .exc import ParseError, RankOrderError, UsageError
from .report import ReportDocument
from .series import RankedSeries

logger = structlog.get_logger()

DEFAULTS = {
    "ingest": {"zero_policy": "drop"},
    "log": {"level": log.DEFAULT_LOGGING_LEVEL},
}

# printed parameters per model, scale factor first
SUMMARY_FIELDS = {
    models.ModelTag.ZIPF: (("K", "k"), ("alpha", "alpha")),
    models.ModelTag.MANDELBROT: (("rho", "rho"), ("epsilon", "epsilon")),
    models.ModelTag.LAVALETTE: (("K", "k"), ("b", "b")),
    models.ModelTag.BETA_LIKE: (("K", "k"), ("b", "b"), ("a", "a")),
}

DELIMITER_NAMES = {"tab": "\t", "\\t": "\t", "comma": ",", "semicolon": ";"}


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@attr.s(auto_attribs=True, frozen=True)
class Settings:
    ingest: IngestOptions
    fit: FitConfig
    log: LogSection

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "Settings":
        flags = {
            "ingest": {
                "delimiter": DELIMITER_NAMES.get(args.delimiter, args.delimiter),
                "zero_policy": args.zero_policy,
                "mode": IngestMode.PRE_RANKED.value if args.pre_ranked else None,
            },
            "log": {"level": args.log_level, "quiet": args.quiet},
        }
        source = ConfigSource(DEFAULTS)
        if args.config:
            source.merge(ConfigSource.from_file(args.config))
        source.merge(flags)
        return cls(
            ingest=source.load(IngestOptions),
            fit=source.load(FitConfig),
            log=source.load(LogSection),
        )


def _fmt(value: float) -> str:
    text = f"{value:.4f}"
    return "0.0000" if text == "-0.0000" else text


def _param_text(params: models.ModelParams) -> str:
    return "  ".join(
        f"{label}={_fmt(getattr(params, name))}"
        for label, name in SUMMARY_FIELDS[params.model]
    )


def summarize_fit(report: fit.FitReport) -> str:
    return f"{report.model}  {_param_text(report.params)}  R²={_fmt(report.r_squared)}"


def summarize_comparison(comparison: fit.ComparisonReport) -> str:
    rows = [("model", "params", "R²")]
    for report in comparison.reports:
        marker = " *" if report.model is comparison.best_by_r2 else ""
        rows.append(
            (
                f"{report.model}{marker}",
                _param_text(report.params),
                _fmt(report.r_squared),
            )
        )
    widths = [max(len(row[column]) for row in rows) for column in range(3)]
    lines = [
        "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
        for row in rows
    ]
    lines.append(f"nesting ok: {'yes' if comparison.nesting_ok else 'no'}")
    return "\n".join(lines)


def _read_input(path: str) -> bytes:
    try:
        with open(path, "rb") as handle:
            return handle.read()
    except OSError as ex:
        raise ParseError(f"Cannot read {path}: {ex.strerror}") from ex


def _load_series(
    path: str, settings: Settings
) -> t.Tuple[bytes, RankedSeries, t.List[str]]:
    data = _read_input(path)
    try:
        text = data.decode("utf-8-sig")
    except UnicodeDecodeError as ex:
        raise ParseError(f"{path} is not valid UTF-8: {ex}") from ex
    series, warnings = ingest.parse_csv(text, settings.ingest)
    return data, series, warnings


def _write(path: t.Optional[str], text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    except OSError as ex:
        raise UsageError(f"Cannot write {path}: {ex.strerror}") from ex
    logger.info("Wrote output", path=path, size=len(text))


def _echo(args: argparse.Namespace, settings: Settings, text: str):
    """Human readable output; it moves to stderr while stdout carries data."""
    if settings.log.quiet:
        return
    stream = sys.stderr if args.output in (None, "-") else sys.stdout
    print(text, file=stream)


def _series_csv(series: RankedSeries, fmt: t.Callable[[float], str] = repr) -> str:
    return "".join(f"{fmt(value)}\n" for value in series.values)


def cmd_fit(args: argparse.Namespace, settings: Settings) -> int:
    data, series, warnings = _load_series(args.input, settings)
    report = fit.fit(series, args.model, rho_tolerance=settings.fit.rho_tolerance)
    document = ReportDocument.create(
        data, series, report, [*warnings, *report.warnings]
    )
    _write(args.output, document.to_json())
    _echo(args, settings, summarize_fit(report))
    return 0


def cmd_compare(args: argparse.Namespace, settings: Settings) -> int:
    data, series, warnings = _load_series(args.input, settings)
    comparison = fit.compare_models(series, rho_tolerance=settings.fit.rho_tolerance)
    fit_warnings = [
        f"{report.model}: {warning}"
        for report in comparison.reports
        for warning in report.warnings
    ]
    document = ReportDocument.create(
        data, series, comparison, [*warnings, *fit_warnings]
    )
    _write(args.output, document.to_json())
    _echo(args, settings, summarize_comparison(comparison))
    return 0


def _model_from_args(args: argparse.Namespace) -> models.ModelParams:
    if args.n is None:
        raise UsageError("generate needs --n")
    if args.n < 1:
        raise UsageError(f"--n must be at least 1: {args.n}")
    if args.discipline:
        return disciplines.get(args.discipline).params(args.n)
    given = {
        name: getattr(args, name)
        for name in ("k", "a", "b", "alpha", "rho", "epsilon")
        if getattr(args, name) is not None
    }
    if args.model is not models.ModelTag.ZIPF:
        given["n"] = args.n
    return models.build(args.model, **given)


def cmd_generate(args: argparse.Namespace, settings: Settings) -> int:
    params = _model_from_args(args)
    noise = generate.NoiseSpec(sigma=args.sigma, seed=args.seed)
    series = generate.generate_synthetic(params, noise, n=args.n)
    _write(args.output, _series_csv(series))
    return 0


def cmd_simulate(args: argparse.Namespace, settings: Settings) -> int:
    config = generate.SimonConfig(p_new=args.p_new, steps=args.steps, seed=args.seed)
    series = generate.simulate_simon(config)
    _write(args.output, _series_csv(series, fmt=lambda value: str(int(value))))
    return 0


def cmd_plotdata(args: argparse.Namespace, settings: Settings) -> int:
    _, series, _ = _load_series(args.input, settings)
    report = fit.fit(series, args.model, rho_tolerance=settings.fit.rho_tolerance)
    fitted = models.tabulate(report.params, series.n)
    header = ["rank", "observed", "fitted", "log_residual"]
    if args.log:
        header += ["log_rank", "log_observed", "log_fitted"]
    lines = ["\t".join(header)]
    for (rank, observed, _), predicted, residual in zip(
        series.entries, fitted.tolist(), report.residuals
    ):
        row = [str(rank), repr(observed), repr(predicted), repr(residual)]
        if args.log:
            row += [
                repr(math.log(rank)),
                repr(math.log(observed)),
                repr(math.log(predicted)),
            ]
        lines.append("\t".join(row))
    _write(args.output, "\n".join(lines) + "\n")
    _echo(args, settings, summarize_fit(report))
    return 0


def cmd_disciplines(args: argparse.Namespace, settings: Settings) -> int:
    lines = ["field\tk\tb\ta\tR²"]
    for discipline in disciplines.DISCIPLINES:
        names = "/".join((discipline.name, *discipline.aliases))
        lines.append(
            f"{names}\t{discipline.k:.4f}\t{discipline.b:.4f}"
            f"\t{discipline.a:.4f}\t{discipline.r_squared:.4f}"
        )
    _write(args.output, "\n".join(lines) + "\n")
    return 0


def create_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--delimiter", help="input column delimiter (default ',')")
    common.add_argument(
        "--zero-policy",
        choices=[policy.value for policy in ingest.ZeroPolicy],
        help="what to do with non-positive values (default drop)",
    )
    common.add_argument(
        "--pre-ranked",
        action="store_true",
        default=None,
        help="input carries a rank column",
    )
    common.add_argument("-o", "--output", help="output file, '-' for stdout")
    common.add_argument(
        "-q", "--quiet", action="store_true", default=None, help="no diagnostics"
    )
    common.add_argument("--log-level", type=str.upper, choices=log.LOGGING_LEVEL_NAMES)
    common.add_argument("--config", help="TOML file with [ingest], [fit], [log]")

    parser = ArgumentParser(
        prog="rankorder",
        description="Fit rank-order laws to ranked data.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command_name", required=True)

    model_choices = [str(tag) for tag in models.CATALOG]

    cmd = commands.add_parser("fit", parents=[common], help="fit one law")
    cmd.add_argument("input")
    cmd.add_argument(
        "--model", type=models.ModelTag, choices=model_choices, default="beta-like"
    )
    cmd.set_defaults(command=cmd_fit)

    cmd = commands.add_parser(
        "compare", parents=[common], help="fit and compare all laws"
    )
    cmd.add_argument("input")
    cmd.set_defaults(command=cmd_compare)

    cmd = commands.add_parser("generate", parents=[common], help="synthetic series")
    cmd.add_argument(
        "--model", type=models.ModelTag, choices=model_choices, default="beta-like"
    )
    cmd.add_argument("--discipline", help="use the fitted parameters of a field")
    for name in ("k", "a", "b", "alpha", "rho", "epsilon"):
        cmd.add_argument(f"--{name}", type=float)
    cmd.add_argument("--n", type=int)
    cmd.add_argument("--sigma", type=float, default=0.0)
    cmd.add_argument("--seed", type=int, default=0)
    cmd.set_defaults(command=cmd_generate)

    cmd = commands.add_parser("simulate", parents=[common], help="Simon process")
    cmd.add_argument("--p-new", type=float, required=True)
    cmd.add_argument("--steps", type=int, required=True)
    cmd.add_argument("--seed", type=int, default=0)
    cmd.set_defaults(command=cmd_simulate)

    cmd = commands.add_parser("plotdata", parents=[common], help="observed vs fitted")
    cmd.add_argument("input")
    cmd.add_argument(
        "--model", type=models.ModelTag, choices=model_choices, default="beta-like"
    )
    cmd.add_argument("--log", action="store_true", help="add log-log columns")
    cmd.set_defaults(command=cmd_plotdata)

    cmd = commands.add_parser(
        "disciplines", parents=[common], help="list field presets"
    )
    cmd.set_defaults(command=cmd_disciplines)

    return parser


def main(argv: t.Optional[t.Sequence[str]] = None) -> int:
    # stderr logging before any flag is known; stdout carries data only
    log.setup_logging(level=log.DEFAULT_LOGGING_LEVEL)
    quiet = False
    try:
        args = create_parser().parse_args(argv)
        settings = Settings.from_args(args)
        quiet = settings.log.quiet
        log.setup_logging(level="ERROR" if quiet else settings.log.level)
        return args.command(args, settings)
    except RankOrderError as ex:
        if not quiet:
            print(f"rankorder: error: {ex}", file=sys.stderr)
        logger.debug("Command failed", error=str(ex), exit_code=ex.exit_code)
        return ex.exit_code


def run():
    sys.exit(main())
