"""Least-squares fits of the rank-order laws on the logarithmic scale.

The three laws with a scale factor are linear in their parameters after taking
logs and are solved exactly by ordinary least squares:

- zipf:       log f = log K - alpha log r
- lavalette:  log f = log K + b log((N + 1 - r) / r)
- beta-like:  log f = log K + b log(N + 1 - r) - a log r

The Mandelbrot law has no scale factor; for a fixed offset rho the exponent
``1 + epsilon`` is a regression slope through the origin, and rho itself is found
by golden-section search on the profiled error. Natural logarithms throughout.
"""

import asyncio
import contextlib
import typing as t

import attr
import numpy as np
import structlog

from . import linalg
from .exc import DomainError, FitError, FitFailure, InsufficientDataError
from .models import (
    CATALOG,
    BetaLikeParams,
    LavaletteParams,
    MandelbrotParams,
    ModelParams,
    ModelTag,
    ZipfParams,
    tabulate,
)
from .series import RankedSeries

logger = structlog.get_logger()

# sum of squares below which constant data counts as reproduced
ZERO_SSE = 1e-20
NESTING_TOLERANCE = 1e-9
# R² values equal to this many decimals compare as ties
TIE_DIGITS = 12
RHO_LOWER = -0.99
RHO_TOLERANCE = 1e-6


@attr.s(auto_attribs=True, frozen=True, kw_only=True)
class FitReport:
    model: ModelTag
    params: ModelParams
    r_squared: float
    log_sse: float
    residuals: t.Tuple[float, ...]
    n: int
    warnings: t.Tuple[str, ...] = ()


@attr.s(auto_attribs=True, frozen=True, kw_only=True)
class ComparisonReport:
    reports: t.Tuple[FitReport, ...]
    best_by_r2: ModelTag
    nesting_ok: bool

    def __getitem__(self, model) -> FitReport:
        model = ModelTag(model)
        for report in self.reports:
            if report.model is model:
                return report
        raise KeyError(model)


def _require(series: RankedSeries, minimum: int, model: ModelTag):
    if series.n < minimum:
        raise InsufficientDataError(
            f"{model} needs at least {minimum} values, got {series.n}"
        )


def _r_squared(log_observed: np.ndarray, log_fitted: np.ndarray) -> float:
    residuals = log_observed - log_fitted
    sse = float(np.dot(residuals, residuals))
    centered = log_observed - log_observed.mean()
    sst = float(np.dot(centered, centered))
    if sst == 0.0:
        return 1.0 if sse <= ZERO_SSE else 0.0
    return 1.0 - sse / sst


def r_squared_log(observed: RankedSeries, fitted: ModelParams) -> float:
    """Coefficient of determination of `fitted` against `observed` in log space.

    Constant data has no variance; it scores 1 when the model reproduces it and
    0 otherwise.
    """
    return _r_squared(observed.log_values, np.log(tabulate(fitted, observed.n)))


def _report(series: RankedSeries, params: ModelParams, warnings=()) -> FitReport:
    log_observed = series.log_values
    try:
        log_fitted = np.log(tabulate(params, series.n))
    except DomainError as ex:
        raise FitFailure(f"Fitted {params.model} law is not evaluable: {ex}") from ex
    residuals = log_observed - log_fitted
    report = FitReport(
        model=params.model,
        params=params,
        r_squared=_r_squared(log_observed, log_fitted),
        log_sse=float(np.dot(residuals, residuals)),
        residuals=tuple(residuals.tolist()),
        n=series.n,
        warnings=tuple(warnings),
    )
    logger.debug("Fitted", model=str(report.model), n=report.n, r2=report.r_squared)
    return report


@contextlib.contextmanager
def _fitted(model: ModelTag):
    try:
        yield
    except DomainError as ex:
        raise FitFailure(f"Fitted {model} parameters are not valid: {ex}") from ex


def _log_ranks(n: int) -> t.Tuple[np.ndarray, np.ndarray]:
    ranks = np.arange(1, n + 1, dtype=float)
    return np.log(ranks), np.log(n + 1 - ranks)


def beta_like_design(n: int) -> np.ndarray:
    """Regressor columns ``log(N + 1 - r)`` and ``-log r``."""
    log_r, log_reflected = _log_ranks(n)
    return np.column_stack((log_reflected, -log_r))


def fit_zipf(series: RankedSeries) -> FitReport:
    _require(series, 3, ModelTag.ZIPF)
    log_r, _ = _log_ranks(series.n)
    solution = linalg.least_squares(-log_r, series.log_values)
    with _fitted(ModelTag.ZIPF):
        params = ZipfParams(k=np.exp(solution.intercept), alpha=solution.coef[0])
    return _report(series, params)


def fit_lavalette(series: RankedSeries) -> FitReport:
    _require(series, 3, ModelTag.LAVALETTE)
    log_r, log_reflected = _log_ranks(series.n)
    solution = linalg.least_squares(log_reflected - log_r, series.log_values)
    with _fitted(ModelTag.LAVALETTE):
        params = LavaletteParams(
            k=np.exp(solution.intercept), b=solution.coef[0], n=series.n
        )
    return _report(series, params)


def fit_beta_like(series: RankedSeries) -> FitReport:
    # three coefficients need at least one residual degree of freedom
    _require(series, 4, ModelTag.BETA_LIKE)
    solution = linalg.least_squares(beta_like_design(series.n), series.log_values)
    b, a = solution.coef
    with _fitted(ModelTag.BETA_LIKE):
        params = BetaLikeParams(
            k=np.exp(solution.intercept), a=a, b=b, n=series.n
        )
    return _report(series, params)


def _profile_mandelbrot(log_values: np.ndarray):
    n = log_values.size
    ranks = np.arange(1, n + 1, dtype=float)

    def regressor(rho: float) -> np.ndarray:
        return np.log(n + rho) - np.log(ranks + rho)

    def slope(rho: float) -> float:
        x = regressor(rho)
        return float(np.dot(x, log_values) / np.dot(x, x))

    def sse(rho: float) -> float:
        residuals = log_values - slope(rho) * regressor(rho)
        return float(np.dot(residuals, residuals))

    return slope, sse


def fit_mandelbrot(
    series: RankedSeries, *, rho_tolerance: float = RHO_TOLERANCE
) -> FitReport:
    """Fit the Mandelbrot law; rho is searched on ``[-0.99, 10 N]``."""
    _require(series, 3, ModelTag.MANDELBROT)
    slope, sse = _profile_mandelbrot(series.log_values)
    rho_upper = 10.0 * series.n
    minimum = linalg.golden_section(
        sse, RHO_LOWER, rho_upper, tol=rho_tolerance, probes=(0.0,)
    )
    warnings = []
    if minimum.at_edge:
        logger.warning("Mandelbrot optimum at search bracket edge", rho=minimum.x)
        warnings.append(
            f"rho optimum {minimum.x:g} lies at the search bracket edge"
            f" [{RHO_LOWER}, {rho_upper:g}]"
        )
    with _fitted(ModelTag.MANDELBROT):
        params = MandelbrotParams(
            rho=minimum.x, epsilon=slope(minimum.x) - 1.0, n=series.n
        )
    return _report(series, params, warnings)


FITTERS: t.Dict[ModelTag, t.Callable[[RankedSeries], FitReport]] = {
    ModelTag.ZIPF: fit_zipf,
    ModelTag.MANDELBROT: fit_mandelbrot,
    ModelTag.LAVALETTE: fit_lavalette,
    ModelTag.BETA_LIKE: fit_beta_like,
}


def fit(
    series: RankedSeries,
    model: t.Union[ModelTag, str],
    *,
    rho_tolerance: float = RHO_TOLERANCE,
) -> FitReport:
    model = ModelTag(model)
    try:
        if model is ModelTag.MANDELBROT:
            return fit_mandelbrot(series, rho_tolerance=rho_tolerance)
        return FITTERS[model](series)
    except FitError as ex:
        ex.model = str(model)
        ex.add_note(f"while fitting {model}")
        raise


def _tie_break_key(report: FitReport):
    # higher R² first, then fewer parameters, then catalog order
    return (
        round(report.r_squared, TIE_DIGITS),
        -report.params.param_count,
        -CATALOG.index(report.model),
    )


def _comparison(reports: t.Sequence[FitReport]) -> ComparisonReport:
    by_model = {report.model: report for report in reports}
    richest = by_model[ModelTag.BETA_LIKE].log_sse
    nesting_ok = all(
        richest <= by_model[nested].log_sse + NESTING_TOLERANCE
        for nested in (ModelTag.ZIPF, ModelTag.LAVALETTE)
    )
    if not nesting_ok:
        logger.warning("Beta-like fit is worse than a nested model", sse=richest)
    best = max(reports, key=_tie_break_key)
    return ComparisonReport(
        reports=tuple(reports), best_by_r2=best.model, nesting_ok=nesting_ok
    )


def compare_models(
    series: RankedSeries, *, rho_tolerance: float = RHO_TOLERANCE
) -> ComparisonReport:
    """Fit all four laws and pick the best one by log-space R²."""
    _require(series, 4, ModelTag.BETA_LIKE)
    reports = [fit(series, model, rho_tolerance=rho_tolerance) for model in CATALOG]
    return _comparison(reports)


async def acompare_models(
    series: RankedSeries, *, rho_tolerance: float = RHO_TOLERANCE
) -> ComparisonReport:
    """Like :func:`compare_models`, with the four fits running in worker threads."""
    _require(series, 4, ModelTag.BETA_LIKE)
    reports = await asyncio.gather(
        *(
            asyncio.to_thread(fit, series, model, rho_tolerance=rho_tolerance)
            for model in CATALOG
        )
    )
    return _comparison(reports)
