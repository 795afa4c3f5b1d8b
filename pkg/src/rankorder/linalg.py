"""Numerical kernels: linear least squares and one dimensional minimization."""

import math
import typing as t

import attr
import numpy as np

from .exc import FitFailure, SingularSystemError

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2


@attr.s(auto_attribs=True, frozen=True)
class LeastSquares:
    intercept: float
    coef: np.ndarray
    residuals: np.ndarray

    @property
    def sse(self) -> float:
        return float(np.dot(self.residuals, self.residuals))


def least_squares(design: np.ndarray, y: np.ndarray) -> LeastSquares:
    """Ordinary least squares of `y` on the columns of `design` plus an intercept.

    Columns and response are centered before a QR factorization; the intercept
    is recovered from the means afterwards.
    """
    design = np.asarray(design, dtype=float)
    if design.ndim == 1:
        design = design[:, np.newaxis]
    y = np.asarray(y, dtype=float)
    n, p = design.shape
    if n <= p:
        raise SingularSystemError(
            f"{n} observations cannot determine {p + 1} coefficients"
        )

    x_mean = design.mean(axis=0)
    y_mean = y.mean()
    xc = design - x_mean
    yc = y - y_mean

    q, r = np.linalg.qr(xc)
    diag = np.abs(np.diag(r))
    scale = diag.max() if diag.size else 0.0
    if scale == 0.0 or np.any(diag <= n * np.finfo(float).eps * scale):
        raise SingularSystemError("Design matrix is rank deficient")

    coef = np.linalg.solve(r, q.T @ yc)
    intercept = float(y_mean - x_mean @ coef)
    residuals = yc - xc @ coef
    return LeastSquares(intercept=intercept, coef=coef, residuals=residuals)


class Minimum(t.NamedTuple):
    x: float
    fx: float
    at_edge: bool


def golden_section(
    f: t.Callable[[float], float],
    lower: float,
    upper: float,
    *,
    tol: float = 1e-6,
    probes: t.Sequence[float] = (),
) -> Minimum:
    """Golden-section search for the minimum of `f` on ``[lower, upper]``.

    `f` is assumed unimodal. The bracket ends and any extra `probes` are
    evaluated as well, so the result is never worse than those points.
    Non-finite function values count as +inf.
    """

    def fx(x):
        value = f(x)
        return value if math.isfinite(value) else math.inf

    a, b = min(lower, upper), max(lower, upper)
    h = b - a
    # required steps to achieve tolerance
    steps = 0
    if h > tol:
        steps = max(int(math.ceil(math.log(tol / h) / math.log(INV_PHI))), 1)

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = fx(c)
    yd = fx(d)
    for _ in range(steps):
        if yc < yd:
            b, d, yd = d, c, yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = fx(c)
        else:
            a, c, yc = c, d, yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = fx(d)

    lower, upper = min(lower, upper), max(lower, upper)
    best_x = (a + b) / 2
    best_fx = fx(best_x)
    for candidate in (lower, upper, *probes):
        value = fx(candidate)
        if value < best_fx:
            best_x, best_fx = candidate, value

    if not math.isfinite(best_fx):
        raise FitFailure(f"No finite objective value within [{lower}, {upper}]")
    at_edge = best_x - lower <= tol or upper - best_x <= tol
    return Minimum(best_x, best_fx, at_edge)
