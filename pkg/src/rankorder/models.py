"""Rank-order laws.

Every law is an immutable parameter set; :func:`evaluate` computes ``f(r)`` on
the integer lattice ``r = 1..n``.

============  ==================================  ==========
model         f(r)                                parameters
============  ==================================  ==========
zipf          K / r^alpha                         k, alpha
mandelbrot    ((N + rho) / (r + rho))^(1 + eps)   rho, epsilon, n
lavalette     K ((N + 1 - r) / r)^b               k, b, n
beta-like     K (N + 1 - r)^b / r^a               k, a, b, n
============  ==================================  ==========

Zipf is beta-like with ``b = 0`` and Lavalette is beta-like with ``a = b``.
The Mandelbrot law carries no scale factor.
"""

import enum
import functools
import math
import operator
import typing as t

import attr
import numpy as np

from .exc import DomainError, EmptySeriesError
from .series import RankedSeries


class ModelTag(str, enum.Enum):
    ZIPF = "zipf"
    MANDELBROT = "mandelbrot"
    LAVALETTE = "lavalette"
    BETA_LIKE = "beta-like"

    def __str__(self):
        return self.value


# catalog order, used to break ties between equally good models
CATALOG = (ModelTag.ZIPF, ModelTag.MANDELBROT, ModelTag.LAVALETTE, ModelTag.BETA_LIKE)


def _positive(instance, attribute, value):
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"{attribute.name} must be positive and finite: {value}")


def _finite(instance, attribute, value):
    if not math.isfinite(value):
        raise DomainError(f"{attribute.name} must be finite: {value}")


def _length(instance, attribute, value):
    if value < 1:
        raise DomainError(f"{attribute.name} must be at least 1: {value}")


def _offset(instance, attribute, value):
    if not (math.isfinite(value) and value > -1):
        raise DomainError(f"{attribute.name} must be finite and > -1: {value}")


def _count(value) -> int:
    try:
        return operator.index(value)
    except TypeError:
        raise DomainError(f"A series length must be an integer: {value!r}") from None


@attr.s(frozen=True, slots=True)
class ZipfParams:
    model: t.ClassVar[ModelTag] = ModelTag.ZIPF
    param_count: t.ClassVar[int] = 2

    k: float = attr.ib(converter=float, validator=_positive)
    alpha: float = attr.ib(converter=float, validator=_finite)


@attr.s(frozen=True, slots=True)
class MandelbrotParams:
    model: t.ClassVar[ModelTag] = ModelTag.MANDELBROT
    param_count: t.ClassVar[int] = 2

    rho: float = attr.ib(converter=float, validator=_offset)
    epsilon: float = attr.ib(converter=float, validator=_finite)
    n: int = attr.ib(converter=_count, validator=_length)


@attr.s(frozen=True, slots=True)
class LavaletteParams:
    model: t.ClassVar[ModelTag] = ModelTag.LAVALETTE
    param_count: t.ClassVar[int] = 2

    k: float = attr.ib(converter=float, validator=_positive)
    b: float = attr.ib(converter=float, validator=_finite)
    n: int = attr.ib(converter=_count, validator=_length)


@attr.s(frozen=True, slots=True)
class BetaLikeParams:
    model: t.ClassVar[ModelTag] = ModelTag.BETA_LIKE
    param_count: t.ClassVar[int] = 3

    k: float = attr.ib(converter=float, validator=_positive)
    a: float = attr.ib(converter=float, validator=_finite)
    b: float = attr.ib(converter=float, validator=_finite)
    n: int = attr.ib(converter=_count, validator=_length)


ModelParams = t.Union[ZipfParams, MandelbrotParams, LavaletteParams, BetaLikeParams]

MODEL_TYPES: t.Dict[ModelTag, t.Type] = {
    params_cls.model: params_cls
    for params_cls in (ZipfParams, MandelbrotParams, LavaletteParams, BetaLikeParams)
}


def build(model: t.Union[ModelTag, str], **kwargs) -> ModelParams:
    """Create the parameter set of `model` from keyword arguments."""
    params_cls = MODEL_TYPES[ModelTag(model)]
    names = {field.name for field in attr.fields(params_cls)}
    missing = names - kwargs.keys()
    if missing:
        raise DomainError(
            f"Model {ModelTag(model)} needs {', '.join(sorted(missing))}"
        )
    return params_cls(**{name: kwargs[name] for name in names})


def _check_rank(r, n: t.Optional[int]) -> int:
    try:
        rank = operator.index(r)
    except TypeError:
        raise DomainError(f"Rank must be an integer: {r!r}") from None
    if n is None:
        if rank < 1:
            raise DomainError(f"Rank must be >= 1: {rank}")
    elif not 1 <= rank <= n:
        raise DomainError(f"Rank must lie in 1..{n}: {rank}")
    return rank


def _checked(value: float, params) -> float:
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"{params.model} evaluates to {value}: {params}")
    return value


def _guarded(func):
    @functools.wraps(func)
    def wrapper(params, r) -> float:
        try:
            value = func(params, r)
        except (OverflowError, ZeroDivisionError) as ex:
            raise DomainError(
                f"{params.model} is not representable at rank {r}: {ex}"
            ) from ex
        return _checked(value, params)

    return wrapper


@functools.singledispatch
def evaluate(params, r) -> float:
    """The law's value at rank `r`."""
    raise TypeError(f"Unknown model parameters: {params!r}")


@evaluate.register(ZipfParams)
@_guarded
def _(params: ZipfParams, r) -> float:
    r = _check_rank(r, None)
    return params.k / r**params.alpha


@evaluate.register(MandelbrotParams)
@_guarded
def _(params: MandelbrotParams, r) -> float:
    r = _check_rank(r, params.n)
    return ((params.n + params.rho) / (r + params.rho)) ** (1 + params.epsilon)


@evaluate.register(LavaletteParams)
@_guarded
def _(params: LavaletteParams, r) -> float:
    r = _check_rank(r, params.n)
    # same expression ordering as beta-like with a == b
    return params.k * (params.n + 1 - r) ** params.b / r**params.b


@evaluate.register(BetaLikeParams)
@_guarded
def _(params: BetaLikeParams, r) -> float:
    r = _check_rank(r, params.n)
    return params.k * (params.n + 1 - r) ** params.b / r**params.a


def length(params: ModelParams, n: t.Optional[int] = None) -> int:
    """The series length implied by `params`, or `n` for Zipf."""
    own = getattr(params, "n", None)
    if own is None:
        if n is None:
            raise DomainError("Zipf needs an explicit series length")
        own = _count(n)
    elif n is not None and _count(n) != own:
        raise DomainError(f"Series length {n} does not match model length {own}")
    if own < 1:
        raise EmptySeriesError("A curve needs at least one rank")
    return own


def tabulate(params: ModelParams, n: t.Optional[int] = None) -> np.ndarray:
    """The law's values over ``r = 1..n`` as computed by :func:`evaluate`."""
    n = length(params, n)
    return np.array([evaluate(params, r) for r in range(1, n + 1)], dtype=float)


def curve(params: ModelParams, n: t.Optional[int] = None) -> RankedSeries:
    """Tabulate the law as a ranked series.

    The values are exactly those of :func:`evaluate`; a law that increases with
    rank anywhere does not yield a ranked series and raises :class:`DomainError`.
    """
    values = tabulate(params, n)
    increasing = np.flatnonzero(np.diff(values) > 0)
    if increasing.size:
        raise DomainError(
            f"{params.model} increases with rank"
            f" at r={int(increasing[0]) + 2}: {params}"
        )
    return RankedSeries(values)
