"""Synthetic ranked series.

Randomness comes from numpy's PCG64 bit generator, seeded explicitly per call;
nothing here touches a global random state.
"""

import typing as t

import attr
import numpy as np
import structlog

from . import ingest, models
from .exc import DomainError
from .series import RankedSeries

logger = structlog.get_logger()

UINT64_MAX = 2**64 - 1


def _seed(instance, attribute, value):
    if not 0 <= value <= UINT64_MAX:
        raise DomainError(
            f"{attribute.name} must be an unsigned 64 bit integer: {value}"
        )


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@attr.s(auto_attribs=True, frozen=True, kw_only=True)
class NoiseSpec:
    """Gaussian noise added to log-values, i.e. multiplicative lognormal noise."""

    sigma: float = attr.ib(default=0.0, converter=float)
    seed: int = attr.ib(default=0, validator=_seed)

    @sigma.validator
    def _check_sigma(self, attribute, value):
        if not value >= 0:
            raise DomainError(f"sigma must be >= 0: {value}")


@attr.s(auto_attribs=True, frozen=True, kw_only=True)
class SimonConfig:
    p_new: float = attr.ib(converter=float)
    steps: int = attr.ib()
    seed: int = attr.ib(default=0, validator=_seed)

    @p_new.validator
    def _check_p_new(self, attribute, value):
        if not 0 < value < 1:
            raise DomainError(f"p_new must lie in (0, 1): {value}")

    @steps.validator
    def _check_steps(self, attribute, value):
        if not (isinstance(value, int) and value >= 1):
            raise DomainError(f"steps must be a positive integer: {value}")


def generate_synthetic(
    params: models.ModelParams,
    noise: NoiseSpec = NoiseSpec(),
    *,
    n: t.Optional[int] = None,
) -> RankedSeries:
    """Tabulate `params` with lognormal noise, then re-rank.

    Noise can break monotonicity, so the noisy values are sorted again; with
    ``sigma == 0`` the result equals :func:`models.curve` for decreasing laws.
    """
    values = models.tabulate(params, n)
    if noise.sigma > 0:
        values = values * np.exp(_rng(noise.seed).normal(0.0, noise.sigma, values.size))
    return ingest.rank_raw(values.tolist())


def pick_proportional(
    owners: np.ndarray, total: int, uniform: float
) -> int:
    """The source owning a uniformly chosen past item.

    With ``owners[i]`` the source of item ``i``, this selects a source with
    probability proportional to its item count among the first `total` items.
    """
    return int(owners[int(uniform * total)])


def simulate_simon(config: SimonConfig) -> RankedSeries:
    """Run a Simon "rich gets richer" allocation and rank the source sizes.

    One source starts with one item. Each further step creates a new source with
    probability ``p_new`` or else awards the item to an existing source chosen in
    proportion to its current count.
    """
    rng = _rng(config.seed)
    steps = config.steps
    creates = rng.random(steps - 1) < config.p_new
    uniforms = rng.random(steps - 1)

    owners = np.empty(steps, dtype=np.int64)
    counts = [1]
    owners[0] = 0
    for item in range(1, steps):
        if creates[item - 1]:
            source = len(counts)
            counts.append(0)
        else:
            source = pick_proportional(owners, item, uniforms[item - 1])
        counts[source] += 1
        owners[item] = source

    logger.info(
        "Simulated Simon process",
        steps=steps,
        sources=len(counts),
        largest=max(counts),
        p_new=config.p_new,
    )
    return ingest.rank_raw(counts)
