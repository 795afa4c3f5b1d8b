"""Rank-ordered data: values sorted in decreasing order, ranked 1..n."""

import math
import typing as t

import attr
import numpy as np

from .exc import EmptySeriesError, ValidationError


class Entry(t.NamedTuple):
    rank: int
    value: float
    label: t.Optional[str] = None


def _as_floats(values) -> t.Tuple[float, ...]:
    return tuple(float(value) for value in values)


def _as_labels(labels) -> t.Tuple[t.Optional[str], ...]:
    return tuple(labels) if labels is not None else ()


@attr.s(frozen=True, slots=True, repr=False)
class RankedSeries:
    """A finite, positive, non-increasing sequence of values.

    The value at index ``i`` has rank ``i + 1``; ranks therefore run over
    ``1..n`` without gaps or duplicates by construction.
    """

    values: t.Tuple[float, ...] = attr.ib(converter=_as_floats)
    labels: t.Tuple[t.Optional[str], ...] = attr.ib(
        default=None, converter=_as_labels
    )

    @values.validator
    def _check_values(self, attribute, values):
        if not values:
            raise EmptySeriesError("A ranked series needs at least one value")
        previous = math.inf
        for rank, value in enumerate(values, 1):
            if not math.isfinite(value) or value <= 0:
                raise ValidationError(
                    f"Value at rank {rank} must be positive and finite: {value}"
                )
            if value > previous:
                raise ValidationError(
                    f"Values must be non-increasing: rank {rank} holds {value}"
                    f" after {previous}"
                )
            previous = value

    @labels.validator
    def _check_labels(self, attribute, labels):
        if labels and len(labels) != len(self.values):
            raise ValidationError(
                f"Got {len(labels)} labels for {len(self.values)} values"
            )

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self):
        return len(self.values)

    def __repr__(self):
        return f"<RankedSeries n={self.n} max={self.values[0]} min={self.values[-1]}>"

    @property
    def ranks(self) -> np.ndarray:
        return np.arange(1, self.n + 1, dtype=float)

    @property
    def array(self) -> np.ndarray:
        array = np.array(self.values, dtype=float)
        array.flags.writeable = False
        return array

    @property
    def log_values(self) -> np.ndarray:
        return np.log(self.array)

    def label(self, rank: int) -> t.Optional[str]:
        return self.labels[rank - 1] if self.labels else None

    @property
    def entries(self) -> t.Iterator[Entry]:
        for rank, value in enumerate(self.values, 1):
            yield Entry(rank, value, self.label(rank))

    def head(self, m: int) -> "RankedSeries":
        """The top `m` ranks."""
        return RankedSeries(self.values[:m], self.labels[:m] or None)

    def scaled(self, factor: float) -> "RankedSeries":
        return RankedSeries(
            [value * factor for value in self.values], self.labels or None
        )

    def summary(self) -> t.Dict[str, t.Any]:
        return {"n": self.n, "max": self.values[0], "min": self.values[-1]}
