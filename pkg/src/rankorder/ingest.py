"""Tabular input to ranked series.

Two schemas are understood, with an optional header row:

- raw values: ``value`` or ``label,value``; values are ranked here
- pre-ranked: ``rank,value`` or ``rank,label,value``; ranks must be a
  permutation of ``1..n``

A first row whose value cell is not numeric is taken as the header.
"""

import csv
import io
import math
import typing as t

import structlog

from .config import IngestMode, IngestOptions, ZeroPolicy
from .exc import EmptySeriesError, ParseError, ValidationError
from .series import RankedSeries

__all__ = [
    "IngestMode",
    "IngestOptions",
    "ZeroPolicy",
    "parse_csv",
    "rank_raw",
]

logger = structlog.get_logger()


class Row(t.NamedTuple):
    line: int
    rank: t.Optional[int]
    value: float
    label: t.Optional[str]


def rank_raw(
    values: t.Sequence[float], labels: t.Optional[t.Sequence[str]] = None
) -> RankedSeries:
    """Rank `values` in decreasing order.

    The sort is stable, so tied values keep their input order and receive
    distinct consecutive ranks.
    """
    values = [float(value) for value in values]
    if not values:
        raise EmptySeriesError("Nothing to rank")
    for position, value in enumerate(values, 1):
        if not (math.isfinite(value) and value > 0):
            raise ValidationError(
                f"Value #{position} must be positive and finite: {value}"
            )
    if labels is not None and len(labels) != len(values):
        raise ValidationError(f"Got {len(labels)} labels for {len(values)} values")

    order = sorted(range(len(values)), key=lambda index: -values[index])
    return RankedSeries(
        [values[index] for index in order],
        [labels[index] for index in order] if labels is not None else None,
    )


def _parse_value(cell: str, line: int) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise ParseError(f"Not a number: {cell!r}", line=line) from None
    if not math.isfinite(value):
        raise ValidationError(f"Value must be finite: {cell!r}", line=line)
    return value


def _parse_rank(cell: str, line: int) -> int:
    try:
        return int(cell)
    except ValueError:
        raise ParseError(f"Not a rank: {cell!r}", line=line) from None


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def _read_rows(text: str, options: IngestOptions) -> t.List[Row]:
    pre_ranked = options.mode is IngestMode.PRE_RANKED
    allowed = (2, 3) if pre_ranked else (1, 2)
    reader = csv.reader(io.StringIO(text), delimiter=options.delimiter)

    rows: t.List[Row] = []
    width = None
    for cells in reader:
        line = reader.line_num
        cells = [cell.strip() for cell in cells]
        if not any(cells):
            continue
        if width is None:
            if len(cells) not in allowed:
                raise ParseError(
                    f"Expected {' or '.join(map(str, allowed))} columns"
                    f" for {options.mode.value} input, got {len(cells)}",
                    line=line,
                )
            width = len(cells)
            if not _is_number(cells[-1]):
                logger.debug("Skipping header", line=line, header=cells)
                continue
        elif len(cells) != width:
            raise ParseError(f"Expected {width} columns, got {len(cells)}", line=line)

        value = _parse_value(cells[-1], line)
        rank = _parse_rank(cells[0], line) if pre_ranked else None
        label = cells[-2] if width == allowed[-1] else None
        rows.append(Row(line, rank, value, label))
    return rows


def _check_ranks(rows: t.List[Row]) -> t.List[Row]:
    seen: t.Dict[int, int] = {}
    for row in rows:
        if row.rank in seen:
            raise ValidationError(
                f"Duplicate rank {row.rank}, first seen on line {seen[row.rank]}",
                line=row.line,
            )
        seen[row.rank] = row.line
    missing = sorted(set(range(1, len(rows) + 1)) - seen.keys())
    if missing:
        raise ValidationError(
            f"Ranks must run over 1..{len(rows)} without gaps; missing {missing[0]}"
        )
    ranked = sorted(rows, key=lambda row: row.rank)
    for previous, row in zip(ranked, ranked[1:]):
        if row.value > previous.value:
            raise ValidationError(
                f"Value {row.value} at rank {row.rank} exceeds {previous.value}"
                f" at rank {previous.rank}",
                line=row.line,
            )
    return ranked


def _apply_zero_policy(
    rows: t.List[Row], policy: ZeroPolicy
) -> t.Tuple[t.List[Row], t.List[str]]:
    kept, warnings = [], []
    for row in rows:
        if row.value > 0:
            kept.append(row)
        elif policy is ZeroPolicy.REJECT:
            raise ValidationError(
                f"Value must be positive: {row.value}", line=row.line
            )
        else:
            logger.warning("Dropped non-positive value", line=row.line, value=row.value)
            warnings.append(f"line {row.line}: dropped non-positive value {row.value}")
    return kept, warnings


def parse_csv(
    text: str, options: IngestOptions = IngestOptions()
) -> t.Tuple[RankedSeries, t.List[str]]:
    """Parse delimited `text` into a ranked series and a list of warnings."""
    rows = _read_rows(text.removeprefix("\ufeff"), options)
    if not rows:
        raise EmptySeriesError("Input holds no data rows")

    if options.mode is IngestMode.PRE_RANKED:
        rows = _check_ranks(rows)
    rows, warnings = _apply_zero_policy(rows, options.zero_policy)
    if not rows:
        raise EmptySeriesError("No positive values left after dropping")

    has_labels = any(row.label is not None for row in rows)
    labels = [row.label or "" for row in rows] if has_labels else None
    values = [row.value for row in rows]
    if options.mode is IngestMode.PRE_RANKED:
        # rank order is given; dropped rows only shift the ranks below them
        series = RankedSeries(values, labels)
    else:
        series = rank_raw(values, labels)
    logger.info("Ingested", n=series.n, dropped=len(warnings), mode=options.mode.value)
    return series, warnings
