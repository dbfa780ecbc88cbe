"""Contingency-table ingestion and the shared correspondence model.

A two-way contingency table ``N`` with grand total ``n`` is turned into the
correspondence matrix ``P = N / n``, its marginals ``r`` (rows) and ``c``
(columns), the centered residual ``D = P - r c^T`` and the association index
``delta = P / (r c^T) - 1``.  Every quantity downstream (both factorization
engines, the distortion diagnostics) is a function of this model.
"""

from __future__ import annotations

import csv
import io
import logging
import os
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

import numpy as np

__all__ = [
    "InvalidTableError",
    "ContingencyTable",
    "CorrespondenceModel",
    "load_table",
    "build_model",
    "sparsity",
    "profile",
    "ROWS",
    "COLS",
]

logger = logging.getLogger(__name__)

ROWS = "rows"
COLS = "cols"

_DELIMITERS = (",", ";", "\t")


class InvalidTableError(ValueError):
    """Raised when input data cannot form a valid contingency table."""


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.flags.writeable = False
    return a


def _check_axis(axis: str) -> str:
    if axis not in (ROWS, COLS):
        raise ValueError(f"axis must be {ROWS!r} or {COLS!r}, got {axis!r}")
    return axis


@dataclass(frozen=True)
class ContingencyTable:
    """Labeled nonnegative count matrix.

    Attributes
    ----------
    row_labels, col_labels : tuple of str
        Unique labels for each axis.
    counts : (I, J) ndarray
        Nonnegative cell counts (reals accepted so pre-normalized tables
        load).  The array is read-only.
    """

    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    counts: np.ndarray

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts, dtype=float)
        if counts.ndim != 2:
            raise InvalidTableError("counts must be a 2-d matrix")
        I, J = counts.shape
        if I < 2 or J < 2:
            raise InvalidTableError(f"table must be at least 2x2, got {I}x{J}")
        if len(self.row_labels) != I or len(self.col_labels) != J:
            raise InvalidTableError("label lengths do not match counts shape")
        for name, labels in (("row", self.row_labels), ("column", self.col_labels)):
            if len(set(labels)) != len(labels):
                raise InvalidTableError(f"duplicate {name} label")
        if not np.all(np.isfinite(counts)):
            raise InvalidTableError("counts must be finite")
        if np.any(counts < 0):
            raise InvalidTableError("counts must be nonnegative")
        if counts.sum() <= 0:
            raise InvalidTableError("grand total must be positive")
        object.__setattr__(self, "row_labels", tuple(self.row_labels))
        object.__setattr__(self, "col_labels", tuple(self.col_labels))
        object.__setattr__(self, "counts", _freeze(counts))

    @property
    def shape(self) -> tuple[int, int]:
        return self.counts.shape

    @property
    def n(self) -> float:
        """Grand total of the table."""
        return float(self.counts.sum())


@dataclass(frozen=True)
class CorrespondenceModel:
    """Correspondence matrix with marginals, residual and association index.

    Attributes
    ----------
    P : (I, J) ndarray
        Probability table ``counts / n``; sums to 1.
    r, c : ndarray
        Row and column marginals of ``P``, all strictly positive.
    D : (I, J) ndarray
        Residual ``P - outer(r, c)``; every row and column sums to 0.
    delta_index : (I, J) ndarray
        Association index ``P / outer(r, c) - 1``; satisfies
        ``delta_index * outer(r, c) == D`` cellwise.
    """

    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    P: np.ndarray
    r: np.ndarray
    c: np.ndarray
    D: np.ndarray
    delta_index: np.ndarray

    def __post_init__(self) -> None:
        for field in ("P", "r", "c", "D", "delta_index"):
            object.__setattr__(self, field, _freeze(getattr(self, field)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.P.shape

    def labels(self, axis: str) -> tuple[str, ...]:
        return self.row_labels if _check_axis(axis) == ROWS else self.col_labels

    def weights(self, axis: str) -> np.ndarray:
        """Marginal weight vector of the requested axis (``r`` or ``c``)."""
        return self.r if _check_axis(axis) == ROWS else self.c


def _detect_delimiter(sample: str) -> str:
    first = sample.splitlines()[0] if sample else ""
    counts = {d: first.count(d) for d in _DELIMITERS}
    best = max(counts, key=counts.get)
    if counts[best] == 0:
        raise InvalidTableError("could not detect a delimiter (comma, semicolon or tab)")
    return best


def _parse_cell(text: str, row_label: str, col_label: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise InvalidTableError(
            f"cell ({row_label!r}, {col_label!r}): not a number: {text!r}"
        ) from None
    if not np.isfinite(value):
        raise InvalidTableError(f"cell ({row_label!r}, {col_label!r}): not finite")
    if value < 0:
        raise InvalidTableError(f"cell ({row_label!r}, {col_label!r}): negative count {value}")
    return value


def load_table(
    source: str | os.PathLike | IO[str],
    drop_empty: bool = False,
    delimiter: str | None = None,
) -> ContingencyTable:
    """Parse delimiter-separated text into a :class:`ContingencyTable`.

    The first row holds column labels (an optional leading corner cell is
    ignored); the first field of every other row is the row label.  The
    delimiter is auto-detected among comma, semicolon and tab unless given.

    Parameters
    ----------
    source : path or text stream
    drop_empty : bool
        When true, all-zero rows/columns are removed (and reported through
        the module logger) instead of being an error.
    delimiter : str, optional
        Explicit field separator, bypassing detection.

    Raises
    ------
    InvalidTableError
        Malformed cell, duplicate label, zero marginal with ``drop_empty``
        unset, or a table smaller than 2x2 after any dropping.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as handle:
            text = handle.read()
    if not text.strip():
        raise InvalidTableError("empty input")
    if delimiter is None:
        delimiter = _detect_delimiter(text)

    rows = [row for row in csv.reader(io.StringIO(text), delimiter=delimiter) if row]
    if len(rows) < 2:
        raise InvalidTableError("need a header row and at least two data rows")
    header, body = rows[0], rows[1:]
    width = len(body[0])
    if len(header) == width:
        col_labels = [label.strip() for label in header[1:]]  # corner cell present
    elif len(header) == width - 1:
        col_labels = [label.strip() for label in header]
    else:
        raise InvalidTableError(
            f"header has {len(header)} fields but data rows have {width}"
        )

    row_labels: list[str] = []
    data: list[list[float]] = []
    for row in body:
        if len(row) != width:
            raise InvalidTableError(
                f"row {row[0]!r}: expected {width} fields, got {len(row)}"
            )
        label = row[0].strip()
        row_labels.append(label)
        data.append(
            [_parse_cell(cell, label, col) for cell, col in zip(row[1:], col_labels)]
        )

    counts = np.array(data, dtype=float)
    if drop_empty:
        counts, row_labels, col_labels = _drop_empty(counts, row_labels, col_labels)
    else:
        _reject_empty(counts, row_labels, col_labels)
    if counts.shape[0] < 2 or counts.shape[1] < 2:
        raise InvalidTableError(
            f"table must be at least 2x2, got {counts.shape[0]}x{counts.shape[1]}"
        )
    return ContingencyTable(tuple(row_labels), tuple(col_labels), counts)


def _reject_empty(
    counts: np.ndarray, row_labels: Sequence[str], col_labels: Sequence[str]
) -> None:
    for axis, labels, name in ((1, row_labels, "row"), (0, col_labels, "column")):
        sums = counts.sum(axis=axis)
        if np.any(sums == 0):
            bad = [labels[i] for i in np.flatnonzero(sums == 0)]
            raise InvalidTableError(
                f"all-zero {name}(s) {bad}; rerun with drop_empty to remove them"
            )


def _drop_empty(
    counts: np.ndarray, row_labels: Sequence[str], col_labels: Sequence[str]
) -> tuple[np.ndarray, list[str], list[str]]:
    row_keep = counts.sum(axis=1) > 0
    col_keep = counts.sum(axis=0) > 0
    for keep, labels, name in ((row_keep, row_labels, "row"), (col_keep, col_labels, "column")):
        dropped = [labels[i] for i in np.flatnonzero(~keep)]
        if dropped:
            logger.warning("dropping all-zero %s(s): %s", name, ", ".join(dropped))
    return (
        counts[np.ix_(row_keep, col_keep)],
        [l for l, k in zip(row_labels, row_keep) if k],
        [l for l, k in zip(col_labels, col_keep) if k],
    )


def build_model(table: ContingencyTable) -> CorrespondenceModel:
    """Compute ``P``, marginals, residual ``D`` and association index.

    Raises
    ------
    InvalidTableError
        If any marginal is zero (unreachable for tables from
        :func:`load_table` without ``drop_empty`` abuse).
    """
    P = table.counts / table.counts.sum()
    r = P.sum(axis=1)
    c = P.sum(axis=0)
    if np.any(r == 0) or np.any(c == 0):
        raise InvalidTableError("zero marginal; drop empty rows/columns first")
    expected = np.outer(r, c)
    D = P - expected
    delta_index = P / expected - 1.0
    return CorrespondenceModel(table.row_labels, table.col_labels, P, r, c, D, delta_index)


def sparsity(table: ContingencyTable) -> float:
    """Fraction of zero cells, in ``[0, 1]``."""
    return float(np.count_nonzero(table.counts == 0) / table.counts.size)


def profile(model: CorrespondenceModel, axis: str, index: int) -> np.ndarray:
    """Profile of one row (``P[i] / r[i]``) or column (``P[:, j] / c[j]``).

    The result is a probability vector; the weighted average of all profiles
    on an axis is the opposite marginal (the barycenter).
    """
    _check_axis(axis)
    I, J = model.shape
    size = I if axis == ROWS else J
    if not 0 <= index < size:
        raise IndexError(f"{axis} index {index} out of range for {I}x{J} table")
    if axis == ROWS:
        return model.P[index] / model.r[index]
    return model.P[:, index] / model.c[index]
