"""Contingency and probability tables.

Both table types are immutable value objects: the backing arrays are copied
on construction and marked read-only, so instances can be shared freely
across threads and bootstrap replicates.  Marginals are computed once with
compensated (correctly rounded) summation via ``math.fsum``.
"""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    EmptyColumn,
    InvalidPermutation,
    NegativeCount,
    NonIntegerCell,
    NotNormalized,
    RaggedRows,
    TooSmall,
    ZeroTotal,
)

_NORMALIZATION_TOL = 1e-12

_INT_RE = re.compile(r"[+]?\d+\Z")


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, copy=True)
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    """An R x C table of observed nonnegative integer counts."""

    counts: np.ndarray
    total: int = field(init=False)

    def __post_init__(self) -> None:
        arr = np.asarray(self.counts)
        if arr.ndim != 2:
            raise TooSmall(f"expected a 2-D table, got {arr.ndim}-D")
        if arr.shape[0] < 2 or arr.shape[1] < 2:
            raise TooSmall(f"need at least 2x2, got {arr.shape[0]}x{arr.shape[1]}")
        if not np.issubdtype(arr.dtype, np.integer):
            rounded = np.rint(arr)
            if not np.all(np.isfinite(arr)) or np.any(arr != rounded):
                raise NonIntegerCell("counts must be integers")
            arr = rounded.astype(np.int64)
        if np.any(arr < 0):
            raise NegativeCount("counts must be nonnegative")
        object.__setattr__(self, "counts", _frozen(arr.astype(np.int64)))
        object.__setattr__(self, "total", int(self.counts.sum()))

    @property
    def rows(self) -> int:
        return self.counts.shape[0]

    @property
    def cols(self) -> int:
        return self.counts.shape[1]

    @property
    def row_totals(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_totals(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    def compact(self) -> "ContingencyTable":
        """Drop all-zero rows and all-zero columns.

        Raises TooSmall if fewer than two rows or columns remain.
        """
        keep_rows = self.row_totals > 0
        keep_cols = self.col_totals > 0
        return ContingencyTable(self.counts[np.ix_(keep_rows.nonzero()[0], keep_cols.nonzero()[0])])

    def scaled(self, factor: int) -> "ContingencyTable":
        """Multiply every count by a positive integer factor."""
        if factor < 1:
            raise ValueError("factor must be a positive integer")
        return ContingencyTable(self.counts * int(factor))


@dataclass(frozen=True, eq=False)
class ProbabilityTable:
    """An R x C joint probability table with precomputed marginals.

    Cells must be nonnegative, sum to one within 1e-12, and every column
    marginal must be strictly positive (conditional distributions of the
    response are taken column-wise, so an empty column makes the variation
    of the response ill-defined).  Rows with zero mass are allowed.
    """

    probs: np.ndarray
    row_marginals: np.ndarray = field(init=False)
    col_marginals: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        arr = np.asarray(self.probs, dtype=float)
        if arr.ndim != 2:
            raise TooSmall(f"expected a 2-D table, got {arr.ndim}-D")
        if arr.shape[0] < 2 or arr.shape[1] < 2:
            raise TooSmall(f"need at least 2x2, got {arr.shape[0]}x{arr.shape[1]}")
        if not np.all(np.isfinite(arr)):
            raise NotNormalized("cells must be finite")
        if np.any(arr < 0):
            raise NegativeCount("probabilities must be nonnegative")
        total = math.fsum(arr.flat)
        if abs(total - 1.0) > _NORMALIZATION_TOL:
            raise NotNormalized(f"cells sum to {total!r}, expected 1 within {_NORMALIZATION_TOL}")
        row = np.array([math.fsum(arr[i, :]) for i in range(arr.shape[0])])
        col = np.array([math.fsum(arr[:, j]) for j in range(arr.shape[1])])
        if np.any(col <= 0.0):
            raise EmptyColumn("every column marginal must be positive")
        object.__setattr__(self, "probs", _frozen(arr))
        object.__setattr__(self, "row_marginals", _frozen(row))
        object.__setattr__(self, "col_marginals", _frozen(col))

    @property
    def rows(self) -> int:
        return self.probs.shape[0]

    @property
    def cols(self) -> int:
        return self.probs.shape[1]

    def zero_cells(self) -> int:
        return int(np.count_nonzero(self.probs == 0.0))


def from_counts(t: ContingencyTable, smooth: float = 0.0) -> ProbabilityTable:
    """Plug-in probability table: cell (i, j) becomes n_ij / n.

    With ``smooth`` > 0, that amount is added to every count before
    normalization (a continuity correction for tables with empty cells).
    Raises ZeroTotal for an all-zero table and EmptyColumn when a column
    has no observations (and no smoothing is applied).
    """
    if smooth < 0:
        raise NegativeCount("smoothing amount must be nonnegative")
    if t.total == 0:
        raise ZeroTotal("table has no observations")
    counts = t.counts.astype(float) + smooth
    if smooth == 0.0 and np.any(t.col_totals == 0):
        raise EmptyColumn("a column has no observations; see the smoothing option")
    return ProbabilityTable(counts / math.fsum(counts.flat))


def permute(p: ProbabilityTable, row_perm: Sequence[int], col_perm: Sequence[int]) -> ProbabilityTable:
    """Reorder categories: output cell (i, j) is input cell (row_perm[i], col_perm[j])."""
    rp = list(row_perm)
    cp = list(col_perm)
    if sorted(rp) != list(range(p.rows)):
        raise InvalidPermutation(f"row permutation {rp} is not a bijection on 0..{p.rows - 1}")
    if sorted(cp) != list(range(p.cols)):
        raise InvalidPermutation(f"column permutation {cp} is not a bijection on 0..{p.cols - 1}")
    return ProbabilityTable(p.probs[np.ix_(rp, cp)])


def _is_int_token(tok: str) -> bool:
    return bool(_INT_RE.match(tok.strip()))


def _is_numeric_token(tok: str) -> bool:
    try:
        float(tok)
        return True
    except ValueError:
        return False


def parse_csv(
    text: str | bytes,
    *,
    header_row: bool | None = None,
    label_col: bool | None = None,
) -> ContingencyTable:
    """Parse comma-separated counts into a ContingencyTable.

    An optional first header row and first label column are auto-detected
    (any non-numeric cell marks them) unless explicitly forced on or off.
    Whitespace around cells is ignored.  Cells must be base-10 nonnegative
    integers.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    grid = [
        [cell.strip() for cell in row]
        for row in csv.reader(io.StringIO(text))
        if any(cell.strip() for cell in row)
    ]
    if not grid:
        raise TooSmall("no data rows found")

    if header_row is None:
        header_row = any(not _is_numeric_token(tok) for tok in grid[0])
    if header_row:
        grid = grid[1:]
    if not grid:
        raise TooSmall("no data rows after removing the header")

    if label_col is None:
        label_col = any(row and not _is_numeric_token(row[0]) for row in grid)
    if label_col:
        grid = [row[1:] for row in grid]

    widths = {len(row) for row in grid}
    if len(widths) != 1:
        raise RaggedRows(f"rows have differing lengths {sorted(widths)}")

    cells: list[list[int]] = []
    for row in grid:
        parsed = []
        for tok in row:
            if tok.startswith("-") and _is_int_token(tok[1:]):
                raise NegativeCount(f"negative count {tok!r}")
            if not _is_int_token(tok):
                raise NonIntegerCell(f"cell {tok!r} is not a nonnegative integer")
            parsed.append(int(tok))
        cells.append(parsed)
    return ContingencyTable(np.array(cells, dtype=np.int64))
