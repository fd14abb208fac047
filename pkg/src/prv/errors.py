"""Exception hierarchy.

Every error raised by this package derives from :class:`PrvError` so callers
can catch one base class.  The CLI maps subfamilies to exit codes: input
problems exit 2, degenerate-table problems exit 3, boundary cases exit 4.
"""

from __future__ import annotations


class PrvError(Exception):
    """Base class for all errors raised by this package."""


class TableError(PrvError):
    """A contingency or probability table failed validation."""


class ZeroTotal(TableError):
    """Counts sum to zero; probabilities are undefined."""


class EmptyColumn(TableError):
    """A column has zero mass; every column marginal must be positive."""


class RaggedRows(TableError):
    """CSV rows have differing lengths."""


class NegativeCount(TableError):
    """A cell is negative."""


class NonIntegerCell(TableError):
    """A count cell is not a base-10 nonnegative integer."""


class TooSmall(TableError):
    """Fewer than two rows or two columns."""


class InvalidPermutation(TableError):
    """A row or column permutation is not a bijection."""


class NotNormalized(TableError):
    """Probability cells do not sum to one within tolerance."""


class BadParameter(PrvError):
    """A tuning parameter or configuration value is out of range."""


class NonPositiveMarginalVariation(PrvError):
    """The marginal (or a conditional) variation is not positive where required."""


class BoundaryCase(PrvError):
    """The geometric measure sits on the boundary of [0, 1]; asymptotic
    normality fails and no confidence interval is defined."""


class DegenerateRow(PrvError):
    """A row has zero marginal mass where positive mass is required."""


class InteriorRequired(PrvError):
    """The true measure value must lie strictly inside (0, 1)."""


class UnknownName(PrvError):
    """No built-in table or dataset is registered under the given name."""


class BadCorrelation(PrvError):
    """Correlation coefficient outside [-1, 1]."""


#: Errors the CLI treats as bad input (exit code 2).
INPUT_ERRORS = (TableError, BadParameter, UnknownName, BadCorrelation)

#: Errors the CLI treats as degenerate-table conditions (exit code 3).
DEGENERATE_ERRORS = (NonPositiveMarginalVariation, DegenerateRow, InteriorRequired)
