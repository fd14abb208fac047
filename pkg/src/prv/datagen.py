"""Table generators: discretized bivariate normals and canned examples.

A standard bivariate normal with correlation rho, cut at increasing
thresholds on each axis, induces a contingency table of rectangle
probabilities.  Rectangle masses come from inclusion-exclusion over four CDF
evaluations; the CDF itself is the adaptive quadrature

    F(a, b) = integral_{-inf}^{a} pdf(x) * Phi((b - rho*x) / sqrt(1-rho^2)) dx

with absolute tolerance well below the 1e-10 contract.  |rho| = 1 collapses
the mass onto a diagonal and is handled in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import ndtr, ndtri

from .errors import BadCorrelation, BadParameter, UnknownName
from .table import ContingencyTable, ProbabilityTable
from . import reference

#: Standard-normal quartiles: the default cutpoints for 4x4 tables.
QUARTILE_CUTS: tuple[float, ...] = (float(ndtri(0.25)), 0.0, float(ndtri(0.75)))


@dataclass(frozen=True)
class BvnSpec:
    """A standard bivariate normal (zero means, unit variances) with
    correlation ``rho``, discretized at the given cutpoints per axis."""

    rho: float
    row_cuts: tuple[float, ...] = QUARTILE_CUTS
    col_cuts: tuple[float, ...] = QUARTILE_CUTS

    def __post_init__(self) -> None:
        if math.isnan(self.rho) or abs(self.rho) > 1.0:
            raise BadCorrelation(f"correlation must lie in [-1, 1], got {self.rho!r}")
        for cuts in (self.row_cuts, self.col_cuts):
            if len(cuts) < 1:
                raise BadParameter("need at least one cutpoint per axis")
            if any(b <= a for a, b in zip(cuts, cuts[1:])):
                raise BadParameter(f"cutpoints must be strictly increasing, got {cuts}")
        object.__setattr__(self, "row_cuts", tuple(float(c) for c in self.row_cuts))
        object.__setattr__(self, "col_cuts", tuple(float(c) for c in self.col_cuts))


def _phi2(a: float, b: float, rho: float) -> float:
    """P(X <= a, Y <= b) under the standard bivariate normal."""
    if a == -math.inf or b == -math.inf:
        return 0.0
    if a == math.inf and b == math.inf:
        return 1.0
    if a == math.inf:
        return float(ndtr(b))
    if b == math.inf:
        return float(ndtr(a))
    s = math.sqrt(1.0 - rho * rho)
    norm = 1.0 / math.sqrt(2.0 * math.pi)

    def integrand(x: float) -> float:
        return norm * math.exp(-0.5 * x * x) * ndtr((b - rho * x) / s)

    value, _ = quad(integrand, -math.inf, a, epsabs=1e-13, epsrel=1e-12, limit=200)
    return float(value)


def _degenerate_table(spec: BvnSpec) -> np.ndarray:
    """Mass on the (anti-)diagonal line Y = sign(rho) * X, cut into cells."""
    a = (-math.inf, *spec.row_cuts, math.inf)
    b = (-math.inf, *spec.col_cuts, math.inf)
    rows, cols = len(a) - 1, len(b) - 1
    cells = np.zeros((rows, cols))
    for i in range(rows):
        for j in range(cols):
            if spec.rho > 0:
                lo, hi = max(a[i], b[j]), min(a[i + 1], b[j + 1])
            else:
                lo, hi = max(a[i], -b[j + 1]), min(a[i + 1], -b[j])
            if hi > lo:
                cells[i, j] = float(ndtr(hi) - ndtr(lo))
    return cells


def bvn_table(spec: BvnSpec) -> ProbabilityTable:
    """Rectangle probabilities of the discretized bivariate normal.

    The inclusion-exclusion over the CDF grid telescopes, so the cells sum
    to one to machine precision; tiny negative round-off in far-tail cells
    is clamped to zero.
    """
    if abs(spec.rho) == 1.0:
        return ProbabilityTable(_degenerate_table(spec))
    a = (-math.inf, *spec.row_cuts, math.inf)
    b = (-math.inf, *spec.col_cuts, math.inf)
    rows, cols = len(a) - 1, len(b) - 1
    grid = np.zeros((rows + 1, cols + 1))
    for i in range(rows + 1):
        for j in range(cols + 1):
            grid[i, j] = _phi2(a[i], b[j], spec.rho)
    cells = grid[1:, 1:] - grid[:-1, 1:] - grid[1:, :-1] + grid[:-1, :-1]
    return ProbabilityTable(np.maximum(cells, 0.0))


def fixed_table(name: str) -> ProbabilityTable:
    """One of the built-in 3x3 probability tables (artificial-1a/1b/1c)."""
    try:
        cells = reference.ARTIFICIAL_TABLES[name]
    except KeyError:
        known = ", ".join(sorted(reference.ARTIFICIAL_TABLES))
        raise UnknownName(f"no fixed table named {name!r}; known: {known}") from None
    return ProbabilityTable(np.array(cells, dtype=float))


def sample_multinomial(
    p: ProbabilityTable, n: int, seed: int | np.random.Generator
) -> ContingencyTable:
    """Draw an n-observation table of counts distributed Multinomial(n, p).

    Deterministic for a given integer seed; a Generator can be passed
    directly when the caller manages its own stream.
    """
    if n < 1:
        raise BadParameter(f"sample size must be at least 1, got {n!r}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    counts = rng.multinomial(int(n), p.probs.ravel()).reshape(p.probs.shape)
    return ContingencyTable(counts)
