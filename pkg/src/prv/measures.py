"""Association measures built on proportional reduction in variation.

Given a joint table p and a generator f, the marginal variation of the
response is V(Y) = -sum_j f(p_.j) and the conditional variation within row i
is V(Y|X=i) = -sum_j f(p_ij / p_i.).  Two summaries of the conditional
variations yield two measures of association:

  arithmetic (phi_f):   (V(Y) - sum_i p_i. * V(Y|X=i)) / V(Y)
  geometric  (phi_geo): (V(Y) - prod_i V(Y|X=i)^(p_i.)) / V(Y)

Both live in [0, 1], vanish exactly at independence, and the geometric
measure dominates the arithmetic one (weighted AM-GM).  The geometric
product collapses to zero as soon as any positive-mass row is one-hot, so
phi_geo flags row-local (partial) complete association that the arithmetic
average dilutes.

The geometric product is evaluated in the log domain,
exp(sum_i p_i. * log V(Y|X=i)), with an early exit to exactly 1.0 when a
conditional variation is exactly zero; rows with zero mass contribute a
factor of one (the weighted-geometric-mean limit).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import NonPositiveMarginalVariation
from .ffamily import FSpec
from .table import ProbabilityTable

_CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class VariationProfile:
    """Marginal and per-row conditional variations of a table.

    ``conditional[i]`` is 0.0 for rows with zero mass; such rows carry
    weight 0 everywhere and never influence a measure.
    """

    marginal: float
    conditional: np.ndarray
    weights: np.ndarray


@dataclass(frozen=True)
class MeasureEstimate:
    """A measure value with optional uncertainty.

    ``kind`` is "phi_f" or "phi_geo"; ``fspec`` is the generator label.
    ``se``/``ci``/``n`` are populated by the inference layer.
    """

    kind: str
    value: float
    fspec: str
    rows: int
    cols: int
    se: float | None = None
    ci: tuple[float, float] | None = None
    n: int | None = None

    def __post_init__(self) -> None:
        if not (0.0 <= self.value <= 1.0):
            raise ValueError(
                f"measure value {self.value!r} outside [0, 1]; the generator "
                "likely violates the variation conditions"
            )
        if self.se is not None and self.se < 0.0:
            raise ValueError(f"standard error must be nonnegative, got {self.se!r}")
        if self.ci is not None:
            lo, hi = self.ci
            if not (lo <= self.value <= hi):
                raise ValueError(f"interval {self.ci!r} does not bracket {self.value!r}")

    def with_uncertainty(
        self, se: float, ci: tuple[float, float], n: int
    ) -> "MeasureEstimate":
        return replace(self, se=se, ci=ci, n=n)


def _clamp_unit(value: float) -> float:
    """Snap to the unit interval, but only within 1e-12 of the endpoints."""
    if -_CLAMP_TOL <= value < 0.0:
        return 0.0
    if 1.0 < value <= 1.0 + _CLAMP_TOL:
        return 1.0
    return value


def variation_profile(p: ProbabilityTable, f: FSpec) -> VariationProfile:
    """Compute V(Y) and every V(Y|X=i).

    Raises NonPositiveMarginalVariation when V(Y) <= 0 (a degenerate
    generator; with the shipped families the marginal variation is always
    positive because every column carries mass) or when a conditional
    variation is negative (a mis-oriented custom generator).
    """
    marginal = f.variation(p.col_marginals)
    if marginal <= 0.0:
        raise NonPositiveMarginalVariation(
            f"marginal variation is {marginal!r}; the measures are undefined"
        )
    weights = p.row_marginals
    conditional = np.zeros(p.rows)
    for i in range(p.rows):
        if weights[i] <= 0.0:
            continue
        v = f.variation(p.probs[i] / weights[i])
        if v < 0.0:
            raise NonPositiveMarginalVariation(
                f"conditional variation of row {i} is {v!r}; "
                "the generator is not oriented for nonnegative variation"
            )
        conditional[i] = v
    return VariationProfile(marginal=marginal, conditional=conditional, weights=weights)


def phi_f(p: ProbabilityTable, f: FSpec) -> MeasureEstimate:
    """Arithmetic-mean PRV measure."""
    prof = variation_profile(p, f)
    expected = math.fsum(
        w * v for w, v in zip(prof.weights, prof.conditional) if w > 0.0
    )
    value = _clamp_unit((prof.marginal - expected) / prof.marginal)
    return MeasureEstimate("phi_f", value, f.label, p.rows, p.cols)


def phi_geo(p: ProbabilityTable, f: FSpec) -> MeasureEstimate:
    """Geometric-mean PRV measure."""
    prof = variation_profile(p, f)
    value = _clamp_unit(_phi_geo_value(prof))
    return MeasureEstimate("phi_geo", value, f.label, p.rows, p.cols)


def _phi_geo_value(prof: VariationProfile) -> float:
    if any(
        w > 0.0 and v == 0.0 for w, v in zip(prof.weights, prof.conditional)
    ):
        # A one-hot row zeroes the geometric product outright; returning the
        # exact boundary value avoids exp/log round-off like 0.9999999....
        return 1.0
    log_product = math.fsum(
        w * math.log(v) for w, v in zip(prof.weights, prof.conditional) if w > 0.0
    )
    return (prof.marginal - math.exp(log_product)) / prof.marginal


def measure_value(p: ProbabilityTable, f: FSpec, kind: str) -> float:
    """Value of the requested measure; kind is 'phi_f' or 'phi_geo'."""
    if kind == "phi_f":
        return phi_f(p, f).value
    if kind == "phi_geo":
        return phi_geo(p, f).value
    raise ValueError(f"unknown measure kind {kind!r}")
