"""Association measures for two-way contingency tables.

Computes the arithmetic and geometric proportional-reduction-in-variation
measures of association between an explanatory row variable and a response
column variable, with delta-method standard errors, confidence intervals, a
multinomial bootstrap, and generators for discretized bivariate-normal
tables.  See the README for the command-line interface.
"""

from .datagen import QUARTILE_CUTS, BvnSpec, bvn_table, fixed_table, sample_multinomial
from .ffamily import (
    ConditionReport,
    FSpec,
    check_conditions,
    custom_f,
    default_settings,
    omega_f,
    power_f,
)
from .inference import (
    BootstrapSummary,
    CIConfig,
    CoverageReport,
    GradientReport,
    bootstrap_summary,
    confidence_interval,
    coverage_sim,
    delta_variance,
    delta_variance_printed,
    numeric_gradient,
    numeric_variance,
)
from .measures import (
    MeasureEstimate,
    VariationProfile,
    measure_value,
    phi_f,
    phi_geo,
    variation_profile,
)
from .table import ContingencyTable, ProbabilityTable, from_counts, parse_csv, permute
from . import errors

__version__ = "0.1.0"

__all__ = [
    "BootstrapSummary",
    "BvnSpec",
    "CIConfig",
    "ConditionReport",
    "ContingencyTable",
    "CoverageReport",
    "FSpec",
    "GradientReport",
    "MeasureEstimate",
    "ProbabilityTable",
    "QUARTILE_CUTS",
    "VariationProfile",
    "bootstrap_summary",
    "bvn_table",
    "check_conditions",
    "confidence_interval",
    "coverage_sim",
    "custom_f",
    "default_settings",
    "delta_variance",
    "delta_variance_printed",
    "errors",
    "fixed_table",
    "from_counts",
    "measure_value",
    "numeric_gradient",
    "numeric_variance",
    "omega_f",
    "parse_csv",
    "permute",
    "phi_f",
    "phi_geo",
    "power_f",
    "sample_multinomial",
    "variation_profile",
]
