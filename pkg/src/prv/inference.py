"""Standard errors and confidence intervals for the association measures.

Under multinomial sampling the plug-in estimate of the geometric measure is
asymptotically normal; its variance follows from the delta method.  Writing
W = V(Y), V_i = V(Y|X=i), G = prod_i V_i^(p_i.) and q_ij = p_ij / p_i., the
gradient of the measure factorizes cell-wise as

    d phi_geo / d p_ij = delta * Delta_ij,

    delta      = G / (sum_t f(p_.t))^2,
    Delta_ij   = eps_ij * sum_t f(p_.t) - f'(p_.j),
    eps_ij     = log V_i + (sum_t q_it f'(q_it) - f'(q_ij)) / V_i,

and the sandwich with the multinomial covariance gives

    sigma^2 = delta^2 * [ sum_ij p_ij Delta_ij^2 - (sum_ij p_ij Delta_ij)^2 ].

Every analytic gradient is cross-checked against a central finite-difference
gradient taken along renormalized paths on the probability simplex; the two
agree up to a constant shift along the all-ones direction, so comparisons
project both onto the simplex tangent space first.

:func:`delta_variance_printed` keeps an alternative epsilon with denominator
sum_t f'(q_it) in place of V_i.  It does not agree with the finite-difference
oracle and is retained only so the discrepancy can be audited; see the
compatibility notes in the README.

A seeded multinomial bootstrap serves as an independent oracle for both
measures, and :func:`coverage_sim` estimates empirical interval coverage.
Bootstrap and coverage replicates draw from generators keyed on
(seed, replicate index), so results never depend on worker count or
scheduling order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import ndtri

from .errors import (
    BadParameter,
    BoundaryCase,
    DegenerateRow,
    InteriorRequired,
    PrvError,
)
from .ffamily import FSpec
from .measures import MeasureEstimate, measure_value, phi_f, phi_geo, variation_profile
from .table import ContingencyTable, ProbabilityTable, from_counts

_FD_STEP = 1e-6

SE_METHODS = ("delta", "delta-numeric", "bootstrap")


@dataclass(frozen=True)
class CIConfig:
    """Settings for interval construction.

    ``method`` is one of "delta" (analytic gradient, geometric measure
    only), "delta-numeric" (finite-difference gradient, either measure) or
    "bootstrap".  Replicated computations derive one RNG per replicate from
    (seed, index), so ``workers`` affects wall time only, never results.
    """

    alpha: float = 0.05
    method: str = "delta"
    boot_reps: int = 10000
    seed: int = 0
    workers: int = 1

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha < 1.0):
            raise BadParameter(f"alpha must be in (0, 1), got {self.alpha!r}")
        if self.method not in SE_METHODS:
            raise BadParameter(f"method must be one of {SE_METHODS}, got {self.method!r}")
        if self.boot_reps < 1:
            raise BadParameter("boot_reps must be positive")
        if self.seed < 0:
            raise BadParameter("seed must be a nonnegative integer")
        if self.workers < 1:
            raise BadParameter("workers must be positive")

    @property
    def z(self) -> float:
        """Two-sided standard-normal critical value for the configured alpha."""
        return float(ndtri(1.0 - self.alpha / 2.0))


@dataclass(frozen=True)
class GradientReport:
    """Per-cell gradient diagnostics for the geometric measure.

    ``analytic`` equals ``delta * Delta`` cell-for-cell.  ``max_deviation``
    is the max-norm distance between the analytic and finite-difference
    gradients after projecting both onto the simplex tangent space.
    """

    delta: float
    Delta: np.ndarray = field(repr=False)
    epsilon: np.ndarray = field(repr=False)
    analytic: np.ndarray = field(repr=False)
    finite_difference: np.ndarray = field(repr=False)
    max_deviation: float


def _deriv_at(f: FSpec, x: float) -> float:
    d = f.deriv(x)
    if not math.isfinite(d):
        raise BoundaryCase(
            f"generator derivative diverges at a zero cell ({f.label}); "
            "no asymptotic variance is available for this table"
        )
    return d


def delta_variance(p: ProbabilityTable, f: FSpec) -> tuple[float, GradientReport]:
    """Asymptotic variance of sqrt(n) * (phi_geo_hat - phi_geo), with diagnostics.

    Requires every row marginal positive (DegenerateRow otherwise) and every
    conditional variation positive (BoundaryCase otherwise).  Zero cells
    inside positive rows use the one-sided derivative limit when it is
    finite; a divergent limit (the Shannon case) raises BoundaryCase.
    """
    prof = variation_profile(p, f)
    if np.any(prof.weights <= 0.0):
        raise DegenerateRow("every row needs positive mass for the asymptotic variance")
    if np.any(prof.conditional == 0.0):
        raise BoundaryCase(
            "a conditional variation is zero (geometric measure equals 1); "
            "asymptotic normality fails and no interval is defined"
        )

    rows, cols = p.rows, p.cols
    sum_f_marg = -prof.marginal
    log_product = math.fsum(
        w * math.log(v) for w, v in zip(prof.weights, prof.conditional)
    )
    delta = math.exp(log_product) / (sum_f_marg * sum_f_marg)
    marg_deriv = [f.deriv(m) for m in p.col_marginals]

    epsilon = np.zeros((rows, cols))
    Delta = np.zeros((rows, cols))
    for i in range(rows):
        w = prof.weights[i]
        v = prof.conditional[i]
        q = p.probs[i] / w
        cell_deriv = [f.deriv(x) if x > 0.0 else _deriv_at(f, 0.0) for x in q]
        weighted = math.fsum(q[t] * cell_deriv[t] for t in range(cols) if q[t] > 0.0)
        log_v = math.log(v)
        for j in range(cols):
            eps = log_v + (weighted - cell_deriv[j]) / v
            epsilon[i, j] = eps
            Delta[i, j] = eps * sum_f_marg - marg_deriv[j]

    mean_grad = math.fsum(
        p.probs[i, j] * Delta[i, j] for i in range(rows) for j in range(cols)
        if p.probs[i, j] > 0.0
    )
    second_moment = math.fsum(
        p.probs[i, j] * Delta[i, j] ** 2 for i in range(rows) for j in range(cols)
        if p.probs[i, j] > 0.0
    )
    sigma2 = delta * delta * (second_moment - mean_grad * mean_grad)
    if sigma2 < -1e-12:
        raise PrvError(f"variance came out negative ({sigma2!r})")
    sigma2 = max(sigma2, 0.0)

    analytic = delta * Delta
    fd = numeric_gradient(p, f, "phi_geo")
    finite_cells = np.isfinite(analytic) & np.isfinite(fd)
    dev = _tangent(analytic, finite_cells) - _tangent(fd, finite_cells)
    max_deviation = float(np.max(np.abs(dev[finite_cells]))) if finite_cells.any() else math.nan

    report = GradientReport(
        delta=float(delta),
        Delta=Delta,
        epsilon=epsilon,
        analytic=analytic,
        finite_difference=fd,
        max_deviation=max_deviation,
    )
    return float(sigma2), report


def delta_variance_printed(p: ProbabilityTable, f: FSpec) -> float:
    """Audit variant of :func:`delta_variance` with the alternative epsilon
    denominator sum_t f'(q_it).  Kept for comparison only; it disagrees with
    the finite-difference oracle and with the bootstrap."""
    prof = variation_profile(p, f)
    if np.any(prof.weights <= 0.0):
        raise DegenerateRow("every row needs positive mass for the asymptotic variance")
    if np.any(prof.conditional == 0.0):
        raise BoundaryCase("a conditional variation is zero")

    rows, cols = p.rows, p.cols
    sum_f_marg = -prof.marginal
    log_product = math.fsum(
        w * math.log(v) for w, v in zip(prof.weights, prof.conditional)
    )
    delta = math.exp(log_product) / (sum_f_marg * sum_f_marg)
    marg_deriv = [f.deriv(m) for m in p.col_marginals]

    mean_grad = 0.0
    second_moment = 0.0
    for i in range(rows):
        w = prof.weights[i]
        v = prof.conditional[i]
        q = p.probs[i] / w
        cell_deriv = [f.deriv(x) if x > 0.0 else _deriv_at(f, 0.0) for x in q]
        weighted = math.fsum(q[t] * cell_deriv[t] for t in range(cols) if q[t] > 0.0)
        deriv_sum = math.fsum(cell_deriv)
        log_v = math.log(v)
        for j in range(cols):
            if p.probs[i, j] <= 0.0:
                continue
            eps = log_v + (-weighted + cell_deriv[j]) / deriv_sum
            d = marg_deriv[j] - eps * sum_f_marg
            mean_grad += p.probs[i, j] * d
            second_moment += p.probs[i, j] * d * d
    sigma2 = delta * delta * (second_moment - mean_grad * mean_grad)
    return max(float(sigma2), 0.0)


def _tangent(grad: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Remove the component along the all-ones direction over masked cells."""
    out = np.array(grad, copy=True)
    out[mask] -= out[mask].mean()
    return out


def _stat_fn(f: FSpec, kind: str) -> Callable[[ProbabilityTable], float]:
    return lambda table: measure_value(table, f, kind)


def numeric_gradient(
    p: ProbabilityTable, f: FSpec, kind: str = "phi_geo", h: float = _FD_STEP
) -> np.ndarray:
    """Central finite-difference gradient along renormalized simplex paths.

    Cell (i, j) is perturbed to (p +/- h e_ij) / (1 +/- h), which stays on
    the simplex; the resulting derivative differs from the raw gradient by a
    constant shift along the all-ones direction.  Cells too close to zero
    for a central step fall back to a forward difference.
    """
    stat = _stat_fn(f, kind)
    base = stat(p)
    grad = np.zeros_like(p.probs)
    arr = p.probs
    for i in range(p.rows):
        for j in range(p.cols):
            bumped = arr.copy()
            bumped[i, j] += h
            up = stat(ProbabilityTable(bumped / (1.0 + h)))
            if arr[i, j] >= h:
                dipped = arr.copy()
                dipped[i, j] -= h
                try:
                    down = stat(ProbabilityTable(dipped / (1.0 - h)))
                    grad[i, j] = (up - down) / (2.0 * h)
                    continue
                except PrvError:
                    pass
            grad[i, j] = (up - base) / h
    return grad


def numeric_variance(
    p: ProbabilityTable, f: FSpec, kind: str, h: float = _FD_STEP
) -> float:
    """Delta-method variance from the finite-difference gradient.

    The constant shift in the renormalized gradient drops out of the
    multinomial sandwich, which only sees the p-weighted variance of the
    gradient over cells.
    """
    grad = numeric_gradient(p, f, kind, h)
    arr = p.probs
    mean_grad = math.fsum(
        arr[i, j] * grad[i, j] for i in range(p.rows) for j in range(p.cols)
        if arr[i, j] > 0.0
    )
    second = math.fsum(
        arr[i, j] * grad[i, j] ** 2 for i in range(p.rows) for j in range(p.cols)
        if arr[i, j] > 0.0
    )
    return max(second - mean_grad * mean_grad, 0.0)


@dataclass(frozen=True)
class BootstrapSummary:
    """Outcome of a multinomial bootstrap for one measure."""

    estimate: float
    se: float
    ci_normal: tuple[float, float]
    ci_percentile: tuple[float, float]
    replicates: int
    excluded: int
    messages: tuple[str, ...]


def _run_indexed(total: int, workers: int, work: Callable[[int], None]) -> None:
    """Run work(r) for r in range(total), optionally across threads.

    Each index is independent and deterministic, so the split is purely a
    wall-time concern.
    """
    if workers <= 1 or total == 0:
        for r in range(total):
            work(r)
        return
    bounds = np.linspace(0, total, workers + 1).astype(int)

    def run_slice(k: int) -> None:
        for r in range(bounds[k], bounds[k + 1]):
            work(r)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        list(pool.map(run_slice, range(workers)))


def bootstrap_summary(
    t: ContingencyTable, f: FSpec, kind: str, cfg: CIConfig
) -> BootstrapSummary:
    """Multinomial bootstrap of the plug-in estimate.

    Replicate r resamples n observations from the plug-in probabilities
    using a generator keyed on (seed, r).  Replicates that land on an
    invalid table (an emptied column, say) are excluded and counted; more
    than 1% exclusions is flagged in ``messages``.
    """
    p_hat = from_counts(t)
    estimate = measure_value(p_hat, f, kind)
    n = t.total
    flat = p_hat.probs.ravel()
    shape = p_hat.probs.shape
    values = np.full(cfg.boot_reps, np.nan)

    def work(r: int) -> None:
        rng = np.random.default_rng([cfg.seed, r])
        counts = rng.multinomial(n, flat).reshape(shape)
        try:
            values[r] = measure_value(from_counts(ContingencyTable(counts)), f, kind)
        except PrvError:
            pass

    _run_indexed(cfg.boot_reps, cfg.workers, work)

    valid = values[np.isfinite(values)]
    excluded = cfg.boot_reps - valid.size
    if valid.size < 2:
        raise PrvError(
            f"bootstrap failed: only {valid.size} of {cfg.boot_reps} replicates were valid"
        )
    messages: list[str] = []
    if excluded > 0.01 * cfg.boot_reps:
        messages.append(
            f"bootstrap-degenerate: {excluded}/{cfg.boot_reps} replicates excluded"
        )
    elif excluded:
        messages.append(f"{excluded} bootstrap replicates excluded")
    se = float(np.std(valid, ddof=1))
    z = cfg.z
    lo, hi = np.quantile(valid, [cfg.alpha / 2.0, 1.0 - cfg.alpha / 2.0])
    return BootstrapSummary(
        estimate=estimate,
        se=se,
        ci_normal=(estimate - z * se, estimate + z * se),
        ci_percentile=(float(lo), float(hi)),
        replicates=int(valid.size),
        excluded=int(excluded),
        messages=tuple(messages),
    )


def confidence_interval(
    t: ContingencyTable, f: FSpec, kind: str, cfg: CIConfig
) -> MeasureEstimate:
    """Point estimate with standard error and two-sided normal interval.

    The analytic "delta" method applies to the geometric measure only; the
    arithmetic measure is served by "delta-numeric" or "bootstrap".  A point
    estimate of exactly 1 is a boundary case with no defined interval.
    """
    p_hat = from_counts(t)
    base = phi_geo(p_hat, f) if kind == "phi_geo" else phi_f(p_hat, f)
    if base.value == 1.0:
        raise BoundaryCase(
            f"{kind} equals 1 on this table; no confidence interval is defined"
        )
    n = t.total
    if cfg.method == "bootstrap":
        summary = bootstrap_summary(t, f, kind, cfg)
        return base.with_uncertainty(summary.se, summary.ci_normal, n)
    if cfg.method == "delta":
        if kind != "phi_geo":
            raise BadParameter(
                "the analytic delta variance covers phi_geo only; "
                "use delta-numeric or bootstrap for phi_f"
            )
        sigma2, _ = delta_variance(p_hat, f)
    else:
        sigma2 = numeric_variance(p_hat, f, kind)
    se = math.sqrt(sigma2 / n)
    z = cfg.z
    return base.with_uncertainty(se, (base.value - z * se, base.value + z * se), n)


@dataclass(frozen=True)
class CoverageReport:
    """Empirical coverage of the configured interval at a known truth."""

    true_value: float
    n: int
    requested: int
    used: int
    excluded: int
    coverage: float | None
    mean_estimate: float | None
    bias: float | None


def coverage_sim(
    true_p: ProbabilityTable,
    f: FSpec,
    n: int,
    reps: int,
    cfg: CIConfig,
    kind: str = "phi_geo",
) -> CoverageReport:
    """Monte Carlo check of interval coverage under multinomial sampling.

    Draws ``reps`` samples of size n from ``true_p``, builds an interval for
    each, and reports the fraction covering the true measure value plus the
    mean bias of the estimator.  The truth must be strictly inside (0, 1);
    replicates that hit boundary or degenerate conditions are excluded and
    counted.  reps = 0 yields an empty report.
    """
    if n < 1:
        raise BadParameter("sample size must be positive")
    if reps < 0:
        raise BadParameter("replicate count must be nonnegative")
    true_value = measure_value(true_p, f, kind)
    if true_value <= 0.0 or true_value >= 1.0:
        raise InteriorRequired(
            f"true measure value is {true_value!r}; coverage needs an interior truth"
        )
    if reps == 0:
        return CoverageReport(true_value, n, 0, 0, 0, None, None, None)

    flat = true_p.probs.ravel()
    shape = true_p.probs.shape
    estimates = np.full(reps, np.nan)
    covered = np.zeros(reps, dtype=bool)

    def work(r: int) -> None:
        rng = np.random.default_rng([cfg.seed, r])
        counts = ContingencyTable(rng.multinomial(n, flat).reshape(shape))
        try:
            est = confidence_interval(counts, f, kind, cfg)
        except PrvError:
            return
        estimates[r] = est.value
        lo, hi = est.ci
        covered[r] = lo <= true_value <= hi

    _run_indexed(reps, cfg.workers, work)

    valid = np.isfinite(estimates)
    used = int(valid.sum())
    if used == 0:
        return CoverageReport(true_value, n, reps, 0, reps, None, None, None)
    mean_est = float(estimates[valid].mean())
    return CoverageReport(
        true_value=true_value,
        n=n,
        requested=reps,
        used=used,
        excluded=reps - used,
        coverage=float(covered[valid].mean()),
        mean_estimate=mean_est,
        bias=mean_est - true_value,
    )
