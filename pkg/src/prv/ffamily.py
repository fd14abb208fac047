"""Convex generator functions for variation measures.

A variation measure of a probability vector q is induced by a generator f
through V(q) = -sum_j f(q_j).  For V to behave like a dispersion measure the
generator should satisfy four conditions:

  (i)   f is convex on [0, 1];
  (ii)  terms with zero weight vanish: 0 * f(0/0) = 0;
  (iii) f(x) -> 0 as x -> 0+;
  (iv)  f(1) = 0.

Conditions (i), (iii) and (iv) together force f <= 0 on [0, 1], so V(q) >= 0
with equality exactly at one-hot vectors.  Every FSpec carries an orientation
sign applied to the base function so that the induced variation is
nonnegative even for base functions handed in with the opposite sign;
:func:`check_conditions` diagnoses the conditions on the unoriented base
function and flags degenerate (identically zero) variations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import BadParameter

#: Below this magnitude the power-family exponent switches to its analytic
#: x*log(x) limit; (x**(lam+1) - x)/lam cancels catastrophically near 0.
_SHANNON_THRESHOLD = 1e-9

_CONVEXITY_TOL = 1e-12


@dataclass(frozen=True)
class FSpec:
    """A variation-generating function with derivative and orientation.

    ``base`` and ``base_deriv`` hold the function as parameterized; consumers
    always see the oriented version ``sign * base`` through :meth:`value` and
    :meth:`deriv`, which keeps induced variations nonnegative.
    """

    family: str
    param: float | None
    sign: int
    label: str
    base: Callable[[float], float] = field(repr=False)
    base_deriv: Callable[[float], float] = field(repr=False)

    def value(self, x: float) -> float:
        """Oriented generator value; x in [0, 1], with f(0) the limit value."""
        return self.sign * self.base(x)

    def deriv(self, x: float) -> float:
        """Oriented derivative; returns a signed infinity where it diverges
        (the Shannon case at x = 0), so callers can test finiteness."""
        return self.sign * self.base_deriv(x)

    def unoriented(self, x: float) -> float:
        """The base function before orientation, for diagnostics."""
        return self.base(x)

    def variation(self, probs: Iterable[float]) -> float:
        """Induced variation -sum_j f(q_j) of a probability vector."""
        return -math.fsum(self.value(q) for q in probs)


def power_f(lam: float) -> FSpec:
    """Power-divergence generator f(x) = (x^(lam+1) - x) / lam, lam > -1.

    The induced variation is the diversity index of degree lam,
    (1 - sum q^(lam+1)) / lam: Shannon entropy in the lam -> 0 limit and the
    Gini concentration at lam = 1.  At lam = 0 (within 1e-9) the analytic
    limit x*log(x) is used directly.
    """
    if not (lam > -1.0) or math.isnan(lam):
        raise BadParameter(f"power family needs lam > -1, got {lam!r}")

    if abs(lam) <= _SHANNON_THRESHOLD:

        def base(x: float) -> float:
            return x * math.log(x) if x > 0.0 else 0.0

        def base_deriv(x: float) -> float:
            return math.log(x) + 1.0 if x > 0.0 else -math.inf

    else:

        def base(x: float) -> float:
            return (x ** (lam + 1.0) - x) / lam if x > 0.0 else 0.0

        def base_deriv(x: float) -> float:
            if x > 0.0:
                return ((lam + 1.0) * x**lam - 1.0) / lam
            return -1.0 / lam if lam > 0.0 else -math.inf

    return FSpec("power", lam, +1, f"power({lam:g})", base, base_deriv)


def omega_f(omega: float, linear_sign: int = +1) -> FSpec:
    """Blended chi-square generator with tuning parameter omega in [0, 1).

    The base function is (x-1)^2/(omega*x + 1 - omega) plus an affine term
    linear_sign*(x-1)/(1-omega).  With the default ``linear_sign=+1`` the
    generator is anchored to zero at both endpoints (f(0) = f(1) = 0), all
    four conditions hold, and omega = 0 reduces to the Gini generator
    x^2 - x.  With ``linear_sign=-1`` the affine term is subtracted: the
    function is then nonnegative on [0, 1) with limit 2/(1-omega) at 0, so
    it violates the vanishing-at-zero condition and induces nonpositive
    variations; it is auto-oriented with sign -1 and kept as a diagnostic
    variant for :func:`check_conditions`.
    """
    if not (0.0 <= omega < 1.0):
        raise BadParameter(f"omega family needs 0 <= omega < 1, got {omega!r}")
    if linear_sign not in (+1, -1):
        raise BadParameter(f"linear_sign must be +1 or -1, got {linear_sign!r}")

    def base(x: float) -> float:
        return (x - 1.0) ** 2 / (omega * x + 1.0 - omega) + linear_sign * (x - 1.0) / (1.0 - omega)

    def base_deriv(x: float) -> float:
        d = omega * x + 1.0 - omega
        quad = (2.0 * (x - 1.0) * d - omega * (x - 1.0) ** 2) / (d * d)
        return quad + linear_sign / (1.0 - omega)

    sign = +1 if linear_sign == +1 else -1
    label = f"omega({omega:g})" if linear_sign == +1 else f"omega({omega:g},linear=-1)"
    return FSpec("omega", omega, sign, label, base, base_deriv)


def custom_f(
    base: Callable[[float], float],
    base_deriv: Callable[[float], float],
    label: str = "custom",
    param: float | None = None,
    orientation_seed: int = 0,
) -> FSpec:
    """Wrap a user-supplied generator, choosing the orientation empirically.

    The sign is picked so that the induced variation is nonnegative on a
    seeded sample of random probability vectors; if neither sign achieves
    that, the function cannot serve as a variation generator and
    BadParameter is raised.  Run :func:`check_conditions` on the result to
    see which conditions the base function actually satisfies.
    """
    rng = np.random.default_rng(orientation_seed)
    lo = math.inf
    hi = -math.inf
    for _ in range(400):
        k = int(rng.integers(2, 7))
        vec = rng.random(k) + 1e-9
        vec /= math.fsum(vec)
        v = -math.fsum(base(float(q)) for q in vec)
        lo = min(lo, v)
        hi = max(hi, v)
    if lo >= -_CONVEXITY_TOL:
        sign = +1
    elif hi <= _CONVEXITY_TOL:
        sign = -1
    else:
        raise BadParameter(
            "could not orient the generator: induced variation changes sign "
            f"(saw range [{lo:g}, {hi:g}])"
        )
    return FSpec("custom", param, sign, label, base, base_deriv)


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of the four generator conditions on the unoriented function.

    ``convex``, ``zero_weight_rule``, ``vanishing_at_zero`` and
    ``zero_at_one`` correspond to conditions (i)-(iv).  The report is purely
    diagnostic; nothing is enforced.  ``vanishing_at_zero`` is judged from
    the tail values f(10^-k), k = 3..12, recorded in ``zero_tail``.
    ``degenerate`` flags generators whose induced variation is identically
    (numerically) zero, which make the association measures 0/0.
    """

    convex: bool
    convex_excess: float
    convex_witness: tuple[float, float, float] | None
    zero_weight_rule: bool
    vanishing_at_zero: bool
    zero_tail: tuple[float, ...]
    zero_limit: float
    zero_at_one: bool
    value_at_one: float
    degenerate: bool
    max_variation_seen: float
    orientation: int

    def failures(self) -> list[str]:
        out = []
        if not self.convex:
            out.append("convexity")
        if not self.zero_weight_rule:
            out.append("zero-weight rule")
        if not self.vanishing_at_zero:
            out.append("vanishing at zero")
        if not self.zero_at_one:
            out.append("zero at one")
        return out


def check_conditions(f: FSpec, n_triples: int = 1000, seed: int = 0) -> ConditionReport:
    """Numerically probe the generator conditions on the unoriented function.

    Convexity is spot-checked on ``n_triples`` random triples x < y < z in
    (0, 1] against the chord inequality with tolerance 1e-12.  The
    zero-weight rule is verified on vectors containing exact zeros (their
    terms must contribute the finite limit value, never NaN).  The
    vanishing-at-zero condition is reported, not enforced.
    """
    rng = np.random.default_rng(seed)

    worst_excess = -math.inf
    witness: tuple[float, float, float] | None = None
    for _ in range(n_triples):
        x, y, z = np.sort(rng.random(3) * (1.0 - 1e-9) + 1e-9)
        if x == y or y == z:
            continue
        chord = ((z - y) * f.unoriented(x) + (y - x) * f.unoriented(z)) / (z - x)
        excess = f.unoriented(y) - chord
        if excess > worst_excess:
            worst_excess = excess
            witness = (float(x), float(y), float(z))
    convex = worst_excess <= _CONVEXITY_TOL

    zero_weight_ok = True
    for vec in ((0.0, 1.0), (0.0, 0.5, 0.5), (0.0, 0.0, 1.0)):
        v = f.variation(vec)
        if not math.isfinite(v):
            zero_weight_ok = False

    tail = tuple(f.unoriented(10.0**-k) for k in range(3, 13))
    zero_limit = tail[-1]
    vanishing = abs(zero_limit) <= 1e-8

    value_at_one = f.unoriented(1.0)
    zero_at_one = abs(value_at_one) <= 1e-12

    max_variation = 0.0
    for _ in range(200):
        k = int(rng.integers(2, 7))
        vec = rng.random(k) + 1e-6
        vec /= math.fsum(vec)
        max_variation = max(max_variation, abs(f.variation(vec)))
    degenerate = max_variation <= 1e-10

    return ConditionReport(
        convex=convex,
        convex_excess=float(worst_excess),
        convex_witness=witness,
        zero_weight_rule=zero_weight_ok,
        vanishing_at_zero=vanishing,
        zero_tail=tail,
        zero_limit=float(zero_limit),
        zero_at_one=zero_at_one,
        value_at_one=float(value_at_one),
        degenerate=degenerate,
        max_variation_seen=float(max_variation),
        orientation=f.sign,
    )


def resolve(family: str, param: float) -> FSpec:
    """Build an FSpec from a (family name, parameter) pair, as used by the CLI."""
    if family == "power":
        return power_f(param)
    if family == "omega":
        return omega_f(param)
    raise BadParameter(f"unknown family {family!r}; expected 'power' or 'omega'")


def default_settings() -> Sequence[FSpec]:
    """The six generator settings exercised throughout the test corpus."""
    return (
        power_f(0.0),
        power_f(0.5),
        power_f(1.0),
        omega_f(0.0),
        omega_f(0.5),
        omega_f(0.9),
    )
