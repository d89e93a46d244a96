"""Threshold play when neither server observes the other's state.

Each server sees only its own success probability and knows the opponent
plays a cutoff rule "active iff p >= t" (activity at exactly p == t is
active).  Against a uniform opponent with cutoff t, the best response is
again a cutoff:

    unregulated:   sqrt(2c - t**2)   if t <= sqrt(c),    else c / t
    c/2 subsidy:   sqrt(c - t**2)    if t <= sqrt(c/2),  else c / (2t)

clamped to [0, 1] (a cutoff of 1 means "never active" up to a probability-
zero event).  The unique mutual fixed point is (sqrt(c), sqrt(c)); with the
subsidy it moves to (sqrt(c/2), sqrt(c/2)), which is also where expected
welfare over cutoff pairs is maximised.

Raw best-response dynamics two-cycle around the fixed point (the composed
map has unit derivative there), so :func:`best_response_fixed_point`
averages each step with the current iterate; that damped iteration
contracts with ratio <= 1/2 and converges in a handful of steps.

Everything here is a pure function except :class:`Distribution` sampling,
which uses a caller-supplied ``numpy.random.Generator``; don't share one
generator across threads without coordination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .payoffs import check_cost

__all__ = [
    "Distribution",
    "FixedPointResult",
    "ThresholdPair",
    "ThresholdWelfare",
    "best_response_fixed_point",
    "best_response_threshold",
    "nash_threshold",
    "nash_threshold_general",
    "optimal_thresholds",
    "power_distribution",
    "uniform_distribution",
    "validate_distribution",
    "welfare_thresholds",
]


class ThresholdPair(NamedTuple):
    """Cutoffs (t1, t2); server i is active iff its own p >= t_i."""

    t1: float
    t2: float


def _check_threshold(t: float, name: str = "threshold") -> float:
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {t!r}")
    return t


def best_response_threshold(t_opp: float, c: float, regulated: bool = False) -> float:
    """Best-response cutoff against a uniform opponent with cutoff ``t_opp``."""
    t_opp = _check_threshold(t_opp, "t_opp")
    c = check_cost(c)
    if regulated:
        if t_opp <= math.sqrt(c / 2.0):
            value = math.sqrt(c - t_opp**2)
        else:
            value = c / (2.0 * t_opp)
    else:
        if t_opp <= math.sqrt(c):
            value = math.sqrt(2.0 * c - t_opp**2)
        else:
            value = c / t_opp
    return min(1.0, max(0.0, value))


def nash_threshold(c: float, regulated: bool = False) -> ThresholdPair:
    """The unique cutoff-pair equilibrium: (sqrt(c), sqrt(c)), or
    (sqrt(c/2), sqrt(c/2)) under the subsidy."""
    c = check_cost(c)
    t = math.sqrt(c / 2.0) if regulated else math.sqrt(c)
    return ThresholdPair(t, t)


class FixedPointResult(NamedTuple):
    threshold: float
    iterations: int
    converged: bool


def best_response_fixed_point(
    c: float,
    start: float = 0.5,
    regulated: bool = False,
    tol: float = 1e-12,
    max_iter: int = 100,
    damping: float = 0.5,
) -> FixedPointResult:
    """Damped best-response iteration ``t <- (1-a) t + a BR(t)``.

    ``damping=1.0`` recovers the raw dynamics, which oscillate and close in
    on the fixed point only at rate ~1/n; the default 1/2 averaging is
    geometric (see module docstring).  Stops once successive iterates move
    by at most ``tol``.
    """
    c = check_cost(c)
    t = _check_threshold(start, "start")
    if not 0.0 < damping <= 1.0:
        raise ValueError(f"damping must lie in (0, 1], got {damping!r}")
    for iteration in range(1, max_iter + 1):
        t_next = (1.0 - damping) * t + damping * best_response_threshold(
            t, c, regulated=regulated
        )
        moved = abs(t_next - t)
        t = t_next
        if moved <= tol:
            return FixedPointResult(t, iteration, True)
    return FixedPointResult(t, max_iter, False)


class ThresholdWelfare(NamedTuple):
    """Per-server welfare shares and their total for a cutoff pair."""

    server1: float
    server2: float
    total: float


def _shares_t1_below(t1, t2, c):
    # valid on t1 <= t2
    common = 4.0 + -3.0 * t1**2 * t2 - t2**3
    s1 = (common + 6.0 * c * (t1 - 1.0)) / 6.0
    s2 = (common + 6.0 * c * (t2 - 1.0)) / 6.0
    return s1, s2


def _shares_t1_above(t1, t2, c):
    # valid on t1 >= t2 (mirror of _shares_t1_below)
    common = 4.0 - 3.0 * t2**2 * t1 - t1**3
    s1 = (common + 6.0 * c * (t1 - 1.0)) / 6.0
    s2 = (common + 6.0 * c * (t2 - 1.0)) / 6.0
    return s1, s2


def welfare_thresholds(t1, t2, c: float) -> ThresholdWelfare:
    """Expected welfare of cutoff play (t1, t2) under uniform states.

    Accepts scalars or broadcastable numpy arrays for ``t1``/``t2``.  The
    two branch polynomials (t1 below/above t2) agree on the diagonal; the
    oracle module recomputes the server-1 share by region quadrature.
    """
    c = check_cost(c)
    t1 = np.asarray(t1, dtype=float)
    t2 = np.asarray(t2, dtype=float)
    if np.any((t1 < 0.0) | (t1 > 1.0)) or np.any((t2 < 0.0) | (t2 > 1.0)):
        raise ValueError("thresholds must lie in [0, 1]")
    lo1, lo2 = _shares_t1_below(t1, t2, c)
    hi1, hi2 = _shares_t1_above(t1, t2, c)
    below = t1 < t2
    s1 = np.where(below, lo1, hi1)
    s2 = np.where(below, lo2, hi2)
    if s1.ndim == 0:
        return ThresholdWelfare(float(s1), float(s2), float(s1) + float(s2))
    return ThresholdWelfare(s1, s2, s1 + s2)


def optimal_thresholds(c: float) -> ThresholdPair:
    """The cutoff pair maximising :func:`welfare_thresholds`: (sqrt(c/2), sqrt(c/2)).

    Coincides with the equilibrium of the subsidised game, which is the
    point of the subsidy.
    """
    c = check_cost(c)
    t = math.sqrt(c / 2.0)
    return ThresholdPair(t, t)


# --------------------------------------------------------------------------
# general state distributions


@dataclass(frozen=True)
class Distribution:
    """A CDF on [0, 1] paired with a consistent sampler.

    ``cdf`` must be nondecreasing with cdf(1) == 1 and accept numpy arrays;
    ``sample(rng, n)`` must draw n variates from the same law using the
    supplied generator.  :func:`validate_distribution` checks the pairing.
    """

    name: str
    cdf: Callable[[np.ndarray], np.ndarray]
    sample: Callable[[np.random.Generator, int], np.ndarray]


def uniform_distribution() -> Distribution:
    return Distribution(
        name="uniform",
        cdf=lambda x: np.asarray(x, dtype=float),
        sample=lambda rng, n: rng.random(n),
    )


def power_distribution(k: float) -> Distribution:
    """CDF x**k on [0, 1] (k > 0), sampled by inverse transform."""
    if not k > 0:
        raise ValueError(f"k must be positive, got {k!r}")
    return Distribution(
        name=f"power-{k:g}",
        cdf=lambda x: np.asarray(x, dtype=float) ** k,
        sample=lambda rng, n: rng.random(n) ** (1.0 / k),
    )


def validate_distribution(
    dist: Distribution,
    n: int = 100_000,
    seed: int = 0,
    ks_tol: float = 0.01,
    grid_points: int = 1001,
) -> None:
    """Raise ValueError unless ``dist`` satisfies the CDF/sampler contract.

    Checks: cdf nondecreasing on a grid, 0 <= cdf <= 1, cdf(1) == 1 within
    1e-12, and Kolmogorov-Smirnov distance between ``n`` samples and the
    cdf below ``ks_tol``.
    """
    grid = np.linspace(0.0, 1.0, grid_points)
    values = np.asarray(dist.cdf(grid), dtype=float)
    if np.any(np.diff(values) < -1e-12):
        raise ValueError(f"{dist.name}: cdf is not nondecreasing")
    if np.any(values < -1e-12) or np.any(values > 1.0 + 1e-12):
        raise ValueError(f"{dist.name}: cdf leaves [0, 1]")
    if abs(float(dist.cdf(np.float64(1.0))) - 1.0) > 1e-12:
        raise ValueError(f"{dist.name}: cdf(1) != 1")
    rng = np.random.default_rng(seed)
    samples = np.sort(np.asarray(dist.sample(rng, n), dtype=float))
    if samples.size != n:
        raise ValueError(f"{dist.name}: sampler returned {samples.size} != {n} draws")
    theory = np.asarray(dist.cdf(samples), dtype=float)
    steps = np.arange(1, n + 1) / n
    ks = max(
        float(np.max(steps - theory)),  # empirical above the cdf
        float(np.max(theory - (steps - 1.0 / n))),  # empirical below
    )
    if ks > ks_tol:
        raise ValueError(f"{dist.name}: KS distance {ks:.4f} exceeds {ks_tol}")


def nash_threshold_general(
    dist: Distribution, c: float, tol: float = 1e-10, max_steps: int = 200
) -> float:
    """Common equilibrium cutoff h solving ``h * F(h) = c`` for a shared CDF F.

    ``x * F(x)`` is nondecreasing on [0, 1] (strictly wherever F > 0) and
    reaches 1 at x = 1, so bisection brackets the crossing; the left
    endpoint is kept strictly below, which lands on the smallest solution.
    A flat stretch of ``x * F(x)`` can only sit at height 0, so the only
    solution plateau is at c == 0, returned as 0 immediately.
    """
    c = check_cost(c)
    if c == 0.0:
        return 0.0

    def g(x: float) -> float:
        return x * float(dist.cdf(np.float64(x))) - c

    lo, hi = 0.0, 1.0
    if g(hi) < -tol:
        raise ValueError(f"{dist.name}: x * cdf(x) never reaches c = {c}")
    for _ in range(max_steps):
        mid = 0.5 * (lo + hi)
        if g(mid) >= 0.0:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-15 and abs(g(hi)) <= tol:
            return hi
    if abs(g(hi)) <= tol:
        return hi
    raise ArithmeticError(
        f"bisection did not reach |h*F(h) - c| <= {tol} in {max_steps} steps "
        f"(residual {g(hi):.3e}); is the cdf within its contract?"
    )
