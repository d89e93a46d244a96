"""Socially optimal play with full communication and cooperation.

When both servers observe the state and jointly maximise total payoff, the
rule is simple: serve with the better server if and only if
``max(p1, p2) > c / 2`` (a success is worth 1 to each of the two reward
recipients, so the task is socially worthwhile once 2*max exceeds c).
At ``max = c/2`` welfare is zero either way; we resolve the tie to
inactive, and the tie ``p1 == p2`` to server 1 serving, so the map is
deterministic.

Under independent uniform states the resulting expected welfare has the
closed form ``c**3 / 12 - c + 4/3``, which the test-suite cross-checks by
Monte Carlo over :func:`optimal_profile`.
"""

from __future__ import annotations

import numpy as np

from .payoffs import PAYOFF_VARIANTS, Profile, State, as_state, check_cost, payoff_mixed

__all__ = [
    "optimal_activity",
    "optimal_profile",
    "pointwise_welfare",
    "welfare_case1",
]


def optimal_activity(p1, p2, c: float):
    """Vectorised welfare-optimal activity: arrays of (sigma1, sigma2) in {0, 1}.

    Server 1 serves on ties; nobody serves at ``max(p1, p2) <= c / 2``.
    """
    c = check_cost(c)
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    worthwhile = np.maximum(p1, p2) > c / 2.0
    sigma1 = np.where(worthwhile & (p1 >= p2), 1.0, 0.0)
    sigma2 = np.where(worthwhile & (p2 > p1), 1.0, 0.0)
    return sigma1, sigma2


def optimal_profile(s: State, c: float) -> Profile:
    """The welfare-maximising profile at a single state."""
    s = as_state(s)
    sigma1, sigma2 = optimal_activity(s.p1, s.p2, c)
    return Profile(float(sigma1), float(sigma2))


def pointwise_welfare(
    s: State, prof: Profile, c: float, variant: str = "unregulated"
) -> float:
    """Total expected payoff u1 + u2 of a (possibly mixed) profile at one state."""
    if variant not in PAYOFF_VARIANTS:
        raise ValueError(
            f"unknown variant {variant!r}; expected one of {sorted(PAYOFF_VARIANTS)}"
        )
    return payoff_mixed(s, prof.sigma1, prof.sigma2, c, variant=variant).total


def welfare_case1(c: float) -> float:
    """Expected welfare of :func:`optimal_profile` under uniform states.

    Closed form ``c**3 / 12 - c + 4/3``; equals 4/3 at c = 0 (twice the
    expected maximum of two independent uniforms) and decreases strictly
    in c.
    """
    c = check_cost(c)
    return c**3 / 12.0 - c + 4.0 / 3.0
