"""Equilibria with full communication but selfish play.

Both servers observe the state but each maximises its own payoff.  The
resulting pure/mixed equilibrium structure over the state square:

* ``max(p1, p2) < c``        -- both inactive.
* ``max(p1, p2) == c``       -- knife edge: the better server is
  indifferent, so any mix for it (paired with an inactive opponent) is an
  equilibrium.
* one server clearly ahead (``p_i > c > p_j`` or ``p_i - p_j > c``) --
  that server alone is active.
* the *contention* region ``|p1 - p2| <= c`` with both above c -- both
  asymmetric pure profiles are equilibria, plus one mixed profile:

      p1 >= p2:  (sigma1, sigma2) = ((p2 - c) / p2, (p1 - c) / p2)
      p1 <  p2:  (sigma1, sigma2) = ((p2 - c) / p1, (p1 - c) / p1)

  The mixed profile makes each opponent exactly indifferent, and it is
  unstable: nudging sigma1 up makes inactive strictly better for server 2,
  nudging it down makes active strictly better.

The closed edges of the contention region (``min == c`` or
``|p1 - p2| == c``) are classified as contention too: there the asymmetric
pure profiles are still (weakly) stable and the mixed formula degenerates
consistently to a 0/1 component.  All region tests use a 1e-9 equality
tolerance so states sitting on a boundary up to float rounding get the
boundary's equilibrium set.

Selecting the best (worst) equilibrium per state means handing the task to
the higher (lower) probability server inside contention; the resulting
expected welfares have the closed forms in :func:`welfare_case3_max` and
:func:`welfare_case3_min`.  The side-payment regulation of
``payoffs.payoff_case3_regulated`` collapses the whole structure to a
unique equilibrium matching the cooperative optimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .payoffs import (
    ACTIVE,
    INACTIVE,
    Action,
    Profile,
    State,
    as_state,
    check_cost,
)

__all__ = [
    "BOUNDARY_EPS",
    "EquilibriumKind",
    "EquilibriumSet",
    "classify_state",
    "equilibrium_activity",
    "mixed_equilibrium",
    "regulated_activity",
    "regulated_equilibrium",
    "select_equilibrium",
    "welfare_case3_max",
    "welfare_case3_min",
]

# Separates exact-equality boundary states (float rounding ~1e-16) from
# interior points of any reasonable test grid.
BOUNDARY_EPS = 1e-9


class EquilibriumKind(Enum):
    BOTH_INACTIVE = "both_inactive"
    BOUNDARY_MIX_1 = "boundary_mix_server1"
    BOUNDARY_MIX_2 = "boundary_mix_server2"
    ONLY_SERVER_1 = "only_server1_active"
    ONLY_SERVER_2 = "only_server2_active"
    CONTENTION = "contention"


@dataclass(frozen=True)
class EquilibriumSet:
    """Equilibria at one state: a region label, the weakly stable pure
    profiles, and the mixed profile when the region carries one."""

    kind: EquilibriumKind
    pure_equilibria: tuple[tuple[Action, Action], ...]
    mixed: tuple[float, float] | None = None


_II = (INACTIVE, INACTIVE)
_AI = (ACTIVE, INACTIVE)
_IA = (INACTIVE, ACTIVE)


def _mixed_formula(p1: float, p2: float, c: float) -> tuple[float, float]:
    denom = p2 if p1 >= p2 else p1
    sigma1 = (p2 - c) / denom
    sigma2 = (p1 - c) / denom
    # Inside contention both components lie in [0, 1] by construction; the
    # BOUNDARY_EPS closure admits an overshoot of at most eps / denom, and
    # anything beyond that means a caller bug.
    slack = BOUNDARY_EPS / denom + 1e-12
    for value in (sigma1, sigma2):
        if not -slack <= value <= 1.0 + slack:
            raise AssertionError(
                f"mixed profile component {value!r} outside [0, 1] at "
                f"({p1}, {p2}), c={c}"
            )
    return min(1.0, max(0.0, sigma1)), min(1.0, max(0.0, sigma2))


def classify_state(s: State, c: float) -> EquilibriumSet:
    """Full equilibrium set of the unregulated game at state ``s``."""
    s = as_state(s)
    c = check_cost(c)
    p1, p2 = s.p1, s.p2
    top = max(p1, p2)
    eps = BOUNDARY_EPS

    if top < c - eps:
        return EquilibriumSet(EquilibriumKind.BOTH_INACTIVE, (_II,))

    if top <= c + eps:  # knife edge max == c
        if p1 >= p2:
            pure = [_II, _AI]
            if p2 >= c - eps:  # double knife edge p1 == p2 == c
                pure.append(_IA)
            return EquilibriumSet(EquilibriumKind.BOUNDARY_MIX_1, tuple(pure))
        return EquilibriumSet(EquilibriumKind.BOUNDARY_MIX_2, (_II, _IA))

    # max > c from here on
    if p2 < c - eps or p1 - p2 > c + eps:
        return EquilibriumSet(EquilibriumKind.ONLY_SERVER_1, (_AI,))
    if p1 < c - eps or p2 - p1 > c + eps:
        return EquilibriumSet(EquilibriumKind.ONLY_SERVER_2, (_IA,))

    return EquilibriumSet(
        EquilibriumKind.CONTENTION, (_AI, _IA), _mixed_formula(p1, p2, c)
    )


def mixed_equilibrium(s: State, c: float) -> tuple[float, float]:
    """The contention region's mixed profile; rejects states outside it."""
    s = as_state(s)
    result = classify_state(s, c)
    if result.kind is not EquilibriumKind.CONTENTION:
        raise ValueError(
            f"state ({s.p1}, {s.p2}) with c={c} is outside the contention "
            f"region (classified {result.kind.value}); no mixed equilibrium"
        )
    assert result.mixed is not None
    return result.mixed


def equilibrium_activity(p1, p2, c: float, policy: str = "max_welfare"):
    """Vectorised equilibrium selection: arrays of (sigma1, sigma2) in {0, 1}.

    Outside contention there is a unique equilibrium (knife-edge states
    resolve to both-inactive, the canonical member of their indifference
    family).  Inside contention, ``max_welfare`` activates the higher-p
    server and ``min_welfare`` the lower-p one; ties go to server 1.
    """
    if policy not in ("max_welfare", "min_welfare"):
        raise ValueError(f"unknown policy {policy!r}")
    c = check_cost(c)
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    eps = BOUNDARY_EPS
    top = np.maximum(p1, p2)

    nobody = top <= c + eps  # both-inactive region plus the knife edge
    only1 = ~nobody & ((p2 < c - eps) | (p1 - p2 > c + eps))
    only2 = ~nobody & ((p1 < c - eps) | (p2 - p1 > c + eps))
    contention = ~(nobody | only1 | only2)
    first = p1 >= p2 if policy == "max_welfare" else p1 <= p2

    sigma1 = np.where(only1 | (contention & first), 1.0, 0.0)
    sigma2 = np.where(only2 | (contention & ~first), 1.0, 0.0)
    return sigma1, sigma2


def select_equilibrium(s: State, c: float, policy: str = "max_welfare") -> Profile:
    """One pure equilibrium at ``s`` under the given welfare policy.

    Any other measurable split of the contention band between the two
    asymmetric profiles is an equilibrium selection too; to evaluate a
    custom one, pass your own activity callable to ``oracle.mc_welfare``.
    """
    s = as_state(s)
    sigma1, sigma2 = equilibrium_activity(s.p1, s.p2, c, policy=policy)
    return Profile(float(sigma1), float(sigma2))


def welfare_case3_max(c: float) -> float:
    """Expected welfare of the best equilibrium selection: -c**3/3 - c + 4/3."""
    c = check_cost(c)
    return -(c**3) / 3.0 - c + 4.0 / 3.0


def welfare_case3_min(c: float) -> float:
    """Expected welfare of the worst equilibrium selection.

    ``3c**3 - 2c**2 - c + 4/3`` for c < 1/2 and
    ``c**3/3 - 2c**2 + c + 2/3`` above; the branches agree at c = 1/2.
    """
    c = check_cost(c)
    if c < 0.5:
        return 3.0 * c**3 - 2.0 * c**2 - c + 4.0 / 3.0
    return c**3 / 3.0 - 2.0 * c**2 + c + 2.0 / 3.0


def regulated_activity(p1, p2, c: float):
    """Vectorised unique equilibrium of the side-payment game.

    The better server is active whenever ``max(p1, p2) >= c/2`` (ties to
    server 1, where both asymmetric profiles are equilibria), nobody below.
    """
    c = check_cost(c)
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    serve = np.maximum(p1, p2) >= c / 2.0
    sigma1 = np.where(serve & (p1 >= p2), 1.0, 0.0)
    sigma2 = np.where(serve & (p2 > p1), 1.0, 0.0)
    return sigma1, sigma2


def regulated_equilibrium(s: State, c: float) -> Profile:
    """The side-payment game's equilibrium at one state.

    Coincides with ``cooperative.optimal_profile`` away from two
    welfare-neutral measure-zero sets: the tie diagonal p1 == p2 >= c/2
    (either asymmetric profile is an equilibrium; server 1 serves) and the
    circle of indifference max == c/2 exactly (the regulated game still
    activates the better server there; welfare is zero either way).
    """
    s = as_state(s)
    sigma1, sigma2 = regulated_activity(s.p1, s.p2, c)
    return Profile(float(sigma1), float(sigma2))
