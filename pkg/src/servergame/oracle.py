"""Independent verification engines: Monte Carlo, quadrature, grid search.

Every closed-form result in this package is cross-checked against the
machinery here, so this module deliberately recomputes everything from the
payoff tables themselves -- it never calls the closed-form functions in
``cooperative``, ``bayesian`` or ``full_info`` (only their plain data
containers).  The routes kept independent:

* interim activity gains against a cutoff opponent are integrated
  numerically (Simpson), not taken from the best-response algebra;
* cutoff-pair welfare is rebuilt by nested quadrature over the five
  activity regions of the state square;
* expected welfare of any strategy map is estimated by seeded Monte Carlo.

Monte Carlo uses ``numpy.random.default_rng`` (PCG64); estimates carry the
seed and algorithm name and are bitwise reproducible for a given
(seed, n, shards).  Sharded runs derive per-shard seeds from the root seed
via ``SeedSequence.spawn``, so they are deterministic too and may run
concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bayesian import Distribution, ThresholdWelfare, uniform_distribution
from .payoffs import State, check_cost

__all__ = [
    "DeviationReport",
    "Estimate",
    "epsilon_nash_check",
    "grid_best_response",
    "interim_activity_gain",
    "mc_welfare",
    "pointwise_strategy",
    "quadrature",
    "quadrature_piecewise",
    "threshold_activity",
    "threshold_welfare_by_quadrature",
]

RNG_ALGORITHM = "numpy-pcg64"


# --------------------------------------------------------------------------
# quadrature


def quadrature(f, a: float, b: float, panels: int = 64) -> float:
    """Composite Simpson rule with ``panels`` panels (2*panels+1 nodes).

    Exact (to rounding) for polynomials of degree <= 3 on each panel.  The
    integrand is evaluated on the whole node array at once; scalar-only
    callables are looped over as a fallback.
    """
    if b < a:
        raise ValueError(f"integration bounds must satisfy a <= b, got [{a}, {b}]")
    if panels < 1:
        raise ValueError(f"panels must be >= 1, got {panels}")
    if a == b:
        return 0.0
    nodes = np.linspace(a, b, 2 * panels + 1)
    values = np.asarray(f(nodes), dtype=float)
    if values.shape != nodes.shape:
        values = np.array([float(f(x)) for x in nodes])
    weights = np.ones_like(nodes)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    h = (b - a) / (2 * panels)
    return float(h / 3.0 * np.dot(weights, values))


def quadrature_piecewise(f, a: float, b: float, breakpoints=(), panels: int = 64) -> float:
    """Simpson quadrature with panel edges aligned to known kinks of ``f``."""
    cuts = [a]
    for x in sorted(float(x) for x in breakpoints):
        if cuts[-1] + 1e-15 < x < b - 1e-15:
            cuts.append(x)
    cuts.append(b)
    return sum(quadrature(f, lo, hi, panels) for lo, hi in zip(cuts[:-1], cuts[1:]))


def _quad_scalar(scalar_f, a: float, b: float, breakpoints=(), panels: int = 16) -> float:
    # outer integrals whose integrand itself runs an inner quadrature
    return quadrature_piecewise(
        lambda xs: np.array([scalar_f(float(x)) for x in xs]), a, b, breakpoints, panels
    )


# --------------------------------------------------------------------------
# interim gains and best responses against a cutoff opponent


def interim_activity_gain(
    p: float,
    t_opp: float,
    c: float,
    regulated: bool = False,
    panels: int = 32,
) -> float:
    """Expected payoff gain of being active rather than inactive at own type ``p``,
    against a uniform opponent playing the cutoff ``t_opp``.

    Integrates the pointwise active-minus-inactive payoff difference over
    the opponent's type by Simpson quadrature (kinks at ``t_opp`` and at
    ``p`` where the better-server max switches).  ``regulated`` switches to
    the c/2-subsidy payoffs.
    """
    c = check_cost(c)
    if not 0.0 <= t_opp <= 1.0:
        raise ValueError(f"t_opp must lie in [0, 1], got {t_opp!r}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")

    # The gain jumps at q = t_opp, so each branch is integrated over its own
    # segment (a shared Simpson node straddling the jump would poison both).
    if regulated:
        idle_value = p - c / 2.0

        def both_active(q):
            return np.maximum(p, q) - c - (q - c / 2.0)

    else:
        idle_value = p - c

        def both_active(q):
            return np.maximum(p, q) - c - q

    opp_idle_part = idle_value * t_opp  # constant integrand on [0, t_opp)
    opp_active_part = quadrature_piecewise(
        both_active, t_opp, 1.0, breakpoints=(p,), panels=panels
    )
    return opp_idle_part + opp_active_part


def grid_best_response(
    opp_threshold: float,
    c: float,
    regulated: bool = False,
    step: float = 1e-3,
) -> float:
    """Smallest grid point of own type where being active weakly dominates.

    The activity gain is nondecreasing in own type (single crossing), so
    the leftmost nonnegative grid point is found by bisection over the
    grid; a linear scan returns the same point.  Returns 1.0 when active
    never dominates on the grid.
    """
    if not 0.0 < step <= 0.01:
        raise ValueError(f"step must lie in (0, 0.01], got {step!r}")
    c = check_cost(c)
    n = int(round(1.0 / step))
    grid = np.linspace(0.0, 1.0, n + 1)

    def dominates(idx: int) -> bool:
        # weak dominance up to quadrature rounding, so a crossing that lands
        # exactly on a grid point is not pushed one step right by -1e-17 dust
        return interim_activity_gain(float(grid[idx]), opp_threshold, c, regulated) >= -1e-12

    if dominates(0):
        return float(grid[0])
    if not dominates(n):
        return 1.0
    lo, hi = 0, n  # not dominates(lo), dominates(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if dominates(mid):
            hi = mid
        else:
            lo = mid
    return float(grid[hi])


# --------------------------------------------------------------------------
# cutoff-pair welfare by region quadrature


def _server1_share_by_regions(t1: float, t2: float, c: float, panels: int = 16) -> float:
    """Server 1's expected payoff under cutoffs (t1, t2), by nested Simpson.

    The state square splits into five regions: both idle (zero payoff),
    self active alone (p1 - c), opponent active alone (p2), and both
    active with the task going to the better server (split along p1 = p2).
    All integrands are piecewise polynomial, so the rule is exact up to
    rounding.
    """

    both_idle = 0.0  # the region contributes nothing
    self_alone = _quad_scalar(
        lambda p1: quadrature(lambda q: np.full_like(q, p1 - c), 0.0, t2, panels),
        t1,
        1.0,
        panels=panels,
    )
    opp_alone = _quad_scalar(
        lambda p1: quadrature(lambda q: q, t2, 1.0, panels),
        0.0,
        t1,
        panels=panels,
    )
    # both active: p2 >= t2 and p1 >= t1, opponent serves on p1 <= p2
    opp_serves = _quad_scalar(
        lambda p2: (
            quadrature(lambda q: np.full_like(q, p2 - c), t1, p2, panels)
            if p2 > t1
            else 0.0
        ),
        t2,
        1.0,
        breakpoints=(t1,),
        panels=panels,
    )
    self_serves = _quad_scalar(
        lambda p2: quadrature(lambda q: q - c, max(t1, p2), 1.0, panels),
        t2,
        1.0,
        breakpoints=(t1,),
        panels=panels,
    )
    return both_idle + self_alone + opp_alone + opp_serves + self_serves


def threshold_welfare_by_quadrature(
    t1: float, t2: float, c: float, panels: int = 16
) -> ThresholdWelfare:
    """Quadrature counterpart of ``bayesian.welfare_thresholds``.

    Server 2's share is server 1's share with the roles swapped (the game
    is symmetric).
    """
    c = check_cost(c)
    s1 = _server1_share_by_regions(t1, t2, c, panels)
    s2 = _server1_share_by_regions(t2, t1, c, panels)
    return ThresholdWelfare(s1, s2, s1 + s2)


# --------------------------------------------------------------------------
# Monte Carlo welfare


@dataclass(frozen=True)
class Estimate:
    """A Monte Carlo mean with its standard error and provenance."""

    mean: float
    stderr: float
    n: int
    seed: int
    algorithm: str = RNG_ALGORITHM


def threshold_activity(pair):
    """Array strategy 'active iff own p >= cutoff' for a (t1, t2) pair."""
    t1, t2 = float(pair[0]), float(pair[1])

    def activity(p1, p2, c):
        return (p1 >= t1).astype(float), (p2 >= t2).astype(float)

    return activity


def pointwise_strategy(fn):
    """Lift a scalar ``State -> Profile`` map to the array strategy contract.

    Evaluates the map state by state; meant for modest sample sizes and for
    checking vectorised strategies against their scalar definitions.
    """

    def activity(p1, p2, c):
        p1 = np.atleast_1d(np.asarray(p1, dtype=float))
        p2 = np.atleast_1d(np.asarray(p2, dtype=float))
        sigma1 = np.empty_like(p1)
        sigma2 = np.empty_like(p2)
        for i in range(p1.size):
            prof = fn(State(float(p1[i]), float(p2[i])), c)
            sigma1[i] = prof.sigma1
            sigma2[i] = prof.sigma2
        return sigma1, sigma2

    return activity


def _resolve_strategy(strategy):
    if callable(strategy):
        return strategy
    if isinstance(strategy, (tuple, list)) and len(strategy) == 2:
        return threshold_activity(strategy)
    raise TypeError(
        "strategy must be an array callable (p1, p2, c) -> (sigma1, sigma2), "
        "a (t1, t2) cutoff pair, or a scalar map wrapped by pointwise_strategy"
    )


def _profile_welfare(p1, p2, sigma1, sigma2, c):
    best = np.maximum(p1, p2)
    return (
        sigma1 * sigma2 * (2.0 * best - 2.0 * c)
        + sigma1 * (1.0 - sigma2) * (2.0 * p1 - c)
        + (1.0 - sigma1) * sigma2 * (2.0 * p2 - c)
    )


def mc_welfare(
    strategy,
    c: float,
    n: int = 1_000_000,
    seed: int = 0,
    dist1: Distribution | None = None,
    dist2: Distribution | None = None,
    shards: int = 1,
) -> Estimate:
    """Monte Carlo estimate of expected welfare under a strategy map.

    States are drawn i.i.d. (uniform unless per-server distributions are
    given); welfare per state is the total expected payoff of the selected
    (possibly mixed) profile, and regulations never change it, so the
    unregulated table is used.  stderr is sample std / sqrt(n).
    """
    c = check_cost(c)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if shards < 1:
        raise ValueError(f"shards must be >= 1, got {shards}")
    activity = _resolve_strategy(strategy)
    dist1 = dist1 or uniform_distribution()
    dist2 = dist2 or uniform_distribution()

    seeds = np.random.SeedSequence(seed).spawn(shards)
    base, extra = divmod(n, shards)
    total = 0.0
    total_sq = 0.0
    for k, child in enumerate(seeds):
        size = base + (1 if k < extra else 0)
        if size == 0:
            continue
        rng = np.random.default_rng(child)
        p1 = np.asarray(dist1.sample(rng, size), dtype=float)
        p2 = np.asarray(dist2.sample(rng, size), dtype=float)
        sigma1, sigma2 = activity(p1, p2, c)
        w = _profile_welfare(p1, p2, np.asarray(sigma1), np.asarray(sigma2), c)
        total += float(np.sum(w))
        total_sq += float(np.sum(w * w))
    mean = total / n
    if n > 1:
        variance = max(0.0, (total_sq - n * mean * mean) / (n - 1))
        stderr = float(np.sqrt(variance / n))
    else:
        stderr = 0.0
    return Estimate(mean=mean, stderr=stderr, n=n, seed=seed)


# --------------------------------------------------------------------------
# deviation checking


@dataclass(frozen=True)
class DeviationReport:
    """Largest unilateral improvement found when probing a strategy."""

    max_gain: float
    witness: tuple | None
    passed: bool
    eps: float


def _payoff_components(p1, p2, c, variant: str):
    """Vectorised per-profile payoffs; mirrors the tables in ``payoffs``."""
    best = np.maximum(p1, p2)
    zeros = np.zeros_like(p1)
    if variant == "unregulated":
        u1 = (best - c, p1 - c, p2, zeros)  # AA, AI, IA, II
        u2 = (best - c, p1, p2 - c, zeros)
    elif variant == "case2_reg":
        u1 = (best - c, p1 - c / 2.0, p2 - c / 2.0, zeros)
        u2 = (best - c, p1 - c / 2.0, p2 - c / 2.0, zeros)
    elif variant == "case3_reg":
        gate = best >= c / 2.0
        u1 = (
            best - c,
            np.where(gate, (p1 - p2) / 2.0, p1 - c),
            np.where(gate, (p1 + 3.0 * p2) / 2.0 - c, p2),
            zeros,
        )
        u2 = (
            best - c,
            np.where(gate, (3.0 * p1 + p2) / 2.0 - c, p1),
            np.where(gate, (p2 - p1) / 2.0, p2 - c),
            zeros,
        )
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return u1, u2


def _map_deviation_gains(p1, p2, sigma1, sigma2, c, variant):
    u1, u2 = _payoff_components(p1, p2, c, variant)
    u1_active = sigma2 * u1[0] + (1.0 - sigma2) * u1[1]
    u1_idle = sigma2 * u1[2] + (1.0 - sigma2) * u1[3]
    u2_active = sigma1 * u2[0] + (1.0 - sigma1) * u2[2]
    u2_idle = sigma1 * u2[1] + (1.0 - sigma1) * u2[3]
    have1 = sigma1 * u1_active + (1.0 - sigma1) * u1_idle
    have2 = sigma2 * u2_active + (1.0 - sigma2) * u2_idle
    gain1 = np.maximum(u1_active, u1_idle) - have1
    gain2 = np.maximum(u2_active, u2_idle) - have2
    return gain1, gain2, u1_active >= u1_idle, u2_active >= u2_idle


def _check_state_map(strategy, c, states, eps, variant):
    p1 = np.asarray([s[0] for s in states], dtype=float)
    p2 = np.asarray([s[1] for s in states], dtype=float)
    activity = _resolve_strategy(strategy)
    sigma1, sigma2 = activity(p1, p2, c)
    gain1, gain2, better1, better2 = _map_deviation_gains(
        p1, p2, np.asarray(sigma1), np.asarray(sigma2), c, variant
    )
    gains = np.concatenate([gain1, gain2])
    idx = int(np.argmax(gains))
    max_gain = float(gains[idx])
    witness = None
    if max_gain > 0.0:
        server = 1 if idx < p1.size else 2
        j = idx % p1.size
        better = (better1 if server == 1 else better2)[j]
        witness = (
            State(float(p1[j]), float(p2[j])),
            server,
            "active" if bool(better) else "inactive",
        )
    return DeviationReport(max_gain, witness, max_gain <= eps, eps)


def _threshold_gain_samples(p_grid, opp_draws, t_opp, c, regulated):
    q = opp_draws[np.newaxis, :]
    p = p_grid[:, np.newaxis]
    opp_active = q >= t_opp
    if regulated:
        gain = np.where(
            opp_active, np.maximum(p, q) - c - (q - c / 2.0), p - c / 2.0
        )
    else:
        gain = np.where(opp_active, np.maximum(p, q) - c - q, p - c)
    return gain


def _check_threshold_pair(pair, c, mode, eps, seed, regulated, dist, samples, p_step):
    t = (float(pair[0]), float(pair[1]))
    n_grid = int(round(1.0 / p_step))
    p_grid = np.linspace(0.0, 1.0, n_grid + 1)

    best_gain = 0.0
    witness = None
    eps_used = eps
    worst_se = 0.0
    rng = np.random.default_rng(seed)
    if mode == "sampled":
        dist = dist or uniform_distribution()

    for server in (1, 2):
        t_own = t[server - 1]
        t_opp = t[2 - server]
        if mode == "analytic_quadrature":
            means = np.array(
                [interim_activity_gain(p, t_opp, c, regulated) for p in p_grid]
            )
            ses = np.zeros_like(means)
        else:
            draws = np.asarray(dist.sample(rng, samples), dtype=float)
            g = _threshold_gain_samples(p_grid, draws, t_opp, c, regulated)
            means = g.mean(axis=1)
            ses = g.std(axis=1, ddof=1) / np.sqrt(samples)
        active = p_grid >= t_own
        available = np.where(active, -means, means)  # positive = profitable switch
        idx = int(np.argmax(available))
        worst_se = max(worst_se, float(np.max(ses)))
        if available[idx] > best_gain:
            best_gain = float(available[idx])
            witness = (server, float(p_grid[idx]), best_gain)
            if eps is None:
                eps_used = 1e-6 if mode == "analytic_quadrature" else 3.0 * float(ses[idx])

    if eps_used is None:  # no profitable point found anywhere and eps unset
        eps_used = 1e-6 if mode == "analytic_quadrature" else 3.0 * worst_se
    return DeviationReport(best_gain, witness, best_gain <= eps_used, eps_used)


def epsilon_nash_check(
    strategy,
    c: float,
    mode: str = "analytic_quadrature",
    eps: float | None = None,
    seed: int = 0,
    regulated: bool = False,
    dist: Distribution | None = None,
    variant: str = "unregulated",
    samples: int = 20_000,
    p_step: float = 0.005,
    state_step: float = 0.02,
    states=None,
) -> DeviationReport:
    """Probe a strategy for profitable unilateral deviations.

    Cutoff pairs: each server's interim activity gain is evaluated over an
    own-type grid against the opponent's cutoff -- by quadrature
    (``analytic_quadrature``, default eps 1e-6) or against opponent draws
    from ``dist`` (``sampled``, default eps = three standard errors at the
    worst point).  The report carries the largest gain available from
    switching away from the prescribed action.

    Strategy maps (array callables or ``pointwise_strategy`` wrappers) are
    checked pointwise for pure deviations at ``states``, at a state grid
    (analytic mode), or at sampled states; those gains are exact, so eps
    defaults to 1e-6.
    """
    c = check_cost(c)
    if mode not in ("analytic_quadrature", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")

    if isinstance(strategy, (tuple, list)) and not callable(strategy):
        return _check_threshold_pair(
            strategy, c, mode, eps, seed, regulated, dist, samples, p_step
        )

    if states is None:
        if mode == "analytic_quadrature":
            side = np.linspace(0.0, 1.0, int(round(1.0 / state_step)) + 1)
            g1, g2 = np.meshgrid(side, side, indexing="ij")
            states = np.column_stack([g1.ravel(), g2.ravel()])
        else:
            rng = np.random.default_rng(seed)
            states = rng.random((samples, 2))
    else:
        states = [(float(s[0]), float(s[1])) for s in states]
    return _check_state_map(strategy, c, states, 1e-6 if eps is None else eps, variant)
