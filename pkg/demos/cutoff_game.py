"""Cutoff strategies without communication: best responses, the unique
equilibrium, and what the c/2 subsidy buys.

Run: python3 demos/cutoff_game.py
"""

import math

from servergame import (
    best_response_fixed_point,
    best_response_threshold,
    nash_threshold,
    nash_threshold_general,
    optimal_thresholds,
    power_distribution,
    uniform_distribution,
    welfare_thresholds,
)
from servergame.bayesian import FixedPointResult
from servergame.oracle import grid_best_response


def main():
    c = 0.25
    print("Neither server sees the other's success probability, only its own,")
    print("plus the opponent's cutoff. Best responses are again cutoffs:\n")
    print(f"{'opponent cutoff':>16} {'best response':>14} {'grid oracle':>12}")
    for t_opp in (0.0, 0.2, math.sqrt(c), 0.8, 1.0):
        closed = best_response_threshold(t_opp, c)
        grid = grid_best_response(t_opp, c, step=1e-3)
        print(f"{t_opp:>16.4f} {closed:>14.4f} {grid:>12.4f}")

    print("\nRaw best-response dynamics bounce around the fixed point, so the")
    print("iterator averages each step with the current iterate:")
    trace = []
    t = 0.0
    for _ in range(6):
        result = best_response_fixed_point(c, start=t, max_iter=1)
        trace.append(result.threshold)
        t = result.threshold
    print("  damped iterates from 0:", ", ".join(f"{x:.6f}" for x in trace))
    final: FixedPointResult = best_response_fixed_point(c, start=0.0)
    print(
        f"  converged to {final.threshold:.12f} in {final.iterations} steps "
        f"(sqrt(c) = {math.sqrt(c):.12f})"
    )

    print("\nEquilibrium vs the welfare-optimal cutoff pair:")
    print(f"{'c':>6} {'equilibrium':>12} {'optimal':>9} {'W(eq)':>9} {'W(opt)':>9}")
    for cc in (0.1, 0.25, 0.5, 0.8):
        ne = nash_threshold(cc)
        opt = optimal_thresholds(cc)
        w_ne = welfare_thresholds(ne.t1, ne.t2, cc).total
        w_opt = welfare_thresholds(opt.t1, opt.t2, cc).total
        print(
            f"{cc:>6.2f} {ne.t1:>12.4f} {opt.t1:>9.4f} {w_ne:>9.4f} {w_opt:>9.4f}"
        )
    print("\nServers are too conservative on their own: the equilibrium cutoff")
    print("sqrt(c) exceeds the optimal sqrt(c/2). The c/2 subsidy moves the")
    print("equilibrium exactly onto the optimal pair:")
    for cc in (0.25, 0.5):
        reg = nash_threshold(cc, regulated=True)
        print(f"  c={cc}: regulated equilibrium cutoff {reg.t1:.4f} = sqrt(c/2)")

    print("\nFor a general shared state distribution F the equilibrium cutoff h")
    print("solves h F(h) = c:")
    for dist, cc in ((uniform_distribution(), 0.25), (power_distribution(2), 0.125)):
        h = nash_threshold_general(dist, cc)
        print(f"  {dist.name:>9}, c={cc}:  h = {h:.6f}")


if __name__ == "__main__":
    main()
