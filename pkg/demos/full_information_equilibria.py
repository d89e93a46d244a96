"""Equilibrium structure with communication but no cooperation: the
region map, the unstable mixed profile, and best/worst equilibrium welfare.

Run: python3 demos/full_information_equilibria.py
"""

import numpy as np

from servergame import (
    State,
    classify_state,
    mixed_equilibrium,
    payoff_mixed,
    select_equilibrium,
    welfare_case1,
    welfare_case3_max,
    welfare_case3_min,
)
from servergame.full_info import EquilibriumKind

GLYPH = {
    EquilibriumKind.BOTH_INACTIVE: ".",
    EquilibriumKind.ONLY_SERVER_1: "1",
    EquilibriumKind.ONLY_SERVER_2: "2",
    EquilibriumKind.CONTENTION: "#",
    EquilibriumKind.BOUNDARY_MIX_1: "b",
    EquilibriumKind.BOUNDARY_MIX_2: "b",
}


def main():
    c = 0.3
    print(f"Equilibrium regions over the state square at c = {c}")
    print("(rows: p1 from 1.0 down to 0; cols: p2 from 0 to 1.0)")
    print("  . nobody serves   1/2 that server alone   # contention   b knife edge\n")
    for p1 in np.linspace(1.0, 0.0, 21):
        row = "".join(
            GLYPH[classify_state(State(round(p1, 2), round(p2, 2)), c).kind]
            for p2 in np.linspace(0.0, 1.0, 41)
        )
        print("   " + row)

    print("\nInside contention (#) both 'I serve, you rest' profiles are")
    print("equilibria, plus one mixed profile that leaves each side indifferent:")
    s = State(0.8, 0.6)
    sigma1, sigma2 = mixed_equilibrium(s, c)
    print(f"  state (0.8, 0.6), c={c}: sigma = ({sigma1:.4f}, {sigma2:.4f})")
    u_active = payoff_mixed(s, 1.0, sigma2, c).u1
    u_idle = payoff_mixed(s, 0.0, sigma2, c).u1
    print(f"  server 1 active {u_active:+.6f} vs idle {u_idle:+.6f}  (indifferent)")
    up = payoff_mixed(s, sigma1 + 0.01, 1.0, c).u2 - payoff_mixed(s, sigma1 + 0.01, 0.0, c).u2
    down = payoff_mixed(s, sigma1 - 0.01, 1.0, c).u2 - payoff_mixed(s, sigma1 - 0.01, 0.0, c).u2
    print(
        "  nudge sigma1 by +/-0.01 and server 2's active-minus-idle gap flips "
        f"({up:+.4f} vs {down:+.4f}): the mix is unstable."
    )

    print("\nThe multiplicity matters for welfare. Handing contention to the")
    print("better server is the best equilibrium, to the worse server the worst:")
    print(f"{'c':>6} {'cooperative':>12} {'best eq':>9} {'worst eq':>9}")
    for cc in (0.1, 0.3, 0.5, 0.7, 0.9):
        print(
            f"{cc:>6.2f} {welfare_case1(cc):>12.4f} "
            f"{welfare_case3_max(cc):>9.4f} {welfare_case3_min(cc):>9.4f}"
        )
    s = State(0.8, 0.6)
    print(
        f"\nselect_equilibrium at (0.8, 0.6), c=0.3: "
        f"max -> {select_equilibrium(s, 0.3, 'max_welfare')}, "
        f"min -> {select_equilibrium(s, 0.3, 'min_welfare')}"
    )
    print("Even the best equilibrium loses to cooperation: servers only serve")
    print("above cost c, not above c/2, because the lone server pays the whole")
    print("cost while both collect the reward.")


if __name__ == "__main__":
    main()
