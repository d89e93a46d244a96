"""Walk through the stage-game payoff tables and the two regulations.

Run: python3 demos/payoff_tables.py
"""

import itertools

from servergame import ACTIVE, INACTIVE, State
from servergame.payoffs import PAYOFF_VARIANTS

ACTIONS = (ACTIVE, INACTIVE)


def show_table(title, table, s, c):
    print(f"\n{title}  at state (p1={s.p1}, p2={s.p2}), cost c={c}")
    print(f"{'':>12} {'opp active':>18} {'opp inactive':>18}")
    for a1 in ACTIONS:
        cells = []
        for a2 in ACTIONS:
            u = table(s, a1, a2, c)
            cells.append(f"({u.u1:+.3f}, {u.u2:+.3f})")
        print(f"{a1.value:>12} {cells[0]:>18} {cells[1]:>18}")


def main():
    s, c = State(0.7, 0.4), 0.2
    print("Each server chooses to be active (cost c) or idle; a finished task")
    print("pays 1 to both, and the better of two active servers serves.")

    show_table("unregulated game", PAYOFF_VARIANTS["unregulated"], s, c)

    print("\nWith the c/2 subsidy the idle server compensates the working one,")
    print("so a lone server keeps serving down to lower success probabilities:")
    show_table("c/2 subsidy", PAYOFF_VARIANTS["case2_reg"], s, c)

    print("\nThe side payment c - (p1+p2)/2 kicks in once max(p1, p2) >= c/2 and")
    print("splits the surplus so that serving is individually worthwhile exactly")
    print("when it is socially worthwhile:")
    show_table("side payment", PAYOFF_VARIANTS["case3_reg"], State(0.8, 0.4), 0.6)

    print("\nBoth regulations are pure transfers: at every state and profile the")
    print("summed payoff is identical across the three tables.")
    worst = 0.0
    for p1, p2, c in [(0.7, 0.4, 0.2), (0.8, 0.4, 0.6), (0.35, 0.91, 0.5)]:
        s = State(p1, p2)
        base = [
            PAYOFF_VARIANTS["unregulated"](s, a1, a2, c).total
            for a1, a2 in itertools.product(ACTIONS, repeat=2)
        ]
        for name, table in PAYOFF_VARIANTS.items():
            totals = [
                table(s, a1, a2, c).total
                for a1, a2 in itertools.product(ACTIONS, repeat=2)
            ]
            worst = max(worst, max(abs(a - b) for a, b in zip(base, totals)))
    print(f"largest total-payoff difference across tables: {worst:.2e}")


if __name__ == "__main__":
    main()
