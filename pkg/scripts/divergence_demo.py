#!/usr/bin/env python3
"""Watch the two non-terminating schemes grow.

Prints the pumped node values for loops (closed form next to simulation)
and the invariant-preserving rounds on the four-cycle with one label-5
edge.
"""

from numbersgame import four_cycle_step, loop_divergence
from numbersgame.corpus import load_graph, unit_loop


def main():
    for n, product in [(3, 1.0), (3, 8.0), (5, 8.0)]:
        g = unit_loop(n, product)
        scheme = loop_divergence(g)
        print(f"loop n={n}, cycle product {scheme.cycle_product:g}")
        for k in range(1, 6):
            sim = scheme.simulate(g, k)
            pred = scheme.predicted(k)
            first = scheme.loop_order[0]
            print(f"  k={k}: simulated {sim[first]:.6g}, predicted {pred[first]:.6g}")

    g = load_graph("four-cycle-m5")
    lam = (1.0, 0.0, 0.0, 0.0)
    print("four-cycle rounds from (1,0,0,0):")
    for k in range(1, 9):
        meets, lam = four_cycle_step(g, lam)
        assert meets
        print(f"  round {k}: " + ", ".join(f"{v:.4g}" for v in lam))


if __name__ == "__main__":
    main()
