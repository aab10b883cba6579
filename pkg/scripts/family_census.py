#!/usr/bin/env python3
"""Census of the bundled corpus: family, group order, longest length,
positive-root count, and f-values per odd component.

Group orders are skipped where breadth-first enumeration would be too
large; longest lengths come from one greedy game, so they are cheap even
for the big exceptional diagrams.
"""

from numbersgame import (
    Status,
    classify,
    enumerate_group,
    f_value,
    finite_type,
    generate_root_system,
    play,
)
from numbersgame.corpus import load_graph, preset_ids

ORDER_CAP = 60_000


def main():
    header = f"{'preset':16} {'family':12} {'|W|':>9} {'l(w0)':>6} {'|Phi+|':>7}  f-values"
    print(header)
    print("-" * len(header))
    for pid in preset_ids():
        g = load_graph(pid)
        tag = classify(g) if g.is_connected() else None
        family = tag.name if tag else "disconnected"
        rec = play(g, (1.0,) * g.n, step_cap=2000) if finite_type(g) else None
        if rec is not None and rec.status is Status.TERMINAL:
            longest = str(len(rec.firings))
            rs = generate_root_system(g)
            positives = str(len(rs)) if rs.complete else ">cap"
            fvals = []
            for comp in g.on_components():
                ok, _ = g.is_unital_on_cyclic(comp)
                fvals.append(str(f_value(rs, comp)) if ok and rs.complete else "-")
            table = enumerate_group(g, max_elements=ORDER_CAP)
            order = str(table.order) if table.complete else f">{ORDER_CAP}"
        else:
            longest, positives, order = "inf", "-", "inf"
            fvals = ["-"]
        print(f"{pid:16} {family:12} {order:>9} {longest:>6} {positives:>7}  {','.join(fvals)}")


if __name__ == "__main__":
    main()
