"""Local invariance of the gauged rule under both link conventions, for N = 2..4.

Counts every failing case rather than stopping at the first one.
"""

import argparse
import itertools

from gauge_ca.classical_gi_ca import gauged_rule
from gauge_ca.gauge_group import Convention, symmetric_group, transform_link
from gauge_ca.lattice import Cell


def failures(n: int, convention: Convention) -> tuple[int, int]:
    group = symmetric_group(n)
    rule = gauged_rule(n, convention)
    cells = [Cell(a, b) for a in range(n) for b in range(n)]
    total = bad = 0
    for cx, a, cy, gx, gy in itertools.product(cells, group, cells, group, group):
        total += 1
        lhs = rule.local(gx(cx.right), transform_link(gx, a, gy, convention), gy(cy.left))
        l0, r0 = rule.local(cx.right, a, cy.left)
        bad += lhs != (gx(l0), gy(r0))
    return total, bad


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=3)
    args = p.parse_args()
    print(f"{'N':>2} {'convention':<10} {'cases':>9} {'failing':>9}")
    for n in range(2, args.max_n + 1):
        for conv in Convention:
            total, bad = failures(n, conv)
            print(f"{n:>2} {conv.value:<10} {total:>9} {bad:>9}")


if __name__ == "__main__":
    main()
