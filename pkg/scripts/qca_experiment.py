"""Long quantum runs: norm drift, gauge-commutator size and field spread per step."""

import argparse
import math
import random

from gauge_ca.qca import QuantumState, ScatteringParams, check_q_invariance, mean_field, occupation_probabilities, qca_step


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--steps", type=int, default=40)
    p.add_argument("--size", type=int, default=4)
    p.add_argument("--mass", type=float, default=0.5)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--charge", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--every", type=int, default=5, help="print one row every this many steps")
    args = p.parse_args()

    params = ScatteringParams(args.mass, args.epsilon, args.charge, l_max=args.steps + 1)
    occ = [(0, 0)] * args.size
    occ[0] = (0, 1)
    occ[args.size // 2] = (1, 0)
    psi = QuantumState.basis(occ)
    rng = random.Random(args.seed)

    print(f"{'t':>4} {'terms':>6} {'|norm-1|':>10} {'commutator':>11} {'max|<l>|':>9} {'P(right@0)':>10}")
    for t in range(args.steps + 1):
        if t % args.every == 0:
            phi = [rng.uniform(0, 2 * math.pi) for _ in range(args.size)]
            comm = check_q_invariance(params, psi, phi)
            probs = occupation_probabilities(psi)
            field = max(abs(v) for v in mean_field(psi))
            print(f"{t:>4} {len(psi):>6} {abs(psi.norm() - 1):>10.2e} {comm:>11.2e} {field:>9.3f} {probs[0, 1]:>10.4f}")
        if t < args.steps:
            psi = qca_step(params, psi)


if __name__ == "__main__":
    main()
