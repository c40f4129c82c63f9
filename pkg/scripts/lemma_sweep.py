"""Random step kernels: slack in cut_norm(W-1)^4 <= t(C4, W-1), and C4 excess after normalization."""

import argparse
import random

from sparselim.kernels import edge_density_kernel, lemma_check, normalize_edge_density, random_step_kernel, rigidity_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-blocks", type=int, default=5)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    tight, ratios, excess = 0, [], []
    for _ in range(args.count):
        W = random_step_kernel(rng, max_blocks=args.max_blocks)
        chk = lemma_check(W)
        assert chk.holds
        if chk.rhs:
            ratios.append(float(chk.lhs / chk.rhs))
        tight += chk.lhs == chk.rhs
        if edge_density_kernel(W) > 0:
            excess.append(float(rigidity_check(normalize_edge_density(W)).t_c4 - 1))
    ratios.sort()
    print(f"{args.count} kernels; lemma tight on {tight}")
    print(f"lhs/rhs: median {ratios[len(ratios) // 2]:.4f}, max {ratios[-1]:.4f}")
    nonzero = sorted(x for x in excess if x > 0)
    print(f"t(C4)-1 after normalization: {len(excess) - len(nonzero)} zero (constant kernels), "
          f"smallest positive {nonzero[0]:.3e}")


if __name__ == "__main__":
    main()
