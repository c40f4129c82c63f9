"""Normalized densities of K2, K3, C4 in G(n, p) with p = n^(-1/3), over several seeds."""

import argparse
from fractions import Fraction

import mpmath

from sparselim.graph import named_graph
from sparselim.hom import hom_count_dp, normalized_density
from sparselim.limits import sample_gnp


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--seeds", default="1,2,3,4,5")
    args = ap.parse_args()

    with mpmath.workdps(40):
        p = Fraction(mpmath.nstr(mpmath.mpf(args.n) ** (-mpmath.mpf(1) / 3), 30))
    print(f"n={args.n} p={float(p):.6f}")
    print("seed  edges     t_p(K2)  t_p(K3)  t_p(C4)")
    for seed in (int(s) for s in args.seeds.split(",")):
        G = sample_gnp(args.n, p, seed)
        vals = [float(normalized_density(named_graph(f), G, p,
                                         hom=hom_count_dp(named_graph(f), G, budget=10**12)))
                for f in ("K2", "K3", "C4")]
        print(f"{seed:4d}  {G.edge_count:8d}  " + "  ".join(f"{v:7.4f}" for v in vals))


if __name__ == "__main__":
    main()
