"""Write limit tables (CSV) for the pattern corpus on K_n^(x n^2)."""

import argparse
import time
from pathlib import Path

from sparselim.limits import corpus, limit_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-list", default="8,16,32,64,128,256")
    ap.add_argument("--bits", type=int, default=128)
    ap.add_argument("--p-convention", choices=["paper", "pairs"], default="paper")
    ap.add_argument("--out", default="results/limit_tables")
    args = ap.parse_args()

    ns = [int(x) for x in args.n_list.split(",")]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, F in corpus().items():
        start = time.perf_counter()
        rep = limit_table(F, ns, args.bits, args.p_convention, name=name)
        (out / f"{name}.csv").write_text(rep.to_csv())
        last = rep.rows[-1]
        err = "n/a" if last.abs_err is None else f"{float(last.abs_err):.3e}"
        print(f"{name:5s} target {last.target:3d}  |residual| at n={last.n}: {err}"
              f"  ({time.perf_counter() - start:.3f}s)")


if __name__ == "__main__":
    main()
