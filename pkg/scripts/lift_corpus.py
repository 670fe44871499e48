"""Plant random feasible reducing schemes, lift decompositions and tabulate the outcome."""

from __future__ import annotations

import argparse
import random
from collections import Counter

from tfgallai.decomp import greedy_decomposition, path_number_exact, verify
from tfgallai.frs import compute_reduction, lift
from tfgallai.gen import plant_scheme
from tfgallai.graph import is_planar


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=1000)
    ap.add_argument("--max-n", type=int, default=12)
    args = ap.parse_args()

    stats = Counter()
    for seed in range(args.seeds):
        g, s = plant_scheme(seed, max_n=args.max_n)
        out = compute_reduction(g, s)
        d = greedy_decomposition(out.reduced, random.Random(seed)) if out.reduced.m else []
        d_h = path_number_exact(s.h_graph(g.n)).witness.paths
        got = lift(g, s, d, d_h)
        stats["schemes"] += 1
        stats["with A"] += bool(s.A)
        stats["with L"] += bool(s.L)
        stats[f"r={s.r}"] += 1
        stats["lift verified"] += bool(verify(g, got)) and len(got) == len(d) + len(d_h)
        stats["reduced planar"] += is_planar(out.reduced)
        stats["isolated vertices"] += len(out.isolated)
    for key, value in stats.items():
        print(f"{key:>18}: {value}")


if __name__ == "__main__":
    main()
