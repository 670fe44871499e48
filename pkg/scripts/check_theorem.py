"""Exhaustive check of pn <= n//2 on connected triangle-free planar graphs, tier by tier."""

from __future__ import annotations

import argparse
import time
from collections import Counter

from tfgallai.decomp import path_number_exact, verify
from tfgallai.gen import enumerate_list
from tfgallai.io import graph6_encode


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=9)
    ap.add_argument("--nonplanar", action="store_true", help="also drop the planarity filter")
    args = ap.parse_args()

    print(f"{'n':>3} {'graphs':>7} {'pn histogram':<28} {'tight':>6} {'nodes':>9} {'secs':>6}")
    for n in range(2, args.max_n + 1):
        start = time.perf_counter()
        graphs = enumerate_list(n, triangle_free=True, planar=not args.nonplanar)
        hist, nodes, tight = Counter(), 0, []
        bound = n // 2 if not args.nonplanar else (n + 1) // 2
        for g in graphs:
            res = path_number_exact(g)
            assert res.optimal and verify(g, res.witness), graph6_encode(g)
            if res.path_number > bound:
                raise SystemExit(f"bound exceeded at n={n}: {graph6_encode(g)} pn={res.path_number}")
            hist[res.path_number] += 1
            nodes += res.nodes_explored
            if res.path_number == n // 2:
                tight.append(g)
        secs = time.perf_counter() - start
        shown = ", ".join(f"{k}:{v}" for k, v in sorted(hist.items()))
        print(f"{n:>3} {len(graphs):>7} {shown:<28} {len(tight):>6} {nodes:>9} {secs:>6.2f}")


if __name__ == "__main__":
    main()
