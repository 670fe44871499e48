"""Run the rule engine over the enumerated corpus and report rule firings and slack."""

from __future__ import annotations

import argparse
from collections import Counter

from tfgallai.decomp import path_number_exact
from tfgallai.engine import decompose_gallai, replay, rules_used
from tfgallai.gen import enumerate_list


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--replay", action="store_true", help="replay every certificate")
    args = ap.parse_args()

    total = Counter()
    for n in range(2, args.max_n + 1):
        fired, slack = Counter(), Counter()
        graphs = enumerate_list(n, triangle_free=True, planar=True)
        for g in graphs:
            cert = decompose_gallai(g)
            if args.replay:
                assert replay(cert).to_json() == cert.to_json()
            fired.update(rules_used(cert))
            slack[len(cert.final) - path_number_exact(g).path_number] += 1
        total.update(fired)
        print(f"n={n}: {len(graphs)} graphs, firings {dict(sorted(fired.items()))}, "
              f"|final|-pn {dict(sorted(slack.items()))}")
    print(f"total firings {dict(sorted(total.items()))}")


if __name__ == "__main__":
    main()
