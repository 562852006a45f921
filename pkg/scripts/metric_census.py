"""Count metric groups up to isometry by order, with their étale algebras.

    python scripts/metric_census.py --max-order 32
"""
from __future__ import annotations

import argparse

from condensa.condense import condense, enumerate_etale
from condensa.metric import identify_metric
from condensa.sampling import forms_up_to_isometry


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-order", type=int, default=16)
    p.add_argument("--names", action="store_true", help="list the recognized theories of each order")
    args = p.parse_args()
    print(f"{'order':>5} {'classes':>8} {'algebras':>9} {'lagrangian':>11}")
    for n in range(1, args.max_order + 1):
        groups = forms_up_to_isometry(n)
        algs = lag = 0
        for M in groups:
            for A in enumerate_etale(M, cap=None):
                algs += 1
                lag += condense(M, A).result.order == 1
        print(f"{n:>5} {len(groups):>8} {algs:>9} {lag:>11}")
        if args.names:
            names = sorted({identify_metric(M) or "-" for M in groups})
            print("      " + ", ".join(names))


if __name__ == "__main__":
    main()
