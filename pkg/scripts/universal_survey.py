"""Which extensions 1 -> N -> E -> E/N -> 1 of small groups split, and down to which subgroups.

    python scripts/universal_survey.py --max-order 16
"""
from __future__ import annotations

import argparse

from condensa import groups as gr
from condensa import library
from condensa.config import SearchConfig
from condensa.universal import UniversalScenario, analyze, cross_check_abelian


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-order", type=int, default=12)
    p.add_argument("--cap", type=int, default=SearchConfig().cap)
    args = p.parse_args()
    print(f"{'E':<12} {'N':<8} {'G':<8} {'verdict':<10} {'split':>5} {'classes':>7}  unbroken |H|  check")
    for name, _, E in library.small_groups():
        if not 1 < E.order <= args.max_order:
            continue
        for N in gr.cayley_subgroups(E, args.cap):
            if not 1 < len(N) < E.order or not gr.is_normal(E, N):
                continue
            sc = UniversalScenario.from_normal_subgroup(E, N)
            rep = analyze(sc, args.cap)
            Nc = gr.as_cayley(sc.N)
            check = ("ok" if cross_check_abelian(sc, args.cap) else "MISMATCH") if Nc.is_abelian else "-"
            sizes = sorted(len(H) for H in rep.unbroken_subgroups())
            print(f"{name:<12} {library.identify(Nc)[0]:<8} {library.identify(sc.G)[0]:<8} {rep.verdict:<10} "
                  f"{len(rep.splittings):>5} {len(rep.classes):>7}  {sizes}  {check}")


if __name__ == "__main__":
    main()
