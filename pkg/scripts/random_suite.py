"""Draw random (G, action, algebra) scenarios and tally the verdicts.

    python scripts/random_suite.py --scenarios 500 --seed 7
"""
from __future__ import annotations

import argparse
import dataclasses
import random
from collections import Counter

from condensa import action as ac
from condensa import library
from condensa.config import RandomSuiteConfig
from condensa.sampling import random_scenario


def run(cfg: RandomSuiteConfig):
    verdicts = Counter()
    extensions = Counter()
    for i in range(cfg.scenarios):
        sc = random_scenario(random.Random(cfg.seed + i), cfg)
        rep = ac.analyze_action(sc.action, sc.algebra)
        verdicts[rep.verdict] += 1
        if rep.obstruction is not None:
            extensions[library.identify(rep.obstruction.group)[0]] += 1
    return verdicts, extensions


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in dataclasses.fields(RandomSuiteConfig):
        p.add_argument("--" + f.name.replace("_", "-"), type=int, default=f.default)
    args = p.parse_args()
    cfg = RandomSuiteConfig(**{f.name: getattr(args, f.name) for f in dataclasses.fields(RandomSuiteConfig)})
    verdicts, extensions = run(cfg)
    print(f"{cfg.scenarios} scenarios, seed {cfg.seed}")
    for v in ("PRESERVED", "BROKEN", "FAILED"):
        print(f"  {v:<10} {verdicts[v]}")
    print("obstruction extensions:")
    for name, n in sorted(extensions.items(), key=lambda kv: (-kv[1], kv[0])):
        print(f"  {name:<16} {n}")


if __name__ == "__main__":
    main()
