"""Rewrite tests/golden from the current CLI output. Review the diff before committing."""
from __future__ import annotations

import contextlib
import io
import pathlib

from condensa import catalog, cli

ROOT = pathlib.Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"

# (file stem, argv) pairs; every built-in runs its own command in text and JSON form
EXTRA = [
    ("toric-modular-data", ["modular-data", "toric-frac-m"]),
    ("landau-modular-data", ["modular-data", "landau"]),
    ("toric-frac-e-obstruction", ["obstruction", "toric-frac-e"]),
    ("dic12-etale", ["etale", "dic12"]),
    ("zvec-z4-condense", ["condense", "z4-induce"]),
    ("z4-induce-lambda1", ["induce", "z4-induce", "--lambda", "1"]),
    ("z4-induce-adjust-lambda1", ["induce", "z4-induce", "--lambda", "1", "--adjust"]),
    ("toric-frac-e-induce-adjust.json", ["induce", "toric-frac-e", "--lambda", "1", "--adjust", "--json"]),
]


def cases():
    for name, sc in catalog.BUILTINS.items():
        yield name, [sc.command, name]
        yield name + ".json", [sc.command, name, "--json"]
    yield from EXTRA


def capture(argv) -> str:
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = cli.main(argv)
    if code != 0:
        raise SystemExit(f"{argv}: exit code {code}")
    return out.getvalue()


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for stem, argv in cases():
        path = GOLDEN / (stem if stem.endswith(".json") else stem + ".txt")
        path.write_text(capture(argv), encoding="utf-8")
        print(f"wrote {path.relative_to(ROOT)}")


if __name__ == "__main__":
    main()
