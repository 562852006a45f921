"""Command-line entry point: ``condensa <command> [scenario.json | example-name] [--json] [--cap N]``.

``induce`` also takes ``--lambda i`` (which equivariant structure) and ``--adjust``.

Exit codes: 0 on success (the verdict is in the report), 2 on a validation
error, 3 when a size cap is exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import catalog
from . import report as rp
from .errors import DEFAULT_CAP, CapExceeded, ValidationError
from .scenario import Scenario, ScenarioError, field_line

COMMANDS = ("modular-data", "etale", "condense", "obstruction", "splittings", "induce", "universal")
EXIT_OK, EXIT_INVALID, EXIT_CAP = 0, 2, 3


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="condensa", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS + ("example",))
    p.add_argument("scenario", nargs="?",
                   help="scenario file, or a built-in example name (for `example`, the example to run)")
    p.add_argument("--json", action="store_true", help="emit a machine-readable report")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="size cap for exhaustive searches")
    p.add_argument("--lambda", dest="lam", type=int, default=0,
                   help="index of the equivariant structure used by `induce`")
    p.add_argument("--adjust", action="store_true",
                   help="with `induce`, correct omega by the lift of the chosen structure so it always descends")
    p.add_argument("--dump", action="store_true", help="with `example`, print the scenario file instead")
    return p


def _load(arg: str) -> tuple[Scenario, str | None]:
    if arg in catalog.BUILTINS and not os.path.exists(arg):
        return catalog.BUILTINS[arg], None
    try:
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ScenarioError(f"cannot read scenario {arg!r}: {e.strerror}; "
                            f"built-in examples are {', '.join(catalog.BUILTINS)}") from e
    return Scenario.loads(text), text


def _require(sc: Scenario, *parts):
    for part in parts:
        if part == "metric" and sc.metric is None:
            raise ScenarioError("this command needs a metric scenario", field="kind")
        if part == "algebra" and sc.algebra is None:
            raise ScenarioError("missing algebra", field="algebra")
        if part == "action" and sc.action is None:
            raise ScenarioError("missing action", field="action")
        if part == "universal" and sc.universal is None:
            raise ScenarioError("this command needs a universal scenario", field="kind")


def _w_entries(sc: Scenario, action):
    if sc.action is None or sc.action.w is None:
        return None
    G = action.G
    out = []
    for i, (g, h, v) in enumerate(sc.action.w):
        try:
            out.append((G.index(g), G.index(h), v))
        except (KeyError, ValueError):
            raise ScenarioError(f"unknown group element in w entry {i}", field=f"action.w[{i}]") from None
    return out


def run(command: str, sc: Scenario, cap=DEFAULT_CAP, lam=0, adjust=False):
    """Dispatch one command on a loaded scenario; returns (lines, data)."""
    if command == "universal":
        _require(sc, "universal")
        return rp.universal_report(sc.built.universal, cap)
    _require(sc, "metric")
    b = sc.built
    M = b.metric
    if command == "modular-data":
        return rp.modular_data_report(M, cap)
    if command == "etale":
        return rp.etale_report(M, sc.reference, sc.notes, cap)
    _require(sc, "algebra")
    if command == "condense":
        return rp.condense_report(M, b.algebra, cap)
    _require(sc, "action")
    w = _w_entries(sc, b.action)
    if command == "obstruction":
        return rp.obstruction_report(b.action, b.algebra, w, cap)
    if command == "splittings":
        return rp.splittings_report(b.action, b.algebra, w, cap)
    if command == "induce":
        return rp.induce_report(b.action, b.algebra, lam, cap, adjust)
    raise ValueError(command)  # pragma: no cover - argparse restricts choices


def _emit(lines, data, as_json, header=None, out=None):
    out = out or sys.stdout
    if as_json:
        if header:
            data = {"scenario": header, **data}
        out.write(json.dumps(data, indent=2, ensure_ascii=False, sort_keys=True) + "\n")
    else:
        if header:
            out.write(f"[{header}]\n")
        out.write("\n".join(lines) + "\n")


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    text = None
    try:
        if args.command == "example":
            if not args.scenario:
                for name, s in catalog.BUILTINS.items():
                    sys.stdout.write(f"{name:<16} {s.command:<12} {s.description}\n")
                return EXIT_OK
            try:
                sc = catalog.get(args.scenario)
            except KeyError as e:
                raise ScenarioError(e.args[0], field="scenario") from None
            if args.dump:
                sys.stdout.write(sc.dumps())
                return EXIT_OK
            lines, data = run(sc.command, sc, args.cap, args.lam, args.adjust)
            _emit(lines, data, args.json, header=f"{sc.name}: {sc.command}")
            return EXIT_OK
        if not args.scenario:
            raise ScenarioError("a scenario file or example name is required", field="scenario")
        sc, text = _load(args.scenario)
        lines, data = run(args.command, sc, args.cap, args.lam, args.adjust)
        _emit(lines, data, args.json)
        return EXIT_OK
    except CapExceeded as e:
        sys.stderr.write(f"error: cap exceeded: {e}\n")
        return EXIT_CAP
    except ValidationError as e:
        where = ""
        if e.field:
            where = f" in field {e.field}"
            line = field_line(text, e.field) if text else None
            if line:
                where += f" (line {line})"
        sys.stderr.write(f"error{where}: {e}\n")
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
