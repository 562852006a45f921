"""Scenario files: JSON descriptions of a metric group, an algebra and an action, or of an extension.

The in-memory form is a tree of frozen dataclasses holding only plain data, so
that ``Scenario.from_json(s.to_json()) == s``. Everything mathematical is
rebuilt and revalidated by ``Scenario.build()``. The schema is documented in
docs/scenario_schema.md.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

from . import cohomology as co
from . import groups as gr
from . import library
from .action import CategoricalAction, make_action
from .condense import EtaleAlgebra, make_etale
from .errors import ValidationError
from .metric import (Isometry, MetricGroup, coordinate_labels, deligne_product, drinfeld_double_abelian,
                     make_metric_group, trivial_metric_group)
from .qz import QZ
from .universal import UniversalScenario


class ScenarioError(ValidationError):
    """A scenario file is malformed; ``field`` is a dotted path such as ``action.omega[0].value``."""


def _fail(path, msg):
    raise ScenarioError(f"{path}: {msg}", field=path)


def _expect(obj, types, path, what):
    if not isinstance(obj, types):
        _fail(path, f"expected {what}, got {type(obj).__name__}")
    return obj


def _int_list(obj, path) -> tuple[int, ...]:
    _expect(obj, list, path, "a list of integers")
    for i, v in enumerate(obj):
        if isinstance(v, bool) or not isinstance(v, int):
            _fail(f"{path}[{i}]", f"expected an integer, got {v!r}")
    return tuple(obj)


def _element(obj, path):
    """An element written as a label or a coordinate list."""
    if isinstance(obj, str):
        return obj
    return _int_list(obj, path)


def _element_json(x):
    return x if isinstance(x, str) else list(x)


def _check_keys(d, allowed, path):
    extra = sorted(set(d) - set(allowed))
    if extra:
        _fail(f"{path}.{extra[0]}" if path else extra[0], "unknown field")


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class GroupSpec:
    """Exactly one of ``cyclic``, ``abelian``, ``library`` or ``table``."""

    cyclic: int | None = None
    abelian: tuple[int, ...] | None = None
    library: str | None = None
    table: tuple[tuple[int, ...], ...] | None = None
    labels: tuple[str, ...] | None = None

    @classmethod
    def from_json(cls, d, path="group") -> "GroupSpec":
        _expect(d, dict, path, "an object")
        _check_keys(d, ("cyclic", "abelian", "library", "table", "labels"), path)
        kinds = [k for k in ("cyclic", "abelian", "library", "table") if k in d]
        if len(kinds) != 1:
            _fail(path, "give exactly one of cyclic, abelian, library, table")
        k = kinds[0]
        labels = None
        if "labels" in d:
            labels = tuple(_expect(d["labels"], list, f"{path}.labels", "a list of strings"))
        if k == "cyclic":
            n = d["cyclic"]
            if isinstance(n, bool) or not isinstance(n, int) or n < 1:
                _fail(f"{path}.cyclic", "expected a positive integer")
            return cls(cyclic=n, labels=labels)
        if k == "abelian":
            return cls(abelian=_int_list(d["abelian"], f"{path}.abelian"), labels=labels)
        if k == "library":
            return cls(library=_expect(d["library"], str, f"{path}.library", "a group name"), labels=labels)
        rows = _expect(d["table"], list, f"{path}.table", "a list of rows")
        return cls(table=tuple(_int_list(r, f"{path}.table[{i}]") for i, r in enumerate(rows)), labels=labels)

    def to_json(self) -> dict:
        out: dict[str, Any] = {}
        if self.cyclic is not None:
            out["cyclic"] = self.cyclic
        if self.abelian is not None:
            out["abelian"] = list(self.abelian)
        if self.library is not None:
            out["library"] = self.library
        if self.table is not None:
            out["table"] = [list(r) for r in self.table]
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    def build(self, path="group") -> gr.CayleyGroup:
        try:
            if self.cyclic is not None:
                G = gr.cyclic_group(self.cyclic)
            elif self.abelian is not None:
                G = gr.FiniteAbelianGroup(self.abelian).to_cayley()
            elif self.library is not None:
                try:
                    G = library.get(self.library)
                except KeyError:
                    names = ", ".join(n for n, _, _ in library.small_groups())
                    _fail(f"{path}.library", f"unknown group {self.library!r}; known: {names}")
            else:
                G = gr.CayleyGroup(self.table)
        except ScenarioError:
            raise
        except ValidationError as e:
            _fail(path, str(e))
        if self.labels is not None:
            if len(self.labels) != G.order or len(set(self.labels)) != G.order:
                _fail(f"{path}.labels", f"need {G.order} distinct labels")
            G = gr.CayleyGroup(G.table, G.identity, self.labels, check=False)
        return G


def _group_element(G, spec, path) -> int:
    try:
        if isinstance(spec, str):
            return G.index(spec)
        _fail(path, "group elements are written by label")
    except (KeyError, ValueError):
        labels = ", ".join(G.label(i) for i in range(G.order))
        _fail(path, f"unknown group element {spec!r}; labels are {labels}")


# ---------------------------------------------------------------------------
# metric groups


@dataclass(frozen=True)
class MetricSpec:
    """One of: ``double`` (Drinfeld double of an abelian group), ``factors`` with a
    ``q`` table in lexicographic element order, ``product`` of specs, or ``trivial``.
    ``labels`` lists one name per element; ``names`` names the coordinates instead."""

    double: tuple[int, ...] | None = None
    factors: tuple[int, ...] | None = None
    q: tuple[str, ...] | None = None
    product: tuple["MetricSpec", ...] | None = None
    trivial: bool = False
    labels: tuple[str, ...] | None = None
    names: tuple[str, ...] | None = None

    @classmethod
    def from_json(cls, d, path="metric") -> "MetricSpec":
        _expect(d, dict, path, "an object")
        _check_keys(d, ("double", "factors", "q", "product", "trivial", "labels", "names"), path)
        kinds = [k for k in ("double", "factors", "product", "trivial") if k in d]
        if len(kinds) != 1:
            _fail(path, "give exactly one of double, factors (with q), product, trivial")
        labels = names = None
        if "labels" in d:
            labels = tuple(_expect(d["labels"], list, f"{path}.labels", "a list of strings"))
        if "names" in d:
            names = tuple(_expect(d["names"], list, f"{path}.names", "a list of strings"))
        k = kinds[0]
        if k == "double":
            return cls(double=_int_list(d["double"], f"{path}.double"), labels=labels, names=names)
        if k == "factors":
            if "q" not in d:
                _fail(f"{path}.q", "missing q table")
            qs = _expect(d["q"], list, f"{path}.q", "a list of \"num/den\" strings")
            for i, v in enumerate(qs):
                if not isinstance(v, str):
                    _fail(f"{path}.q[{i}]", f"Q/Z values are strings like \"1/4\", got {v!r}")
                try:
                    QZ.parse(v)
                except (ValueError, TypeError, ZeroDivisionError) as e:
                    _fail(f"{path}.q[{i}]", str(e))
            return cls(factors=_int_list(d["factors"], f"{path}.factors"), q=tuple(qs), labels=labels, names=names)
        if k == "product":
            parts = _expect(d["product"], list, f"{path}.product", "a list of metric specs")
            return cls(product=tuple(cls.from_json(p, f"{path}.product[{i}]") for i, p in enumerate(parts)),
                       labels=labels, names=names)
        if d["trivial"] is not True:
            _fail(f"{path}.trivial", "expected true")
        return cls(trivial=True)

    def to_json(self) -> dict:
        out: dict[str, Any] = {}
        if self.double is not None:
            out["double"] = list(self.double)
        if self.factors is not None:
            out["factors"] = list(self.factors)
            out["q"] = list(self.q)
        if self.product is not None:
            out["product"] = [p.to_json() for p in self.product]
        if self.trivial:
            out["trivial"] = True
        if self.names is not None:
            out["names"] = list(self.names)
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    def build(self, path="metric") -> MetricGroup:
        try:
            if self.trivial:
                M = trivial_metric_group()
            elif self.double is not None:
                M = drinfeld_double_abelian(gr.FiniteAbelianGroup(self.double), cap=None)
            elif self.factors is not None:
                M = make_metric_group(gr.FiniteAbelianGroup(self.factors), self.q)
            else:
                M = deligne_product(*(p.build(f"{path}.product[{i}]") for i, p in enumerate(self.product)))
        except ScenarioError:
            raise
        except ValidationError as e:
            sub = f".{e.field}" if e.field in ("q",) else ""
            _fail(path + sub, str(e))
        labels = self.labels
        if self.names is not None:
            if len(self.names) != M.group.rank:
                _fail(f"{path}.names", f"need one name per coordinate ({M.group.rank})")
            labels = coordinate_labels(M.group, self.names)
        if labels is not None:
            if len(labels) != M.order or len(set(labels)) != M.order:
                _fail(f"{path}.labels", f"need {M.order} distinct labels")
            M = make_metric_group(M.group, M.q, labels)
        return M


def _metric_element(M: MetricGroup, spec, path):
    try:
        return M.parse_element(spec)
    except ValidationError as e:
        _fail(path, str(e))


# ---------------------------------------------------------------------------
# actions


@dataclass(frozen=True)
class ActionSpec:
    """``alpha``: (group element, images of the metric group's standard generators);
    ``omega``: nonzero entries (g, h, element); ``w``: optional direct cocycle in
    character coordinates, replacing the one computed from omega."""

    group: GroupSpec
    alpha: tuple[tuple[str, tuple], ...] = ()
    omega: tuple[tuple[str, str, Any], ...] = ()
    w: tuple[tuple[str, str, tuple[int, ...]], ...] | None = None

    @classmethod
    def from_json(cls, d, path="action") -> "ActionSpec":
        _expect(d, dict, path, "an object")
        _check_keys(d, ("group", "alpha", "omega", "w"), path)
        if "group" not in d:
            _fail(f"{path}.group", "missing")
        group = GroupSpec.from_json(d["group"], f"{path}.group")
        alpha = []
        al = _expect(d.get("alpha", {}), dict, f"{path}.alpha", "an object mapping group elements to images")
        for g, imgs in al.items():
            p = f"{path}.alpha.{g}"
            imgs = _expect(imgs, list, p, "a list of images")
            alpha.append((g, tuple(_element(x, f"{p}[{i}]") for i, x in enumerate(imgs))))
        omega = []
        for i, ent in enumerate(_expect(d.get("omega", []), list, f"{path}.omega", "a list of entries")):
            p = f"{path}.omega[{i}]"
            _expect(ent, dict, p, "an object with g, h, value")
            _check_keys(ent, ("g", "h", "value"), p)
            for k in ("g", "h", "value"):
                if k not in ent:
                    _fail(f"{p}.{k}", "missing")
            omega.append((_expect(ent["g"], str, f"{p}.g", "a label"), _expect(ent["h"], str, f"{p}.h", "a label"),
                          _element(ent["value"], f"{p}.value")))
        w = None
        if "w" in d:
            w = []
            for i, ent in enumerate(_expect(d["w"], list, f"{path}.w", "a list of entries")):
                p = f"{path}.w[{i}]"
                _expect(ent, dict, p, "an object with g, h, value")
                _check_keys(ent, ("g", "h", "value"), p)
                w.append((_expect(ent.get("g"), str, f"{p}.g", "a label"),
                          _expect(ent.get("h"), str, f"{p}.h", "a label"),
                          _int_list(ent.get("value"), f"{p}.value")))
            w = tuple(w)
        return cls(group, tuple(alpha), tuple(omega), w)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"group": self.group.to_json()}
        out["alpha"] = {g: [_element_json(x) for x in imgs] for g, imgs in self.alpha}
        out["omega"] = [{"g": g, "h": h, "value": _element_json(v)} for g, h, v in self.omega]
        if self.w is not None:
            out["w"] = [{"g": g, "h": h, "value": list(v)} for g, h, v in self.w]
        return out

    def build(self, M: MetricGroup, path="action") -> CategoricalAction:
        G = self.group.build(f"{path}.group")
        images = {}
        for g, imgs in self.alpha:
            p = f"{path}.alpha.{g}"
            gi = _group_element(G, g, p)
            if len(imgs) != M.group.rank:
                _fail(p, f"need {M.group.rank} images, one per standard generator of the metric group")
            ims = tuple(_metric_element(M, x, f"{p}[{i}]") for i, x in enumerate(imgs))
            images[gi] = Isometry(M.group, M.group, ims)
        table = [[M.group.zero] * G.order for _ in range(G.order)]
        seen = set()
        for i, (g, h, v) in enumerate(self.omega):
            p = f"{path}.omega[{i}]"
            key = (_group_element(G, g, f"{p}.g"), _group_element(G, h, f"{p}.h"))
            if key in seen:
                _fail(p, "repeated entry")
            seen.add(key)
            table[key[0]][key[1]] = _metric_element(M, v, f"{p}.value")
        try:
            omega = co.Cochain2.from_function(G, M.group, lambda g, h: table[g][h])
        except ValidationError as e:
            _fail(f"{path}.omega", str(e))
        try:
            return make_action(G, M, images, omega)
        except ValidationError as e:
            _fail(f"{path}.{e.field or 'alpha'}", str(e))


# ---------------------------------------------------------------------------
# universal scenarios


@dataclass(frozen=True)
class UniversalSpec:
    """An extension given by a group E and generators (labels) of the normal subgroup N."""

    group: GroupSpec
    kernel: tuple[str, ...]

    @classmethod
    def from_json(cls, d, path="universal") -> "UniversalSpec":
        _expect(d, dict, path, "an object")
        _check_keys(d, ("group", "kernel"), path)
        for k in ("group", "kernel"):
            if k not in d:
                _fail(f"{path}.{k}", "missing")
        kern = _expect(d["kernel"], list, f"{path}.kernel", "a list of element labels")
        for i, x in enumerate(kern):
            _expect(x, str, f"{path}.kernel[{i}]", "a label")
        return cls(GroupSpec.from_json(d["group"], f"{path}.group"), tuple(kern))

    def to_json(self) -> dict:
        return {"group": self.group.to_json(), "kernel": list(self.kernel)}

    def build(self, path="universal") -> UniversalScenario:
        E = self.group.build(f"{path}.group")
        gens = [_group_element(E, x, f"{path}.kernel[{i}]") for i, x in enumerate(self.kernel)]
        N = gr.generated_subgroup(E, gens)
        try:
            return UniversalScenario.from_normal_subgroup(E, N)
        except ValidationError as e:
            _fail(f"{path}.kernel", str(e))


# ---------------------------------------------------------------------------
# reference data carried along for comparison reports


@dataclass(frozen=True)
class ReferenceTables:
    """Published tables: twists by (row, column) label and étale algebras with their columns."""

    rows: tuple[str, ...] = ()
    columns: tuple[str, ...] = ()
    twists: tuple[tuple[str, ...], ...] = ()
    algebras: tuple[tuple[tuple[str, ...], str, str], ...] = ()  # (support labels, condensed, Aut)

    @classmethod
    def from_json(cls, d, path="reference") -> "ReferenceTables":
        _expect(d, dict, path, "an object")
        _check_keys(d, ("rows", "columns", "twists", "algebras"), path)
        algs = []
        for i, a in enumerate(d.get("algebras", [])):
            p = f"{path}.algebras[{i}]"
            _expect(a, dict, p, "an object")
            _check_keys(a, ("support", "condensed", "aut"), p)
            for k in ("support", "condensed", "aut"):
                if k not in a:
                    _fail(f"{p}.{k}", "missing")
            support = _expect(a["support"], list, f"{p}.support", "a list of labels")
            algs.append((tuple(support), a["condensed"], a["aut"]))
        return cls(tuple(d.get("rows", [])), tuple(d.get("columns", [])),
                   tuple(tuple(r) for r in d.get("twists", [])), tuple(algs))

    def to_json(self) -> dict:
        return {
            "rows": list(self.rows),
            "columns": list(self.columns),
            "twists": [list(r) for r in self.twists],
            "algebras": [{"support": list(s), "condensed": c, "aut": a} for s, c, a in self.algebras],
        }


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Built:
    metric: MetricGroup | None = None
    algebra: EtaleAlgebra | None = None
    action: CategoricalAction | None = None
    universal: UniversalScenario | None = None


@dataclass(frozen=True)
class Scenario:
    kind: str
    name: str = ""
    description: str = ""
    metric: MetricSpec | None = None
    algebra: tuple | None = None
    action: ActionSpec | None = None
    universal: UniversalSpec | None = None
    reference: ReferenceTables | None = None
    command: str | None = None
    notes: tuple[str, ...] = field(default=())

    @classmethod
    def from_json(cls, d) -> "Scenario":
        _expect(d, dict, "", "a JSON object")
        _check_keys(d, ("kind", "name", "description", "metric", "algebra", "action", "universal",
                        "reference", "command", "notes"), "")
        kind = d.get("kind")
        if kind not in ("metric", "universal"):
            _fail("kind", f"expected \"metric\" or \"universal\", got {kind!r}")
        common = dict(
            kind=kind,
            name=_expect(d.get("name", ""), str, "name", "a string"),
            description=_expect(d.get("description", ""), str, "description", "a string"),
            command=d.get("command"),
            notes=tuple(_expect(d.get("notes", []), list, "notes", "a list of strings")),
        )
        if kind == "universal":
            if "universal" not in d:
                _fail("universal", "missing")
            for k in ("metric", "algebra", "action"):
                if k in d:
                    _fail(k, "not allowed in a universal scenario")
            return cls(universal=UniversalSpec.from_json(d["universal"]), **common)
        if "universal" in d:
            _fail("universal", "only allowed when kind is \"universal\"")
        if "metric" not in d:
            _fail("metric", "missing")
        algebra = None
        if "algebra" in d:
            gens = _expect(d["algebra"], list, "algebra", "a list of generators")
            algebra = tuple(_element(x, f"algebra[{i}]") for i, x in enumerate(gens))
        return cls(
            metric=MetricSpec.from_json(d["metric"]),
            algebra=algebra,
            action=ActionSpec.from_json(d["action"]) if "action" in d else None,
            reference=ReferenceTables.from_json(d["reference"]) if "reference" in d else None,
            **common,
        )

    def to_json(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind}
        if self.name:
            out["name"] = self.name
        if self.description:
            out["description"] = self.description
        if self.command:
            out["command"] = self.command
        if self.notes:
            out["notes"] = list(self.notes)
        if self.metric is not None:
            out["metric"] = self.metric.to_json()
        if self.algebra is not None:
            out["algebra"] = [_element_json(x) for x in self.algebra]
        if self.action is not None:
            out["action"] = self.action.to_json()
        if self.universal is not None:
            out["universal"] = self.universal.to_json()
        if self.reference is not None:
            out["reference"] = self.reference.to_json()
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Scenario":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ScenarioError(f"line {e.lineno}: invalid JSON: {e.msg}", field="") from e
        return cls.from_json(data)

    @cached_property
    def built(self) -> Built:
        return self.build()

    def build(self) -> Built:
        if self.kind == "universal":
            return Built(universal=self.universal.build())
        M = self.metric.build()
        A = None
        if self.algebra is not None:
            gens = [_metric_element(M, x, f"algebra[{i}]") for i, x in enumerate(self.algebra)]
            try:
                A = make_etale(M, gens)
            except ValidationError as e:
                _fail("algebra", str(e))
        act = self.action.build(M) if self.action is not None else None
        return Built(metric=M, algebra=A, action=act)


def field_line(text: str, path: str) -> int | None:
    """Best-effort line number of the JSON key named by the last component of a field path."""
    if not path:
        return None
    parts = [p for p in path.replace("]", "").replace("[", ".").split(".") if p and not p.isdigit()]
    lines = text.splitlines()
    start = 0
    found = None
    for key in parts:  # walk keys in order so nested names resolve below their parents
        needle = f'"{key}"'
        for i in range(start, len(lines)):
            if needle in lines[i]:
                found = i + 1
                start = i
                break
    return found


def load(path: str) -> tuple[Scenario, str]:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return Scenario.loads(text), text
