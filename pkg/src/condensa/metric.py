"""Pointed modular categories as metric groups (finite abelian group + quadratic form)."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd
from typing import Callable, Sequence

import numpy as np

from . import groups as gr
from .errors import DEFAULT_CAP, CapExceeded, ValidationError
from .qz import QZ


def _lcm(a, b):
    return a * b // gcd(a, b)


@dataclass(frozen=True, eq=False)
class MetricGroup:
    """A finite abelian group with a nondegenerate Q/Z-valued quadratic form.

    Construct through :func:`make_metric_group`, which validates the form.
    ``q`` is indexed like ``group.elements``.
    """

    group: gr.FiniteAbelianGroup
    q: tuple[QZ, ...]
    labels: tuple[str, ...] | None = None

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def elements(self):
        return self.group.elements

    @cached_property
    def _den(self) -> int:
        return reduce(_lcm, (v.den for v in self.q), 1) * 2

    @cached_property
    def _qn(self) -> tuple[int, ...]:
        D = self._den
        return tuple(v.num * (D // v.den) for v in self.q)

    def qi(self, i: int) -> int:
        """q of element index i as an integer modulo ``_den``."""
        return self._qn[i]

    def bi(self, i: int, j: int) -> int:
        return self._btab[i][j]

    @cached_property
    def _btab(self) -> list[list[int]]:
        """b(x_i, x_j) as integers modulo ``_den``."""
        qn = np.asarray(self._qn, dtype=np.int64)
        return ((qn[_op_array(self.group)] - qn[:, None] - qn[None, :]) % self._den).tolist()

    def twist(self, x) -> QZ:
        return self.q[self.group.index(x)]

    def pairing(self, x, y) -> QZ:
        """b(x, y) = q(x+y) - q(x) - q(y)."""
        G = self.group
        return QZ(self.bi(G.index(x), G.index(y)), self._den)

    def label(self, x) -> str:
        i = x if isinstance(x, int) else self.group.index(x)
        if self.labels is not None:
            return self.labels[i]
        return self.group.label(i)

    @cached_property
    def _label_index(self) -> dict:
        if self.labels is None:
            return {}
        return {lab: self.group.elements[i] for i, lab in enumerate(self.labels)}

    def parse_element(self, spec):
        """An element from a label string or a coordinate list."""
        if isinstance(spec, str):
            if spec in self._label_index:
                return self._label_index[spec]
            raise ValidationError(f"unknown anyon label {spec!r}")
        x = tuple(int(v) for v in spec)
        if not self.group.contains(x):
            raise ValidationError(f"element {list(spec)} out of range for factors {list(self.group.factors)}")
        return x

    def is_transparent_to(self, x, S) -> bool:
        return all(not self.pairing(x, s) for s in S)

    def __repr__(self):
        return f"MetricGroup({self.group}, order={self.order})"


def _as_q_table(group: gr.FiniteAbelianGroup, q) -> tuple[QZ, ...]:
    if callable(q):
        return tuple(QZ.parse(q(x)) for x in group.elements)
    if isinstance(q, dict):
        missing = [x for x in group.elements if x not in q]
        if missing:
            raise ValidationError(f"q undefined on {list(missing[0])}", field="q")
        return tuple(QZ.parse(q[x]) for x in group.elements)
    q = list(q)
    if len(q) != group.order:
        raise ValidationError(f"q table has {len(q)} entries, group has {group.order}", field="q")
    return tuple(QZ.parse(v) for v in q)


def make_metric_group(group: gr.FiniteAbelianGroup, q, labels: Sequence[str] | None = None) -> MetricGroup:
    """Validate ``q`` as a nondegenerate quadratic form on ``group``.

    Raises ValidationError "not quadratic" with a witness, or "degenerate" with
    the offending element.
    """
    table = _as_q_table(group, q)
    if labels is not None:
        labels = tuple(labels)
        if len(labels) != group.order or len(set(labels)) != len(labels):
            raise ValidationError("labels must be distinct and one per element", field="labels")
    M = MetricGroup(group, table, labels)
    G = group
    D = M._den
    qn = np.asarray(M._qn, dtype=np.int64)
    coords = np.asarray(G.elements, dtype=np.int64).reshape(G.order, len(G.factors))
    if qn[0] % D:
        raise ValidationError("not quadratic: q(0) != 0", field="q", witness=(G.zero,))
    bad = np.flatnonzero((qn[_index_array(G, -coords)] - qn) % D)
    if bad.size:
        x = G.element(int(bad[0]))
        raise ValidationError(f"not quadratic: q(-x) != q(x) at x={list(x)}", field="q", witness=(x,))
    B = np.asarray(M._btab, dtype=np.int64)
    op = _op_array(G)
    for e in (G.index(g) for g in G.generators):
        defect = (B[op[:, e], :] - B - B[e][None, :]) % D
        hits = np.argwhere(defect)
        if hits.size:
            i, j = (int(v) for v in hits[0])
            w = (G.element(i), G.element(e), G.element(j))
            raise ValidationError(
                f"not quadratic: b is not biadditive at {[list(v) for v in w]}", field="q", witness=w)
    for k in range(2, G.exponent + 1):
        bad = np.flatnonzero((qn[_index_array(G, k * coords)] - k * k * qn) % D)
        if bad.size:
            x = G.element(int(bad[0]))
            raise ValidationError(
                f"not quadratic: q({k}x) != {k}^2 q(x) at x={list(x)}", field="q", witness=(x, k))
    gens = [G.index(g) for g in G.generators]
    if G.order > 1:
        null = np.flatnonzero(~B[1:, gens].any(axis=1))
        if null.size:
            x = G.element(int(null[0]) + 1)
            raise ValidationError(f"degenerate: {list(x)} pairs trivially with everything", field="q", witness=x)
    return M


def _index_array(G: gr.FiniteAbelianGroup, coords) -> np.ndarray:
    """Indices of the elements with the given coordinate rows (reduced mod the factors)."""
    f = np.asarray(G.factors, dtype=np.int64)
    s = np.asarray(G._strides, dtype=np.int64)
    return ((coords % f) * s).sum(axis=-1)


def _op_array(G: gr.FiniteAbelianGroup) -> np.ndarray:
    coords = np.asarray(G.elements, dtype=np.int64).reshape(G.order, len(G.factors))
    return _index_array(G, coords[:, None, :] + coords[None, :, :])


def quadratic_from_gram(group: gr.FiniteAbelianGroup, diagonal: Sequence, off_diagonal: dict | None = None):
    """q(x) = sum_i q_i x_i^2 + sum_{i<j} b_ij x_i x_j, as a callable."""
    qd = [QZ.parse(v) for v in diagonal]
    off = {tuple(k): QZ.parse(v) for k, v in (off_diagonal or {}).items()}

    def q(x):
        total = QZ(0)
        for i, a in enumerate(x):
            total = total + qd[i] * (a * a)
        for (i, j), v in off.items():
            total = total + v * (x[i] * x[j])
        return total

    return q


def coordinate_labels(group: gr.FiniteAbelianGroup, names: Sequence[str]) -> tuple[str, ...]:
    """Labels like ``a^2m^3`` from one generator name per coordinate; identity is ``1``."""
    out = []
    for x in group.elements:
        parts = []
        for a, name in zip(x, names):
            if a == 1:
                parts.append(name)
            elif a:
                parts.append(f"{name}^{a}")
        out.append("".join(parts) or "1")
    return tuple(out)


def drinfeld_double_abelian(A: gr.FiniteAbelianGroup, labels: Sequence[str] | None = None,
                            cap: int | None = DEFAULT_CAP) -> MetricGroup:
    """Z(Vec(A)) on A x Â, Â in dual coordinates: q((a, chi)) = chi(a) = sum a_i chi_i / d_i."""
    if cap is not None and A.order > cap:
        raise CapExceeded("drinfeld_double_abelian", A.order, cap)
    k = A.rank
    D = gr.FiniteAbelianGroup(A.factors + A.factors)
    d = A.factors

    def q(x):
        total = QZ(0)
        for i in range(k):
            total = total + QZ(x[i] * x[k + i], d[i])
        return total

    return make_metric_group(D, q, labels)


def deligne_product(*Ms: MetricGroup) -> MetricGroup:
    """Stacking of layers: direct sum of groups with q added."""
    factors = sum((M.group.factors for M in Ms), ())
    G = gr.FiniteAbelianGroup(factors)
    widths = [M.group.rank for M in Ms]

    def q(x):
        total = QZ(0)
        pos = 0
        for M, w in zip(Ms, widths):
            total = total + M.twist(x[pos:pos + w])
            pos += w
        return total

    labels = None
    if all(M.labels is not None for M in Ms):
        labels = []
        for x in G.elements:
            parts, pos = [], 0
            for M, w in zip(Ms, widths):
                lab = M.label(x[pos:pos + w])
                if lab != "1":
                    parts.append(lab)
                pos += w
            labels.append("".join(parts) or "1")
        if len(set(labels)) != len(labels):
            labels = None
    return make_metric_group(G, q, labels)


def trivial_metric_group() -> MetricGroup:
    return make_metric_group(gr.FiniteAbelianGroup(()), [QZ(0)], ("1",))


# ---------------------------------------------------------------------------
# modular data


@dataclass(frozen=True)
class ModularData:
    """S[x][y] = exp(2 pi i * s_exponents[x][y]) / sqrt(order); T[x] = exp(2 pi i * t[x])."""

    labels: tuple[str, ...]
    order: int
    s_exponents: tuple[tuple[QZ, ...], ...]
    t: tuple[QZ, ...]

    def s_entry_phase(self, x: int, y: int) -> str:
        return self.s_exponents[x][y].phase()


def modular_data(M: MetricGroup) -> ModularData:
    n = M.order
    D = M._den
    S = tuple(tuple(QZ(M.bi(i, j), D) for j in range(n)) for i in range(n))
    return ModularData(tuple(M.label(i) for i in range(n)), n, S, M.q)


# ---------------------------------------------------------------------------
# isometries


@dataclass(frozen=True)
class Isometry:
    """A group map given by the images of the standard generators of ``source``."""

    source: gr.FiniteAbelianGroup
    target: gr.FiniteAbelianGroup
    images: tuple[tuple[int, ...], ...]

    def __call__(self, x):
        return self.target.combine(x, self.images)

    @cached_property
    def permutation(self) -> tuple[int, ...]:
        T = self.target
        return tuple(T.index(self(x)) for x in self.source.elements)

    def compose(self, first: "Isometry") -> "Isometry":
        """self after first"""
        return Isometry(first.source, self.target, tuple(self(v) for v in first.images))

    def inverse(self) -> "Isometry":
        perm = self.permutation
        inv = {}
        for i, j in enumerate(perm):
            inv[self.target.element(j)] = self.source.element(i)
        return Isometry(self.target, self.source, tuple(inv[e] for e in self.target.generators))

    def is_isometry(self, M: MetricGroup, N: MetricGroup | None = None) -> bool:
        N = M if N is None else N
        perm = self.permutation
        if len(set(perm)) != len(perm) or len(perm) != N.order:
            return False
        S = self.source
        for i in range(S.order):
            for e in S.generators:
                j = S.index(S.add(S.element(i), e))
                if perm[j] != N.group.op(perm[i], N.group.index(self(e))):
                    return False
        return all(M.q[i] == N.q[perm[i]] for i in range(S.order))

    @classmethod
    def identity(cls, A: gr.FiniteAbelianGroup) -> "Isometry":
        return cls(A, A, A.generators)

    @classmethod
    def from_function(cls, A: gr.FiniteAbelianGroup, f: Callable, B: gr.FiniteAbelianGroup | None = None):
        B = A if B is None else B
        return cls(A, B, tuple(B.normalize(f(e)) for e in A.generators))


def _iter_isometries(M: MetricGroup, N: MetricGroup):
    A, B = M.group, N.group
    if A.order != B.order:
        return
    gens = A.generators
    k = len(gens)
    gi = [A.index(e) for e in gens]
    DM, DN = M._den, N._den
    D = _lcm(DM, DN)
    sM, sN = D // DM, D // DN
    by_q: dict[int, list] = {}
    for j, y in enumerate(B.elements):
        by_q.setdefault(N.qi(j) * sN % D, []).append(j)

    def rec(level, chosen):
        if level == k:
            images = tuple(B.element(j) for j in chosen)
            f = Isometry(A, B, images)
            if len(set(f.permutation)) == B.order:
                yield f
            return
        e = gens[level]
        d = A.factors[level]
        for j in by_q.get(M.qi(gi[level]) * sM % D, []):
            y = B.element(j)
            if d % B.element_order(y):
                continue
            if any(N.bi(j, chosen[m]) * sN % D != M.bi(gi[level], gi[m]) * sM % D for m in range(level)):
                continue
            yield from rec(level + 1, chosen + [j])

    yield from rec(0, [])


def isometries(M: MetricGroup, cap: int | None = DEFAULT_CAP) -> list[Isometry]:
    """All q-preserving automorphisms, identity first then lexicographic by generator images."""
    if cap is not None and M.order > cap:
        raise CapExceeded("isometries", M.order, cap)
    out = list(_iter_isometries(M, M))
    ident = Isometry.identity(M.group)
    out.sort(key=lambda f: (f != ident, f.images))
    return out


def isometry_group(M: MetricGroup, cap: int | None = DEFAULT_CAP, max_size: int = 2000) -> gr.CayleyGroup:
    """The isometry group as a Cayley group; payloads are Isometry objects, (f*g)(x) = f(g(x))."""
    isos = isometries(M, cap)
    if len(isos) > max_size:
        raise CapExceeded("isometry group size", len(isos), max_size)
    pos = {f.images: i for i, f in enumerate(isos)}
    table = tuple(tuple(pos[f.compose(g).images] for g in isos) for f in isos)
    labels = tuple(
        "id" if i == 0 else "{" + ",".join(f"{M.label(e)}->{M.label(f(e))}" for e in M.group.generators) + "}"
        for i, f in enumerate(isos)
    )
    return gr.CayleyGroup(table, 0, labels, tuple(isos), check=False)


def find_isometry(M: MetricGroup, N: MetricGroup) -> Isometry | None:
    """First isometry M -> N in generator-image order, or None."""
    for f in _iter_isometries(M, N):
        return f
    return None


# ---------------------------------------------------------------------------
# named pointed theories used to identify condensation outcomes


def _named():
    Z2 = gr.FiniteAbelianGroup((2,))
    Z3 = gr.FiniteAbelianGroup((3,))
    semion = make_metric_group(Z2, ["0", "1/4"])
    antisemion = make_metric_group(Z2, ["0", "3/4"])
    return [
        ("Vec", trivial_metric_group()),
        ("Sem", semion),
        ("Sem-bar", antisemion),
        ("Vec(Z3,q)", make_metric_group(Z3, ["0", "1/3", "1/3"])),
        ("Vec(Z3,q-bar)", make_metric_group(Z3, ["0", "2/3", "2/3"])),
        ("Z(Vec(Z2))", drinfeld_double_abelian(Z2)),
        ("Z(Sem)", deligne_product(semion, antisemion)),
        ("Sem x Sem", deligne_product(semion, semion)),
        ("Sem-bar x Sem-bar", deligne_product(antisemion, antisemion)),
        ("three-fermion", make_metric_group(gr.FiniteAbelianGroup((2, 2)), ["0", "1/2", "1/2", "1/2"])),
        ("Z(Vec(Z3))", drinfeld_double_abelian(Z3)),
        ("Z(Vec(Z4))", drinfeld_double_abelian(gr.FiniteAbelianGroup((4,)))),
        ("Z(Vec(Z2xZ2))", drinfeld_double_abelian(gr.FiniteAbelianGroup((2, 2)))),
    ]


_NAMED_CACHE: list | None = None


def named_metric_groups():
    global _NAMED_CACHE
    if _NAMED_CACHE is None:
        _NAMED_CACHE = _named()
    return _NAMED_CACHE


_PRODUCT_CACHE: dict = {}


def _named_products(order: int):
    """Deligne products of two nontrivial catalogue theories with the given order."""
    if order not in _PRODUCT_CACHE:
        named = [(n, N) for n, N in named_metric_groups() if N.order > 1]
        out = []
        for i, (a, P) in enumerate(named):
            for b, Q in named[i:]:
                if P.order * Q.order == order:
                    out.append((f"{a} x {b}", deligne_product(P, Q)))
        _PRODUCT_CACHE[order] = out
    return _PRODUCT_CACHE[order]


def identify_metric(M: MetricGroup) -> str | None:
    """Name of a catalogue theory isometric to M, or of a product of two of them, if any."""
    for name, N in named_metric_groups():
        if N.order == M.order and find_isometry(M, N) is not None:
            return name
    for name, N in _named_products(M.order):
        if find_isometry(M, N) is not None:
            return name
    return None

