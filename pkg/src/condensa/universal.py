"""The universal example: any extension 1 -> N -> E -> G -> 1 is an obstruction sequence.

Take C = Z(Vec(N)) with A the algebra of functions on N. Then Aut_C(A) = N and
the obstruction group is E itself, so splittings of the given sequence are the
equivariant structures. For abelian N the identification is re-derived on the
categorical side: conjugation gives the isometries, the factor set of a
transversal gives the fractionalization, and the resulting obstruction
extension is compared with E.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import cohomology as co
from . import groups as gr
from .action import ObstructionExtension, analyze_action, make_action
from .condense import make_etale
from .errors import DEFAULT_CAP, CapExceeded, ValidationError
from .metric import Isometry, MetricGroup, drinfeld_double_abelian
from .qz import QZ


@dataclass(frozen=True, eq=False)
class UniversalScenario:
    """An extension with a transversal ``lift[g]`` (an element index of E over g)."""

    ext: co.ExtensionPresentation
    lift: tuple[int, ...]

    def __post_init__(self):
        ext = self.ext
        if len(self.lift) != ext.G.order:
            raise ValidationError("lift must give one element per element of G", field="lift")
        for g, x in enumerate(self.lift):
            if ext.pi(x) != g:
                raise ValidationError(f"lift({ext.G.label(g)}) does not lie over it", field="lift", witness=g)
        if self.lift[ext.G.identity] != ext.E.identity:
            raise ValidationError("lift(e) must be the identity", field="lift")

    @classmethod
    def from_extension(cls, ext: co.ExtensionPresentation) -> "UniversalScenario":
        """Least preimage per g; the identity over e."""
        lift = [fiber[0] for fiber in ext.fibers]
        lift[ext.G.identity] = ext.E.identity
        return cls(ext, tuple(lift))

    @classmethod
    def from_normal_subgroup(cls, E, N) -> "UniversalScenario":
        """The sequence N -> E -> E/N for a normal subgroup given by element indices."""
        E = gr.as_cayley(E)
        N = sorted(N)
        if not gr.is_normal(E, N):
            raise ValidationError("kernel is not a normal subgroup", field="N")
        Nc, embed = gr.subgroup_cayley(E, N)
        Q, proj = gr.quotient_cayley(E, N)
        iota = gr.GroupHom(Nc, E, embed)
        pi = gr.GroupHom(E, Q, proj)
        return cls.from_extension(co.ExtensionPresentation(E, iota, pi))

    @property
    def N(self):
        return self.ext.N

    @property
    def G(self):
        return self.ext.G

    @property
    def E(self):
        return self.ext.E

    def conjugation(self, g: int) -> tuple[int, ...]:
        """n -> lift(g) n lift(g)^-1 on N, as a permutation of N's indices."""
        E, iota = self.E, self.ext.iota
        back = {v: i for i, v in enumerate(iota.images)}
        return tuple(back[E.conjugate(iota(n), self.lift[g])] for n in range(self.N.order))

    def factor_set(self, g: int, h: int) -> int:
        """lift(g) lift(h) lift(gh)^-1 as an element index of N."""
        E, G = self.E, self.G
        x = E.op(E.op(self.lift[g], self.lift[h]), E.inv(self.lift[G.op(g, h)]))
        back = {v: i for i, v in enumerate(self.ext.iota.images)}
        return back[x]


@dataclass(frozen=True, eq=False)
class UniversalReport:
    scenario: UniversalScenario
    splittings: tuple[co.SplittingMap, ...]
    classes: tuple[tuple[co.SplittingMap, ...], ...]
    subgroups: tuple[tuple[frozenset, int], ...]  # (H, number of splittings over H)

    @property
    def preserved(self) -> bool:
        return bool(self.splittings)

    @property
    def verdict(self) -> str:
        return "PRESERVED" if self.preserved else "BROKEN"

    def unbroken_subgroups(self) -> list[frozenset]:
        """Subgroups H the symmetry may break down to (restricted sequence splits)."""
        return [H for H, n in self.subgroups if n]


def analyze(scenario: UniversalScenario, cap: int | None = DEFAULT_CAP) -> UniversalReport:
    ext = scenario.ext
    if cap is not None and ext.E.order > cap:
        raise CapExceeded("universal scenario", ext.E.order, cap)
    splits = co.enumerate_splittings(ext)
    classes = co.splitting_classes(ext, splits)
    table = []
    for H in gr.cayley_subgroups(ext.G, cap):
        if len(H) == ext.G.order:
            n = len(splits)
        else:
            n = len(co.enumerate_splittings(ext.restrict(H)))
        table.append((H, n))
    return UniversalReport(scenario, tuple(splits), tuple(tuple(c) for c in classes), tuple(table))


# ---------------------------------------------------------------------------
# categorical cross-check for abelian kernels


@dataclass(frozen=True, eq=False)
class CrossCheck:
    ok: bool
    metric: MetricGroup
    obstruction: ObstructionExtension
    explicit: gr.GroupHom | None      # (ev_n, g) -> iota(n) lift(g)
    witness: gr.GroupHom | None       # from is_isomorphic
    categorical_verdict: str
    group_verdict: str

    def __bool__(self):
        return self.ok


def _char_coords(A: gr.FiniteAbelianGroup, f) -> tuple[int, ...]:
    """Coordinates of the character a -> f(a) in the dual basis of A."""
    out = []
    for i, d in enumerate(A.factors):
        v = f(A.generators[i])
        out.append((v.num * d // v.den) % d)
    return tuple(out)


def _evaluate(A: gr.FiniteAbelianGroup, chi, a) -> QZ:
    total = QZ(0)
    for k, x, d in zip(chi, a, A.factors):
        total = total + QZ(k * x, d)
    return total


def cross_check_abelian(scenario: UniversalScenario, cap: int | None = DEFAULT_CAP) -> CrossCheck:
    N, G, E = gr.as_cayley(scenario.N), scenario.G, scenario.E
    if not N.is_abelian:
        raise ValidationError("cross-check needs an abelian kernel", field="N")
    if cap is not None and N.order > cap:
        raise CapExceeded("cross_check_abelian", N.order, cap)
    coords = gr.coordinatize(list(range(N.order)), N.op, N.identity)
    A = coords.group
    r = A.rank
    C = drinfeld_double_abelian(A, cap=cap)

    def n_of(a):
        return coords.from_coords[A.normalize(a)]

    def a_of(n):
        return coords.to_coords[n]

    images = []
    for s in G.generators:
        c = scenario.conjugation(s)
        cinv = {v: i for i, v in enumerate(c)}

        def f(x, c=c, cinv=cinv):
            a, chi = x[:r], x[r:]
            new_a = a_of(c[n_of(a)])
            new_chi = _char_coords(A, lambda e: _evaluate(A, chi, a_of(cinv[n_of(e)])))
            return new_a + new_chi

        images.append(Isometry.from_function(C.group, f))
    zero_chi = (0,) * r
    action = make_action(G, C, images, lambda g, h: a_of(scenario.factor_set(g, h)) + zero_chi)
    B = make_etale(C, [zero_chi + e for e in A.generators])
    report = analyze_action(action, B)
    ob = report.obstruction
    chars = ob.chars
    Bh = chars.group
    ev = {n: Bh.index(chars.realize(a_of(n) + zero_chi)) for n in range(N.order)}
    imgs = [None] * ob.order
    for n, k in ev.items():
        for g in range(G.order):
            imgs[ob.element(k, g)] = E.op(scenario.ext.iota(n), scenario.lift[g])
    explicit = None
    try:
        explicit = gr.GroupHom(ob.group, E, tuple(imgs))
        boundary_ok = (
            explicit.is_injective
            and all(scenario.ext.pi(explicit(ob.element(k, g))) == g for k in range(Bh.order) for g in range(G.order))
        )
    except (ValidationError, TypeError):
        explicit, boundary_ok = None, False
    witness = gr.is_isomorphic(ob.group, E)
    group_verdict = "PRESERVED" if co.enumerate_splittings(scenario.ext) else "BROKEN"
    ok = boundary_ok and witness is not None and report.verdict == group_verdict
    return CrossCheck(ok, C, ob, explicit, witness, report.verdict, group_verdict)
