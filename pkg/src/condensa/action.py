"""Categorical symmetry actions on pointed theories, at the level of invertible objects.

An action is a homomorphism ``alpha`` from G to the isometries of the metric
group together with a fractionalization class ``omega`` in Z^2(G, Inv(C)).
Given an étale algebra on an isotropic subgroup B, two questions are asked:

1. does every alpha_g stabilize B (the algebra as an object);
2. does the obstruction extension

       1 -> B-hat -> E -> G -> 1,   (chi, g)(xi, h) = (chi + g.xi + w(g, h), gh)

   split, where w(g, h) is the ring operator of omega(g, h) restricted to B
   and (g.xi)(b) = xi(alpha_g^-1 b).

Splittings g -> (chi(g), g) are exactly the equivariant structures
chi(gh) = chi(g) + g.chi(h) + w(g, h).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from . import cohomology as co
from . import groups as gr
from .condense import CharacterGroup, CondensedTheory, EtaleAlgebra, condense, etale_aut_group
from .errors import ValidationError
from .metric import Isometry, MetricGroup


class FirstObstructionFailed(ValidationError):
    """Some alpha_g moves the algebra to a different object."""


class DescentError(ValidationError):
    """The fractionalization class does not pass to the condensed theory."""


@dataclass(frozen=True, eq=False)
class CategoricalAction:
    """``alpha[g]`` is the isometry of g; ``omega`` has values indexing ``metric.group.elements``."""

    G: gr.CayleyGroup
    metric: MetricGroup
    alpha: tuple[Isometry, ...]
    omega: co.Cochain2
    check: bool = True

    def __post_init__(self):
        object.__setattr__(self, "G", gr.as_cayley(self.G))
        object.__setattr__(self, "alpha", tuple(self.alpha))
        if self.check:
            self.validate()

    def validate(self):
        G, M = self.G, self.metric
        if len(self.alpha) != G.order:
            raise ValidationError("alpha must list one isometry per group element", field="alpha")
        for g, a in enumerate(self.alpha):
            if a.source != M.group or a.target != M.group or not a.is_isometry(M):
                raise ValidationError(f"alpha({G.label(g)}) is not an isometry", field="alpha", witness=g)
        if self.alpha[G.identity].permutation != tuple(range(M.order)):
            raise ValidationError("alpha(e) must be the identity", field="alpha")
        for g in range(G.order):
            for h in range(G.order):
                if self.alpha[G.op(g, h)].permutation != self.alpha[g].compose(self.alpha[h]).permutation:
                    raise ValidationError(
                        f"alpha is not a homomorphism at ({G.label(g)},{G.label(h)})",
                        field="alpha", witness=(g, h))
        if len(self.omega.values) != G.order or self.omega.identity != G.identity:
            raise ValidationError("omega has the wrong shape", field="omega")
        bad = co.cocycle_defect(self.omega, self.coeffs)
        if bad is not None:
            g, h, k = bad
            raise ValidationError(
                f"omega is not a twisted 2-cocycle at ({G.label(g)},{G.label(h)},{G.label(k)})",
                field="omega", witness=bad)

    @cached_property
    def coeffs(self) -> co.CoeffModule:
        """Inv(C) as a G-module through alpha."""
        return co.CoeffModule(self.metric.group, self.G, tuple(a.permutation for a in self.alpha), check=False)

    def omega_element(self, g: int, h: int):
        return self.metric.group.element(self.omega(g, h))

    @property
    def is_trivial(self) -> bool:
        return self.coeffs.is_trivial and not any(self.omega.key())


def make_action(G, M: MetricGroup, images=None, omega=None) -> CategoricalAction:
    """Build an action from isometries of generators of G.

    ``images`` maps group elements (indices) to Isometries, or lists them in
    the order of G's greedy generators; greedy generators not mentioned act
    trivially. ``omega`` is a Cochain2, a callable (g, h) -> element of M,
    or None for zero.
    """
    G = gr.as_cayley(G)
    A = M.group
    ident = Isometry.identity(A)
    if images is None:
        images = {}
    elif not isinstance(images, dict):
        images = dict(zip(G.generators, images))
    gens = sorted(set(G.generators) | set(images))
    alpha = {G.identity: ident}
    queue = [G.identity]
    while queue:
        x = queue.pop()
        for s in gens:
            y = G.op(x, s)
            a = alpha[x].compose(images.get(s, ident))
            if y not in alpha:
                alpha[y] = a
                queue.append(y)
            elif alpha[y].permutation != a.permutation:
                raise ValidationError(
                    f"generator images do not define a homomorphism (conflict at {G.label(y)})",
                    field="alpha", witness=y)
    alpha = tuple(alpha[g] for g in range(G.order))
    if omega is None:
        omega = co.Cochain2.zero(G)
    elif not isinstance(omega, co.Cochain2):
        omega = co.Cochain2.from_function(G, A, omega)
    return CategoricalAction(G, M, alpha, omega)


def trivial_action(G, M: MetricGroup) -> CategoricalAction:
    return make_action(G, M)


def restrict_action(action: CategoricalAction, H: Sequence[int]) -> tuple[CategoricalAction, tuple[int, ...]]:
    """The action of a subgroup H (given by element indices); also returns H's embedding."""
    Hc, embed = gr.subgroup_cayley(action.G, sorted(H))
    alpha = tuple(action.alpha[g] for g in embed)
    vals = tuple(tuple(action.omega(g, h) for h in embed) for g in embed)
    return CategoricalAction(Hc, action.metric, alpha, co.Cochain2(vals, Hc.identity), check=False), embed


# ---------------------------------------------------------------------------
# the two obstructions


def _check_ambient(action: CategoricalAction, A: EtaleAlgebra):
    if A.ambient is not action.metric:
        raise ValidationError("action and algebra live on different metric groups")


def first_obstruction(action: CategoricalAction, A: EtaleAlgebra) -> bool:
    """True iff every alpha_g maps the support of A onto itself."""
    _check_ambient(action, A)
    return all(all(tuple(a(b)) in A.support.elements for b in A.support.elements) for a in action.alpha)


def first_obstruction_witness(action: CategoricalAction, A: EtaleAlgebra):
    """(g, b) with alpha_g(b) outside the support, or None."""
    for g, a in enumerate(action.alpha):
        for b in sorted(A.support.elements):
            if tuple(a(b)) not in A.support.elements:
                return g, b
    return None


def character_module(action: CategoricalAction, A: EtaleAlgebra) -> tuple[CharacterGroup, co.CoeffModule]:
    """B-hat with g.xi = xi o alpha_g^-1."""
    _check_ambient(action, A)
    bad = first_obstruction_witness(action, A)
    if bad is not None:
        g, b = bad
        M = action.metric
        raise FirstObstructionFailed(
            f"first obstruction failed: alpha({action.G.label(g)}) sends {M.label(b)} "
            f"to {M.label(action.alpha[g](b))}, outside the algebra",
            field="algebra", witness=bad)
    chars = etale_aut_group(action.metric, A)
    Bh = chars.group
    act = tuple(tuple(Bh.index(chars.twist_by(a, chi)) for chi in Bh.elements) for a in action.alpha)
    return chars, co.CoeffModule(Bh, action.G, act)


def restricted_cocycle(action: CategoricalAction, A: EtaleAlgebra) -> co.Cochain2:
    """w(g, h) = ring operator of omega(g, h) on B, as indices of B-hat elements."""
    chars, module = character_module(action, A)
    return _restrict(action, chars, module)


def _restrict(action, chars, module) -> co.Cochain2:
    G = action.G
    Bh = chars.group
    vals = tuple(
        tuple(Bh.index(chars.realize(action.omega_element(g, h))) for h in range(G.order))
        for g in range(G.order))
    w = co.Cochain2(vals, G.identity)
    bad = co.cocycle_defect(w, module)
    if bad is not None:  # pragma: no cover - ring operators are equivariant
        raise RuntimeError(f"restricted cocycle fails the cocycle identity at {bad}")
    return w


@dataclass(frozen=True, eq=False)
class ObstructionExtension:
    """The group B-hat x_w G; the element (chi, g) has index g * |B-hat| + chi."""

    extension: co.ExtensionPresentation
    module: co.CoeffModule
    cocycle: co.Cochain2
    chars: CharacterGroup | None = None

    @property
    def group(self) -> gr.CayleyGroup:
        return self.extension.E

    @property
    def order(self) -> int:
        return self.extension.E.order

    def element(self, chi: int, g: int) -> int:
        return g * self.module.M.order + chi

    def split(self, x: int) -> tuple[int, int]:
        n = self.module.M.order
        return x % n, x // n


def extension_from_cocycle(module: co.CoeffModule, w: co.Cochain2,
                           chars: CharacterGroup | None = None) -> ObstructionExtension:
    """Direct-input mode: the obstruction extension of a given w in Z^2(G, B-hat)."""
    bad = co.cocycle_defect(w, module)
    if bad is not None:
        raise ValidationError(f"w is not a twisted 2-cocycle at {bad}", field="w", witness=bad)
    ext = co.twisted_product(module, w)  # the Cayley check re-verifies associativity
    return ObstructionExtension(ext, module, w, chars)


def obstruction_extension(action: CategoricalAction, A: EtaleAlgebra) -> ObstructionExtension:
    chars, module = character_module(action, A)
    w = _restrict(action, chars, module)
    return extension_from_cocycle(module, w, chars)


# ---------------------------------------------------------------------------
# equivariant structures


@dataclass(frozen=True, order=True)
class EquivariantStructure:
    """``chi[g]`` indexes an element of B-hat; chi[e] = 0."""

    chi: tuple[int, ...]

    def section(self, ob: ObstructionExtension) -> co.SplittingMap:
        return co.SplittingMap(tuple(ob.element(c, g) for g, c in enumerate(self.chi)))

    @classmethod
    def from_section(cls, ob: ObstructionExtension, s: co.SplittingMap) -> "EquivariantStructure":
        chi = []
        for g, x in enumerate(s.section):
            c, h = ob.split(x)
            if h != g:
                raise ValidationError("not a section of the projection")
            chi.append(c)
        return cls(tuple(chi))


def is_equivariant_structure(chi: Sequence[int], module: co.CoeffModule, w: co.Cochain2) -> bool:
    G = module.G
    if chi[G.identity] != 0:
        return False
    for g in range(G.order):
        for h in range(G.order):
            rhs = module.add(module.add(chi[g], module.act(g, chi[h])), w(g, h))
            if chi[G.op(g, h)] != rhs:
                return False
    return True


@dataclass(frozen=True, eq=False)
class EquivariantAnalysis:
    structures: tuple[EquivariantStructure, ...]
    classes: tuple[tuple[EquivariantStructure, ...], ...]

    @property
    def preserved(self) -> bool:
        return bool(self.structures)


def equivariant_structures(module: co.CoeffModule, w: co.Cochain2) -> EquivariantAnalysis:
    """Solutions of d(chi) = -w, grouped under chi ~ chi + (g.n - n)."""
    sols = sorted(co.solve_coboundary(co.neg_cochain(w, module), module))
    shifts = sorted(co.one_coboundaries(module))
    remaining = set(sols)
    classes = []
    for c in sols:
        if c not in remaining:
            continue
        orbit = sorted({tuple(module.add(x, y) for x, y in zip(c, b)) for b in shifts})
        remaining.difference_update(orbit)
        classes.append(tuple(EquivariantStructure(t) for t in orbit))
    return EquivariantAnalysis(tuple(EquivariantStructure(c) for c in sols), tuple(classes))


def enumerate_equivariant_structures(action: CategoricalAction, A: EtaleAlgebra) -> EquivariantAnalysis:
    chars, module = character_module(action, A)
    return equivariant_structures(module, _restrict(action, chars, module))


# ---------------------------------------------------------------------------
# descent to the condensed theory


def induce_condensed_action(action: CategoricalAction, A: EtaleAlgebra, lam: EquivariantStructure,
                            adjust: bool = False) -> tuple[CategoricalAction, CondensedTheory]:
    """The action on B-perp / B.

    By default the fractionalization is the coset of omega(g, h), which
    requires every omega(g, h) to lie in B-perp; otherwise DescentError names
    the first offending pair. The isometries never depend on lam.

    With ``adjust`` each lam(g) is lifted to the least anyon y_g whose ring
    operator on B is lam(g), and omega + dy is used instead. Its values always
    lie in B-perp because lam solves d(chi) = -w, and the resulting class
    depends on lam.
    """
    chars, module = character_module(action, A)
    w = _restrict(action, chars, module)
    if len(lam.chi) != action.G.order or not is_equivariant_structure(lam.chi, module, w):
        raise ValidationError("lambda is not an equivariant structure for this action", field="lambda")
    G, M = action.G, action.metric
    add = M.group.add
    if adjust:
        lift = {}
        for x in M.elements:
            lift.setdefault(chars.group.index(chars.realize(x)), x)
        y = [lift[c] for c in lam.chi]
    else:
        y = [M.group.zero] * G.order
    ct = condense(M, A)
    perp = ct.perp.elements
    vals = []
    for g in range(G.order):
        row = []
        for h in range(G.order):
            # (omega + dy)(g, h) = omega(g, h) + g.y_h - y_gh + y_g
            x = add(add(action.omega_element(g, h), tuple(action.alpha[g](y[h]))),
                    add(M.group.neg(y[G.op(g, h)]), y[g]))
            if x not in perp:
                if adjust:  # pragma: no cover - lam solves d(chi) = -w
                    raise RuntimeError(f"corrected fractionalization leaves B-perp at {(g, h)}")
                raise DescentError(
                    f"fractionalization does not descend: omega({G.label(g)},{G.label(h)}) = "
                    f"{M.label(x)} is not transparent to the algebra", field="omega", witness=(g, h))
            row.append(ct.result.group.index(ct.projection[x]))
        vals.append(tuple(row))
    Q = ct.result.group
    alpha = tuple(
        Isometry.from_function(Q, lambda z, a=a: ct.projection[tuple(a(ct.lift(z)))])
        for a in action.alpha)
    return CategoricalAction(G, ct.result, alpha, co.Cochain2(tuple(vals), G.identity)), ct


# ---------------------------------------------------------------------------
# one-call summary


@dataclass(frozen=True, eq=False)
class ActionReport:
    action: CategoricalAction
    algebra: EtaleAlgebra
    first_obstruction: bool
    first_witness: tuple | None
    obstruction: ObstructionExtension | None = None
    analysis: EquivariantAnalysis | None = None
    splittings: tuple = ()
    splitting_classes: tuple = ()

    @property
    def verdict(self) -> str:
        if not self.first_obstruction:
            return "FAILED"
        return "PRESERVED" if self.analysis.preserved else "BROKEN"


def analyze_action(action: CategoricalAction, A: EtaleAlgebra) -> ActionReport:
    """Both obstructions, the extension, its splittings and the equivariant structures.

    Splittings are found by a group-theoretic search in E and checked
    against the cochain-level solutions one by one.
    """
    bad = first_obstruction_witness(action, A)
    if bad is not None:
        return ActionReport(action, A, False, bad)
    ob = obstruction_extension(action, A)
    analysis = equivariant_structures(ob.module, ob.cocycle)
    splits = co.enumerate_splittings(ob.extension)
    from_splits = sorted(EquivariantStructure.from_section(ob, s) for s in splits)
    if from_splits != list(analysis.structures):  # pragma: no cover - the correspondence is a theorem
        raise RuntimeError("splittings and equivariant structures disagree")
    classes = co.splitting_classes(ob.extension, splits)
    return ActionReport(action, A, True, None, ob, analysis, tuple(splits), tuple(tuple(c) for c in classes))
