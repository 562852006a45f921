"""Connected étale algebras in pointed modular categories and their condensation.

In a pointed theory a connected étale algebra is the direct sum over an
isotropic subgroup B; its automorphism group is the character group of B,
realized by ring operators, and the condensed theory is B-perp / B.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import groups as gr
from .errors import DEFAULT_CAP, CapExceeded, ValidationError
from .metric import MetricGroup, make_metric_group
from .qz import QZ


@dataclass(frozen=True, eq=False)
class EtaleAlgebra:
    """A = sum of the bosons in an isotropic subgroup B of the ambient metric group."""

    ambient: MetricGroup
    support: gr.Subgroup

    @property
    def generators(self):
        return self.support.generators

    @property
    def order(self) -> int:
        return self.support.order

    def __contains__(self, x):
        return tuple(x) in self.support.elements

    @cached_property
    def coordinates(self) -> gr.Coordinates:
        """A cyclic basis of B (orders ascending) with coordinate lookup."""
        G = self.ambient.group
        return gr.coordinatize(sorted(self.support.elements), G.add, G.zero)

    def describe(self) -> str:
        M = self.ambient
        return " + ".join(M.label(x) for x in sorted(self.support.elements, key=M.group.index))

    def __repr__(self):
        return f"EtaleAlgebra({self.describe()})"


def make_etale(M: MetricGroup, generators) -> EtaleAlgebra:
    """The algebra supported on the subgroup generated by ``generators``; must be isotropic."""
    gens = [M.parse_element(g) if not isinstance(g, tuple) else M.group.normalize(g) for g in generators]
    S = gr.make_subgroup(M.group, gens)
    for x in sorted(S.elements):
        if M.twist(x):
            raise ValidationError(
                f"not isotropic: q({M.label(x)}) = {M.twist(x)} != 0", field="algebra", witness=x)
    return EtaleAlgebra(M, S)


def enumerate_etale(M: MetricGroup, cap: int | None = DEFAULT_CAP) -> list[EtaleAlgebra]:
    """All isotropic subgroups, sorted by (order, greedy generators); the trivial one first."""
    if cap is not None and M.order > cap:
        raise CapExceeded("enumerate_etale", M.order, cap)
    subs = gr.enumerate_subgroups(
        M.group, cap,
        allowed=lambda x: not M.twist(x),
        compatible=lambda x, S: all(not M.pairing(x, s) for s in S),
    )
    return [EtaleAlgebra(M, S) for S in subs]


def orthogonal_complement(M: MetricGroup, B) -> gr.Subgroup:
    """B-perp: elements braiding trivially with every element of B."""
    elems = B.elements if isinstance(B, gr.Subgroup) else B.support.elements
    perp = frozenset(x for x in M.elements if all(not M.pairing(x, b) for b in elems))
    return gr.Subgroup(gr.greedy_generators(M.group, perp), perp)


# ---------------------------------------------------------------------------
# condensation


@dataclass(frozen=True, eq=False)
class CondensedTheory:
    """The local modules B-perp / B with the induced quadratic form."""

    algebra: EtaleAlgebra
    perp: gr.Subgroup
    result: MetricGroup
    projection: dict       # element of B-perp -> element of result
    representatives: tuple  # result element index -> least coset representative in the ambient group

    def lift(self, y):
        return self.representatives[self.result.group.index(y)]


def condense(M: MetricGroup, A: EtaleAlgebra) -> CondensedTheory:
    if A.ambient is not M:
        raise ValidationError("algebra lives in a different metric group")
    G = M.group
    perp = orthogonal_complement(M, A.support)
    if not A.support.elements <= perp.elements:
        raise RuntimeError("isotropic subgroup is not contained in its complement")
    B = sorted(A.support.elements)
    rep = {}
    for x in sorted(perp.elements):
        if x in rep:
            continue
        for b in B:
            rep[G.add(x, b)] = x
    reps = sorted(set(rep.values()))

    def add(x, y):
        return rep[G.add(x, y)]

    coords = gr.coordinatize(reps, add, G.zero)
    Q = coords.group
    for x in perp.elements:
        if M.twist(x) != M.twist(rep[x]):
            raise RuntimeError(f"induced twist is not constant on the coset of {M.label(rep[x])}")
    q = [M.twist(coords.from_coords[y]) for y in Q.elements]
    labels = None
    if M.labels is not None:
        labels = [M.label(coords.from_coords[y]) for y in Q.elements]
    result = make_metric_group(Q, q, labels)
    if result.order * A.order ** 2 != M.order:
        raise RuntimeError("condensation changed the global dimension")
    projection = {x: coords.to_coords[rep[x]] for x in perp.elements}
    representatives = tuple(coords.from_coords[y] for y in Q.elements)
    return CondensedTheory(A, perp, result, projection, representatives)


# ---------------------------------------------------------------------------
# automorphisms of the algebra


@dataclass(frozen=True, eq=False)
class CharacterGroup:
    """The character group of B, in coordinates dual to a cyclic basis of B.

    A coordinate vector k represents chi with chi(b_j) = k_j / o_j.
    """

    algebra: EtaleAlgebra

    @cached_property
    def _coords(self) -> gr.Coordinates:
        return self.algebra.coordinates

    @property
    def group(self) -> gr.FiniteAbelianGroup:
        return self._coords.group

    @property
    def basis(self):
        return self._coords.basis

    @property
    def orders(self) -> tuple[int, ...]:
        return self.group.factors

    def evaluate(self, chi, b) -> QZ:
        c = self._coords.to_coords[tuple(b)]
        total = QZ(0)
        for k, cj, o in zip(chi, c, self.orders):
            total = total + QZ(k * cj, o)
        return total

    def realize(self, a) -> tuple[int, ...]:
        """Ring operator of a restricted to B: b -> b(a, b)."""
        M = self.algebra.ambient
        out = []
        for bj, o in zip(self.basis, self.orders):
            v = M.pairing(a, bj)
            out.append((v.num * o // v.den) % o)
        return tuple(out)

    def from_values(self, f) -> tuple[int, ...]:
        """Coordinates of the character b -> f(b) (f returns QZ, must be a character)."""
        out = []
        for bj, o in zip(self.basis, self.orders):
            v = f(bj)
            if (v.num * o) % v.den:
                raise ValidationError("function is not a character of B")
            out.append((v.num * o // v.den) % o)
        return tuple(out)

    def twist_by(self, iso, chi) -> tuple[int, ...]:
        """chi o iso^-1, for an isometry stabilizing B."""
        inv = iso.inverse()
        return self.from_values(lambda b: self.evaluate(chi, inv(b)))

    def character(self, chi) -> "Character":
        return Character(self, tuple(chi))


@dataclass(frozen=True, eq=False)
class Character:
    chars: CharacterGroup
    coords: tuple[int, ...]

    def __call__(self, b) -> QZ:
        return self.chars.evaluate(self.coords, b)

    @property
    def is_trivial(self) -> bool:
        return not any(self.coords)


def etale_aut_group(M: MetricGroup, A: EtaleAlgebra) -> CharacterGroup:
    """Aut_C(A) as the character group of B; ``realize`` is the surjection Inv(C) -> B-hat."""
    if A.ambient is not M:
        raise ValidationError("algebra lives in a different metric group")
    return CharacterGroup(A)


def ring_operator(M: MetricGroup, a, A: EtaleAlgebra) -> Character:
    chars = etale_aut_group(M, A)
    return chars.character(chars.realize(M.group.normalize(a)))
