"""Built-in scenarios reproducing the worked examples, each with the command it is meant for."""
from __future__ import annotations

from .scenario import ActionSpec, GroupSpec, MetricSpec, ReferenceTables, Scenario, UniversalSpec

TORIC = MetricSpec(double=(2,), labels=("1", "e", "m", "eps"))
Z2 = GroupSpec(cyclic=2)


def _toric_frac(value: str, description: str, name: str) -> Scenario:
    return Scenario(
        kind="metric", name=name, command="splittings", description=description,
        metric=TORIC, algebra=("e",),
        action=ActionSpec(group=Z2, omega=(("g", "g", value),)),
    )


def _z4_reference() -> ReferenceTables:
    exps = {0: "0", 1: "1/4", 2: "1/2", 3: "3/4"}
    return ReferenceTables(
        rows=("1", "a", "a^2", "a^3"),
        columns=("1", "m", "m^2", "m^3"),
        twists=tuple(tuple(exps[(i * j) % 4] for j in range(4)) for i in range(4)),
        algebras=(
            (("1",), "Z(Vec(Z4))", "Z1"),
            (("1", "a"), "Z(Vec(Z2))", "Z2"),
            (("1", "m"), "Z(Vec(Z2))", "Z2"),
            (("1", "a^2m^2"), "Z(Sem)", "Z2"),
            (("1", "a", "a^2", "a^3"), "Vec", "Z4"),
            (("1", "m", "m^2", "m^3"), "Vec", "Z4"),
            (("1", "a^2", "m^2", "a^2m^2"), "Vec", "Z2xZ2"),
        ),
    )


def _builtins() -> dict[str, Scenario]:
    out = [
        Scenario(
            kind="metric", name="toric-swap", command="splittings",
            description="Toric code with the e<->m swap (images of the generators m=(1,0), e=(0,1)); "
                        "the algebra 1+e is moved to 1+m.",
            metric=TORIC, algebra=("e",),
            action=ActionSpec(group=Z2, alpha=(("g", ("e", "m")),)),
        ),
        _toric_frac("m", "Toric code, trivial permutation, omega(g,g) = m: the g-action on e is projective "
                         "and the obstruction extension is Z4.", "toric-frac-m"),
        _toric_frac("e", "Toric code, trivial permutation, omega(g,g) = e: the extension is Z2xZ2 "
                         "with two inequivalent splittings.", "toric-frac-e"),
        Scenario(
            kind="metric", name="zvec-z4-tables", command="etale",
            description="Z(Vec(Z4)) with anyons a^i m^j; twists and the list of connected étale algebras.",
            metric=MetricSpec(double=(4,), names=("a", "m")),
            reference=_z4_reference(),
            notes=(
                "Reference rows 1+a and 1+m have supports that are not closed under fusion "
                "(a and m have order 4); the computed order-2 algebras are 1+a^2, 1+m^2, 1+a^2m^2.",
            ),
        ),
        Scenario(
            kind="metric", name="z4-induce", command="induce",
            description="Z(Vec(Z4)) with a trivial Z2 action, condensing a^2. Two equivariant structures; "
                        "with --adjust they give the toric code with trivial fractionalization (--lambda 0) "
                        "or with omega(g,g) = m^2 (--lambda 1).",
            metric=MetricSpec(double=(4,), names=("a", "m")), algebra=("a^2",),
            action=ActionSpec(group=Z2),
        ),
        Scenario(
            kind="metric", name="dic12", command="splittings",
            description="Z(Vec(Z3)) stacked on the toric code. M, E are the Z3 flux and charge, "
                        "m, e the toric code ones. g conjugates the Z3 charges and omega(g,g) = m; "
                        "condensing the charges E and e gives the obstruction extension Dic12.",
            metric=MetricSpec(product=(MetricSpec(double=(3,)), MetricSpec(double=(2,))),
                              names=("M", "E", "m", "e")),
            algebra=("E", "e"),
            action=ActionSpec(group=Z2, alpha=(("g", ("M^2", "E^2", "m", "e")),), omega=(("g", "g", "m"),)),
        ),
        Scenario(
            kind="metric", name="metaplectic", command="splittings",
            description="Vec(Z3, q) x Vec(Z3, q-bar) with q(x, y) = (x^2 - y^2)/3, particle-hole symmetry on "
                        "the first factor and A supported on the pairs g x g^-1.",
            metric=MetricSpec(factors=(3, 3), q=("0", "2/3", "2/3", "1/3", "0", "0", "1/3", "0", "0")),
            algebra=((1, 2),),
            action=ActionSpec(group=Z2, alpha=(("g", ((2, 0), (0, 1))),)),
        ),
        Scenario(
            kind="universal", name="s3-universal", command="universal",
            description="1 -> Z3 -> S3 -> Z2 -> 1 read as an obstruction sequence for Z(Vec(Z3)).",
            universal=UniversalSpec(group=GroupSpec(library="S3"), kernel=("a",)),
        ),
        Scenario(
            kind="metric", name="landau", command="splittings",
            description="Trivial topological order with S3 symmetry: every subgroup admits exactly one "
                        "equivariant structure on the unit algebra.",
            metric=MetricSpec(trivial=True), algebra=(),
            action=ActionSpec(group=GroupSpec(library="S3")),
        ),
    ]
    return {s.name: s for s in out}


BUILTINS: dict[str, Scenario] = _builtins()


def get(name: str) -> Scenario:
    try:
        return BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}; available: {', '.join(BUILTINS)}") from None
