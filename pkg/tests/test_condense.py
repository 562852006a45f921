import pytest
from hypothesis import given
from hypothesis import strategies as st

from condensa import condense as cd
from condensa import metric as me
from condensa.errors import CapExceeded, ValidationError
from condensa.qz import QZ
from condensa.sampling import metric_pool

from oracles import isotropic_subgroups, perp

pool = st.sampled_from(metric_pool(64))
small_pool = st.sampled_from(metric_pool(16))


def test_toric_algebras(toric):
    algs = cd.enumerate_etale(toric)
    assert [a.describe() for a in algs] == ["1", "1 + e", "1 + m"]
    for a in algs[1:]:
        ct = cd.condense(toric, a)
        assert ct.result.order == 1


def test_toric_condense_nothing(toric):
    ct = cd.condense(toric, cd.make_etale(toric, []))
    assert me.identify_metric(ct.result) == "Z(Vec(Z2))"


def test_fermion_is_not_etale(toric):
    with pytest.raises(ValidationError, match="not isotropic"):
        cd.make_etale(toric, ["eps"])


def test_zvec4_algebra_table(zvec4):
    algs = cd.enumerate_etale(zvec4)
    assert len(algs) == 7
    got = sorted((a.describe(), me.identify_metric(cd.condense(zvec4, a).result)) for a in algs)
    assert got == sorted([
        ("1", "Z(Vec(Z4))"),
        ("1 + a^2", "Z(Vec(Z2))"),
        ("1 + m^2", "Z(Vec(Z2))"),
        ("1 + a^2m^2", "Z(Sem)"),
        ("1 + a + a^2 + a^3", "Vec"),
        ("1 + m + m^2 + m^3", "Vec"),
        ("1 + m^2 + a^2 + a^2m^2", "Vec"),
    ])


def test_a2m2_condenses_to_double_semion(zvec4):
    ct = cd.condense(zvec4, cd.make_etale(zvec4, ["a^2m^2"]))
    twists = sorted(str(t) for t in ct.result.q)
    assert twists == ["0", "0", "1/4", "3/4"]


def test_automorphisms_are_characters(zvec4):
    A = cd.make_etale(zvec4, ["a"])
    chars = cd.etale_aut_group(zvec4, A)
    assert chars.group.order == 4
    phi = cd.ring_operator(zvec4, zvec4.parse_element("m"), A)
    assert phi(zvec4.parse_element("a")) == QZ(1, 4)
    assert cd.ring_operator(zvec4, zvec4.parse_element("a^2"), A).is_trivial


def test_enumerate_cap():
    big = me.drinfeld_double_abelian(me.gr.FiniteAbelianGroup((8,)))
    with pytest.raises(CapExceeded):
        cd.enumerate_etale(big, cap=20)


def test_wrong_ambient(toric, zvec4):
    with pytest.raises(ValidationError):
        cd.condense(zvec4, cd.make_etale(toric, ["e"]))


@given(small_pool)
def test_enumeration_matches_oracle(named):
    _, M = named
    got = {a.support.elements for a in cd.enumerate_etale(M)}
    assert got == isotropic_subgroups(M)


@given(pool, st.data())
def test_condensed_order_and_perp(named, data):
    _, M = named
    algs = cd.enumerate_etale(M)
    A = data.draw(st.sampled_from(algs))
    ct = cd.condense(M, A)
    assert ct.perp.elements == perp(M, A.support.elements)
    assert ct.result.order * A.order ** 2 == M.order
    for y in ct.result.elements:
        x = ct.lift(y)
        assert ct.result.twist(y) == M.twist(x)
        assert ct.projection[x] == y


@given(pool, st.data())
def test_two_step_condensation(named, data):
    """Condensing B1 and then the image of B2 agrees with condensing B2 at once."""
    _, M = named
    algs = cd.enumerate_etale(M)
    A2 = data.draw(st.sampled_from(algs))
    subs = [a for a in algs if a.support.elements <= A2.support.elements]
    A1 = data.draw(st.sampled_from(subs))
    first = cd.condense(M, A1)
    image = sorted({first.projection[x] for x in A2.support.elements})
    second = cd.condense(first.result, cd.make_etale(first.result, image))
    direct = cd.condense(M, A2)
    assert me.find_isometry(second.result, direct.result) is not None


@given(pool, st.data())
def test_ring_operator_is_a_surjective_hom(named, data):
    _, M = named
    A = data.draw(st.sampled_from(cd.enumerate_etale(M)))
    chars = cd.etale_aut_group(M, A)
    seen = {chars.realize(x) for x in M.elements}
    assert len(seen) == chars.group.order == A.order
    x, y = data.draw(st.sampled_from(M.elements)), data.draw(st.sampled_from(M.elements))
    assert chars.realize(M.group.add(x, y)) == chars.group.add(chars.realize(x), chars.realize(y))
    # kernel is B-perp
    kernel = {z for z in M.elements if chars.realize(z) == chars.group.zero}
    assert kernel == set(perp(M, A.support.elements))
