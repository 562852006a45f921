import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from condensa import action as ac
from condensa import catalog
from condensa import cohomology as co
from condensa import condense as cd
from condensa import groups as gr
from condensa import library
from condensa import metric as me
from condensa.config import RandomSuiteConfig
from condensa.errors import ValidationError
from condensa.sampling import random_scenario

from oracles import all_sections

SMALL = RandomSuiteConfig(max_group_order=4, max_metric_order=16)


def built(name):
    b = catalog.get(name).built
    return b.action, b.algebra


def test_toric_fractional_m_is_broken():
    rep = ac.analyze_action(*built("toric-frac-m"))
    assert rep.verdict == "BROKEN"
    assert library.identify(rep.obstruction.group)[0] == "Z4"
    assert rep.splittings == ()


def test_toric_fractional_e_is_preserved():
    rep = ac.analyze_action(*built("toric-frac-e"))
    assert rep.verdict == "PRESERVED"
    assert library.identify(rep.obstruction.group)[0] == "Z2xZ2"
    assert len(rep.analysis.structures) == 2 and len(rep.analysis.classes) == 2


def test_toric_swap_fails_first_obstruction():
    action, A = built("toric-swap")
    rep = ac.analyze_action(action, A)
    assert rep.verdict == "FAILED"
    M = action.metric
    g, b = rep.first_witness
    assert M.label(b) == "e" and M.label(action.alpha[g](b)) == "m"
    with pytest.raises(ac.FirstObstructionFailed):
        ac.obstruction_extension(action, A)


def test_metaplectic_fails_first_obstruction():
    action, A = built("metaplectic")
    assert not ac.first_obstruction(action, A)
    M = action.metric
    assert cd.etale_aut_group(M, A).group.order == 3
    # the diagonal subgroup is isotropic too and also not stabilized
    diag = cd.make_etale(M, [(1, 1)])
    assert not ac.first_obstruction(action, diag)


def test_dic12():
    rep = ac.analyze_action(*built("dic12"))
    assert rep.verdict == "BROKEN"
    E = rep.obstruction.group
    assert E.order == 12 and library.identify(E)[0] == "Dic12"


def test_landau_every_subgroup_has_one_structure():
    action, A = built("landau")
    for H in gr.cayley_subgroups(action.G):
        sub, _ = ac.restrict_action(action, H)
        an = ac.enumerate_equivariant_structures(sub, A)
        assert len(an.structures) == 1 and len(an.classes) == 1


def test_extension_element_layout():
    ob = ac.obstruction_extension(*built("toric-frac-e"))
    for g in range(2):
        for chi in range(2):
            x = ob.element(chi, g)
            assert ob.split(x) == (chi, g)
            assert ob.extension.pi(x) == g


def test_make_action_rejects_non_homomorphism(toric):
    swap = me.Isometry.from_function(toric.group, lambda x: (x[1], x[0]))
    with pytest.raises(ValidationError, match="homomorphism"):
        ac.make_action(gr.cyclic_group(3), toric, [swap])


def test_make_action_rejects_bad_omega(toric):
    Z3 = gr.cyclic_group(3)
    with pytest.raises(ValidationError, match="cocycle"):
        ac.make_action(Z3, toric, None, lambda g, h: (1, 0) if (g, h) == (1, 1) else (0, 0))


def test_induced_action_strict_ignores_lambda():
    action, A = built("z4-induce")
    an = ac.enumerate_equivariant_structures(action, A)
    assert len(an.structures) == 2
    for s in an.structures:
        ind, ct = ac.induce_condensed_action(action, A, s)
        assert me.identify_metric(ct.result) == "Z(Vec(Z2))"
        assert ind.is_trivial


def test_adjusted_induced_action_depends_on_lambda():
    action, A = built("z4-induce")
    omegas = []
    for s in ac.enumerate_equivariant_structures(action, A).structures:
        ind, ct = ac.induce_condensed_action(action, A, s, adjust=True)
        omegas.append(ct.result.label(ind.omega_element(1, 1)))
    assert omegas == ["1", "m^2"]


def test_coboundary_fractionalization_needs_adjusting(zvec4):
    """omega = d(y) with y(g) = m on Z3: a trivial class whose values leave B-perp."""
    Z3 = gr.cyclic_group(3)
    m = zvec4.parse_element("m")
    y = [zvec4.group.zero, m, zvec4.group.zero]
    add, neg = zvec4.group.add, zvec4.group.neg
    action = ac.make_action(Z3, zvec4, None, lambda g, h: add(add(y[h], neg(y[Z3.op(g, h)])), y[g]))
    A = cd.make_etale(zvec4, ["a^2"])
    lam = ac.enumerate_equivariant_structures(action, A).structures[0]
    with pytest.raises(ac.DescentError, match="does not descend") as e:
        ac.induce_condensed_action(action, A, lam)
    assert e.value.witness == (1, 2)
    ind, _ = ac.induce_condensed_action(action, A, lam, adjust=True)
    ind.validate()


def test_induce_rejects_non_structure():
    action, A = built("z4-induce")
    with pytest.raises(ValidationError, match="lambda"):
        ac.induce_condensed_action(action, A, ac.EquivariantStructure((1, 1)))


def _shift(action, rnd):
    """omega + d(beta) for a random normalized 1-cochain beta."""
    coeffs = action.coeffs
    G = action.G
    beta = [0 if g == G.identity else rnd.randrange(coeffs.M.order) for g in range(G.order)]
    omega = co.add_cochains(action.omega, co.coboundary(beta, coeffs), coeffs)
    return ac.CategoricalAction(G, action.metric, action.alpha, omega)


@settings(max_examples=40)
@given(st.randoms(use_true_random=False))
def test_splittings_are_equivariant_structures(rnd):
    sc = random_scenario(random.Random(rnd.random()), SMALL)
    rep = ac.analyze_action(sc.action, sc.algebra)
    assert rep.first_obstruction
    ob = rep.obstruction
    brute = all_sections(ob.extension)
    assert sorted(s.section for s in rep.splittings) == brute
    assert sorted(x.section(ob).section for x in rep.analysis.structures) == brute
    for chi in rep.analysis.structures:
        assert ac.is_equivariant_structure(chi.chi, ob.module, ob.cocycle)
    if rep.analysis.preserved:
        assert len(rep.analysis.classes) == len(co.h1_classes(ob.module))
        assert len(rep.splitting_classes) == len(rep.analysis.classes)
        assert len(rep.analysis.structures) == len(co.one_cocycles(ob.module))


@settings(max_examples=40)
@given(st.randoms(use_true_random=False))
def test_verdict_invariant_under_coboundary_shift(rnd):
    sc = random_scenario(random.Random(rnd.random()), SMALL)
    shifted = _shift(sc.action, rnd)
    a = ac.analyze_action(sc.action, sc.algebra)
    b = ac.analyze_action(shifted, sc.algebra)
    assert a.verdict == b.verdict
    assert len(a.analysis.structures) == len(b.analysis.structures)
    assert len(a.analysis.classes) == len(b.analysis.classes)
    assert gr.is_isomorphic(a.obstruction.group, b.obstruction.group) is not None


@settings(max_examples=30)
@given(st.randoms(use_true_random=False))
def test_induced_action_is_valid(rnd):
    sc = random_scenario(random.Random(rnd.random()), SMALL)
    an = ac.enumerate_equivariant_structures(sc.action, sc.algebra)
    for s in an.structures[:3]:
        ind, ct = ac.induce_condensed_action(sc.action, sc.algebra, s, adjust=True)
        ind.validate()
        assert ind.metric is ct.result
        try:
            strict, _ = ac.induce_condensed_action(sc.action, sc.algebra, s)
        except ac.DescentError:
            continue
        # when both exist the isometries agree and the classes differ by the lift of lam
        assert [a.permutation for a in strict.alpha] == [a.permutation for a in ind.alpha]
