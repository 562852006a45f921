import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from condensa import groups as gr
from condensa import metric as me
from condensa.errors import CapExceeded, ValidationError
from condensa.qz import QZ
from condensa.sampling import metric_pool

pool = st.sampled_from(metric_pool(64))


def test_toric_code_modular_data(toric):
    md = me.modular_data(toric)
    assert md.labels == ("1", "e", "m", "eps")
    assert [str(t) for t in md.t] == ["0", "0", "0", "1/2"]
    signs = [[md.s_entry_phase(x, y) for y in range(4)] for x in range(4)]
    assert signs == [["1", "1", "1", "1"], ["1", "1", "-1", "-1"], ["1", "-1", "1", "-1"], ["1", "-1", "-1", "1"]]


def test_toric_from_quadratic_form():
    M = me.make_metric_group(gr.FiniteAbelianGroup((2, 2)), lambda x: QZ(x[0] * x[1], 2))
    assert me.identify_metric(M) == "Z(Vec(Z2))"


def test_degenerate_rejected():
    with pytest.raises(ValidationError, match="degenerate"):
        me.make_metric_group(gr.FiniteAbelianGroup((2,)), ["0", "0"])


def test_non_quadratic_rejected():
    with pytest.raises(ValidationError, match="not quadratic"):
        me.make_metric_group(gr.FiniteAbelianGroup((3,)), ["0", "1/3", "1/3"][:2] + ["2/3"])


def test_floats_rejected():
    with pytest.raises(ValueError):
        me.make_metric_group(gr.FiniteAbelianGroup((2,)), [0.0, 0.25])


def test_trivial_metric_group():
    M = me.trivial_metric_group()
    md = me.modular_data(M)
    assert M.order == 1 and md.t == (QZ(0),) and md.s_exponents == ((QZ(0),),)
    assert len(me.isometries(M)) == 1


def test_zvec4_twists(zvec4):
    assert zvec4.order == 16
    assert str(zvec4.twist(zvec4.parse_element("am"))) == "1/4"
    table = [[str(zvec4.twist((i, j))) for j in range(4)] for i in range(4)]
    expected = [[str(QZ(i * j, 4)) for j in range(4)] for i in range(4)]
    assert table == expected
    assert zvec4.labels[:5] == ("1", "m", "m^2", "m^3", "a")


def test_double_contains_lagrangian():
    for f in [(2,), (3,), (2, 2), (4,), (6,)]:
        A = gr.FiniteAbelianGroup(f)
        D = me.drinfeld_double_abelian(A)
        k = A.rank
        L = [x + (0,) * k for x in A.elements]
        assert all(not D.twist(x) for x in L)
        assert all(not D.pairing(x, y) for x in L for y in L)


def test_double_cap():
    with pytest.raises(CapExceeded):
        me.drinfeld_double_abelian(gr.FiniteAbelianGroup((300,)))


def test_isometry_groups(toric):
    assert me.isometry_group(toric).order == 2
    Z3 = me.drinfeld_double_abelian(gr.FiniteAbelianGroup((3,)))
    neg = me.Isometry.from_function(Z3.group, lambda x: (-x[0], -x[1]))
    assert neg.is_isometry(Z3)
    assert any(f.permutation == neg.permutation for f in me.isometries(Z3))
    assert me.isometry_group(me.trivial_metric_group()).order == 1


def test_named_groups_identify_themselves():
    for name, M in me.named_metric_groups():
        assert me.identify_metric(M) == name


def test_double_semion_not_toric():
    names = dict(me.named_metric_groups())
    assert me.find_isometry(names["Z(Sem)"], names["Z(Vec(Z2))"]) is None


def test_deligne_labels():
    a = me.drinfeld_double_abelian(gr.FiniteAbelianGroup((2,)), labels=("1", "e", "m", "f"))
    b = me.make_metric_group(gr.FiniteAbelianGroup((2,)), ["0", "1/4"], labels=("1", "s"))
    P = me.deligne_product(a, b)
    assert P.order == 8 and P.label((1, 1, 1)) == "fs"
    assert P.twist(P.parse_element("fs")) == QZ(3, 4)


@given(pool)
def test_quadratic_form_laws(named):
    _, M = named
    A = M.group
    for x in A.elements:
        assert M.twist(A.neg(x)) == M.twist(x)
        assert 2 * M.twist(x) == M.pairing(x, x)
        for n in (2, 3):
            assert M.twist(A.scale(n, x)) == n * n * M.twist(x)
    for x, y, z in itertools.islice(itertools.product(A.elements, repeat=3), 300):
        assert M.pairing(A.add(x, y), z) == M.pairing(x, z) + M.pairing(y, z)


@given(pool)
def test_modular_data_symmetry_and_unitarity(named):
    _, M = named
    md = me.modular_data(M)
    n = md.order
    S = md.s_exponents
    assert all(S[x][y] == S[y][x] for x in range(n) for y in range(n))
    # (S S-bar)_{xz} = (1/n) sum_y exp(2 pi i (b(x,y) - b(z,y))) is the identity
    for x in range(n):
        for z in range(n):
            diffs = [S[x][y] - S[z][y] for y in range(n)]
            assert all(not d for d in diffs) == (x == z)


@given(pool)
def test_isometries_form_a_group(named):
    _, M = named
    isos = me.isometries(M)
    perms = {f.permutation for f in isos}
    assert isos[0].permutation == tuple(range(M.order))
    for f in isos[:6]:
        assert f.inverse().permutation in perms
        for g in isos[:6]:
            assert f.compose(g).permutation in perms
