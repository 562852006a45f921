import pytest
from hypothesis import HealthCheck, settings

from condensa import groups as gr
from condensa import metric as me

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def toric():
    return me.drinfeld_double_abelian(gr.FiniteAbelianGroup((2,)), labels=("1", "e", "m", "eps"))


@pytest.fixture
def zvec4():
    A = gr.FiniteAbelianGroup((4,))
    D = gr.FiniteAbelianGroup((4, 4))
    return me.drinfeld_double_abelian(A, labels=me.coordinate_labels(D, ("a", "m")))


@pytest.fixture
def z2():
    return gr.cyclic_group(2)
