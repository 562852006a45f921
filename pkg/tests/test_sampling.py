import random

from condensa import groups as gr
from condensa import sampling as sa
from condensa.config import RandomSuiteConfig
from condensa.action import first_obstruction

FACTORS = {
    2: [(2,)], 3: [(3,)], 4: [(4,), (2, 2)], 5: [(5,)], 6: [(6,)], 7: [(7,)],
    8: [(8,), (2, 4), (2, 2, 2)], 9: [(9,), (3, 3)], 12: [(12,), (2, 6)],
}


def test_classification_matches_brute_force():
    """Sums of cyclic and rank-two pieces reach every class found by trying all forms."""
    for n, lists in FACTORS.items():
        brute = []
        for f in lists:
            brute += sa.quadratic_forms(gr.FiniteAbelianGroup(f))
        assert len(sa._dedupe(brute)) == len(sa.forms_up_to_isometry(n)), n


def test_known_class_counts():
    counts = [len(sa.forms_up_to_isometry(n)) for n in range(1, 10)]
    assert counts == [1, 2, 2, 9, 2, 4, 2, 12, 4]


def test_corpus_is_sorted_by_order():
    orders = [M.order for _, M in sa.metric_corpus(16)]
    assert orders == sorted(orders) and orders[0] == 1


def test_random_scenarios_are_valid_and_reproducible():
    cfg = RandomSuiteConfig(scenarios=20)
    a = [sa.random_scenario(random.Random(cfg.seed + i), cfg) for i in range(cfg.scenarios)]
    b = [sa.random_scenario(random.Random(cfg.seed + i), cfg) for i in range(cfg.scenarios)]
    assert [repr(x) for x in a] == [repr(x) for x in b]
    for sc in a:
        assert sc.action.G.order <= cfg.max_group_order
        assert sc.action.metric.order <= cfg.max_metric_order
        assert first_obstruction(sc.action, sc.algebra)
