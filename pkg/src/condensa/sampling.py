"""Random valid scenarios: a metric group, an action and an algebra the action stabilizes."""
from __future__ import annotations

import random
from itertools import product
from math import gcd, isqrt
from dataclasses import dataclass
from functools import lru_cache

from . import cohomology as co
from . import groups as gr
from . import library
from .action import CategoricalAction, first_obstruction, make_action
from .condense import EtaleAlgebra, enumerate_etale
from .config import RandomSuiteConfig
from .errors import ValidationError
from .metric import (MetricGroup, deligne_product, drinfeld_double_abelian, find_isometry, isometry_group,
                     make_metric_group, named_metric_groups, trivial_metric_group)
from .qz import QZ


@lru_cache(maxsize=None)
def metric_pool(max_order: int = 36) -> tuple[tuple[str, MetricGroup], ...]:
    """Named theories, doubles and a few stacks, all of order <= max_order."""
    Z = gr.FiniteAbelianGroup
    out = list(named_metric_groups())
    for f in [(5,), (6,)]:
        out.append((f"Z(Vec(Z{f[0]}))", drinfeld_double_abelian(Z(f))))
    sem = dict(out)["Sem"]
    toric = dict(out)["Z(Vec(Z2))"]
    out.append(("Z(Vec(Z2)) x Sem", deligne_product(toric, sem)))
    out.append(("Z(Vec(Z2)) x Z(Vec(Z3))", deligne_product(toric, dict(out)["Z(Vec(Z3))"])))
    out.append(("metaplectic pair", make_metric_group(Z((3, 3)), lambda x: f"{(x[0] ** 2 - x[1] ** 2) % 3}/3")))
    return tuple((n, M) for n, M in out if M.order <= max_order)


@lru_cache(maxsize=None)
def group_pool(max_order: int = 6) -> tuple[tuple[str, gr.CayleyGroup], ...]:
    return tuple((n, G) for n, _, G in library.small_groups() if G.order <= max_order)


@lru_cache(maxsize=None)
def _isometry_group(name: str, M: MetricGroup) -> gr.CayleyGroup:
    return isometry_group(M, cap=None)


@lru_cache(maxsize=None)
def _homs(gname, G, mname, M) -> tuple[tuple[int, ...], ...]:
    return tuple(gr.iter_homomorphisms(G, _isometry_group(mname, M)))


@dataclass(frozen=True, eq=False)
class RandomScenario:
    group_name: str
    metric_name: str
    action: CategoricalAction
    algebra: EtaleAlgebra

    def __repr__(self):
        return (f"RandomScenario(G={self.group_name}, M={self.metric_name}, "
                f"A={self.algebra.describe()})")


def random_scenario(rng: random.Random, cfg: RandomSuiteConfig = RandomSuiteConfig(),
                    attempts: int = 20) -> RandomScenario:
    """A random (G, alpha, omega, A) with alpha stabilizing A, so the first obstruction passes.

    Nine draws in ten insist on a nontrivial algebra, redrawing the data up
    to ``attempts`` times.
    """
    want_nontrivial = rng.random() < 0.9
    for _ in range(attempts):
        gname, G = rng.choice(group_pool(cfg.max_group_order))
        mname, M = rng.choice(metric_pool(cfg.max_metric_order))
        I = _isometry_group(mname, M)
        hom = rng.choice(_homs(gname, G, mname, M))
        images = {g: I.elements[hom[g]] for g in G.generators}
        base = make_action(G, M, images)
        algs = [A for A in enumerate_etale(M, cap=None) if first_obstruction(base, A)]
        nontrivial = [A for A in algs if A.order > 1]
        if want_nontrivial and not nontrivial:
            continue
        A = rng.choice(nontrivial if want_nontrivial else algs)
        omega = co.random_twisted_2cocycle(base.coeffs, rng)
        action = CategoricalAction(G, M, base.alpha, omega)
        return RandomScenario(gname, mname, action, A)
    return RandomScenario(gname, mname, base, rng.choice(algs))


# ---------------------------------------------------------------------------
# exhaustive corpus of small metric groups
#
# A metric group is the orthogonal sum of its p-primary parts, and each of
# those is an orthogonal sum of forms on cyclic groups Z_{p^k} and, for p = 2,
# forms on Z_{2^k} x Z_{2^k}. So sums of such pieces reach every isometry class.


def _prime_power(n: int) -> bool:
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return n == 1


def quadratic_forms(A: gr.FiniteAbelianGroup):
    """Every nondegenerate quadratic form on A, as a MetricGroup.

    q(x) = sum_i k_i x_i^2 / (2 d_i) + sum_{i<j} l_ij x_i x_j / gcd(d_i, d_j),
    with k_i even when d_i is odd.
    """
    f = A.factors
    r = len(f)
    diag = [[k for k in range(2 * d) if d % 2 == 0 or k % 2 == 0] for d in f]
    pairs = [(i, j) for i in range(r) for j in range(i + 1, r)]
    off = [range(gcd(f[i], f[j])) for i, j in pairs]
    for ks in product(*diag):
        for ls in product(*off):
            def q(x, ks=ks, ls=ls):
                total = QZ(0)
                for i in range(r):
                    total = total + QZ(ks[i] * x[i] * x[i], 2 * f[i])
                for (i, j), l in zip(pairs, ls):
                    total = total + QZ(l * x[i] * x[j], gcd(f[i], f[j]))
                return total
            try:
                yield make_metric_group(A, q)
            except ValidationError:
                continue


def _signature(M: MetricGroup) -> tuple:
    A = M.group
    return tuple(sorted((A.element_order(x), M.twist(x)) for x in A.elements))


def _dedupe(groups) -> list[MetricGroup]:
    buckets: dict[tuple, list[MetricGroup]] = {}
    for M in groups:
        bucket = buckets.setdefault(_signature(M), [])
        if not any(find_isometry(M, N) is not None for N in bucket):
            bucket.append(M)
    return [M for key in sorted(buckets, key=str) for M in buckets[key]]


@lru_cache(maxsize=None)
def _indecomposable_pieces(n: int) -> tuple[MetricGroup, ...]:
    """Forms on Z_n and, for n = 4^k, on Z_{2^k} x Z_{2^k}; only for prime powers n."""
    if n == 1 or not _prime_power(n):
        return ()
    pieces = list(quadratic_forms(gr.FiniteAbelianGroup((n,))))
    r = isqrt(n)
    if r * r == n and n % 2 == 0:
        pieces += quadratic_forms(gr.FiniteAbelianGroup((r, r)))
    return tuple(_dedupe(pieces))


@lru_cache(maxsize=None)
def forms_up_to_isometry(n: int) -> tuple[MetricGroup, ...]:
    """One representative per isometry class of metric groups of order n."""
    if n == 1:
        return (trivial_metric_group(),)
    found = []
    for d in range(2, n + 1):
        if n % d:
            continue
        for P in _indecomposable_pieces(d):
            for Q in forms_up_to_isometry(n // d):
                found.append(P if Q.order == 1 else deligne_product(P, Q))
    return tuple(_dedupe(found))


@lru_cache(maxsize=None)
def metric_corpus(max_order: int = 64) -> tuple[tuple[str, MetricGroup], ...]:
    """Every metric group of order <= max_order, one per isometry class."""
    out = []
    for n in range(1, max_order + 1):
        for i, M in enumerate(forms_up_to_isometry(n)):
            out.append((f"order {n} #{i} on {M.group}", M))
    return tuple(out)
