"""Named small groups (every group of order <= 16, plus Dic12) for isomorphism-type reports."""
from __future__ import annotations

from functools import lru_cache

from . import groups as gr


def _abelian(*factors):
    return gr.FiniteAbelianGroup(factors).to_cayley()


def _pauli():
    # (phase k, x, z) for i^k X^x Z^z, with Z X = -X Z
    def mul(p, q):
        k1, x1, z1 = p
        k2, x2, z2 = q
        return ((k1 + k2 + 2 * z1 * x2) % 4, x1 ^ x2, z1 ^ z2)

    return gr.from_generators([(1, 0, 0), (0, 1, 0), (0, 0, 1)], mul, (0, 0, 0))


def _c2sq_rtimes_c4():
    # (C4 x C2) x| C2 with c: a -> ab, b -> b
    N = gr.FiniteAbelianGroup((4, 2))
    swap = tuple(N.index(((x[0]) % 4, (x[1] + x[0]) % 2)) for x in N.elements)
    ident = tuple(range(N.order))
    return gr.semidirect_product(N, gr.cyclic_group(2), [ident, swap])


# (ascii name, display name, builder)
_CATALOG = [
    ("Z1", "Z₁", lambda: gr.cyclic_group(1)),
    ("Z2", "Z₂", lambda: gr.cyclic_group(2)),
    ("Z3", "Z₃", lambda: gr.cyclic_group(3)),
    ("Z4", "Z₄", lambda: gr.cyclic_group(4)),
    ("Z2xZ2", "Z₂×Z₂", lambda: _abelian(2, 2)),
    ("Z5", "Z₅", lambda: gr.cyclic_group(5)),
    ("Z6", "Z₆", lambda: gr.cyclic_group(6)),
    ("S3", "S₃", lambda: gr.metacyclic(3, 2, -1, 0)),
    ("Z7", "Z₇", lambda: gr.cyclic_group(7)),
    ("Z8", "Z₈", lambda: gr.cyclic_group(8)),
    ("Z4xZ2", "Z₄×Z₂", lambda: _abelian(2, 4)),
    ("Z2xZ2xZ2", "Z₂×Z₂×Z₂", lambda: _abelian(2, 2, 2)),
    ("D8", "D₈", lambda: gr.metacyclic(4, 2, -1, 0)),
    ("Q8", "Q₈", lambda: gr.metacyclic(4, 2, -1, 2)),
    ("Z9", "Z₉", lambda: gr.cyclic_group(9)),
    ("Z3xZ3", "Z₃×Z₃", lambda: _abelian(3, 3)),
    ("Z10", "Z₁₀", lambda: gr.cyclic_group(10)),
    ("D10", "D₁₀", lambda: gr.metacyclic(5, 2, -1, 0)),
    ("Z11", "Z₁₁", lambda: gr.cyclic_group(11)),
    ("Z12", "Z₁₂", lambda: gr.cyclic_group(12)),
    ("Z6xZ2", "Z₆×Z₂", lambda: _abelian(2, 6)),
    ("A4", "A₄", lambda: gr.from_permutations([(1, 2, 0, 3), (1, 0, 3, 2)])),
    ("D12", "D₁₂", lambda: gr.metacyclic(6, 2, -1, 0)),
    ("Dic12", "Dic₁₂", lambda: gr.metacyclic(6, 2, -1, 3)),
    ("Z13", "Z₁₃", lambda: gr.cyclic_group(13)),
    ("Z14", "Z₁₄", lambda: gr.cyclic_group(14)),
    ("D14", "D₁₄", lambda: gr.metacyclic(7, 2, -1, 0)),
    ("Z15", "Z₁₅", lambda: gr.cyclic_group(15)),
    ("Z16", "Z₁₆", lambda: gr.cyclic_group(16)),
    ("Z8xZ2", "Z₈×Z₂", lambda: _abelian(2, 8)),
    ("Z4xZ4", "Z₄×Z₄", lambda: _abelian(4, 4)),
    ("Z4xZ2xZ2", "Z₄×Z₂×Z₂", lambda: _abelian(2, 2, 4)),
    ("Z2xZ2xZ2xZ2", "Z₂×Z₂×Z₂×Z₂", lambda: _abelian(2, 2, 2, 2)),
    ("D16", "D₁₆", lambda: gr.metacyclic(8, 2, -1, 0)),
    ("SD16", "SD₁₆", lambda: gr.metacyclic(8, 2, 3, 0)),
    ("Q16", "Q₁₆", lambda: gr.metacyclic(8, 2, -1, 4)),
    ("M16", "M₁₆", lambda: gr.metacyclic(8, 2, 5, 0)),
    ("Z4:Z4", "Z₄⋊Z₄", lambda: gr.metacyclic(4, 4, -1, 0)),
    ("Z2^2:Z4", "(Z₄×Z₂)⋊Z₂", _c2sq_rtimes_c4),
    ("Z2xD8", "Z₂×D₈", lambda: gr.direct_product(gr.cyclic_group(2), gr.metacyclic(4, 2, -1, 0))),
    ("Z2xQ8", "Z₂×Q₈", lambda: gr.direct_product(gr.cyclic_group(2), gr.metacyclic(4, 2, -1, 2))),
    ("Pauli", "Z₄∘D₈", _pauli),
]


@lru_cache(maxsize=None)
def small_groups() -> tuple[tuple[str, str, gr.CayleyGroup], ...]:
    return tuple((name, pretty, build()) for name, pretty, build in _CATALOG)


def get(name: str) -> gr.CayleyGroup:
    for n, _, G in small_groups():
        if n == name:
            return G
    raise KeyError(name)


def identify(G) -> tuple[str, str]:
    """(ascii, display) name of G, or a generic label if not in the catalogue."""
    Gc = gr.as_cayley(G)
    for name, pretty, H in small_groups():
        if H.order == Gc.order and gr.is_isomorphic(Gc, H) is not None:
            return name, pretty
    return f"order-{Gc.order}", f"order-{Gc.order} group, id unassigned"
