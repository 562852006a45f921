"""Finite groups: abelian groups by cyclic factors, small groups by Cayley table.

Both kinds expose the same index-level protocol (``order``, ``identity``,
``op``, ``inv``, ``element``, ``index``, ``label``) so homomorphisms and
extensions can mix them freely.  Element indices are the currency; the
abelian kind additionally speaks coordinate tuples.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd, prod
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import DEFAULT_CAP, CapExceeded, ValidationError


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _prime_powers(n: int) -> dict[int, int]:
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 1) * p
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 1) * n
    return out


def invariant_factors(factors: Iterable[int]) -> tuple[int, ...]:
    """Canonical d1 | d2 | ... | dk form of a product of cyclic groups."""
    by_prime: dict[int, list[int]] = {}
    for d in factors:
        for p, q in _prime_powers(d).items():
            by_prime.setdefault(p, []).append(q)
    if not by_prime:
        return ()
    width = max(len(v) for v in by_prime.values())
    cols = [1] * width
    for powers in by_prime.values():
        powers = sorted(powers, reverse=True)
        for i, q in enumerate(powers):
            cols[i] *= q
    return tuple(sorted(cols))


# ---------------------------------------------------------------------------
# abelian groups


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z_{d1} x ... x Z_{dk} with elements as coordinate tuples.

    ``factors`` may be any list of cyclic orders >= 2 (e.g. (3, 3, 2, 2) for a
    stacked double); ``invariant_factors`` gives the canonical form.
    """

    factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(d) for d in self.factors))
        for d in self.factors:
            if d < 2:
                raise ValidationError(f"cyclic factor {d} must be >= 2", field="factors")

    @classmethod
    def canonical(cls, factors: Iterable[int]) -> "FiniteAbelianGroup":
        return cls(invariant_factors(factors))

    @cached_property
    def invariant_factors(self) -> tuple[int, ...]:
        return invariant_factors(self.factors)

    @cached_property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @cached_property
    def exponent(self) -> int:
        return reduce(_lcm, self.factors, 1)

    @cached_property
    def elements(self) -> tuple[tuple[int, ...], ...]:
        """All elements in lexicographic order of coordinates."""
        return tuple(itertools.product(*(range(d) for d in self.factors)))

    @cached_property
    def _strides(self) -> tuple[int, ...]:
        strides = []
        s = 1
        for d in reversed(self.factors):
            strides.append(s)
            s *= d
        return tuple(reversed(strides))

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.factors)

    @property
    def generators(self) -> tuple[tuple[int, ...], ...]:
        """Standard basis e_i."""
        k = len(self.factors)
        return tuple(tuple(1 if j == i else 0 for j in range(k)) for i in range(k))

    def normalize(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != len(self.factors):
            raise ValidationError(f"element {list(x)} has wrong length for factors {list(self.factors)}")
        return tuple(int(a) % d for a, d in zip(x, self.factors))

    def contains(self, x) -> bool:
        return len(x) == len(self.factors) and all(0 <= a < d for a, d in zip(x, self.factors))

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.factors))

    def sub(self, x, y):
        return tuple((a - b) % d for a, b, d in zip(x, y, self.factors))

    def neg(self, x):
        return tuple((-a) % d for a, d in zip(x, self.factors))

    def scale(self, n: int, x):
        return tuple((n * a) % d for a, d in zip(x, self.factors))

    def element_order(self, x) -> int:
        return reduce(_lcm, (d // gcd(a, d) for a, d in zip(x, self.factors)), 1)

    def combine(self, coeffs: Sequence[int], basis: Sequence[Sequence[int]]):
        out = self.zero
        for c, b in zip(coeffs, basis):
            out = self.add(out, self.scale(c, b))
        return out

    # index protocol
    def index(self, x) -> int:
        return sum(a * s for a, s in zip(x, self._strides))

    def element(self, i: int):
        return self.elements[i]

    @property
    def identity(self) -> int:
        return 0

    def op(self, i: int, j: int) -> int:
        return self.index(self.add(self.elements[i], self.elements[j]))

    def inv(self, i: int) -> int:
        return self.index(self.neg(self.elements[i]))

    def label(self, i: int) -> str:
        return "(" + ",".join(map(str, self.elements[i])) + ")"

    def to_cayley(self) -> "CayleyGroup":
        n = self.order
        table = tuple(tuple(self.op(i, j) for j in range(n)) for i in range(n))
        return CayleyGroup(table, 0, tuple(self.label(i) for i in range(n)), self.elements, check=False)

    def span(self, gens: Iterable[Sequence[int]]) -> frozenset:
        S = {self.zero}
        for g in gens:
            S = _add_cyclic(self, S, tuple(g))
        return frozenset(S)

    def __str__(self):
        if not self.factors:
            return "Z1"
        return "x".join(f"Z{d}" for d in self.factors)


def _add_cyclic(A: FiniteAbelianGroup, S: set, x) -> set:
    if x in S:
        return set(S)
    out = set(S)
    mult = x
    while mult not in S:
        out.update(A.add(s, mult) for s in S)
        mult = A.add(mult, x)
    return out


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a FiniteAbelianGroup: greedy lexicographic generators + element set."""

    generators: tuple[tuple[int, ...], ...]
    elements: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)

    def sorted_elements(self):
        return sorted(self.elements)

    def __contains__(self, x):
        return tuple(x) in self.elements


def greedy_generators(A: FiniteAbelianGroup, elements: Iterable) -> tuple:
    """Lexicographically greedy generating set of the subgroup formed by ``elements``."""
    target = set(elements)
    gens = []
    span = {A.zero}
    for x in sorted(target):
        if len(span) == len(target):
            break
        if x not in span:
            gens.append(x)
            span = _add_cyclic(A, span, x)
    return tuple(gens)


def make_subgroup(A: FiniteAbelianGroup, gens: Iterable[Sequence[int]]) -> Subgroup:
    elems = A.span(A.normalize(g) for g in gens)
    return Subgroup(greedy_generators(A, elems), elems)


def _check_cap(what, size, cap):
    if cap is not None and size > cap:
        raise CapExceeded(what, size, cap)


def enumerate_subgroups(A: FiniteAbelianGroup, cap: int | None = DEFAULT_CAP,
                        allowed: Callable | None = None,
                        compatible: Callable | None = None) -> list[Subgroup]:
    """Every subgroup of ``A``, sorted by (order, greedy generators).

    ``allowed(x)`` and ``compatible(x, S)`` optionally restrict which elements may
    be adjoined; used for isotropic subgroup enumeration.
    """
    _check_cap("enumerate_subgroups", A.order, cap)
    elems = A.elements
    if allowed is not None:
        elems = tuple(x for x in elems if allowed(x))
    start = frozenset([A.zero])
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for S in frontier:
            for x in elems:
                if x in S:
                    continue
                if compatible is not None and not compatible(x, S):
                    continue
                T = frozenset(_add_cyclic(A, set(S), x))
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    subs = [Subgroup(greedy_generators(A, S), S) for S in seen]
    subs.sort(key=lambda s: (s.order, s.generators))
    return subs


def abelian_basis(elements: Sequence, add: Callable, zero) -> tuple[list, list[int]]:
    """Decompose a finite abelian group into cyclic summands by brute force.

    Returns (basis, orders) with orders non-increasing and the group equal to
    the internal direct sum of the cyclic groups generated by the basis.
    """
    n = len(elements)
    basis: list = []
    orders: list[int] = []
    span = {zero}

    def order_mod(x, S):
        k, y = 1, x
        while y not in S:
            y = add(y, x)
            k += 1
        return k

    while len(span) < n:
        best, best_k = None, 0
        for x in elements:
            k = order_mod(x, span)
            if k > best_k:
                best, best_k = x, k
        lift = None
        for s in sorted(span):
            y = add(best, s)
            if order_mod(y, {zero}) == best_k:
                lift = y
                break
        if lift is None:  # pragma: no cover - excluded by the structure theorem
            raise RuntimeError("no lift of maximal order found")
        basis.append(lift)
        orders.append(best_k)
        new = set()
        m = zero
        for _ in range(best_k):
            new.update(add(s, m) for s in span)
            m = add(m, lift)
        span = new
    if prod(orders) != n:  # pragma: no cover
        raise RuntimeError("cyclic decomposition does not cover the group")
    return basis, orders


@dataclass(frozen=True)
class Coordinates:
    """An isomorphism between an abstract finite abelian group and a FiniteAbelianGroup."""

    group: FiniteAbelianGroup
    basis: tuple            # images of the standard generators, in the abstract group
    to_coords: dict         # abstract element -> coordinate tuple
    from_coords: dict       # coordinate tuple -> abstract element


def coordinatize(elements: Sequence, add: Callable, zero) -> Coordinates:
    """Pick a cyclic basis (orders ascending) and tabulate coordinates."""
    basis, orders = abelian_basis(elements, add, zero)
    basis, orders = basis[::-1], orders[::-1]
    group = FiniteAbelianGroup(tuple(orders))
    to_c, from_c = {}, {}
    for coords in group.elements:
        x = zero
        for c, b in zip(coords, basis):
            for _ in range(c):
                x = add(x, b)
        to_c[x] = coords
        from_c[coords] = x
    return Coordinates(group, tuple(basis), to_c, from_c)


# ---------------------------------------------------------------------------
# Cayley groups


@dataclass(frozen=True, eq=False)
class CayleyGroup:
    """A finite group given by its multiplication table on indices 0..n-1."""

    table: tuple[tuple[int, ...], ...]
    identity: int = 0
    element_labels: tuple[str, ...] | None = None
    elements: tuple | None = None  # optional payload per element (e.g. a map)
    check: bool = True

    def __post_init__(self):
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", table)
        if self.element_labels is not None:
            object.__setattr__(self, "element_labels", tuple(self.element_labels))
        if self.check:
            validate_table(table, self.identity)

    @property
    def order(self) -> int:
        return len(self.table)

    def op(self, i: int, j: int) -> int:
        return self.table[i][j]

    @cached_property
    def _inverses(self) -> tuple[int, ...]:
        e = self.identity
        inv = [0] * self.order
        for i, row in enumerate(self.table):
            inv[i] = row.index(e)
        return tuple(inv)

    def inv(self, i: int) -> int:
        return self._inverses[i]

    def element(self, i: int):
        return i

    def index(self, x) -> int:
        if isinstance(x, str):
            if self.element_labels is None or x not in self.element_labels:
                raise ValidationError(f"unknown group element label {x!r}")
            return self.element_labels.index(x)
        x = int(x)
        if not 0 <= x < self.order:
            raise ValidationError(f"group element index {x} out of range")
        return x

    def label(self, i: int) -> str:
        if self.element_labels is not None:
            return self.element_labels[i]
        return "e" if i == self.identity else str(i)

    def power(self, i: int, k: int) -> int:
        out = self.identity
        if k < 0:
            i, k = self.inv(i), -k
        for _ in range(k):
            out = self.table[out][i]
        return out

    def conjugate(self, x: int, by: int) -> int:
        """by * x * by^-1"""
        return self.table[self.table[by][x]][self.inv(by)]

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for i in range(self.order):
            k, y = 1, i
            while y != self.identity:
                y = self.table[y][i]
                k += 1
            out.append(k)
        return tuple(out)

    def element_order(self, i: int) -> int:
        return self.element_orders[i]

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        n = self.order
        return all(t[i][j] == t[j][i] for i in range(n) for j in range(i + 1, n))

    @cached_property
    def center(self) -> frozenset:
        t = self.table
        return frozenset(i for i in range(self.order) if all(t[i][j] == t[j][i] for j in range(self.order)))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Greedy generating set: scan elements by (-order, index), keep those outside the current span."""
        order = sorted(range(self.order), key=lambda i: (-self.element_orders[i], i))
        gens: list[int] = []
        span = {self.identity}
        for i in order:
            if len(span) == self.order:
                break
            if i not in span:
                gens.append(i)
                span = set(generated_subgroup(self, gens))
        return tuple(gens)

    def __eq__(self, other):
        return isinstance(other, CayleyGroup) and self.table == other.table and self.identity == other.identity

    def __hash__(self):
        return hash((self.table, self.identity))

    def __repr__(self):
        return f"CayleyGroup(order={self.order})"


def validate_table(table, identity: int) -> None:
    n = len(table)
    if n < 1:
        raise ValidationError("group table is empty")
    if any(len(row) != n for row in table):
        raise ValidationError("group table is not square")
    if not 0 <= identity < n:
        raise ValidationError("identity index out of range")
    full = set(range(n))
    for i, row in enumerate(table):
        if set(row) != full:
            raise ValidationError(f"row {i} is not a permutation", witness=i)
    for j in range(n):
        if {table[i][j] for i in range(n)} != full:
            raise ValidationError(f"column {j} is not a permutation", witness=j)
    if table[identity] != tuple(range(n)) or any(table[i][identity] != i for i in range(n)):
        raise ValidationError("identity does not act trivially")
    T = np.asarray(table, dtype=np.int64)
    left = T[T][:, :, :]          # left[a, b, c] = T[T[a,b], c]
    right = T[:, T]               # right[a, b, c] = T[a, T[b,c]]
    bad = np.argwhere(left != right)
    if len(bad):
        a, b, c = (int(v) for v in bad[0])
        raise ValidationError(f"table is not associative at ({a},{b},{c})", witness=(a, b, c))


def as_cayley(G) -> CayleyGroup:
    return G.to_cayley() if isinstance(G, FiniteAbelianGroup) else G


def generated_subgroup(G, gens: Iterable[int]) -> list[int]:
    """Sorted indices of the subgroup generated by ``gens``."""
    gens = list(gens)
    seen = {G.identity}
    queue = [G.identity]
    while queue:
        x = queue.pop()
        for g in gens:
            y = G.op(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


def cyclic_group(n: int, name: str = "g") -> CayleyGroup:
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    labels = tuple("e" if i == 0 else (name if i == 1 else f"{name}^{i}") for i in range(n))
    return CayleyGroup(table, 0, labels, check=False)


def from_generators(gens: Sequence, mul: Callable, identity, label: Callable | None = None) -> CayleyGroup:
    """Close ``gens`` under ``mul`` (breadth first from the identity) and tabulate."""
    elems = [identity]
    index = {identity: 0}
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in gens:
            y = mul(x, g)
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
        i += 1
    table = tuple(tuple(index[mul(x, y)] for y in elems) for x in elems)
    labels = tuple(label(x) for x in elems) if label else None
    return CayleyGroup(table, 0, labels, tuple(elems))


def from_permutations(perms: Sequence[Sequence[int]]) -> CayleyGroup:
    """Permutation group generated by ``perms`` (composition (p*q)(x) = p(q(x)))."""
    perms = [tuple(p) for p in perms]
    n = len(perms[0]) if perms else 0
    ident = tuple(range(n))
    return from_generators(perms, lambda p, q: tuple(p[q[x]] for x in range(n)), ident)


def direct_product(G, H) -> CayleyGroup:
    G, H = as_cayley(G), as_cayley(H)
    m = H.order
    n = G.order * m
    table = tuple(
        tuple(G.op(a // m, b // m) * m + H.op(a % m, b % m) for b in range(n)) for a in range(n)
    )
    labels = tuple(f"({G.label(a // m)},{H.label(a % m)})" for a in range(n))
    return CayleyGroup(table, G.identity * m + H.identity, labels, check=False)


def semidirect_product(N, G, action: Sequence[Sequence[int]]) -> CayleyGroup:
    """N x| G with (n,g)(n',g') = (n * action[g][n'], gg'); element (n,g) has index g*|N| + n."""
    N, G = as_cayley(N), as_cayley(G)
    m = N.order
    n = m * G.order

    def mul(a, b):
        na, ga = a % m, a // m
        nb, gb = b % m, b // m
        return G.op(ga, gb) * m + N.op(na, action[ga][nb])

    table = tuple(tuple(mul(a, b) for b in range(n)) for a in range(n))
    labels = tuple(f"({N.label(a % m)},{G.label(a // m)})" for a in range(n))
    return CayleyGroup(table, G.identity * m + N.identity, labels)


def metacyclic(m: int, k: int, r: int, t: int) -> CayleyGroup:
    """<a, b | a^m, b^k = a^t, b a b^-1 = a^r>, element a^i b^j at index j*m + i."""
    n = m * k

    def mul(x, y):
        i, j = x % m, x // m
        i2, j2 = y % m, y // m
        s = j + j2
        carry = t if s >= k else 0
        return (s % k) * m + (i + pow(r, j, m) * i2 + carry) % m

    def lab(x):
        i, j = x % m, x // m
        parts = []
        if i:
            parts.append("a" if i == 1 else f"a^{i}")
        if j:
            parts.append("b" if j == 1 else f"b^{j}")
        return "".join(parts) or "e"

    table = tuple(tuple(mul(x, y) for y in range(n)) for x in range(n))
    return CayleyGroup(table, 0, tuple(lab(x) for x in range(n)))


def subgroup_cayley(G, elements: Iterable[int]) -> tuple[CayleyGroup, tuple[int, ...]]:
    """Cayley table of a subgroup, with the embedding (new index -> old index)."""
    elems = sorted(elements)
    pos = {x: i for i, x in enumerate(elems)}
    table = tuple(tuple(pos[G.op(a, b)] for b in elems) for a in elems)
    labels = tuple(G.label(a) for a in elems)
    return CayleyGroup(table, pos[G.identity], labels, check=False), tuple(elems)


def quotient_cayley(G, normal: Iterable[int]) -> tuple[CayleyGroup, tuple[int, ...]]:
    """G/K for a normal subgroup K; cosets indexed by least representative order."""
    K = sorted(normal)
    coset_of = {}
    reps = []
    for x in range(G.order):
        if x in coset_of:
            continue
        c = len(reps)
        reps.append(x)
        for k in K:
            coset_of[G.op(x, k)] = c
    table = tuple(tuple(coset_of[G.op(a, b)] for b in reps) for a in reps)
    labels = tuple(G.label(a) + "K" if a != G.identity else "e" for a in reps)
    Q = CayleyGroup(table, coset_of[G.identity], labels)
    return Q, tuple(coset_of[x] for x in range(G.order))


def is_normal(G, elements: Iterable[int]) -> bool:
    S = set(elements)
    return all(G.op(G.op(g, s), G.inv(g)) in S for g in range(G.order) for s in S)


def cayley_subgroups(G, cap: int | None = DEFAULT_CAP) -> list[frozenset]:
    """All subgroups of a small group, sorted by (order, sorted elements)."""
    _check_cap("cayley_subgroups", G.order, cap)
    start = frozenset([G.identity])
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for S in frontier:
            for x in range(G.order):
                if x in S:
                    continue
                T = frozenset(generated_subgroup(G, list(S) + [x]))
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    return sorted(seen, key=lambda S: (len(S), sorted(S)))


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True, eq=False)
class GroupHom:
    """A homomorphism given by images of element indices."""

    source: object
    target: object
    images: tuple[int, ...]
    check: bool = True

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(v) for v in self.images))
        if self.check:
            self.validate()

    def validate(self):
        S, T = self.source, self.target
        if len(self.images) != S.order:
            raise ValidationError("homomorphism image list has wrong length")
        if any(not 0 <= v < T.order for v in self.images):
            raise ValidationError("homomorphism image out of range")
        f = self.images
        for a in range(S.order):
            for b in range(S.order):
                if f[S.op(a, b)] != T.op(f[a], f[b]):
                    raise ValidationError(f"not a homomorphism at ({a},{b})", witness=(a, b))

    def __call__(self, i: int) -> int:
        return self.images[i]

    @property
    def kernel(self) -> frozenset:
        return frozenset(i for i, v in enumerate(self.images) if v == self.target.identity)

    @property
    def image(self) -> frozenset:
        return frozenset(self.images)

    @property
    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.order

    def compose(self, first: "GroupHom") -> "GroupHom":
        """self after first"""
        return GroupHom(first.source, self.target, tuple(self.images[v] for v in first.images), check=False)

    def inverse(self) -> "GroupHom":
        inv = [0] * len(self.images)
        for i, v in enumerate(self.images):
            inv[v] = i
        return GroupHom(self.target, self.source, tuple(inv), check=False)


def extend_hom(G, H, gens: Sequence[int], images: Sequence[int]) -> dict[int, int] | None:
    """The homomorphism on <gens> sending gens[i] -> images[i], or None if inconsistent."""
    f = {G.identity: H.identity}
    queue = [G.identity]
    while queue:
        x = queue.pop()
        fx = f[x]
        for g, h in zip(gens, images):
            y = G.op(x, g)
            v = H.op(fx, h)
            old = f.get(y)
            if old is None:
                f[y] = v
                queue.append(y)
            elif old != v:
                return None
    return f


def _order_of(G, i):
    return G.element_order(i) if isinstance(G, CayleyGroup) else G.element_order(G.element(i))


def iter_homomorphisms(G, H, gens: Sequence[int] | None = None,
                       injective: bool = False,
                       candidates: Callable | None = None) -> Iterator[tuple[int, ...]]:
    """Yield image tuples of all homomorphisms G -> H, lexicographic in generator images.

    Generator images are scanned over H ordered by (element order, index).
    """
    G, H = as_cayley(G), as_cayley(H)
    gens = list(G.generators if gens is None else gens)
    h_sorted = sorted(range(H.order), key=lambda i: (H.element_orders[i], i))
    if candidates is None:
        def candidates(k):
            og = G.element_orders[gens[k]]
            if injective:
                return [h for h in h_sorted if H.element_orders[h] == og]
            return [h for h in h_sorted if og % H.element_orders[h] == 0]

    cand = [list(candidates(k)) for k in range(len(gens))]

    def rec(k, chosen):
        f = extend_hom(G, H, gens[:k], chosen)
        if f is None:
            return
        if injective and len(set(f.values())) != len(f):
            return
        if k == len(gens):
            yield tuple(f[i] for i in range(G.order))
            return
        for h in cand[k]:
            yield from rec(k + 1, chosen + [h])

    yield from rec(0, [])


def _invariants(G: CayleyGroup):
    hist = {}
    for o in G.element_orders:
        hist[o] = hist.get(o, 0) + 1
    return (G.order, tuple(sorted(hist.items())), G.is_abelian, len(G.center))


def is_isomorphic(G, H) -> GroupHom | None:
    """First isomorphism G -> H in the documented search order, or None.

    Generators of G are the greedy generating set (elements by (-order, index));
    their candidate images run over H by (order, index) with matching order.
    """
    Gc, Hc = as_cayley(G), as_cayley(H)
    if _invariants(Gc) != _invariants(Hc):
        return None
    for images in iter_homomorphisms(Gc, Hc, injective=True):
        if len(set(images)) == Hc.order:
            return GroupHom(Gc, Hc, images, check=False)
    return None


def automorphisms(G, cap: int | None = None) -> list[tuple[int, ...]]:
    """All automorphisms as image tuples, identity first then lexicographic."""
    Gc = as_cayley(G)
    out = []
    for images in iter_homomorphisms(Gc, Gc, injective=True):
        out.append(images)
        if cap is not None and len(out) > cap:
            raise CapExceeded("automorphism count", len(out), cap)
    ident = tuple(range(Gc.order))
    out.sort(key=lambda f: (f != ident, f))
    return out


def automorphism_group(G, cap: int | None = DEFAULT_CAP, max_size: int = 2000) -> CayleyGroup:
    """Aut(G) as a Cayley group; element payloads are the image tuples.

    Composition convention: (f*g)(x) = f(g(x)).
    """
    _check_cap("automorphism_group", G.order, cap)
    auts = automorphisms(G, cap=max_size)
    pos = {f: i for i, f in enumerate(auts)}
    table = tuple(tuple(pos[tuple(f[x] for x in g)] for g in auts) for f in auts)
    Gc = as_cayley(G)
    labels = tuple(
        "id" if i == 0 else "{" + ",".join(f"{Gc.label(x)}->{Gc.label(f[x])}" for x in Gc.generators) + "}"
        for i, f in enumerate(auts)
    )
    return CayleyGroup(table, 0, labels, tuple(auts), check=False)
