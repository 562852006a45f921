"""Low-degree cohomology with twisted coefficients, extensions and their splittings.

Conventions: a G-module M is written additively, ``g.m`` is the action, and

    (dc)(g, h) = g.c(h) - c(gh) + c(g)                     for 1-cochains,
    (dw)(g, h, k) = g.w(h, k) - w(gh, k) + w(g, hk) - w(g, h)  for 2-cochains.

All cochains are normalized (vanish whenever an argument is the identity).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Callable, Iterable, Sequence

from . import groups as gr
from .errors import CapExceeded, ValidationError

COCYCLE_CAP = 100_000


@dataclass(frozen=True, eq=False)
class CoeffModule:
    """A finite abelian group M with an action of a finite group G by automorphisms.

    ``action[g][i]`` is the index of g.m_i, indices as in ``M.elements``.
    """

    M: gr.FiniteAbelianGroup
    G: gr.CayleyGroup
    action: tuple[tuple[int, ...], ...]
    check: bool = True

    def __post_init__(self):
        object.__setattr__(self, "G", gr.as_cayley(self.G))
        object.__setattr__(self, "action", tuple(tuple(p) for p in self.action))
        if self.check:
            self.validate()

    @classmethod
    def from_maps(cls, M, G, maps: Sequence[Callable]) -> "CoeffModule":
        """``maps[g]`` sends a coordinate tuple of M to its image under g."""
        act = tuple(tuple(M.index(M.normalize(f(x))) for x in M.elements) for f in maps)
        return cls(M, G, act)

    @classmethod
    def trivial(cls, M, G) -> "CoeffModule":
        G = gr.as_cayley(G)
        ident = tuple(range(M.order))
        return cls(M, G, (ident,) * G.order, check=False)

    def validate(self):
        M, G = self.M, self.G
        if len(self.action) != G.order:
            raise ValidationError("action must list one automorphism per group element")
        for g, p in enumerate(self.action):
            if sorted(p) != list(range(M.order)):
                raise ValidationError(f"action of {G.label(g)} is not a bijection")
            for i in range(M.order):
                for e in M.generators:
                    j = M.index(e)
                    if p[self.add(i, j)] != self.add(p[i], p[j]):
                        raise ValidationError(f"action of {G.label(g)} is not additive")
        if self.action[G.identity] != tuple(range(M.order)):
            raise ValidationError("identity must act trivially")
        for g in range(G.order):
            for h in range(G.order):
                gh = self.action[G.op(g, h)]
                if any(gh[i] != self.action[g][self.action[h][i]] for i in range(M.order)):
                    raise ValidationError(
                        f"action is not a homomorphism at ({G.label(g)},{G.label(h)})", witness=(g, h))

    @cached_property
    def _add(self) -> tuple[tuple[int, ...], ...]:
        M = self.M
        return tuple(tuple(M.op(i, j) for j in range(M.order)) for i in range(M.order))

    @cached_property
    def _neg(self) -> tuple[int, ...]:
        return tuple(self.M.inv(i) for i in range(self.M.order))

    def add(self, i: int, j: int) -> int:
        return self._add[i][j]

    def sub(self, i: int, j: int) -> int:
        return self._add[i][self._neg[j]]

    def neg(self, i: int) -> int:
        return self._neg[i]

    def act(self, g: int, i: int) -> int:
        return self.action[g][i]

    @property
    def is_trivial(self) -> bool:
        ident = tuple(range(self.M.order))
        return all(p == ident for p in self.action)


@dataclass(frozen=True, eq=False)
class Cochain2:
    """Normalized 2-cochain: ``values[g][h]`` is an element index of M."""

    values: tuple[tuple[int, ...], ...]
    identity: int = 0

    def __post_init__(self):
        vals = tuple(tuple(int(v) for v in row) for row in self.values)
        object.__setattr__(self, "values", vals)
        e = self.identity
        n = len(vals)
        if any(len(row) != n for row in vals):
            raise ValidationError("2-cochain table must be square")
        for g in range(n):
            if vals[e][g] != 0 or vals[g][e] != 0:
                raise ValidationError(
                    f"2-cochain is not normalized at ({e},{g})", field="omega", witness=(e, g))

    def __call__(self, g: int, h: int) -> int:
        return self.values[g][h]

    def __eq__(self, other):
        return isinstance(other, Cochain2) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    @classmethod
    def zero(cls, G) -> "Cochain2":
        n = G.order
        return cls(tuple((0,) * n for _ in range(n)), G.identity)

    @classmethod
    def from_function(cls, G, M, f: Callable) -> "Cochain2":
        """f(g, h) returns a coordinate tuple of M."""
        n = G.order
        return cls(tuple(tuple(M.index(M.normalize(f(g, h))) for h in range(n)) for g in range(n)), G.identity)

    def key(self) -> tuple:
        return tuple(v for row in self.values for v in row)

    def as_elements(self, M) -> list[list[tuple]]:
        return [[M.element(v) for v in row] for row in self.values]


def is_twisted_2cocycle(w: Cochain2, coeffs: CoeffModule) -> bool:
    return cocycle_defect(w, coeffs) is None


def cocycle_defect(w: Cochain2, coeffs: CoeffModule):
    """First triple (g, h, k) violating the cocycle identity, or None."""
    G = coeffs.G
    n = G.order
    if len(w.values) != n:
        raise ValidationError("cochain and group sizes differ")
    v = w.values
    for g in range(n):
        for h in range(n):
            gh = G.op(g, h)
            for k in range(n):
                hk = G.op(h, k)
                s = coeffs.act(g, v[h][k])
                s = coeffs.sub(s, v[gh][k])
                s = coeffs.add(s, v[g][hk])
                s = coeffs.sub(s, v[g][h])
                if s != 0:
                    return (g, h, k)
    return None


def coboundary(c: Sequence[int], coeffs: CoeffModule) -> Cochain2:
    """d of a normalized 1-cochain c (c[identity] == 0)."""
    G = coeffs.G
    n = G.order
    vals = tuple(
        tuple(coeffs.add(coeffs.sub(coeffs.act(g, c[h]), c[G.op(g, h)]), c[g]) for h in range(n))
        for g in range(n)
    )
    return Cochain2(vals, G.identity)


def add_cochains(a: Cochain2, b: Cochain2, coeffs: CoeffModule) -> Cochain2:
    n = len(a.values)
    return Cochain2(tuple(tuple(coeffs.add(a.values[g][h], b.values[g][h]) for h in range(n))
                          for g in range(n)), a.identity)


def neg_cochain(a: Cochain2, coeffs: CoeffModule) -> Cochain2:
    return Cochain2(tuple(tuple(coeffs.neg(v) for v in row) for row in a.values), a.identity)


# ---------------------------------------------------------------------------
# 2-cocycle enumeration by constraint propagation


class _CocycleSolver:
    """Backtracking solver for the normalized twisted 2-cocycle equations."""

    def __init__(self, coeffs: CoeffModule):
        self.c = coeffs
        G = coeffs.G
        e = G.identity
        nonid = [g for g in range(G.order) if g != e]
        self.vars = [(g, h) for g in nonid for h in nonid]
        self.var_index = {p: i for i, p in enumerate(self.vars)}
        self.constraints = []
        self.touch: list[list[int]] = [[] for _ in self.vars]
        for g in nonid:
            for h in nonid:
                gh = G.op(g, h)
                for k in nonid:
                    hk = G.op(h, k)
                    terms = [(1, g, self.var_index[(h, k)])]
                    if gh != e:
                        terms.append((-1, None, self.var_index[(gh, k)]))
                    if hk != e:
                        terms.append((1, None, self.var_index[(g, hk)]))
                    terms.append((-1, None, self.var_index[(g, h)]))
                    ci = len(self.constraints)
                    self.constraints.append(terms)
                    for _, _, v in terms:
                        if ci not in self.touch[v]:
                            self.touch[v].append(ci)

    def _eval(self, terms, val):
        c = self.c
        s = 0
        for sign, g, v in terms:
            x = val[v]
            if g is not None:
                x = c.act(g, x)
            s = c.add(s, x) if sign > 0 else c.sub(s, x)
        return s

    def _propagate(self, val, trail, queue) -> bool:
        m = self.c.M.order
        while queue:
            ci = queue.pop()
            terms = self.constraints[ci]
            free = {v for _, _, v in terms if val[v] is None}
            if not free:
                if self._eval(terms, val) != 0:
                    return False
                continue
            if len(free) > 1:
                continue
            (v,) = free
            sols = []
            for x in range(m):
                val[v] = x
                if self._eval(terms, val) == 0:
                    sols.append(x)
                    if len(sols) > 1:
                        break
            val[v] = None
            if not sols:
                return False
            if len(sols) == 1:
                val[v] = sols[0]
                trail.append(v)
                queue.extend(self.touch[v])
        return True

    def solve(self, node_cap: int | None = None):
        """Yield complete assignments (tuples over ``self.vars``) in lexicographic order."""
        nvars = len(self.vars)
        val = [None] * nvars
        m = self.c.M.order
        nodes = [0]

        def rec():
            nodes[0] += 1
            if node_cap is not None and nodes[0] > node_cap:
                raise CapExceeded("2-cocycle search nodes", nodes[0], node_cap)
            try:
                v = val.index(None)
            except ValueError:
                yield tuple(val)
                return
            for x in range(m):
                trail = [v]
                val[v] = x
                if self._propagate(val, trail, list(self.touch[v])):
                    yield from rec()
                for u in trail:
                    val[u] = None

        yield from rec()

    def to_cochain(self, assignment) -> Cochain2:
        G = self.c.G
        n = G.order
        table = [[0] * n for _ in range(n)]
        for (g, h), x in zip(self.vars, assignment):
            table[g][h] = x
        return Cochain2(tuple(map(tuple, table)), G.identity)


def twisted_2cocycles(coeffs: CoeffModule, cap: int | None = COCYCLE_CAP) -> list[Cochain2]:
    """All normalized twisted 2-cocycles, sorted by value tuple (zero first)."""
    solver = _CocycleSolver(coeffs)
    out = []
    for a in solver.solve(node_cap=None if cap is None else 20 * cap):
        out.append(solver.to_cochain(a))
        if cap is not None and len(out) > cap:
            raise CapExceeded("2-cocycle enumeration", len(out), cap)
    out.sort(key=Cochain2.key)
    return out


def random_twisted_2cocycle(coeffs: CoeffModule, rng: random.Random) -> Cochain2:
    """A random cocycle: coboundary + pulled-back carry cocycles + cup products.

    Carry and cup terms take values in G-invariant elements of M, so each term
    is a cocycle; the sum is re-verified.  Not uniform on Z^2, but it reaches
    every class when G is cyclic.
    """
    G, M = coeffs.G, coeffs.M
    n = G.order
    c = [0 if g == G.identity else rng.randrange(M.order) for g in range(n)]
    w = coboundary(c, coeffs)
    invariant = [t for t in range(M.order) if all(coeffs.act(g, t) == t for g in range(n))]
    homs = []
    for k in range(2, n + 1):
        for f in gr.iter_homomorphisms(G, gr.cyclic_group(k)):
            if len(set(f)) > 1:
                homs.append((k, f))
    for _ in range(rng.randrange(3)):
        if not homs:
            break
        k, f = rng.choice(homs)
        if rng.random() < 0.5:
            t = rng.choice(invariant)
            counts = [[1 if f[g] + f[h] >= k else 0 for h in range(n)] for g in range(n)]
        else:
            k2, f2 = rng.choice(homs)
            m = gcd(k, k2)
            t = rng.choice([u for u in invariant if m % M.element_order(M.element(u)) == 0])
            counts = [[f[g] * f2[h] for h in range(n)] for g in range(n)]
        w = add_cochains(w, _multiples(counts, t, coeffs), coeffs)
    if not is_twisted_2cocycle(w, coeffs):  # pragma: no cover
        raise RuntimeError("random 2-cochain failed the cocycle check")
    return w


def _multiples(counts, t: int, coeffs: CoeffModule) -> Cochain2:
    mult = [0]
    for _ in range(max(max(row) for row in counts)):
        mult.append(coeffs.add(mult[-1], t))
    return Cochain2(tuple(tuple(mult[k] for k in row) for row in counts), coeffs.G.identity)


def coboundary_group(coeffs: CoeffModule, cap: int | None = COCYCLE_CAP) -> set[tuple]:
    """B^2 as a set of cochain keys, spanned by coboundaries of elementary 1-cochains."""
    G, M = coeffs.G, coeffs.M
    n = G.order
    gens = []
    for g in range(n):
        if g == G.identity:
            continue
        for e in M.generators:
            c = [0] * n
            c[g] = M.index(e)
            gens.append(coboundary(c, coeffs).key())
    zero = (0,) * (n * n)
    span = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = tuple(coeffs.add(a, b) for a, b in zip(x, s))
                if y not in span:
                    span.add(y)
                    nxt.append(y)
                    if cap is not None and len(span) > cap:
                        raise CapExceeded("coboundary enumeration", len(span), cap)
        frontier = nxt
    return span


def h2_classes(coeffs: CoeffModule, cap: int | None = COCYCLE_CAP) -> list[Cochain2]:
    """One least representative per class of H^2(G, M); the zero class first."""
    cocycles = twisted_2cocycles(coeffs, cap)
    B = coboundary_group(coeffs, cap)
    remaining = {w.key(): w for w in cocycles}
    reps = []
    for w in cocycles:
        k = w.key()
        if k not in remaining:
            continue
        reps.append(w)
        for b in B:
            remaining.pop(tuple(coeffs.add(x, y) for x, y in zip(k, b)), None)
    return reps


def are_cohomologous(w1: Cochain2, w2: Cochain2, coeffs: CoeffModule) -> bool:
    d = add_cochains(w1, neg_cochain(w2, coeffs), coeffs)
    return bool(solve_coboundary(d, coeffs, first_only=True))


# ---------------------------------------------------------------------------
# 1-cochains


def solve_coboundary(d: Cochain2, coeffs: CoeffModule, first_only: bool = False) -> list[tuple[int, ...]]:
    """All normalized 1-cochains c with dc = d, lexicographic in the generator values.

    c is pinned by its values on the greedy generators of G through
    c(x s) = c(x) + x.c(s) - d(x, s); every candidate is then checked on all pairs.
    """
    G, M = coeffs.G, coeffs.M
    gens = list(G.generators)
    out = []

    def extend(values):
        c = {G.identity: 0}
        queue = [G.identity]
        while queue:
            x = queue.pop()
            for s, cs in zip(gens, values):
                y = G.op(x, s)
                v = coeffs.sub(coeffs.add(c[x], coeffs.act(x, cs)), d.values[x][s])
                old = c.get(y)
                if old is None:
                    c[y] = v
                    queue.append(y)
                elif old != v:
                    return None
        return tuple(c[i] for i in range(G.order))

    def rec(k, values):
        if k == len(gens):
            c = extend(values)
            if c is not None and coboundary(c, coeffs).values == d.values:
                out.append(c)
                return first_only
            return False
        for x in range(M.order):
            if rec(k + 1, values + [x]):
                return True
        return False

    rec(0, [])
    return out


def one_cocycles(coeffs: CoeffModule) -> list[tuple[int, ...]]:
    """Z^1(G, M): crossed homomorphisms c(gh) = c(g) + g.c(h)."""
    return solve_coboundary(Cochain2.zero(coeffs.G), coeffs)


def one_coboundaries(coeffs: CoeffModule) -> set[tuple[int, ...]]:
    """B^1(G, M) = {g -> g.m - m}."""
    G = coeffs.G
    return {tuple(coeffs.sub(coeffs.act(g, m), m) for g in range(G.order)) for m in range(coeffs.M.order)}


def h1_classes(coeffs: CoeffModule) -> list[tuple[int, ...]]:
    """Least representative per class of H^1(G, M); zero first."""
    Z = sorted(one_cocycles(coeffs))
    B = one_coboundaries(coeffs)
    remaining = set(Z)
    reps = []
    for c in Z:
        if c not in remaining:
            continue
        reps.append(c)
        for b in B:
            remaining.discard(tuple(coeffs.add(x, y) for x, y in zip(c, b)))
    return reps


# ---------------------------------------------------------------------------
# extensions


@dataclass(frozen=True, eq=False)
class ExtensionPresentation:
    """1 -> N --iota--> E --pi--> G -> 1."""

    E: gr.CayleyGroup
    iota: gr.GroupHom
    pi: gr.GroupHom

    def __post_init__(self):
        E = self.E
        if self.iota.target is not E and self.iota.target != E:
            raise ValidationError("iota must land in E")
        if self.pi.source is not E and self.pi.source != E:
            raise ValidationError("pi must start at E")
        if not self.iota.is_injective:
            raise ValidationError("iota is not injective")
        if not self.pi.is_surjective:
            raise ValidationError("pi is not surjective")
        if self.iota.image != self.pi.kernel:
            raise ValidationError("image(iota) != kernel(pi): sequence is not exact")
        if not gr.is_normal(E, self.iota.image):
            raise ValidationError("image(iota) is not normal")  # pragma: no cover - kernels are normal

    @property
    def N(self):
        return self.iota.source

    @property
    def G(self):
        return self.pi.target

    @cached_property
    def fibers(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.G.order)]
        for x, g in enumerate(self.pi.images):
            out[g].append(x)
        return tuple(tuple(f) for f in out)

    def restrict(self, H: Iterable[int]) -> "ExtensionPresentation":
        """The pulled-back extension 1 -> N -> pi^-1(H) -> H -> 1."""
        H = sorted(H)
        Hc, h_embed = gr.subgroup_cayley(self.G, H)
        hpos = {g: i for i, g in enumerate(h_embed)}
        pre = [x for x in range(self.E.order) if self.pi(x) in hpos]
        Ec, e_embed = gr.subgroup_cayley(self.E, pre)
        epos = {x: i for i, x in enumerate(e_embed)}
        iota = gr.GroupHom(self.N, Ec, tuple(epos[v] for v in self.iota.images), check=False)
        pi = gr.GroupHom(Ec, Hc, tuple(hpos[self.pi(x)] for x in e_embed), check=False)
        return ExtensionPresentation(Ec, iota, pi)


@dataclass(frozen=True)
class SplittingMap:
    """A homomorphic section: ``section[g]`` is an element index of E."""

    section: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.section[g]


def enumerate_splittings(ext: ExtensionPresentation) -> list[SplittingMap]:
    """All homomorphic sections, lexicographic by images of G's greedy generators."""
    G, E = ext.G, ext.E
    gens = list(G.generators)
    fibers = ext.fibers
    out = []
    for images in gr.iter_homomorphisms(G, E, gens, candidates=lambda k: fibers[gens[k]]):
        out.append(SplittingMap(images))
    return out


def splitting_classes(ext: ExtensionPresentation, splittings: Sequence[SplittingMap]) -> list[list[SplittingMap]]:
    """Partition under conjugation by iota(N); each class keeps input order, classes by least member."""
    E = ext.E
    pos = {s.section: i for i, s in enumerate(splittings)}
    seen = set()
    classes = []
    for s in splittings:
        if s.section in seen:
            continue
        orbit = set()
        for n in range(ext.N.order):
            x = ext.iota(n)
            orbit.add(tuple(E.conjugate(v, x) for v in s.section))
        members = sorted((t for t in orbit if t in pos), key=pos.__getitem__)
        seen.update(members)
        classes.append([splittings[pos[t]] for t in members])
    return classes


def twisted_product(coeffs: CoeffModule, w: Cochain2) -> ExtensionPresentation:
    """M x_w G with (m, g)(m', h) = (m + g.m' + w(g, h), gh); (m, g) has index g*|M| + m."""
    M, G = coeffs.M, coeffs.G
    m = M.order
    n = m * G.order

    def mul(a, b):
        ma, ga = a % m, a // m
        mb, gb = b % m, b // m
        v = coeffs.add(coeffs.add(ma, coeffs.act(ga, mb)), w.values[ga][gb])
        return G.op(ga, gb) * m + v

    table = tuple(tuple(mul(a, b) for b in range(n)) for a in range(n))
    labels = tuple(f"({M.label(a % m)},{G.label(a // m)})" for a in range(n))
    E = gr.CayleyGroup(table, G.identity * m, labels)
    iota = gr.GroupHom(M, E, tuple(G.identity * m + i for i in range(m)), check=False)
    pi = gr.GroupHom(E, G, tuple(a // m for a in range(n)), check=False)
    return ExtensionPresentation(E, iota, pi)


def split_witness(ext: ExtensionPresentation, s: SplittingMap) -> gr.GroupHom:
    """The isomorphism N x| G -> E, (n, g) -> iota(n) s(g), for the conjugation action via s."""
    N, G, E = gr.as_cayley(ext.N), ext.G, ext.E
    iota_inv = {v: i for i, v in enumerate(ext.iota.images)}
    action = [tuple(iota_inv[E.conjugate(ext.iota(n), s(g))] for n in range(N.order)) for g in range(G.order)]
    SD = gr.semidirect_product(N, G, action)
    m = N.order
    images = tuple(E.op(ext.iota(a % m), s(a // m)) for a in range(SD.order))
    f = gr.GroupHom(SD, E, images)
    if not f.is_injective:  # pragma: no cover - guaranteed by exactness
        raise RuntimeError("split witness is not bijective")
    return f
