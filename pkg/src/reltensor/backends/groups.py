"""Finite groups given by explicit multiplication tables.

Objects are FiniteGroup instances; a morphism is the tuple of image
indices of a homomorphism.  Subobjects are subgroups (as frozensets of
element indices), quotients are normal subgroups, and the degree of an
epi is one variable per composition factor of its kernel.  Every group
in range here has order at most 24, hence is solvable, so composition
factors are cyclic of prime order and the degree of an epi with kernel
K is the product of t_Cp over the prime factorization of |K|.

The built-in catalog carries one group per isomorphism class of order
at most 8; larger groups enter through explicit tables, capped at
order 24.  Isomorphism-class labels are assigned by certified search:
an invariant fingerprint prunes the candidates and an actual
isomorphism is required before two groups share a label.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..errors import ScaleLimitError
from ..groupchar import FiniteGroup
from ..lattice import FiniteLattice
from ..polynomial import MPoly
from .base import BackendError, CategoryBackend

_ORDER_CAP = 24


@dataclass(frozen=True)
class Hom:
    """Homomorphism src -> dst by image indices: element i maps to images[i]."""

    src: FiniteGroup
    dst: FiniteGroup
    images: Tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.src.n:
            raise BackendError("image tuple length must match the source order")


def _check_hom(src: FiniteGroup, dst: FiniteGroup, images) -> bool:
    return all(images[src.mul(a, b)] == dst.mul(images[a], images[b])
               for a in range(src.n) for b in range(src.n))


def _prime_powers(n: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _all_subgroups(G: FiniteGroup) -> List[frozenset]:
    """Every subgroup, found by closing subgroups under one new generator."""
    table = G.table
    inv = [G.inv(i) for i in range(G.n)]

    def extend(members: frozenset, g: int) -> frozenset:
        got = set(members)
        frontier = [g]
        got.add(g)
        while frontier:
            x = frontier.pop()
            for y in list(got):
                for z in (table[x][y], table[y][x], inv[x]):
                    if z not in got:
                        got.add(z)
                        frontier.append(z)
        return frozenset(got)

    trivial = frozenset([G.identity])
    subs = {trivial}
    frontier = [trivial]
    while frontier:
        H = frontier.pop()
        for g in range(G.n):
            if g not in H:
                J = extend(H, g)
                if J not in subs:
                    subs.add(J)
                    frontier.append(J)
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


def _generating_sequence(G: FiniteGroup) -> List[int]:
    gens: List[int] = []
    cur = {G.identity}
    for g in range(G.n):
        if g not in cur:
            gens.append(g)
            cur = set(G.subgroup_closure(gens))
            if len(cur) == G.n:
                break
    return gens


def _isomorphisms(a: FiniteGroup, b: FiniteGroup) -> List[Tuple[int, ...]]:
    """All isomorphisms a -> b as image tuples."""
    if a.n != b.n:
        return []
    if sorted(map(a.element_order, range(a.n))) != \
            sorted(map(b.element_order, range(b.n))):
        return []
    gens = _generating_sequence(a)
    out: List[Tuple[int, ...]] = []

    def close(mapping: Dict[int, int]) -> Optional[Dict[int, int]]:
        # grow the partial map to the subgroup generated by its domain,
        # failing on any multiplicative or injectivity conflict
        frontier = list(mapping)
        values = set(mapping.values())
        if len(values) != len(mapping):
            return None
        while frontier:
            x = frontier.pop()
            for y in list(mapping):
                for u, v in ((a.mul(x, y), b.mul(mapping[x], mapping[y])),
                             (a.mul(y, x), b.mul(mapping[y], mapping[x]))):
                    got = mapping.get(u)
                    if got is None:
                        if v in values:
                            return None
                        mapping[u] = v
                        values.add(v)
                        frontier.append(u)
                    elif got != v:
                        return None
        return mapping

    def search(mapping: Dict[int, int], k: int):
        if k == len(gens):
            if len(mapping) == a.n:
                out.append(tuple(mapping[i] for i in range(a.n)))
            return
        g = gens[k]
        order = a.element_order(g)
        for h in range(b.n):
            if h in mapping.values() or b.element_order(h) != order:
                continue
            cand = dict(mapping)
            cand[g] = h
            nxt = close(cand)
            if nxt is not None:
                search(nxt, k + 1)

    search({a.identity: b.identity}, 0)
    return [im for im in out if _check_hom(a, b, im)]


def group_from_table(table, names=None) -> FiniteGroup:
    """Build a verified group from a multiplication table, capped at order 24."""
    if len(table) > _ORDER_CAP:
        raise ScaleLimitError(f"groups are capped at order {_ORDER_CAP}")
    return FiniteGroup(table, names=names)


def _quaternion_group() -> FiniteGroup:
    axes = "1ijk"
    mul = {}
    for x in axes:
        mul[("1", x)] = (1, x)
        mul[(x, "1")] = (1, x)
    for x in "ijk":
        mul[(x, x)] = (-1, "1")
    for x, y, z in (("i", "j", "k"), ("j", "k", "i"), ("k", "i", "j")):
        mul[(x, y)] = (1, z)
        mul[(y, x)] = (-1, z)

    def compose(u, v):
        s, a = mul[(u[1], v[1])]
        return (u[0] * v[0] * s, a)

    items = [(s, a) for a in axes for s in (1, -1)]
    names = [("" if s == 1 else "-") + a for (s, a) in items]
    return FiniteGroup.from_composition(items, compose, names=names)


class GroupBackend(CategoryBackend):
    name = "group"

    def __init__(self):
        self._products: Dict[Tuple[int, int], tuple] = {}
        self._sub_objects: Dict[tuple, tuple] = {}
        self._quot_objects: Dict[tuple, tuple] = {}
        self._subgroup_lists: Dict[int, List[frozenset]] = {}
        self._aut_cache: Dict[int, FiniteGroup] = {}
        self._labels: Dict[int, str] = {}
        # id-keyed caches are only sound while the keyed object is alive,
        # so every object that enters one is pinned here
        self._pinned: Dict[int, FiniteGroup] = {}
        self._registry: List[Tuple[str, FiniteGroup]] = []
        self._fresh = 0
        self._catalog = self._build_catalog()

    def _pin(self, x: FiniteGroup) -> FiniteGroup:
        self._pinned[id(x)] = x
        return x

    def _build_catalog(self) -> List[FiniteGroup]:
        C2 = FiniteGroup.cyclic(2)
        C4 = FiniteGroup.cyclic(4)
        pairs = [
            ("1", FiniteGroup.cyclic(1)),
            ("C2", C2),
            ("C3", FiniteGroup.cyclic(3)),
            ("C4", C4),
            ("V4", self._direct(C2, C2)),
            ("C5", FiniteGroup.cyclic(5)),
            ("C6", FiniteGroup.cyclic(6)),
            ("S3", FiniteGroup.symmetric(3)),
            ("C7", FiniteGroup.cyclic(7)),
            ("C8", FiniteGroup.cyclic(8)),
            ("C4xC2", self._direct(C4, C2)),
            ("C2^3", self._direct(self._direct(C2, C2), C2)),
            ("D4", FiniteGroup.from_permutations(4, [(1, 2, 3, 0), (3, 2, 1, 0)])),
            ("Q8", _quaternion_group()),
        ]
        for label, g in pairs:
            self._registry.append((label, g))
            self._labels[id(g)] = label
        return [g for _, g in pairs]

    @staticmethod
    def _direct(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
        items = [(i, j) for i in range(a.n) for j in range(b.n)]
        g = FiniteGroup.from_composition(
            items, lambda u, v: (a.mul(u[0], v[0]), b.mul(u[1], v[1])),
            names=[f"({a.names[i]},{b.names[j]})" for (i, j) in items])
        return g

    # ---- objects ----

    def catalog(self) -> list:
        return list(self._catalog)

    def by_label(self, label: str) -> FiniteGroup:
        for name, g in self._registry:
            if name == label:
                return g
        raise BackendError(f"no group registered under label {label!r}")

    def add_object(self, G: FiniteGroup) -> FiniteGroup:
        """Register a user-supplied group and return it."""
        if G.n > _ORDER_CAP:
            raise ScaleLimitError(f"groups are capped at order {_ORDER_CAP}")
        self.object_label(G)
        return G

    def terminal(self):
        return self._catalog[0]

    def product_with_projections(self, x: FiniteGroup, y: FiniteGroup):
        self._pin(x)
        self._pin(y)
        key = (id(x), id(y))
        if key not in self._products:
            w = self._direct(x, y)
            w.pair_index = {item: k for k, item in enumerate(w.items)}
            p1 = Hom(w, x, tuple(i for (i, j) in w.items))
            p2 = Hom(w, y, tuple(j for (i, j) in w.items))
            self._products[key] = (w, p1, p2, x, y)
        return self._products[key][:3]

    def object_label(self, x: FiniteGroup) -> str:
        self._pin(x)
        if id(x) in self._labels:
            return self._labels[id(x)]
        fp = (x.n, tuple(sorted(x.element_order(i) for i in range(x.n))),
              x.is_abelian())
        for name, g in self._registry:
            gfp = (g.n, tuple(sorted(g.element_order(i) for i in range(g.n))),
                   g.is_abelian())
            if gfp == fp and _isomorphisms(x, g):
                self._labels[id(x)] = name
                return name
        self._fresh += 1
        name = f"G{x.n}-{self._fresh}"
        self._registry.append((name, x))
        self._labels[id(x)] = name
        return name

    def model_size(self, x: FiniteGroup) -> int:
        return x.n

    def valuation(self, x: FiniteGroup) -> int:
        return sum(_prime_powers(x.n).values())

    # ---- morphisms ----

    def identity(self, x: FiniteGroup) -> Hom:
        return Hom(x, x, tuple(range(x.n)))

    def compose(self, f: Hom, g: Hom) -> Hom:
        if g.dst is not f.src:
            raise BackendError("composition mismatch")
        return Hom(g.src, f.dst, tuple(f.images[v] for v in g.images))

    def pair(self, f: Hom, g: Hom) -> Hom:
        if f.src is not g.src:
            raise BackendError("pairing needs a common source")
        w, _, _ = self.product_with_projections(f.dst, g.dst)
        idx = w.pair_index
        return Hom(f.src, w, tuple(idx[(f.images[i], g.images[i])]
                                   for i in range(f.src.n)))

    def is_mono(self, f: Hom) -> bool:
        return len(set(f.images)) == f.src.n

    def is_epi(self, f: Hom) -> bool:
        return len(set(f.images)) == f.dst.n

    def image(self, f: Hom):
        sub = frozenset(f.images)
        zobj, mono = self.subobject_embedding(f.dst, sub)
        back = {mono.images[i]: i for i in range(zobj.n)}
        e = Hom(f.src, zobj, tuple(back[v] for v in f.images))
        return e, mono

    def pullback(self, f: Hom, g: Hom):
        if f.dst is not g.dst:
            raise BackendError("pullback needs a common target")
        w, p1, p2 = self.product_with_projections(f.src, g.src)
        sub = frozenset(k for k, (i, j) in enumerate(w.items)
                        if f.images[i] == g.images[j])
        robj, mono = self.subobject_embedding(w, sub)
        return robj, self.compose(p1, mono), self.compose(p2, mono)

    def isomorphisms(self, a: FiniteGroup, b: FiniteGroup) -> list:
        return [Hom(a, b, im) for im in _isomorphisms(a, b)]

    def terminal_epi(self, x: FiniteGroup) -> Hom:
        one = self.terminal()
        return Hom(x, one, (one.identity,) * x.n)

    # ---- subobjects: subgroups ----

    def subobjects(self, x: FiniteGroup) -> list:
        self._pin(x)
        if id(x) not in self._subgroup_lists:
            self._subgroup_lists[id(x)] = _all_subgroups(x)
        return list(self._subgroup_lists[id(x)])

    def subobject_lattice(self, x: FiniteGroup) -> FiniteLattice:
        subs = self.subobjects(x)
        rows = [[a <= b for b in subs] for a in subs]
        return FiniteLattice(rows, labels=subs)

    def subobject_embedding(self, x: FiniteGroup, sub: frozenset):
        self._pin(x)
        key = (id(x), sub)
        if key not in self._sub_objects:
            members = sorted(sub)
            table = [[members.index(x.mul(a, b)) for b in members]
                     for a in members]
            obj = FiniteGroup(table, names=[x.names[i] for i in members])
            obj.items = list(members)
            mono = Hom(obj, x, tuple(members))
            self._sub_objects[key] = (obj, mono, x)
        return self._sub_objects[key][:2]

    def canonical_subobject(self, m: Hom):
        if not self.is_mono(m):
            raise BackendError("not a mono")
        return frozenset(m.images)

    # ---- quotients: normal subgroups ----

    def quotients(self, x: FiniteGroup) -> list:
        out = []
        for sub in self.subobjects(x):
            if all(x.conj(g, n) in sub for g in range(x.n) for n in sub):
                out.append(sub)
        return out

    def quotient_lattice(self, x: FiniteGroup) -> FiniteLattice:
        subs = self.quotients(x)
        rows = [[a <= b for b in subs] for a in subs]
        return FiniteLattice(rows, labels=subs)

    def quotient_epi(self, x: FiniteGroup, quot: frozenset):
        self._pin(x)
        key = (id(x), quot)
        if key not in self._quot_objects:
            coset_of = {}
            reps = []
            for i in range(x.n):
                if i not in coset_of:
                    members = frozenset(x.mul(i, n) for n in quot)
                    k = len(reps)
                    reps.append(members)
                    for m in members:
                        coset_of[m] = k
            table = [[coset_of[x.mul(min(reps[a]), min(reps[b]))]
                      for b in range(len(reps))] for a in range(len(reps))]
            obj = FiniteGroup(table, names=[f"c{min(r)}" for r in reps])
            obj.items = reps
            epi = Hom(x, obj, tuple(coset_of[i] for i in range(x.n)))
            self._quot_objects[key] = (obj, epi, x)
        return self._quot_objects[key][:2]

    # ---- automorphisms ----

    def aut_group(self, x: FiniteGroup) -> FiniteGroup:
        self._pin(x)
        if id(x) not in self._aut_cache:
            items = _isomorphisms(x, x)
            g = FiniteGroup.from_composition(
                items, lambda a, b: tuple(a[v] for v in b))
            self._aut_cache[id(x)] = g
        return self._aut_cache[id(x)]

    def aut_act_subobject(self, x: FiniteGroup, g, sub: frozenset):
        return frozenset(g[i] for i in sub)

    def aut_act_quotient(self, x: FiniteGroup, g, quot: frozenset):
        return frozenset(g[i] for i in quot)

    def quotient_fixed_pointwise(self, x: FiniteGroup, quot: frozenset, g) -> bool:
        return all(x.mul(g[i], x.inv(i)) in quot for i in range(x.n))

    def pair_aut(self, x: FiniteGroup, y: FiniteGroup, gx, gy):
        w, _, _ = self.product_with_projections(x, y)
        return tuple(w.pair_index[(gx[a], gy[b])] for (a, b) in w.items)

    # ---- degree ----

    def delta_of_epi(self, e: Hom) -> MPoly:
        if not self.is_epi(e):
            raise BackendError("delta is only defined on epis")
        kernel = [i for i in range(e.src.n) if e.images[i] == e.dst.identity]
        out = MPoly.const(1)
        for p, k in sorted(_prime_powers(len(kernel)).items()):
            out = out * MPoly.var(f"t_C{p}") ** k
        return out
