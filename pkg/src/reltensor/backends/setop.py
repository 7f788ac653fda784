"""Opposite category of finite sets.

Objects are tuples of distinct points and an arrow x -> y is stored by
its comap, the plain set map from the points of y to the points of x.
Monos are therefore the arrows with surjective comap and epis the ones
with injective comap; subobjects of x are the partitions of its points
and quotients of x are the subsets.  The product of two objects is the
disjoint union of tagged copies, and the degree of an epi x ->> z is
t^(|x| - |z|).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

from ..errors import ScaleLimitError
from ..groupchar import FiniteGroup
from ..lattice import FiniteLattice
from ..polynomial import MPoly
from .base import BackendError, CategoryBackend

# Partition lattices are only built for objects this small; products
# needing subobject data beyond that go through the Goursat route.
_LATTICE_POINTS = 8


@dataclass(frozen=True)
class SetMorphism:
    """Arrow src -> dst given by its comap on points of dst.

    ``comap[i]`` is the point of src that the i-th point of dst pulls
    back to.
    """

    src: Tuple
    dst: Tuple
    comap: Tuple

    def __post_init__(self):
        if len(self.comap) != len(self.dst):
            raise BackendError("comap length must match the target object")
        srcset = set(self.src)
        if any(p not in srcset for p in self.comap):
            raise BackendError("comap leaves the source object")


def _partitions_of(points: Tuple) -> List[frozenset]:
    """All set partitions, blocks as frozensets, deterministic order."""
    if not points:
        return [frozenset()]
    out = []

    def grow(i, blocks):
        if i == len(points):
            out.append(frozenset(frozenset(b) for b in blocks))
            return
        p = points[i]
        for b in blocks:
            b.append(p)
            grow(i + 1, blocks)
            b.pop()
        blocks.append([p])
        grow(i + 1, blocks)
        blocks.pop()

    grow(0, [])
    return out


@lru_cache(maxsize=None)
def _bell(n: int) -> int:
    if n == 0:
        return 1
    return sum(_bell(k) * _binom(n - 1, k) for k in range(n))


def _binom(n, k):
    from math import comb
    return comb(n, k)


@lru_cache(maxsize=None)
def _symmetric_cached(n: int) -> FiniteGroup:
    return FiniteGroup.symmetric(n)


def _coarser_eq(a: frozenset, b: frozenset) -> bool:
    """Whether partition a is a coarsening of partition b."""
    lookup = {}
    for blk in a:
        for p in blk:
            lookup[p] = blk
    return all(len({lookup[p] for p in blk}) <= 1 for blk in b)


class SetOpBackend(CategoryBackend):
    name = "setop"

    # ---- objects ----

    def object(self, n: int) -> Tuple:
        if n < 0:
            raise BackendError("object size must be nonnegative")
        return tuple(range(n))

    def catalog(self) -> list:
        return [self.object(n) for n in range(7)]

    def terminal(self):
        return ()

    def product_with_projections(self, x, y):
        w = tuple(("L", p) for p in x) + tuple(("R", p) for p in y)
        p1 = SetMorphism(w, x, tuple(("L", p) for p in x))
        p2 = SetMorphism(w, y, tuple(("R", p) for p in y))
        return w, p1, p2

    def object_label(self, x) -> str:
        return f"({len(x)})"

    def model_size(self, x) -> int:
        return 2 ** len(x)

    def valuation(self, x) -> int:
        return len(x)

    # ---- morphisms ----

    def identity(self, x):
        return SetMorphism(x, x, tuple(x))

    def compose(self, f: SetMorphism, g: SetMorphism) -> SetMorphism:
        if g.dst != f.src:
            raise BackendError("composition mismatch")
        pos = {p: i for i, p in enumerate(f.src)}
        return SetMorphism(g.src, f.dst,
                           tuple(g.comap[pos[p]] for p in f.comap))

    def pair(self, f: SetMorphism, g: SetMorphism) -> SetMorphism:
        if f.src != g.src:
            raise BackendError("pairing needs a common source")
        w, _, _ = self.product_with_projections(f.dst, g.dst)
        return SetMorphism(f.src, w, f.comap + g.comap)

    def is_mono(self, f: SetMorphism) -> bool:
        return set(f.comap) == set(f.src)

    def is_epi(self, f: SetMorphism) -> bool:
        return len(set(f.comap)) == len(f.comap)

    def image(self, f: SetMorphism):
        hit = set(f.comap)
        z = tuple(p for p in f.src if p in hit)
        e = SetMorphism(f.src, z, z)
        m = SetMorphism(z, f.dst, f.comap)
        return e, m

    def pullback(self, f: SetMorphism, g: SetMorphism):
        if f.dst != g.dst:
            raise BackendError("pullback needs a common target")
        # Pushout of the comaps: glue tagged copies of the two sources
        # along the images of each target point.
        points = [("L", p) for p in f.src] + [("R", p) for p in g.src]
        parent = {p: p for p in points}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra

        for i in range(len(f.dst)):
            union(("L", f.comap[i]), ("R", g.comap[i]))
        classes: Dict = {}
        for p in points:
            classes.setdefault(find(p), []).append(p)
        robj = tuple(frozenset(v) for _, v in
                     sorted(classes.items(), key=lambda kv: points.index(kv[0])))
        cls_of = {p: c for c in robj for p in c}
        p1 = SetMorphism(robj, f.src, tuple(cls_of[("L", p)] for p in f.src))
        p2 = SetMorphism(robj, g.src, tuple(cls_of[("R", p)] for p in g.src))
        return robj, p1, p2

    def isomorphisms(self, a, b) -> list:
        if len(a) != len(b):
            return []
        return [SetMorphism(a, b, perm)
                for perm in itertools.permutations(a)]

    def terminal_epi(self, x):
        return SetMorphism(x, (), ())

    # ---- subobjects: partitions of the points ----

    def subobjects(self, x) -> list:
        return _partitions_of(x)

    def subobject_count(self, x) -> int:
        return _bell(len(x))

    def subobject_lattice(self, x) -> FiniteLattice:
        if len(x) > _LATTICE_POINTS:
            raise ScaleLimitError(
                f"partition lattice on {len(x)} points not built")
        parts = self.subobjects(x)
        rows = [[_coarser_eq(a, b) for b in parts] for a in parts]
        return FiniteLattice(rows, labels=parts)

    def subobject_embedding(self, x, sub):
        pos = {p: i for i, p in enumerate(x)}
        blocks = tuple(sorted(sub, key=lambda b: min(pos[p] for p in b)))
        of = {p: b for b in blocks for p in b}
        mono = SetMorphism(blocks, x, tuple(of[p] for p in x))
        return blocks, mono

    def canonical_subobject(self, m: SetMorphism):
        if not self.is_mono(m):
            raise BackendError("not a mono")
        fiber: Dict = {}
        for i, p in enumerate(m.dst):
            fiber.setdefault(m.comap[i], []).append(p)
        return frozenset(frozenset(v) for v in fiber.values())

    # ---- quotients: subsets of the points ----

    def quotients(self, x) -> list:
        out = []
        for k in range(len(x), -1, -1):
            out.extend(frozenset(c) for c in itertools.combinations(x, k))
        return out

    def quotient_lattice(self, x) -> FiniteLattice:
        subs = self.quotients(x)
        rows = [[a >= b for b in subs] for a in subs]
        return FiniteLattice(rows, labels=subs)

    def quotient_epi(self, x, quot):
        z = tuple(p for p in x if p in quot)
        return z, SetMorphism(x, z, z)

    # ---- automorphisms ----

    def aut_group(self, x) -> FiniteGroup:
        return _symmetric_cached(len(x))

    def aut_order(self, x) -> int:
        from math import factorial
        return factorial(len(x))

    def _point_map(self, x, g):
        pos = {p: i for i, p in enumerate(x)}
        return lambda p: x[g[pos[p]]]

    def aut_act_subobject(self, x, g, sub):
        act = self._point_map(x, g)
        return frozenset(frozenset(act(p) for p in blk) for blk in sub)

    def aut_act_quotient(self, x, g, quot):
        act = self._point_map(x, g)
        return frozenset(act(p) for p in quot)

    def quotient_fixed_pointwise(self, x, quot, g) -> bool:
        act = self._point_map(x, g)
        return all(act(p) == p for p in quot)

    def pair_aut(self, x, y, gx, gy):
        # product points list the left factor first, so positions shift by len(x)
        return tuple(gx) + tuple(len(x) + v for v in gy)

    # ---- degree ----

    def delta_of_epi(self, e: SetMorphism) -> MPoly:
        if not self.is_epi(e):
            raise BackendError("delta is only defined on epis")
        return MPoly.var("t") ** (len(e.src) - len(e.dst))
