"""Finite-dimensional vector spaces over a small prime field.

Objects are dimensions, morphisms are matrices over F_q acting on
column vectors, and subobjects and quotients are both presented by
subspaces in reduced row echelon form (a quotient is named by its
kernel).  Degrees live in the single variable t: an epi from dimension
a onto dimension b has degree t^(a - b).

Single objects are capped at dimension 3.  Products reach dimension 6
and stay fully functional for morphism-level work, but their subspaces
are never enumerated wholesale; anything needing the full subobject
list of a product goes through the Goursat construction instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Tuple

from ..errors import ScaleLimitError
from ..groupchar import FiniteGroup
from ..lattice import FiniteLattice
from ..polynomial import MPoly
from .base import BackendError, CategoryBackend

_DIM_CAP = 3
# Subspace enumeration stays affordable slightly past the single-object
# cap, which is what direct checks on binary products of small objects
# need; beyond that only the Goursat route is available.
_ENUM_CAP = 4


@dataclass(frozen=True)
class Mat:
    """Matrix morphism src -> dst: ``rows`` has dst rows of length src."""

    src: int
    dst: int
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.rows) != self.dst or any(len(r) != self.src for r in self.rows):
            raise BackendError("matrix shape does not match src/dst")


def _rref(rows: List[List[int]], q: int):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    cols = len(rows[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % q), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, q)
        rows[r] = [(v * inv) % q for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % q:
                f = rows[i][c]
                rows[i] = [(a - f * b) % q for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in rows[:r]], pivots


def _matmul(a, b, q):
    return tuple(tuple(sum(x * y for x, y in zip(ra, cb)) % q
                       for cb in zip(*b)) if b else ()
                 for ra in a)


def _kernel_basis(rows, src, q):
    """RREF basis of the kernel of the matrix with the given rows."""
    red, pivots = _rref([list(r) for r in rows], q)
    free = [c for c in range(src) if c not in pivots]
    basis = []
    for c in free:
        v = [0] * src
        v[c] = 1
        for i, p in enumerate(pivots):
            v[p] = (-red[i][c]) % q
        basis.append(v)
    out, _ = _rref(basis, q)
    return out


class VectFqBackend(CategoryBackend):
    def __init__(self, q: int):
        if q not in (2, 3):
            raise BackendError("only q in {2, 3} is supported")
        self.q = q
        self.name = f"vectfq{q}"
        self._aut_cache: Dict[int, FiniteGroup] = {}

    # ---- objects ----

    def object(self, d: int) -> int:
        if d < 0:
            raise BackendError("dimension must be nonnegative")
        if d > _DIM_CAP:
            raise ScaleLimitError(f"single objects are capped at dimension {_DIM_CAP}")
        return d

    def catalog(self) -> list:
        return list(range(_DIM_CAP + 1))

    def terminal(self):
        return 0

    def product_with_projections(self, x: int, y: int):
        w = x + y
        p1 = Mat(w, x, tuple(tuple(1 if j == i else 0 for j in range(w))
                             for i in range(x)))
        p2 = Mat(w, y, tuple(tuple(1 if j == x + i else 0 for j in range(w))
                             for i in range(y)))
        return w, p1, p2

    def object_label(self, x: int) -> str:
        return f"F{self.q}^{x}"

    def model_size(self, x: int) -> int:
        return self.q ** x

    def valuation(self, x: int) -> int:
        return x

    # ---- morphisms ----

    def identity(self, x: int) -> Mat:
        return Mat(x, x, tuple(tuple(1 if j == i else 0 for j in range(x))
                               for i in range(x)))

    def compose(self, f: Mat, g: Mat) -> Mat:
        if g.dst != f.src:
            raise BackendError("composition mismatch")
        rows = tuple(tuple(sum(f.rows[i][k] * g.rows[k][j]
                               for k in range(f.src)) % self.q
                           for j in range(g.src))
                     for i in range(f.dst))
        return Mat(g.src, f.dst, rows)

    def pair(self, f: Mat, g: Mat) -> Mat:
        if f.src != g.src:
            raise BackendError("pairing needs a common source")
        return Mat(f.src, f.dst + g.dst, f.rows + g.rows)

    def _rank(self, f: Mat) -> int:
        return len(_rref([list(r) for r in f.rows], self.q)[0])

    def is_mono(self, f: Mat) -> bool:
        return self._rank(f) == f.src

    def is_epi(self, f: Mat) -> bool:
        return self._rank(f) == f.dst

    def image(self, f: Mat):
        cols = [[f.rows[i][j] for i in range(f.dst)] for j in range(f.src)]
        basis, _ = _rref(cols, self.q)
        k = len(basis)
        m = Mat(k, f.dst, tuple(tuple(b[i] for b in basis)
                                for i in range(f.dst)))
        # coordinates of each f-column in the image basis
        coords = []
        for col in cols:
            coords.append(self._solve(basis, col))
        e = Mat(f.src, k, tuple(tuple(c[i] for c in coords) for i in range(k)))
        return e, m

    def _solve(self, basis, vec):
        """Coefficients expressing vec in the RREF basis rows."""
        q = self.q
        v = list(vec)
        out = []
        for b in basis:
            p = next(i for i, x in enumerate(b) if x)
            c = v[p] % q
            out.append(c)
            v = [(a - c * bb) % q for a, bb in zip(v, b)]
        if any(x % q for x in v):
            raise BackendError("vector outside the subspace")
        return out

    def pullback(self, f: Mat, g: Mat):
        if f.dst != g.dst:
            raise BackendError("pullback needs a common target")
        q = self.q
        glued = [list(f.rows[i]) + [(-v) % q for v in g.rows[i]]
                 for i in range(f.dst)]
        ker = _kernel_basis(glued, f.src + g.src, q)
        r = len(ker)
        p1 = Mat(r, f.src, tuple(tuple(k[i] for k in ker)
                                 for i in range(f.src)))
        p2 = Mat(r, g.src, tuple(tuple(k[f.src + i] for k in ker)
                                 for i in range(g.src)))
        return r, p1, p2

    def isomorphisms(self, a: int, b: int) -> list:
        if a != b:
            return []
        return [Mat(a, a, rows) for rows in self._invertible(a)]

    def _invertible(self, d: int):
        out = []
        for entries in itertools.product(range(self.q), repeat=d * d):
            rows = tuple(tuple(entries[i * d:(i + 1) * d]) for i in range(d))
            if len(_rref([list(r) for r in rows], self.q)[0]) == d:
                out.append(rows)
        return out

    def terminal_epi(self, x: int) -> Mat:
        return Mat(x, 0, ())

    # ---- subobjects: subspaces in RREF ----

    def subobjects(self, x: int) -> list:
        if x > _ENUM_CAP:
            raise ScaleLimitError(
                f"subspaces of dimension {x} are not enumerated; "
                "products go through the Goursat route")
        return _subspaces(x, self.q)

    def subobject_count(self, x: int) -> int:
        return sum(_gaussian(x, k, self.q) for k in range(x + 1))

    def subobject_lattice(self, x: int) -> FiniteLattice:
        subs = self.subobjects(x)
        rows = [[self._contained(a, b) for b in subs] for a in subs]
        return FiniteLattice(rows, labels=subs)

    def _contained(self, a, b) -> bool:
        if not a:
            return True
        joint, _ = _rref([list(r) for r in a + b], self.q)
        return len(joint) == len(b)

    def subobject_embedding(self, x: int, sub):
        k = len(sub)
        mono = Mat(k, x, tuple(tuple(s[i] for s in sub) for i in range(x)))
        return k, mono

    def canonical_subobject(self, m: Mat):
        if not self.is_mono(m):
            raise BackendError("not a mono")
        cols = [[m.rows[i][j] for i in range(m.dst)] for j in range(m.src)]
        basis, _ = _rref(cols, self.q)
        return tuple(basis)

    # ---- quotients: named by their kernels ----

    def quotients(self, x: int) -> list:
        return self.subobjects(x)

    def quotient_lattice(self, x: int) -> FiniteLattice:
        subs = self.quotients(x)
        rows = [[self._contained(a, b) for b in subs] for a in subs]
        # quotienting further means a larger kernel, so the order is
        # kernel containment
        return FiniteLattice(rows, labels=subs)

    def quotient_epi(self, x: int, quot):
        q = self.q
        kernel = [list(r) for r in quot]
        _, pivots = _rref(kernel, q)
        free = [c for c in range(x) if c not in pivots]
        rows = []
        for c in free:
            row = []
            for j in range(x):
                v = [0] * x
                v[j] = 1
                red = self._reduce_mod(v, quot)
                row.append(red[c])
            rows.append(tuple(row))
        return len(free), Mat(x, len(free), tuple(rows))

    def _reduce_mod(self, vec, kernel_rref):
        q = self.q
        v = list(vec)
        for b in kernel_rref:
            p = next(i for i, x in enumerate(b) if x)
            c = v[p] % q
            if c:
                v = [(a - c * bb) % q for a, bb in zip(v, b)]
        return [a % q for a in v]

    # ---- automorphisms ----

    def aut_group(self, x: int) -> FiniteGroup:
        if self.aut_order(x) > 1000:
            raise ScaleLimitError(
                f"GL({x}, {self.q}) has {self.aut_order(x)} elements; "
                "beyond the character-table scale")
        if x not in self._aut_cache:
            items = self._invertible(x)
            self._aut_cache[x] = FiniteGroup.from_composition(
                items, lambda a, b: _matmul(a, b, self.q))
        return self._aut_cache[x]

    def aut_order(self, x: int) -> int:
        n = 1
        for i in range(x):
            n *= self.q ** x - self.q ** i
        return n

    def aut_act_subobject(self, x: int, g, sub):
        moved = [_matvec(g, v, self.q) for v in sub]
        basis, _ = _rref(moved, self.q)
        return tuple(basis)

    def aut_act_quotient(self, x: int, g, quot):
        return self.aut_act_subobject(x, g, quot)

    def quotient_fixed_pointwise(self, x: int, quot, g) -> bool:
        q = self.q
        for j in range(x):
            v = [0] * x
            v[j] = 1
            gv = _matvec(g, v, q)
            diff = [(a - b) % q for a, b in zip(gv, v)]
            if any(self._reduce_mod(diff, quot)):
                return False
        return True

    def pair_aut(self, x: int, y: int, gx, gy):
        top = [tuple(r) + (0,) * y for r in gx]
        bot = [(0,) * x + tuple(r) for r in gy]
        return tuple(top + bot)

    # ---- degree ----

    def delta_of_epi(self, e: Mat) -> MPoly:
        if not self.is_epi(e):
            raise BackendError("delta is only defined on epis")
        return MPoly.var("t") ** (e.src - e.dst)


def _matvec(rows, v, q):
    return [sum(a * b for a, b in zip(row, v)) % q for row in rows]


def _gaussian(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def _subspaces(d: int, q: int) -> list:
    """All subspaces of F_q^d as tuples of RREF basis rows."""
    out = []
    for r in range(d + 1):
        for pivots in itertools.combinations(range(d), r):
            free_pos = []
            for i in range(r):
                for c in range(pivots[i] + 1, d):
                    if c not in pivots:
                        free_pos.append((i, c))
            for vals in itertools.product(range(q), repeat=len(free_pos)):
                rows = [[0] * d for _ in range(r)]
                for i in range(r):
                    rows[i][pivots[i]] = 1
                for (i, c), v in zip(free_pos, vals):
                    rows[i][c] = v
                out.append(tuple(tuple(row) for row in rows))
    return out
