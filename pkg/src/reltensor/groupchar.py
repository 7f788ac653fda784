"""Exact character theory for small finite groups.

Two table builders are provided.  Symmetric groups go through the
Murnaghan-Nakayama rule, with rows indexed by partitions in descending
lexicographic order and columns by cycle type in ascending lexicographic
order.  Everything else goes through the class-algebra route: the class
sums act on each irreducible by scalars, so their structure-constant
matrices are simultaneously diagonalized over a prime field F_p with
p = 1 mod exponent(G) and p > 2|G|, and the resulting character values
are lifted exactly into Q(zeta) coordinates from the values on power
maps.  All arithmetic is exact end to end.

Class functions hold one exact value per conjugacy class; values are
Fraction, MPoly or Cyclo.  Character tables keep rational entries as
Fraction and only use Cyclo where the value is genuinely irrational.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd, isqrt
from typing import Callable, List, Optional, Sequence, Tuple

from .cyclo import Cyclo
from .polynomial import MPoly


class GroupError(ValueError):
    pass


# ---------------------------------------------------------------- groups

class FiniteGroup:
    """A finite group given by an explicit multiplication table.

    ``table[i][j]`` is the index of the product of elements i and j.
    Construction verifies the group axioms outright, which is affordable
    at the scales used here (|G| a few hundred at most).  Tables that a
    constructor derives by tabulating an actual composition function
    are associative by construction and skip the cubic check.
    """

    def __init__(self, table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None,
                 _tabulated: bool = False):
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise GroupError("multiplication table must be square and nonempty")
        self.table = [list(row) for row in table]
        self.n = n
        ident = [e for e in range(n)
                 if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n))]
        if len(ident) != 1:
            raise GroupError("table has no unique identity")
        self.identity = ident[0]
        self._inv = [None] * n
        for x in range(n):
            ys = [y for y in range(n) if self.table[x][y] == self.identity]
            if len(ys) != 1:
                raise GroupError("table has an element without a unique inverse")
            self._inv[x] = ys[0]
        if not _tabulated:
            for a in range(n):
                for b in range(n):
                    ab = self.table[a][b]
                    for c in range(n):
                        if self.table[ab][c] != self.table[a][self.table[b][c]]:
                            raise GroupError("table is not associative")
        self.names = list(names) if names is not None else [f"g{i}" for i in range(n)]
        self._classes: Optional[List[List[int]]] = None

    # -------- construction helpers --------

    @classmethod
    def from_composition(cls, items: Sequence, compose: Callable, names=None) -> "FiniteGroup":
        """Group on hashable items closed under ``compose``."""
        index = {x: i for i, x in enumerate(items)}
        if len(index) != len(items):
            raise GroupError("duplicate items")
        table = [[index[compose(x, y)] for y in items] for x in items]
        if names is None:
            names = [str(x) for x in items]
        g = cls(table, names=names, _tabulated=True)
        g.items = list(items)
        return g

    @classmethod
    def from_permutations(cls, degree: int, generators: Sequence[Tuple[int, ...]]) -> "FiniteGroup":
        ident = tuple(range(degree))
        elems = {ident}
        frontier = [ident]
        gens = [tuple(g) for g in generators]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = tuple(g[v] for v in x)
                if y not in elems:
                    elems.add(y)
                    frontier.append(y)
        items = sorted(elems)
        group = cls.from_composition(
            items, lambda a, b: tuple(a[v] for v in b),
            names=[perm_cycle_name(p) for p in items])
        group.items = items
        return group

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        items = sorted(itertools.permutations(range(n))) if n > 0 else [()]
        group = cls.from_composition(
            items, lambda a, b: tuple(a[v] for v in b),
            names=[perm_cycle_name(p) for p in items])
        group.items = items
        return group

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls([[(i + j) % n for j in range(n)] for i in range(n)],
                   names=[f"r{i}" if i else "e" for i in range(n)])

    # -------- queries --------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.table[self.table[g][x]][self._inv[g]]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def exponent(self) -> int:
        m = 1
        for a in range(self.n):
            o = self.element_order(a)
            m = m * o // gcd(m, o)
        return m

    def power(self, a: int, k: int) -> int:
        k %= self.element_order(a)
        x = self.identity
        for _ in range(k):
            x = self.table[x][a]
        return x

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a]
                   for a in range(self.n) for b in range(self.n))

    def subgroup_closure(self, gens: Sequence[int]) -> List[int]:
        got = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in got:
                    got.add(y)
                    frontier.append(y)
        return sorted(got)


def perm_cycle_name(p: Tuple[int, ...]) -> str:
    seen = [False] * len(p)
    parts = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        nxt = p[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = p[nxt]
        parts.append("(" + " ".join(str(v + 1) for v in cyc) + ")")
    return "".join(parts) if parts else "e"


def _permutation_items(G: FiniteGroup) -> bool:
    items = getattr(G, "items", None)
    if not items:
        return False
    deg = len(items[0]) if isinstance(items[0], tuple) else -1
    return deg >= 0 and all(
        isinstance(p, tuple) and len(p) == deg and sorted(p) == list(range(deg))
        for p in items)


def conjugacy_classes(G: FiniteGroup) -> List[List[int]]:
    """Conjugacy classes as sorted lists; the representative of a class
    is its least element.  The identity class comes first; the rest are
    ordered by least element, except that groups of permutation tuples
    sort by cycle type (ascending lex) before least element.  The order
    is fixed the first time it is computed, so class function values
    never go stale against it."""
    if G._classes is None:
        seen = [False] * G.n
        classes = []
        for x in range(G.n):
            if seen[x]:
                continue
            orbit = sorted({G.conj(g, x) for g in range(G.n)})
            for y in orbit:
                seen[y] = True
            classes.append(orbit)
        if _permutation_items(G):
            classes.sort(key=lambda c: (cycle_type(G.items[c[0]]), c[0]))
        else:
            classes.sort(key=lambda c: (G.identity not in c, c[0]))
        G._classes = classes
    return G._classes


# ---------------------------------------------------------------- class functions

class ClassFunction:
    """One exact value (Fraction, MPoly or Cyclo) per conjugacy class."""

    __slots__ = ("group", "values")

    def __init__(self, group: FiniteGroup, values: Sequence):
        classes = conjugacy_classes(group)
        if len(values) != len(classes):
            raise GroupError("value count does not match class count")
        self.group = group
        self.values = list(values)

    def __getitem__(self, k: int):
        return self.values[k]

    def __eq__(self, other):
        return (isinstance(other, ClassFunction)
                and self.group is other.group
                and all(a == b for a, b in zip(self.values, other.values)))

    __hash__ = None

    def __add__(self, other):
        self._check(other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        self._check(other)
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.group, [a * b for a, b in zip(self.values, other.values)])
        return ClassFunction(self.group, [v * other for v in self.values])

    __rmul__ = __mul__

    def _check(self, other):
        if not isinstance(other, ClassFunction) or other.group is not self.group:
            raise GroupError("class functions live on different groups")

    def dual(self) -> "ClassFunction":
        """The function g -> f(g^-1)."""
        inv = inverse_class_map(self.group)
        return ClassFunction(self.group, [self.values[inv[k]] for k in range(len(self.values))])

    def __repr__(self):
        return f"ClassFunction({[str(v) for v in self.values]})"


def class_index_map(G: FiniteGroup) -> List[int]:
    cached = getattr(G, "_cmap", None)
    if cached is not None:
        return cached
    classes = conjugacy_classes(G)
    out = [0] * G.n
    for k, cls in enumerate(classes):
        for x in cls:
            out[x] = k
    G._cmap = out
    return out


def inverse_class_map(G: FiniteGroup) -> List[int]:
    cached = getattr(G, "_inv_classes", None)
    if cached is not None:
        return cached
    classes = conjugacy_classes(G)
    cmap = class_index_map(G)
    out = [cmap[G.inv(cls[0])] for cls in classes]
    G._inv_classes = out
    return out


def trivial_character(G: FiniteGroup) -> ClassFunction:
    return ClassFunction(G, [Fraction(1)] * len(conjugacy_classes(G)))


def regular_character(G: FiniteGroup) -> ClassFunction:
    values = [Fraction(G.n) if G.identity in cls else Fraction(0)
              for cls in conjugacy_classes(G)]
    return ClassFunction(G, values)


def inner_product(f: ClassFunction, h: ClassFunction):
    """(1/|G|) sum_g f(g) h(g^-1), evaluated classwise."""
    if f.group is not h.group:
        raise GroupError("inner product of class functions on different groups")
    G = f.group
    classes = conjugacy_classes(G)
    inv = inverse_class_map(G)
    total = 0
    for k, cls in enumerate(classes):
        total = total + len(cls) * (f.values[k] * h.values[inv[k]])
    if isinstance(total, MPoly):
        return total / G.n
    if isinstance(total, Cyclo):
        out = total * Fraction(1, G.n)
        return out.reduced()
    return Fraction(total, 1) / G.n


def permutation_character(G: FiniteGroup, points: Sequence, action: Callable) -> ClassFunction:
    """Character of a finite G-set; ``action(g_index, point) -> point``."""
    pts = list(points)
    for pt in pts:
        if action(G.identity, pt) != pt:
            raise GroupError("action axioms violated: identity moves a point")
    for a in range(G.n):
        for b in range(G.n):
            for pt in pts:
                if action(a, action(b, pt)) != action(G.mul(a, b), pt):
                    raise GroupError("action axioms violated: not compatible with product")
    values = []
    for cls in conjugacy_classes(G):
        g = cls[0]
        values.append(Fraction(sum(1 for pt in pts if action(g, pt) == pt)))
    return ClassFunction(G, values)


def induce(f: ClassFunction, G: FiniteGroup, embedding: Sequence[int]) -> ClassFunction:
    """Induced class function along an injective homomorphism H -> G.

    ``embedding[h]`` is the image in G of the H-element h.  Computed by
    class fusion: (ind f)(C) = [G:H]/|C| * sum of |D| f(D) over H-classes
    D mapping into C.
    """
    H = f.group
    img = list(embedding)
    if len(img) != H.n or len(set(img)) != H.n:
        raise GroupError("embedding is not an injective map on elements")
    for a in range(H.n):
        for b in range(H.n):
            if G.mul(img[a], img[b]) != img[H.mul(a, b)]:
                raise GroupError("embedding is not a homomorphism")
    gcmap = class_index_map(G)
    hclasses = conjugacy_classes(H)
    index = Fraction(G.n, H.n)
    sums = [0] * len(conjugacy_classes(G))
    for k, cls in enumerate(hclasses):
        gk = gcmap[img[cls[0]]]
        sums[gk] = sums[gk] + len(cls) * f.values[k]
    values = []
    for k, cls in enumerate(conjugacy_classes(G)):
        values.append(index * Fraction(1, len(cls)) * sums[k])
    return ClassFunction(G, values)


def restrict(f: ClassFunction, H: FiniteGroup, embedding: Sequence[int]) -> ClassFunction:
    """Restriction of a class function on G along an embedding H -> G."""
    G = f.group
    gcmap = class_index_map(G)
    values = [f.values[gcmap[embedding[cls[0]]]] for cls in conjugacy_classes(H)]
    return ClassFunction(H, values)


# ---------------------------------------------------------------- character tables

class CharacterTable:
    """Irreducible characters of a group, with deterministic ordering.

    ``rows[i]`` is an irreducible character as a ClassFunction; the
    first row is always the trivial character.  ``row_labels`` names the
    rows (partitions for symmetric groups, chi0, chi1, ... otherwise);
    ``class_names`` names the columns by a representative element.
    """

    def __init__(self, group: FiniteGroup, rows: List[ClassFunction],
                 row_labels: List[str], class_names: List[str]):
        self.group = group
        self.rows = rows
        self.row_labels = row_labels
        self.class_names = class_names
        self.classes = conjugacy_classes(group)
        self.class_sizes = [len(c) for c in self.classes]
        self.degrees = [row.values[0] for row in rows]
        self._verify()

    def _verify(self):
        G = self.group
        if sum(int(d) * int(d) for d in self.degrees) != G.n:
            raise GroupError("character degrees do not sum to the group order")
        if any(v != 1 for v in self.rows[0].values):
            raise GroupError("first table row is not the trivial character")
        for i, r in enumerate(self.rows):
            for j in range(i + 1):
                ip = inner_product(self.rows[j], r)
                if ip != (1 if i == j else 0):
                    raise GroupError("character rows are not orthonormal")

    def __len__(self):
        return len(self.rows)

    def irreducible(self, i: int) -> ClassFunction:
        return self.rows[i]

    def dual_index(self, i: int) -> int:
        """Index of the complex-conjugate (dual) character."""
        dual = self.rows[i].dual()
        for j, row in enumerate(self.rows):
            if row == dual:
                return j
        raise GroupError("table is not closed under duality")

    def decompose(self, f: ClassFunction):
        """Multiplicities of each irreducible inside a class function."""
        return [inner_product(f, row) for row in self.rows]

    def to_json(self) -> dict:
        return {
            "order": self.group.n,
            "class_sizes": self.class_sizes,
            "class_representatives": self.class_names,
            "row_labels": self.row_labels,
            "values": [[str(v) for v in row.values] for row in self.rows],
        }


# -------- symmetric groups via Murnaghan-Nakayama --------

def partitions_of(n: int, cap: Optional[int] = None):
    if n == 0:
        yield ()
        return
    top = min(n, cap) if cap is not None else n
    for head in range(top, 0, -1):
        for rest in partitions_of(n - head, head):
            yield (head,) + rest


def _hook_removals(lam: Tuple[int, ...], k: int):
    """All ways to remove a length-k rim hook, as (new partition, height)."""
    pad = len(lam) + k
    beta = sorted((lam[i] if i < len(lam) else 0) + pad - 1 - i for i in range(pad))
    bset = set(beta)
    for b in beta:
        if b - k >= 0 and b - k not in bset:
            height = sum(1 for c in beta if b - k < c < b)
            nset = sorted(bset - {b} | {b - k}, reverse=True)
            parts = tuple(c - (pad - 1 - i) for i, c in enumerate(nset))
            yield tuple(p for p in parts if p > 0), height


@lru_cache(maxsize=None)
def mn_character_value(lam: Tuple[int, ...], mu: Tuple[int, ...]) -> int:
    """chi^lam at cycle type mu, by the Murnaghan-Nakayama recursion."""
    if not mu:
        return 1 if not lam else 0
    k, rest = mu[0], mu[1:]
    return sum((-1) ** height * mn_character_value(sub, rest)
               for sub, height in _hook_removals(lam, k))


_SN_TABLES: dict = {}


def cycle_type_size(n: int, tp: Tuple[int, ...]) -> int:
    """Number of permutations in S_n with the given cycle type."""
    z = 1
    for length, reps in Counter(tp).items():
        z *= length ** reps * factorial(reps)
    return factorial(n) // z


def _least_type_representative(tp: Tuple[int, ...], n: int) -> Tuple[int, ...]:
    # shortest cycles on the smallest points is lexicographically least
    p = list(range(n))
    start = 0
    for length in sorted(tp):
        for i in range(start, start + length - 1):
            p[i] = i + 1
        p[start + length - 1] = start
        start += length
    return tuple(p)


class SnClassData:
    """Class data of a symmetric group, without the Cayley table.

    Stands in for S_n wherever only conjugacy classes matter (n! is far
    too large to tabulate beyond n = 6).  Element indices are virtual,
    grouped into ranges by class; every class of S_n is its own inverse
    class, so ``inv`` is the identity on representatives.
    """

    __slots__ = ("n", "degree", "identity", "_classes", "_cmap",
                 "_inv_classes", "cycle_types")

    def __init__(self, n: int):
        self.degree = n
        self.n = factorial(n)
        self.identity = 0
        self.cycle_types = sorted(tp for tp in partitions_of(n))
        self._classes = []
        start = 0
        for tp in self.cycle_types:
            size = cycle_type_size(n, tp)
            self._classes.append(range(start, start + size))
            start += size
        self._cmap = None
        self._inv_classes = list(range(len(self._classes)))

    def inv(self, a: int) -> int:
        return a


def character_table_sn(n: int, group: Optional[FiniteGroup] = None) -> CharacterTable:
    """Character table of S_n; rows are partitions of n in descending
    lexicographic order, columns are cycle types in ascending
    lexicographic order.

    Without an explicit group the table is built over class data alone,
    which keeps n up to 10 cheap; pass a concrete symmetric group to get
    class functions living on it.
    """
    if not (0 <= n <= 10):
        raise GroupError("symmetric group table limited to 0 <= n <= 10")
    key = (n, id(group))
    if key in _SN_TABLES:
        return _SN_TABLES[key]
    if group is None:
        G = SnClassData(n)
        want = G.cycle_types
        class_names = [perm_cycle_name(_least_type_representative(tp, n))
                       for tp in want]
    else:
        G = group
        # conjugacy_classes orders permutation groups by cycle type already
        classes = conjugacy_classes(G)
        want = [cycle_type(G.items[cls[0]]) for cls in classes]
        class_names = [G.names[cls[0]] for cls in classes]
    rows = []
    labels = []
    for lam in sorted(partitions_of(n), reverse=True):
        values = [Fraction(mn_character_value(lam, tp)) for tp in want]
        rows.append(ClassFunction(G, values))
        labels.append("[" + ",".join(str(p) for p in lam) + "]")
    table = CharacterTable(G, rows, labels, class_names)
    table.cycle_types = want
    _SN_TABLES[key] = table
    return table


def cycle_type(p: Tuple[int, ...]) -> Tuple[int, ...]:
    seen = [False] * len(p)
    lens = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = 1
        seen[start] = True
        nxt = p[start]
        while nxt != start:
            seen[nxt] = True
            nxt = p[nxt]
            cyc += 1
        lens.append(cyc)
    return tuple(sorted(lens, reverse=True))




# -------- generic groups via the class algebra mod p --------

def _prime_divisors(m: int) -> List[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, isqrt(p) + 1))


def _find_lift_prime(order: int, exponent: int) -> int:
    p = 2 * order + 1
    p += (exponent - (p - 1) % exponent) % exponent
    while not _is_prime(p):
        p += exponent
    return p


def _order_m_element(p: int, m: int) -> int:
    """An element of exact multiplicative order m in F_p (needs m | p-1)."""
    qs = _prime_divisors(m)
    for g in range(2, p):
        z = pow(g, (p - 1) // m, p)
        if all(pow(z, m // q, p) != 1 for q in qs):
            return z
    raise GroupError("no element of the requested order mod p")


def _matrix_times_vector(M, v, p: int):
    return tuple(sum(row[k] * v[k] for k in range(len(v))) % p for row in M)


def _rref_with_transform(rows: Sequence[Sequence[int]], p: int):
    """Reduced row echelon form R = T * rows over F_p; returns (R, T, pivots)."""
    k = len(rows)
    n = len(rows[0])
    R = [list(r) for r in rows]
    T = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    pivots = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, k) if R[r][col] % p), None)
        if piv is None:
            continue
        R[row], R[piv] = R[piv], R[row]
        T[row], T[piv] = T[piv], T[row]
        inv = pow(R[row][col], p - 2, p)
        R[row] = [x * inv % p for x in R[row]]
        T[row] = [x * inv % p for x in T[row]]
        for r in range(k):
            if r != row and R[r][col] % p:
                f = R[r][col]
                R[r] = [(x - f * y) % p for x, y in zip(R[r], R[row])]
                T[r] = [(x - f * y) % p for x, y in zip(T[r], T[row])]
        pivots.append(col)
        row += 1
        if row == k:
            break
    return R, T, pivots


def _coords_in_basis(vectors, basis, p: int):
    """Coordinate rows X with X * basis = vectors, over F_p."""
    R, T, pivots = _rref_with_transform(basis, p)
    out = []
    for v in vectors:
        resid = list(v)
        c = [0] * len(basis)
        for j, pc in enumerate(pivots):
            f = resid[pc] % p
            if f:
                resid = [(x - f * y) % p for x, y in zip(resid, R[j])]
                c[j] = f
        if any(x % p for x in resid):
            raise GroupError("vector outside subspace")
        out.append(tuple(sum(c[j] * T[j][a] for j in range(len(basis))) % p
                         for a in range(len(basis))))
    return out


def _nullspace(M: Sequence[Sequence[int]], p: int):
    """Nullspace basis of a square matrix over F_p."""
    n = len(M)
    R, _, pivots = _rref_with_transform(M, p)
    pivot_of_col = {c: r for r, c in enumerate(pivots)}
    basis = []
    for col in range(n):
        if col in pivot_of_col:
            continue
        v = [0] * n
        v[col] = 1
        for c2, r2 in pivot_of_col.items():
            v[c2] = (-R[r2][col]) % p
        basis.append(tuple(v))
    return basis


def character_table_generic(G: FiniteGroup) -> CharacterTable:
    """Exact character table by splitting the class algebra.

    The structure-constant matrices of the class sums commute and act on
    each irreducible by scalars, so their common eigenvectors over F_p
    (p = 1 mod exponent(G), p > 2|G|) recover the central characters;
    degrees and values are then lifted exactly, the latter through the
    power-map digit formula into cyclotomic coordinates.  Rows are
    ordered by ascending degree with the trivial character first.
    """
    if G.n > 500:
        raise GroupError("group too large for the generic character table")
    classes = conjugacy_classes(G)
    r = len(classes)
    cmap = class_index_map(G)
    sizes = [len(c) for c in classes]
    reps = [c[0] for c in classes]
    inv_cls = inverse_class_map(G)
    m = G.exponent()
    p = _find_lift_prime(G.n, m)
    zp = _order_m_element(p, m)

    # a[i][j][k] = #{(x, y) in C_i x C_j : x y = rep_k}; M_i acts by
    # (M_i v)_j = sum_k a[i][j][k] v_k with eigenvector v_k = omega_k.
    amats = []
    for i in range(r):
        M = [[0] * r for _ in range(r)]
        for k in range(r):
            gk = reps[k]
            for x in classes[i]:
                M[cmap[G.mul(G.inv(x), gk)]][k] += 1
        amats.append(M)

    spaces = [[tuple(1 if a == b else 0 for b in range(r)) for a in range(r)]]
    for i in range(1, r):
        if all(len(basis) == 1 for basis in spaces):
            break
        M = amats[i]
        refined = []
        for basis in spaces:
            k = len(basis)
            if k == 1:
                refined.append(basis)
                continue
            images = [_matrix_times_vector(M, v, p) for v in basis]
            X = _coords_in_basis(images, basis, p)
            # coordinate rows c of eigenvectors satisfy c X = lam c
            Xt = [[X[a][b] for a in range(k)] for b in range(k)]
            found = 0
            for lam in range(p):
                if found == k:
                    break
                shifted = [[(Xt[a][b] - (lam if a == b else 0)) % p
                            for b in range(k)] for a in range(k)]
                null = _nullspace(shifted, p)
                if not null:
                    continue
                found += len(null)
                refined.append([
                    tuple(sum(c[a] * basis[a][j] for a in range(k)) % p
                          for j in range(r))
                    for c in null
                ])
        spaces = refined
    if not all(len(basis) == 1 for basis in spaces):
        raise GroupError("class algebra failed to split completely")

    inv_sizes = [pow(s, p - 2, p) for s in sizes]
    rows = []
    for (vec,) in spaces:
        if vec[0] % p == 0:
            raise GroupError("degenerate eigenvector")
        scale = pow(vec[0], p - 2, p)
        omega = [v * scale % p for v in vec]
        s = sum(omega[k] * omega[inv_cls[k]] * inv_sizes[k] for k in range(r)) % p
        d_sq = G.n * pow(s, p - 2, p) % p
        d = isqrt(d_sq)
        if d * d != d_sq or d == 0:
            raise GroupError("degree lift failed")
        chi_mod = [d * omega[k] * inv_sizes[k] % p for k in range(r)]

        values = []
        for k in range(r):
            g = reps[k]
            o = G.element_order(g)
            zo = pow(zp, m // o, p)
            inv_o = pow(o, p - 2, p)
            digits = []
            for j in range(o):
                total = 0
                for e in range(o):
                    total += chi_mod[cmap[G.power(g, e)]] * pow(zo, (-e * j) % o, p)
                nj = total * inv_o % p
                if nj > d:
                    raise GroupError("character digit lift out of range")
                digits.append(nj)
            val = Cyclo(o, [0] * o)
            for j, nj in enumerate(digits):
                if nj:
                    val = val + nj * Cyclo.root(o, j)
            values.append(val.reduced())
        rows.append(values)

    def row_key(values):
        is_trivial = all(v == 1 for v in values)
        return (values[0], 0 if is_trivial else 1, tuple(str(v) for v in values))

    rows.sort(key=row_key)
    cfs = [ClassFunction(G, values) for values in rows]
    labels = [f"chi{i}" for i in range(len(cfs))]
    class_names = [G.names[rep] for rep in reps]
    return CharacterTable(G, cfs, labels, class_names)
