"""Finite lattices with exact order-theoretic invariants.

Elements are indexed 0..n-1 and the order relation is stored as one
bitmask per element, which keeps meets, joins and cover tests cheap at
the scales produced by the backends (a few hundred elements).

Conventions:

* ``labels[i]`` is an optional opaque payload attached to element i.
* Chains of the order complex run from bottom to top, endpoints
  included; the boundary map drops interior elements only.  With that
  convention the Euler characteristic of the chain complex equals the
  Möbius number mu(bottom, top), and for a modular lattice the homology
  is concentrated in the degree equal to the rank.
* Lattices built by restriction (intervals, fixed sublattices) carry a
  ``parent_indices`` tuple mapping their elements back to the parent.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from .linalg import rational_rank

# Constructors verify the full lattice axioms pairwise up to this size;
# anything larger is refused, which is fine for every shipped backend.
_VERIFY_LIMIT = 1200


class LatticeError(ValueError):
    pass


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FiniteLattice:
    """A finite lattice given by its full order relation.

    ``leq_rows[i][j]`` must be truthy exactly when element i lies below
    element j.  The constructor checks the partial order axioms and the
    existence of all pairwise meets (which, with a top element, implies
    all joins exist).
    """

    def __init__(self, leq_rows: Sequence[Sequence], labels: Optional[Sequence] = None,
                 parent_indices: Optional[Sequence[int]] = None):
        n = len(leq_rows)
        if n == 0:
            raise LatticeError("empty lattice")
        if n > _VERIFY_LIMIT:
            raise LatticeError(f"lattice too large ({n} > {_VERIFY_LIMIT})")
        if any(len(row) != n for row in leq_rows):
            raise LatticeError("leq matrix is not square")
        self.n = n
        self.labels = list(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise LatticeError("label count does not match element count")
        self.parent_indices = tuple(parent_indices) if parent_indices is not None else None

        down = [0] * n
        up = [0] * n
        for i in range(n):
            row = leq_rows[i]
            for j in range(n):
                if row[j]:
                    down[j] |= 1 << i
                    up[i] |= 1 << j
        self._down = down
        self._up = up
        full = (1 << n) - 1

        for i in range(n):
            if not (down[i] >> i) & 1:
                raise LatticeError("order not reflexive")
        for i in range(n):
            for j in _bits(down[i]):
                if j != i and (down[j] >> i) & 1:
                    raise LatticeError("order not antisymmetric")
                if down[j] & ~down[i]:
                    raise LatticeError("order not transitive")

        bottoms = [i for i in range(n) if up[i] == full]
        tops = [i for i in range(n) if down[i] == full]
        if len(bottoms) != 1 or len(tops) != 1:
            raise LatticeError("lattice must have a unique bottom and top")
        self.bottom = bottoms[0]
        self.top = tops[0]

        self._meet: dict = {}
        self._join: dict = {}
        for a in range(n):
            for b in range(a + 1, n):
                if self._meet_raw(a, b) is None:
                    raise LatticeError(f"no meet for elements {a}, {b}")

        # cover masks: _covers_up[i] has a bit for every j with i covered by j
        self._covers_up = [0] * n
        for i in range(n):
            strict = up[i] & ~(1 << i)
            for j in _bits(strict):
                if (up[i] & down[j]) == ((1 << i) | (1 << j)):
                    self._covers_up[i] |= 1 << j

        self._mobius_rows: dict = {}
        self._height: Optional[List[int]] = None
        self._chains_by_length: Optional[List[list]] = None

    # ---------------- basic queries ----------------

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"FiniteLattice(n={self.n})"

    def leq(self, a: int, b: int) -> bool:
        return bool((self._down[b] >> a) & 1)

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq(a, b)

    def covers(self, a: int, b: int) -> bool:
        """True when b covers a."""
        return bool((self._covers_up[a] >> b) & 1)

    def upper_covers(self, a: int) -> List[int]:
        return list(_bits(self._covers_up[a]))

    def _meet_raw(self, a: int, b: int):
        key = (a, b) if a <= b else (b, a)
        got = self._meet.get(key)
        if got is not None:
            return got
        m = self._down[a] & self._down[b]
        z = max(_bits(m), key=lambda i: self._down[i].bit_count(), default=None)
        if z is None or self._down[z] != m:
            return None
        self._meet[key] = z
        return z

    def meet(self, a: int, b: int) -> int:
        z = self._meet_raw(a, b)
        if z is None:
            raise LatticeError(f"no meet for elements {a}, {b}")
        return z

    def join(self, a: int, b: int) -> int:
        key = (a, b) if a <= b else (b, a)
        got = self._join.get(key)
        if got is not None:
            return got
        m = self._up[a] & self._up[b]
        z = max(_bits(m), key=lambda i: self._up[i].bit_count(), default=None)
        if z is None or self._up[z] != m:
            raise LatticeError(f"no join for elements {a}, {b}")
        self._join[key] = z
        return z

    def meet_of(self, items: Iterable[int]) -> int:
        out = self.top
        for x in items:
            out = self.meet(out, x)
        return out

    def join_of(self, items: Iterable[int]) -> int:
        out = self.bottom
        for x in items:
            out = self.join(out, x)
        return out

    def atoms(self) -> List[int]:
        return self.upper_covers(self.bottom)

    def socle(self) -> int:
        return self.join_of(self.atoms())

    # ---------------- Möbius ----------------

    def mobius(self, a: int, b: int) -> int:
        if not self.leq(a, b):
            raise LatticeError(f"mobius undefined: element {a} is not below {b}")
        row = self._mobius_rows.get(a)
        if row is None:
            row = {a: 1}
            above = sorted(_bits(self._up[a] & ~(1 << a)),
                           key=lambda z: self._down[z].bit_count())
            for z in above:
                row[z] = -sum(row[w] for w in _bits(self._down[z] & self._up[a])
                              if w != z)
            self._mobius_rows[a] = row
        return row[b]

    # ---------------- structure ----------------

    def heights(self) -> List[int]:
        """Length of the longest chain from the bottom to each element."""
        if self._height is None:
            h = [0] * self.n
            order = sorted(range(self.n), key=lambda i: self._down[i].bit_count())
            for i in order:
                below = [h[j] for j in _bits(self._down[i]) if j != i]
                h[i] = 1 + max(below) if below else 0
            self._height = h
        return self._height

    def is_graded(self) -> bool:
        h = self.heights()
        return all(h[j] == h[i] + 1
                   for i in range(self.n) for j in self.upper_covers(i))

    def rank(self) -> int:
        if not self.is_graded():
            raise LatticeError("not graded")
        return self.heights()[self.top]

    def is_modular(self) -> bool:
        # A finite lattice is modular iff it is both upper and lower
        # semimodular; that turns the check into a pass over pairs.
        for a in range(self.n):
            for b in range(self.n):
                m = self.meet(a, b)
                j = self.join(a, b)
                if self.covers(m, a) != self.covers(b, j):
                    return False
        return True

    def is_complemented(self) -> bool:
        for a in range(self.n):
            if not any(self.meet(a, b) == self.bottom and self.join(a, b) == self.top
                       for b in range(self.n)):
                return False
        return True

    # ---------------- derived lattices ----------------

    def restrict(self, indices: Sequence[int]) -> "FiniteLattice":
        idx = list(indices)
        rows = [[self.leq(i, j) for j in idx] for i in idx]
        labels = [self.labels[i] for i in idx] if self.labels is not None else None
        parents = [self.parent_indices[i] for i in idx] if self.parent_indices else idx
        return FiniteLattice(rows, labels=labels, parent_indices=parents)

    def interval(self, a: int, b: int) -> "FiniteLattice":
        if not self.leq(a, b):
            raise LatticeError(f"empty interval [{a}, {b}]")
        return self.restrict(sorted(_bits(self._up[a] & self._down[b])))

    def product(self, other: "FiniteLattice") -> "FiniteLattice":
        pairs = [(i, j) for i in range(self.n) for j in range(other.n)]
        rows = [[self.leq(a1, b1) and other.leq(a2, b2) for (b1, b2) in pairs]
                for (a1, a2) in pairs]
        if self.labels is not None and other.labels is not None:
            labels = [(self.labels[i], other.labels[j]) for (i, j) in pairs]
        else:
            labels = [pairs[k] for k in range(len(pairs))]
        return FiniteLattice(rows, labels=labels)

    # ---------------- chains ----------------

    def chains_by_length(self) -> List[list]:
        """All chains bottom=z0 < z1 < ... < zk=top, grouped by step count k."""
        if self._chains_by_length is None:
            out: List[list] = [[] for _ in range(self.heights()[self.top] + 1)]
            if self.n == 1:
                out[0].append((self.bottom,))
            else:
                stack = [(self.bottom, (self.bottom,))]
                while stack:
                    last, path = stack.pop()
                    for nxt in _bits(self._up[last] & ~(1 << last)):
                        chain = path + (nxt,)
                        if nxt == self.top:
                            out[len(chain) - 1].append(chain)
                        else:
                            stack.append((nxt, chain))
            self._chains_by_length = out
        return self._chains_by_length

    def chain_euler(self) -> int:
        return sum((-1) ** k * len(cs) for k, cs in enumerate(self.chains_by_length()))

    # ---------------- serialization ----------------

    def canonical_order(self) -> List[int]:
        """Topological order of element indices, ties broken by label text."""
        def text(i):
            return str(self.labels[i]) if self.labels is not None else str(i)

        placed = 0
        order: List[int] = []
        remaining = set(range(self.n))
        while remaining:
            ready = [i for i in remaining
                     if all(j not in remaining for j in _bits(self._down[i]) if j != i)]
            ready.sort(key=lambda i: (text(i), i))
            pick = ready[0]
            order.append(pick)
            remaining.remove(pick)
            placed += 1
        return order

    def to_json(self) -> dict:
        order = self.canonical_order()
        pos = {orig: k for k, orig in enumerate(order)}
        covers = sorted([pos[i], pos[j]]
                        for i in range(self.n) for j in self.upper_covers(i))
        obj = {"size": self.n, "covers": covers}
        if self.labels is not None:
            obj["labels"] = [str(self.labels[i]) for i in order]
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "FiniteLattice":
        n = int(obj["size"])
        up = [1 << i for i in range(n)]
        # transitive closure over covers, processed as a DAG
        adj = [[] for _ in range(n)]
        for a, b in obj["covers"]:
            adj[a].append(b)
        changed = True
        while changed:
            changed = False
            for a in range(n):
                for b in adj[a]:
                    new = up[a] | up[b]
                    if new != up[a]:
                        up[a] = new
                        changed = True
        rows = [[bool((up[i] >> j) & 1) for j in range(n)] for i in range(n)]
        return cls(rows, labels=obj.get("labels"))

    # ---------------- convenience builders ----------------

    @classmethod
    def from_relation(cls, elements: Sequence, leq) -> "FiniteLattice":
        rows = [[leq(x, y) for y in elements] for x in elements]
        return cls(rows, labels=list(elements))

    @classmethod
    def chain(cls, length: int) -> "FiniteLattice":
        return cls.from_relation(list(range(length + 1)), lambda a, b: a <= b)

    @classmethod
    def boolean(cls, n: int) -> "FiniteLattice":
        subsets = []
        for mask in range(1 << n):
            subsets.append(frozenset(i for i in range(n) if (mask >> i) & 1))
        return cls.from_relation(subsets, lambda a, b: a <= b)


# ---------------- module-level operations ----------------

def mobius(L: FiniteLattice, a: int, b: int) -> int:
    return L.mobius(a, b)


def structure(L: FiniteLattice) -> dict:
    """Summary invariants; rank is None when maximal chain lengths differ."""
    return {
        "is_modular": L.is_modular(),
        "is_complemented": L.is_complemented(),
        "rank": L.rank() if L.is_graded() else None,
        "atoms": L.atoms(),
        "socle": L.socle(),
    }


def mu_vanishing_profile(L: FiniteLattice):
    """Per element z, the four equivalent nonvanishing conditions.

    Returns a list of tuples (mobius(0,z) != 0, z is a join of atoms,
    [0,z] is complemented, z lies below the socle), each computed on its
    own.  On a modular lattice all four agree elementwise.
    """
    if not L.is_modular():
        raise LatticeError("modularity required")
    soc = L.socle()
    out = []
    for z in range(L.n):
        below_atoms = [a for a in L.atoms() if L.leq(a, z)]
        flags = (
            L.mobius(L.bottom, z) != 0,
            L.join_of(below_atoms) == z,
            L.interval(L.bottom, z).is_complemented(),
            L.leq(z, soc),
        )
        out.append(flags)
    return out


def order_complex_homology(L: FiniteLattice) -> List[int]:
    """Rational homology ranks of the bottom-to-top chain complex, by degree."""
    if L.n < 2:
        raise LatticeError("need at least two elements")
    chains = L.chains_by_length()
    maxdeg = len(chains) - 1
    index = [{c: k for k, c in enumerate(cs)} for cs in chains]

    def boundary(n: int):
        """Matrix of the degree-n boundary, rows = (n-1)-chains."""
        rows = [[Fraction(0)] * len(chains[n]) for _ in chains[n - 1]]
        for col, chain in enumerate(chains[n]):
            for i in range(1, n):
                smaller = chain[:i] + chain[i + 1:]
                rows[index[n - 1][smaller]][col] += (-1) ** i
        return rows

    ranks = [0] * (maxdeg + 1)
    bd_rank = [0] * (maxdeg + 2)
    for n in range(2, maxdeg + 1):
        bd_rank[n] = rational_rank(boundary(n))
    for n in range(maxdeg + 1):
        ranks[n] = len(chains[n]) - bd_rank[n] - bd_rank[n + 1]
    return ranks


def is_lattice_automorphism(L: FiniteLattice, perm: Sequence[int]) -> bool:
    if sorted(perm) != list(range(L.n)):
        return False
    return all(L.leq(i, j) == L.leq(perm[i], perm[j])
               for i in range(L.n) for j in range(L.n))


def fixed_sublattice(L: FiniteLattice, perm: Sequence[int]) -> FiniteLattice:
    """The lattice on the fixed points of an automorphism."""
    if not is_lattice_automorphism(L, perm):
        raise LatticeError("not a lattice automorphism")
    return L.restrict([i for i in range(L.n) if perm[i] == i])


def factor_direct_product(L: FiniteLattice) -> List[FiniteLattice]:
    """Directly indecomposable factors of a complemented modular lattice.

    A pair (a, b) of complements splits L iff z -> (z^a, z^b) is a
    bijection onto [0,a] x [0,b] and both projections respect joins;
    factors are found greedily from the smallest split and recursed.
    """
    if not (L.is_modular() and L.is_complemented()):
        raise LatticeError("complemented modular lattice required")
    if L.n <= 2:
        return [L]
    candidates = sorted((i for i in range(L.n) if i not in (L.bottom, L.top)),
                        key=lambda i: L._down[i].bit_count())
    for a in candidates:
        size_a = L._down[a].bit_count()
        for b in range(L.n):
            if b in (L.bottom, L.top):
                continue
            if L.meet(a, b) != L.bottom or L.join(a, b) != L.top:
                continue
            if size_a * L._down[b].bit_count() != L.n:
                continue
            image = {(L.meet(z, a), L.meet(z, b)) for z in range(L.n)}
            if len(image) != L.n:
                continue
            ok = all(
                L.meet(L.join(z, w), c) == L.join(L.meet(z, c), L.meet(w, c))
                for z in range(L.n) for w in range(L.n) for c in (a, b)
            )
            if not ok:
                continue
            return (factor_direct_product(L.interval(L.bottom, a))
                    + factor_direct_product(L.interval(L.bottom, b)))
    return [L]


def are_isomorphic(A: FiniteLattice, B: FiniteLattice) -> bool:
    """Backtracking lattice isomorphism test for small lattices."""
    if A.n != B.n:
        return False
    ha, hb = A.heights(), B.heights()
    if sorted(ha) != sorted(hb):
        return False

    def invariant(L, i, h):
        return (h[i], L._down[i].bit_count(), L._up[i].bit_count(),
                len(L.upper_covers(i)))

    inva = [invariant(A, i, ha) for i in range(A.n)]
    invb = [invariant(B, i, hb) for i in range(B.n)]
    if sorted(inva) != sorted(invb):
        return False
    order = sorted(range(A.n), key=lambda i: A._down[i].bit_count())
    assign: List[Optional[int]] = [None] * A.n
    used = [False] * B.n

    def extend(k: int) -> bool:
        if k == A.n:
            return True
        i = order[k]
        for j in range(B.n):
            if used[j] or inva[i] != invb[j]:
                continue
            good = all(
                A.leq(i, i2) == B.leq(j, assign[i2])
                and A.leq(i2, i) == B.leq(assign[i2], j)
                for i2 in order[:k]
            )
            if good:
                assign[i] = j
                used[j] = True
                if extend(k + 1):
                    return True
                assign[i] = None
                used[j] = False
        return False

    return extend(0)
