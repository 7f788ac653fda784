"""Morphism calculus of the tensor envelope of a finite Mal'cev category.

The envelope has one object [x] per backend object, and a morphism
[x] -> [y] is an exact-coefficient linear combination of relations,
i.e. of subobjects of x * y.  Composition pulls two relations back over
the middle object and pays a degree factor for the collapse onto the
image; the tensor product shuffles a product of relations; the dual
swaps the two legs.  On top of this calculus sit the split projectors
indexed by subobjects, the trace and character polynomials, the simple
dimension formulas, the T families that control tensor multiplicities,
and the Grothendieck ring product.

Everything here is written against the ``CategoryBackend`` interface
and is therefore shared by all three shipped categories.  Every derived
quantity with two independent descriptions is computed both ways and
compared at the point of use, never collapsed into one code path.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .backends.base import (CategoryBackend, delta_of_object, omega_of_object,
                            subquotients)
from .cyclo import Cyclo
from .groupchar import (CharacterTable, ClassFunction, FiniteGroup,
                        character_table_generic, character_table_sn,
                        class_index_map, conjugacy_classes, induce,
                        inverse_class_map)
from .lattice import FiniteLattice, fixed_sublattice
from .linalg import rational_rank
from .polynomial import MPoly, poly_divides

__all__ = [
    "EngineError",
    "TMorphism",
    "SimpleLabel",
    "MultiplicityTable",
    "TFamily",
    "GrothendieckElement",
    "Envelope",
]


class EngineError(ValueError):
    pass


# ---------------------------------------------------------------- morphisms

class TMorphism:
    """A morphism [src] -> [dst]: relations of src * dst with coefficients.

    ``terms`` maps the canonical subobject datum of a relation inside
    ``product(src, dst)`` to its coefficient; zero coefficients are
    dropped on construction, so the zero morphism has no terms.
    """

    __slots__ = ("backend", "src", "dst", "terms")

    def __init__(self, backend: CategoryBackend, src, dst, terms: Dict):
        self.backend = backend
        self.src = src
        self.dst = dst
        self.terms = {r: c for r, c in terms.items() if not c.is_zero}

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, c) -> "TMorphism":
        if not isinstance(c, MPoly):
            c = MPoly.const(Fraction(c))
        return TMorphism(self.backend, self.src, self.dst,
                         {r: c * v for r, v in self.terms.items()})

    def _check(self, other: "TMorphism"):
        if (self.backend is not other.backend or self.src != other.src
                or self.dst != other.dst):
            raise EngineError("morphisms live between different objects")

    def __add__(self, other: "TMorphism") -> "TMorphism":
        self._check(other)
        out = dict(self.terms)
        for r, c in other.terms.items():
            out[r] = out[r] + c if r in out else c
        return TMorphism(self.backend, self.src, self.dst, out)

    def __sub__(self, other: "TMorphism") -> "TMorphism":
        return self + other.scale(-1)

    def __eq__(self, other) -> bool:
        return (isinstance(other, TMorphism)
                and self.backend is other.backend
                and self.src == other.src and self.dst == other.dst
                and self.terms == other.terms)

    __hash__ = None

    def __repr__(self):
        b = self.backend
        return (f"TMorphism({b.object_label(self.src)} -> "
                f"{b.object_label(self.dst)}, {len(self.terms)} terms)")


# ---------------------------------------------------------------- labels and tables

@dataclass(frozen=True, order=True)
class SimpleLabel:
    """A simple object: an object iso-class and an irreducible character row."""

    object_label: str
    char_index: int


class MultiplicityTable:
    """Simple-object multiplicities of a tensor product, all nonnegative."""

    def __init__(self):
        self.mults: Dict[SimpleLabel, int] = {}
        self.degrees: Dict[SimpleLabel, int] = {}

    def add(self, label: SimpleLabel, degree: int, mult: int):
        if mult < 0:
            raise EngineError("negative multiplicity")
        if mult:
            self.mults[label] = self.mults.get(label, 0) + mult
            self.degrees[label] = degree

    def get(self, label: SimpleLabel) -> int:
        return self.mults.get(label, 0)

    def __eq__(self, other):
        return isinstance(other, MultiplicityTable) and self.mults == other.mults

    def __len__(self):
        return len(self.mults)

    def items(self):
        return sorted(self.mults.items())

    def to_json(self) -> list:
        return [{"object_class": lab.object_label,
                 "character_index": lab.char_index,
                 "character_degree": self.degrees[lab],
                 "multiplicity": m}
                for lab, m in self.items()]

    def __repr__(self):
        body = ", ".join(f"({l.object_label}, chi{l.char_index}): {m}"
                         for l, m in self.items())
        return f"MultiplicityTable({body})"


class TFamily:
    """The invariant-relation family of a tuple of objects, with its action.

    ``members`` lists the canonical subobject data, inside the left-fold
    product of ``objects``, of the relations that project onto every
    factor and embed into every complementary product.  ``act`` applies
    a tuple of per-factor automorphism data to a member.  The two lazy
    tables, fixed-point counts per conjugacy class tuple and the orbit
    profile under the product of the automorphism groups, drive the two
    independent multiplicity routes.
    """

    def __init__(self, engine: "Envelope", objects: tuple, space, members: list):
        self.engine = engine
        self.objects = objects
        self.space = space
        self.members = members
        self.groups = [engine.backend.aut_group(x) for x in objects]
        self._class_table: Optional[Dict[tuple, int]] = None
        self._orbit_profile: Optional[List[Tuple[int, Counter]]] = None

    def act(self, items: Sequence, member):
        gw = self.engine._fold_aut(self.objects, items)
        return self.engine.backend.aut_act_subobject(self.space, gw, member)

    def fixed_count(self, items: Sequence) -> int:
        if not self.objects:
            return len(self.members)
        return sum(1 for m in self.members if self.act(items, m) == m)

    def class_table(self) -> Dict[tuple, int]:
        """Fixed-member counts, one entry per tuple of conjugacy classes."""
        if self._class_table is None:
            if not self.objects:
                self._class_table = {(): len(self.members)}
            else:
                reps = [[A.items[cls[0]] for cls in conjugacy_classes(A)]
                        for A in self.groups]
                table = {}
                for ktuple in itertools.product(*[range(len(r)) for r in reps]):
                    items = [reps[i][k] for i, k in enumerate(ktuple)]
                    table[ktuple] = self.fixed_count(items)
                self._class_table = table
        return self._class_table

    def orbit_profile(self) -> List[Tuple[int, Counter]]:
        """One entry per orbit of the product group on the members.

        Each entry is the stabilizer order of an orbit representative
        together with the joint class distribution of its stabilizer:
        a counter over conjugacy class tuples.  The stabilizer is found
        by a full scan of the product group, independent of the orbit
        arithmetic, which is what makes this a second route.
        """
        if self._orbit_profile is None:
            if not self.objects:
                self._orbit_profile = [(1, Counter({(): 1}))]
                return self._orbit_profile
            moves = []
            for i, A in enumerate(self.groups):
                idents = [G.items[G.identity] for G in self.groups]
                for gi in _generating_indices(A):
                    move = list(idents)
                    move[i] = A.items[gi]
                    moves.append(move)
            unseen = set(self.members)
            orbits = []
            for m in self.members:
                if m not in unseen:
                    continue
                orbit = {m}
                frontier = [m]
                unseen.discard(m)
                while frontier:
                    cur = frontier.pop()
                    for move in moves:
                        nxt = self.act(move, cur)
                        if nxt not in orbit:
                            orbit.add(nxt)
                            unseen.discard(nxt)
                            frontier.append(nxt)
                orbits.append(m)
            cmaps = [class_index_map(A) for A in self.groups]
            profile = []
            for rep in orbits:
                dist: Counter = Counter()
                for atuple in itertools.product(*[range(A.n) for A in self.groups]):
                    items = [A.items[a] for A, a in zip(self.groups, atuple)]
                    if self.act(items, rep) == rep:
                        dist[tuple(cm[a] for cm, a in zip(cmaps, atuple))] += 1
                profile.append((sum(dist.values()), dist))
            order = 1
            for A in self.groups:
                order *= A.n
            if sum(order // n for n, _ in profile) != len(self.members):
                raise EngineError("orbit sizes do not add up to the family size")
            self._orbit_profile = profile
        return self._orbit_profile

    def __repr__(self):
        labels = ", ".join(self.engine.backend.object_label(x) for x in self.objects)
        return f"TFamily([{labels}], {len(self.members)} members)"


def _generating_indices(G: FiniteGroup) -> List[int]:
    gens: List[int] = []
    got = {G.identity}
    for g in range(G.n):
        if g not in got:
            gens.append(g)
            got = set(G.subgroup_closure(gens))
            if len(got) == G.n:
                break
    return gens


class GrothendieckElement:
    """An element of the split Grothendieck ring: one virtual character
    of the automorphism group per object iso-class, zero components
    dropped.  Components print and serialize in increasing valuation."""

    def __init__(self, engine: "Envelope", components: Dict[str, ClassFunction]):
        self.engine = engine
        self.components = {}
        for label, cf in components.items():
            if any(v != 0 for v in cf.values):
                self.components[label] = cf

    def sorted_labels(self) -> List[str]:
        B = self.engine.backend
        return sorted(self.components,
                      key=lambda l: (B.valuation(self.engine.object_by_label(l)), l))

    def __add__(self, other: "GrothendieckElement") -> "GrothendieckElement":
        out = dict(self.components)
        for label, cf in other.components.items():
            out[label] = out[label] + cf if label in out else cf
        return GrothendieckElement(self.engine, out)

    def __eq__(self, other):
        return (isinstance(other, GrothendieckElement)
                and self.sorted_labels() == other.sorted_labels()
                and all(self.components[l] == other.components[l]
                        for l in self.components))

    __hash__ = None

    def to_json(self) -> list:
        B = self.engine.backend
        out = []
        for label in self.sorted_labels():
            cf = self.components[label]
            out.append({
                "object_class": label,
                "valuation": B.valuation(self.engine.object_by_label(label)),
                "values": [{"class_index": k, "size": len(cls), "value": str(v)}
                           for k, (cls, v) in
                           enumerate(zip(conjugacy_classes(cf.group), cf.values))],
            })
        return out

    def __repr__(self):
        return f"GrothendieckElement({', '.join(self.sorted_labels())})"


# ---------------------------------------------------------------- the engine

class Envelope:
    """Session object: the tensor envelope over one backend.

    Holds the iso-class registry and the caches (character tables,
    relation families, fixed characters) that make repeated queries
    cheap.  All methods compute exactly; nothing is randomized except
    the recorded specialization point of the rank check.
    """

    def __init__(self, backend: CategoryBackend):
        self.backend = backend
        self._reps: Dict[str, object] = {}
        self._pinned: list = []
        self._tables: Dict[int, CharacterTable] = {}
        self._families: Dict[tuple, TFamily] = {}
        self._presentations: Dict[tuple, Dict[str, list]] = {}
        self._fixed_chars: Dict[int, ClassFunction] = {}
        self._subgroups: Dict[tuple, FiniteGroup] = {}
        for x in backend.catalog():
            self.register(x)

    # ---- object registry ----

    def register(self, x):
        """Record x as the representative of its iso-class, first one wins."""
        label = self.backend.object_label(x)
        if label not in self._reps:
            self._reps[label] = x
            self._pinned.append(x)
        return self._reps[label]

    def object_by_label(self, label: str):
        if label not in self._reps:
            known = ", ".join(sorted(self._reps))
            raise EngineError(f"unknown object class {label!r}; known: {known}")
        return self._reps[label]

    # ---- basic morphisms ----

    def relation_morphism(self, x, y, datum, coeff=1) -> TMorphism:
        if not isinstance(coeff, MPoly):
            coeff = MPoly.const(Fraction(coeff))
        return TMorphism(self.backend, x, y, {datum: coeff})

    def zero(self, x, y) -> TMorphism:
        return TMorphism(self.backend, x, y, {})

    def identity(self, x) -> TMorphism:
        B = self.backend
        diag = B.pair(B.identity(x), B.identity(x))
        return self.relation_morphism(x, x, B.canonical_subobject(diag))

    def graph(self, f) -> TMorphism:
        """The envelope morphism of a backend morphism, via its graph."""
        B = self.backend
        graph = B.pair(B.identity(f.src), f)
        e, m = B.image(graph)
        return self.relation_morphism(f.src, f.dst, B.canonical_subobject(m))

    def epi_dual(self, e) -> TMorphism:
        """The transpose [e]^v : [dst] -> [src] of a backend epi."""
        return self.dual(self.graph(e))

    def p_sub(self, x, sub) -> TMorphism:
        """The idempotent of a subobject: its diagonal relation in x * x."""
        B = self.backend
        yobj, m = B.subobject_embedding(x, sub)
        return self.relation_morphism(x, x, B.canonical_subobject(B.pair(m, m)))

    def q_quot(self, x, quot) -> TMorphism:
        """The kernel-pair relation of a quotient; squares to delta times itself."""
        B = self.backend
        zobj, e = B.quotient_epi(x, quot)
        w, a, b = B.pullback(e, e)
        return self.relation_morphism(x, x, B.canonical_subobject(B.pair(a, b)))

    def sod_idempotents(self, x) -> Dict[object, TMorphism]:
        """The orthogonal splitting of the identity of [x].

        Mobius inversion of the subobject idempotents over the subobject
        lattice; the values are pairwise orthogonal, the value at a
        subobject y has trace omega of y, and the whole family sums to
        the identity.
        """
        B = self.backend
        L = B.subobject_lattice(x)
        plain = [self.p_sub(x, L.labels[i]) for i in range(L.n)]
        out: Dict[object, TMorphism] = {}
        for i in range(L.n):
            acc = self.zero(x, x)
            for j in range(L.n):
                if L.leq(j, i):
                    mu = L.mobius(j, i)
                    if mu:
                        acc = acc + plain[j].scale(mu)
            out[L.labels[i]] = acc
        return out

    # ---- calculus ----

    def compose(self, f: TMorphism, g: TMorphism) -> TMorphism:
        """g then f.  Relations compose by pullback over the middle object;
        the coefficient picks up delta of the collapse onto the image."""
        B = self.backend
        if f.backend is not g.backend or g.dst != f.src:
            raise EngineError("composition mismatch")
        wxy, px1, px2 = B.product_with_projections(g.src, g.dst)
        wyz, py1, py2 = B.product_with_projections(f.src, f.dst)
        out: Dict = {}
        for r, cr in g.terms.items():
            robj, mr = B.subobject_embedding(wxy, r)
            rx = B.compose(px1, mr)
            ry = B.compose(px2, mr)
            for s, cs in f.terms.items():
                sobj, ms = B.subobject_embedding(wyz, s)
                sy = B.compose(py1, ms)
                sz = B.compose(py2, ms)
                q, a, b = B.pullback(ry, sy)
                joint = B.pair(B.compose(rx, a), B.compose(sz, b))
                e, m = B.image(joint)
                datum = B.canonical_subobject(m)
                coeff = cr * cs * B.delta_of_epi(e)
                out[datum] = out[datum] + coeff if datum in out else coeff
        return TMorphism(B, g.src, f.dst, out)

    def tensor(self, f: TMorphism, g: TMorphism) -> TMorphism:
        B = self.backend
        src = B.product(f.src, g.src)
        dst = B.product(f.dst, g.dst)
        wf, pf1, pf2 = B.product_with_projections(f.src, f.dst)
        wg, pg1, pg2 = B.product_with_projections(g.src, g.dst)
        out: Dict = {}
        for r, cr in f.terms.items():
            robj, mr = B.subobject_embedding(wf, r)
            for s, cs in g.terms.items():
                sobj, ms = B.subobject_embedding(wg, s)
                wrs, qr, qs = B.product_with_projections(robj, sobj)
                left = B.compose(mr, qr)
                right = B.compose(ms, qs)
                m = B.pair(B.pair(B.compose(pf1, left), B.compose(pg1, right)),
                           B.pair(B.compose(pf2, left), B.compose(pg2, right)))
                datum = B.canonical_subobject(m)
                coeff = cr * cs
                out[datum] = out[datum] + coeff if datum in out else coeff
        return TMorphism(B, src, dst, out)

    def dual(self, f: TMorphism) -> TMorphism:
        B = self.backend
        w, p1, p2 = B.product_with_projections(f.src, f.dst)
        out: Dict = {}
        for r, c in f.terms.items():
            robj, mr = B.subobject_embedding(w, r)
            m = B.pair(B.compose(p2, mr), B.compose(p1, mr))
            out[B.canonical_subobject(m)] = c
        return TMorphism(B, f.dst, f.src, out)

    def trace(self, f: TMorphism) -> MPoly:
        """Sum of delta of the equalizer of each relation with the diagonal."""
        B = self.backend
        if f.src != f.dst:
            raise EngineError("trace needs an endomorphism")
        x = f.src
        w, p1, p2 = B.product_with_projections(x, x)
        diag = B.pair(B.identity(x), B.identity(x))
        total = MPoly.zero()
        for r, c in f.terms.items():
            robj, mr = B.subobject_embedding(w, r)
            fix, _, _ = B.pullback(mr, diag)
            total = total + c * delta_of_object(fix, B)
        return total

    # ---- counting identity ----

    def end_dim_check(self, x) -> dict:
        """Both sides of the endomorphism dimension count of [x].

        The left side counts relations of x * x directly; the right side
        counts subquotient presentations grouped by quotient iso-class,
        squared and weighted by the automorphism order.
        """
        B = self.backend
        w = B.product(x, x)
        lhs = B.subobject_count(w)
        counts: Dict[str, int] = {}
        reps: Dict[str, object] = {}
        for s in subquotients(x, B):
            counts[s.label] = counts.get(s.label, 0) + 1
            reps.setdefault(s.label, s.obj)
        rhs = sum(c * c * B.aut_order(reps[l]) for l, c in counts.items())
        return {"object": B.object_label(x), "lhs": lhs, "rhs": rhs}

    # ---- fixed characters of the interpolating summand ----

    def _aut_index(self, A: FiniteGroup, g) -> int:
        if isinstance(g, int):
            if not 0 <= g < A.n:
                raise EngineError(f"automorphism index {g} out of range")
            return g
        try:
            return A.items.index(g)
        except ValueError:
            raise EngineError("datum is not an automorphism of the object")

    def char_x0(self, x, g) -> MPoly:
        """Character value at g of the new summand of [x].

        Computed in the sublattice of quotients fixed by g: the Mobius
        weight from the bottom, times omega of the quotient, summed over
        the interval between the smallest quotient on which g acts
        trivially and the join of the atoms of the fixed sublattice.
        Zero when that interval is empty.
        """
        B = self.backend
        A = B.aut_group(x)
        item = A.items[self._aut_index(A, g)]
        L = B.quotient_lattice(x)
        pos = {L.labels[i]: i for i in range(L.n)}
        perm = [pos[B.aut_act_quotient(x, item, L.labels[i])] for i in range(L.n)]
        Lg = fixed_sublattice(L, perm)
        pointwise = [j for j in range(Lg.n)
                     if B.quotient_fixed_pointwise(x, Lg.labels[j], item)]
        floor = Lg.meet_of(pointwise)
        if floor not in pointwise:
            raise EngineError("pointwise-trivial quotients do not form a filter")
        ceiling = Lg.socle()
        if not Lg.leq(floor, ceiling):
            return MPoly.zero()
        total = MPoly.zero()
        for z in range(Lg.n):
            if Lg.leq(floor, z) and Lg.leq(z, ceiling):
                mu = Lg.mobius(Lg.bottom, z)
                if mu:
                    zobj, _ = B.quotient_epi(x, Lg.labels[z])
                    total = total + MPoly.const(Fraction(mu)) * omega_of_object(zobj, B)
        return total

    def char_x0_homological(self, x, g) -> MPoly:
        """The same character through inertia groups and induced lattice
        characters: for every quotient below the socle, the Mobius
        invariant of the fixed part of its interval is a character of
        the pointwise stabilizer, and the scaled induction to the full
        automorphism group sums to the fixed character.  An independent
        route to char_x0, and the expensive one."""
        B = self.backend
        A = B.aut_group(x)
        gidx = self._aut_index(A, g)
        gclass = class_index_map(A)[gidx]
        L = B.quotient_lattice(x)
        ceiling = L.socle()
        total = MPoly.zero()
        for z in range(L.n):
            if not L.leq(z, ceiling):
                continue
            members = [i for i in range(A.n)
                       if B.quotient_fixed_pointwise(x, L.labels[z], A.items[i])]
            H = self._subgroup_cached(A, members)
            interval = L.interval(L.bottom, z)
            rk = interval.rank()
            sign = -1 if rk % 2 else 1
            ipos = {interval.labels[i]: i for i in range(interval.n)}
            hvals = []
            for cls in conjugacy_classes(H):
                u = A.items[members[cls[0]]]
                perm = [ipos[B.aut_act_quotient(x, u, lab)]
                        for lab in interval.labels]
                fixed = fixed_sublattice(interval, perm)
                hvals.append(Fraction(sign * fixed.mobius(fixed.bottom, fixed.top)))
            ind = induce(ClassFunction(H, hvals), A, members)
            zobj, _ = B.quotient_epi(x, L.labels[z])
            scalar = Fraction(sign * H.n, A.n) * ind[gclass]
            if scalar:
                total = total + omega_of_object(zobj, B) * scalar
        return total

    def _subgroup_cached(self, A: FiniteGroup, members: List[int]) -> FiniteGroup:
        if len(members) == A.n:
            return A
        key = (id(A), tuple(members))
        if key not in self._subgroups:
            self._subgroups[key] = _subgroup_on(A, members)
        return self._subgroups[key]

    def char_x0_class_function(self, x) -> ClassFunction:
        B = self.backend
        A = B.aut_group(x)
        key = (id(A), B.object_label(x))
        if key not in self._fixed_chars:
            values = [self.char_x0(x, cls[0]) for cls in conjugacy_classes(A)]
            self._fixed_chars[key] = ClassFunction(A, values)
            self._pinned.append(x)
        return self._fixed_chars[key]

    # ---- simple objects ----

    def character_table(self, x) -> CharacterTable:
        B = self.backend
        A = B.aut_group(x)
        key = id(A)
        if key not in self._tables:
            if B.name == "setop":
                # points of a free model: the symmetric group rank
                self._tables[key] = character_table_sn(B.valuation(x), group=A)
            else:
                self._tables[key] = character_table_generic(A)
        return self._tables[key]

    def simple_labels(self, x) -> List[SimpleLabel]:
        label = self.backend.object_label(x)
        table = self.character_table(x)
        return [SimpleLabel(label, i) for i in range(len(table))]

    def simple_label_by_row(self, object_label: str, row_label: str) -> SimpleLabel:
        table = self.character_table(self.object_by_label(object_label))
        if row_label not in table.row_labels:
            raise EngineError(f"no character row {row_label!r} for {object_label}")
        return SimpleLabel(object_label, table.row_labels.index(row_label))

    def simple_dim(self, label: SimpleLabel) -> MPoly:
        """Dimension polynomial of a simple object: the pairing of the
        fixed character of its object class against the chosen
        irreducible.  The pairing is accumulated monomial by monomial so
        cyclotomic character values stay exact until they cancel; the
        result is checked to be rational."""
        x = self.object_by_label(label.object_label)
        table = self.character_table(x)
        chi = table.irreducible(label.char_index)
        f = self.char_x0_class_function(x)
        return _pair_poly_character(f, chi)

    def dims_report(self, x) -> list:
        table = self.character_table(x)
        out = []
        for lab in self.simple_labels(x):
            d = self.simple_dim(lab)
            out.append({"label": lab, "row": table.row_labels[lab.char_index],
                        "degree": int(table.degrees[lab.char_index]),
                        "dim": d})
        return out

    def dim_factorization_check(self, label: SimpleLabel) -> dict:
        """Factor the simple dimension into a rational scalar times
        linear pieces from the backend's dictionary of epi degrees."""
        d = self.simple_dim(label)
        residual = d
        factors: List[MPoly] = []
        if not residual.is_zero:
            for cand in self._linear_candidates(label, d):
                while True:
                    ok, quot = poly_divides(cand, residual)
                    if not ok:
                        break
                    factors.append(cand)
                    residual = quot
        ok = residual.total_degree() == 0
        return {
            "label": label,
            "polynomial": d,
            "factors": [str(c) for c in factors],
            "scalar": residual.constant_value() if ok else None,
            "ok": ok,
        }

    def _linear_candidates(self, label: SimpleLabel, d: MPoly) -> List[MPoly]:
        deg = d.total_degree()
        out = []
        name = self.backend.name
        if name.startswith("vectfq"):
            q = self.backend.q
            t = MPoly.var("t")
            for a in range(deg * deg + deg + 1):
                out.append(t - MPoly.const(q ** a))
        elif name == "setop":
            t = MPoly.var("t")
            for k in range(2 * deg + 3):
                out.append(t - MPoly.const(k))
        else:
            size = self.backend.model_size(self.object_by_label(label.object_label))
            for v in d.variables:
                var = MPoly.var(v)
                for c in range(size * size + 1):
                    out.append(var - MPoly.const(c))
        return out

    # ---- injectivity rank check ----

    def lem_surj_rank_check(self, e) -> bool:
        """Full column rank of composition with the transpose of an epi.

        Writes the map s -> [e]^v . s from End([dst]) to Hom([dst], [src])
        in the relation bases and evaluates the coefficients at the
        recorded specialization point (variables in sorted order get the
        primes 5, 7, 11, ...), then takes the exact rational rank.
        """
        B = self.backend
        if not B.is_epi(e):
            raise EngineError("rank check needs an epi")
        z, x = e.dst, e.src
        transpose = self.epi_dual(e)
        basis_src = B.subobjects(B.product(z, z))
        basis_dst = B.subobjects(B.product(z, x))
        col = {datum: i for i, datum in enumerate(basis_dst)}
        images = []
        variables = set()
        for s in basis_src:
            comp = self.compose(transpose, self.relation_morphism(z, z, s))
            images.append(comp)
            for c in comp.terms.values():
                variables.update(c.variables)
        point = {v: Fraction(p) for v, p in
                 zip(sorted(variables), _primes())}
        mat = []
        for comp in images:
            row = [Fraction(0)] * len(basis_dst)
            for datum, c in comp.terms.items():
                row[col[datum]] = c.evaluate(point)
            mat.append(row)
        return rational_rank(mat) == len(basis_src)

    # ---- T families ----

    def _fold_product(self, objects: Sequence):
        B = self.backend
        if not objects:
            return B.terminal(), []
        acc = objects[0]
        projs = [B.identity(acc)]
        for x in objects[1:]:
            w, p1, p2 = B.product_with_projections(acc, x)
            projs = [B.compose(p, p1) for p in projs] + [p2]
            acc = w
        return acc, projs

    def _fold_pair(self, legs: Sequence):
        B = self.backend
        acc = legs[0]
        for f in legs[1:]:
            acc = B.pair(acc, f)
        return acc

    def _fold_aut(self, objects: Sequence, items: Sequence):
        B = self.backend
        acc_obj = objects[0]
        acc = items[0]
        for obj, g in zip(objects[1:], items[1:]):
            acc = B.pair_aut(acc_obj, obj, acc, g)
            acc_obj = B.product(acc_obj, obj)
        return acc

    def _head_presentations(self, head: tuple) -> Dict[str, list]:
        """Presentations of relation candidates over a head tuple, grouped
        by the iso-class of the quotient leg.  A presentation survives
        when it projects onto every head factor and stays embedded after
        dropping any single head factor; both conditions are independent
        of the iso chosen later for the final leg."""
        key = tuple(id(x) for x in head)
        if key not in self._presentations:
            B = self.backend
            whead, projs = self._fold_product(head)
            grouped: Dict[str, list] = {}
            for sub in B.subobjects(whead):
                yobj, m = B.subobject_embedding(whead, sub)
                comps = [B.compose(p, m) for p in projs]
                if not all(B.is_epi(c) for c in comps):
                    continue
                for qd in B.quotients(yobj):
                    zobj, qe = B.quotient_epi(yobj, qd)
                    keep = True
                    for i in range(len(head)):
                        legs = [comps[j] for j in range(len(head)) if j != i]
                        legs.append(qe)
                        if not B.is_mono(self._fold_pair(legs)):
                            keep = False
                            break
                    if keep:
                        grouped.setdefault(B.object_label(zobj), []).append(
                            (m, qe, zobj))
            self._presentations[key] = grouped
            self._pinned.extend(head)
        return self._presentations[key]

    def enumerate_T(self, objects: Sequence) -> TFamily:
        """The family of relations inside the product of ``objects`` that
        project onto each factor and embed into each complementary
        product, together with the factorwise automorphism action."""
        objects = tuple(self.object_by_label(o) if isinstance(o, str) else o
                        for o in objects)
        key = tuple(id(x) for x in objects)
        if key in self._families:
            return self._families[key]
        B = self.backend
        if not objects:
            space = B.terminal()
            members = [B.canonical_subobject(B.identity(space))]
        elif len(objects) == 1:
            space = objects[0]
            if B.is_mono(B.terminal_epi(space)):
                members = [B.canonical_subobject(B.identity(space))]
            else:
                members = []
        else:
            head, last = objects[:-1], objects[-1]
            space = B.product(self._fold_product(head)[0], last)
            members = []
            grouped = self._head_presentations(head)
            for m, qe, zobj in grouped.get(B.object_label(last), []):
                for phi in B.isomorphisms(zobj, last):
                    rel = B.pair(m, B.compose(phi, qe))
                    members.append(B.canonical_subobject(rel))
            if len(set(members)) != len(members):
                raise EngineError("relation family has repeated members")
        fam = TFamily(self, objects, space, members)
        self._families[key] = fam
        self._pinned.extend(objects)
        return fam

    def chi_T(self, objects: Sequence, items: Sequence) -> int:
        """Fixed members of the family under one tuple of automorphisms."""
        fam = self.enumerate_T(objects)
        if len(items) != len(fam.objects):
            raise EngineError("one automorphism per factor, please")
        items = [A.items[self._aut_index(A, g)]
                 for A, g in zip(fam.groups, items)]
        return fam.fixed_count(items)

    # ---- multiplicities ----

    def _t_pairing(self, objects: tuple, chis: List[ClassFunction]) -> int:
        """Pairing of the family character against a character tuple,
        computed by both routes and required to agree.

        Route one sums fixed counts against character values over
        conjugacy class tuples.  Route two sums, orbit by orbit, the
        trivial-isotypic dimension of the stabilizer restriction.  Both
        must land on the same nonnegative integer.
        """
        fam = self.enumerate_T(objects)
        for A, chi in zip(fam.groups, chis):
            if chi.group is not A:
                raise EngineError("character lives on the wrong group")
        sizes = [[len(c) for c in conjugacy_classes(A)] for A in fam.groups]
        invs = [inverse_class_map(A) for A in fam.groups]
        order = 1
        for A in fam.groups:
            order *= A.n
        total = Fraction(0)
        for ktuple, cnt in fam.class_table().items():
            if not cnt:
                continue
            term = Fraction(cnt)
            for i, k in enumerate(ktuple):
                term = term * sizes[i][k] * chis[i][invs[i][k]]
            total = total + term
        first = _as_integer(total, order)
        second = Fraction(0)
        for stab_n, dist in fam.orbit_profile():
            part = Fraction(0)
            for ktuple, cnt in dist.items():
                term = Fraction(cnt)
                for i, k in enumerate(ktuple):
                    term = term * chis[i][k]
                part = part + term
            second = second + _as_fraction(part, stab_n)
        second = _as_integer(second, 1)
        if first != second:
            raise EngineError(
                f"multiplicity routes disagree: {first} vs {second}")
        if first < 0:
            raise EngineError(f"negative multiplicity {first}")
        return first

    def hom_unit_multiplicity(self, labels: Sequence[SimpleLabel]) -> int:
        """Multiplicity of the unit inside the tensor product of simples."""
        objects = tuple(self.object_by_label(l.object_label) for l in labels)
        chis = [self.character_table(x).irreducible(l.char_index)
                for x, l in zip(objects, labels)]
        return self._t_pairing(objects, chis)

    def _subquotient_class_reps(self, w) -> Dict[str, object]:
        reps: Dict[str, object] = {}
        for s in subquotients(w, self.backend):
            if s.label not in reps:
                reps[s.label] = self.register(s.obj)
        return reps

    def tensor_decompose(self, a: SimpleLabel, b: SimpleLabel) -> MultiplicityTable:
        """Simple decomposition of a tensor product of two simples.

        The support runs over subquotient iso-classes of the product of
        the two underlying objects; the multiplicity at a simple is the
        family pairing against the two characters and the dual of the
        target character.
        """
        B = self.backend
        x1 = self.object_by_label(a.object_label)
        x2 = self.object_by_label(b.object_label)
        chi1 = self.character_table(x1).irreducible(a.char_index)
        chi2 = self.character_table(x2).irreducible(b.char_index)
        out = MultiplicityTable()
        for zl, zrep in self._subquotient_class_reps(B.product(x1, x2)).items():
            table = self.character_table(zrep)
            for i in range(len(table)):
                chi = table.irreducible(i)
                m = self._t_pairing((x1, x2, zrep), [chi1, chi2, chi.dual()])
                if m:
                    out.add(SimpleLabel(zl, i), int(table.degrees[i]), m)
        return out

    # ---- Grothendieck ring ----

    def grothendieck_unit(self) -> GrothendieckElement:
        B = self.backend
        one = self.register(B.terminal())
        A = B.aut_group(one)
        cf = ClassFunction(A, [Fraction(1)] * len(conjugacy_classes(A)))
        return GrothendieckElement(self, {B.object_label(one): cf})

    def grothendieck_generator(self, label: SimpleLabel) -> GrothendieckElement:
        x = self.object_by_label(label.object_label)
        cf = self.character_table(x).irreducible(label.char_index)
        return GrothendieckElement(self, {label.object_label: cf})

    def grothendieck_product(self, F: GrothendieckElement,
                             G: GrothendieckElement) -> GrothendieckElement:
        """Product in the split Grothendieck ring.

        Componentwise over the two supports: the coefficient of a target
        class is the family character averaged against the two factors.
        The top component, at the class of the product object itself, is
        recomputed independently as an induced character and the two
        answers must agree; every component sits at valuation at most
        the sum of the factor valuations by construction of the support.
        """
        B = self.backend
        acc: Dict[str, ClassFunction] = {}
        for l1, f1 in F.components.items():
            for l2, f2 in G.components.items():
                x1 = self.object_by_label(l1)
                x2 = self.object_by_label(l2)
                w = B.product(x1, x2)
                for zl, zrep in self._subquotient_class_reps(w).items():
                    cf = self._star_component(x1, x2, zrep, f1, f2)
                    if cf is None:
                        continue
                    acc[zl] = acc[zl] + cf if zl in acc else cf
                self._assert_top_induced(x1, x2, w, f1, f2)
        return GrothendieckElement(self, acc)

    def _star_component(self, x1, x2, zrep, f1: ClassFunction,
                        f2: ClassFunction) -> Optional[ClassFunction]:
        fam = self.enumerate_T((x1, x2, zrep))
        if not fam.members:
            return None
        A1, A2, Az = fam.groups
        table = fam.class_table()
        sizes1 = [len(c) for c in conjugacy_classes(A1)]
        sizes2 = [len(c) for c in conjugacy_classes(A2)]
        nclasses = len(conjugacy_classes(Az))
        values = []
        for k3 in range(nclasses):
            total = Fraction(0)
            for (k1, k2, kz), cnt in table.items():
                if kz != k3 or not cnt:
                    continue
                total = total + (Fraction(cnt) * sizes1[k1] * sizes2[k2]
                                 * f1[k1] * f2[k2])
            values.append(_norm(total * Fraction(1, A1.n * A2.n)))
        if all(v == 0 for v in values):
            return None
        return ClassFunction(Az, values)

    def _assert_top_induced(self, x1, x2, w, f1: ClassFunction, f2: ClassFunction):
        """Second route for the top component: induce along the factorwise
        embedding of the two automorphism groups and compare."""
        B = self.backend
        direct = self._star_component(x1, x2, w, f1, f2)
        A1, A2 = B.aut_group(x1), B.aut_group(x2)
        Aw = B.aut_group(w)
        pairs = list(itertools.product(range(A1.n), range(A2.n)))
        H = FiniteGroup.from_composition(
            pairs, lambda p, q: (A1.mul(p[0], q[0]), A2.mul(p[1], q[1])))
        index_of = {item: i for i, item in enumerate(Aw.items)}
        embedding = [index_of[B.pair_aut(x1, x2, A1.items[i], A2.items[j])]
                     for (i, j) in pairs]
        cm1, cm2 = class_index_map(A1), class_index_map(A2)
        hvals = []
        for cls in conjugacy_classes(H):
            i, j = pairs[cls[0]]
            hvals.append(f1[cm1[i]] * f2[cm2[j]])
        ind = induce(ClassFunction(H, hvals), Aw, embedding)
        reduced = [_norm(v) for v in ind.values]
        if direct is None:
            if any(v != 0 for v in reduced):
                raise EngineError("top component vanished but induction did not")
            return
        if any(a != b for a, b in zip(direct.values, reduced)):
            raise EngineError("top component disagrees with the induced character")


# ---------------------------------------------------------------- helpers

def _subgroup_on(G: FiniteGroup, members: List[int]) -> FiniteGroup:
    pos = {m: i for i, m in enumerate(members)}
    table = []
    for a in members:
        row = []
        for b in members:
            c = G.mul(a, b)
            if c not in pos:
                raise EngineError("element set is not closed under the product")
            row.append(pos[c])
        table.append(row)
    names = [G.names[m] for m in members] if getattr(G, "names", None) else None
    return FiniteGroup(table, names=names)


def _pair_poly_character(f: ClassFunction, chi: ClassFunction) -> MPoly:
    """(1/|G|) sum over classes of |c| f(c) chi(c^-1), with polynomial f.

    Accumulated per monomial so cyclotomic character values combine
    before reduction; every monomial must come out rational.
    """
    G = f.group
    classes = conjugacy_classes(G)
    inv = inverse_class_map(G)
    allvars = sorted({v for val in f.values for v in val.variables})
    acc: Dict[tuple, object] = {}
    for k, cls in enumerate(classes):
        poly = f.values[k]
        chival = chi.values[inv[k]]
        if chival == 0:
            continue
        vpos = {v: i for i, v in enumerate(poly.variables)}
        for exp, coeff in poly.items():
            full = tuple(exp[vpos[v]] if v in vpos else 0 for v in allvars)
            term = (len(cls) * coeff) * chival
            acc[full] = acc[full] + term if full in acc else term
    out = MPoly.zero()
    for exp, val in acc.items():
        if isinstance(val, Cyclo):
            val = val.reduced()
        if not isinstance(val, (int, Fraction)):
            raise EngineError(f"irrational dimension coefficient {val}")
        val = Fraction(val, 1) / G.n
        if not val:
            continue
        mono = MPoly.const(val)
        for v, e in zip(allvars, exp):
            if e:
                mono = mono * MPoly.var(v) ** e
        out = out + mono
    return out


def _norm(value):
    """Reduce a possibly cyclotomic value; rationals come out as Fraction."""
    if isinstance(value, Cyclo):
        value = value.reduced()
    if isinstance(value, int):
        value = Fraction(value)
    return value


def _as_fraction(value, denom: int) -> Fraction:
    value = _norm(value)
    if isinstance(value, Cyclo):
        raise EngineError(f"irrational value {value} where a rational is due")
    return value / denom


def _as_integer(value, denom: int) -> int:
    out = _as_fraction(value, denom)
    if out.denominator != 1:
        raise EngineError(f"non-integral multiplicity {out}")
    return int(out)


def _primes():
    yield from (5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
