"""Backend interface and the category-level operations built on top of it.

A backend presents one finite Mal'cev category concretely: objects are
small handles (a point set, a dimension, a multiplication table), and
morphisms are explicit maps between the underlying models.  Everything
the tensor layer needs is phrased against this interface, so the generic
operations in this module are written once and hold for every backend.

Conventions that the rest of the package relies on:

* ``compose(f, g)`` is "g then f"; morphisms carry ``src`` and ``dst``.
* ``subobject_lattice(x)`` has x itself on top; ``quotient_lattice(x)``
  has x on the bottom and the terminal quotient on top, so going up
  means quotienting further.  Labels of both lattices are the opaque
  subobject / quotient data in the same order as ``subobjects(x)`` and
  ``quotients(x)``.
* ``aut_group(x).items[i]`` is the concrete automorphism datum that the
  ``aut_act_*`` hooks accept.
* All object handles and subobject/quotient data are hashable and
  canonical: equal data means equal subobject, across the whole session.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..groupchar import FiniteGroup
from ..lattice import FiniteLattice
from ..polynomial import MPoly


class BackendError(ValueError):
    pass


@dataclass(frozen=True)
class SubquotientObject:
    """One subquotient presentation z <<- y >-> x inside an ambient object.

    ``sub`` names the subobject y of the ambient object, ``quot`` the
    congruence on y, and ``obj`` is the concrete quotient object z with
    ``epi``: y ->> z and ``mono``: y >-> x the witnessing morphisms.
    """

    ambient: object
    sub: object
    sub_obj: object
    mono: object
    quot: object
    obj: object
    epi: object
    label: str


@dataclass(frozen=True)
class GoursatRelation:
    """A subobject of a binary product, presented by its Goursat triple."""

    left: SubquotientObject
    right: SubquotientObject
    iso: object
    relation: object


class CategoryBackend:
    """Abstract finite Mal'cev category; see the module docstring."""

    name: str = "abstract"

    # ---- objects ----

    def terminal(self):
        raise NotImplementedError

    def product(self, x, y):
        return self.product_with_projections(x, y)[0]

    def product_with_projections(self, x, y):
        """Return (x*y, p1, p2)."""
        raise NotImplementedError

    def object_label(self, x) -> str:
        raise NotImplementedError

    def model_size(self, x) -> int:
        raise NotImplementedError

    def valuation(self, x) -> int:
        raise NotImplementedError

    def catalog(self) -> list:
        raise NotImplementedError

    # ---- morphisms ----

    def identity(self, x):
        raise NotImplementedError

    def compose(self, f, g):
        raise NotImplementedError

    def pair(self, f, g):
        """The induced morphism src -> f.dst * g.dst (common source)."""
        raise NotImplementedError

    def is_mono(self, f) -> bool:
        raise NotImplementedError

    def is_epi(self, f) -> bool:
        raise NotImplementedError

    def image(self, f):
        """Epi-mono factorization: (e, m) with f = compose(m, e)."""
        raise NotImplementedError

    def pullback(self, f, g):
        """Fiber product of f: x -> z, g: y -> z as (r, p1, p2)."""
        raise NotImplementedError

    def isomorphisms(self, a, b) -> list:
        """All isomorphisms a -> b, empty when none exist."""
        raise NotImplementedError

    def terminal_epi(self, x):
        raise NotImplementedError

    # ---- subobjects and quotients ----

    def subobjects(self, x) -> list:
        raise NotImplementedError

    def subobject_count(self, x) -> int:
        return len(self.subobjects(x))

    def subobject_lattice(self, x) -> FiniteLattice:
        raise NotImplementedError

    def subobject_embedding(self, x, sub):
        """Concrete (object, mono) presenting the subobject datum."""
        raise NotImplementedError

    def canonical_subobject(self, m):
        """The subobject datum of m.dst cut out by the mono m."""
        raise NotImplementedError

    def quotients(self, x) -> list:
        raise NotImplementedError

    def quotient_lattice(self, x) -> FiniteLattice:
        raise NotImplementedError

    def quotient_epi(self, x, quot):
        """Concrete (object, epi) presenting the quotient datum."""
        raise NotImplementedError

    # ---- automorphisms ----

    def aut_group(self, x) -> FiniteGroup:
        raise NotImplementedError

    def aut_order(self, x) -> int:
        return self.aut_group(x).n

    def aut_act_subobject(self, x, g, sub):
        raise NotImplementedError

    def aut_act_quotient(self, x, g, quot):
        raise NotImplementedError

    def quotient_fixed_pointwise(self, x, quot, g) -> bool:
        """Whether the automorphism g induces the identity on x/quot."""
        raise NotImplementedError

    def pair_aut(self, x, y, gx, gy):
        """Automorphism datum of product(x, y) acting factorwise."""
        raise NotImplementedError

    # ---- degree function ----

    def delta_of_epi(self, e) -> MPoly:
        raise NotImplementedError


# ---------------------------------------------------------------- generic ops

def omega(e, backend: CategoryBackend) -> MPoly:
    """Mobius-weighted degree sum of an epi over subobjects of its source.

    Sums mu(y, x) * delta(e restricted to y) over the subobjects y of
    x = e.src whose restriction is still epi onto e.dst.  This is the
    obstruction whose nonvanishing at a parameter value makes the epi
    split off cleanly; an epi with omega zero degenerates the pairing.
    """
    x = e.src
    L = backend.subobject_lattice(x)
    total = MPoly.zero()
    for i in range(L.n):
        yobj, m = backend.subobject_embedding(x, L.labels[i])
        comp = backend.compose(e, m)
        if backend.is_epi(comp):
            mu = L.mobius(i, L.top)
            if mu:
                total = total + MPoly.const(mu) * backend.delta_of_epi(comp)
    return total


def omega_of_object(x, backend: CategoryBackend, _cache: Dict = {}) -> MPoly:
    """omega of the epi from x to the terminal object, cached per label."""
    key = (backend.name, backend.object_label(x))
    if key not in _cache:
        _cache[key] = omega(backend.terminal_epi(x), backend)
    return _cache[key]


def delta_of_object(x, backend: CategoryBackend) -> MPoly:
    return backend.delta_of_epi(backend.terminal_epi(x))


def subquotients(x, backend: CategoryBackend) -> List[SubquotientObject]:
    """All subquotient presentations of x, in deterministic order.

    Two presentations with the same (sub, quot) pair are the same
    subquotient; distinct pairs are distinct even when the quotient
    objects are isomorphic, which is exactly the count the Goursat
    correspondence needs.
    """
    out = []
    for s in backend.subobjects(x):
        yobj, m = backend.subobject_embedding(x, s)
        for qd in backend.quotients(yobj):
            zobj, q = backend.quotient_epi(yobj, qd)
            out.append(SubquotientObject(
                ambient=x, sub=s, sub_obj=yobj, mono=m,
                quot=qd, obj=zobj, epi=q,
                label=backend.object_label(zobj)))
    return out


def goursat_relations(x, y, backend: CategoryBackend) -> List[GoursatRelation]:
    """All subobjects of x*y, built from matched subquotient pairs.

    Every pair of subquotients of x and y with isomorphic quotient
    objects, together with a choice of isomorphism, yields the fiber
    product relation; distinct triples yield distinct subobjects and
    every subobject of x*y arises this way.
    """
    sq_x = subquotients(x, backend)
    sq_y = subquotients(y, backend)
    by_label: Dict[str, List[SubquotientObject]] = {}
    for b in sq_y:
        by_label.setdefault(b.label, []).append(b)
    rels = []
    for a in sq_x:
        for b in by_label.get(a.label, ()):
            for iso in backend.isomorphisms(a.obj, b.obj):
                robj, pa, pb = backend.pullback(
                    backend.compose(iso, a.epi), b.epi)
                f = backend.compose(a.mono, pa)
                g = backend.compose(b.mono, pb)
                rel = backend.canonical_subobject(backend.pair(f, g))
                rels.append(GoursatRelation(left=a, right=b, iso=iso,
                                            relation=rel))
    return rels


def nondegeneracy_report(backend: CategoryBackend, objects: Sequence,
                         evaluation: Optional[Dict[str, object]] = None) -> dict:
    """Check omega of every indecomposable epi out of the given objects.

    Indecomposable epis are the covers of x in its quotient order.  The
    report lists one row per epi with its omega polynomial; with an
    evaluation point it also flags the rows where omega vanishes, and
    the whole family is semisimple at that point exactly when none do.
    """
    rows = []
    degenerate = 0
    for x in objects:
        L = backend.quotient_lattice(x)
        for i in L.atoms():
            zobj, e = backend.quotient_epi(x, L.labels[i])
            w = omega(e, backend)
            if w.is_zero:
                raise BackendError(
                    f"omega vanishes identically for an epi out of "
                    f"{backend.object_label(x)}")
            row = {
                "object": backend.object_label(x),
                "quotient": backend.object_label(zobj),
                "omega": w,
            }
            if evaluation is not None:
                val = w.evaluate(evaluation)
                row["value"] = val
                row["degenerate"] = (val == 0)
                degenerate += bool(val == 0)
            rows.append(row)
    report = {"backend": backend.name, "rows": rows}
    if evaluation is not None:
        report["semisimple"] = (degenerate == 0)
    return report
