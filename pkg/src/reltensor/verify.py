"""Invariant batteries shared by the command line self test and the tests.

Every battery walks a list of object labels (or generator pairs) and
returns flat (name, ok, detail) records instead of raising, so a caller
can print one line per check and aggregate an exit status.  The checks
themselves are the structural facts the engine is built on: modularity
and Mobius behaviour of the subobject and quotient lattices, the
orthogonal splitting of identities, the two independent routes to the
fixed character, the endomorphism count, product factorization of the
dimension polynomials, the rank of transposed-epi composition, and the
ring laws of the split product.
"""

from fractions import Fraction
from functools import reduce
from typing import List, Sequence, Tuple

from .backends.base import delta_of_object, omega_of_object
from .engine import Envelope, SimpleLabel
from .groupchar import conjugacy_classes
from .lattice import (
    FiniteLattice,
    fixed_sublattice,
    mobius,
    mu_vanishing_profile,
    order_complex_homology,
)
from .polynomial import MPoly

Record = Tuple[str, bool, str]


class CheckFailure(Exception):
    pass


def _ensure(cond: bool, msg: str):
    if not cond:
        raise CheckFailure(msg)


def _run(records: List[Record], name: str, fn):
    try:
        detail = fn()
        records.append((name, True, detail or ""))
    except CheckFailure as exc:
        records.append((name, False, str(exc)))
    except Exception as exc:
        records.append((name, False, f"{type(exc).__name__}: {exc}"))


def _tag(env: Envelope, label: str, check: str) -> str:
    return f"{env.backend.name}:{label}:{check}"


# ---------------------------------------------------------------- lattices

def _lattice_checks(env: Envelope, x, L: FiniteLattice, side: str):
    _ensure(L.is_modular(), f"{side} lattice is not modular")
    for flags in mu_vanishing_profile(L):
        _ensure(len(set(flags)) == 1,
                f"{side} lattice breaks the four-way mu equivalence")
    if L.n >= 2:
        r = L.rank()
        mu = mobius(L, L.bottom, L.top)
        for deg, dim in enumerate(order_complex_homology(L)):
            want = (-1) ** r * mu if deg == r else 0
            _ensure(dim == want,
                    f"{side} homology rank {dim} at degree {deg}, wanted {want}")


def _hopf_checks(env: Envelope, x, L: FiniteLattice):
    B = env.backend
    A = B.aut_group(x)
    pos = {L.labels[i]: i for i in range(L.n)}
    for cls in conjugacy_classes(A):
        item = A.items[cls[0]]
        perm = [pos[B.aut_act_quotient(x, item, L.labels[i])]
                for i in range(L.n)]
        F = fixed_sublattice(L, perm)
        _ensure(F.chain_euler() == mobius(F, F.bottom, F.top),
                "fixed-chain Euler characteristic misses the Mobius value")


def lattice_battery(env: Envelope, labels: Sequence[str]) -> List[Record]:
    records: List[Record] = []
    B = env.backend
    for label in labels:
        x = env.object_by_label(label)

        def quot_side(x=x):
            L = B.quotient_lattice(x)
            _lattice_checks(env, x, L, "quotient")
            _hopf_checks(env, x, L)
            return f"{L.n} quotients"

        def sub_side(x=x):
            L = B.subobject_lattice(x)
            _lattice_checks(env, x, L, "subobject")
            return f"{L.n} subobjects"

        _run(records, _tag(env, label, "quotient-lattice"), quot_side)
        _run(records, _tag(env, label, "subobject-lattice"), sub_side)
    if B.name.startswith("vectfq"):
        def subspace_mobius():
            q = B.q
            for label in labels:
                x = env.object_by_label(label)
                n = B.valuation(x)
                L = B.subobject_lattice(x)
                want = (-1) ** n * q ** (n * (n - 1) // 2)
                _ensure(mobius(L, L.bottom, L.top) == want,
                        f"subspace Mobius at {label} is not {want}")
            return f"checked {len(labels)} spaces"

        _run(records, f"{B.name}:subspace-mobius", subspace_mobius)
    return records


# ---------------------------------------------------------------- idempotents

def idempotent_battery(env: Envelope, labels: Sequence[str]) -> List[Record]:
    records: List[Record] = []
    B = env.backend
    for label in labels:
        x = env.object_by_label(label)

        def commuting(x=x):
            ps = [env.p_sub(x, s) for s in B.subobjects(x)]
            for i, p in enumerate(ps):
                for q in ps[i:]:
                    _ensure(env.compose(p, q) == env.compose(q, p),
                            "subobject idempotents fail to commute")
            return f"{len(ps)} idempotents"

        def splitting(x=x):
            sod = env.sod_idempotents(x)
            pieces = list(sod.values())
            total = reduce(lambda a, b: a + b, pieces)
            _ensure(total == env.identity(x), "splitting does not sum to one")
            for i, p in enumerate(pieces):
                for j, q in enumerate(pieces):
                    want = p if i == j else env.zero(x, x)
                    _ensure(env.compose(p, q) == want,
                            "splitting is not orthogonal")
            for s, piece in sod.items():
                yobj, _ = B.subobject_embedding(x, s)
                _ensure(env.trace(piece) == omega_of_object(yobj, B),
                        "piece trace is not omega")
            return f"{len(pieces)} pieces"

        def quotient_squares(x=x):
            count = 0
            for quot in B.quotients(x):
                _, e = B.quotient_epi(x, quot)
                qrel = env.q_quot(x, quot)
                _ensure(env.compose(qrel, qrel) == qrel.scale(B.delta_of_epi(e)),
                        "kernel-pair relation square is off")
                count += 1
            return f"{count} quotients"

        def top_vanishing(x=x):
            L = B.subobject_lattice(x)
            top = env.sod_idempotents(x)[L.labels[L.top]]
            for phi in B.isomorphisms(x, x):
                got = env.trace(env.compose(env.graph(phi), top))
                if phi == B.identity(x):
                    _ensure(got == omega_of_object(x, B),
                            "top character misses omega at the identity")
                else:
                    _ensure(got == MPoly.zero(),
                            "top character fails to vanish off the identity")
            return f"{B.aut_order(x)} automorphisms"

        _run(records, _tag(env, label, "p-commute"), commuting)
        _run(records, _tag(env, label, "splitting"), splitting)
        _run(records, _tag(env, label, "q-square"), quotient_squares)
        _run(records, _tag(env, label, "top-character"), top_vanishing)
    return records


# ---------------------------------------------------------------- characters

def character_battery(env: Envelope, labels: Sequence[str]) -> List[Record]:
    records: List[Record] = []
    B = env.backend
    for label in labels:
        x = env.object_by_label(label)

        def two_routes(x=x):
            A = B.aut_group(x)
            classes = conjugacy_classes(A)
            for cls in classes:
                direct = env.char_x0(x, cls[0])
                homological = env.char_x0_homological(x, cls[0])
                _ensure(direct == homological,
                        f"routes disagree at class of index {cls[0]}: "
                        f"{direct} vs {homological}")
            return f"{len(classes)} classes"

        def identity_column(x=x):
            A = B.aut_group(x)
            L = B.quotient_lattice(x)
            total = MPoly.zero()
            for z in range(L.n):
                mu = L.mobius(L.bottom, z)
                if mu:
                    zobj, _ = B.quotient_epi(x, L.labels[z])
                    total = total + omega_of_object(zobj, B) * Fraction(mu)
            _ensure(env.char_x0(x, A.identity) == total,
                    "identity column is not the Mobius-omega sum")
            return str(total)

        def degree_sum(x=x):
            A = B.aut_group(x)
            total = MPoly.zero()
            for row in env.dims_report(x):
                total = total + row["dim"] * Fraction(row["degree"])
            _ensure(total == env.char_x0(x, A.identity),
                    "degree-weighted dimension sum misses the identity column")
            return f"{len(env.simple_labels(x))} simples"

        _run(records, _tag(env, label, "char-two-routes"), two_routes)
        _run(records, _tag(env, label, "char-identity-column"), identity_column)
        _run(records, _tag(env, label, "dim-degree-sum"), degree_sum)
    return records


# ---------------------------------------------------------------- dimensions

def dimension_battery(env: Envelope, labels: Sequence[str],
                      factor: bool = True) -> List[Record]:
    records: List[Record] = []
    for label in labels:
        x = env.object_by_label(label)

        def factored(x=x, label=label):
            bad = []
            for lab in env.simple_labels(x):
                rep = env.dim_factorization_check(lab)
                if not rep["ok"]:
                    bad.append(f"row {lab.char_index}: {rep['polynomial']}")
            _ensure(not bad, "; ".join(bad))
            return f"{len(env.simple_labels(x))} dimensions split into linears"

        if factor:
            _run(records, _tag(env, label, "dim-factorization"), factored)
    return records


# ---------------------------------------------------------------- counting

def enddim_battery(env: Envelope, labels: Sequence[str]) -> List[Record]:
    records: List[Record] = []
    for label in labels:
        def counted(label=label):
            rep = env.end_dim_check(env.object_by_label(label))
            _ensure(rep["lhs"] == rep["rhs"],
                    f"endomorphism count {rep['lhs']} != {rep['rhs']}")
            return f"{rep['lhs']} relations"

        _run(records, _tag(env, label, "end-dim"), counted)
    return records


# ---------------------------------------------------------------- rank

def rank_battery(env: Envelope, labels: Sequence[str]) -> List[Record]:
    records: List[Record] = []
    B = env.backend
    for label in labels:
        x = env.object_by_label(label)

        def ranks(x=x):
            epis = [B.identity(x), B.terminal_epi(x)]
            for quot in B.quotients(x):
                zobj, e = B.quotient_epi(x, quot)
                if 1 < B.model_size(zobj) < B.model_size(x):
                    epis.append(e)
                    break
            for e in epis:
                _ensure(env.lem_surj_rank_check(e),
                        "transposed composition dropped rank")
            return f"{len(epis)} epis at full rank"

        _run(records, _tag(env, label, "epi-rank"), ranks)
    return records


# ---------------------------------------------------------------- ring

def ring_battery(env: Envelope,
                 pairs: Sequence[Tuple[SimpleLabel, SimpleLabel]],
                 associativity: bool = True) -> List[Record]:
    records: List[Record] = []
    B = env.backend

    def unit_laws():
        unit = env.grothendieck_unit()
        _ensure(env.grothendieck_product(unit, unit) == unit,
                "unit is not idempotent")
        gen = env.grothendieck_generator(pairs[0][0])
        _ensure(env.grothendieck_product(unit, gen) == gen,
                "unit fails on the left")
        _ensure(env.grothendieck_product(gen, unit) == gen,
                "unit fails on the right")
        return "three unit laws"

    _run(records, f"{B.name}:ring-unit", unit_laws)
    for a, b in pairs:
        pair_name = f"{a.object_label}#{a.char_index}*{b.object_label}#{b.char_index}"

        def product_checks(a=a, b=b):
            ga = env.grothendieck_generator(a)
            gb = env.grothendieck_generator(b)
            left = env.grothendieck_product(ga, gb)
            right = env.grothendieck_product(gb, ga)
            _ensure(left == right, "product is not commutative")
            bound = B.valuation(env.object_by_label(a.object_label)) + \
                B.valuation(env.object_by_label(b.object_label))
            for zl in left.components:
                _ensure(B.valuation(env.object_by_label(zl)) <= bound,
                        f"component {zl} breaks the filtration bound")
            direct = env.tensor_decompose(a, b)
            seen = {}
            for zl, cf in left.components.items():
                table = env.character_table(env.object_by_label(zl))
                for i, m in enumerate(table.decompose(cf)):
                    if m:
                        seen[SimpleLabel(zl, i)] = int(m)
            _ensure(seen == {lab: m for lab, m in direct.items()},
                    "ring components disagree with the tensor decomposition")
            return f"{len(left.components)} components"

        _run(records, f"{B.name}:ring-product:{pair_name}", product_checks)
    if associativity and pairs:
        def assoc(a=pairs[0][0]):
            g = env.grothendieck_generator(a)
            gg = env.grothendieck_product(g, g)
            _ensure(env.grothendieck_product(gg, g)
                    == env.grothendieck_product(g, gg),
                    "triple product depends on bracketing")
            return "one bracketing"

        _run(records, f"{B.name}:ring-associativity", assoc)
    return records


# ---------------------------------------------------------------- suites

DESK_SCOPE = {
    "setop": {
        "lattice": ["(2)", "(3)"],
        "idempotent": ["(2)", "(3)"],
        "character": ["(0)", "(1)", "(2)", "(3)"],
        "dims": ["(0)", "(1)", "(2)", "(3)"],
        "enddim": ["(0)", "(1)", "(2)", "(3)"],
        "rank": ["(2)"],
        "pairs": [("(1)", 0, "(1)", 0), ("(2)", 0, "(2)", 1)],
    },
    "vectfq2": {
        "lattice": ["F2^1", "F2^2"],
        "idempotent": ["F2^1", "F2^2"],
        "character": ["F2^0", "F2^1", "F2^2"],
        "dims": ["F2^0", "F2^1", "F2^2"],
        "enddim": ["F2^0", "F2^1", "F2^2"],
        "rank": ["F2^1"],
        "pairs": [("F2^1", 0, "F2^1", 0)],
    },
    "vectfq3": {
        "lattice": ["F3^1"],
        "idempotent": ["F3^1"],
        "character": ["F3^0", "F3^1"],
        "dims": ["F3^0", "F3^1"],
        "enddim": ["F3^0", "F3^1"],
        "rank": ["F3^1"],
        "pairs": [],
    },
    "group": {
        "lattice": ["C4", "V4", "S3"],
        "idempotent": ["C4", "V4", "S3"],
        "character": ["C2", "C3", "C4", "V4", "C5", "S3", "C6"],
        "dims": [],
        "enddim": ["1", "C2", "C3", "C4", "V4", "S3", "C6"],
        "rank": ["C4"],
        "pairs": [("C2", 0, "C2", 0)],
    },
}


def run_scope(env: Envelope, scope: dict) -> List[Record]:
    records: List[Record] = []
    records += lattice_battery(env, scope["lattice"])
    records += idempotent_battery(env, scope["idempotent"])
    records += character_battery(env, scope["character"])
    records += dimension_battery(env, scope["dims"])
    records += enddim_battery(env, scope["enddim"])
    records += rank_battery(env, scope["rank"])
    pairs = [(SimpleLabel(a, i), SimpleLabel(b, j))
             for a, i, b, j in scope["pairs"]]
    if pairs:
        records += ring_battery(env, pairs)
    return records


def selftest(envelopes: Sequence[Envelope]) -> List[Record]:
    """Run the desk-scale scope on each envelope, keyed by backend name."""
    records: List[Record] = []
    for env in envelopes:
        scope = DESK_SCOPE.get(env.backend.name)
        if scope is None:
            records.append((f"{env.backend.name}:scope", False,
                            "no desk scope for this backend"))
            continue
        records += run_scope(env, scope)
    return records
