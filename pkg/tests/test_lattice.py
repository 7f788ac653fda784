import itertools
import json

import pytest

from reltensor.lattice import (
    FiniteLattice,
    LatticeError,
    are_isomorphic,
    factor_direct_product,
    fixed_sublattice,
    mobius,
    mu_vanishing_profile,
    order_complex_homology,
    structure,
)


# ---------------- test lattices ----------------

def n5():
    # 0 < x < z < 1 and 0 < y < 1 with y incomparable to x, z
    elems = ["0", "x", "y", "z", "1"]
    pairs = {("0", "x"), ("0", "y"), ("0", "z"), ("0", "1"),
             ("x", "z"), ("x", "1"), ("y", "1"), ("z", "1")}
    return FiniteLattice.from_relation(
        elems, lambda a, b: a == b or (a, b) in pairs)


def m3():
    elems = ["0", "a", "b", "c", "1"]
    return FiniteLattice.from_relation(
        elems, lambda a, b: a == b or a == "0" or b == "1")


def set_partitions(items):
    items = list(items)
    if not items:
        yield frozenset()
        return
    head, rest = items[0], items[1:]
    for part in set_partitions(rest):
        blocks = list(part)
        for i in range(len(blocks)):
            yield frozenset(blocks[:i] + [blocks[i] | {head}] + blocks[i + 1:])
        yield part | {frozenset([head])}


def refines(a, b):
    return all(any(block <= big for big in b) for block in a)


def partition_lattice(n):
    parts = sorted(set_partitions(range(n)),
                   key=lambda p: (len(p), sorted(sorted(b) for b in p)),
                   reverse=True)
    return FiniteLattice.from_relation(parts, refines)


def subspaces(q, n):
    vectors = list(itertools.product(range(q), repeat=n))
    zero = tuple([0] * n)

    def span(vs):
        got = {zero}
        frontier = True
        while frontier:
            frontier = False
            for v in list(got):
                for w in vs:
                    s = tuple((a + b) % q for a, b in zip(v, w))
                    if s not in got:
                        got.add(s)
                        frontier = True
        return frozenset(got)

    found = {frozenset([zero])}
    frontier = [frozenset([zero])]
    while frontier:
        space = frontier.pop()
        for v in vectors:
            if v not in space:
                bigger = span(set(space) | {v})
                if bigger not in found:
                    found.add(bigger)
                    frontier.append(bigger)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def subspace_lattice(q, n):
    return FiniteLattice.from_relation(subspaces(q, n), lambda a, b: a <= b)


def battery():
    return [
        ("B1", FiniteLattice.boolean(1)),
        ("B2", FiniteLattice.boolean(2)),
        ("B3", FiniteLattice.boolean(3)),
        ("B4", FiniteLattice.boolean(4)),
        ("chain2", FiniteLattice.chain(2)),
        ("chain3", FiniteLattice.chain(3)),
        ("M3", m3()),
        ("N5", n5()),
        ("Pi3", partition_lattice(3)),
        ("Pi4", partition_lattice(4)),
        ("L(2,2)", subspace_lattice(2, 2)),
        ("L(2,3)", subspace_lattice(2, 3)),
        ("L(3,2)", subspace_lattice(3, 2)),
    ]


def modular_by_triples(L):
    return all(
        L.join(a, L.meet(b, c)) == L.meet(L.join(a, b), c)
        for a in range(L.n) for b in range(L.n) for c in range(L.n)
        if L.leq(a, c)
    )


def mobius_by_chains(L):
    return L.chain_euler()


# ---------------- mobius ----------------

def test_mobius_goldens():
    B3 = FiniteLattice.boolean(3)
    assert mobius(B3, B3.bottom, B3.top) == -1
    C2 = FiniteLattice.chain(2)
    assert mobius(C2, C2.bottom, C2.top) == 0
    L23 = subspace_lattice(2, 3)
    assert mobius(L23, L23.bottom, L23.top) == -8
    assert mobius(B3, B3.top, B3.top) == 1


def test_mobius_requires_comparable():
    B2 = FiniteLattice.boolean(2)
    a, b = [i for i in range(B2.n) if i not in (B2.bottom, B2.top)]
    with pytest.raises(LatticeError):
        mobius(B2, a, b)


def test_subspace_lattice_mobius_values():
    for q, n, expect in [(2, 2, 2), (2, 3, -8), (3, 2, 3), (3, 3, -27)]:
        L = subspace_lattice(q, n)
        assert mobius(L, L.bottom, L.top) == expect


def test_mobius_against_chain_counting():
    for name, L in battery():
        assert mobius(L, L.bottom, L.top) == mobius_by_chains(L), name


def test_mobius_convolution():
    for name, L in battery():
        for a in range(L.n):
            for b in range(L.n):
                if not L.leq(a, b):
                    continue
                total = sum(L.mobius(a, z) for z in range(L.n)
                            if L.leq(a, z) and L.leq(z, b))
                assert total == (1 if a == b else 0), name


def test_partition_lattice_mobius():
    # mu of the full partition lattice is (-1)^(n-1) (n-1)!
    for n, expect in [(3, 2), (4, -6)]:
        L = partition_lattice(n)
        assert mobius(L, L.bottom, L.top) == expect


# ---------------- structure ----------------

def test_structure_goldens():
    B3 = FiniteLattice.boolean(3)
    s = structure(B3)
    assert s["is_modular"] and s["is_complemented"]
    assert s["rank"] == 3 and s["socle"] == B3.top
    assert len(s["atoms"]) == 3

    assert not structure(n5())["is_modular"]

    s = structure(subspace_lattice(2, 3))
    assert s["is_modular"] and s["is_complemented"] and s["rank"] == 3


def test_rank_error_on_ungraded():
    with pytest.raises(LatticeError, match="not graded"):
        n5().rank()


def test_modularity_matches_triple_oracle():
    for name, L in battery():
        assert L.is_modular() == modular_by_triples(L), name


def test_partition_lattice_not_modular_at_4():
    assert partition_lattice(3).is_modular()
    assert not partition_lattice(4).is_modular()


# ---------------- mu vanishing profile ----------------

def test_profile_goldens():
    B2 = FiniteLattice.boolean(2)
    assert mu_vanishing_profile(B2)[B2.top] == (True, True, True, True)
    C2 = FiniteLattice.chain(2)
    assert mu_vanishing_profile(C2)[C2.top] == (False, False, False, False)
    for flags in mu_vanishing_profile(subspace_lattice(2, 2)):
        assert len(set(flags)) == 1


def test_profile_requires_modularity():
    with pytest.raises(LatticeError, match="modularity required"):
        mu_vanishing_profile(n5())


def test_profile_four_way_equivalence():
    for name, L in battery():
        if not L.is_modular():
            continue
        for flags in mu_vanishing_profile(L):
            assert len(set(flags)) == 1, name


# ---------------- order complex homology ----------------

def test_homology_goldens():
    assert order_complex_homology(FiniteLattice.boolean(2)) == [0, 0, 1]
    assert order_complex_homology(FiniteLattice.chain(2)) == [0, 0, 0]
    assert order_complex_homology(subspace_lattice(2, 2)) == [0, 0, 2]


def test_homology_concentration_modular():
    for name, L in battery():
        if not L.is_modular() or L.n < 2:
            continue
        r = L.rank()
        mu = mobius(L, L.bottom, L.top)
        ranks = order_complex_homology(L)
        for deg, dim in enumerate(ranks):
            assert dim == ((-1) ** r * mu if deg == r else 0), (name, deg)


def test_homology_needs_two_elements():
    single = FiniteLattice.from_relation(["*"], lambda a, b: True)
    with pytest.raises(LatticeError):
        order_complex_homology(single)


# ---------------- fixed sublattices and Hopf ----------------

def coordinate_swap_perm(B, i, j):
    # automorphism of boolean(n) induced by swapping ground elements i, j
    def swap(s):
        out = set(s)
        has_i, has_j = i in out, j in out
        out.discard(i), out.discard(j)
        if has_i:
            out.add(j)
        if has_j:
            out.add(i)
        return frozenset(out)

    lookup = {lab: k for k, lab in enumerate(B.labels)}
    return [lookup[swap(lab)] for lab in B.labels]


def test_fixed_sublattice_identity():
    B3 = FiniteLattice.boolean(3)
    F = fixed_sublattice(B3, list(range(B3.n)))
    assert F.n == B3.n


def test_fixed_sublattice_boolean_swap():
    B3 = FiniteLattice.boolean(3)
    F = fixed_sublattice(B3, coordinate_swap_perm(B3, 0, 1))
    assert F.n == 4
    assert are_isomorphic(F, FiniteLattice.boolean(2))
    fixed_sets = set(F.labels)
    assert fixed_sets == {frozenset(), frozenset({2}), frozenset({0, 1}),
                          frozenset({0, 1, 2})}


def test_fixed_sublattice_rejects_non_automorphism():
    B2 = FiniteLattice.boolean(2)
    perm = list(range(B2.n))
    perm[B2.bottom], perm[B2.top] = perm[B2.top], perm[B2.bottom]
    with pytest.raises(LatticeError):
        fixed_sublattice(B2, perm)


def invariant_chain_euler(L, perm):
    # direct enumeration of chains all of whose elements are fixed
    fixed = {i for i in range(L.n) if perm[i] == i}
    total = 0
    for k, chains in enumerate(L.chains_by_length()):
        total += (-1) ** k * sum(all(z in fixed for z in c) for c in chains)
    return total


def test_hopf_fixed_chain_euler():
    B4 = FiniteLattice.boolean(4)
    perms = [
        list(range(B4.n)),
        coordinate_swap_perm(B4, 0, 1),
        coordinate_swap_perm(B4, 2, 3),
    ]
    # a 3-cycle on ground elements, as a lattice permutation
    three = [coordinate_swap_perm(B4, 0, 1)[coordinate_swap_perm(B4, 1, 2)[k]]
             for k in range(B4.n)]
    perms.append(three)
    for perm in perms:
        F = fixed_sublattice(B4, perm)
        assert invariant_chain_euler(B4, perm) == mobius(F, F.bottom, F.top)
        assert F.chain_euler() == mobius(F, F.bottom, F.top)


# ---------------- direct product factorization ----------------

def test_factor_goldens():
    fs = factor_direct_product(FiniteLattice.boolean(2))
    assert [f.n for f in fs] == [2, 2]

    fs = factor_direct_product(subspace_lattice(2, 2))
    assert len(fs) == 1 and are_isomorphic(fs[0], m3())

    prod = FiniteLattice.boolean(1).product(m3())
    fs = factor_direct_product(prod)
    assert sorted(f.n for f in fs) == [2, 5]
    assert any(are_isomorphic(f, m3()) for f in fs)


def test_factor_requires_complemented_modular():
    with pytest.raises(LatticeError):
        factor_direct_product(n5())
    with pytest.raises(LatticeError):
        factor_direct_product(FiniteLattice.chain(2))


def test_factor_mobius_multiplicativity():
    for L in [FiniteLattice.boolean(4), FiniteLattice.boolean(1).product(m3()),
              subspace_lattice(2, 3)]:
        fs = factor_direct_product(L)
        prod = 1
        for f in fs:
            prod *= mobius(f, f.bottom, f.top)
        assert prod == mobius(L, L.bottom, L.top)


# ---------------- serialization ----------------

def test_json_round_trip():
    for name, L in battery():
        blob = L.to_json()
        back = FiniteLattice.from_json(blob)
        assert back.to_json() == blob, name
        assert are_isomorphic(back, L), name
        json.dumps(blob)


def test_json_is_deterministic():
    a = FiniteLattice.boolean(3).to_json()
    b = FiniteLattice.boolean(3).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
