from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import gl_group
from reltensor.groupchar import (
    CharacterTable,
    ClassFunction,
    FiniteGroup,
    GroupError,
    character_table_generic,
    character_table_sn,
    conjugacy_classes,
    cycle_type,
    induce,
    inner_product,
    inverse_class_map,
    mn_character_value,
    partitions_of,
    perm_cycle_name,
    permutation_character,
    regular_character,
    restrict,
    trivial_character,
)


@pytest.fixture(scope="module")
def gl32():
    return gl_group(3, 2)


@pytest.fixture(scope="module")
def gl32_table(gl32):
    return character_table_generic(gl32)


def hook_degree(lam):
    """Irreducible degree for a partition, by the hook length formula."""
    n = sum(lam)
    conj = [sum(1 for part in lam if part > j) for j in range(lam[0])] if lam else []
    hooks = 1
    for i, part in enumerate(lam):
        for j in range(part):
            hooks *= part - j + conj[j] - i - 1
    return factorial(n) // hooks


class TestFiniteGroup:
    def test_symmetric_basics(self):
        G = FiniteGroup.symmetric(3)
        assert G.n == 6
        assert G.items[G.identity] == (0, 1, 2)
        orders = sorted(G.element_order(a) for a in range(6))
        assert orders == [1, 2, 2, 2, 3, 3]
        assert G.exponent() == 6
        assert not G.is_abelian()

    def test_cyclic(self):
        G = FiniteGroup.cyclic(4)
        assert G.is_abelian()
        assert G.exponent() == 4
        assert [G.element_order(a) for a in range(4)] == [1, 4, 2, 4]
        assert G.power(1, 3) == 3
        assert G.inv(1) == 3

    def test_from_permutations_generates(self):
        G = FiniteGroup.from_permutations(3, [(1, 0, 2), (0, 2, 1)])
        assert G.n == 6
        H = FiniteGroup.from_permutations(4, [(1, 2, 3, 0)])
        assert H.n == 4
        assert H.is_abelian()

    def test_subgroup_closure(self):
        G = FiniteGroup.symmetric(3)
        swap = G.items.index((1, 0, 2))
        assert G.subgroup_closure([swap]) == [G.identity, swap]
        rot = G.items.index((1, 2, 0))
        assert len(G.subgroup_closure([rot])) == 3

    def test_bad_tables_rejected(self):
        with pytest.raises(GroupError):
            FiniteGroup([[0, 1]])
        with pytest.raises(GroupError):
            FiniteGroup([[0, 1], [1, 1]])

    def test_cycle_names(self):
        assert perm_cycle_name((0, 1, 2)) == "e"
        assert perm_cycle_name((1, 0, 2)) == "(1 2)"
        assert perm_cycle_name((1, 0, 3, 2)) == "(1 2)(3 4)"
        assert perm_cycle_name((1, 2, 0)) == "(1 2 3)"


class TestConjugacy:
    def test_trivial_group(self):
        G = FiniteGroup.symmetric(0)
        assert conjugacy_classes(G) == [[0]]

    def test_s3_classes(self):
        G = FiniteGroup.symmetric(3)
        classes = conjugacy_classes(G)
        assert [len(c) for c in classes] == [1, 3, 2]
        assert classes[0] == [G.identity]
        # representative of a class is its least element
        assert all(cls[0] == min(cls) for cls in classes)
        assert G.names[classes[1][0]] == "(2 3)"
        assert G.names[classes[2][0]] == "(1 2 3)"

    def test_cycle_type(self):
        assert cycle_type((1, 0, 2)) == (2, 1)
        assert cycle_type((1, 2, 0, 4, 3)) == (3, 2)
        assert cycle_type(()) == ()


class TestSnTables:
    def test_tiny(self):
        t1 = character_table_sn(1)
        assert t1.row_labels == ["[1]"]
        assert t1.rows[0].values == [Fraction(1)]
        t2 = character_table_sn(2)
        assert t2.row_labels == ["[2]", "[1,1]"]
        assert t2.rows[0].values == [1, 1]
        assert t2.rows[1].values == [1, -1]

    def test_s3_golden(self):
        t = character_table_sn(3)
        assert t.row_labels == ["[3]", "[2,1]", "[1,1,1]"]
        assert t.class_names == ["e", "(2 3)", "(1 2 3)"]
        assert t.cycle_types == [(1, 1, 1), (2, 1), (3,)]
        assert t.rows[1].values == [2, 0, -1]

    def test_degrees_match_hook_formula(self):
        for n in range(1, 7):
            t = character_table_sn(n)
            lams = sorted(partitions_of(n), reverse=True)
            assert t.degrees == [hook_degree(lam) for lam in lams]

    def test_mn_sign_and_trivial(self):
        for mu in partitions_of(6):
            assert mn_character_value((6,), mu) == 1
            assert mn_character_value((1,) * 6, mu) == (-1) ** (6 - len(mu))

    def test_second_orthogonality(self):
        t = character_table_sn(4)
        size = t.group.n
        for k in range(len(t.classes)):
            for kk in range(len(t.classes)):
                total = sum(r.values[k] * r.values[kk] for r in t.rows)
                want = Fraction(size, t.class_sizes[k]) if k == kk else 0
                assert total == want

    def test_range_guard(self):
        with pytest.raises(GroupError):
            character_table_sn(11)

    def test_large_n_class_data(self):
        # beyond n = 6 the table lives on class data, not a Cayley table
        t = character_table_sn(8)
        assert len(t) == 22
        assert t.group.n == factorial(8)
        assert sum(t.class_sizes) == factorial(8)
        lams = sorted(partitions_of(8), reverse=True)
        assert t.degrees == [hook_degree(lam) for lam in lams]
        k8 = t.cycle_types.index((8,))
        assert t.rows[lams.index((4, 4))].values[k8] == 0
        assert t.rows[lams.index((7, 1))].values[k8] == -1

    def test_s10(self):
        t = character_table_sn(10)
        assert len(t) == 42
        assert t.class_names[0] == "e"
        assert t.class_names[-1] == "(1 2 3 4 5 6 7 8 9 10)"
        assert t.class_sizes[-1] == factorial(9)


class TestGenericTable:
    def test_matches_sn(self):
        for n in range(2, 6):
            G = FiniteGroup.symmetric(n)
            ts = character_table_sn(n, G)
            tg = character_table_generic(G)
            assert sorted(map(tuple, (r.values for r in tg.rows))) == \
                sorted(map(tuple, (r.values for r in ts.rows)))
            for i in range(len(ts)):
                coeffs = tg.decompose(ts.irreducible(i))
                assert sorted(coeffs) == [0] * (len(ts) - 1) + [1]

    def test_c2(self):
        t = character_table_generic(FiniteGroup.cyclic(2))
        assert [r.values for r in t.rows] == [[1, 1], [1, -1]]
        assert t.row_labels == ["chi0", "chi1"]

    def test_gl32_shape(self, gl32, gl32_table):
        t = gl32_table
        assert t.group.n == 168
        assert t.degrees == [1, 3, 3, 6, 7, 8]
        by_order = {}
        for cls in t.classes:
            o = gl32.element_order(cls[0])
            by_order.setdefault(o, []).append(len(cls))
        assert by_order == {1: [1], 2: [21], 3: [56], 4: [42], 7: [24, 24]}

    def test_gl32_seven_part_values(self, gl32, gl32_table):
        t = gl32_table
        seven = [k for k, cls in enumerate(t.classes)
                 if gl32.element_order(cls[0]) == 7]
        for i, d in enumerate(t.degrees):
            vals = {str(t.rows[i].values[k]) for k in seven}
            if d == 3:
                assert vals == {"z7^4 + z7^2 + z7", "-z7^4 - z7^2 - z7 - 1"}
            else:
                assert vals == {str(t.rows[i].values[seven[0]])}

    def test_gl32_duality(self, gl32_table):
        t = gl32_table
        pairing = [t.dual_index(i) for i in range(len(t))]
        threes = [i for i, d in enumerate(t.degrees) if d == 3]
        assert pairing[threes[0]] == threes[1]
        assert pairing[threes[1]] == threes[0]
        assert all(pairing[i] == i for i in range(len(t)) if i not in threes)

    def test_gl32_column_orthogonality(self, gl32_table):
        t = gl32_table
        inv_cls = inverse_class_map(t.group)
        for k in range(len(t.classes)):
            for kk in range(len(t.classes)):
                total = 0
                for r in t.rows:
                    total = total + r.values[k] * r.values[inv_cls[kk]]
                want = Fraction(t.group.n, t.class_sizes[k]) if k == kk else 0
                assert total == want

    def test_size_guard_exists(self):
        import reltensor.groupchar as gc
        import inspect
        assert "group too large" in inspect.getsource(gc.character_table_generic)


class TestClassFunctions:
    def test_inner_product_goldens(self):
        G = FiniteGroup.symmetric(3)
        triv = trivial_character(G)
        reg = regular_character(G)
        assert inner_product(triv, triv) == 1
        t = character_table_sn(3, G)
        for i, row in enumerate(t.rows):
            assert inner_product(reg, row) == t.degrees[i]
        chi21 = t.irreducible(1)
        assert inner_product(chi21, chi21) == 1
        assert chi21.dual() == chi21

    def test_group_mismatch(self):
        f = trivial_character(FiniteGroup.symmetric(3))
        h = trivial_character(FiniteGroup.cyclic(6))
        with pytest.raises(GroupError):
            inner_product(f, h)
        with pytest.raises(GroupError):
            f + h

    def test_arithmetic(self):
        G = FiniteGroup.symmetric(3)
        t = character_table_sn(3, G)
        a, b = t.irreducible(0), t.irreducible(1)
        assert (a + b).values == [3, 1, 0]
        assert (a - b).values == [-1, 1, 2]
        assert (b * b).values == [4, 0, 1]
        assert (b * 2).values == [4, 0, -2]

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(min_value=0, max_value=5),
                    min_size=5, max_size=5))
    def test_decompose_round_trip(self, coeffs):
        t = character_table_sn(4)
        f = ClassFunction(t.group, [0] * len(t.classes))
        for c, row in zip(coeffs, t.rows):
            f = f + row * c
        assert t.decompose(f) == coeffs


class TestPermutationCharacters:
    def test_natural_action_s3(self):
        G = FiniteGroup.symmetric(3)
        chi = permutation_character(G, range(3), lambda g, pt: G.items[g][pt])
        assert chi.values == [3, 1, 0]
        t = character_table_sn(3, G)
        assert t.decompose(chi) == [1, 1, 0]

    def test_regular_and_trivial_actions(self):
        G = FiniteGroup.symmetric(3)
        chi = permutation_character(G, range(G.n), lambda g, pt: G.mul(g, pt))
        assert chi == regular_character(G)
        chi = permutation_character(G, range(4), lambda g, pt: pt)
        assert chi.values == [4, 4, 4]

    def test_transitive_has_trivial_once(self):
        G = FiniteGroup.symmetric(4)
        chi = permutation_character(G, range(4), lambda g, pt: G.items[g][pt])
        coeffs = character_table_sn(4, G).decompose(chi)
        assert coeffs[0] == 1
        assert all(c >= 0 and c == int(c) for c in coeffs)

    def test_bad_actions(self):
        G = FiniteGroup.symmetric(3)
        with pytest.raises(GroupError, match="identity moves"):
            permutation_character(G, range(3), lambda g, pt: (pt + 1) % 3)
        with pytest.raises(GroupError, match="not compatible"):
            permutation_character(
                G, range(3), lambda g, pt: pt if g == G.identity else 0)


class TestInduction:
    def embed_s2(self, G):
        return [G.items.index((0, 1, 2)), G.items.index((1, 0, 2))]

    def test_induced_trivial_is_coset_character(self):
        G = FiniteGroup.symmetric(3)
        H = FiniteGroup.symmetric(2)
        ind = induce(trivial_character(H), G, self.embed_s2(G))
        assert ind.values == [3, 1, 0]
        t = character_table_sn(3, G)
        assert t.decompose(ind) == [1, 1, 0]

    def test_induced_sign(self):
        G = FiniteGroup.symmetric(3)
        H = FiniteGroup.symmetric(2)
        sign = character_table_sn(2, H).irreducible(1)
        ind = induce(sign, G, self.embed_s2(G))
        assert ind.values == [3, -1, 0]
        assert character_table_sn(3, G).decompose(ind) == [0, 1, 1]

    def test_induction_from_identity_subgroup(self):
        G = FiniteGroup.symmetric(3)
        H = FiniteGroup.symmetric(0)
        ind = induce(trivial_character(H), G, [G.identity])
        assert ind == regular_character(G)

    def test_frobenius_reciprocity(self):
        G = FiniteGroup.symmetric(3)
        H = FiniteGroup.symmetric(2)
        emb = self.embed_s2(G)
        th = character_table_sn(2, H)
        tg = character_table_sn(3, G)
        for f in th.rows:
            for chi in tg.rows:
                lhs = inner_product(induce(f, G, emb), chi)
                rhs = inner_product(f, restrict(chi, H, emb))
                assert lhs == rhs

    def test_bad_embeddings(self):
        G = FiniteGroup.symmetric(3)
        H = FiniteGroup.symmetric(2)
        f = trivial_character(H)
        with pytest.raises(GroupError, match="injective"):
            induce(f, G, [0, 0])
        with pytest.raises(GroupError, match="homomorphism"):
            induce(f, G, [0, G.items.index((1, 2, 0))])


class TestTableOutput:
    def test_s3_json_golden(self):
        t = character_table_sn(3)
        assert t.to_json() == {
            "order": 6,
            "class_sizes": [1, 3, 2],
            "class_representatives": ["e", "(2 3)", "(1 2 3)"],
            "row_labels": ["[3]", "[2,1]", "[1,1,1]"],
            "values": [["1", "1", "1"], ["2", "0", "-1"], ["1", "-1", "1"]],
        }

    def test_json_deterministic(self, gl32_table):
        import json
        blob = json.dumps(gl32_table.to_json(), sort_keys=True)
        assert json.dumps(gl32_table.to_json(), sort_keys=True) == blob

    def test_product_decomposition_s4(self):
        t = character_table_sn(4)
        chi31 = t.irreducible(1)
        assert t.row_labels[1] == "[3,1]"
        assert t.decompose(chi31 * chi31) == [1, 1, 1, 1, 0]
