import itertools
import json
from fractions import Fraction

import pytest

from reltensor.errors import ScaleLimitError
from reltensor.groupchar import partitions_of
from reltensor.polynomial import MPoly, poly_divides
from reltensor.symfunc import (
    Partition,
    SchurVector,
    charlier,
    charlier_dimension_sum,
    deligne_dim,
    kronecker_coeff,
    schur_multiply,
    skew_double,
    stable_kronecker_limit,
    stable_kronecker_littlewood,
)

T = MPoly.var("t")


def parts_up_to(n):
    return [Partition(p) for k in range(n + 1) for p in partitions_of(k)]


class TestPartition:
    def test_normalization(self):
        assert Partition([1, 3, 1]).parts == (3, 1, 1)
        assert Partition([2, 0, 1]).parts == (2, 1)
        assert Partition().parts == ()
        assert Partition(Partition([2, 1])).parts == (2, 1)

    def test_validation(self):
        with pytest.raises(ValueError):
            Partition([-1])
        with pytest.raises(ValueError):
            Partition([2.5])

    def test_text_round_trip(self):
        for text in ["[]", "[1]", "[3,1,1]", "[8,4,2,1]"]:
            assert str(Partition.parse(text)) == text
        assert Partition.parse(" [ 2 , 1 ] ".replace(" ", "")) == Partition([2, 1])
        for bad in ["", "3,1", "[a]", "[1 1]"]:
            with pytest.raises(ValueError):
                Partition.parse(bad)

    def test_ordering(self):
        got = sorted([Partition([1, 1]), Partition([2]), Partition([1]), Partition()])
        assert [str(p) for p in got] == ["[]", "[1]", "[2]", "[1,1]"]

    def test_padding(self):
        assert Partition([1]).padded(4).parts == (3, 1)
        assert Partition().padded(2).parts == (2,)
        with pytest.raises(ValueError):
            Partition([3]).padded(5)

    def test_size_and_container(self):
        p = Partition([3, 1])
        assert p.size == 4
        assert len(p) == 2
        assert list(p) == [3, 1]
        assert p[0] == 3


class TestSchurVector:
    def test_text_form(self):
        v = (SchurVector.unit() + SchurVector.single([1])
             + SchurVector.single([2]) + SchurVector.single([1, 1]))
        assert str(v) == "1*s[] + 1*s[1] + 1*s[2] + 1*s[1,1]"
        assert str(SchurVector.zero()) == "0"
        assert str(SchurVector.single([1], 2) - SchurVector.single([2], 3)) == \
            "2*s[1] - 3*s[2]"

    def test_json_form(self):
        v = SchurVector.single([2, 1], 2) + SchurVector.unit()
        assert v.to_json() == {"[]": 1, "[2,1]": 2}
        json.dumps(v.to_json())

    def test_no_zero_coefficients(self):
        v = SchurVector.single([1]) - SchurVector.single([1])
        assert v.is_zero
        assert v.support() == []
        assert SchurVector({Partition([2]): 0}).is_zero

    def test_arithmetic(self):
        a = SchurVector.single([1])
        assert (a + a).coefficient([1]) == 2
        assert (3 * a).coefficient([1]) == 3
        assert a.coefficient([2]) == 0
        assert (a * MPoly.var("t")).coefficient([1]) == T

    def test_components(self):
        v = SchurVector.unit() + SchurVector.single([2]) + SchurVector.single([1, 1])
        assert v.max_degree() == 2
        assert v.homogeneous_component(2).support() == [Partition([2]), Partition([1, 1])]
        assert v.homogeneous_component(1).is_zero


class TestSchurMultiply:
    def test_pieri_goldens(self):
        s1 = SchurVector.single([1])
        assert s1 * s1 == SchurVector.single([2]) + SchurVector.single([1, 1])
        assert SchurVector.single([2]) * s1 == \
            SchurVector.single([3]) + SchurVector.single([2, 1])

    def test_unit(self):
        v = SchurVector.single([3, 1])
        assert SchurVector.unit() * v == v

    def test_lr_golden_21_21(self):
        # c^nu_{(2,1),(2,1)} for |nu| = 6, a classical table
        v = schur_multiply(SchurVector.single([2, 1]), SchurVector.single([2, 1]))
        want = {
            (4, 2): 1, (4, 1, 1): 1, (3, 3): 1, (3, 2, 1): 2, (3, 1, 1, 1): 1,
            (2, 2, 2): 1, (2, 2, 1, 1): 1,
        }
        assert {p.parts: c for p, c in v.items()} == want

    def test_commutative(self):
        for lam, mu in itertools.combinations(parts_up_to(3), 2):
            a, b = SchurVector.single(lam), SchurVector.single(mu)
            assert a * b == b * a

    def test_associative_small(self):
        for lam, mu, nu in itertools.product(parts_up_to(2), repeat=3):
            a, b, c = map(SchurVector.single, (lam, mu, nu))
            assert (a * b) * c == a * (b * c)

    def test_degrees_and_positivity(self):
        for lam, mu in itertools.product(parts_up_to(3), repeat=2):
            v = SchurVector.single(lam) * SchurVector.single(mu)
            for p, c in v.items():
                assert p.size == lam.size + mu.size
                assert isinstance(c, int) and c > 0


class TestKronecker:
    def test_trivial_goldens(self):
        assert kronecker_coeff([3], [2, 1], [2, 1]) == 1
        assert kronecker_coeff([1, 1], [1, 1], [2]) == 1
        assert kronecker_coeff([2, 1], [2, 1], [2, 1]) == 1
        assert kronecker_coeff([2], [1, 1], [2]) == 0

    def test_size_mismatch(self):
        with pytest.raises(ValueError, match="equal sizes"):
            kronecker_coeff([2], [1], [2])

    def test_symmetry(self):
        for lam, mu, nu in itertools.product(partitions_of(4), repeat=3):
            base = kronecker_coeff(lam, mu, nu)
            for a, b, c in itertools.permutations((lam, mu, nu)):
                assert kronecker_coeff(a, b, c) == base

    def test_trivial_row(self):
        for lam in partitions_of(5):
            assert kronecker_coeff((5,), lam, lam) == 1


class TestSkewDouble:
    def test_goldens(self):
        assert skew_double([1], [], [1]) == SchurVector.unit()
        assert skew_double([1], [1], [1]).is_zero
        assert skew_double([2, 1], [1], []) == \
            SchurVector.single([2]) + SchurVector.single([1, 1])

    def test_single_skew_matches_lr(self):
        # s_{lam \ mu, empty} collects the LR coefficients c^lam_{mu tau}
        for lam in parts_up_to(4):
            for mu in parts_up_to(lam.size):
                v = skew_double(lam, mu, Partition())
                for tau, c in v.items():
                    prod = schur_multiply(SchurVector.single(mu), SchurVector.single(tau))
                    assert prod.coefficient(lam) == c

    def test_degree_excess_vanishes(self):
        assert skew_double([2], [2], [1]).is_zero
        assert skew_double([3, 1], [3, 1], [1]).is_zero


class TestStableKronecker:
    def test_unit(self):
        for mu in parts_up_to(3):
            assert stable_kronecker_littlewood(Partition(), mu) == SchurVector.single(mu)

    def test_s1_s1(self):
        want = (SchurVector.unit() + SchurVector.single([1])
                + SchurVector.single([2]) + SchurVector.single([1, 1]))
        assert stable_kronecker_littlewood([1], [1]) == want
        assert stable_kronecker_limit([1], [1], 4) == want

    def test_top_degree_is_lr(self):
        for lam, mu in itertools.product(parts_up_to(3), repeat=2):
            star = stable_kronecker_littlewood(lam, mu)
            top = star.homogeneous_component(lam.size + mu.size)
            assert top == SchurVector.single(lam) * SchurVector.single(mu)

    def test_commutative(self):
        for lam, mu in itertools.combinations(parts_up_to(3), 2):
            assert stable_kronecker_littlewood(lam, mu) == \
                stable_kronecker_littlewood(mu, lam)

    def test_associative_small(self):
        smalls = parts_up_to(1) + [Partition([2]), Partition([1, 1])]
        for lam, mu, nu in itertools.combinations(smalls, 3):
            if lam.size + mu.size + nu.size > 4:
                continue
            a, b, c = map(SchurVector.single, (lam, mu, nu))

            def star(u, v):
                out = SchurVector.zero()
                for p, cp in u.items():
                    for q, cq in v.items():
                        out = out + cp * cq * stable_kronecker_littlewood(p, q)
                return out

            assert star(star(a, b), c) == star(a, star(b, c))

    def test_coefficients_nonnegative_integers(self):
        for lam, mu in itertools.product(parts_up_to(3), repeat=2):
            for _, c in stable_kronecker_littlewood(lam, mu).items():
                assert isinstance(c, int) and c > 0

    def test_matches_limit_once_stable(self):
        # all tau with |tau| <= 6 have settled by n = 12
        for lam, mu in itertools.product(parts_up_to(3), repeat=2):
            star = stable_kronecker_littlewood(lam, mu)
            assert star == stable_kronecker_limit(lam, mu, 12)
            assert star == stable_kronecker_limit(lam, mu, 13)

    def test_n8_is_not_yet_stable(self):
        # at n = 8 the padded coefficients have not all stabilized: the
        # stable value 3 at s[3,1] reads 2 in S_8, and s[6] has no valid
        # padding at all; the limit op reports the honest S_8 numbers
        star = stable_kronecker_littlewood([3], [3])
        lim8 = stable_kronecker_limit([3], [3], 8)
        assert star.coefficient([3, 1]) == 3
        assert lim8.coefficient([3, 1]) == 2
        assert star.coefficient([6]) == 1
        assert Partition([6]) not in lim8.support()

    def test_limit_bound_errors(self):
        with pytest.raises(ValueError, match=r"n >= \|lambda\| \+ lambda_1 = 6"):
            stable_kronecker_limit([3], [1], 5)
        with pytest.raises(ValueError, match=r"n >= \|mu\| \+ mu_1 = 4"):
            stable_kronecker_limit([1], [2], 3)

    def test_star_scale_guard(self):
        with pytest.raises(ScaleLimitError):
            stable_kronecker_littlewood([7], [1])

    def test_stabilization_probe(self):
        for lam, mu in [([2], [2]), ([2, 1], [1, 1])]:
            v12 = stable_kronecker_limit(lam, mu, 12)
            v13 = stable_kronecker_limit(lam, mu, 13)
            assert v12 == v13


class TestDimensionIdentity:
    def test_charlier_goldens(self):
        assert charlier(0) == MPoly.const(1)
        assert charlier(1) == MPoly.const(1) - T
        assert charlier(2) == T * T - 3 * T + MPoly.const(1)
        with pytest.raises(ValueError):
            charlier(-1)

    def test_charlier_degree(self):
        for m in range(7):
            assert charlier(m).total_degree() == m

    def test_deligne_goldens(self):
        assert deligne_dim([1]) == T - MPoly.const(1)
        assert deligne_dim([2]) == (T * (T - MPoly.const(3))) / 2
        assert deligne_dim([1, 1]) == ((T - MPoly.const(1)) * (T - MPoly.const(2))) / 2
        assert deligne_dim([]) == MPoly.const(1)

    def test_deligne_factors(self):
        # the roots are the shifted parts lam_i + n - i
        poly = deligne_dim([3, 1]) * Fraction(24, 3)
        for root in [3 + 4 - 1, 1 + 4 - 2, 0 + 4 - 3, 0 + 4 - 4]:
            ok, _ = poly_divides(T - MPoly.const(root), poly)
            assert ok

    def test_identity_up_to_six(self):
        for n in range(7):
            for lam in partitions_of(n):
                assert charlier_dimension_sum(lam) == deligne_dim(lam)

    def test_scale_guards(self):
        with pytest.raises(ScaleLimitError):
            deligne_dim([9])
        with pytest.raises(ScaleLimitError):
            charlier_dimension_sum([5, 4])
