"""The named relation checks: reduced-range runs, structural invariants
tying them together, and the report plumbing."""

import json
from fractions import Fraction
from math import isqrt

import pytest

from qrel import relations as R
from qrel.arith import hurwitz, lambda_k, sigma_k
from qrel.scalars import QuadExt


class TestReports:
    def test_record_and_status(self):
        rep = R.RelationReport("demo", 1, 10, "all n")
        assert rep.status == "partial"           # nothing checked yet
        rep.record(1, Fraction(1), Fraction(1))
        assert rep.status == "pass" and rep.ok
        rep.record(2, Fraction(1), Fraction(2))
        assert rep.status == "fail" and not rep.ok

    def test_json_schema(self):
        rep = R.check_eichler(99)
        doc = json.loads(rep.to_json())
        assert set(doc) >= {"relation", "range", "policy", "status",
                            "failures", "elapsed_ms"}
        assert doc["relation"] == "eichler"
        assert doc["range"] == [1, 99]
        assert doc["status"] == "pass"
        assert doc["failures"] == []
        assert isinstance(doc["elapsed_ms"], int)

    def test_failure_serialization(self):
        rep = R.RelationReport("demo", 1, 5, "all n")
        rep.record(3, Fraction(1, 3), Fraction(2, 3))
        doc = rep.to_dict()
        assert doc["failures"] == [{"n": 3, "lhs": "1/3", "rhs": "2/3"}]

    def test_format_scalar(self):
        assert R.format_scalar(Fraction(-1, 12)) == "-1/12"
        assert R.format_scalar(3) == "3/1"
        assert R.format_scalar(QuadExt(Fraction(1, 2), 2, 5)) == "1/2+2/1*sqrt(5)"
        assert R.format_scalar(QuadExt(0, -3, 2)) == "0/1-3/1*sqrt(2)"


class TestRegistry:
    def test_ids_stable(self):
        ids = R.relation_ids()
        assert ids[0] == "eichler"
        assert set(ids) >= {"eichler", "cohen", "kronecker_hurwitz",
                            "hap_table", "cor_i", "cor_ii", "prop72",
                            "identities"}

    def test_unknown_relation(self):
        with pytest.raises(KeyError):
            R.run_check("nosuch")

    def test_verify_all_order_deterministic(self):
        a = [r.relation for r in R.verify_all(30)]
        b = [r.relation for r in R.verify_all(30)]
        assert a == b == R.relation_ids()


class TestClassicalRelations:
    def test_eichler(self):
        assert R.check_eichler(501).ok

    def test_eichler_smallest_cases(self):
        # n=1: 2H(0) + lambda_1(1) = -1/6 + 1/2 = 1/3
        assert hurwitz(0) * 2 + lambda_k(1, 1) == Fraction(sigma_k(1, 1), 3)

    def test_cohen(self):
        assert R.check_cohen(501).ok

    def test_kronecker_variant_named(self):
        rep = R.check_kronecker_hurwitz(400)
        assert rep.ok
        assert "+2*lambda_1" in rep.notes


class TestTraceFormulas:
    @pytest.mark.parametrize("nu", [1, 2, 3, 4, 5])
    def test_level1(self, nu):
        assert R.check_trace_level1(nu, 120).ok

    @pytest.mark.parametrize("nu", [1, 2])
    def test_level4(self, nu):
        assert R.check_trace_level4(nu, 121).ok

    def test_unsupported_nu(self):
        with pytest.raises(ValueError):
            R.check_trace_level1(6)
        with pytest.raises(ValueError):
            R.check_trace_level4(3)

    def test_g_coeff_inverts_quadratic(self):
        # sum_j c_j X^j * (1 - S X + n X^2) = 1, where c_{2nu} = g_coeff
        for s, n in [(1, 2), (3, 7), (-2, 5), (0, 3)]:
            for double_s in (False, True):
                S = 2 * s if double_s else s
                c = [1, S]
                for _ in range(10):
                    c.append(S * c[-1] - n * c[-2])
                for j in range(2, 12):
                    assert c[j] - S * c[j - 1] + n * c[j - 2] == 0
                for nu in range(6):
                    assert c[2 * nu] == R.g_coeff(s, n, nu, double_s=double_s)

    def test_level4_degree_zero_is_eichler(self):
        # at nu=0 the level-4 trace sum reduces to the first class number
        # relation: -3 sum H(n-s^2) - 3 lambda_1(n) = -sigma_1(n), odd n
        for n in range(1, 301, 2):
            tot = sum(hurwitz(n - s * s) for s in range(-isqrt(n), isqrt(n) + 1))
            assert -3 * tot - 3 * lambda_k(n, 1) == -sigma_k(n, 1)


class TestHapTable:
    def test_table(self):
        assert R.check_hap_table(200).ok

    def test_spot_values(self):
        assert R.hap(0, 5, 11) == Fraction(11 + 1, 2) == 6
        assert R.hap(1, 5, 11) == Fraction(11 + 1, 3) == 4
        assert R.hap(2, 5, 11) == Fraction(5 * 11 - 7, 12) == 4

    def test_residue_partition(self):
        for n in list(range(1, 200)) + [500, 777, 1000]:
            total = sum((R.hap(a, 5, n) for a in range(5)), Fraction(0))
            direct = sum(hurwitz(4 * n - s * s)
                         for s in range(-isqrt(4 * n), isqrt(4 * n) + 1))
            assert total == direct


class TestQuasiModular:
    def test_cor_i(self):
        rep = R.check_cor_i(300)
        assert rep.ok
        assert "sieve residue on D_1^(5,2): 1" in rep.notes
        assert "twist readings pointwise equal: True" in rep.notes

    def test_cor_ii(self):
        assert R.check_cor_ii(200).ok

    def test_prop72(self):
        assert R.check_prop72(150).ok

    def test_w_term_values(self):
        # n=30, p=5, a=1: divisors alpha<sqrt(30) with alpha=0 (5) and
        # 30/alpha = +-1 (5): alpha=5 -> 6 = 1 (5): contributes 2*5
        w = R.w_term(5, 1, 1, 40)
        assert w.coeff(30) == 10
        assert w.coeff(7) == 0


class TestIdentities:
    def test_suite(self):
        rep = R.check_identities()
        assert rep.ok
        assert "kappa_closed_form" in rep.notes

    def test_binomial_even_spot(self):
        assert R._binomial_identity_even(2) == []

    def test_binomial_odd_spot(self):
        assert R._binomial_identity_odd(2) == []
