"""Rankin-Cohen brackets, the holomorphic-projection correction terms,
and the indefinite theta series with their Pell-orbit evaluation."""

from fractions import Fraction
from math import isqrt

import pytest

from qrel import forms, holproj as hp
from qrel.arith import kronecker_character
from qrel.qseries import QSeries
from qrel.scalars import PiScalar, QuadExt

TRIV = kronecker_character(1)
CHI5 = kronecker_character(5)
CHI4 = kronecker_character(-4)


class TestBracketSpec:
    def test_fields(self):
        spec = hp.BracketSpec(Fraction(3, 2), Fraction(1, 2), 2)
        assert spec.total_weight == 2 + 4

    def test_rejects_non_half_integer(self):
        with pytest.raises(ValueError):
            hp.BracketSpec(Fraction(1, 3), Fraction(1, 2), 0)

    def test_rejects_negative_degree(self):
        with pytest.raises(ValueError):
            hp.BracketSpec(Fraction(1, 2), Fraction(1, 2), -1)


class TestRankinCohen:
    def test_degree_zero_is_product(self):
        f = forms.eisenstein_g2(20)
        g = forms.theta_classical(20)
        spec = hp.BracketSpec(2, Fraction(1, 2), 0)
        assert hp.rankin_cohen(f, g, spec) == f * g

    def test_antisymmetry_equal_weights(self):
        f = QSeries({1: Fraction(1), 3: Fraction(2)}, 20)
        g = QSeries({2: Fraction(5), 4: Fraction(1)}, 20)
        spec = hp.BracketSpec(Fraction(1, 2), Fraction(1, 2), 1)
        assert hp.rankin_cohen(f, g, spec) == -hp.rankin_cohen(g, f, spec)

    def test_class_number_times_theta(self):
        H = forms.hurwitz_series(20)
        th = forms.theta_classical(20)
        spec = hp.BracketSpec(Fraction(3, 2), Fraction(1, 2), 0)
        br = hp.rankin_cohen(H, th, spec)
        # coefficient of q^4: sum_s H(4 - s^2)
        assert br.coeff(4) == sum(hp_h for hp_h in
                                  (Fraction(1, 2), Fraction(1, 3), Fraction(1, 3),
                                   Fraction(-1, 12), Fraction(-1, 12)))
        assert br.coeff(4) == 1


class TestPPoly:
    def test_base_cases(self):
        assert hp.p_poly(2, Fraction(7, 2)) == {(0, 0): 1}
        assert hp.p_poly(3, Fraction(5)) == {(0, 1): 1, (1, 0): 5}

    def test_degree(self):
        P = hp.p_poly(8, Fraction(1, 2))
        assert all(i + j == 6 for i, j in P)

    def test_rejects_small_a(self):
        with pytest.raises(ValueError):
            hp.p_poly(1, Fraction(1, 2))


class TestKappa:
    def test_base_value(self):
        spec = hp.BracketSpec(Fraction(3, 2), Fraction(1, 2), 0)
        assert hp.kappa(spec) == PiScalar(2, 1)     # 2*sqrt(pi)

    def test_flipped_weights(self):
        spec = hp.BracketSpec(Fraction(1, 2), Fraction(3, 2), 1)
        assert hp.kappa(spec) == PiScalar(Fraction(-3, 2), 1)

    def test_rejects_weight_one(self):
        with pytest.raises(ValueError):
            hp.kappa(hp.BracketSpec(1, 1, 0))


class TestCorrectionB:
    def test_zero_shadow(self):
        spec = hp.BracketSpec(Fraction(3, 2), Fraction(1, 2), 0)
        theta = {j * j: 2 for j in range(1, 20)}
        for r in (1, 3, 8):
            gamma, alg = hp.correction_b(r, {}, theta, spec)
            assert alg == 0

    def test_matches_projection_constant(self):
        # b(r) = 4^{1-nu} C(2nu,nu) sqrt(pi) * (double sum); the kappa term
        # supplies the boundary part at square r with the same constant
        theta = {j * j: 2 for j in range(1, 40)}
        for nu in (0, 1):
            spec = hp.BracketSpec(Fraction(3, 2), Fraction(1, 2), nu)
            const = PiScalar(Fraction(4) ** (1 - nu)
                             * hp.gen_binom(2 * nu, nu), 1)
            for r in range(1, 30):
                gamma, alg = hp.correction_b(r, theta, theta, spec)
                if isinstance(alg, QuadExt):
                    assert alg.b == 0
                    alg = alg.a
                dbl = 2 * hp.indefinite_double_sum(1, 1, TRIV, TRIV, nu, r)
                assert gamma * alg == const * dbl
            kap = hp.kappa(spec)
            for j in (1, 2, 3):
                assert kap * (2 * Fraction(j) ** (2 * nu + 1)) == \
                    const * Fraction(j) ** (2 * nu + 1)


class TestPellOrbit:
    def test_unit_and_reps(self):
        orb = hp.pell_orbit(1, 2, 1)
        assert orb.unit == QuadExt(3, 2, 2)
        assert orb.unit.norm() == 1
        assert orb.fundamental_solutions == [(3, 2)]
        orb = hp.pell_orbit(1, 3, 1)
        assert orb.unit == QuadExt(2, 1, 3)
        assert orb.fundamental_solutions == [(2, 1)]

    def test_two_orbits(self):
        orb = hp.pell_orbit(2, 3, 5)
        assert orb.fundamental_solutions == [(2, 1), (4, 3)]

    def test_reps_satisfy_equation(self):
        for (s, t, r) in [(1, 2, 7), (2, 3, 5), (1, 3, 13), (3, 5, 7)]:
            orb = hp.pell_orbit(s, t, r)
            for m0, n0 in orb.fundamental_solutions:
                assert s * m0 * m0 - t * n0 * n0 == r

    def test_rejects_square_product(self):
        with pytest.raises(ValueError):
            hp.pell_orbit(1, 4, 3)

    def test_orbit_covers_brute_force(self):
        # every solution with m <= 300 appears exactly once in the orbit fan
        for (s, t, r) in [(1, 2, 1), (1, 3, 1), (2, 3, 5)]:
            orb = hp.pell_orbit(s, t, r)
            want = [(m, n) for m in range(1, 301)
                    for n in range(1, isqrt((s * m * m) // t) + 1)
                    if s * m * m - t * n * n == r]
            got = []
            x, y = orb.unit_xy
            for m0, n0 in orb.fundamental_solutions:
                u, n = s * m0, n0
                while u // s <= 300:
                    got.append((u // s, n))
                    u, n = hp._advance(u, n, x, y, s * t)
            assert sorted(got) == want


class TestLambdaIndef:
    def test_square_path_values(self):
        lam = hp.lambda_indef(1, 1, TRIV, TRIV, 0, 20)
        assert lam.coeff(1) == 1     # boundary term only
        assert lam.coeff(3) == 2     # (m,n)=(2,1): 2*(2-1)
        assert lam.coeff(4) == 2     # boundary at m=2
        assert lam.coeff(8) == 4     # (3,1): 2*2
        assert lam.coeff(9) == 5     # (5,4): 2*1, plus boundary 3
        assert lam.coeff(2) == 0

    def test_orbit_path_values(self):
        lam = hp.lambda_indef(1, 2, TRIV, TRIV, 0, 8)
        assert lam.coeff(1) == QuadExt(0, 1, 2)
        assert lam.coeff(2) == QuadExt(0, 1, 2)
        assert lam.coeff(4) == QuadExt(0, 2, 2)
        assert lam.coeff(7) == QuadExt(0, 4, 2)

    def test_twisted_square_path(self):
        lam = hp.lambda_indef(1, 1, CHI5, TRIV, 0, 30)
        # r=24: (m,n) in {(5,1),(7,5)}; chi5(5)=0, chi5(7)=-1 -> 2*(-1)*2
        assert lam.coeff(24) == -4
        # r=25: boundary term vanishes (chi5(5)=0); (13,12) gives 2*(-1)*1
        assert lam.coeff(25) == -2

    def test_rejects_odd_character(self):
        with pytest.raises(ValueError):
            hp.lambda_indef(1, 1, CHI4, TRIV, 0, 10)

    def test_head_tail_split_exact(self):
        for (s, t) in [(1, 2), (2, 3)]:
            for nu in (0, 1):
                for r in (1, 5, 11):
                    full = hp.indefinite_double_sum(s, t, TRIV, TRIV, nu, r)
                    head, tail = hp.orbit_tail_split(s, t, nu, r, 500)
                    assert head + tail == full


class TestDeltaIndef:
    def test_example(self):
        d = hp.delta_indef(1, 1, CHI4, CHI4, 0, 20)
        assert d.coeff(8) == -4      # (m,n)=(3,1): 2*chi(3)*chi(1)*(3-1)

    def test_matches_double_sum(self):
        d = hp.delta_indef(1, 1, CHI4, CHI4, 1, 60)
        for r in range(1, 61):
            assert d.coeff(r) == 2 * hp.indefinite_double_sum(
                1, 1, CHI4, CHI4, 1, r)

    def test_no_boundary_term(self):
        d = hp.delta_indef(1, 1, CHI4, CHI4, 0, 30)
        assert d.coeff(1) == 0 and d.coeff(4) == 0 and d.coeff(25) == 0

    def test_rejects_even_character(self):
        with pytest.raises(ValueError):
            hp.delta_indef(1, 1, TRIV, CHI4, 0, 10)


class TestLambdaPa:
    def test_d_series_example(self):
        assert hp.d_pa_series(5, 1, 1, 10).coeff(6) == 1

    def test_residue_partition(self):
        # the unordered classes {0}, {+-1}, ..., {+-(p-1)/2} partition Z/p,
        # so the residue-restricted series sum to the unrestricted one
        for p in (5, 7):
            for nu in (0, 1):
                total = hp.lambda_pa(p, 0, nu, 80)
                for a in range(1, (p - 1) // 2 + 1):
                    total = total + hp.lambda_pa(p, a, nu, 80)
                assert total == hp.lambda_pa(1, 0, nu, 80)

    def test_unrestricted_matches_lambda_indef(self):
        for nu in (0, 1):
            assert hp.lambda_pa(1, 0, nu, 80) == \
                hp.lambda_indef(1, 1, TRIV, TRIV, nu, 80)

    def test_rejects_bad_residue(self):
        with pytest.raises(ValueError):
            hp.lambda_pa(5, 5, 0, 10)


class TestCharacterOrbits:
    def test_against_brute_force(self):
        # characters force period detection in the orbit closed form;
        # compare the exact value with a large exact partial sum plus a
        # geometrically-bounded remainder
        for (s, t) in [(1, 2), (2, 3)]:
            for chi, psi in [(CHI5, TRIV), (TRIV, CHI5), (CHI4, CHI4)]:
                for r in range(1, 11):
                    exact = hp.indefinite_double_sum(s, t, chi, psi, 0, r)
                    brute = _exact_partial_sum(s, t, chi, psi, 1, r, 4000)
                    assert abs(_dfloat(exact - brute)) < (r / 4000) * 10


def _dfloat(x) -> float:
    """Cancellation-free float of a QuadExt with huge entries."""
    from decimal import Decimal, getcontext
    getcontext().prec = 60
    if isinstance(x, QuadExt):
        return float(Decimal(x.a.numerator) / x.a.denominator
                     + Decimal(x.b.numerator) / x.b.denominator
                     * Decimal(x.D).sqrt())
    return float(x)


def _exact_partial_sum(s, t, chi, psi, e, r, M):
    D = hp.squarefree_split(s * t)[1]
    c = isqrt(s * t // D)
    total = QuadExt(0, 0, D)
    for m in range(1, M + 1):
        v = s * m * m - r
        if v < 0 or v % t:
            continue
        n = isqrt(v // t)
        if n >= 1 and t * n * n == v:
            total = total + chi(m) * psi(n) * QuadExt(s * m, -c * n, D) ** e
    return total
