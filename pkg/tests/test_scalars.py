"""Exact scalar arithmetic: rationals extended by a square root, pi
multiples, and the half-integer Gamma helpers."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrel.scalars import (PiScalar, QuadExt, as_half_integer,
                          falling_gamma_ratio, factorial, gamma_half,
                          gen_binom, is_square, pochhammer, squarefree_split)

rationals = st.builds(Fraction, st.integers(min_value=-50, max_value=50),
                      st.integers(min_value=1, max_value=12))


def frac(n, d=1):
    return Fraction(n, d)


class TestSquarefree:
    def test_split(self):
        assert squarefree_split(1) == (1, 1)
        assert squarefree_split(8) == (2, 2)
        assert squarefree_split(12) == (2, 3)
        assert squarefree_split(49) == (7, 1)
        assert squarefree_split(360) == (6, 10)

    def test_split_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            squarefree_split(0)

    def test_is_square(self):
        assert [n for n in range(20) if is_square(n)] == [0, 1, 4, 9, 16]
        assert not is_square(-4)

    @given(st.integers(min_value=1, max_value=10000))
    def test_split_roundtrip(self, n):
        f, d = squarefree_split(n)
        assert f * f * d == n
        for p in (2, 3, 5, 7):
            assert d % (p * p) != 0


class TestQuadExt:
    def test_sqrt_of(self):
        assert QuadExt.sqrt_of(2) == QuadExt(0, 1, 2)
        assert QuadExt.sqrt_of(8) == QuadExt(0, 2, 2)
        assert QuadExt.sqrt_of(9) == QuadExt(3, 0, 1)
        assert QuadExt.sqrt_of(2) * QuadExt.sqrt_of(2) == 2

    def test_mixed_arithmetic(self):
        x = QuadExt(1, 2, 5)          # 1 + 2*sqrt(5)
        assert x + 1 == QuadExt(2, 2, 5)
        assert 3 * x == QuadExt(3, 6, 5)
        assert x * x == QuadExt(21, 4, 5)
        assert x - x == 0

    def test_inverse_and_norm(self):
        x = QuadExt(3, 1, 2)
        assert x * x.inverse() == 1
        assert x.norm() == 9 - 2
        assert x.conjugate() == QuadExt(3, -1, 2)
        assert (x * x.conjugate()) == x.norm()

    def test_pell_unit_norm_one(self):
        eps = QuadExt(3, 2, 2)        # 3 + 2*sqrt(2)
        assert eps.norm() == 1
        assert eps.inverse() == eps.conjugate()

    def test_exact_ordering(self):
        # sqrt(2) is between 1.414213 and 1.414214; the comparison is exact
        assert QuadExt(0, 1, 2) > Fraction(1414213, 1000000)
        assert QuadExt(0, 1, 2) < Fraction(1414214, 1000000)
        assert QuadExt(7, -5, 2) < QuadExt(0, 0, 2)  # 7 - 5*sqrt(2) < 0

    def test_float(self):
        assert float(QuadExt(1, 1, 2)) == pytest.approx(2.414213562, rel=1e-9)

    def test_mismatched_radicands_rejected(self):
        with pytest.raises((ValueError, TypeError)):
            QuadExt(0, 1, 2) + QuadExt(0, 1, 3)

    @given(rationals, rationals, rationals, rationals)
    @settings(max_examples=60)
    def test_ring_axioms(self, a, b, c, d):
        x, y = QuadExt(a, b, 3), QuadExt(c, d, 3)
        assert x * y == y * x
        assert (x + y) * (x - y) == x * x - y * y
        assert x * (y + 1) == x * y + x

    @given(rationals, rationals)
    @settings(max_examples=60)
    def test_norm_multiplicative_and_inverse(self, a, b):
        x = QuadExt(a, b, 7)
        y = QuadExt(2, 1, 7)
        assert (x * y).norm() == x.norm() * y.norm()
        if x != 0:
            assert x * x.inverse() == 1

    @given(rationals, rationals)
    @settings(max_examples=60)
    def test_sign_matches_float(self, a, b):
        x = QuadExt(a, b, 11)
        fx = float(x)
        if abs(fx) > 1e-9:
            assert x.sign() == (1 if fx > 0 else -1)
        elif x == 0:
            assert x.sign() == 0


class TestPiScalar:
    def test_construction_and_equality(self):
        assert PiScalar(2, 0) == 2
        assert PiScalar(0, 5) == PiScalar(0, 0)
        assert PiScalar(frac(1, 2), 1) != PiScalar(frac(1, 2), 2)

    def test_multiplication_adds_exponents(self):
        x = PiScalar(2, 1) * PiScalar(3, 1)
        assert x == PiScalar(6, 2)

    def test_addition_same_power(self):
        assert PiScalar(1, 2) + PiScalar(2, 2) == PiScalar(3, 2)

    def test_addition_power_mismatch_rejected(self):
        with pytest.raises((ValueError, TypeError)):
            PiScalar(1, 1) + PiScalar(1, 2)


class TestGammaHelpers:
    def test_half_integer_validation(self):
        assert as_half_integer(frac(3, 2)) == frac(3, 2)
        assert as_half_integer(2) == 2
        with pytest.raises(ValueError):
            as_half_integer(frac(1, 3))

    def test_gen_binom(self):
        assert gen_binom(5, 2) == 10
        assert gen_binom(frac(1, 2), 2) == frac(-1, 8)
        assert gen_binom(frac(-1, 2), 1) == frac(-1, 2)
        assert gen_binom(3, 0) == 1

    def test_pochhammer(self):
        assert pochhammer(3, 3) == 3 * 4 * 5
        assert pochhammer(frac(1, 2), 2) == frac(3, 4)
        assert pochhammer(7, 0) == 1

    def test_factorial(self):
        assert [factorial(n) for n in range(6)] == [1, 1, 2, 6, 24, 120]

    def test_gamma_half(self):
        assert gamma_half(1) == PiScalar(1, 0)
        assert gamma_half(4) == PiScalar(6, 0)
        assert gamma_half(frac(1, 2)) == PiScalar(1, 1)
        assert gamma_half(frac(3, 2)) == PiScalar(frac(1, 2), 1)
        assert gamma_half(frac(7, 2)) == PiScalar(frac(15, 8), 1)

    def test_falling_gamma_ratio(self):
        # Gamma(x)/Gamma(x - mu) = (x-1)(x-2)...(x-mu)
        assert falling_gamma_ratio(5, 2) == 4 * 3
        assert falling_gamma_ratio(frac(1, 2), 2) == frac(-1, 2) * frac(-3, 2)
        assert falling_gamma_ratio(7, 0) == 1
        # valid across integer poles of the numerator/denominator pair
        assert falling_gamma_ratio(0, 2) == (-1) * (-2)
