"""Builders for every concrete q-expansion used by the relation checks.

All builders are deterministic and memoized per (id, truncation).
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import isqrt

from . import arith
from .arith import DirichletCharacter, ec_ap, hecke_extend, hurwitz, _primes_upto
from .qseries import QSeries, eta_product

# Cremona 49a1: y^2 = x^3 - 2835 x - 71442, conductor 49
G7_A4 = -2835
G7_A6 = -71442
G7_BAD_PRIMES = (2, 3, 7)


@cache
def hurwitz_series(T: int) -> QSeries:
    """Generating function of the Hurwitz class numbers, constant -1/12."""
    arith.hurwitz_cache().ensure(T)
    return QSeries({n: hurwitz(n) for n in range(T + 1)}, T)


@cache
def theta_classical(T: int) -> QSeries:
    """1 + 2*sum q^{n^2}."""
    coeffs = {0: 1}
    n = 1
    while n * n <= T:
        coeffs[n * n] = 2
        n += 1
    return QSeries(coeffs, T)


def theta_half(s: int, chi: DirichletCharacter, T: int) -> QSeries:
    """Weight 1/2 unary theta: sum over n in Z of chi(n) q^{s n^2}."""
    if s < 1:
        raise ValueError("s must be positive")
    if not chi.is_even:
        raise ValueError("theta_half needs an even character")
    coeffs: dict[int, int] = {0: 1} if chi.modulus == 1 else {}
    n = 1
    while s * n * n <= T:
        c = 2 * chi(n)
        if c:
            coeffs[s * n * n] = c
        n += 1
    return QSeries(coeffs, T)


def theta_three_half(s: int, chi: DirichletCharacter, T: int) -> QSeries:
    """Weight 3/2 unary theta: sum over n in Z of n*chi(n) q^{s n^2}."""
    if s < 1:
        raise ValueError("s must be positive")
    if not chi.is_odd:
        raise ValueError("theta_three_half needs an odd character")
    coeffs = {}
    n = 1
    while s * n * n <= T:
        c = 2 * n * chi(n)
        if c:
            coeffs[s * n * n] = c
        n += 1
    return QSeries(coeffs, T)


def theta_congruence(p: int, a: int, T: int) -> QSeries:
    """sum over n in Z, n = a (mod p), of q^{n^2}."""
    if not 0 <= a < p:
        raise ValueError("need 0 <= a < p")
    coeffs: dict[int, int] = {}
    n = 0
    while n * n <= T:
        count = (1 if n % p == a else 0) + (1 if n > 0 and (-n) % p == a else 0)
        if count:
            coeffs[n * n] = coeffs.get(n * n, 0) + count
        n += 1
    return QSeries(coeffs, T)


@cache
def eisenstein_g2(T: int) -> QSeries:
    """G_2 = -1/24 + sum sigma_1(n) q^n."""
    coeffs: dict[int, Fraction | int] = {0: Fraction(-1, 24)}
    for n in range(1, T + 1):
        coeffs[n] = arith.sigma_k(n, 1)
    return QSeries(coeffs, T)


@cache
def delta12(T: int) -> QSeries:
    """eta(tau)^24, the discriminant cusp form of weight 12."""
    return eta_product([(1, 24)], T)


@cache
def eta2_pow12(T: int) -> QSeries:
    """eta(2*tau)^12, the weight 6 newform on Gamma_0(4)."""
    return eta_product([(2, 12)], T)


class PartialSeries:
    """q-expansion defined only on an explicit index set.

    Querying an undefined index raises instead of returning 0; used for the
    weight 2 newform of level 49, whose coefficients at 2, 3, 7 we refuse to
    guess (point counting is invalid there).
    """

    def __init__(self, coeffs: dict[int, int], defined: set[int], trunc: int):
        self.coeffs = coeffs
        self.defined = defined
        self.trunc = trunc

    def coeff(self, n: int) -> int:
        if n not in self.defined:
            raise KeyError(f"coefficient a({n}) is not defined")
        return self.coeffs.get(n, 0)

    def is_defined(self, n: int) -> bool:
        return n in self.defined


def g7_support(max_n: int) -> list[int]:
    """Indices <= max_n supported on primes >= 5 and != 7."""
    return [n for n in range(1, max_n + 1)
            if all(n % p for p in G7_BAD_PRIMES)]


@cache
def g7(T: int) -> PartialSeries:
    """Coefficients of the level 49 weight 2 newform, from point counting.

    Defined only on indices supported on good primes (>= 5, != 7); built
    solely from Legendre-symbol point counts plus the Hecke recursion.
    """
    if T < 1:
        raise ValueError("T must be at least 1")
    ap = {p: ec_ap(G7_A4, G7_A6, p)
          for p in _primes_upto(T) if p >= 5 and p != 7}
    series = hecke_extend(ap, weight2=True, bad_prime=None, T=T,
                          require_complete=False)
    defined = set(g7_support(T))
    return PartialSeries(dict(series.coeffs), defined, T)


# ---------------------------------------------------------------------------
# Catalog


def _parse_chi(token: str) -> DirichletCharacter:
    return arith.kronecker_character(int(token))


def build(series_id: str, T: int):
    """Build a series by catalog id.

    Ids: "H", "theta", "theta_half:s:chi", "theta32:s:chi", "theta_pa:p:a",
    "G2", "Delta", "eta2_12", "g7".  Character specifiers are the integers
    accepted by kronecker_character (1, -4, or an odd prime).
    """
    parts = series_id.split(":")
    name, args = parts[0], parts[1:]
    if name == "H":
        return hurwitz_series(T)
    if name == "theta":
        return theta_classical(T)
    if name == "theta_half":
        return theta_half(int(args[0]), _parse_chi(args[1]), T)
    if name == "theta32":
        return theta_three_half(int(args[0]), _parse_chi(args[1]), T)
    if name == "theta_pa":
        return theta_congruence(int(args[0]), int(args[1]), T)
    if name == "G2":
        return eisenstein_g2(T)
    if name == "Delta":
        return delta12(T)
    if name == "eta2_12":
        return eta2_pow12(T)
    if name == "g7":
        return g7(T)
    raise KeyError(f"unknown series id {series_id!r}")
