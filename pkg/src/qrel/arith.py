"""Number-theoretic primitives: divisor sums, Hurwitz class numbers with a
reduced-forms oracle and a persistent cache, real Dirichlet characters, and
elliptic-curve point counting over prime fields.
"""

from __future__ import annotations

import os
import threading
from fractions import Fraction
from functools import cache
from math import gcd, isqrt

from .qseries import QSeries

H0 = Fraction(-1, 12)


def divisors(n: int) -> list[int]:
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def sigma_k(n: int, k: int) -> int:
    """Sum of k-th powers of the divisors of n."""
    if n < 1:
        raise ValueError("n must be positive")
    return sum(d ** k for d in divisors(n))


def lambda_k(n: int, k: int) -> Fraction:
    """(1/2) * sum over d | n of min(d, n/d)^k."""
    if n < 1:
        raise ValueError("n must be positive")
    return Fraction(sum(min(d, n // d) ** k for d in divisors(n)), 2)


def lambda_k_pa(n: int, k: int, p: int, a: int) -> Fraction:
    """Divisor sum over d <= sqrt(n), d = -a (mod p) plus d < sqrt(n), d = a.

    Note the asymmetry: the first sum allows d = sqrt(n), the second does not.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if p < 1 or (p > 1 and not _is_odd_prime_or_one(p)):
        raise ValueError(f"p must be 1 or an odd prime, got {p}")
    if not 0 <= a < p:
        raise ValueError("need 0 <= a < p")
    total = 0
    for d in divisors(n):
        if d * d > n:
            break
        if d % p == (-a) % p:
            total += d ** k
        if d * d < n and d % p == a % p:
            total += d ** k
    return Fraction(total)


def _is_odd_prime_or_one(p: int) -> bool:
    if p == 1:
        return True
    if p < 3 or p % 2 == 0:
        return False
    return all(p % q for q in range(3, isqrt(p) + 1, 2))


# ---------------------------------------------------------------------------
# Hurwitz class numbers


def reduced_forms(n: int) -> list[tuple[int, int, int]]:
    """All reduced binary quadratic forms (a, b, c) of discriminant -n.

    Reduction: |b| <= a <= c with b >= 0 whenever |b| == a or a == c.
    Imprimitive forms are included; this is the brute-force oracle behind
    the Hurwitz class numbers.
    """
    if n <= 0 or n % 4 not in (0, 3):
        raise ValueError(f"discriminant -{n} is not 0 or 1 mod 4")
    forms = []
    a = 1
    while 3 * a * a <= n:
        for b in range(-a, a + 1):
            num = b * b + n
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and (c == a or -b == a):
                continue
            forms.append((a, b, c))
        a += 1
    return forms


def _form_weight(a: int, b: int, c: int) -> Fraction:
    if b == 0 and a == c:
        return Fraction(1, 2)
    if a == b == c:
        return Fraction(1, 3)
    return Fraction(1)


def hurwitz_oracle(n: int) -> Fraction:
    """Hurwitz class number by direct enumeration of reduced forms."""
    if n < 0 or n % 4 in (1, 2):
        return Fraction(0)
    if n == 0:
        return H0
    return sum((_form_weight(*f) for f in reduced_forms(n)), Fraction(0))


class HurwitzCache:
    """Table of Hurwitz class numbers, persisted as CSV "n,num,den".

    The table is filled by a bulk sweep over reduced forms (much faster than
    per-n enumeration) and is safe for concurrent reads; writes happen under
    an internal lock.
    """

    def __init__(self, cache_dir: str | None = None):
        self._table: dict[int, Fraction] = {0: H0}
        self._max = 0
        self._lock = threading.Lock()
        self._dir = cache_dir

    def _path(self) -> str:
        d = self._dir or os.environ.get("QREL_CACHE_DIR", "./.qrel-cache")
        return os.path.join(d, "hurwitz.csv")

    @property
    def max_computed(self) -> int:
        return self._max

    def ensure(self, max_n: int) -> None:
        if max_n <= self._max:
            return
        with self._lock:
            if max_n <= self._max:
                return
            self._bulk_fill(max_n)

    def _bulk_fill(self, max_n: int) -> None:
        table = {0: H0}
        a = 1
        while 3 * a * a <= max_n:
            for b in range(-a, a + 1):
                for c in range(a, (b * b + max_n) // (4 * a) + 1):
                    n = 4 * a * c - b * b
                    if n <= 0 or n > max_n:
                        continue
                    if b < 0 and (c == a or -b == a):
                        continue
                    table[n] = table.get(n, Fraction(0)) + _form_weight(a, b, c)
            a += 1
        self._table = table
        self._max = max_n

    def get(self, n: int) -> Fraction:
        if n < 0 or n % 4 in (1, 2):
            return Fraction(0)
        if n == 0:
            return H0
        if n > self._max:
            self.ensure(max(n, 2 * self._max, 512))
        return self._table.get(n, Fraction(0))

    def load(self, path: str | None = None) -> bool:
        """Load the CSV cache if present; returns True on success."""
        path = path or self._path()
        if not os.path.exists(path):
            return False
        table = {0: H0}
        max_n = 0
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                n, num, den = map(int, line.split(","))
                table[n] = Fraction(num, den)
                max_n = max(max_n, n)
        with self._lock:
            self._table = table
            self._max = max_n
        return True

    def save(self, path: str | None = None) -> str:
        path = path or self._path()
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w") as fh:
            for n in sorted(self._table):
                c = self._table[n]
                fh.write(f"{n},{c.numerator},{c.denominator}\n")
        return path

    def build(self, max_n: int, path: str | None = None) -> str:
        """Extend the persistent cache up to max_n (idempotent)."""
        self.load(path)
        self.ensure(max_n)
        return self.save(path)


_cache = HurwitzCache()


def hurwitz(n: int) -> Fraction:
    """Hurwitz class number H(n); 0 off the discriminant residues, -1/12 at 0."""
    return _cache.get(n)


def hurwitz_cache() -> HurwitzCache:
    return _cache


def class_number_decomposition(n: int) -> Fraction:
    """H(n) as a sum of weighted primitive class numbers over f^2 | n.

    Independent of the all-forms enumeration: counts primitive reduced forms
    of each discriminant -n/f^2 separately.
    """
    if n < 0 or n % 4 in (1, 2):
        return Fraction(0)
    if n == 0:
        return H0
    total = Fraction(0)
    f = 1
    while f * f <= n:
        if n % (f * f) == 0:
            m = n // (f * f)
            if m % 4 in (0, 3):
                total += sum((_form_weight(*fo) for fo in reduced_forms(m)
                              if gcd(gcd(fo[0], fo[1]), fo[2]) == 1), Fraction(0))
        f += 1
    return total


# ---------------------------------------------------------------------------
# Real Dirichlet characters


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a|n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("n must be odd and positive")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


class DirichletCharacter:
    """Real Dirichlet character, stored as a value table over the residues."""

    def __init__(self, modulus: int, values, conductor: int | None = None):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        self.modulus = modulus
        self.values = tuple(int(v) for v in values)
        if len(self.values) != modulus:
            raise ValueError("value table length must equal the modulus")
        self.conductor = conductor if conductor is not None else modulus
        self.parity = "even" if self(-1) == 1 else "odd"

    def __call__(self, n: int) -> int:
        return self.values[n % self.modulus]

    @property
    def is_even(self) -> bool:
        return self.parity == "even"

    @property
    def is_odd(self) -> bool:
        return self.parity == "odd"

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        from math import lcm
        m = lcm(self.modulus, other.modulus)
        return DirichletCharacter(m, [self(n) * other(n) for n in range(m)])

    def __eq__(self, other):
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return self.modulus == other.modulus and self.values == other.values

    def __hash__(self):
        return hash((self.modulus, self.values))

    def __repr__(self):
        return f"DirichletCharacter(mod {self.modulus}, {self.parity})"


@cache
def kronecker_character(d: int) -> DirichletCharacter:
    """Real character for specifier d.

    d = 1: trivial character mod 1; d = -4: the odd character mod 4;
    odd prime d: the Legendre symbol mod d.
    """
    if d == 1:
        return DirichletCharacter(1, [1], conductor=1)
    if d == -4:
        return DirichletCharacter(4, [0, 1, 0, -1], conductor=4)
    if d > 2 and _is_odd_prime_or_one(d):
        return DirichletCharacter(d, [jacobi_symbol(n, d) for n in range(d)],
                                  conductor=d)
    raise ValueError(f"unsupported character specifier {d}")


# ---------------------------------------------------------------------------
# Elliptic curves over F_p


def legendre_symbol(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def ec_ap(a4: int, a6: int, p: int) -> int:
    """Trace of Frobenius a_p of y^2 = x^3 + a4 x + a6 via Legendre sums.

    Only valid for p >= 5 with good reduction (short Weierstrass form breaks
    in characteristic 2 and 3).
    """
    if p < 5 or not _is_odd_prime_or_one(p) or p == 1:
        raise ValueError(f"need a prime p >= 5, got {p}")
    disc = -16 * (4 * a4 ** 3 + 27 * a6 ** 2)
    if disc % p == 0:
        raise ValueError(f"bad reduction at {p}")
    total = 0
    for x in range(p):
        total += legendre_symbol(x * x * x + a4 * x + a6, p)
    # #E(F_p) = p + 1 + sum of Legendre terms; a_p = p + 1 - #E(F_p)
    return -total


def hecke_extend(ap: dict[int, int], weight2: bool, bad_prime: int | None,
                 T: int, require_complete: bool = True) -> QSeries:
    """Extend prime eigenvalue data to all n <= T by Hecke multiplicativity.

    a(1) = 1, a(mn) = a(m)a(n) for coprime m, n, and for good primes
    a(p^{j+1}) = a(p) a(p^j) - p^{k-1} a(p^{j-1}) (weight 2 here: p^{k-1} = p).
    At the bad prime a(p^j) = a(p)^j.

    With require_complete=False, missing primes are tolerated and the result
    is only defined on the multiplicative span of the supplied primes.
    """
    if require_complete:
        for p in _primes_upto(T):
            if p not in ap:
                raise ValueError(f"missing Hecke eigenvalue for prime {p}")
    coeffs = {1: 1}
    for p in sorted(ap):
        if p > T:
            continue
        powers = {0: 1, 1: ap[p]}
        j = 1
        while p ** (j + 1) <= T:
            if bad_prime is not None and p == bad_prime:
                powers[j + 1] = powers[1] ** (j + 1)
            else:
                mult = p if weight2 else 1
                powers[j + 1] = ap[p] * powers[j] - mult * powers[j - 1]
            j += 1
        new = dict(coeffs)
        for n, c in coeffs.items():
            for e in range(1, j + 1):
                m = n * p ** e
                if m <= T:
                    new[m] = c * powers[e]
        coeffs = new
    return QSeries(coeffs, T)


def _primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(sieve[p * p::p]))
    return [p for p in range(n + 1) if sieve[p]]
