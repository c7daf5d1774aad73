"""Exact scalar arithmetic: rationals, real quadratic irrationalities, and
rational multiples of half-integer powers of pi.

Rationals are plain ``fractions.Fraction``; everything here stays exact,
no floating point is ever used except for the diagnostic ``float()`` views.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import isqrt
from numbers import Rational


def squarefree_split(n: int) -> tuple[int, int]:
    """Write n = f**2 * d with d squarefree; return (f, d).  Requires n >= 1."""
    if n < 1:
        raise ValueError(f"need a positive integer, got {n}")
    f, d = 1, 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            f *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    return f, d * m


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


class QuadExt:
    """Element a + b*sqrt(D) of the real quadratic field Q(sqrt(D)).

    D must be squarefree and positive; D == 1 is the degenerate rational
    case (b is folded into a).  Mixed arithmetic is only defined between
    elements with equal D, and with rationals/ints.
    """

    __slots__ = ("a", "b", "D")

    def __init__(self, a, b=0, D: int = 1):
        a = Fraction(a)
        b = Fraction(b)
        if D < 1:
            raise ValueError(f"radicand must be positive, got {D}")
        f, d = squarefree_split(D)
        if f != 1:
            raise ValueError(f"radicand {D} is not squarefree")
        if d == 1:
            a, b = a + b, Fraction(0)
        self.a = a
        self.b = b
        self.D = d

    @classmethod
    def sqrt_of(cls, n: int) -> "QuadExt":
        """Exact square root of a positive integer: sqrt(n) = f*sqrt(d)."""
        f, d = squarefree_split(n)
        return cls(0, f, d) if d != 1 else cls(f, 0, 1)

    def _coerce(self, other) -> "QuadExt | None":
        if isinstance(other, QuadExt):
            if other.b == 0:
                return QuadExt(other.a, 0, self.D)
            if self.b == 0:
                return other
            if other.D != self.D:
                raise ValueError(f"mixed radicands {self.D} and {other.D}")
            return other
        if isinstance(other, (int, Rational)):
            return QuadExt(other, 0, self.D)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        D = self.D if self.b != 0 else o.D
        return QuadExt(self.a + o.a, self.b + o.b, D)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.D)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        D = self.D if self.b != 0 else o.D
        return QuadExt(self.a * o.a + D * self.b * o.b,
                       self.a * o.b + self.b * o.a, D)

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero element of quadratic field")
        return QuadExt(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = QuadExt(1, 0, self.D)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def sign(self) -> int:
        """Exact sign of the real embedding a + b*sqrt(D)."""
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        # opposite signs: compare a^2 against D b^2, the larger magnitude wins
        lhs, rhs = self.a * self.a, self.D * self.b * self.b
        if lhs == rhs:
            return 0
        return (1 if self.a > 0 else -1) if lhs > rhs else (1 if self.b > 0 else -1)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except ValueError:
            return False
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        return not self <= other

    def __ge__(self, other):
        return not self < other

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        return float(self.a) + float(self.b) * self.D ** 0.5

    def __repr__(self):
        if self.b == 0:
            return f"QuadExt({self.a})"
        return f"QuadExt({self.a}, {self.b}, D={self.D})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*sqrt({self.D})"


class PiScalar:
    """A rational r times pi**(e/2).

    Addition is only defined between equal powers of pi; this is deliberate,
    a mismatch means a weight bookkeeping bug upstream.
    """

    __slots__ = ("r", "e")

    def __init__(self, r, e: int = 0):
        self.r = Fraction(r)
        self.e = int(e) if self.r != 0 else 0

    def __add__(self, other):
        if isinstance(other, (int, Rational)):
            other = PiScalar(other, 0)
        if not isinstance(other, PiScalar):
            return NotImplemented
        if self.r == 0:
            return other
        if other.r == 0:
            return self
        if self.e != other.e:
            raise ValueError(f"cannot add pi^({self.e}/2) to pi^({other.e}/2)")
        return PiScalar(self.r + other.r, self.e)

    __radd__ = __add__

    def __neg__(self):
        return PiScalar(-self.r, self.e)

    def __sub__(self, other):
        if isinstance(other, (int, Rational)):
            other = PiScalar(other, 0)
        if not isinstance(other, PiScalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return PiScalar(self.r * other, self.e)
        if not isinstance(other, PiScalar):
            return NotImplemented
        return PiScalar(self.r * other.r, self.e + other.e)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return PiScalar(self.r / other, self.e)
        if not isinstance(other, PiScalar):
            return NotImplemented
        if other.r == 0:
            raise ZeroDivisionError
        return PiScalar(self.r / other.r, self.e - other.e)

    def __rtruediv__(self, other):
        if isinstance(other, (int, Rational)):
            return PiScalar(other) / self
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = PiScalar(other, 0)
        if not isinstance(other, PiScalar):
            return NotImplemented
        return self.r == other.r and (self.r == 0 or self.e == other.e)

    def __hash__(self):
        return hash((self.r, self.e))

    def __bool__(self):
        return self.r != 0

    def __float__(self):
        from math import pi
        return float(self.r) * pi ** (self.e / 2)

    def __repr__(self):
        return f"PiScalar({self.r}, e={self.e})"

    def __str__(self):
        if self.e == 0:
            return str(self.r)
        return f"{self.r}*pi^({self.e}/2)"


def as_half_integer(h) -> Fraction:
    """Validate that h is a half-integer (element of (1/2)Z) and return it."""
    h = Fraction(h)
    if h.denominator not in (1, 2):
        raise ValueError(f"{h} is not a half-integer")
    return h


def gen_binom(x, m: int) -> Fraction:
    """Generalized binomial coefficient x(x-1)...(x-m+1)/m! for rational x."""
    if m < 0:
        raise ValueError("lower index must be nonnegative")
    x = Fraction(x)
    num = Fraction(1)
    for j in range(m):
        num *= x - j
    return num / factorial(m)


def pochhammer(a, n: int) -> Fraction:
    """Rising factorial (a)_n = a(a+1)...(a+n-1)."""
    if n < 0:
        raise ValueError("length must be nonnegative")
    a = Fraction(a)
    result = Fraction(1)
    for j in range(n):
        result *= a + j
    return result


@cache
def factorial(n: int) -> int:
    import math
    return math.factorial(n)


def gamma_half(h) -> PiScalar:
    """Gamma(h) for a positive half-integer h, exactly.

    Integer h gives (h-1)! with no pi; half-odd h reduces to Gamma(1/2) =
    sqrt(pi) via Gamma(x+1) = x*Gamma(x).
    """
    h = as_half_integer(h)
    if h <= 0:
        raise ValueError(f"gamma_half needs a positive argument, got {h}")
    if h.denominator == 1:
        return PiScalar(factorial(int(h) - 1), 0)
    r = Fraction(1)
    x = h
    while x > Fraction(1, 2):
        x -= 1
        r *= x
    return PiScalar(r, 1)


def falling_gamma_ratio(x, mu: int) -> Fraction:
    """Gamma(x)/Gamma(x-mu) as the falling factorial (x-1)(x-2)...(x-mu).

    Pole-free: valid even where the individual Gamma values blow up.
    """
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    x = Fraction(x)
    result = Fraction(1)
    for j in range(1, mu + 1):
        result *= x - j
    return result
