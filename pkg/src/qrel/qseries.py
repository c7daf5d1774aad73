"""Truncated q-expansions over an exact scalar ring.

A QSeries stores a sparse map exponent -> coefficient for 0 <= n <= trunc.
Absent exponents mean zero.  Every operation records the truncation order
below which all reported coefficients are exact; nothing past the stored
truncation is ever reported.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import QuadExt

MAX_TRUNC = 1 << 20


class ScalarKindError(TypeError):
    """Raised when two series over incompatible coefficient rings meet."""


def _check_compatible(f: "QSeries", g: "QSeries") -> None:
    kf, kg = f.scalar_kind(), g.scalar_kind()
    if kf == "rational" or kg == "rational":
        return
    if kf != kg:
        raise ScalarKindError(f"cannot mix {kf} and {kg} coefficients")


class QSeries:
    """Sparse truncated power series in q with exact coefficients."""

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs: dict, trunc: int):
        if trunc < 0:
            raise ValueError("truncation order must be nonnegative")
        self.trunc = min(trunc, MAX_TRUNC)
        self.coeffs = {n: c for n, c in coeffs.items() if n <= self.trunc and c}
        if any(n < 0 for n in self.coeffs):
            raise ValueError("negative exponents are not supported")

    @classmethod
    def zero(cls, trunc: int) -> "QSeries":
        return cls({}, trunc)

    @classmethod
    def one(cls, trunc: int) -> "QSeries":
        return cls({0: 1}, trunc)

    def scalar_kind(self) -> str:
        for c in self.coeffs.values():
            if isinstance(c, QuadExt):
                return f"quadext({c.D})"
            if not isinstance(c, (int, Fraction)):
                return type(c).__name__
        return "rational"

    def coeff(self, n: int):
        if n < 0:
            return 0
        if n > self.trunc:
            raise IndexError(f"exponent {n} beyond truncation {self.trunc}")
        return self.coeffs.get(n, 0)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        t = min(self.trunc, other.trunc)
        for n in set(self.coeffs) | set(other.coeffs):
            if n <= t and self.coeffs.get(n, 0) != other.coeffs.get(n, 0):
                return False
        return True

    def __hash__(self):
        return hash((self.trunc, frozenset(self.coeffs.items())))

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        _check_compatible(self, other)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, 0) + c
        return QSeries(out, min(self.trunc, other.trunc))

    def __neg__(self):
        return QSeries({n: -c for n, c in self.coeffs.items()}, self.trunc)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        _check_compatible(self, other)
        t = min(self.trunc, other.trunc)
        out: dict = {}
        for n1, c1 in self.coeffs.items():
            if n1 > t:
                continue
            for n2, c2 in other.coeffs.items():
                n = n1 + n2
                if n > t:
                    continue
                out[n] = out.get(n, 0) + c1 * c2
        return QSeries(out, t)

    def __rmul__(self, other):
        if isinstance(other, QSeries):
            return NotImplemented
        return self.scale(other)

    def scale(self, c) -> "QSeries":
        return QSeries({n: c * v for n, v in self.coeffs.items()}, self.trunc)

    def __pow__(self, m: int) -> "QSeries":
        if m < 0:
            raise ValueError("negative powers are not supported")
        result = QSeries.one(self.trunc)
        base = self
        while m:
            if m & 1:
                result = result * base
            m >>= 1
            if m:
                base = base * base
        return result

    def d_operator(self) -> "QSeries":
        """The normalized derivative q d/dq: a(n) -> n*a(n)."""
        return QSeries({n: n * c for n, c in self.coeffs.items()}, self.trunc)

    def u_op(self, N: int) -> "QSeries":
        """U(N): a(n) -> a(N*n); truncation drops to floor(trunc/N)."""
        if N < 1:
            raise ValueError("N must be positive")
        return QSeries({n // N: c for n, c in self.coeffs.items() if n % N == 0},
                       self.trunc // N)

    def v_op(self, N: int) -> "QSeries":
        """V(N): f(tau) -> f(N*tau); truncation grows to N*trunc (capped)."""
        if N < 1:
            raise ValueError("N must be positive")
        return QSeries({n * N: c for n, c in self.coeffs.items()},
                       min(self.trunc * N, MAX_TRUNC))

    def sieve(self, N: int, r: int) -> "QSeries":
        """Keep only exponents congruent to r mod N."""
        if N < 1 or not 0 <= r < N:
            raise ValueError("need N >= 1 and 0 <= r < N")
        return QSeries({n: c for n, c in self.coeffs.items() if n % N == r},
                       self.trunc)

    def twist(self, chi) -> "QSeries":
        """Coefficientwise twist a(n) -> chi(n)*a(n) by a character."""
        return QSeries({n: chi(n) * c for n, c in self.coeffs.items()},
                       self.trunc)

    def truncate(self, T: int) -> "QSeries":
        return QSeries({n: c for n, c in self.coeffs.items() if n <= T},
                       min(self.trunc, T))

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def __repr__(self):
        terms = ", ".join(f"{n}: {self.coeffs[n]}" for n in sorted(self.coeffs)[:8])
        more = ", ..." if len(self.coeffs) > 8 else ""
        return f"QSeries({{{terms}{more}}}, trunc={self.trunc})"

    def to_csv_lines(self) -> list[str]:
        """Serialize as CSV: "n,num,den" or "n,a_num,a_den,b_num,b_den,D"."""
        lines = []
        for n in sorted(self.coeffs):
            c = self.coeffs[n]
            if isinstance(c, QuadExt):
                lines.append(f"{n},{c.a.numerator},{c.a.denominator},"
                             f"{c.b.numerator},{c.b.denominator},{c.D}")
            else:
                c = Fraction(c)
                lines.append(f"{n},{c.numerator},{c.denominator}")
        return lines

    @classmethod
    def from_csv_lines(cls, lines, trunc: int) -> "QSeries":
        coeffs: dict = {}
        for line in lines:
            parts = line.strip().split(",")
            if not line.strip():
                continue
            if len(parts) == 3:
                n, num, den = map(int, parts)
                coeffs[n] = Fraction(num, den)
            elif len(parts) == 6:
                n, an, ad, bn, bd, D = map(int, parts)
                coeffs[n] = QuadExt(Fraction(an, ad), Fraction(bn, bd), D)
            else:
                raise ValueError(f"malformed series line: {line!r}")
        return cls(coeffs, trunc)


def eta_product(factors, T: int) -> QSeries:
    """q-expansion of prod_d eta(d*tau)^{e_d} for factors [(d, e), ...].

    The leading power sum(d*e)/24 must be a nonnegative integer.  Euler
    products are expanded via the pentagonal number theorem, so each factor
    is extremely sparse before the final powering.
    """
    lead = Fraction(sum(d * e for d, e in factors), 24)
    if lead.denominator != 1 or lead < 0:
        raise ValueError(f"leading q-power {lead} is not a nonnegative integer")
    lead = int(lead)
    result = QSeries({lead: 1}, T)
    for d, e in factors:
        euler = _euler_function(d, T)
        if e >= 0:
            result = result * euler ** e
        else:
            result = result * _invert_unit_series(euler, T) ** (-e)
    return result


def _euler_function(d: int, T: int) -> QSeries:
    """prod_{n>=1} (1 - q^{d n}) via pentagonal numbers."""
    coeffs = {0: 1}
    k = 1
    while True:
        g1 = d * k * (3 * k - 1) // 2
        g2 = d * k * (3 * k + 1) // 2
        if g1 > T and g2 > T:
            break
        sign = -1 if k % 2 else 1
        if g1 <= T:
            coeffs[g1] = coeffs.get(g1, 0) + sign
        if g2 <= T:
            coeffs[g2] = coeffs.get(g2, 0) + sign
        k += 1
    return QSeries(coeffs, T)


def _invert_unit_series(f: QSeries, T: int) -> QSeries:
    if f.coeff(0) != 1:
        raise ValueError("can only invert series with constant term 1")
    inv = [0] * (T + 1)
    inv[0] = 1
    fc = f.coeffs
    for n in range(1, T + 1):
        s = 0
        for m, c in fc.items():
            if 0 < m <= n:
                s += c * inv[n - m]
        inv[n] = -s
    return QSeries({n: c for n, c in enumerate(inv) if c}, T)
