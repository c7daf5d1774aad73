"""Holomorphic-projection machinery: Rankin-Cohen brackets at half-integral
weight, the correction polynomials P_{a,b}, the constant kappa(k, l, nu), the
general correction coefficients b(r), and the indefinite theta series built
from Pell-orbit summation.

All arithmetic is exact: rational, or in a real quadratic field when square
roots genuinely appear.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .arith import DirichletCharacter
from .qseries import QSeries
from .scalars import (PiScalar, QuadExt, as_half_integer, factorial,
                      falling_gamma_ratio, gamma_half, gen_binom, is_square,
                      squarefree_split)


@dataclass(frozen=True)
class BracketSpec:
    """Weights (k, l) and degree nu of a Rankin-Cohen bracket."""

    k: Fraction
    l: Fraction
    nu: int

    def __post_init__(self):
        object.__setattr__(self, "k", as_half_integer(self.k))
        object.__setattr__(self, "l", as_half_integer(self.l))
        if self.nu < 0:
            raise ValueError("degree must be nonnegative")

    @property
    def total_weight(self) -> Fraction:
        return self.k + self.l + 2 * self.nu


def rankin_cohen(f: QSeries, g: QSeries, spec: BracketSpec) -> QSeries:
    """[f, g]_nu = sum_mu (-1)^mu C(k+nu-1, nu-mu) C(l+nu-1, mu) D^mu f D^{nu-mu} g."""
    k, l, nu = spec.k, spec.l, spec.nu
    total = QSeries.zero(min(f.trunc, g.trunc))
    d_f = [f]
    d_g = [g]
    for _ in range(nu):
        d_f.append(d_f[-1].d_operator())
        d_g.append(d_g[-1].d_operator())
    for mu in range(nu + 1):
        c = gen_binom(k + nu - 1, nu - mu) * gen_binom(l + nu - 1, mu)
        if mu % 2:
            c = -c
        if c:
            total = total + (d_f[mu] * d_g[nu - mu]).scale(c)
    return total


# ---------------------------------------------------------------------------
# Bivariate polynomials over Q, as sparse {(i, j): coeff} maps (X^i Y^j)


def poly_add(p: dict, q: dict) -> dict:
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c}


def poly_scale(c, p: dict) -> dict:
    return {m: c * v for m, v in p.items() if c * v}


def poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for (i1, j1), c1 in p.items():
        for (i2, j2), c2 in q.items():
            m = (i1 + i2, j1 + j2)
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def poly_pow(p: dict, e: int) -> dict:
    out = {(0, 0): Fraction(1)}
    for _ in range(e):
        out = poly_mul(out, p)
    return out


def poly_eval(p: dict, x, y):
    total = 0
    for (i, j), c in p.items():
        total = total + c * x ** i * y ** j
    return total


def p_poly(a: int, b) -> dict:
    """P_{a,b}(X, Y) = sum_{j=0}^{a-2} C(j+b-2, j) X^j (X+Y)^{a-j-2}, expanded."""
    if a < 2:
        raise ValueError("degree parameter a must be at least 2")
    b = Fraction(b)
    xy = {(1, 0): Fraction(1), (0, 1): Fraction(1)}
    out: dict = {}
    for j in range(a - 1):
        term = poly_mul({(j, 0): gen_binom(j + b - 2, j)}, poly_pow(xy, a - j - 2))
        out = poly_add(out, term)
    return out


# ---------------------------------------------------------------------------
# kappa and the correction coefficients


def gamma_half_signed(h) -> PiScalar:
    """Gamma at any half-integer that is not a pole (so: not in -N_0)."""
    h = as_half_integer(h)
    if h.denominator == 1:
        if h <= 0:
            raise ValueError(f"Gamma pole at {h}")
        return gamma_half(h)
    r = Fraction(1)
    x = h
    while x < Fraction(1, 2):
        r /= x
        x += 1
    while x > Fraction(1, 2):
        x -= 1
        r *= x
    return PiScalar(r, 1)


def kappa(spec: BracketSpec) -> PiScalar:
    """The constant in the holomorphic projection of [y^{1-k}, g]_nu.

    Gamma(2-k)/Gamma(2-k-mu) is evaluated as a falling-factorial product, so
    integer weights whose poles cancel still work; k = 1 is rejected.
    """
    k, l, nu = spec.k, spec.l, spec.nu
    if k == 1:
        raise ValueError("kappa is undefined at k = 1")
    w = spec.total_weight
    if w.denominator != 1 or w < 2:
        raise ValueError(f"total weight {w} must be an integer >= 2")
    total = PiScalar(0)
    for mu in range(nu + 1):
        coeff = (falling_gamma_ratio(2 - k, mu)
                 * gen_binom(k + nu - 1, nu - mu)
                 * gen_binom(l + nu - 1, mu))
        if coeff:
            total = total + gamma_half_signed(l + 2 * nu - mu) * coeff
    return total * Fraction(1, factorial(int(w) - 2)) / (k - 1)


def half_power(base: int, e) -> Fraction | QuadExt:
    """base**e for a half-integer exponent e, exactly.

    Integer e gives a Fraction; half-odd e gives a QuadExt whose radicand is
    the squarefree part of base.
    """
    e = as_half_integer(e)
    if e.denominator == 1:
        if base == 0:
            if e < 0:
                raise ZeroDivisionError
            return Fraction(1) if e == 0 else Fraction(0)
        return Fraction(base) ** int(e)
    if base <= 0:
        raise ValueError(f"half-integer power of nonpositive base {base}")
    return QuadExt.sqrt_of(base) ** int(2 * e)


def correction_b(r: int, shadow_coeffs: dict, g_coeffs: dict,
                 spec: BracketSpec):
    """Holomorphic-projection correction coefficient b(r).

    b(r) = -Gamma(1-k) sum_{m-n=r, n>=1} sum_mu C(k+nu-1, nu-mu) C(l+nu-1, mu)
           m^{nu-mu} a_g(m) c(n) (m^{mu-2nu-l+1} P_{k+l+2nu, 2-k-mu}(r, n)
           - n^{k+mu-1}).

    Returned as a pair (gamma_factor, algebraic_sum) whose product is b(r):
    the first factor is -Gamma(1-k) as an exact PiScalar, the second is the
    double sum, a Fraction or QuadExt.  Half-integer powers only appear for
    supports where square roots are exact; mixing two incompatible radicands
    in one sum is an error.
    """
    if r < 1:
        raise ValueError("r must be positive")
    k, l, nu = spec.k, spec.l, spec.nu
    if (k + l).denominator != 1:
        raise ValueError("correction machinery needs k + l integral")
    w = int(spec.total_weight)
    polys = {mu: p_poly(w, 2 - k - mu) for mu in range(nu + 1)}
    total: Fraction | QuadExt = Fraction(0)
    for n, cn in shadow_coeffs.items():
        if n < 1 or not cn:
            continue
        m = n + r
        am = g_coeffs.get(m, 0)
        if not am:
            continue
        for mu in range(nu + 1):
            coeff = gen_binom(k + nu - 1, nu - mu) * gen_binom(l + nu - 1, mu)
            if not coeff:
                continue
            p_term = half_power(m, nu - mu + mu - 2 * nu - l + 1) \
                * poly_eval(polys[mu], Fraction(r), Fraction(n))
            n_term = half_power(n, k + mu - 1) * Fraction(m) ** (nu - mu)
            total = total + coeff * am * cn * (p_term - n_term)
    return -gamma_half_signed(1 - k), total


# ---------------------------------------------------------------------------
# Pell orbits


def pell_fundamental(N: int) -> tuple[int, int]:
    """Least positive solution (x, y) of x^2 - N y^2 = 1, N a non-square >= 2.

    Computed from the continued fraction expansion of sqrt(N).
    """
    if N < 2 or is_square(N):
        raise ValueError(f"need a non-square N >= 2, got {N}")
    a0 = isqrt(N)
    m, d, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    while h * h - N * k * k != 1:
        m = d * a - m
        d = (N - m * m) // d
        a = (a0 + m) // d
        h, h_prev = a * h + h_prev, h
        k, k_prev = a * k + k_prev, k
    return h, k


@dataclass
class PellOrbitData:
    """Orbit decomposition of the solutions of s m^2 - t n^2 = r."""

    s: int
    t: int
    r: int
    D: int                    # squarefree part of s*t
    unit: QuadExt             # fundamental unit of x^2 - st y^2 = 1, in Q(sqrt(D))
    unit_xy: tuple[int, int]  # the same unit as (x, y) with x + y*sqrt(st)
    fundamental_solutions: list[tuple[int, int]]   # minimal (m, n) with m, n >= 1
    window_reps: list[tuple[int, int]]             # internal (u, n) = (s*m, n) reps


def _advance(u: int, n: int, x: int, y: int, st: int) -> tuple[int, int]:
    return u * x + n * y * st, u * y + n * x


def pell_orbit(s: int, t: int, r: int) -> PellOrbitData:
    """Decompose {(m, n): s m^2 - t n^2 = r, m, n >= 1} into unit orbits.

    Internally works with u = s*m, so u^2 - st n^2 = s*r; the fundamental
    unit of x^2 - st y^2 = 1 acts on (u, n) and preserves u = 0 (mod s).
    Each returned fundamental solution generates its orbit upward; together
    they cover every solution exactly once.
    """
    if s < 1 or t < 1 or r < 1:
        raise ValueError("s, t, r must be positive")
    st = s * t
    if is_square(st):
        raise ValueError("s*t is a perfect square; use the finite factorization path")
    _, D = squarefree_split(st)
    c = isqrt(st // D)
    x, y = pell_fundamental(st)
    unit = QuadExt(x, y * c, D)
    sr = s * r
    window = []
    n = 0
    n_max = y * (isqrt(sr) + 1)
    while n <= n_max:
        uu = sr + st * n * n
        u = isqrt(uu)
        if u * u == uu and u > 0 and n * x - u * y < 0 and u % s == 0:
            window.append((u, n))
        n += 1
    fundamental = []
    for u, n in window:
        while n < 1 or u < s:
            u, n = _advance(u, n, x, y, st)
        fundamental.append((u // s, n))
    fundamental.sort()
    return PellOrbitData(s, t, r, D, unit, (x, y), fundamental, window)


# ---------------------------------------------------------------------------
# Indefinite theta series Lambda and Delta


def _psi_at_zero(psi: DirichletCharacter) -> int:
    return 1 if psi.modulus == 1 else 0


def _indef_coeff_square(s: int, t: int, chi, psi, nu: int, r: int):
    """Double-sum coefficient (scaled by s^{nu+1/2}) when s*t is a square.

    s m^2 - t n^2 = r factors as (s m - c n)(s m + c n) = s r with c^2 = s t,
    so the sum is finite over divisor pairs.
    """
    c = isqrt(s * t)
    e = 2 * nu + 1
    total = Fraction(0)
    sr = s * r
    for d in range(1, isqrt(sr) + 1):
        if sr % d:
            continue
        ee = sr // d
        if ee <= d:
            continue
        if (d + ee) % (2 * s) or (ee - d) % (2 * c):
            continue
        m = (d + ee) // (2 * s)
        n = (ee - d) // (2 * c)
        if m >= 1 and n >= 1:
            total += chi(m) * psi(n) * Fraction(d) ** e
    return total


def _orbit_period(u: int, n: int, x: int, y: int, st: int, L: int) -> int:
    """Period of (u, n) mod L under the unit action."""
    if L == 1:
        return 1
    u0, n0 = u % L, n % L
    uu, nn = u0, n0
    period = 0
    while True:
        uu, nn = _advance(uu, nn, x, y, st)
        uu, nn = uu % L, nn % L
        period += 1
        if (uu, nn) == (u0, n0):
            return period


def _indef_coeff_orbit(s: int, t: int, chi, psi, nu: int, r: int):
    """Double-sum coefficient (scaled by s^{nu+1/2}) via exact orbit sums.

    Per orbit the solution values form a geometric progression in the
    conjugate unit; characters are handled by splitting the orbit into
    finitely many residue classes of the unit action.
    """
    orbits = pell_orbit(s, t, r)
    st = s * t
    x, y = orbits.unit_xy
    D = orbits.D
    c = isqrt(st // D)
    e = 2 * nu + 1
    eps_inv_e = orbits.unit.inverse() ** e
    L = s * chi.modulus * psi.modulus
    total = QuadExt(0, 0, D)
    for m0, n0 in orbits.fundamental_solutions:
        u0 = s * m0
        alpha_conj = QuadExt(u0, -c * n0, D) ** e
        period = _orbit_period(u0, n0, x, y, st, L)
        geom = (1 - eps_inv_e ** period).inverse()
        u, n = u0, n0
        part = QuadExt(0, 0, D)
        factor = alpha_conj
        for _ in range(period):
            cv = chi(u // s) * psi(n)
            if cv:
                part = part + cv * factor
            factor = factor * eps_inv_e
            u, n = _advance(u, n, x, y, st)
        total = total + part * geom
    return total


def indefinite_double_sum(s: int, t: int, chi, psi, nu: int, r: int):
    """sum over s m^2 - t n^2 = r, m, n >= 1 of chi(m) psi(n)
    (s m - sqrt(st) n)^{2 nu + 1}, i.e. the Lambda double sum scaled by
    s^{nu + 1/2}."""
    if is_square(s * t):
        return _indef_coeff_square(s, t, chi, psi, nu, r)
    return _indef_coeff_orbit(s, t, chi, psi, nu, r)


def _unscale(value, s: int, nu: int):
    root = isqrt(s)
    return value / Fraction(root) ** (2 * nu + 1)


def lambda_indef(s: int, t: int, chi: DirichletCharacter,
                 psi: DirichletCharacter, nu: int, T: int) -> QSeries:
    """The indefinite theta series Lambda_{s,t}^{chi,psi}(tau; nu).

    Coefficient of q^r: 2 * sum_{s m^2 - t n^2 = r, m, n >= 1}
    chi(m) psi(n) (sqrt(s) m - sqrt(t) n)^{2 nu + 1}, plus for r = s rho^2
    the boundary term psi(0) chi(rho) (sqrt(s) rho)^{2 nu + 1}.

    For perfect-square s the coefficients are exact as stated; for
    non-square s every coefficient carries an irrational global factor
    sqrt(s), so the returned series is scaled by s^{nu + 1/2} to stay inside
    one quadratic field.
    """
    if not (chi.is_even and psi.is_even):
        raise ValueError("lambda_indef needs even characters")
    coeffs: dict = {}
    for r in range(1, T + 1):
        v = 2 * indefinite_double_sum(s, t, chi, psi, nu, r)
        if v:
            coeffs[r] = coeffs.get(r, 0) + v
    psi0 = _psi_at_zero(psi)
    if psi0:
        rho = 1
        while s * rho * rho <= T:
            cv = psi0 * chi(rho)
            if cv:
                # (sqrt(s) rho)^{2nu+1} scaled by s^{nu+1/2} is s^{2nu+1} rho^{2nu+1}
                term = cv * Fraction(s * rho) ** (2 * nu + 1)
                key = s * rho * rho
                coeffs[key] = coeffs.get(key, 0) + term
            rho += 1
    if is_square(s):
        coeffs = {n: _unscale(v, s, nu) for n, v in coeffs.items()}
    return QSeries(coeffs, T)


def delta_indef(s: int, t: int, chi: DirichletCharacter,
                psi: DirichletCharacter, nu: int, T: int) -> QSeries:
    """Delta_{s,t}^{chi,psi}: the same double sum with odd characters and no
    boundary term (psi(0) = 0 for odd psi)."""
    if not (chi.is_odd and psi.is_odd):
        raise ValueError("delta_indef needs odd characters")
    coeffs: dict = {}
    for r in range(1, T + 1):
        v = 2 * indefinite_double_sum(s, t, chi, psi, nu, r)
        if v:
            coeffs[r] = v
    if is_square(s):
        coeffs = {n: _unscale(v, s, nu) for n, v in coeffs.items()}
    return QSeries(coeffs, T)


def orbit_tail_split(s: int, t: int, nu: int, r: int, m_bound: int):
    """Split the trivial-character double sum at m <= m_bound.

    Returns (head, tail): head is the finite sum over solutions with
    m <= m_bound (scaled by s^{nu+1/2}), tail the exact closed-form remainder
    over m > m_bound.  head + tail equals indefinite_double_sum.
    """
    orbits = pell_orbit(s, t, r)
    st = s * t
    x, y = orbits.unit_xy
    D = orbits.D
    c = isqrt(st // D)
    e = 2 * nu + 1
    eps_inv_e = orbits.unit.inverse() ** e
    geom = (1 - eps_inv_e).inverse()
    head, tail = QuadExt(0, 0, D), QuadExt(0, 0, D)
    for m0, n0 in orbits.fundamental_solutions:
        u, n = s * m0, n0
        factor = QuadExt(u, -c * n, D) ** e
        while u // s <= m_bound:
            head = head + factor
            factor = factor * eps_inv_e
            u, n = _advance(u, n, x, y, st)
        tail = tail + factor * geom
    return head, tail


# ---------------------------------------------------------------------------
# The congruence-restricted series of the class number applications


def lambda_pa(p: int, a: int, nu: int, T: int) -> QSeries:
    """Lambda^{(p,a)}_nu: the sum over the residue classes {a, -a} mod p of
    2 sum_{m^2-n^2>0, m,n>=1, m=+-a (p)} (m-n)^{2nu+1} q^{m^2-n^2}
    + sum_{m>=1, m=+-a (p)} m^{2nu+1} q^{m^2}.

    For a = 0 the two sign choices name the same residue class, so the class
    is counted once (no doubling); this is the normalization under which the
    U(4) operator identity for these series holds exactly.
    """
    if not 0 <= a < p:
        raise ValueError("need 0 <= a < p")
    signs = sorted({a % p, (-a) % p})
    e = 2 * nu + 1
    coeffs: dict[int, int] = {}
    for target in signs:
        for u in range(1, T + 1):           # u = m - n
            for v in range(u + 2, T // u + 1):   # v = m + n > u, same parity
                if (v - u) % 2:
                    continue
                m = (u + v) // 2
                if m % p == target:
                    key = u * v
                    coeffs[key] = coeffs.get(key, 0) + 2 * u ** e
        m = 1
        while m * m <= T:
            if m % p == target:
                coeffs[m * m] = coeffs.get(m * m, 0) + m ** e
            m += 1
    return QSeries(coeffs, T)


def d_pa_series(p: int, a: int, k: int, T: int) -> QSeries:
    """D^{(p,a)}_k = sum_n lambda_k^{(p,a)}(n) q^n."""
    from .arith import lambda_k_pa
    return QSeries({n: lambda_k_pa(n, k, p, a) for n in range(1, T + 1)}, T)
