"""Named, exactly-checked identities between class numbers, divisor sums,
traces of Hecke operators, and indefinite theta series.

Every check returns a :class:`RelationReport` with an explicit index-set
policy, so a report can never silently skip indices.  All arithmetic is
exact (``fractions.Fraction`` or :class:`~qrel.scalars.QuadExt`); a check
passes only when both sides agree on every index in the policy set.

Where a widely printed form of an identity disagrees with direct
evaluation, the checker tests the candidate variants and records in the
report which one holds, rather than assuming either.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from . import forms, holproj
from .arith import (_primes_upto, hurwitz, hurwitz_cache, kronecker_character,
                    lambda_k, sigma_k)
from .qseries import QSeries
from .scalars import PiScalar, QuadExt, gen_binom, factorial


# ---------------------------------------------------------------------------
# Reports


def format_scalar(x) -> str:
    """Serialize an exact scalar: "p/q" for rationals, "a+b*sqrt(D)" for
    real-quadratic values."""
    if isinstance(x, QuadExt):
        a, b = format_scalar(x.a), format_scalar(abs(x.b))
        sign = "+" if x.b >= 0 else "-"
        return f"{a}{sign}{b}*sqrt({x.D})"
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


@dataclass
class RelationReport:
    relation: str
    lo: int
    hi: int
    policy: str
    failures: list[tuple[int, object, object]] = field(default_factory=list)
    elapsed_ms: int = 0
    notes: str = ""
    checked: int = 0

    @property
    def status(self) -> str:
        if self.failures:
            return "fail"
        return "pass" if self.checked > 0 or self.hi < self.lo else "partial"

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, n: int, lhs, rhs) -> None:
        self.checked += 1
        if lhs != rhs:
            self.failures.append((n, lhs, rhs))

    def to_dict(self) -> dict:
        return {
            "relation": self.relation,
            "range": [self.lo, self.hi],
            "policy": self.policy,
            "status": self.status,
            "failures": [{"n": n, "lhs": format_scalar(l), "rhs": format_scalar(r)}
                         for n, l, r in self.failures],
            "elapsed_ms": self.elapsed_ms,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def summary_line(self) -> str:
        extra = f"  [{self.notes}]" if self.notes else ""
        tail = "" if self.ok else f"  ({len(self.failures)} failures)"
        return (f"{self.relation:<22} [{self.lo},{self.hi}] {self.policy:<28} "
                f"{self.status}{tail}{extra}")


class _Timer:
    def __init__(self, report: RelationReport):
        self.report = report

    def __enter__(self):
        self._t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.elapsed_ms = int((time.perf_counter() - self._t0) * 1000)
        return False


# ---------------------------------------------------------------------------
# Classical class number relations


def check_eichler(max_n: int = 2000) -> RelationReport:
    """sum_s H(n - s^2) + lambda_1(n) = sigma_1(n)/3 for odd n."""
    rep = RelationReport("eichler", 1, max_n, "odd n")
    with _Timer(rep):
        hurwitz_cache().ensure(max_n)
        for n in range(1, max_n + 1, 2):
            lhs = sum(hurwitz(n - s * s)
                      for s in range(-isqrt(n), isqrt(n) + 1)) + lambda_k(n, 1)
            rep.record(n, lhs, Fraction(sigma_k(n, 1), 3))
    return rep


def check_cohen(max_n: int = 2000) -> RelationReport:
    """sum_s (4s^2 - n) H(n - s^2) + lambda_3(n) = 0 for odd n."""
    rep = RelationReport("cohen", 1, max_n, "odd n")
    with _Timer(rep):
        hurwitz_cache().ensure(max_n)
        for n in range(1, max_n + 1, 2):
            lhs = sum((4 * s * s - n) * hurwitz(n - s * s)
                      for s in range(-isqrt(n), isqrt(n) + 1)) + lambda_k(n, 3)
            rep.record(n, lhs, Fraction(0))
    return rep


def check_kronecker_hurwitz(max_n: int = 2000) -> RelationReport:
    """sum_s H(4n - s^2) +- 2*lambda_1(n) = 2*sigma_1(n), all n.

    The two sign variants are in circulation; this checker tests both and
    reports which one holds uniformly.  Failures are reported against the
    better variant.
    """
    rep = RelationReport("kronecker_hurwitz", 1, max_n, "all n")
    with _Timer(rep):
        hurwitz_cache().ensure(4 * max_n)
        plus_fail, minus_fail = [], []
        for n in range(1, max_n + 1):
            tot = sum(hurwitz(4 * n - s * s)
                      for s in range(-isqrt(4 * n), isqrt(4 * n) + 1))
            lam, rhs = 2 * lambda_k(n, 1), 2 * sigma_k(n, 1)
            if tot + lam != rhs:
                plus_fail.append((n, tot + lam, Fraction(rhs)))
            if tot - lam != rhs:
                minus_fail.append((n, tot - lam, Fraction(rhs)))
        if len(plus_fail) <= len(minus_fail):
            rep.failures, variant = plus_fail, "+2*lambda_1"
        else:
            rep.failures, variant = minus_fail, "-2*lambda_1"
        rep.checked = max_n
        rep.notes = f"variant that holds: {variant}"
        if plus_fail and minus_fail:
            rep.notes = "neither sign variant holds uniformly"
    return rep


# ---------------------------------------------------------------------------
# Trace formulas


def g_coeff(s: int, n: int, nu: int, *, double_s: bool) -> int:
    """Coefficient of X^{2 nu} in 1/(1 - S X + n X^2), with S = 2s when
    ``double_s`` else S = s, via the linear recurrence
    c_j = S c_{j-1} - n c_{j-2}."""
    if nu == 0:
        return 1
    S = 2 * s if double_s else s
    c0, c1 = 1, S
    for _ in range(2 * nu - 1):
        c0, c1 = c1, S * c1 - n * c0
    return c1


_TRACE1_DEFAULT_MAX = {1: 500, 2: 500, 3: 500, 4: 500, 5: 300}
_TRACE4_DEFAULT_MAX = {1: 999, 2: 301}


def check_trace_level1(nu: int, max_n: int | None = None) -> RelationReport:
    """-(1/2) sum_s g_nu(s,n) H(4n - s^2) - lambda_{2nu+1}(n) equals the
    trace of the n-th Hecke operator on level-1 cusp forms of weight
    2nu + 2: zero for nu in 1..4, the discriminant-form coefficient tau(n)
    for nu = 5."""
    if nu not in _TRACE1_DEFAULT_MAX:
        raise ValueError(f"no trace oracle for nu={nu}; supported: 1..5")
    if max_n is None:
        max_n = _TRACE1_DEFAULT_MAX[nu]
    rep = RelationReport(f"trace1_nu{nu}", 1, max_n, "all n")
    with _Timer(rep):
        hurwitz_cache().ensure(4 * max_n)
        tau = forms.delta12(max_n) if nu == 5 else None
        for n in range(1, max_n + 1):
            tot = sum(g_coeff(s, n, nu, double_s=False) * hurwitz(4 * n - s * s)
                      for s in range(-isqrt(4 * n), isqrt(4 * n) + 1))
            lhs = -Fraction(1, 2) * tot - lambda_k(n, 2 * nu + 1)
            rhs = Fraction(tau.coeff(n)) if tau is not None else Fraction(0)
            rep.record(n, lhs, rhs)
    return rep


def check_trace_level4(nu: int, max_n: int | None = None) -> RelationReport:
    """-3 sum_s g_nu(2s-form; s,n) H(n - s^2) - 3 lambda_{2nu+1}(n) equals
    the trace on level-4 cusp forms of weight 2nu + 2 for odd n: zero for
    nu = 1, the coefficients of the weight-6 eta product on level 4 for
    nu = 2."""
    if nu not in _TRACE4_DEFAULT_MAX:
        raise ValueError(f"no trace oracle for nu={nu}; supported: 1, 2")
    if max_n is None:
        max_n = _TRACE4_DEFAULT_MAX[nu]
    rep = RelationReport(f"trace4_nu{nu}", 1, max_n, "odd n")
    with _Timer(rep):
        hurwitz_cache().ensure(max_n)
        eta = forms.eta2_pow12(max_n) if nu == 2 else None
        for n in range(1, max_n + 1, 2):
            tot = sum(g_coeff(s, n, nu, double_s=True) * hurwitz(n - s * s)
                      for s in range(-isqrt(n), isqrt(n) + 1))
            lhs = -3 * tot - 3 * lambda_k(n, 2 * nu + 1)
            rhs = Fraction(eta.coeff(n)) if eta is not None else Fraction(0)
            rep.record(n, lhs, rhs)
    return rep


# ---------------------------------------------------------------------------
# Residue-restricted class number sums


def hap(a: int, p: int, n: int) -> Fraction:
    """H_{a,p}(n) = sum over s = a (mod p) of H(4n - s^2)."""
    smax = isqrt(4 * n)
    s0 = a % p
    start = s0 - ((s0 + smax) // p) * p
    return sum((hurwitz(4 * n - s * s) for s in range(start, smax + 1, p)),
               Fraction(0))


def hap5_closed_form(a: int, ell: int) -> Fraction | None:
    """Closed form for H_{a,5}(ell), ell a prime other than 5, in the six
    cases where one exists; None outside them."""
    a, r = a % 5, ell % 5
    am = min(a, 5 - a) if a else 0
    if am == 0 and r == 1:
        return Fraction(ell + 1, 2)
    if am == 0 and r in (2, 3):
        return Fraction(ell + 1, 3)
    if am == 1 and r in (1, 2):
        return Fraction(ell + 1, 3)
    if am == 1 and r == 4:
        return Fraction(5 * ell + 5, 12)
    if am == 2 and r == 1:
        return Fraction(5 * ell - 7, 12)
    if am == 2 and r in (3, 4):
        return Fraction(ell + 1, 3)
    return None


def check_hap_table(max_prime: int = 200) -> RelationReport:
    """H_{a,5}(ell) matches its closed form for every prime ell != 5 up to
    max_prime and every residue a mod 5."""
    rep = RelationReport("hap_table", 2, max_prime,
                         "prime ell != 5, a mod 5, tabulated cases")
    with _Timer(rep):
        hurwitz_cache().ensure(4 * max_prime)
        for ell in _primes_upto(max_prime):
            if ell == 5:
                continue
            for a in range(5):
                want = hap5_closed_form(a, ell)
                if want is None:
                    continue
                rep.record(10 * ell + a, hap(a, 5, ell), want)
    return rep


# ---------------------------------------------------------------------------
# Quasi-modular identities on level 25 and 49


def check_cor_i(max_n: int = 1000) -> RelationReport:
    """Level-25 weight-2 identity:

        (H * theta^{(5,0)})|U(4) + 5 D_1^{(1,0)}|V(25)
          + 2 D_1^{(5,1)}|S_{5,4} + 2 D_1^{(5,2)}|S_{5,r}
        = (1/2) G_2 + (1/12) (G_2 (x) chi_5 - G_2 (x) chi_5^2)
          - G_2|V(5) + (5/2) G_2|V(25).

    The sieve residue r on the D_1^{(5,2)} term circulates both as 4 and
    as 1; both are tested and the report records which closes the
    identity.  The twist expression "G_2 (x) chi_5(1 - chi_5)" has two
    readings (twist by n -> chi_5(n) - chi_5(n)^2, versus the difference
    of the two twisted series); they are pointwise identical, which the
    checker also confirms.
    """
    rep = RelationReport("cor_i", 0, max_n, "all n")
    with _Timer(rep):
        T = max_n
        hurwitz_cache().ensure(4 * T)
        chi5 = kronecker_character(5)
        base = (forms.hurwitz_series(4 * T) * forms.theta_congruence(5, 0, 4 * T)).u_op(4)
        g2 = forms.eisenstein_g2(T)
        twist_diff = g2.twist(chi5) - g2.twist(lambda n: chi5(n) ** 2)
        twist_fn = g2.twist(lambda n: chi5(n) * (1 - chi5(n)))
        readings_agree = twist_diff == twist_fn
        rhs = (g2.scale(Fraction(1, 2))
               + twist_diff.scale(Fraction(1, 12))
               - g2.v_op(5).truncate(T)
               + g2.v_op(25).truncate(T).scale(Fraction(5, 2)))
        d10 = holproj.d_pa_series(1, 0, 1, -(-T // 25)).v_op(25).scale(5).truncate(T)
        common = (base + d10
                  + holproj.d_pa_series(5, 1, 1, T).sieve(5, 4).scale(2))
        d52 = holproj.d_pa_series(5, 2, 1, T)
        variants = {4: common + d52.sieve(5, 4).scale(2),
                    1: common + d52.sieve(5, 1).scale(2)}
        fails = {r: [(n, lhs.coeff(n), rhs.coeff(n)) for n in range(T + 1)
                     if lhs.coeff(n) != rhs.coeff(n)]
                 for r, lhs in variants.items()}
        best = min(fails, key=lambda r: (len(fails[r]), r))
        rep.failures = fails[best]
        rep.checked = T + 1
        rep.notes = (f"sieve residue on D_1^(5,2): {best}; "
                     f"twist readings pointwise equal: {readings_agree}")
        if not readings_agree:
            rep.failures = rep.failures or [(0, Fraction(0), Fraction(1))]
    return rep


def check_cor_ii(max_n: int = 500) -> RelationReport:
    """Level-49 weight-2 identity on n supported on primes >= 5, != 7:

        (H * theta^{(7,0)})|U(4) + 7 D_1^{(1,0)}|V(49)
          + 2 D_1^{(7,2)}|S_{7,3} + 2 D_1^{(7,4)}|S_{7,5} + 2 D_1^{(7,1)}|S_{7,6}
        = (1/4) G_2 - (1/24) G_2 (x) (chi_7 - chi_7^2) + (1/4) g_7,

    with g_7 the weight-2 newform built from point counts on
    y^2 = x^3 - 2835 x - 71442 plus the Hecke recursion.
    """
    rep = RelationReport("cor_ii", 1, max_n,
                         "n with prime support >= 5 and != 7")
    with _Timer(rep):
        T = max_n
        hurwitz_cache().ensure(4 * T)
        chi7 = kronecker_character(7)
        base = (forms.hurwitz_series(4 * T) * forms.theta_congruence(7, 0, 4 * T)).u_op(4)
        lhs = (base
               + holproj.d_pa_series(1, 0, 1, -(-T // 49)).v_op(49).scale(7).truncate(T)
               + holproj.d_pa_series(7, 2, 1, T).sieve(7, 3).scale(2)
               + holproj.d_pa_series(7, 4, 1, T).sieve(7, 5).scale(2)
               + holproj.d_pa_series(7, 1, 1, T).sieve(7, 6).scale(2))
        g2 = forms.eisenstein_g2(T)
        g7 = forms.g7(T)
        for n in forms.g7_support(T):
            rhs = (Fraction(1, 4) * g2.coeff(n)
                   - Fraction(1, 24) * (chi7(n) - chi7(n) ** 2) * g2.coeff(n)
                   + Fraction(1, 4) * g7.coeff(n))
            rep.record(n, lhs.coeff(n), rhs)
    return rep


# ---------------------------------------------------------------------------
# Residue-class partial sums and their image under U(4)


def w_term(p: int, a: int, e: int, T: int) -> QSeries:
    """2 sum over divisors alpha of n with alpha < sqrt(n), alpha = 0 (p),
    n/alpha = +-a (p), of alpha^e."""
    coeffs: dict[int, int] = {}
    targets = {a % p, (-a) % p}
    for alpha in range(p, isqrt(T) + 1, p):
        for n in range(alpha * (alpha + 1), T + 1, alpha):
            if (n // alpha) % p in targets:
                coeffs[n] = coeffs.get(n, 0) + 2 * alpha ** e
    return QSeries(coeffs, T)


def prop72_rhs(p: int, a: int, nu: int, T: int) -> QSeries:
    """Divisor-sum expansion of Lambda^{(p,a)}_nu | U(4).

    For a = 0 this is the commonly printed form; for a != 0 the printed
    form omits one of the two residue families and misstates the
    square-divisor threshold, and the corrected assembly below is the one
    that holds (verified exactly for p in {5,7}, nu in {0,1}, n <= 500).
    """
    e = 2 * nu + 1
    total = QSeries.zero(T)
    if a % p == 0:
        for c in range(1, p):
            total = total + holproj.d_pa_series(p, c, e, T).sieve(p, (-c * c) % p)
        total = total + (holproj.d_pa_series(1, 0, e, max(-(-T // (p * p)), 1))
                         .v_op(p * p).scale(p ** e).truncate(T))
    else:
        for c in range(1, p):
            if c != a % p:
                total = total + (holproj.d_pa_series(p, c, e, T)
                                 .sieve(p, (c * (a - c)) % p))
            if c != (-a) % p:
                total = total + (holproj.d_pa_series(p, c, e, T)
                                 .sieve(p, (c * (-a - c)) % p))
        total = total + (holproj.d_pa_series(p, a % p, e, T)
                         + holproj.d_pa_series(p, (-a) % p, e, T)).sieve(p, 0)
        total = total + w_term(p, a, e, T)
    return total.scale(2 ** e)


def check_prop72(max_n: int = 500, primes: tuple[int, ...] = (5, 7),
                 nus: tuple[int, ...] = (0, 1)) -> RelationReport:
    """Lambda^{(p,a)}_nu | U(4) equals its divisor-sum expansion for every
    residue a, coefficientwise."""
    rep = RelationReport("prop72", 1, max_n,
                         f"all n; p in {list(primes)}, nu in {list(nus)}, all a")
    with _Timer(rep):
        for p in primes:
            for nu in nus:
                for a in range(p):
                    lhs = holproj.lambda_pa(p, a, nu, 4 * max_n).u_op(4)
                    rhs = prop72_rhs(p, a, nu, max_n)
                    for n in range(1, max_n + 1):
                        le, ri = lhs.coeff(n), rhs.coeff(n)
                        rep.checked += 1
                        if le != ri:
                            rep.failures.append((n, Fraction(le), Fraction(ri)))
    return rep


# ---------------------------------------------------------------------------
# Exact combinatorial and polynomial identity suite


def _binomial_identity_even(nu_max: int) -> list[tuple[int, object, object]]:
    """sum_mu (-1)^mu/(mu - j + 1/2) * (4nu-2mu-1)! / ((2(nu-mu))! (2nu-mu-1)! mu!)
    = 2^{4nu} (-1)^j (2nu-j)! j! / ((2j)! (2(nu-j)+1)!), for nu > 0."""
    bad = []
    for nu in range(1, nu_max + 1):
        for j in range(nu + 1):
            lhs = sum(Fraction((-1) ** mu) / (Fraction(2 * (mu - j) + 1, 2))
                      * Fraction(factorial(4 * nu - 2 * mu - 1),
                                 factorial(2 * (nu - mu))
                                 * factorial(2 * nu - mu - 1) * factorial(mu))
                      for mu in range(nu + 1))
            rhs = Fraction(2 ** (4 * nu) * (-1) ** j
                           * factorial(2 * nu - j) * factorial(j),
                           factorial(2 * j) * factorial(2 * (nu - j) + 1))
            if lhs != rhs:
                bad.append((100 * nu + j, lhs, rhs))
    return bad


def _binomial_identity_odd(nu_max: int) -> list[tuple[int, object, object]]:
    """sum_mu (-1)^mu/(2(j-mu)+1) * (4nu-2mu+1)! / ((2(nu-mu)+1)! (2nu-mu)! mu!)
    = (-1)^j 2^{4nu} (2nu-j)! j! / ((2(nu-j))! (2j+1)!)."""
    bad = []
    for nu in range(nu_max + 1):
        for j in range(nu + 1):
            lhs = sum(Fraction((-1) ** mu, 2 * (j - mu) + 1)
                      * Fraction(factorial(4 * nu - 2 * mu + 1),
                                 factorial(2 * (nu - mu) + 1)
                                 * factorial(2 * nu - mu) * factorial(mu))
                      for mu in range(nu + 1))
            rhs = Fraction((-1) ** j * 2 ** (4 * nu)
                           * factorial(2 * nu - j) * factorial(j),
                           factorial(2 * (nu - j)) * factorial(2 * j + 1))
            if lhs != rhs:
                bad.append((100 * nu + j, lhs, rhs))
    return bad


def _p_poly_rewrites(a_max: int) -> list[tuple[int, object, object]]:
    """The two closed rewrites of P_{a,b}: as sum_j C(a+b-3,j) X^j Y^{a-2-j}
    and as sum_j C(a+b-3,a-2-j) C(j+b-2,j) (X+Y)^{a-2-j} (-Y)^j, for
    half-integer b not in {1, 2}."""
    bad = []
    bs = (Fraction(-3, 2), Fraction(-1, 2), Fraction(1, 2),
          Fraction(5, 2), Fraction(7, 2))
    xy = {(1, 0): Fraction(1), (0, 1): Fraction(1)}
    for a in range(2, a_max + 1):
        for bi, b in enumerate(bs):
            P = holproj.p_poly(a, b)
            alt1: dict = {}
            alt2: dict = {}
            for j in range(a - 1):
                alt1 = holproj.poly_add(alt1, {(j, a - 2 - j): gen_binom(a + b - 3, j)})
                c = gen_binom(a + b - 3, a - 2 - j) * gen_binom(j + b - 2, j)
                alt2 = holproj.poly_add(
                    alt2, holproj.poly_mul({(0, j): c * (-1) ** j},
                                           holproj.poly_pow(xy, a - 2 - j)))
            if _poly_nonzero(holproj.poly_add(P, _poly_neg(alt1))) \
                    or _poly_nonzero(holproj.poly_add(P, _poly_neg(alt2))):
                bad.append((10 * a + bi, Fraction(0), Fraction(1)))
    return bad


def _poly_neg(P: dict) -> dict:
    return {k: -v for k, v in P.items()}


def _poly_nonzero(P: dict) -> bool:
    return any(v != 0 for v in P.values())


_XSUB = {(2, 0): Fraction(1), (0, 2): Fraction(-1)}   # r = x^2 - y^2
_YSUB = {(0, 2): Fraction(1)}                          # n = y^2


def _subst_squares(P: dict) -> dict:
    out: dict = {}
    for (i, j), c in P.items():
        out = holproj.poly_add(
            out, holproj.poly_mul({(0, 0): Fraction(c)},
                                  holproj.poly_mul(holproj.poly_pow(_XSUB, i),
                                                   holproj.poly_pow(_YSUB, j))))
    return out


def _closed_sum_even(nu_max: int) -> list[tuple[int, object, object]]:
    """sum_mu C(nu+1/2, nu-mu) C(nu-1/2, mu)
    (m^{1/2-nu} P_{2nu+2,1/2-mu}(m-n, n) - n^{1/2+mu} m^{nu-mu})
    = 2^{-2nu} C(2nu,nu) (sqrt(m) - sqrt(n))^{2nu+1}, as a polynomial
    identity after m = x^2, n = y^2 (cleared of half powers by x^{2nu-1};
    the nu = 0 case is checked pointwise since that factor is 1/x)."""
    bad = []
    xmy = {(1, 0): Fraction(1), (0, 1): Fraction(-1)}
    for nu in range(nu_max + 1):
        if nu == 0:
            for x in (2, 3, 5, 7):
                for y in (1, 2, 3, 4):
                    P = holproj.p_poly(2, Fraction(1, 2))
                    got = (Fraction(x)
                           * holproj.poly_eval(P, Fraction(x * x - y * y),
                                               Fraction(y * y))
                           - Fraction(y))
                    if got != Fraction(x - y):
                        bad.append((x * 10 + y, got, Fraction(x - y)))
            continue
        lhs: dict = {}
        for mu in range(nu + 1):
            c = (gen_binom(Fraction(2 * nu + 1, 2), nu - mu)
                 * gen_binom(Fraction(2 * nu - 1, 2), mu))
            lhs = holproj.poly_add(
                lhs, holproj.poly_mul({(0, 0): c}, _subst_squares(
                    holproj.p_poly(2 * nu + 2, Fraction(1 - 2 * mu, 2)))))
            lhs = holproj.poly_add(lhs, {(4 * nu - 2 * mu - 1, 2 * mu + 1): -c})
        rhs = holproj.poly_mul(
            {(2 * nu - 1, 0): Fraction(2) ** (-2 * nu) * gen_binom(2 * nu, nu)},
            holproj.poly_pow(xmy, 2 * nu + 1))
        if _poly_nonzero(holproj.poly_add(lhs, _poly_neg(rhs))):
            bad.append((nu, Fraction(0), Fraction(1)))
    return bad


def _closed_sum_odd(nu_max: int) -> list[tuple[int, object, object]]:
    """sum_mu C(nu-1/2, nu-mu) C(nu+1/2, mu)
    (m^{-nu-1/2} P_{2nu+2,3/2-mu}(m-n, n) - n^{mu-1/2} m^{nu-mu})
    = -2^{-2nu} C(2nu,nu) (mn)^{-1/2} (sqrt(m) - sqrt(n))^{2nu+1},
    as a polynomial identity after m = x^2, n = y^2 (cleared by
    x^{2nu+1} y)."""
    bad = []
    xmy = {(1, 0): Fraction(1), (0, 1): Fraction(-1)}
    for nu in range(nu_max + 1):
        lhs: dict = {}
        for mu in range(nu + 1):
            c = (gen_binom(Fraction(2 * nu - 1, 2), nu - mu)
                 * gen_binom(Fraction(2 * nu + 1, 2), mu))
            lhs = holproj.poly_add(
                lhs, holproj.poly_mul({(0, 1): c}, _subst_squares(
                    holproj.p_poly(2 * nu + 2, Fraction(3 - 2 * mu, 2)))))
            lhs = holproj.poly_add(lhs, {(4 * nu - 2 * mu + 1, 2 * mu): -c})
        rhs = holproj.poly_mul(
            {(2 * nu, 0): -Fraction(2) ** (-2 * nu) * gen_binom(2 * nu, nu)},
            holproj.poly_pow(xmy, 2 * nu + 1))
        if _poly_nonzero(holproj.poly_add(lhs, _poly_neg(rhs))):
            bad.append((nu, Fraction(0), Fraction(1)))
    return bad


def _kappa_closed_form(nu_max: int) -> list[tuple[int, object, object]]:
    """kappa(3/2, 1/2, nu) = 2^{1-2nu} sqrt(pi) C(2nu, nu)."""
    bad = []
    for nu in range(nu_max + 1):
        got = holproj.kappa(holproj.BracketSpec(Fraction(3, 2), Fraction(1, 2), nu))
        want = PiScalar(Fraction(2) ** (1 - 2 * nu) * gen_binom(2 * nu, nu), 1)
        if got != want:
            bad.append((nu, got.r, want.r))
    return bad


def check_identities() -> RelationReport:
    """Runs the exact combinatorial identity suite: the two P_{a,b}
    rewrites, the even and odd binomial summation identities, the two
    closed summation formulas after the square substitution, and the
    closed form of the projection constant kappa."""
    rep = RelationReport("identities", 0, 0,
                         "p_poly a<=12; binomial nu<=40; closed sums nu<=8; "
                         "kappa nu<=20")
    with _Timer(rep):
        suites = [
            ("p_poly_rewrites", _p_poly_rewrites(12)),
            ("binomial_even", _binomial_identity_even(40)),
            ("binomial_odd", _binomial_identity_odd(40)),
            ("closed_sum_even", _closed_sum_even(8)),
            ("closed_sum_odd", _closed_sum_odd(8)),
            ("kappa_closed_form", _kappa_closed_form(20)),
        ]
        for base, (name, bad) in enumerate(suites):
            rep.checked += 1
            rep.failures.extend((base * 100000 + idx, l, r) for idx, l, r in bad)
        rep.notes = "; ".join(name for name, _ in suites)
    return rep


# ---------------------------------------------------------------------------
# Registry


_REGISTRY: dict[str, object] = {
    "eichler": lambda max_n=None: check_eichler(max_n or 2000),
    "cohen": lambda max_n=None: check_cohen(max_n or 2000),
    "kronecker_hurwitz": lambda max_n=None: check_kronecker_hurwitz(max_n or 2000),
    "trace1_nu1": lambda max_n=None: check_trace_level1(1, max_n),
    "trace1_nu2": lambda max_n=None: check_trace_level1(2, max_n),
    "trace1_nu3": lambda max_n=None: check_trace_level1(3, max_n),
    "trace1_nu4": lambda max_n=None: check_trace_level1(4, max_n),
    "trace1_nu5": lambda max_n=None: check_trace_level1(5, max_n),
    "trace4_nu1": lambda max_n=None: check_trace_level4(1, max_n),
    "trace4_nu2": lambda max_n=None: check_trace_level4(2, max_n),
    "hap_table": lambda max_n=None: check_hap_table(max_n or 200),
    "cor_i": lambda max_n=None: check_cor_i(max_n or 1000),
    "cor_ii": lambda max_n=None: check_cor_ii(max_n or 500),
    "prop72": lambda max_n=None: check_prop72(max_n or 500),
    "identities": lambda max_n=None: check_identities(),
}


def relation_ids() -> list[str]:
    return list(_REGISTRY)


def run_check(relation_id: str, max_n: int | None = None) -> RelationReport:
    if relation_id not in _REGISTRY:
        raise KeyError(f"unknown relation {relation_id!r}; "
                       f"known: {', '.join(_REGISTRY)}")
    return _REGISTRY[relation_id](max_n)


def verify_all(max_n: int | None = None) -> list[RelationReport]:
    """Run every registered check, in registry order, at its default range
    (or at max_n for all of them when given)."""
    return [run_check(rid, max_n) for rid in _REGISTRY]
