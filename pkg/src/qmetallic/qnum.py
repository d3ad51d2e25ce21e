"""q-deformation of reals presented by continued fractions.

The deformation of a real with (eventually periodic) regular continued
fraction [a0; a1, a2, ...] alternates two bases along the expansion: entries
at even positions contribute [a]_q and a numerator q^a, entries at odd
positions contribute [a]_{1/q} and a numerator q^(-a).  Rationals come out as
ratios of integer polynomials, quadratic irrationals as roots of quadratic
equations over Z[q], and everything else as an integer-coefficient Laurent
series obtained from stabilizing convergents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BranchMismatch,
    InsufficientOrder,
    NonIntegralCoefficient,
    NoStabilization,
)
from .series import (
    INF,
    IntPolynomial,
    LaurentSeries,
    assert_integral,
    constant,
    monomial,
    poly_divexact,
    poly_gcd,
    series_div,
    series_sqrt,
    zero,
)


def q_integer(n: int) -> LaurentSeries:
    """[n]_q as an exact series: 1 + q + ... + q^(n-1) for n >= 0, and
    -(q^-1 + q^-2 + ... + q^n) for n < 0."""
    if n >= 0:
        return LaurentSeries(0, [1] * n, INF)
    return LaurentSeries(n, [-1] * (-n), INF)


def q_integer_recip_base(n: int) -> LaurentSeries:
    """[n]_{1/q} = q^(1-n) [n]_q, as an exact series."""
    return q_integer(n).shift(1 - n)


# -- continued fractions ------------------------------------------------------


@dataclass(frozen=True)
class PeriodicCF:
    """Regular continued fraction with an eventually periodic tail.

    preperiod holds a0, a1, ..., ak (a0 any integer, the rest >= 1); period
    holds the repeating block (entries >= 1), empty for rationals.  The
    canonical rational form forbids a terminal 1 after a0.
    """

    preperiod: tuple
    period: tuple

    def __post_init__(self):
        pre = tuple(int(a) for a in self.preperiod)
        per = tuple(int(a) for a in self.period)
        if not pre:
            raise ValueError("continued fraction needs a leading integer entry")
        if any(a < 1 for a in pre[1:]) or any(a < 1 for a in per):
            raise ValueError("entries after the first must be >= 1")
        if not per and len(pre) > 1 and pre[-1] == 1:
            raise ValueError("non-canonical rational form: terminal entry 1")
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @property
    def is_rational(self) -> bool:
        return not self.period

    def entry(self, i: int) -> int:
        if i < len(self.preperiod):
            return self.preperiod[i]
        if not self.period:
            raise IndexError(i)
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def real_value(self, iterations: int = 64) -> float:
        """Float value, for display only."""
        n = len(self.preperiod) + (len(self.period) * max(1, iterations) if self.period else 0)
        x = float(self.entry(n - 1))
        for i in range(n - 2, -1, -1):
            x = self.entry(i) + 1.0 / x
        return x

    def __str__(self) -> str:
        return cf_to_text(self)


def parse_cf(text: str) -> PeriodicCF:
    """Parse 'a0;a1,a2,...,(p1,p2,...)*' (the periodic part optional)."""
    t = text.strip().replace(" ", "")
    if ";" in t:
        head, rest = t.split(";", 1)
    else:
        head, rest = t, ""
    if not head:
        raise ValueError(f"missing leading entry in {text!r}")
    pre = [int(head)]
    period: list[int] = []
    if rest:
        if "(" in rest:
            plain, par = rest.split("(", 1)
            if not par.endswith(")*"):
                raise ValueError(f"unterminated periodic block in {text!r}")
            period = [int(v) for v in par[:-2].split(",") if v]
            plain = plain.rstrip(",")
            if plain:
                pre += [int(v) for v in plain.split(",") if v]
        else:
            pre += [int(v) for v in rest.split(",") if v]
    return PeriodicCF(tuple(pre), tuple(period))


def cf_to_text(cf: PeriodicCF) -> str:
    head = str(cf.preperiod[0])
    tail = ",".join(str(a) for a in cf.preperiod[1:])
    if cf.period:
        block = "(" + ",".join(str(a) for a in cf.period) + ")*"
        tail = tail + "," + block if tail else block
    return head + ";" + tail if tail else head


def rational_value(cf: PeriodicCF) -> tuple:
    """(r, s) in lowest terms for a rational (period-free) CF."""
    if cf.period:
        raise ValueError("continued fraction has a periodic tail")
    x = Fraction(cf.preperiod[-1])
    for a in reversed(cf.preperiod[:-1]):
        x = a + 1 / x
    return x.numerator, x.denominator


def rational_cf(r: int, s: int) -> PeriodicCF:
    """Canonical (floor-based) continued fraction of r/s, s >= 1."""
    if s < 1:
        raise ValueError("denominator must be >= 1")
    entries = []
    while True:
        a = r // s
        entries.append(a)
        r, s = s, r - a * s
        if s == 0:
            break
    return PeriodicCF(tuple(entries), ())


def _step(a: int, position: int) -> tuple[LaurentSeries, LaurentSeries]:
    """One deformation step: ([a] in the position's base, its q-power)."""
    if position % 2 == 0:
        return q_integer(a), monomial(1, a)
    return q_integer_recip_base(a), monomial(1, -a)


class _Convergents:
    """Numerators/denominators of the deformed convergents, exact series."""

    def __init__(self, cf: PeriodicCF):
        self.cf = cf
        self.k = -1
        one = monomial(1, 0)
        self.num, self.num_prev = one, zero(INF)      # A_{-1}, A_{-2}
        self.den, self.den_prev = zero(INF), one      # C_{-1}, C_{-2}
        self.w_prev = one                             # w_{-1} acts on index -2
        self.gap_val = 0                              # val of prod of w_i, i < k

    def advance(self):
        self.k += 1
        u, w = _step(self.cf.entry(self.k), self.k)
        self.num, self.num_prev = u * self.num + self.w_prev * self.num_prev, self.num
        self.den, self.den_prev = u * self.den + self.w_prev * self.den_prev, self.den
        if self.k >= 1:
            self.gap_val += int(self.w_prev.valuation)
        self.w_prev = w

    def gap_valuation(self) -> int:
        """Exact valuation of (current convergent - previous convergent)."""
        # difference = +-(prod of w_i) / (den * den_prev); the product
        # telescopes through the determinant of the step matrices
        return self.gap_val - int(self.den.valuation) - int(self.den_prev.valuation)

    def value(self, order: int) -> LaurentSeries:
        return series_div(self.num, self.den, order)


def q_real_truncated(cf: PeriodicCF, order: int) -> LaurentSeries:
    """Deformed series of the real with expansion cf, modulo q^order.

    Convergents are deformed until two consecutive ones agree modulo q^order
    (their difference valuations are strictly increasing, so the stabilized
    prefix is the limit's); iteration is capped at 16*order + 64.
    """
    conv = _Convergents(cf)
    conv.advance()
    cap = 16 * order + 64
    if cf.is_rational:
        while conv.k < len(cf.preperiod) - 1:
            conv.advance()
        return assert_integral(conv.value(order), "q_real_truncated")
    while True:
        conv.advance()
        if conv.k >= 2 and conv.gap_valuation() >= order:
            a = conv.value(order)
            b = series_div(conv.num_prev, conv.den_prev, order)
            if not a.eq_mod(b, order):
                raise NoStabilization(
                    f"convergents {conv.k - 1} and {conv.k} disagree below q^{order}"
                )
            return assert_integral(a, "q_real_truncated")
        if conv.k > cap:
            raise NoStabilization(f"no stabilization after {cap} convergents")


# -- rationals ----------------------------------------------------------------


@dataclass(frozen=True)
class QRational:
    """Deformed rational as a reduced ratio of integer polynomials."""

    numerator: IntPolynomial
    denominator: IntPolynomial

    def __post_init__(self):
        if self.denominator.is_zero:
            raise ValueError("denominator polynomial must be nonzero")

    def to_series(self, order: int) -> LaurentSeries:
        return assert_integral(
            series_div(self.numerator.to_series(), self.denominator.to_series(), order),
            "QRational.to_series",
        )

    def __str__(self):
        return f"({self.numerator!r}) / ({self.denominator!r})"


def _laurent_ratio_to_polys(num: LaurentSeries, den: LaurentSeries) -> tuple[IntPolynomial, IntPolynomial]:
    """Clear the common q-power so both exact series become polynomials."""
    m = -min(num.valuation if not num.is_zero else 0,
             den.valuation if not den.is_zero else 0)
    m = max(m, 0)
    n, d = num.shift(m), den.shift(m)
    for s in (n, d):
        if not s.is_zero and s.valuation < 0:
            raise ValueError("ratio does not clear to polynomials")

    def to_poly(s: LaurentSeries) -> IntPolynomial:
        if s.is_zero:
            return IntPolynomial([])
        assert_integral(s, "polynomial ratio")
        return IntPolynomial([0] * s.valuation + list(s.coeffs))

    return to_poly(n), to_poly(d)


def q_rational(r: int, s: int) -> QRational:
    """Deformation of r/s with gcd(r,s)=1, s>=1, as a reduced polynomial ratio."""
    if s < 1:
        raise ValueError("denominator must be >= 1")
    if math.gcd(r, s) != 1:
        raise ValueError("r/s must be in lowest terms")
    conv = _Convergents(rational_cf(r, s))
    for _ in range(len(conv.cf.preperiod)):
        conv.advance()
    num, den = _laurent_ratio_to_polys(conv.num, conv.den)
    g = poly_gcd(num, den)
    if g != IntPolynomial([1]):
        num, den = poly_divexact(num, g), poly_divexact(den, g)
    # lowest nonzero denominator coefficient made positive
    lead = next(c for c in den.coeffs if c != 0)
    if lead < 0:
        num, den = -num, -den
    return QRational(num, den)


# -- quadratic irrationals ----------------------------------------------------


@dataclass(frozen=True)
class QuadraticForm:
    """Deformed quadratic irrational: value = (R + sign*sqrt(P)) / S.

    R, P, S are integer polynomials (P the discriminant, palindromic with
    nonnegative constant term); sqrt(P) denotes the series branch with
    positive leading coefficient.
    """

    R: IntPolynomial
    P: IntPolynomial
    S: IntPolynomial
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +-1")

    def sqrt_disc(self, order: int) -> LaurentSeries:
        """Canonical branch of sqrt(P): positive leading coefficient."""
        p = self.P.to_series()
        v = p.valuation
        if v % 2:
            raise BranchMismatch("discriminant valuation is odd")
        lead = p.coeffs[0]
        k = math.isqrt(lead)
        if k * k != lead:
            raise BranchMismatch("leading discriminant coefficient is not a square")
        unit = (p.shift(-v) * Fraction(1, k * k)).truncate(order)
        root = series_sqrt(unit, order)
        return (root * k).shift(v // 2)

    def to_series(self, order: int) -> LaurentSeries:
        sden = self.S.to_series()
        root = self.sqrt_disc(order + max(0, int(sden.valuation)) + 4)
        num = self.R.to_series() + root * self.sign
        return assert_integral(series_div(num, sden, order), "QuadraticForm.to_series")


def _mobius_of_prefix(cf: PeriodicCF, start: int, count: int):
    """Product of step matrices for positions start..start+count-1, as exact
    series entries ((A, B), (C, D))."""
    one, nul = monomial(1, 0), zero(INF)
    A, B, C, D = one, nul, nul, one
    for i in range(start, start + count):
        u, w = _step(cf.entry(i), i)
        A, B = A * u + B, A * w
        C, D = C * u + D, C * w
    return A, B, C, D


def quantize_quadratic(cf: PeriodicCF, probe_order: int = 10) -> QuadraticForm:
    """Quadratic equation over Z[q] satisfied by the deformed value of a
    quadratic irrational, reduced, with the branch matching the deformed
    series.

    The periodic tail is a fixed point of its own deformed Mobius map (two
    copies of the period when its length is odd, to restore base parity);
    conjugating by the preperiod map gives the equation of the value itself.
    """
    if cf.is_rational:
        raise ValueError("quantize_quadratic needs a periodic continued fraction")
    s = len(cf.preperiod)
    m = len(cf.period)
    if m % 2:
        m *= 2
    A, B, C, D = _mobius_of_prefix(cf, s, m)
    # tail T = (A T + B)/(C T + D)  =>  C T^2 + (D - A) T - B = 0
    if s:
        al, be, ga, de = _mobius_of_prefix(cf, 0, s)
    else:
        al, be, ga, de = monomial(1, 0), zero(INF), zero(INF), monomial(1, 0)
    # x = (al T + be)/(ga T + de)  =>  T = (de x - be)/(-ga x + al)
    DA = D - A
    ax = C * de * de - DA * de * ga - B * ga * ga
    bx = -2 * (C * de * be) + DA * (de * al + be * ga) + 2 * (B * ga * al)
    cx = C * be * be - DA * be * al - B * al * al
    mshift = -min(v for v in (ax.valuation, bx.valuation, cx.valuation) if v != INF)
    mshift = max(mshift, 0)
    polys = []
    for ser in (ax, bx, cx):
        ser = ser.shift(mshift)
        if not ser.is_zero and ser.valuation < 0:
            raise ValueError("quadratic coefficients do not clear to polynomials")
        assert_integral(ser, "quantize_quadratic")
        polys.append(IntPolynomial([0] * int(ser.valuation) + list(ser.coeffs))
                     if not ser.is_zero else IntPolynomial([]))
    a, b, c = polys
    if a.is_zero:
        raise ValueError("expansion is not genuinely quadratic")
    g = poly_gcd(poly_gcd(a, b), c)
    if g != IntPolynomial([1]):
        a, b, c = (poly_divexact(p, g) for p in (a, b, c))
    if next(x for x in a.coeffs if x) < 0:
        a, b, c = -a, -b, -c
    R = -b
    P = b * b - 4 * (a * c)
    S = 2 * a
    # branch: compare t = S*x - R against the canonical sqrt(P)
    margin = 2 + max(0, int(S.to_series().valuation)) + sum(abs(e) for e in cf.preperiod) + 2 * sum(cf.period)
    xhat = q_real_truncated(cf, probe_order + margin)
    t = S.to_series() * xhat - R.to_series()
    if t.is_zero:
        raise BranchMismatch("series sits on the double root")
    if (t * t).first_mismatch(P.to_series(), upto=probe_order) is not None:
        raise BranchMismatch("neither branch reproduces the deformed series")
    if not P.is_palindromic() or P[0] < 0:
        raise ValueError("discriminant invariant violated (palindromic, P(0) >= 0)")
    sign = 1 if t.coeffs[0] > 0 else -1
    return QuadraticForm(R, P, S, sign)


# -- modular group actions ----------------------------------------------------


def shift(x: LaurentSeries, k: int) -> LaurentSeries:
    """Deformation of x + k: q^k x + [k]_q."""
    return x.shift(k) + q_integer(k)


def neg_reciprocal(x: LaurentSeries, target_order: int) -> LaurentSeries:
    """Deformation of -1/x: -1/(q x), modulo q^target_order."""
    return assert_integral(series_div(constant(-1), x.shift(1), target_order),
                           "neg_reciprocal")


def negate(x: LaurentSeries, target_order: int) -> LaurentSeries:
    """Deformation of -x: (-x + 1 - q^-1) / ((q-1) x + 1), modulo q^target_order."""
    num = -x + 1 - monomial(1, -1)
    den = x.shift(1) - x + 1
    return assert_integral(series_div(num, den, target_order), "negate")


def reciprocal(x: LaurentSeries, target_order: int) -> LaurentSeries:
    """Deformation of 1/x: ((q-1) x + 1) / (q x + 1 - q), modulo q^target_order."""
    num = x.shift(1) - x + 1
    den = x.shift(1) + 1 - monomial(1, 1)
    return assert_integral(series_div(num, den, target_order), "reciprocal")
