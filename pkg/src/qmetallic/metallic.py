"""Series engines for the q-deformed metallic numbers.

The deformed value of the metallic number with trace n (continued fraction
[n; n, n, ...]) is a power series F(q) = sum kappa_l q^l with integer
coefficients.  It satisfies the quadratic equation

    q F^2 = R F + 1,      R = q [n]_q + (q^n + 1)(q - 1),

whose discriminant R^2 + 4q factors as (1 - q + q^2) * Q with Q palindromic.
Four independent engines produce the coefficients: the quadratic equation by
convolution, a linear recurrence with degree-1 polynomial coefficients
(driven by the discriminant), the explicit square root of the discriminant,
and closed-form binomial sums for n = 1, 2, 3.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import NonExactDivision, NonIntegralResult
from .series import (
    IntPolynomial,
    LaurentSeries,
    assert_integral,
    series_sqrt,
)

ENGINE_TAGS = ("conv", "precurrence", "closedform", "sqrt")


def _check_n(n: int) -> int:
    n = int(n)
    if n < 1:
        raise ValueError("metallic index must be >= 1")
    return n


# -- characteristic polynomials ------------------------------------------------


def poly_R(n: int) -> IntPolynomial:
    """Linear coefficient of the quadratic equation: q [n]_q + (q^n+1)(q-1)."""
    n = _check_n(n)
    qn = IntPolynomial([0] + [1] * n)  # q * [n]_q
    edge = IntPolynomial([0] * n + [1]) + 1  # q^n + 1
    return qn + edge * IntPolynomial([-1, 1])


def poly_Q(n: int) -> IntPolynomial:
    """Reduced discriminant factor: [n+1]_q^2 - q [2n-1]_q + 2 q^n."""
    n = _check_n(n)
    a = IntPolynomial([1] * (n + 1))
    b = IntPolynomial([0] + [1] * (2 * n - 1))
    return a * a - b + IntPolynomial([0] * n + [2])


def poly_P(n: int) -> IntPolynomial:
    """Discriminant R^2 + 4q; factors as (1 - q + q^2) * Q (checked)."""
    n = _check_n(n)
    r = poly_R(n)
    p = r * r + IntPolynomial([0, 4])
    if p != IntPolynomial([1, -1, 1]) * poly_Q(n):
        raise AssertionError("discriminant factorization failed")
    return p


# -- coefficient tables ---------------------------------------------------------


@dataclass(frozen=True)
class CoeffTable:
    """First `upto` series coefficients (exponents 0..upto-1) for index n."""

    n: int
    upto: int
    values: tuple
    engine: str

    def __post_init__(self):
        if self.engine not in ENGINE_TAGS:
            raise ValueError(f"unknown engine tag {self.engine!r}")
        if len(self.values) != self.upto:
            raise ValueError("length does not match upto")
        n = self.n
        head = self.values[: n + 1]
        if head != tuple([1] * min(n, self.upto) + ([0] if self.upto > n else [])):
            raise ValueError("series must start with n ones then a zero")
        if self.upto > 2 * n and self.values[2 * n] != 1:
            raise ValueError("coefficient at exponent 2n must be 1")

    def to_series(self) -> LaurentSeries:
        return LaurentSeries(0, list(self.values), self.upto)

    def __getitem__(self, l: int) -> int:
        return self.values[l]


@dataclass(frozen=True)
class RecurrenceSpec:
    """Linear recurrence sum_j c_j(l) kappa_{l-j} = 0 with c_j(l) = a j-th
    pair (a, b) meaning a*l + b; lags run 0..order, zero pairs included."""

    n: int
    order: int
    valid_from: int
    coeff_polys: tuple

    def coefficient(self, lag: int, l: int) -> int:
        a, b = self.coeff_polys[lag]
        return a * l + b

    def nonzero_lags(self) -> tuple:
        return tuple(j for j, (a, b) in enumerate(self.coeff_polys) if a or b)


def recurrence_spec(n: int) -> RecurrenceSpec:
    """Polynomial-coefficient recurrence satisfied by the coefficients from
    l = 2n+2 on; lag-j coefficient is p_j (2l + 2 - 3j) (halved for n <= 2),
    with p_j the discriminant coefficients."""
    n = _check_n(n)
    p = poly_P(n)
    pairs = []
    for j in range(2 * n + 3):
        a, b = 2 * p[j], (2 - 3 * j) * p[j]
        if n <= 2:
            a, b = a // 2, b // 2
        pairs.append((a, b))
    return RecurrenceSpec(n=n, order=2 * n + 2, valid_from=2 * n + 2,
                          coeff_polys=tuple(pairs))


def _conv_values(n: int, L: int) -> list:
    """Coefficients 0..L-1 from the quadratic equation by convolution."""
    r = poly_R(n)
    rc = r.coeffs  # r[0] == -1
    seeds = [1] * n + [0]
    vals = seeds[:L]
    for l in range(len(vals), L):
        conv = 0
        for i in range(l):  # [q^(l-1)] F^2
            conv += vals[i] * vals[l - 1 - i]
        acc = -conv
        for j in range(1, min(l, len(rc) - 1) + 1):
            cj = rc[j]
            if cj:
                acc += cj * vals[l - j]
        vals.append(acc)
    return vals


def _p_extend(n: int, vals: list, L: int, spec: RecurrenceSpec | None = None) -> list:
    """Extend a table in place to length L using the polynomial recurrence.
    Needs len(vals) >= valid_from."""
    spec = spec or recurrence_spec(n)
    if len(vals) < spec.valid_from:
        raise ValueError("not enough seed values to run the recurrence")
    lags = [(j, ab) for j, ab in enumerate(spec.coeff_polys) if j and ab != (0, 0)]
    a0, b0 = spec.coeff_polys[0]
    for l in range(len(vals), L):
        acc = 0
        for j, (a, b) in lags:
            acc += (a * l + b) * vals[l - j]
        lead = a0 * l + b0
        q, rem = divmod(-acc, lead)
        if rem:
            raise NonExactDivision(
                f"recurrence step at exponent {l} is not divisible by {lead}"
            )
        vals.append(q)
    return vals


def coeffs_convolution(n: int, L: int) -> CoeffTable:
    n = _check_n(n)
    return CoeffTable(n, L, tuple(_conv_values(n, L)), "conv")


def coeffs_p_recurrence(n: int, L: int) -> CoeffTable:
    """Seeds below 2n+2 come from the convolution engine; everything above is
    one exact-division step per coefficient."""
    n = _check_n(n)
    seed_len = min(L, 2 * n + 2)
    vals = _conv_values(n, seed_len)
    if L > seed_len:
        _p_extend(n, vals, L)
    return CoeffTable(n, L, tuple(vals), "precurrence")


def phi_series_sqrt(n: int, L: int) -> LaurentSeries:
    """The deformed metallic series modulo q^L via (R + sqrt(P)) / (2q)."""
    n = _check_n(n)
    root = series_sqrt(poly_P(n).to_series().truncate(L + 1), L + 1)
    num = (poly_R(n).to_series() + root) * Fraction(1, 2)
    return assert_integral(num.shift(-1).truncate(L), "phi_series_sqrt")


def coeffs_sqrt(n: int, L: int) -> CoeffTable:
    s = phi_series_sqrt(n, L)
    return CoeffTable(n, L, tuple(s.coefficients(0, L)), "sqrt")


# -- closed forms (n = 1, 2, 3) --------------------------------------------------


def multinomial(j: int, parts) -> int:
    """Multinomial coefficient j! / prod(parts!), 0 when any part is negative.
    The parts must sum to j."""
    ps = list(parts)
    if any(p < 0 for p in ps):
        return 0
    if sum(ps) != j:
        raise ValueError("multinomial parts must sum to j")
    out = 1
    rest = j
    for p in ps[:-1]:
        out *= math.comb(rest, p)
        rest -= p
    return out


def closed_form_golden(l: int) -> int:
    """Signed Narayana-sum closed form for n = 1."""
    if l < 0:
        raise ValueError("negative exponent")
    if l < 2:
        return (1, 0)[l]
    total = Fraction(0)
    for k in range(1, l // 2 + 1):
        total += Fraction(math.comb(l - k, k) * math.comb(l - k, k - 1), l - k)
    if total.denominator != 1:
        raise NonIntegralResult(f"golden closed form at {l}: {total}")
    return (-1) ** l * total.numerator


def closed_form_silver(l: int) -> int:
    """Binomial double-sum closed form for n = 2."""
    if l < 0:
        raise ValueError("negative exponent")
    if l < 4:
        return (1, 1, 0, 0)[l]
    total = Fraction(0)
    for j in range((l + 1) // 3, (l - 2) // 2 + 1):
        inner = 0
        for k in range((j - 1) // 2 + 1):
            e = 3 * j - k - l + 1
            m = multinomial(j, (k, k + 1, l - 2 - 2 * j - k, e))
            if m:
                inner += (2 ** e) * m
        if inner:
            total += Fraction((-1) ** (j + l - 1) * inner, j)
    if total.denominator != 1:
        raise NonIntegralResult(f"silver closed form at {l}: {total}")
    return total.numerator


def closed_form_bronze(l: int) -> int:
    """Binomial triple-sum closed form for n = 3."""
    if l < 0:
        raise ValueError("negative exponent")
    if l < 5:
        return (1, 1, 1, 0, 0)[l]
    total = Fraction(0)
    for j in range((l + 1) // 4, (l - 4) // 2 + 1):
        inner = 0
        for k in range((j - 1) // 2 + 1):
            for i in range(4 * j - k - l + 3):
                e = 4 * j - k - 2 * i - l + 2
                m = multinomial(j, (k, k + 1, i, l - 3 - 3 * j - k + i, e))
                if m:
                    inner += (-1) ** i * (2 ** e) * m
        if inner:
            total += Fraction((-1) ** l * inner, j)
    if total.denominator != 1:
        raise NonIntegralResult(f"bronze closed form at {l}: {total}")
    return total.numerator


_CLOSED_FORMS = {1: closed_form_golden, 2: closed_form_silver, 3: closed_form_bronze}


def coeffs_closed_form(n: int, L: int) -> CoeffTable:
    n = _check_n(n)
    f = _CLOSED_FORMS.get(n)
    if f is None:
        raise ValueError("closed forms exist only for n in {1, 2, 3}")
    return CoeffTable(n, L, tuple(f(l) for l in range(L)), "closedform")


# -- shared grow-only coefficient store -----------------------------------------

_tables: dict[int, list] = {}
_tables_lock = threading.Lock()


def kappa_values(n: int, L: int) -> list:
    """First L coefficients via the fast engine, cached per index in-process."""
    n = _check_n(n)
    with _tables_lock:
        vals = _tables.setdefault(n, [])
        if len(vals) < L:
            if len(vals) < 2 * n + 2:
                # seed the linear-time recurrence with the convolution engine
                vals[:] = _conv_values(n, 2 * n + 2)
            if len(vals) < L:
                _p_extend(n, vals, L)
        return vals[:L]


def kappa(n: int, l: int) -> int:
    return kappa_values(n, l + 1)[l]


def phi_series(n: int, L: int) -> LaurentSeries:
    return LaurentSeries(0, kappa_values(n, L), L)


# -- verification ----------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    """Truthy when the identity holds through the checked window."""

    ok: bool
    first_failure: int | None = None
    checked_order: int = 0
    label: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _zero_check(s: LaurentSeries, upto: int, label: str) -> CheckResult:
    t = s.truncate(upto)
    if t.is_zero:
        return CheckResult(True, None, upto, label)
    return CheckResult(False, int(t.valuation), upto, label)


def verify_functional_equation(n: int, L: int, engine: str = "precurrence") -> CheckResult:
    """Check q F^2 - R F - 1 == 0 through q^(L-1)."""
    f = table_engine(engine)(n, L).to_series()
    lhs = (f * f).shift(1) - poly_R(n).to_series() * f - 1
    return _zero_check(lhs, L, "functional-equation")


def verify_ode(n: int, L: int, engine: str = "precurrence") -> CheckResult:
    """Check the first-order differential equation
    4qP F' + (4P - 2qP') F + (R P' - 2 P R') == 0 through q^(L - (2n+3) - 1)."""
    n = _check_n(n)
    if L < 2 * n + 4:
        raise ValueError("need L >= 2n + 4")
    f = table_engine(engine)(n, L).to_series()
    fp = f.derivative()
    P = poly_P(n)
    R = poly_R(n)
    Pp, Rp = P.derivative(), R.derivative()
    lhs = (
        (P.to_series() * fp).shift(1) * 4
        + (P.to_series() * 4 - Pp.to_series().shift(1) * 2) * f
        + (R * Pp - 2 * (P * Rp)).to_series()
    )
    return _zero_check(lhs, L - (2 * n + 3), "differential-equation")


# -- Hankel determinants ----------------------------------------------------------


def _bareiss_det(rows: list) -> int:
    """Fraction-free determinant of a square integer matrix."""
    m = len(rows)
    if m == 0:
        return 1
    M = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(m - 1):
        if M[k][k] == 0:
            for r in range(k + 1, m):
                if M[r][k] != 0:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = pivot
    return sign * M[m - 1][m - 1]


def hankel(n: int, s: int, j: int) -> int:
    """Hankel determinant det(kappa_{a+b+s}) of size j, shift s >= 0."""
    if s < 0 or j < 0:
        raise ValueError("shift and size must be >= 0")
    if j == 0:
        return 1
    vals = kappa_values(n, 2 * (j - 1) + s + 1)
    return _bareiss_det([[vals[a + b + s] for b in range(j)] for a in range(j)])


# -- engine registry ---------------------------------------------------------------


_ENGINE_ALIASES = {
    "conv": "conv",
    "prec": "precurrence",
    "precurrence": "precurrence",
    "sqrt": "sqrt",
    "closed": "closedform",
    "closedform": "closedform",
}


def canonical_engine_tag(tag: str) -> str:
    try:
        return _ENGINE_ALIASES[tag]
    except KeyError:
        raise ValueError(f"unknown engine {tag!r}") from None


def table_engine(tag: str):
    engines = {
        "conv": coeffs_convolution,
        "precurrence": coeffs_p_recurrence,
        "sqrt": coeffs_sqrt,
        "closedform": coeffs_closed_form,
    }
    return engines[canonical_engine_tag(tag)]
