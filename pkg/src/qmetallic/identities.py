"""Identity suite tying together the deformations of phi_n, -phi_n, 1/phi_n,
-1/phi_n, the multiplicative inverse 1/[phi_n]_q, and the q -> 1/q
coefficient reflection.

Every check builds both sides independently: one side through the modular
group actions of module qnum applied to the base series F = [phi_n]_q, the
other through explicit Laurent expansions whose tails are coefficient sums
over the kappa table.  Reports carry the identity tag, the compared window,
and the first mismatching exponent when a check fails.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotMonomialDenominator
from .metallic import _check_n, kappa_values, phi_series, poly_P, poly_R
from .qnum import (
    PeriodicCF,
    QuadraticForm,
    neg_reciprocal,
    negate,
    q_integer,
    quantize_quadratic,
    reciprocal,
)
from .series import INF, IntPolynomial, LaurentSeries, series_inverse

IDENTITY_IDS = (
    "rel1", "rel2", "rel3", "rel4",
    "crin", "recip", "neg", "multinv",
    "reflectR", "reflectP",
)
_REPORT_IDS = IDENTITY_IDS + ("reflect", "conjugate")


@dataclass(frozen=True)
class IdentityReport:
    n: int
    identity_id: str
    checked_order: int
    holds: bool
    first_failure: int | None = None

    def __post_init__(self):
        if self.identity_id not in _REPORT_IDS:
            raise ValueError(f"unknown identity tag {self.identity_id!r}")
        if self.holds != (self.first_failure is None):
            raise ValueError("holds must mirror the absence of a failure")

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "identity_id": self.identity_id,
            "checked_order": self.checked_order,
            "holds": self.holds,
            "first_failure": self.first_failure,
        }


@dataclass(frozen=True)
class LaurentFamily:
    """The deformed family around index n, all as Laurent series."""

    phi: LaurentSeries
    recip: LaurentSeries      # [1/phi_n]
    negrecip: LaurentSeries   # [-1/phi_n]
    neg: LaurentSeries        # [-phi_n]


def _series_from_items(items, order) -> LaurentSeries:
    d: dict = {}
    for e, c in items:
        d[e] = d.get(e, 0) + c
    if not d:
        return LaurentSeries(order, [], order)
    lo = min(d)
    hi = order if order != INF else max(d) + 1
    return LaurentSeries(lo, [d.get(e, 0) for e in range(lo, int(hi))], order)


def _edge_term(n: int) -> LaurentSeries:
    """(q^n + 1)(q - 1)/q, an exact Laurent polynomial."""
    p = (IntPolynomial([0] * n + [1]) + 1) * IntPolynomial([-1, 1])
    return p.to_series().shift(-1)


def alpha_poly(n: int) -> LaurentSeries:
    """Principal part polynomial of [-phi_n]: the case split is
    -q^-2 - q^-1 + 1 (n=1), -q^-3 - 2q^-1 + 1 (n=2), and for n >= 3
    -q^-(n+1) - q^-(n-1) - ... - q^-2 - 2q^-1 + 1."""
    n = _check_n(n)
    items = [(-(n + 1), -1), (0, 1), (-1, -1 if n == 1 else -2)]
    items += [(-k, -1) for k in range(2, n)]
    return _series_from_items(items, INF)


def laurent_family(n: int, L: int) -> LaurentFamily:
    """Explicit expansions: tails are signed/shifted kappa sums."""
    n = _check_n(n)
    if L < 2 * n + 2:
        raise ValueError("need L >= 2n + 2")
    kv = kappa_values(n, L + n)
    phi = phi_series(n, L)
    recip = _series_from_items(
        [(n, 1)] + [(j, kv[j + n]) for j in range(n + 1, L)], L
    )
    negrecip = _series_from_items(
        [(-1, -1), (0, 1), (n - 1, -1), (n, 1), (2 * n, -1)]
        + [(j, -kv[j]) for j in range(2 * n + 1, L)],
        L,
    )
    neg = alpha_poly(n) - recip
    return LaurentFamily(phi=phi, recip=recip, negrecip=negrecip, neg=neg)


def _inverse_formula(n: int, L: int) -> LaurentSeries:
    """1 - q + q^n - q^(n+1) + q^(2n+1) + sum_{j>=2n+2} kappa_{j-1} q^j."""
    kv = kappa_values(n, L)
    return _series_from_items(
        [(0, 1), (1, -1), (n, 1), (n + 1, -1), (2 * n + 1, 1)]
        + [(j, kv[j - 1]) for j in range(2 * n + 2, L)],
        L,
    )


def _compare(n: int, identity_id: str, lhs: LaurentSeries, rhs: LaurentSeries,
             upto) -> IdentityReport:
    hi = min(lhs.order, rhs.order, upto)
    fm = lhs.first_mismatch(rhs, upto=hi)
    return IdentityReport(
        n=n,
        identity_id=identity_id,
        checked_order=int(hi),
        holds=fm is None,
        first_failure=fm,
    )


def check_rel(n: int, identity_id: str, L: int = 300) -> IdentityReport:
    """Verify one tagged identity to order L (reflection tags are exact)."""
    n = _check_n(n)
    if identity_id not in IDENTITY_IDS:
        raise ValueError(f"unknown identity tag {identity_id!r}")
    if identity_id in ("reflectR", "reflectP"):
        return _reflection_single(n, identity_id)
    if identity_id == "multinv":
        return mult_inverse_check(n, L)
    if L < 2 * n + 2:
        raise ValueError("need L >= 2n + 2")
    # negate() consumes extra orders: num valuation -1, den (q-1)x + 1
    # valuation n (the n leading coefficients of x are all 1)
    phi = phi_series(n, L + 2 * n + 2)
    nq = q_integer(n)
    edge = _edge_term(n)
    fam = laurent_family(n, L)
    recip_a = reciprocal(phi, L)
    neg_a = negate(phi, L)
    negrecip_a = neg_reciprocal(phi, L)
    if identity_id == "rel1":
        lhs, rhs = phi, recip_a.shift(n) + nq
    elif identity_id == "rel2":
        lhs, rhs = negrecip_a, neg_a.shift(n) + nq
    elif identity_id == "rel3":
        lhs, rhs = negrecip_a, nq + edge - phi
    elif identity_id == "rel4":
        lhs, rhs = phi, edge - neg_a.shift(n)
    elif identity_id == "recip":
        lhs, rhs = recip_a, fam.recip
    elif identity_id == "crin":
        lhs, rhs = negrecip_a, fam.negrecip
    else:  # neg
        lhs, rhs = neg_a, fam.neg
    return _compare(n, identity_id, lhs, rhs, L)


def check_all(n: int, L: int = 300) -> list:
    return [check_rel(n, tag, L) for tag in IDENTITY_IDS]


def mult_inverse_check(n: int, L: int = 300) -> IdentityReport:
    """Multiplicative inverse against the explicit Laurent pattern."""
    n = _check_n(n)
    if L < 2 * n + 3:
        raise ValueError("need L >= 2n + 3")
    inv = series_inverse(phi_series(n, L), L)
    return _compare(n, "multinv", inv, _inverse_formula(n, L), L)


def _reflection_single(n: int, identity_id: str) -> IdentityReport:
    R = poly_R(n)
    P = poly_P(n)
    if identity_id == "reflectR":
        edge2 = 2 * ((IntPolynomial([0] * n + [1]) + 1) * IntPolynomial([1, -1]))
        diff = R.reversal(n + 1) - (R + edge2)
        width = n + 2
    else:
        diff = P.reversal(2 * n + 2) - P
        width = 2 * n + 3
    fail = None if diff.is_zero else next(i for i, c in enumerate(diff.coeffs) if c)
    return IdentityReport(
        n=n,
        identity_id=identity_id,
        checked_order=width,
        holds=diff.is_zero,
        first_failure=fail,
    )


def reflection_check(n: int) -> IdentityReport:
    """Both exact reflection identities: q^(n+1) R(1/q) = R + 2(1+q^n)(1-q)
    and q^(2n+2) P(1/q) = P."""
    a = _reflection_single(n, "reflectR")
    b = _reflection_single(n, "reflectP")
    fails = [r.first_failure for r in (a, b) if r.first_failure is not None]
    return IdentityReport(
        n=n,
        identity_id="reflect",
        checked_order=2 * n + 3,
        holds=not fails,
        first_failure=min(fails) if fails else None,
    )


def conjugate_pair_check(cf: PeriodicCF, L: int) -> IdentityReport:
    """For a quadratic value whose denominator polynomial is a monomial,
    the two square-root branches have opposite coefficients beyond the
    monomial degree."""
    form = quantize_quadratic(cf)
    nz = [i for i, c in enumerate(form.S.coeffs) if c]
    if len(nz) != 1:
        raise NotMonomialDenominator(
            f"denominator {form.S.coeffs} has {len(nz)} terms"
        )
    deg = nz[0]
    x = form.to_series(L)
    conj = QuadraticForm(form.R, form.P, form.S, -form.sign).to_series(L)
    fail = None
    for j in range(deg + 1, L):
        if x[j] != -conj[j]:
            fail = j
            break
    return IdentityReport(
        n=0,
        identity_id="conjugate",
        checked_order=L,
        holds=fail is None,
        first_failure=fail,
    )


def conjugate_onset(cf: PeriodicCF, L: int) -> int | None:
    """Empirical first exponent from which the branch coefficients stay
    opposite through order L (reported, never asserted as a formula)."""
    form = quantize_quadratic(cf)
    x = form.to_series(L)
    conj = QuadraticForm(form.R, form.P, form.S, -form.sign).to_series(L)
    lo = min(x.valuation, conj.valuation)
    onset = None
    for j in range(int(L) - 1, int(lo) - 1, -1):
        if x[j] == -conj[j]:
            onset = j
        else:
            break
    return onset
