"""Exact Laurent-series and integer-polynomial arithmetic.

Coefficients live in Z or Q: plain `int` wherever possible, stdlib
`fractions.Fraction` otherwise (re-exported as `BigRat`).  Every operation is
pure; series objects are immutable after construction.

A truncated series knows its coefficients for exponents
`valuation <= l < order`.  Exactly-known series (polynomials, q-integers)
carry `order = INF`.  The zero series is canonicalized to an empty
coefficient window with `valuation == order`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    BadConstantTerm,
    InsufficientOrder,
    NonExactDivision,
    NonIntegralCoefficient,
    ZeroSeries,
)

BigRat = Fraction

# Infinite-order sentinel; compares correctly under min() and +int.
INF = math.inf


def _canon(c):
    """Collapse denominator-1 fractions to int so hot paths stay integral."""
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return int(c)
    raise TypeError(f"unsupported coefficient type: {type(c)!r}")


def _half(c):
    # exact division by 2, staying in int when possible
    if type(c) is int:
        if c & 1 == 0:
            return c >> 1
        return Fraction(c, 2)
    return _canon(c / 2)


class LaurentSeries:
    """Formal Laurent series known modulo q^order."""

    __slots__ = ("valuation", "coeffs", "order")

    def __init__(self, valuation, coeffs: Iterable, order=INF):
        cs = [_canon(c) for c in coeffs]
        if order != INF:
            order = int(order)
            if order - valuation != len(cs):
                raise ValueError("coefficient window does not match order")
        # strip known-zero leading terms; trailing zeros are genuine data
        i = 0
        while i < len(cs) and cs[i] == 0:
            i += 1
        valuation += i
        cs = cs[i:]
        if not cs:
            valuation = order  # zero series: valuation == order
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, l: int):
        """Coefficient of q^l; raises InsufficientOrder beyond the window."""
        if l >= self.order:
            raise InsufficientOrder(f"coefficient q^{l} unknown (order {self.order})")
        if self.is_zero or l < self.valuation:
            return 0
        i = l - self.valuation
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.order == other.order
            and self.valuation == other.valuation
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.valuation, self.coeffs, self.order))

    def __bool__(self) -> bool:
        return not self.is_zero

    def _content_end(self) -> int:
        return self.valuation + len(self.coeffs) if self.coeffs else 0

    def first_mismatch(self, other: "LaurentSeries", upto=None):
        """Smallest exponent below min(orders, upto) with differing
        coefficients, or None."""
        hi = min(self.order, other.order)
        if upto is not None:
            hi = min(hi, upto)
        if hi == INF:
            hi = max(self._content_end(), other._content_end())
        los = [s.valuation for s in (self, other) if not s.is_zero]
        if not los:
            return None
        for l in range(min(int(min(los)), int(hi)), int(hi)):
            if self[l] != other[l]:
                return l
        return None

    def eq_mod(self, other: "LaurentSeries", upto=None) -> bool:
        return self.first_mismatch(other, upto) is None

    # -- arithmetic --------------------------------------------------------

    def __neg__(self) -> "LaurentSeries":
        if self.is_zero:
            return self
        return LaurentSeries(self.valuation, [-c for c in self.coeffs], self.order)

    def __add__(self, other) -> "LaurentSeries":
        if isinstance(other, (int, Fraction)):
            other = constant(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        order = min(self.order, other.order)
        if self.is_zero:
            return other.truncate(order)
        if other.is_zero:
            return self.truncate(order)
        lo = min(self.valuation, other.valuation)
        hi = order if order != INF else max(self._content_end(), other._content_end())
        cs = [self[l] + other[l] for l in range(lo, int(hi))]
        return LaurentSeries(lo, cs, order)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = constant(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "LaurentSeries":
        if isinstance(other, (int, Fraction)):
            c = _canon(other)
            if c == 0:
                return zero(self.order)
            if self.is_zero:
                return self
            return LaurentSeries(self.valuation, [c * x for x in self.coeffs], self.order)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if self.is_zero or other.is_zero:
            # valuation == order for zero operands keeps this rule uniform
            return zero(min(self.order + other.valuation, other.order + self.valuation))
        va, vb = self.valuation, other.valuation
        order = min(self.order + vb, other.order + va)
        a, b = self.coeffs, other.coeffs
        n = len(a) + len(b) - 1 if order == INF else int(order) - (va + vb)
        out = [0] * n
        la, lb = len(a), len(b)
        for i in range(min(la, n)):
            ai = a[i]
            if ai == 0:
                continue
            jmax = min(lb, n - i)
            for j in range(jmax):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return LaurentSeries(va + vb, out, order)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by q^k."""
        order = self.order if self.order == INF else self.order + k
        if self.is_zero:
            return zero(order)
        return LaurentSeries(self.valuation + k, list(self.coeffs), order)

    def truncate(self, order) -> "LaurentSeries":
        if order == INF or order >= self.order:
            return self
        order = int(order)
        if self.is_zero or order <= self.valuation:
            return zero(order)
        n = order - self.valuation
        cs = list(self.coeffs[:n])
        cs += [0] * (n - len(cs))
        return LaurentSeries(self.valuation, cs, order)

    def derivative(self) -> "LaurentSeries":
        """Termwise d/dq; known modulo q^(order-1)."""
        order = self.order if self.order == INF else self.order - 1
        if self.is_zero:
            return zero(order)
        v = self.valuation
        cs = [(v + i) * c for i, c in enumerate(self.coeffs)]
        return LaurentSeries(v - 1, cs, order)

    # -- views -------------------------------------------------------------

    def coefficients(self, lo: int, hi: int) -> list:
        return [self[l] for l in range(lo, hi)]

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self.coeffs)

    def __repr__(self):
        return f"LaurentSeries({format_q(self)!r})"


def zero(order=INF) -> LaurentSeries:
    return LaurentSeries(order, [], order)


def constant(c) -> LaurentSeries:
    return LaurentSeries(0, [c], INF)


def monomial(c, k: int) -> LaurentSeries:
    return LaurentSeries(k, [c], INF)


def series_add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a + b


def series_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a * b


def _window_inverse(c: Sequence, n: int) -> list:
    """First n coefficients of 1 / (c[0] + c[1] q + ...), c[0] != 0."""
    c0 = c[0]
    if c0 == 1:
        inv0 = 1
    elif c0 == -1:
        inv0 = -1
    else:
        inv0 = Fraction(1) / c0
    out = [_canon(inv0)]
    lc = len(c)
    for k in range(1, n):
        acc = 0
        for i in range(1, min(k, lc - 1) + 1):
            ci = c[i]
            if ci:
                acc += ci * out[k - i]
        out.append(_canon(-inv0 * acc) if acc else 0)
    return out


def series_inverse(a: LaurentSeries, target_order: int) -> LaurentSeries:
    """Multiplicative inverse with valuation -val(a).

    The product a * result equals 1 modulo q^target_order, which takes
    target_order known coefficients of a's unit part a / q^val(a).
    """
    if target_order < 1:
        raise ValueError("target_order must be >= 1")
    if a.is_zero:
        raise ZeroSeries("cannot invert a series with no nonzero known coefficient")
    va = a.valuation
    if a.order - va < target_order:
        raise InsufficientOrder(
            f"need {target_order} known coefficients of the unit part, "
            f"have {a.order - va}"
        )
    window = list(a.coeffs[:target_order])
    window += [0] * (target_order - len(window))
    inv = _window_inverse(window, target_order)
    return LaurentSeries(-va, inv, target_order - va)


def series_div(num: LaurentSeries, den: LaurentSeries, target_order: int) -> LaurentSeries:
    """num / den known modulo q^target_order."""
    if den.is_zero:
        raise ZeroSeries("cannot divide by a series with no nonzero known coefficient")
    if num.is_zero:
        lim = INF if num.order == INF else num.order - den.valuation
        return zero(min(target_order, lim))
    t = target_order + den.valuation - num.valuation
    if t < 1:
        return zero(target_order)
    inv = series_inverse(den, t)
    return (num * inv).truncate(target_order)


def series_sqrt(a: LaurentSeries, target_order: int) -> LaurentSeries:
    """Square root of a unit series with constant term 1, modulo q^target_order.

    Newton iteration x -> (x + a/x)/2 with doubling working precision; each
    iterate is truncated at its proven-agreement order, so integer input with
    an integral root never leaves the integers.
    """
    if target_order < 1:
        raise ValueError("target_order must be >= 1")
    if a.is_zero or a.valuation != 0 or a.coeffs[0] != 1:
        raise BadConstantTerm("series_sqrt needs valuation 0 and constant term 1")
    if a.order < target_order:
        raise InsufficientOrder(
            f"need {target_order} known coefficients, have {a.order - a.valuation}"
        )
    n = target_order
    awin = list(a.coeffs[:n])
    awin += [0] * (n - len(awin))
    x = [1]
    m = 1
    while m < n:
        m2 = min(2 * m, n)
        invx = _window_inverse(x, m2)
        u = [0] * m2
        for i in range(min(len(awin), m2)):
            ai = awin[i]
            if ai == 0:
                continue
            for j in range(m2 - i):
                if invx[j]:
                    u[i + j] += ai * invx[j]
        x = x + [0] * (m2 - len(x))
        x = [_half(x[k] + u[k]) for k in range(m2)]
        m = m2
    return LaurentSeries(0, x, n)


def assert_integral(s: LaurentSeries, context: str = "series") -> LaurentSeries:
    for i, c in enumerate(s.coeffs):
        if type(c) is not int:
            raise NonIntegralCoefficient(
                f"{context}: coefficient of q^{s.valuation + i} is {c}, not an integer"
            )
    return s


# -- pretty printing and JSON exchange ---------------------------------------


def format_q(s: LaurentSeries, var: str = "q", max_terms: int | None = None) -> str:
    """Human-readable form like '1 + q - 2q^3 + O(q^8)'."""
    if s.is_zero:
        return "0" if s.order == INF else f"O({var}^{s.order})"
    parts = []
    shown = 0
    for i, c in enumerate(s.coeffs):
        if c == 0:
            continue
        if max_terms is not None and shown >= max_terms:
            parts.append("...")
            break
        l = s.valuation + i
        mag = -c if c < 0 else c
        if l == 0:
            term = str(mag)
        else:
            ql = var if l == 1 else f"{var}^{l}"
            term = ql if mag == 1 else f"{mag}{ql}"
        if parts:
            parts.append(("- " if c < 0 else "+ ") + term)
        else:
            parts.append("-" + term if c < 0 else term)
        shown += 1
    txt = " ".join(parts)
    if s.order != INF:
        txt += f" + O({var}^{int(s.order)})"
    return txt


def _coef_str(c) -> str:
    return str(c) if type(c) is int else f"{c.numerator}/{c.denominator}"


def _coef_parse(t: str):
    if "/" in t:
        num, den = t.split("/", 1)
        return _canon(Fraction(int(num), int(den)))
    return int(t)


def to_json(s: LaurentSeries) -> dict:
    """Exchange form: valuation, order, coefficient decimal strings."""
    if s.is_zero:
        order = 0 if s.order == INF else int(s.order)
        return {"valuation": order, "order": order, "coeffs": []}
    order = int(s.order) if s.order != INF else s.valuation + len(s.coeffs)
    cs = list(s.coeffs) + [0] * (order - s.valuation - len(s.coeffs))
    return {
        "valuation": s.valuation,
        "order": order,
        "coeffs": [_coef_str(c) for c in cs],
    }


def from_json(d: dict) -> LaurentSeries:
    return LaurentSeries(
        int(d["valuation"]), [_coef_parse(t) for t in d["coeffs"]], int(d["order"])
    )


# -- integer polynomials ------------------------------------------------------


class IntPolynomial:
    """Dense integer polynomial, coefficients ascending, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        cs = []
        for c in coeffs:
            if type(c) is not int:
                if isinstance(c, Fraction) and c.denominator == 1:
                    c = c.numerator
                elif isinstance(c, int):
                    c = int(c)
                else:
                    raise NonIntegralCoefficient(
                        f"polynomial coefficient {c!r} is not an integer"
                    )
            cs.append(c)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @property
    def degree(self):
        """Degree; -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs])

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([other * c for c in self.coeffs])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return IntPolynomial([])
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = IntPolynomial([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def reversal(self, d: int | None = None) -> "IntPolynomial":
        """q^d * p(1/q); d defaults to deg(p)."""
        if self.is_zero:
            return self
        if d is None:
            d = len(self.coeffs) - 1
        if d < len(self.coeffs) - 1:
            raise ValueError("reversal degree below polynomial degree")
        padded = list(self.coeffs) + [0] * (d + 1 - len(self.coeffs))
        return IntPolynomial(padded[::-1])

    def is_palindromic(self) -> bool:
        return not self.is_zero and self.coeffs == self.coeffs[::-1]

    def __call__(self, x):
        """Horner evaluation; works for int, Fraction, float, complex, mpmath."""
        acc = 0 * x  # keep the caller's numeric type
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_series(self, order=INF) -> LaurentSeries:
        return LaurentSeries(0, list(self.coeffs), INF).truncate(order)

    def content(self) -> int:
        return math.gcd(*(abs(c) for c in self.coeffs)) if self.coeffs else 0

    def primitive(self) -> "IntPolynomial":
        c = self.content()
        return IntPolynomial([x // c for x in self.coeffs]) if c > 1 else self

    def __repr__(self):
        return f"IntPolynomial({format_q(self.to_series())!r})"


def poly_eval_complex(p: IntPolynomial, z):
    """Horner evaluation of an integer polynomial at a complex point."""
    return p(z)


# -- polynomial gcd over Z[q] (via Q[q] Euclid, then primitive part) ----------


def _frac_divmod(a: list, b: list) -> tuple[list, list]:
    # a, b: Fraction coefficient lists (ascending), b nonzero
    a = a[:]
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    for k in range(len(a) - len(b), -1, -1):
        f = a[k + len(b) - 1] * inv_lead
        if f:
            q[k] = f
            for i, bc in enumerate(b):
                a[k + i] -= f * bc
    while a and not a[-1]:
        a.pop()
    return q, a


def poly_gcd(p: IntPolynomial, r: IntPolynomial) -> IntPolynomial:
    """gcd over Z[q]: primitive gcd times gcd of contents, positive leading
    coefficient."""
    if p.is_zero:
        return r if r.is_zero or r.coeffs[-1] > 0 else -r
    if r.is_zero:
        return p if p.coeffs[-1] > 0 else -p
    a = [Fraction(c) for c in p.coeffs]
    b = [Fraction(c) for c in r.coeffs]
    while b:
        _, rem = _frac_divmod(a, b)
        a, b = b, rem
    den = math.lcm(*(c.denominator for c in a))
    g = IntPolynomial([int(c * den) for c in a]).primitive()
    if g.coeffs[-1] < 0:
        g = -g
    cont = math.gcd(p.content(), r.content())
    return g * cont if cont > 1 else g


def poly_divexact(p: IntPolynomial, d: IntPolynomial) -> IntPolynomial:
    """Exact division in Z[q]; raises NonExactDivision on failure."""
    if d.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero:
        return p
    q, rem = _frac_divmod([Fraction(c) for c in p.coeffs],
                          [Fraction(c) for c in d.coeffs])
    if rem:
        raise NonExactDivision("polynomial division left a remainder")
    out = []
    for c in q:
        if c.denominator != 1:
            raise NonExactDivision("polynomial quotient is not integral")
        out.append(int(c))
    return IntPolynomial(out)
