"""Numeric singularity analysis for the deformed metallic series.

The growth of the series coefficients is governed by the roots of the
palindromic polynomial Q_n (the reduced discriminant factor).  This module
finds all 2n roots by Aberth-Ehrlich simultaneous iteration (boot-strapped
in machine precision, continued and Newton-polished on mpmath), certifies
them by residual bounds, extracts the dominant ones (minimal modulus, the
radius of convergence), and assembles the square-root singularity constants
and the leading asymptotic term

    alpha_l = sum_j (-gamma_j / (2 sqrt(pi))) zeta_j^(-l) l^(-3/2).

Complex values are mpmath `mpc` numbers carried at an explicit bit
precision (>= 128 everywhere in this module).
"""

from __future__ import annotations

import cmath
import threading
from dataclasses import dataclass

from mpmath import mp, mpf, mpc, fabs, sqrt, pi, re, im, nstr

from .errors import (
    ImaginaryResidual,
    MultipleRoot,
    NoConvergence,
)
from .metallic import kappa_values, poly_Q, _check_n

DEFAULT_PRECISION = 256
_GUARD_BITS = 64
_CALIBRATION_PROBE = 400


def _check_precision(bits: int) -> int:
    bits = int(bits)
    if bits < 128:
        raise ValueError("precision must be >= 128 bits")
    return bits


# -- root finding ----------------------------------------------------------------


def _init_circle(deg: int, radius: float) -> list:
    """Start points on a circle with an irrational angular offset, so the
    initial configuration never shares the symmetries of the polynomial."""
    offset = (5 ** 0.5 - 1) / 2
    return [
        radius * cmath.exp(2j * cmath.pi * (k / deg + offset))
        for k in range(deg)
    ]


def _fujiwara_radius(coeffs) -> float:
    """Coefficient bound on root moduli (Fujiwara)."""
    d = len(coeffs) - 1
    lead = abs(coeffs[-1])
    b = 0.0
    for k in range(1, d + 1):
        c = abs(coeffs[d - k]) / lead
        if c:
            b = max(b, (c / (2.0 if k == d else 1.0)) ** (1.0 / k))
    return 2.0 * b


def _horner2(coeffs, z):
    """Evaluate p(z) and p'(z) together."""
    p = 0 * z
    dp = 0 * z
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _aberth_sweeps(coeffs, zs, tol, max_sweeps):
    """Simultaneous-iteration sweeps in the arithmetic of `zs`; returns the
    sweep count or None when the update never fell below tol."""
    deg = len(zs)
    for sweep in range(max_sweeps):
        biggest = 0.0
        for i in range(deg):
            zi = zs[i]
            p, dp = _horner2(coeffs, zi)
            if dp == 0:
                zs[i] = zi + tol
                biggest = float("inf")
                continue
            newton = p / dp
            s = 0
            collide = False
            for j in range(deg):
                if j == i:
                    continue
                diff = zi - zs[j]
                if diff == 0:
                    collide = True
                    break
                s += 1 / diff
            if collide:
                zs[i] = zi * (1 + 8 * tol) + tol
                biggest = float("inf")
                continue
            denom = 1 - newton * s
            w = newton if denom == 0 else newton / denom
            zs[i] = zi - w
            step = abs(complex(w)) if isinstance(w, complex) else float(fabs(w))
            biggest = max(biggest, step)
        if biggest < tol:
            return sweep + 1
    return None


def all_roots(coeffs, precision_bits: int) -> list:
    """All roots of an integer polynomial (ascending coefficients, nonzero
    leading and constant term): machine-precision Aberth-Ehrlich from a
    circle start, then mpmath Aberth continuation and Newton polish."""
    bits = _check_precision(precision_bits)
    deg = len(coeffs) - 1
    fc = [float(c) for c in coeffs]
    zs = _init_circle(deg, max(1.0, _fujiwara_radius(fc)))
    _aberth_sweeps(fc, zs, 1e-13, 600)  # machine stage; certified later
    with mp.workprec(bits + _GUARD_BITS):
        mzs = [mpc(z) for z in zs]
        tol = mpf(2) ** (-(bits + _GUARD_BITS // 2))
        done = _aberth_sweeps(coeffs, mzs, tol, 24)
        for i, z in enumerate(mzs):  # Newton polish, quadratic cleanup
            for _ in range(3):
                p, dp = _horner2(coeffs, z)
                if dp == 0:
                    break
                z = z - p / dp
            mzs[i] = z
        bound = mpf(10) ** (-(bits // 4))
        residuals = [fabs(_horner2(coeffs, z)[0]) for z in mzs]
        worst = max(residuals)
        if done is None and worst >= bound:
            raise NoConvergence(
                f"root iteration stalled; worst residual {nstr(worst, 5)}"
            )
        if worst >= bound:
            raise NoConvergence(
                f"residual {nstr(worst, 5)} above bound {nstr(bound, 5)}"
            )
        return [+z for z in mzs]


# -- singularity data -------------------------------------------------------------


@dataclass(frozen=True)
class SingularityReport:
    """Roots of Q_n with the dominant subset and calibrated constants."""

    n: int
    precision_bits: int
    all_roots: tuple
    dominant: tuple
    radius: object
    gammas: tuple
    branch_flipped: bool

    def __post_init__(self):
        if len(self.dominant) != len(self.gammas):
            raise ValueError("one gamma per dominant root required")


_reports: dict = {}
_reports_lock = threading.Lock()


def _gamma_raw(Q, dQ, zeta):
    """Principal-branch square-root constant at a simple root."""
    with mp.extraprec(_GUARD_BITS):
        dq = dQ(zeta)
        if fabs(dq) < mpf(2) ** (-(mp.prec // 2)):
            raise MultipleRoot(f"derivative vanishes at {nstr(zeta, 8)}")
        # Q(q)/(zeta - q) at q=zeta equals -Q'(zeta)
        return 1 / (2 * zeta) * sqrt((1 - zeta + zeta * zeta) * zeta * (-dq))


def _alpha_from(dominant, gammas, l):
    with mp.extraprec(_GUARD_BITS):
        total = mpc(0)
        for g, z in zip(gammas, dominant):
            total += -g / (2 * sqrt(pi)) * z ** (-l)
        return total * mpf(l) ** (mpf(-3) / 2)


def _build_report(n: int, bits: int) -> SingularityReport:
    Q = poly_Q(n)
    dQ = Q.derivative()
    roots = all_roots(list(Q.coeffs), bits)
    with mp.workprec(bits + _GUARD_BITS):
        moduli = [fabs(z) for z in roots]
        rho = min(moduli)
        tie = rho * (1 + mpf(2) ** (-(bits // 2)))
        dom = [z for z, m in zip(roots, moduli) if m <= tie]
        gammas = [_gamma_raw(Q, dQ, z) for z in dom]
        # Branch calibration: one exact-coefficient probe fixes the sign of
        # the square root for the whole dominant family.
        probe = _CALIBRATION_PROBE
        k = kappa_values(n, probe + 1)[probe]
        flipped = bool(re(_alpha_from(dom, gammas, probe)) * k < 0)
        if flipped:
            gammas = [-g for g in gammas]
        return SingularityReport(
            n=n,
            precision_bits=bits,
            all_roots=tuple(roots),
            dominant=tuple(dom),
            radius=+rho,
            gammas=tuple(gammas),
            branch_flipped=flipped,
        )


def singularity_report(n: int, precision_bits: int = DEFAULT_PRECISION) -> SingularityReport:
    n = _check_n(n)
    bits = _check_precision(precision_bits)
    key = (n, bits)
    with _reports_lock:
        rep = _reports.get(key)
        if rep is None:
            rep = _build_report(n, bits)
            _reports[key] = rep
        return rep


def roots_Q(n: int, precision_bits: int = DEFAULT_PRECISION) -> tuple:
    """All 2n certified roots of Q_n."""
    return singularity_report(n, precision_bits).all_roots


def radius(n: int, precision_bits: int = DEFAULT_PRECISION):
    """Radius of convergence: the smallest root modulus of Q_n."""
    return singularity_report(n, precision_bits).radius


def gamma_coeff(n: int, zeta, precision_bits: int = DEFAULT_PRECISION):
    """Calibrated square-root constant for a dominant root (principal branch
    for the non-dominant ones, where no probe applies)."""
    rep = singularity_report(n, precision_bits)
    with mp.workprec(rep.precision_bits + _GUARD_BITS):
        ztol = mpf(2) ** (-(rep.precision_bits // 2))
        for z, g in zip(rep.dominant, rep.gammas):
            if fabs(z - zeta) <= ztol * max(1, fabs(z)):
                return g
        for z in rep.all_roots:
            if fabs(z - zeta) <= ztol * max(1, fabs(z)):
                return _gamma_raw(poly_Q(n), poly_Q(n).derivative(), mpc(zeta))
    raise ValueError("zeta is not a root of Q_n at this precision")


def leading_term(n: int, l: int, precision_bits: int = DEFAULT_PRECISION):
    """Leading asymptotic term alpha_l; real up to a certified residual."""
    if l < 1:
        raise ValueError("need l >= 1")
    rep = singularity_report(n, precision_bits)
    with mp.workprec(rep.precision_bits + _GUARD_BITS):
        total = _alpha_from(rep.dominant, rep.gammas, l)
        tol = mpf(10) ** (-(rep.precision_bits // 4))
        if fabs(im(total)) > tol * fabs(re(total)):
            raise ImaginaryResidual(
                f"imaginary part {nstr(im(total), 5)} too large at l={l}"
            )
        return re(total)


def ratio_table(n: int, l_values, precision_bits: int = DEFAULT_PRECISION):
    """Rows (l, alpha_l / kappa_l as a 15-significant-digit string)."""
    ls = [int(l) for l in l_values]
    if any(l < 1 for l in ls):
        raise ValueError("need l >= 1")
    vals = kappa_values(n, max(ls) + 1)
    rep = singularity_report(n, precision_bits)
    out = []
    with mp.workprec(rep.precision_bits + _GUARD_BITS):
        for l in ls:
            if vals[l] == 0:
                raise ZeroDivisionError(f"coefficient at l={l} is zero")
            r = leading_term(n, l, precision_bits) / vals[l]
            out.append((l, nstr(r, 15, strip_zeros=False)))
    return out
