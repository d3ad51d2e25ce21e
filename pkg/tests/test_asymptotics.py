"""Unit tests for root finding and coefficient asymptotics."""

import pytest
from mpmath import fabs, mp, mpc, mpf, nstr, power, sqrt, workprec

from qmetallic.asymptotics import (
    DEFAULT_PRECISION,
    all_roots,
    leading_term,
    radius,
    ratio_table,
    roots_Q,
    singularity_report,
)
from qmetallic.metallic import kappa_values


def test_all_roots_cubic():
    # (1-q)(2-q)(3-q) = 6 - 11q + 6q^2 - q^3
    roots = all_roots([6, -11, 6, -1], 192)
    got = sorted(float(r.real) for r in roots)
    assert all(abs(r.imag) < 1e-40 for r in roots)
    for g, w in zip(got, (1.0, 2.0, 3.0)):
        assert abs(g - w) < 1e-40


def test_roots_count_and_radius_consistency():
    for n in (1, 2, 3, 6):
        rep = singularity_report(n)
        assert len(rep.all_roots) == 2 * n
        with workprec(300):
            moduli = [fabs(z) for z in rep.all_roots]
            assert fabs(min(moduli) - rep.radius) < mpf(10) ** -60


def test_radius_closed_forms():
    with workprec(300):
        tol = mpf(10) ** -70
        assert fabs(radius(1) - (3 - sqrt(5)) / 2) < tol
        want2 = (1 + sqrt(2) - sqrt(2 * sqrt(2) - 1)) / 2
        assert fabs(radius(2) - want2) < tol


def test_radius_third_index_digits():
    assert nstr(radius(3), 10) == "0.5971940686"


def test_radius_monotone_prefix():
    with workprec(280):
        vals = [radius(n) for n in range(1, 9)]
        assert all(a < b for a, b in zip(vals, vals[1:]))
        assert vals[-1] < 1


def test_precision_floor():
    with pytest.raises(ValueError):
        radius(1, 64)


def test_precision_stability():
    with workprec(400):
        assert fabs(radius(1, 256) - radius(1, 320)) < mpf(10) ** -70


def test_dominant_structure():
    rep1 = singularity_report(1)
    assert len(rep1.dominant) == 1 and len(rep1.gammas) == 1
    rep2 = singularity_report(2)
    assert len(rep2.dominant) == 2
    with workprec(300):
        a, b = rep2.dominant
        # a conjugate pair
        assert fabs(a.real - b.real) < mpf(10) ** -60
        assert fabs(a.imag + b.imag) < mpf(10) ** -60


def test_gamma_constants():
    with workprec(300):
        g1 = singularity_report(1).gammas[0]
        assert fabs(g1 - (-power(5, mpf(1) / 4))) < mpf(10) ** -60
        g2 = next(g for g in singularity_report(2).gammas if mpc(g).imag > 0)
        assert fabs(mpc(g2).real - mpf("-0.47791946288998969657")) < mpf(10) ** -19
        assert fabs(mpc(g2).imag - mpf("1.2009723163799612151")) < mpf(10) ** -18


def test_leading_term_converges_to_coefficients():
    kv = kappa_values(1, 501)
    with workprec(280):
        approx = leading_term(1, 500)
        rel = fabs(approx - kv[500]) / fabs(mpf(kv[500]))
        assert rel < mpf("0.002")


def test_ratio_table_shape_and_trend():
    rows = ratio_table(1, (100, 400, 1600))
    assert [l for l, _ in rows] == [100, 400, 1600]
    vals = [float(v) for _, v in rows]
    assert all(isinstance(v, str) for _, v in rows)
    # ratios drift toward 1 as l grows
    assert abs(vals[2] - 1) < abs(vals[1] - 1) < abs(vals[0] - 1) < 0.01


def test_global_precision_untouched():
    before = mp.prec
    singularity_report(4)
    ratio_table(2, (100,))
    assert mp.prec == before


def test_roots_Q_matches_report():
    assert roots_Q(2) == singularity_report(2).all_roots
    assert DEFAULT_PRECISION == 256
