"""Unit tests for q-integers, continued fractions, deformed rationals and
quadratic irrationals, and the projective group actions."""

import json
import os

import pytest

from qmetallic.series import INF, IntPolynomial, LaurentSeries
from qmetallic.errors import BranchMismatch
from qmetallic.metallic import phi_series
from qmetallic.qnum import (
    PeriodicCF,
    QuadraticForm,
    cf_to_text,
    negate,
    neg_reciprocal,
    parse_cf,
    q_integer,
    q_integer_recip_base,
    q_rational,
    q_real_truncated,
    quantize_quadratic,
    rational_cf,
    rational_value,
    reciprocal,
    shift,
)
from qmetallic.cli import _goldens_dir


def test_q_integer_positive():
    assert q_integer(3) == LaurentSeries(0, [1, 1, 1])
    assert q_integer(1) == LaurentSeries(0, [1])
    assert q_integer(0).is_zero


def test_q_integer_negative():
    s = q_integer(-2)
    assert s.valuation == -2 and list(s.coeffs) == [-1, -1]
    assert q_integer(-1) == LaurentSeries(-1, [-1])


def test_q_integer_recip_base():
    # [n]_{1/q} = q^(1-n) [n]_q
    s = q_integer_recip_base(3)
    assert s.valuation == -2 and list(s.coeffs) == [1, 1, 1]


# -- continued fractions ------------------------------------------------------------


def test_parse_and_print_round_trip():
    for text in ("1;(1)*", "2;(1,1,1,4)*", "0;2,(1,1,1,4)*", "5;2", "7",
                 "-3;1,2"):
        assert cf_to_text(parse_cf(text)) == text


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_cf(";1,2")
    with pytest.raises(ValueError):
        parse_cf("2;(1,2")


def test_entry_periodic_continuation():
    cf = parse_cf("2;(1,3)*")
    assert [cf.entry(i) for i in range(6)] == [2, 1, 3, 1, 3, 1]
    assert not cf.is_rational
    assert parse_cf("5;2").is_rational


def test_real_value():
    golden = (1 + 5 ** 0.5) / 2
    assert abs(parse_cf("1;(1)*").real_value() - golden) < 1e-12


def test_rational_cf_and_value_round_trip():
    cf = rational_cf(22, 7)
    assert cf.preperiod == (3, 7) and cf.period == ()
    assert rational_value(cf) == (22, 7)
    assert rational_value(rational_cf(-7, 3)) == (-7, 3)
    with pytest.raises(ValueError):
        rational_value(parse_cf("1;(1)*"))


# -- deformed rationals -------------------------------------------------------------


def test_q_rational_integer_case():
    for n in (1, 4, -3):
        s = q_rational(n, 1).to_series(10)
        assert s.first_mismatch(q_integer(n), upto=9) is None


def test_q_rational_validation():
    with pytest.raises(ValueError):
        q_rational(2, 4)
    with pytest.raises(ValueError):
        q_rational(1, 0)


def test_q_rational_shift_compatibility():
    # [x + 1] = q[x] + 1 for x >= 0
    a = q_rational(3, 2).to_series(12)
    b = shift(q_rational(1, 2).to_series(12), 1)
    assert a.first_mismatch(b, upto=11) is None


def test_q_rational_series_is_integral():
    assert q_rational(5, 3).to_series(20).is_integral()


# -- deformed quadratic irrationals -------------------------------------------------


def _golden_forms():
    with open(os.path.join(_goldens_dir(), "quadratic_forms.json")) as fh:
        return json.load(fh)


def test_quantize_golden_ratio_form():
    doc = _golden_forms()["phi1"]
    form = quantize_quadratic(parse_cf(doc["cf"]))
    assert list(form.R.coeffs) == doc["R"]
    assert list(form.P.coeffs) == doc["P"]
    assert list(form.S.coeffs) == doc["S"]
    assert form.sign == doc["sign"]
    # P = R^2 + 4q for the metallic family
    assert form.P == form.R * form.R + IntPolynomial([0, 4])
    assert form.P.is_palindromic()


def test_quantize_sqrt7_form():
    doc = _golden_forms()["sqrt7"]
    form = quantize_quadratic(parse_cf(doc["cf"]))
    assert list(form.R.coeffs) == doc["R"]
    assert list(form.P.coeffs) == doc["P"]
    assert list(form.S.coeffs) == doc["S"]
    assert form.P.is_palindromic()


def test_quadratic_form_series_matches_direct_deformation():
    doc = _golden_forms()["phi1"]
    form = QuadraticForm(IntPolynomial(doc["R"]), IntPolynomial(doc["P"]),
                         IntPolynomial(doc["S"]), doc["sign"])
    assert form.to_series(14).first_mismatch(phi_series(1, 14)) is None


def test_sqrt_disc_branch_errors():
    one = IntPolynomial([1])
    odd = QuadraticForm(one, IntPolynomial([0, 1]), one, 1)
    with pytest.raises(BranchMismatch):
        odd.sqrt_disc(4)
    nonsq = QuadraticForm(one, IntPolynomial([2]), one, 1)
    with pytest.raises(BranchMismatch):
        nonsq.sqrt_disc(4)


def test_truncated_deformation_matches_fixture():
    with open(os.path.join(_goldens_dir(), "series_sqrt7.json")) as fh:
        doc = json.load(fh)["sqrt7"]
    want = doc["series"]
    got = q_real_truncated(parse_cf(doc["cf"]), want["order"])
    assert got.valuation == want["valuation"]
    assert [str(c) for c in got.coeffs] == want["coeffs"]


# -- projective actions -------------------------------------------------------------


def test_shift_composes():
    x = phi_series(1, 16)
    assert shift(x, 2) == shift(shift(x, 1), 1)
    assert shift(shift(x, 3), -3) == x


def test_negate_is_an_involution():
    x = phi_series(1, 24)
    y = negate(negate(x, 16), 8)
    assert y.first_mismatch(x, upto=y.order) is None


def test_neg_reciprocal_is_an_involution():
    x = phi_series(2, 24)
    y = neg_reciprocal(neg_reciprocal(x, 16), 8)
    assert y.first_mismatch(x, upto=y.order) is None


def test_reciprocal_factors_through_the_other_two():
    x = phi_series(1, 30)
    lhs = reciprocal(x, 10)
    rhs = neg_reciprocal(negate(x, 20), 10)
    assert lhs.first_mismatch(rhs, upto=min(lhs.order, rhs.order)) is None
