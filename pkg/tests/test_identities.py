"""Unit tests for the series and polynomial identity suite."""

import pytest

from qmetallic.errors import NotMonomialDenominator
from qmetallic.identities import (
    IDENTITY_IDS,
    IdentityReport,
    alpha_poly,
    check_all,
    check_rel,
    conjugate_onset,
    conjugate_pair_check,
    laurent_family,
    mult_inverse_check,
    reflection_check,
)
from qmetallic.metallic import phi_series
from qmetallic.qnum import parse_cf
from qmetallic.series import LaurentSeries


def test_identity_id_inventory():
    assert IDENTITY_IDS == ("rel1", "rel2", "rel3", "rel4", "crin",
                            "recip", "neg", "multinv", "reflectR",
                            "reflectP")


def test_check_all_covers_every_tag():
    reports = check_all(2, 80)
    assert all(r.holds for r in reports)
    seen = {r.identity_id for r in reports}
    assert seen <= set(IDENTITY_IDS)
    assert {"rel1", "rel2", "rel3", "rel4"} <= seen


def test_single_relation_report_shape():
    rep = check_rel(3, "rel1", 60)
    assert rep.holds and rep.n == 3 and rep.first_failure is None
    assert rep.checked_order <= 60
    d = rep.to_json()
    assert d["identity_id"] == "rel1" and d["holds"] is True


def test_unknown_identity_rejected():
    with pytest.raises(ValueError):
        check_rel(1, "rel9", 40)


def test_mult_inverse():
    for n in (1, 2, 4):
        rep = mult_inverse_check(n, 80)
        assert rep.holds, (n, rep.first_failure)


def test_reflection_exact():
    for n in (1, 2, 3, 10, 37):
        rep = reflection_check(n)
        assert rep.holds and rep.identity_id == "reflect"


def test_alpha_poly_case_split():
    # n=1: -q^-2 - q^-1 + 1, n=2: -q^-3 - 2q^-1 + 1, n>=3 fills in the gap
    a1 = alpha_poly(1)
    assert a1.coefficients(-3, 1) == [0, -1, -1, 1]
    a2 = alpha_poly(2)
    assert a2.coefficients(-3, 1) == [-1, 0, -2, 1]
    a4 = alpha_poly(4)
    assert a4.coefficients(-5, 1) == [-1, 0, -1, -1, -2, 1]


def test_laurent_family_n1_prefixes():
    fam = laurent_family(1, 12)
    assert fam.phi.coefficients(0, 6) == [1, 0, 1, -1, 2, -4]
    assert fam.recip.valuation == 1
    assert fam.recip.coefficients(1, 6) == [1, -1, 2, -4, 8]
    assert fam.negrecip.valuation == -1
    assert fam.negrecip.coefficients(-1, 4) == [-1, 0, 1, -1, 1]
    assert fam.neg.valuation == -2
    assert fam.neg.coefficients(-2, 3) == [-1, -1, 1, -1, 1]


def test_laurent_family_consistency_with_actions():
    from qmetallic.qnum import negate, neg_reciprocal, reciprocal
    fam = laurent_family(2, 16)
    phi = phi_series(2, 30)
    for attr, action in (("recip", reciprocal), ("negrecip", neg_reciprocal),
                         ("neg", negate)):
        got = action(phi, 10)
        want = getattr(fam, attr)
        assert got.first_mismatch(want, upto=9) is None, attr


def test_laurent_family_order_precondition():
    with pytest.raises(ValueError):
        laurent_family(3, 7)


def test_identity_report_validation():
    with pytest.raises(ValueError):
        IdentityReport(n=1, identity_id="nonsense", checked_order=5,
                       holds=True, first_failure=None)


# -- conjugate pairing for general quadratic irrationals ----------------------------


def test_conjugate_pairing_sqrt7():
    cf = parse_cf("2;(1,1,1,4)*")
    rep = conjugate_pair_check(cf, 40)
    assert rep.holds and rep.identity_id == "conjugate"
    assert conjugate_onset(cf, 40) == 3


def test_conjugate_pairing_golden():
    cf = parse_cf("1;(1)*")
    assert conjugate_onset(cf, 40) == 2


def test_conjugate_pairing_needs_monomial_denominator():
    cf = parse_cf("0;2,(1,1,1,4)*")     # deformed 1/sqrt(7)
    with pytest.raises(NotMonomialDenominator):
        conjugate_pair_check(cf, 30)
    # the onset probe degrades gracefully instead
    assert conjugate_onset(cf, 30) is None
