"""Verification of the shipped golden fixtures.

Series, polynomial, and quadratic-form fixtures are exact integer data
and must match recomputation bit for bit.  The three ratio tables are
reference prints with 15 significant digits whose last ~3 digits carry
reference-side rounding noise, so they are compared numerically: every
entry must agree to better than 5e-12 relative error, except the single
documented outlier entry (table2, l=1700, a near-cancellation point)
which is held at 5e-10.  See the repository notes for the measured
noise profile; recomputed values are precision-stable well beyond both
bounds.
"""

import json
import os

from mpmath import mp, mpf

from . import asymptotics as asym
from .identities import laurent_family
from .metallic import kappa_values, phi_series, poly_P, poly_Q, poly_R
from .qnum import negate, neg_reciprocal, parse_cf, q_real_truncated, quantize_quadratic
from .rna import motzkin_values, rna_recurrence
from .series import from_json, series_inverse

TABLE_LS = tuple(range(100, 2001, 100))
TABLE_INDEX = {"table1": 1, "table2": 2, "table3": 3}

REL_TOL = mpf("5e-12")
# (table, l) -> relaxed tolerance for the one documented noisy reference entry
DEFECT_TOL = {("table2", 1700): mpf("5e-10")}


def _read(goldens_dir: str, name: str):
    with open(os.path.join(goldens_dir, name)) as fh:
        if name.endswith(".json"):
            return json.load(fh)
        return fh.read()


def _series_mismatch(got, want_doc) -> bool:
    want = from_json(want_doc)
    if got.valuation != want.valuation:
        return True
    hi = int(want.order)
    return got.coefficients(want.valuation, hi) != want.coefficients(
        want.valuation, hi)


def golden_failures(goldens_dir: str, precision_bits: int = 256) -> list:
    """Recompute every fixture; returns human-readable failure strings."""
    failures = []

    doc = _read(goldens_dir, "series_metallic.json")
    for name, entry in doc.items():
        n = entry["n"]
        want = [int(t) for t in entry["series"]["coeffs"]]
        if kappa_values(n, len(want)) != want:
            failures.append(f"series_metallic:{name}")

    doc = _read(goldens_dir, "series_family_n1.json")
    fam = laurent_family(1, 20)
    got = {
        "reciprocal": fam.recip,
        "negative_reciprocal": fam.negrecip,
        "negative": fam.neg,
        "multiplicative_inverse": series_inverse(phi_series(1, 25), 20),
    }
    for name, entry in doc.items():
        if _series_mismatch(got[name], entry["series"]):
            failures.append(f"series_family_n1:{name}")

    doc = _read(goldens_dir, "series_sqrt7.json")
    base = q_real_truncated(parse_cf(doc["sqrt7"]["cf"]), 30)
    got = {
        "sqrt7": base,
        "inv_sqrt7": q_real_truncated(parse_cf(doc["inv_sqrt7"]["cf"]), 30),
        "neg_sqrt7": negate(base, 24),
        "neg_inv_sqrt7": neg_reciprocal(base, 24),
    }
    for name, entry in doc.items():
        if _series_mismatch(got[name], entry["series"]):
            failures.append(f"series_sqrt7:{name}")

    doc = _read(goldens_dir, "series_counts.json")
    if rna_recurrence(len(doc["rank1_counts"])) != [
            int(t) for t in doc["rank1_counts"]]:
        failures.append("series_counts:rank1_counts")
    if motzkin_values(len(doc["motzkin"])) != [int(t) for t in doc["motzkin"]]:
        failures.append("series_counts:motzkin")

    doc = _read(goldens_dir, "quadratic_forms.json")
    for name, entry in doc.items():
        form = quantize_quadratic(parse_cf(entry["cf"]))
        ok = (list(form.R.coeffs) == entry["R"]
              and list(form.P.coeffs) == entry["P"]
              and list(form.S.coeffs) == entry["S"]
              and form.sign == entry["sign"])
        if not ok:
            failures.append(f"quadratic_forms:{name}")

    doc = _read(goldens_dir, "polynomials.json")
    fns = {"R": poly_R, "P": poly_P, "Q": poly_Q}
    for kind, table in doc.items():
        for n_str, coeffs in table.items():
            if list(fns[kind](int(n_str)).coeffs) != coeffs:
                failures.append(f"polynomials:{kind}_{n_str}")

    for name, n in TABLE_INDEX.items():
        want = {}
        for line in _read(goldens_dir, f"{name}.csv").splitlines()[1:]:
            l_str, v = line.split(",", 1)
            want[int(l_str)] = v
        got_rows = dict(asym.ratio_table(n, TABLE_LS, precision_bits))
        with mp.workprec(precision_bits):
            for l in TABLE_LS:
                tol = DEFECT_TOL.get((name, l), REL_TOL)
                ref = mpf(want[l])
                rel = abs(mpf(got_rows[l]) - ref) / abs(ref)
                if rel >= tol:
                    failures.append(f"{name}:l={l}:rel={mp.nstr(rel, 3)}")

    return failures
