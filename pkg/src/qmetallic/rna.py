"""Noncrossing partial matchings with a span constraint, and their bridge
to the deformed golden-ratio coefficients.

A structure on positions 1..l is a set of arcs (a, b), a < b, such that no
two arcs cross or share an endpoint and every arc spans more than `rank`
positions (b - a > rank).  With rank 1 the counts a_l form the classical
"generalized Catalan" sequence 1, 1, 1, 2, 4, 8, 17, 37, ...; the deformed
golden-ratio coefficients recover them up to sign via

    kappa_l = (-1)^l a_{l-1}   for l >= 2.

Rank 0 gives the Motzkin numbers.  For larger trace the analogous count
diverges from the coefficient sequence almost immediately; the module pins
down the first disagreement.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import BudgetExceeded, NonIntegralResult
from .metallic import CheckResult, kappa_values

ENUMERATION_BUDGET = 22
_BRUTE_BUDGET = 10


def _check_args(length: int, rank: int) -> tuple:
    length, rank = int(length), int(rank)
    if length < 0:
        raise ValueError("length must be >= 0")
    if rank < 0:
        raise ValueError("rank must be >= 0")
    return length, rank


def _count_table(length: int, rank: int) -> list:
    f = [1] * (length + 1)
    for m in range(1, length + 1):
        total = f[m - 1]  # last position unpaired
        # last position paired with a, m - a > rank; splits inside/outside
        for a in range(1, m - rank):
            total += f[a - 1] * f[m - a - 1]
        f[m] = total
    return f


def count_structures(length: int, rank: int = 1) -> int:
    """Number of structures on `length` positions with span > rank."""
    length, rank = _check_args(length, rank)
    return _count_table(length, rank)[length]


def enumerate_structures(length: int, rank: int = 1) -> int:
    """Exact count by recursive interval construction (leftmost vertex is
    isolated or arced to each admissible partner; noncrossing makes the
    inside/outside intervals independent).  Budgeted like the generator it
    certifies, although the recursion itself is polynomial."""
    length, rank = _check_args(length, rank)
    if length > ENUMERATION_BUDGET:
        raise BudgetExceeded(
            f"structure enumeration capped at {ENUMERATION_BUDGET} positions"
        )
    return _count_table(length, rank)[length]


def generate_structures(length: int, rank: int = 1) -> list:
    """All structures explicitly, as sorted tuples of 1-based arcs (a, b).
    Exponential; kept as a second counting oracle for small sizes."""
    length, rank = _check_args(length, rank)
    if length > ENUMERATION_BUDGET:
        raise BudgetExceeded(
            f"structure enumeration capped at {ENUMERATION_BUDGET} positions"
        )
    memo: dict = {}

    def rec(lo: int, hi: int) -> list:
        if lo > hi:
            return [()]
        key = (lo, hi)
        got = memo.get(key)
        if got is not None:
            return got
        out = list(rec(lo, hi - 1))  # hi unpaired
        for a in range(lo, hi - rank):
            for outside in rec(lo, a - 1):
                for inside in rec(a + 1, hi - 1):
                    out.append(outside + inside + ((a, hi),))
        memo[key] = out
        return out

    return sorted(tuple(sorted(s)) for s in rec(1, length))


def _brute_structures(length: int, rank: int) -> list:
    """Independent oracle: filter every subset of candidate arcs."""
    assert length <= _BRUTE_BUDGET, "oracle budget"
    arcs = [
        (a, b)
        for a in range(1, length + 1)
        for b in range(a + rank + 1, length + 1)
    ]

    def compatible(x, y) -> bool:
        a, b = x
        c, d = y
        if len({a, b, c, d}) < 4:
            return False
        return not (a < c < b < d or c < a < d < b)

    out = []
    for k in range(len(arcs) + 1):
        for sub in combinations(arcs, k):
            if all(compatible(x, y) for x, y in combinations(sub, 2)):
                out.append(tuple(sorted(sub)))
        if k and not any(len(s) == k for s in out):
            break  # no matching of size k exists, none bigger will
    return sorted(out)


# -- the rank-1 sequence ----------------------------------------------------------


def rna_recurrence(L: int) -> list:
    """a_0..a_{L-1} by the quadratic convolution recurrence."""
    if L <= 0:
        return []
    a = [1, 1][:L]
    for l in range(1, L - 1):
        nxt = a[l]
        for j in range(l - 1):
            nxt += a[j] * a[l - 1 - j]
        a.append(nxt)
    return a


def rna_p_recurrence_check(L: int) -> CheckResult:
    """Check (l+2)a_l - (2l+1)a_{l-1} - (l-1)a_{l-2} - (2l-5)a_{l-3}
    + (l-4)a_{l-4} == 0 for 4 <= l < L."""
    a = rna_recurrence(L)
    for l in range(4, L):
        s = (
            (l + 2) * a[l]
            - (2 * l + 1) * a[l - 1]
            - (l - 1) * a[l - 2]
            - (2 * l - 5) * a[l - 3]
            + (l - 4) * a[l - 4]
        )
        if s != 0:
            return CheckResult(False, l, L, "rna-p-recurrence")
    return CheckResult(True, None, L, "rna-p-recurrence")


def rna_closed_form(l: int) -> int:
    """Narayana-style sum; the summation index shift is fixed by the small
    values a_2 = 1, a_6 = 17."""
    if l < 0:
        raise ValueError("negative index")
    if l < 2:
        return 1
    total = Fraction(0)
    for k in range(1, (l + 1) // 2 + 1):
        total += Fraction(comb(l + 1 - k, k) * comb(l + 1 - k, k - 1), l + 1 - k)
    if total.denominator != 1:
        raise NonIntegralResult(f"closed form at {l}: {total}")
    return total.numerator


def motzkin_values(L: int) -> list:
    """Motzkin numbers M_0..M_{L-1}."""
    if L <= 0:
        return []
    m = [1, 1][:L]
    for k in range(1, L - 1):
        nxt = m[k]
        for i in range(k):
            nxt += m[i] * m[k - 1 - i]
        m.append(nxt)
    return m


# -- bridge to the deformed golden ratio -------------------------------------------


def sign_bridge_check(L: int) -> CheckResult:
    """kappa_l = (-1)^l a_{l-1} for 2 <= l < L, and the equivalent series
    statement F(q) = 1 + q - q A(-q) checked on the same window."""
    kv = kappa_values(1, L)
    a = rna_recurrence(L)
    for l in range(2, L):
        if kv[l] != (-1) ** l * a[l - 1]:
            return CheckResult(False, l, L, "sign-bridge")
    # series form: coefficient of q^l in 1 + q - q A(-q)
    for l in range(L):
        if l == 0:
            want = 1
        else:
            want = (1 if l == 1 else 0) - (-1) ** (l - 1) * a[l - 1]
        if kv[l] != want:
            return CheckResult(False, l, L, "sign-bridge")
    return CheckResult(True, None, L, "sign-bridge")


def family_divergence(L: int) -> int | None:
    """First l in [1, L) where the rank-2 count differs from the silver
    coefficient pattern |kappa_{l+1}| that works at rank 1.  None if the
    families agree on the whole window."""
    if L > ENUMERATION_BUDGET:
        raise BudgetExceeded(
            f"structure counting capped at {ENUMERATION_BUDGET} positions"
        )
    return _alignment_gap(2, 2, L)


def _alignment_gap(n: int, rank: int, lmax: int) -> int | None:
    """First l in [1, lmax) with count(l, rank) != |kappa_{l+1}(phi_n)|."""
    kv = kappa_values(n, lmax + 1)
    f = _count_table(lmax, rank)
    for l in range(1, lmax):
        if f[l] != abs(kv[l + 1]):
            return l
    return None
