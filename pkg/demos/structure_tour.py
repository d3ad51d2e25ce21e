"""Tour of the combinatorial side.

The magnitudes of the n=1 coefficients count planar chain structures
with non-crossing arcs of span greater than 1 (and rank-0 structures
are counted by Motzkin numbers).  The signs alternate, which flips
ratio monotonicity but leaves log-behaviour untouched.
"""

from qmetallic.logbehaviour import classify, sign_flip_lemma_check
from qmetallic.metallic import kappa_values
from qmetallic.rna import generate_structures, rna_recurrence


def _draw(size: int, arcs) -> str:
    rows = []
    for i, j in arcs:
        row = [" "] * size
        row[i - 1] = row[j - 1] = "+"
        for k in range(i, j - 1):
            row[k] = "-"
        rows.append("".join(row))
    rows.append("".join(str(v % 10) for v in range(1, size + 1)))
    return "\n".join(rows)


def main() -> None:
    print("all arc structures of size 5 (span > 1, non-crossing):")
    for st in generate_structures(5, 1):
        print(_draw(5, st))
        print()

    a = rna_recurrence(11)
    kv = kappa_values(1, 11)
    print("count vs signed coefficient (n=1):")
    print("  l      count a_(l-1)   kappa_l")
    for l in range(2, 11):
        print(f"  {l:<6} {a[l - 1]:<15} {kv[l]}")
    print()

    print("log-behaviour of the coefficient magnitudes:")
    for n, lmax in ((1, 2000), (2, 2000), (6, 2000), (19, 5000)):
        rep = classify(n, lmax)
        extra = f", onset l={rep.onset}" if rep.onset is not None else ""
        print(f"  n={n:<3} [1,{lmax}]: {rep.classification}{extra}")
    print()

    res = sign_flip_lemma_check(500)
    print(f"sign-flip invariance of log-behaviour: "
          f"{'confirmed' if res else 'FAILED'} to l={res.checked_order}")


if __name__ == "__main__":
    main()
