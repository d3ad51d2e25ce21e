"""Command-line front end.

Subcommands: coeffs, verify, tables, asymptotics, radius, identities,
rna, logconv, quantize, hankel.  Global flags: --precision-bits,
--format {json,csv}, --cache-dir, --jobs.  All outputs are decimal
strings, so a rerun with equal parameters is byte-identical.

Exit codes: 0 success / all checks pass; 1 a verification check failed;
2 bad usage or an argument outside a documented constraint.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from mpmath import mp

from . import asymptotics as asym
from .cache import RunManifest, atomic_write_text, cache_load, cached_table
from .errors import BudgetExceeded, CacheCorrupt, NotMonomialDenominator
from .identities import (check_all, conjugate_onset, conjugate_pair_check,
                         mult_inverse_check, reflection_check)
from .logbehaviour import classify, sign_flip_lemma_check
from .metallic import (ENGINE_TAGS, canonical_engine_tag, hankel,
                       kappa_values, verify_functional_equation, verify_ode)
from .qnum import (cf_to_text, parse_cf, q_rational, quantize_quadratic,
                   rational_value)
from .rna import count_structures, enumerate_structures, sign_bridge_check
from .series import to_json as series_to_json

TABLE_LS = tuple(range(100, 2001, 100))
_TABLE_N = {"table1": 1, "table2": 2, "table3": 3}


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _fail(message: str, code: int = 2) -> int:
    sys.stderr.write(message + "\n")
    return code


def _emit_series(series, fmt: str) -> None:
    if fmt == "json":
        _out(json.dumps(series_to_json(series), indent=1))
    else:
        lines = ["l,kappa"]
        lines += [f"{series.valuation + i},{c}"
                  for i, c in enumerate(series.coefficients(
                      series.valuation, int(series.order)))]
        _out("\n".join(lines))


def cmd_coeffs(args) -> int:
    try:
        tag = canonical_engine_tag(args.engine)
    except ValueError as exc:
        return _fail(f"coeffs: {exc}")
    if tag == "closedform" and args.n > 3:
        return _fail("coeffs: engine 'closed' requires n <= 3 "
                     "(closed-form sums exist for the first three indices only)")
    table = cached_table(args.n, args.L, tag, args.cache_dir)
    _emit_series(table.to_series(), args.format)
    return 0


def _verify_checks(n: int, L: int, cache_dir):
    """Yield (name, ok, detail) pairs for the full per-index suite."""
    fe = verify_functional_equation(n, L)
    yield "functional_equation", bool(fe), {"checked_order": fe.checked_order,
                                            "first_failure": fe.first_failure}
    ode = verify_ode(n, L)
    yield "ode", bool(ode), {"checked_order": ode.checked_order,
                             "first_failure": ode.first_failure}

    want = kappa_values(n, L)
    engines_ok, bad = True, None
    for tag in ("conv", "precurrence", "sqrt"):
        got = list(cached_table(n, L, tag, cache_dir).values)
        if got != want:
            engines_ok, bad = False, tag
            break
    yield "engine_agreement", engines_ok, {"engines": ["conv", "precurrence",
                                                       "sqrt"], "bad": bad}

    reports = check_all(n, L) + [mult_inverse_check(n, L), reflection_check(n)]
    bad_ids = [r.identity_id for r in reports if not r.holds]
    yield "identities", not bad_ids, {"failed": bad_ids}

    hk_ok, hk_bad = True, None
    for s in range(0, n + 2):
        for j in range(1, 13):
            d = hankel(n, s, j)
            if d not in (-1, 0, 1):
                hk_ok, hk_bad = False, {"s": s, "j": j, "det": str(d)}
                break
        if not hk_ok:
            break
    yield "hankel_range", hk_ok, {"max_s": n + 1, "max_j": 12, "bad": hk_bad}

    if n == 1:
        sb = sign_bridge_check(min(L, 1000))
        yield "sign_bridge", bool(sb), {"checked_order": sb.checked_order,
                                        "first_failure": sb.first_failure}
        sf = sign_flip_lemma_check(min(L, 1000))
        yield "sign_flip_lemma", bool(sf), {"first_failure": sf.first_failure}

    bad_files = []
    for tag in ENGINE_TAGS:
        try:
            cache_load((n, tag), cache_dir)
        except FileNotFoundError:
            continue
        except CacheCorrupt as exc:
            bad_files.append(str(exc))
    yield "cache_integrity", not bad_files, {"corrupt": bad_files}


def _identity_reports(n: int, order: int) -> list:
    return check_all(n, order) + [mult_inverse_check(n, order),
                                  reflection_check(n)]


def cmd_verify(args) -> int:
    if args.what == "identities":
        reports = _identity_reports(args.n, args.order or args.L)
        _out(json.dumps([r.to_json() for r in reports], indent=1))
        bad = next((r for r in reports if not r.holds), None)
        return 0 if bad is None else _fail(
            f"verify: first failing check: identity {bad.identity_id}", 1)

    if args.golden:
        return _verify_golden(args)

    checks = []
    for name, ok, detail in _verify_checks(args.n, args.L, args.cache_dir):
        checks.append({"name": name, "ok": ok, "detail": detail})
    summary = {"n": args.n, "L": args.L, "ok": all(c["ok"] for c in checks),
               "checks": checks}
    _out(json.dumps(summary, indent=1))
    if not summary["ok"]:
        first = next(c["name"] for c in checks if not c["ok"])
        return _fail(f"verify: first failing check: {first}", 1)
    return 0


def _goldens_dir() -> str:
    return os.path.join(os.path.dirname(os.path.abspath(__file__)), "goldens")


def _verify_golden(args) -> int:
    """Compare shipped fixtures: series exactly, tables numerically."""
    from .goldencheck import golden_failures

    failures = golden_failures(_goldens_dir(), args.precision_bits)
    _out(json.dumps({"golden_ok": not failures, "failures": failures},
                    indent=1))
    if failures:
        return _fail(f"verify: first failing check: {failures[0]}", 1)
    return 0


def cmd_tables(args) -> int:
    names = list(_TABLE_N) if args.which == "all" else [args.which]
    os.makedirs(args.out_dir, exist_ok=True)
    for name in names:
        n = _TABLE_N[name]
        rows = asym.ratio_table(n, TABLE_LS, args.precision_bits)
        path = os.path.join(args.out_dir, f"{name}.csv")
        atomic_write_text(
            path, "l,ratio\n" + "\n".join(f"{l},{v}" for l, v in rows) + "\n")
        manifest = RunManifest(
            command="tables",
            parameters={"which": name, "n": n, "L": list(TABLE_LS),
                        "precision_bits": args.precision_bits})
        manifest.add_output(path)
        manifest.write(path)
        _out(path)
    return 0


def _mpc_str(z, digits: int = 30) -> dict:
    return {"re": mp.nstr(z.real, digits), "im": mp.nstr(z.imag, digits)}


def cmd_asymptotics(args) -> int:
    rep = asym.singularity_report(args.n, args.precision_bits)
    doc = {
        "n": rep.n,
        "precision_bits": rep.precision_bits,
        "radius": mp.nstr(rep.radius, 30),
        "dominant": [_mpc_str(z) for z in rep.dominant],
        "gamma": [_mpc_str(asym.gamma_coeff(args.n, z, args.precision_bits))
                  for z in rep.dominant],
        "branch_flipped": rep.branch_flipped,
        "roots": [_mpc_str(z) for z in rep.all_roots],
    }
    _out(json.dumps(doc, indent=1))
    return 0


def cmd_radius(args) -> int:
    r = asym.radius(args.n, args.precision_bits)
    if args.format == "csv":
        _out(f"n,radius\n{args.n},{mp.nstr(r, 20)}")
    else:
        _out(json.dumps({"n": args.n,
                         "precision_bits": args.precision_bits,
                         "radius": mp.nstr(r, 20)}, indent=1))
    return 0


def cmd_identities(args) -> int:
    reports = _identity_reports(args.n, args.order)
    _out(json.dumps([r.to_json() for r in reports], indent=1))
    bad = next((r for r in reports if not r.holds), None)
    return 0 if bad is None else _fail(
        f"identities: failed: {bad.identity_id}", 1)


def cmd_rna(args) -> int:
    if args.action == "count":
        try:
            c = enumerate_structures(args.size, args.rank)
        except BudgetExceeded as exc:
            return _fail(f"rna: {exc}")
        if args.format == "csv":
            _out(f"l,rank,count\n{args.size},{args.rank},{c}")
        else:
            _out(json.dumps({"l": args.size, "rank": args.rank,
                             "count": str(c)}, indent=1))
        return 0
    # grid
    rows = [(l, r, count_structures(l, r))
            for l in range(1, args.max_size + 1)
            for r in range(0, args.max_rank + 1)]
    if args.format == "json":
        _out(json.dumps([{"l": l, "rank": r, "count": str(c)}
                         for l, r, c in rows], indent=1))
    else:
        _out("l,rank,count\n" + "\n".join(f"{l},{r},{c}" for l, r, c in rows))
    return 0


def _classify_row(task) -> tuple:
    n, lmax = task
    rep = classify(n, lmax)
    return (n, lmax, rep.classification,
            "" if rep.onset is None else rep.onset,
            "" if rep.first_positive is None else rep.first_positive,
            "" if rep.first_negative is None else rep.first_negative)


def cmd_logconv(args) -> int:
    if args.n_range:
        try:
            lo, hi = (int(t) for t in args.n_range.split("..", 1))
        except ValueError:
            return _fail("logconv: --n-range wants A..B")
        if lo < 1 or hi < lo:
            return _fail("logconv: --n-range wants 1 <= A <= B")
        tasks = [(n, args.lmax) for n in range(lo, hi + 1)]
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                rows = list(pool.map(_classify_row, tasks))
        else:
            rows = [_classify_row(t) for t in tasks]
        _out("n,l_max,classification,onset,first_positive,first_negative\n"
             + "\n".join(",".join(str(c) for c in row) for row in rows))
        return 0
    if args.n is None:
        return _fail("logconv: need --n or --n-range")
    rep = classify(args.n, args.lmax)
    _out(json.dumps(rep.to_json(), indent=1))
    return 0


def cmd_quantize(args) -> int:
    try:
        cf = parse_cf(args.cf)
    except ValueError as exc:
        return _fail(f"quantize: {exc}")
    doc = {"cf": cf_to_text(cf)}
    if cf.period:
        form = quantize_quadratic(cf)
        doc["kind"] = "quadratic"
        doc["R"] = list(form.R.coeffs)
        doc["P"] = list(form.P.coeffs)
        doc["S"] = list(form.S.coeffs)
        doc["sign"] = form.sign
        doc["series"] = series_to_json(form.to_series(12))
        try:
            onset = conjugate_onset(cf, 40)
            holds = bool(conjugate_pair_check(cf, 40))
        except NotMonomialDenominator:
            onset, holds = None, None
        doc["conjugate_pairing"] = {"holds_from": onset, "holds": holds}
    else:
        r, s = rational_value(cf)
        qr = q_rational(r, s)
        doc["kind"] = "rational"
        doc["R"] = list(qr.numerator.coeffs)
        doc["S"] = list(qr.denominator.coeffs)
        doc["series"] = series_to_json(qr.to_series(12))
    _out(json.dumps(doc, indent=1))
    return 0


def cmd_hankel(args) -> int:
    header = "j," + ",".join(f"s{s}" for s in range(0, args.max_s + 1))
    lines = [header]
    for j in range(1, args.max_j + 1):
        row = [str(j)] + [str(hankel(args.n, s, j))
                          for s in range(0, args.max_s + 1)]
        lines.append(",".join(row))
    _out("\n".join(lines))
    return 0


GLOBAL_DEFAULTS = {"precision_bits": 256, "format": "json",
                   "cache_dir": None, "jobs": 1}


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand; SUPPRESS
    # keeps a subparser from clobbering a value parsed at the top level
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-bits", type=int,
                        default=argparse.SUPPRESS,
                        help="working precision for root finding (default 256)")
    common.add_argument("--format", choices=("json", "csv"),
                        default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", default=argparse.SUPPRESS,
                        help="coefficient cache directory "
                             "(default $QMETALLIC_CACHE_DIR or "
                             "~/.cache/qmetallic)")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS,
                        help="parallel workers for batch commands")

    top = argparse.ArgumentParser(
        prog="qmetallic",
        parents=[common],
        description="Exact power-series coefficients of q-deformed metallic "
                    "numbers: engines, verification suites, asymptotics, and "
                    "combinatorial cross-checks.")
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add("coeffs", help="emit a coefficient table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--L", type=int, default=50)
    p.add_argument("--engine", choices=("conv", "prec", "sqrt", "closed"),
                   default="prec")
    p.set_defaults(func=cmd_coeffs)

    p = add("verify", help="run the verification suite")
    p.add_argument("what", nargs="?", choices=("all", "identities"),
                   default="all")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--L", type=int, default=300)
    p.add_argument("--order", type=int, default=None,
                   help="order for 'verify identities' (defaults to --L)")
    p.add_argument("--golden", action="store_true",
                   help="compare against the shipped golden fixtures")
    p.set_defaults(func=cmd_verify)

    p = add("tables", help="regenerate the three ratio tables")
    p.add_argument("which", nargs="?",
                   choices=("table1", "table2", "table3", "all"),
                   default="all")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_tables)

    p = add("asymptotics", help="dominant singularity report")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_asymptotics)

    p = add("radius", help="convergence radius of the series")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_radius)

    p = add("identities", help="run the identity suite")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--order", type=int, default=300)
    p.set_defaults(func=cmd_identities)

    p = add("rna", help="secondary-structure counts")
    act = p.add_subparsers(dest="action", required=True)
    c = act.add_parser("count", parents=[common], help="one exact count")
    c.add_argument("--size", type=int, required=True)
    c.add_argument("--rank", type=int, default=1)
    g = act.add_parser("grid", parents=[common], help="(l, rank, count) grid")
    g.add_argument("--max-size", type=int, default=22)
    g.add_argument("--max-rank", type=int, default=3)
    p.set_defaults(func=cmd_rna)

    p = add("logconv", help="log-convexity classification")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--n-range", default=None, metavar="A..B")
    p.add_argument("--lmax", type=int, default=2000)
    p.set_defaults(func=cmd_logconv)

    p = add("quantize", help="quadratic form of a deformed CF")
    p.add_argument("--cf", required=True,
                   help="continued fraction 'a0;a1,...,(p1,...)*'")
    p.set_defaults(func=cmd_quantize)

    p = add("hankel", help="Hankel determinant grid (CSV)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-s", type=int, default=3)
    p.add_argument("--max-j", type=int, default=10)
    p.set_defaults(func=cmd_hankel)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    if args.precision_bits < 128:
        return _fail("precision-bits must be >= 128")
    try:
        return args.func(args)
    except ValueError as exc:
        return _fail(f"{args.command}: {exc}")


if __name__ == "__main__":
    sys.exit(main())
