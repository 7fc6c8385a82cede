"""Command-line front end.

Subcommands: gf, moments, clt, llt, interp, verify, enumerate.  Output
is line-oriented JSON or plain text on stdout; exit codes are 0 for
success, 1 for a verification failure, 2 for usage errors.  Numeric
JSON stays exact: rationals are emitted as "p/q" strings and integers
too wide for a double (2^53 and up) as decimal strings, so consumers
that parse through floating point cannot silently truncate anything.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import sys
from fractions import Fraction
from pathlib import Path

from .elements import SignedPermutation, des_count, ides_count, inv_count, iter_windows
from .groups import parse_descriptor
from .interplab import fetch_findstat, ingest, lagrange_guess, summarize
from .limits import clt_check_des, clt_check_inv, llt_sup_distance
from .moments import moments_from_polynomial
from .polynomials import gf_des, gf_des_plus_ides, gf_inv
from .rootsys import build_root_system, enumerate_inversion_sets
from .verify import run_suite, suite_names

__all__ = ["main", "build_parser"]

_GF = {"inv": gf_inv, "des": gf_des, "des+ides": gf_des_plus_ides}


def _json_int(value):
    # ints at 2^53 and beyond become strings; doubles are exact below that
    return value if -2 ** 53 < value < 2 ** 53 else str(value)


def _json_frac(value):
    return str(Fraction(value))


def _emit(doc, stream):
    json.dump(doc, stream, separators=(",", ":"))
    stream.write("\n")


def _parse_range(text):
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"range must look like 10..40, got {text!r}")
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise ValueError(f"range must look like 10..40, got {text!r}") from None
    if hi < lo:
        raise ValueError(f"empty range {text!r}")
    return range(lo, hi + 1)


# ---------------------------------------------------------------------------
# subcommands

def _cmd_gf(args, stream):
    f = _GF[args.stat](parse_descriptor(args.group))
    if args.emit_poly:
        Path(args.emit_poly).write_text(f.to_json() + "\n", encoding="utf-8")
    _emit([_json_int(c) for c in f.coefficients], stream)
    return 0


def _cmd_moments(args, stream):
    d = parse_descriptor(args.group)
    summary = moments_from_polynomial(_GF[args.stat](d), k_max=args.k_max)
    _emit({
        "group": str(d),
        "statistic": args.stat,
        "mean": _json_frac(summary.mean),
        "variance": _json_frac(summary.variance),
        "central_moments": {str(k): _json_frac(v)
                            for k, v in summary.central_moments.items()},
        "cumulants": {str(k): _json_frac(v)
                      for k, v in summary.cumulants.items()},
        "normalized_cumulants": {str(k): v
                                 for k, v in summary.normalized_cumulants.items()},
    }, stream)
    return 0


def _clt_doc(args, report):
    doc = {
        "spec": report.spec_text,
        "statistic": args.stat,
        "clt_holds": report.clt_holds,
        "symbolic": report.symbolic,
        "rank_increasing": report.rank_increasing,
    }
    if args.stat == "inv":
        doc["verdict"] = report.ratio.verdict
        doc["fitted_exponent"] = report.ratio.fitted_exponent
        doc["rationale"] = report.ratio.rationale
        ratios = dict((n, v) for n, v in report.ratio.samples)
        doc["per_n"] = [
            {"n": n, "rank": r, "d_n": dn, "variance": _json_frac(var),
             "ratio": ratios[n]}
            for n, r, dn, var in report.per_n]
    else:
        doc["verdict"] = report.trend.verdict
        doc["fitted_exponent"] = report.trend.fitted_exponent
        doc["rationale"] = report.trend.rationale
        doc["conditions"] = {
            "rank_to_infinity": report.cond_rank_to_infinity,
            "rank_unbounded": report.cond_rank_unbounded,
            "dihedral_divergence": report.cond_dihedral_divergence,
        }
        sigmas = dict((n, v) for n, v in report.trend.samples)
        sums = dict(report.partial_sums)
        doc["per_n"] = [
            {"n": n, "rank": r, "variance": _json_frac(var),
             "s_n": sigmas[n], "dihedral_inverse_sum": sums[n]}
            for n, r, var in report.per_n]
    return doc


def _clt_table(doc, stream):
    if "d_n" in (doc["per_n"][0] if doc["per_n"] else {}):
        print(f"{'n':>6} {'rank':>6} {'d_n':>8} {'ratio':>12}", file=stream)
        for row in doc["per_n"]:
            print(f"{row['n']:>6} {row['rank']:>6} {row['d_n']:>8} "
                  f"{row['ratio']:>12.6f}", file=stream)
    else:
        print(f"{'n':>6} {'rank':>6} {'s_n':>12} {'1/m sum':>12}", file=stream)
        for row in doc["per_n"]:
            print(f"{row['n']:>6} {row['rank']:>6} {row['s_n']:>12.6f} "
                  f"{row['dihedral_inverse_sum']:>12.6f}", file=stream)
    print(f"verdict: {doc['verdict']}", file=stream)
    print(f"clt_holds: {doc['clt_holds']}", file=stream)
    if doc["symbolic"]:
        print(f"symbolic: {doc['symbolic']}", file=stream)


def _cmd_clt(args, stream):
    ns = _parse_range(args.range)
    check = clt_check_inv if args.stat == "inv" else clt_check_des
    if args.threads > 1:
        with concurrent.futures.ThreadPoolExecutor(args.threads) as pool:
            report = check(args.spec, ns, map_fn=pool.map)
    else:
        report = check(args.spec, ns)
    doc = _clt_doc(args, report)
    if args.emit == "json":
        _emit(doc, stream)
    else:
        _clt_table(doc, stream)
    return 0


def _cmd_llt(args, stream):
    d = parse_descriptor(args.group)
    report = llt_sup_distance(_GF[args.stat](d))
    _emit({
        "group": str(d),
        "statistic": args.stat,
        "distance": report.distance,
        "degenerate": report.degenerate,
    }, stream)
    return 0


def _cmd_interp(args, stream):
    if args.fetch:
        ds = fetch_findstat(args.fetch, cache_dir=args.cache_dir)
    else:
        ds = ingest(args.input, args.format)
    rows = summarize(ds)
    doc = {
        "statistic": ds.name,
        "target": args.target,
        "rows": [{
            "n": row.n,
            "count": _json_int(row.count),
            "mean": _json_frac(row.mean),
            "variance": _json_frac(row.variance),
            "normalized_cumulants": list(row.formatted),
        } for row in rows],
    }
    points = [(row.n, getattr(row, args.target)) for row in rows]
    try:
        doc["formulas"] = [str(f) for f in lagrange_guess(points, target=args.target)]
    except ValueError as exc:
        doc["formulas"] = []
        doc["note"] = str(exc)
    _emit(doc, stream)
    return 0


def _cmd_enumerate(args, stream):
    d = parse_descriptor(args.group)
    if len(d.factors) != 1:
        raise ValueError("enumerate takes one irreducible factor at a time")
    label = d.factors[0]
    limit = args.limit
    if label.family in ("A", "B", "D"):
        length = label.rank + 1 if label.family == "A" else label.rank
        for window in iter_windows(label.family, length, start=0, stop=limit):
            p = SignedPermutation(window, label.family)
            line = "[" + ",".join(str(v) for v in window) + "]"
            print(f"{line} inv={inv_count(p)} des={des_count(p)} "
                  f"ides={ides_count(p)}", file=stream)
        return 0
    rs = build_root_system(label)
    for count, rec in enumerate(enumerate_inversion_sets(rs)):
        if count >= limit:
            break
        print(f"inversions={rec.inversion_set:#x} length={rec.length} "
              f"des={rec.right_descents.bit_count()} "
              f"ides={rec.left_descents.bit_count()}", file=stream)
    return 0


def _cmd_verify(args, stream):
    failures = run_suite(args.suite, seed=args.seed, stream=stream)
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# parser

def build_parser():
    parser = argparse.ArgumentParser(
        prog="coxstat",
        description="Exact statistics on finite Coxeter groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gf", help="generating function coefficients")
    p.add_argument("--group", required=True, help='descriptor like "B4" or "A2 x I2(7)"')
    p.add_argument("--stat", required=True, choices=sorted(_GF))
    p.add_argument("--emit-poly", metavar="PATH",
                   help="also write the polynomial as a JSON file")
    p.set_defaults(func=_cmd_gf)

    p = sub.add_parser("moments", help="exact distribution summary")
    p.add_argument("--group", required=True)
    p.add_argument("--stat", required=True, choices=sorted(_GF))
    p.add_argument("--k-max", type=int, default=6)
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("clt", help="normal-limit diagnostics for a sequence")
    p.add_argument("--spec", required=True,
                   help='sequence like "A(n)" or "prod(I2(i), i=1..n)"')
    p.add_argument("--stat", required=True, choices=["inv", "des"])
    p.add_argument("--range", required=True, metavar="A..B")
    p.add_argument("--emit", choices=["json", "table"], default="json")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_clt)

    p = sub.add_parser("llt", help="local-limit sup distance")
    p.add_argument("--group", required=True)
    p.add_argument("--stat", required=True, choices=sorted(_GF))
    p.set_defaults(func=_cmd_llt)

    p = sub.add_parser("interp", help="summarize statistic data, guess formulas")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH")
    src.add_argument("--fetch", metavar="ID", help="FindStat identifier like St000004")
    p.add_argument("--format", choices=["values_json", "histogram_json", "findstat_csv"],
                   default="values_json")
    p.add_argument("--target", choices=["mean", "variance"], default="variance")
    p.add_argument("--cache-dir", metavar="DIR")
    p.set_defaults(func=_cmd_interp)

    p = sub.add_parser("verify", help="run a self-check suite")
    p.add_argument("--suite", required=True, choices=list(suite_names()))
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("enumerate", help="list elements with statistics")
    p.add_argument("--group", required=True)
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(func=_cmd_enumerate)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args, sys.stdout)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
