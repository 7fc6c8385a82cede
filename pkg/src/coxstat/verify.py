"""Self-check suites behind the ``verify`` subcommand.

Every check compares two independent routes to the same numbers:
closed forms against brute enumeration, fast recurrences against the
reflection walk, emitted files against re-ingestion.  A check prints
one ``ok``/``FAIL`` line; the runner returns the failure count so the
CLI can exit nonzero without raising.

Suites: quick, gf-inv, gf-des, moments, roots, cosets, limits, interp,
and full (everything except quick).  The seed only affects the random
subset checks in the moments suite.
"""

from __future__ import annotations

import json
import math
import random
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

from .elements import (
    SignedPermutation,
    all_positive_roots,
    RootSubset,
    des_count,
    descent_positions,
    ides_count,
    inv_count,
    iter_windows,
    st_count,
)
from .groups import group_order, parse_descriptor, rank
from .interplab import builtin_dataset, ingest, lagrange_guess, summarize
from .limits import (
    clt_check_des,
    clt_check_inv,
    llt_sup_distance,
    triangular_array_diagnostics,
)
from .moments import (
    double_coset_sum,
    double_eulerian_moments,
    eulerian_moments,
    mahonian_cumulants,
    mahonian_moments,
    moments_from_polynomial,
    second_moment_inv_type_b,
)
from .polynomials import (
    gf_des,
    gf_des_plus_ides,
    gf_inv,
    negated_real_roots,
    structural_checks,
)
from .rootsys import (
    build_root_system,
    compose_actions,
    element_actions,
    simple_action,
    statistics_tally,
)

__all__ = ["SUITES", "suite_names", "run_suite"]


# ---------------------------------------------------------------------------
# check helpers

def _eq(name, got, want):
    return (name, got == want, f"got {got!r}, want {want!r}")


def _close(name, got, want, tol):
    err = abs(got - want)
    return (name, err <= tol, f"got {got!r}, want {want!r} within {tol}")


def _window_tally(family, length, statfn):
    counts = {}
    for window in iter_windows(family, length):
        p = SignedPermutation(window, family)
        k = statfn(p)
        counts[k] = counts.get(k, 0) + 1
    return tuple(counts.get(k, 0) for k in range(max(counts) + 1))


_WINDOW_CASES = [("A4", "A", 5), ("B3", "B", 3), ("D4", "D", 4)]


# ---------------------------------------------------------------------------
# suites

def _suite_gf_inv(rng):
    for text, family, length in _WINDOW_CASES:
        got = gf_inv(parse_descriptor(text)).coefficients
        want = _window_tally(family, length, inv_count)
        yield _eq(f"gf-inv: {text} matches the window tally", got, want)
    for text in ["H3", "F4"]:
        d = parse_descriptor(text)
        got = gf_inv(d).coefficients
        want = statistics_tally(build_root_system(d.factors[0]), "inv")
        yield _eq(f"gf-inv: {text} matches the reflection walk", got, want)
    d = parse_descriptor("A3 x B2")
    f = gf_inv(d)
    yield _eq("gf-inv: A3 x B2 sums to the group order", f(1), group_order(d))
    rep = structural_checks(f)
    yield ("gf-inv: A3 x B2 is palindromic and unimodal",
           rep.palindromic and rep.unimodal, repr(rep))


def _suite_gf_des(rng):
    for text in ["A5", "B4", "D5", "I2(8)"]:
        d = parse_descriptor(text)
        got = gf_des(d).coefficients
        want = statistics_tally(build_root_system(d.factors[0]), "des")
        yield _eq(f"gf-des: {text} recurrence matches the reflection walk",
                  got, want)
    yield _eq("gf-des: I2(9) closed row", gf_des(parse_descriptor("I2(9)")).coefficients,
              (1, 16, 1))
    for text in ["E6", "H4"]:
        d = parse_descriptor(text)
        f = gf_des(d)
        ok = f(1) == group_order(d) and structural_checks(f).palindromic
        yield (f"gf-des: {text} sums to the group order and is palindromic",
               ok, repr(f.coefficients))
    got = gf_des_plus_ides(parse_descriptor("A3")).coefficients
    want = _window_tally("A", 4, lambda p: des_count(p) + ides_count(p))
    yield _eq("gf-des: A3 des+ides matches the window tally", got, want)


def _suite_moments(rng):
    for text in ["A4", "B3", "D4", "I2(7)", "H3", "F4"]:
        d = parse_descriptor(text)
        s = moments_from_polynomial(gf_inv(d), k_max=2)
        yield _eq(f"moments: {text} Mahonian closed forms match the polynomial",
                  mahonian_moments(d), (s.mean, s.variance))
        s = moments_from_polynomial(gf_des(d), k_max=2)
        yield _eq(f"moments: {text} Eulerian closed forms match the polynomial",
                  eulerian_moments(d), (s.mean, s.variance))
    d = parse_descriptor("E6")
    yield _eq("moments: E6 inversions have mean 18 and variance 29",
              mahonian_moments(d), (Fraction(18), Fraction(29)))
    for text in ["A3", "B3", "H3"]:
        d = parse_descriptor(text)
        s = moments_from_polynomial(gf_des_plus_ides(d), k_max=2)
        yield _eq(f"moments: {text} double-Eulerian closed forms match",
                  double_eulerian_moments(d), (s.mean, s.variance))
    for text in ["A5", "B4", "I2(9)"]:
        d = parse_descriptor(text)
        s = moments_from_polynomial(gf_inv(d), k_max=6)
        yield _eq(f"moments: {text} Mahonian cumulants match through order 6",
                  mahonian_cumulants(d, k_max=6), s.cumulants)
    for n in (2, 3):
        want = Fraction(
            sum(inv_count(SignedPermutation(w, "B")) ** 2
                for w in iter_windows("B", n)),
            2 ** n * math.factorial(n))
        yield _eq(f"moments: B{n} second moment closed form matches enumeration",
                  second_moment_inv_type_b(n), want)
    for family, length in [("B", 3), ("A", 5)]:
        roots = sorted(all_positive_roots(family, length).members)
        order = 2 ** length * math.factorial(length) if family == "B" \
            else math.factorial(length)
        ok = True
        detail = ""
        for _ in range(5):
            size = rng.randrange(1, len(roots) + 1)
            subset = RootSubset(family, length,
                                frozenset(rng.sample(roots, size)))
            total = sum(st_count(SignedPermutation(w, family), subset)
                        for w in iter_windows(family, length))
            if 2 * total != order * size:
                ok = False
                detail = f"subset of {size} roots gave total {total}"
                break
        label = f"{family}{length}" if family == "B" else f"A{length - 1}"
        yield (f"moments: {label} random root subsets average to |I|/2",
               ok, detail)


def _suite_roots(rng):
    for text in ["A4", "A6", "B4", "D5", "H3", "F4", "I2(5)", "I2(12)", "E6"]:
        d = parse_descriptor(text)
        bag = negated_real_roots(gf_des(d))
        yield (f"roots: {text} residual bound is at most 1e-9",
               len(bag.values) == rank(d) and bag.residual_bound <= 1e-9,
               f"residual {bag.residual_bound!r}")
        n = rank(d)
        _, var = eulerian_moments(d)
        yield _close(f"roots: {text} sum of 1/(1+q) equals n/2",
                     sum(1 / (1 + q) for q in bag.values), n / 2, 1e-8)
        yield _close(f"roots: {text} sum of q/(1+q)^2 equals the variance",
                     sum(q / (1 + q) ** 2 for q in bag.values), float(var), 1e-8)


def _parabolic_order(family, length, subset):
    """Order of the standard parabolic generated by the given positions.

    Positions follow descent_positions: type A uses 1..n-1, types B/D
    prepend position 0.  Runs of consecutive positions are A blocks,
    except a type-B run containing 0, which is a B block.
    """
    positions = sorted(subset)
    order = 1
    run = []
    for p in positions + [None]:
        if run and (p is None or p != run[-1] + 1):
            k = len(run)
            if family == "B" and run[0] == 0:
                order *= 2 ** k * math.factorial(k)
            else:
                order *= math.factorial(k + 1)
            run = []
        if p is not None:
            run.append(p)
    return order


def _orbit_total(label):
    """Double cosets W_s \\ W / W_t summed over ordered simple pairs."""
    rs = build_root_system(label)
    elements = list(element_actions(rs))
    total = 0
    for s in range(label.rank):
        left = simple_action(rs, s)
        for t in range(label.rank):
            right = simple_action(rs, t)
            seen = set()
            for w in elements:
                if w in seen:
                    continue
                total += 1
                frontier = [w]
                seen.add(w)
                while frontier:
                    nxt = []
                    for x in frontier:
                        for y in (compose_actions(left, x),
                                  compose_actions(x, right)):
                            if y not in seen:
                                seen.add(y)
                                nxt.append(y)
                    frontier = nxt
    return total


def _suite_cosets(rng):
    import itertools

    for family, length, text in [("A", 5, "A4"), ("B", 3, "B3")]:
        d = parse_descriptor(text)
        positions = list(range(1, length)) if family == "A" \
            else list(range(length))
        elements = [SignedPermutation(w, family)
                    for w in iter_windows(family, length)]
        ok = True
        detail = ""
        for r in range(len(positions) + 1):
            for subset in itertools.combinations(positions, r):
                chosen = set(subset)
                quotient = sum(
                    1 for p in elements
                    if not chosen & set(descent_positions(p)))
                if _parabolic_order(family, length, chosen) * quotient \
                        != group_order(d):
                    ok = False
                    detail = f"J = {subset} breaks the factorization"
                    break
            if not ok:
                break
        yield (f"cosets: {text} satisfies |W| = |W_J| |D_J| for every J",
               ok, detail)
    for text in ["A2", "A3", "B3"]:
        d = parse_descriptor(text)
        yield _eq(f"cosets: {text} double coset sum matches orbit enumeration",
                  double_coset_sum(d), _orbit_total(d.factors[0]))


_EXAMPLES = [
    ("prod(I2(i), i=1..n)", True, True),
    ("prod(I2(i^2), i=1..n)", True, False),
    ("A1^(n-2) x I2(n)", False, True),
    ("prod(I2(2^i), i=1..n)", False, False),
]


def _suite_limits(rng):
    for text, want_inv, want_des in _EXAMPLES:
        got = clt_check_inv(text, range(10, 81)).clt_holds
        yield _eq(f"limits: inversions verdict for {text}", got, want_inv)
        got = clt_check_des(text, range(10, 81)).clt_holds
        yield _eq(f"limits: descents verdict for {text}", got, want_des)
    for text in ["A(n)", "B(n)", "D(n)"]:
        inv_ok = clt_check_inv(text, range(10, 41)).clt_holds is True
        des_ok = clt_check_des(text, range(10, 41)).clt_holds is True
        yield (f"limits: {text} satisfies both normal limits",
               inv_ok and des_ok, f"inv {inv_ok}, des {des_ok}")
    d = parse_descriptor("A9")
    rep = triangular_array_diagnostics(d, "inv", epsilon=1)
    yield _eq("limits: A9 Lindeberg sum vanishes at epsilon 1",
              rep.lindeberg_sum, Fraction(0))
    rep = triangular_array_diagnostics(d, "inv", epsilon=Fraction(1, 10 ** 9))
    yield _eq("limits: A9 Lindeberg sum saturates at tiny epsilon",
              rep.lindeberg_sum, Fraction(1))
    d4 = llt_sup_distance(gf_inv(parse_descriptor("A4"))).distance
    d8 = llt_sup_distance(gf_inv(parse_descriptor("A8"))).distance
    yield ("limits: local-limit distance shrinks from A4 to A8",
           d8 < d4, f"A4 {d4}, A8 {d8}")


def _suite_interp(rng):
    ds = builtin_dataset("des", sizes=range(2, 7), keyed_by="rank")
    rows = summarize(ds)
    points = [(row.n, row.variance) for row in rows]
    formulas = lagrange_guess(points, target="variance")
    yield _eq("interp: descent variance recovery from built-in data",
              [str(f) for f in formulas], ["(n + 2)/12"])
    ds = builtin_dataset("fixed_points", sizes=(5,))
    yield _eq("interp: fixed-point histogram of S5",
              ds.histograms[5], (44, 45, 20, 10, 0, 1))
    row = summarize(ds)[0]
    yield _eq("interp: S5 fixed-point cumulant row",
              row.formatted, ("1.00", "1.00", "1.00", "0.000", "-14.0", "-118."))
    f = gf_des(parse_descriptor("A4"))
    doc = {"statistic": "des",
           "histogram": {"5": [str(c) for c in f.coefficients]}}
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "roundtrip.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        back = ingest(path, "histogram_json")
    yield _eq("interp: emitted histogram round-trips through ingest",
              back.histograms[5], f.coefficients)


def _suite_quick(rng):
    got = gf_inv(parse_descriptor("A3")).coefficients
    yield _eq("quick: gf-inv A3 matches the window tally",
              got, _window_tally("A", 4, inv_count))
    d = parse_descriptor("B3")
    got = gf_des(d).coefficients
    yield _eq("quick: gf-des B3 matches the reflection walk",
              got, statistics_tally(build_root_system(d.factors[0]), "des"))
    d = parse_descriptor("A4")
    s = moments_from_polynomial(gf_inv(d), k_max=2)
    yield _eq("quick: A4 Mahonian closed forms match the polynomial",
              mahonian_moments(d), (s.mean, s.variance))
    d = parse_descriptor("I2(7)")
    bag = negated_real_roots(gf_des(d))
    yield _close("quick: I2(7) root identity sums to n/2",
                 sum(1 / (1 + q) for q in bag.values), 1.0, 1e-8)
    yield _eq("quick: A3 double coset sum matches orbit enumeration",
              double_coset_sum(parse_descriptor("A3")),
              _orbit_total(parse_descriptor("A3").factors[0]))
    got = clt_check_inv("A(n)", range(10, 31)).clt_holds
    yield _eq("quick: A(n) inversion verdict", got, True)
    f = gf_des(parse_descriptor("A3"))
    doc = {"statistic": "des",
           "histogram": {"4": [str(c) for c in f.coefficients]}}
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "roundtrip.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        back = ingest(path, "histogram_json")
    yield _eq("quick: histogram round-trip through ingest",
              back.histograms[4], f.coefficients)


SUITES = {
    "quick": _suite_quick,
    "gf-inv": _suite_gf_inv,
    "gf-des": _suite_gf_des,
    "moments": _suite_moments,
    "roots": _suite_roots,
    "cosets": _suite_cosets,
    "limits": _suite_limits,
    "interp": _suite_interp,
}


def suite_names():
    return tuple(SUITES) + ("full",)


def run_suite(name, seed=0, stream=None):
    """Run one suite (or full), print its lines, return the failure count."""
    stream = sys.stdout if stream is None else stream
    if name == "full":
        funcs = [fn for key, fn in SUITES.items() if key != "quick"]
    elif name in SUITES:
        funcs = [SUITES[name]]
    else:
        raise ValueError(f"unknown suite {name!r}; pick from {suite_names()}")
    rng = random.Random(seed)
    checks = 0
    failures = 0
    for fn in funcs:
        for label, ok, detail in fn(rng):
            checks += 1
            if ok:
                print(f"ok - {label}", file=stream)
            else:
                failures += 1
                print(f"FAIL - {label}: {detail}", file=stream)
    print(f"{checks - failures}/{checks} checks passed", file=stream)
    return failures
