"""Statistic-table laboratory: ingest per-size statistic data, summarize
exact moments and normalized cumulants, and guess closed-form rational
formulas by exact Lagrange interpolation.

Datasets hold, per symmetric-group size n, either the raw statistic
values (one per element) or just the coefficient histogram.  Summaries
are exact through the variance; normalized cumulants print in the
three-significant-figure table style used throughout the docs, so rows
are string-comparable in tests.

Formula guessing searches V = f(n) / (a n + b)^c over the small grid
a, b in {0, +-1, +-2}, c in 0..5: each candidate multiplies the data by
the denominator, interpolates f exactly, and is accepted only when
deg f is at least three below the number of points and the formula
reproduces every point.  Candidates are reduced (denominator factors
dividing f exactly are cancelled), sign- and gcd-normalized, then
deduplicated, so equivalent parameterizations collapse to one entry.
"""

from __future__ import annotations

import json
import math
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .elements import SignedPermutation, des_count, ides_count, inv_count, iter_windows
from .moments import moments_from_polynomial
from .polynomials import ExactPolynomial

__all__ = [
    "StatisticDataset",
    "ingest",
    "builtin_dataset",
    "BUILTIN_STATISTICS",
    "SummaryRow",
    "summarize",
    "format_sig3",
    "RationalFormula",
    "lagrange_guess",
    "fetch_findstat",
    "FINDSTAT_URL",
]

INGEST_FORMATS = ("values_json", "histogram_json", "findstat_csv")
BUILTIN_STATISTICS = ("inv", "des", "ides", "des_plus_ides", "fixed_points")

FINDSTAT_URL = "https://www.findstat.org/StatisticsDatabase/{id}/ValuesExport/"


# ---------------------------------------------------------------------------
# datasets

@dataclass(frozen=True)
class StatisticDataset:
    """Per-size statistic data over symmetric groups.

    histograms[n][k] counts elements of S_n with statistic value k;
    values keeps the raw per-element lists when the source had them.
    group is the declared family symbol ("S") or None when undeclared.
    """

    name: str
    histograms: dict[int, tuple[int, ...]] = field(default_factory=dict)
    values: dict[int, tuple[int, ...]] = field(default_factory=dict)
    group: str | None = None

    def __post_init__(self):
        for n, hist in self.histograms.items():
            if any(c < 0 for c in hist):
                raise ValueError(f"negative histogram entry at n = {n}")

    @property
    def sizes(self):
        return tuple(sorted(self.histograms))


def _tally(values):
    hist = [0] * (max(values) + 1 if values else 1)
    for v in values:
        hist[v] += 1
    return tuple(hist)


def _check_declared_order(group, n, count):
    if group == "S" and count != math.factorial(n):
        raise ValueError(
            f"length mismatch at n = {n}: got {count} values, "
            f"S_{n} has {math.factorial(n)} elements"
        )


def ingest(path, format):
    """Read a dataset file in one of INGEST_FORMATS."""
    if format not in INGEST_FORMATS:
        raise ValueError(f"format must be one of {INGEST_FORMATS}, got {format!r}")
    path = Path(path)
    if format == "findstat_csv":
        return _ingest_findstat_csv(path)
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: expected a JSON object")
    name = doc.get("statistic", path.stem)
    group = doc.get("group")
    key_name = "values" if format == "values_json" else "histogram"
    rows = doc.get(key_name)
    if not isinstance(rows, dict):
        raise ValueError(f'{path}: {format} needs a {key_name!r} object keyed by n')
    if format == "values_json":
        values = {}
        for key, row in rows.items():
            n = int(key)
            if not all(isinstance(v, int) and v >= 0 for v in row):
                raise ValueError(f"non-integer statistic value at n = {n}")
            _check_declared_order(group, n, len(row))
            values[n] = tuple(row)
        hists = {n: _tally(v) for n, v in values.items()}
        return StatisticDataset(name, hists, values, group)
    hists = {}
    for key, row in rows.items():
        n = int(key)
        hists[n] = tuple(int(c) for c in row)
        _check_declared_order(group, n, sum(hists[n]))
    return StatisticDataset(name, hists, {}, group)


_CSV_ROW = re.compile(r"\[(\d+(?:,\s*\d+)*)\]\s*;\s*(\d+)$")


def _ingest_findstat_csv(path):
    """Two columns "element;value", element in one-line notation, grouped
    by window length."""
    per_size = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            m = _CSV_ROW.match(line)
            if m is None:
                raise ValueError(f"line {lineno}: malformed row {line!r}")
            window = tuple(int(v) for v in m.group(1).split(","))
            n = len(window)
            if sorted(window) != list(range(1, n + 1)):
                raise ValueError(f"line {lineno}: {window} is not a permutation")
            per_size.setdefault(n, []).append(int(m.group(2)))
    values = {n: tuple(v) for n, v in sorted(per_size.items())}
    for n, v in values.items():
        _check_declared_order("S", n, len(v))
    hists = {n: _tally(v) for n, v in values.items()}
    return StatisticDataset(path.stem, hists, values, "S")


def _fixed_points(window):
    return sum(1 for i, v in enumerate(window) if v == i + 1)


def builtin_dataset(statistic, sizes, keyed_by="size"):
    """Enumerated dataset for a built-in statistic on S_n, n in sizes.

    keyed_by selects the table index: the group size n itself, or the
    Coxeter rank n - 1 of the realization.  fixed_points counts i with
    w(i) = i (the standard definition).
    """
    if statistic not in BUILTIN_STATISTICS:
        raise ValueError(f"statistic must be one of {BUILTIN_STATISTICS}")
    if keyed_by not in ("size", "rank"):
        raise ValueError("keyed_by must be size or rank")
    values = {}
    for n in sizes:
        if n < 2:
            raise ValueError("sizes must be at least 2")
        row = []
        for window in iter_windows("A", n):
            if statistic == "fixed_points":
                row.append(_fixed_points(window))
                continue
            p = SignedPermutation(window, "A")
            if statistic == "inv":
                row.append(inv_count(p))
            elif statistic == "des":
                row.append(des_count(p))
            elif statistic == "ides":
                row.append(ides_count(p))
            else:
                row.append(des_count(p) + ides_count(p))
        key = n if keyed_by == "size" else n - 1
        values[key] = tuple(row)
    hists = {n: _tally(v) for n, v in values.items()}
    return StatisticDataset(statistic, hists, values,
                            "S" if keyed_by == "size" else None)


# ---------------------------------------------------------------------------
# summaries

@dataclass(frozen=True)
class SummaryRow:
    n: int
    count: int
    mean: Fraction
    variance: Fraction
    normalized_cumulants: dict[int, float]
    formatted: tuple[str, ...]
    degenerate: bool


def format_sig3(x):
    """Three significant figures in the table style: plain decimals in
    the mid range, "123." for the hundreds, scientific outside."""
    x = float(x)
    if x == 0:
        return "0.000"
    mant, exp = f"{x:.2e}".split("e")
    v = float(f"{mant}e{exp}")
    a = abs(v)
    if a >= 1e6 or a < 1e-4:
        return f"{mant}e{int(exp)}"
    if a >= 100:
        return f"{v:.0f}."
    if a >= 10:
        return f"{v:.1f}"
    if a >= 1:
        return f"{v:.2f}"
    if a >= 0.1:
        return f"{v:.3f}"
    if a >= 0.01:
        return f"{v:.4f}"
    if a >= 0.001:
        return f"{v:.5f}"
    return f"{v:.6f}"


def summarize(ds, k_max=8):
    """Per-size moment rows: exact mean and variance, normalized
    cumulants 3..k_max as floats plus their printed forms.  Zero
    variance flags the row and omits the cumulants."""
    if not ds.histograms:
        raise ValueError("dataset has no histograms")
    rows = []
    for n in ds.sizes:
        f = ExactPolynomial(ds.histograms[n])
        summary = moments_from_polynomial(f, k_max=k_max)
        degenerate = summary.variance == 0
        norm = {} if degenerate else dict(summary.normalized_cumulants)
        formatted = tuple(
            format_sig3(norm[k]) for k in range(3, k_max + 1)) if norm else ()
        rows.append(SummaryRow(
            n=n, count=sum(ds.histograms[n]), mean=summary.mean,
            variance=summary.variance, normalized_cumulants=norm,
            formatted=formatted, degenerate=degenerate,
        ))
    return rows


# ---------------------------------------------------------------------------
# formula guessing

@dataclass(frozen=True)
class RationalFormula:
    """V(n) = f(n) / (a n + b)^c with f rational-coefficient, c >= 0."""

    numerator: tuple[Fraction, ...]
    a: int
    b: int
    c: int

    def evaluate(self, n):
        num = sum(co * Fraction(n) ** k for k, co in enumerate(self.numerator))
        if self.c == 0:
            return num
        return num / Fraction(self.a * n + self.b) ** self.c

    @property
    def degree(self):
        return len(self.numerator) - 1

    def __str__(self):
        num = _poly_str(self.numerator)
        if self.c == 0:
            return num
        head = f"({num})" if ("+" in num or " - " in num) else num
        an = f"{self.a}*n" if self.a != 1 else "n"
        if self.b:
            den = f"({an} {'+' if self.b > 0 else '-'} {abs(self.b)})"
        else:
            den = f"({an})"
        power = f"^{self.c}" if self.c > 1 else ""
        return f"{head}/{den}{power}"


def _poly_str(coeffs):
    scale = math.lcm(*(co.denominator for co in coeffs))
    ints = [int(co * scale) for co in coeffs]
    parts = []
    for k in range(len(ints) - 1, -1, -1):
        co = ints[k]
        if co == 0 and not (k == 0 and not parts):
            continue
        mag = abs(co)
        if k == 0:
            term = str(mag)
        else:
            var = "n" if k == 1 else f"n^{k}"
            term = var if mag == 1 else f"{mag}*{var}"
        if not parts:
            parts.append(term if co >= 0 else f"-{term}")
        else:
            parts.append(f"{'+' if co >= 0 else '-'} {term}")
    body = " ".join(parts)
    if scale == 1:
        return body
    return f"({body})/{scale}" if len(parts) > 1 else f"{body}/{scale}"


def _interpolate(points):
    """Newton divided differences, expanded to monomial coefficients."""
    xs = [Fraction(n) for n, _ in points]
    coef = [Fraction(v) for _, v in points]
    for j in range(1, len(points)):
        for i in range(len(points) - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [coef[-1]]
    for i in range(len(points) - 2, -1, -1):
        poly = [Fraction(0)] + poly
        for k in range(len(poly) - 1):
            poly[k] -= xs[i] * poly[k + 1]
        poly[0] += coef[i]
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def _divide_linear(coeffs, a, b):
    """Divide by (a n + b); returns (quotient, remainder)."""
    work = list(coeffs)
    quot = [Fraction(0)] * (len(coeffs) - 1)
    for k in range(len(coeffs) - 1, 0, -1):
        quot[k - 1] = work[k] / a
        work[k - 1] -= quot[k - 1] * b
    return quot, work[0]


def lagrange_guess(points, target="variance"):
    """Rational-form candidates reproducing the points exactly.

    points are (n, exact value) pairs, at least four with distinct n.
    A candidate (a, b, c) is accepted when the interpolated numerator
    has degree at most len(points) - 3; results come back reduced,
    normalized, deduplicated, and sorted by (c, |a|, |b|, degree).
    """
    if target not in ("mean", "variance"):
        raise ValueError("target must be mean or variance")
    pts = sorted((int(n), Fraction(v)) for n, v in points)
    if len(pts) < 4:
        raise ValueError("need at least 4 points")
    if len({n for n, _ in pts}) != len(pts):
        raise ValueError("points must have distinct n")
    margin = len(pts) - 3
    found = {}
    for c in range(6):
        # a = 0 with c > 0 is a constant denominator: normalized to c = 0,
        # which the (0, 0, 0) candidate already covers
        grid = [(0, 0)] if c == 0 else [
            (a, b) for a in (-2, -1, 1, 2) for b in (-2, -1, 0, 1, 2)]
        for a, b in grid:
            if c > 0 and any(a * n + b == 0 for n, _ in pts):
                continue
            weighted = [(n, v * Fraction(a * n + b) ** c) for n, v in pts]
            poly = _interpolate(weighted)
            if len(poly) - 1 > margin:
                continue
            fa, fb, fc = a, b, c
            while fc > 0:
                quot, rem = _divide_linear(poly, fa, fb)
                if rem != 0 or len(poly) == 1:
                    break
                poly = quot
                fc -= 1
            if fc == 0:
                fa, fb = 0, 0
            elif fa < 0:
                if fc % 2:
                    poly = [-co for co in poly]
                fa, fb = -fa, -fb
            if fc > 0:
                g = math.gcd(fa, abs(fb))
                if g > 1:
                    fa //= g
                    fb //= g
                    poly = [co / g ** fc for co in poly]
            formula = RationalFormula(tuple(poly), fa, fb, fc)
            if all(formula.evaluate(n) == v for n, v in pts):
                found.setdefault((fa, fb, fc, tuple(poly)), formula)
    return sorted(found.values(),
                  key=lambda f: (f.c, abs(f.a), abs(f.b), f.degree, f.numerator))


# ---------------------------------------------------------------------------
# FindStat client

def _findstat_cache_dir(cache_dir):
    if cache_dir is not None:
        return Path(cache_dir)
    env = os.environ.get("COXSTAT_CACHE")
    if env:
        return Path(env) / "findstat"
    return Path.home() / ".cache" / "coxstat" / "findstat"


def fetch_findstat(statistic_id, cache_dir=None):
    """Dataset for a FindStat statistic id, via an on-disk cache.

    A cached export is parsed directly; otherwise the public export is
    downloaded (requests, an optional dependency) and cached first.
    Offline with no cached copy is an explicit error.
    """
    if not re.fullmatch(r"St\d{6}", statistic_id):
        raise ValueError(f"bad statistic id {statistic_id!r}; expected StNNNNNN")
    directory = _findstat_cache_dir(cache_dir)
    path = directory / f"{statistic_id}.csv"
    if not path.exists():
        url = FINDSTAT_URL.format(id=statistic_id)
        try:
            import requests

            resp = requests.get(url, timeout=15)
            resp.raise_for_status()
            payload = resp.content
        except Exception as exc:
            raise RuntimeError(
                f"no cached copy of {statistic_id} at {path} and the "
                f"download failed ({exc}); install the findstat extra and "
                "retry online, or pre-seed the cache"
            ) from exc
        directory.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_bytes(payload)
        os.replace(tmp, path)
    return ingest(path, "findstat_csv")
