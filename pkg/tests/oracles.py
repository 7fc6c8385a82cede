"""Independent brute-force reference implementations.

Everything here is deliberately written from the bare definitions, without
importing the package under test: plain window enumeration, quadratic loops
for the statistics, breadth-first closure for subgroups and double cosets.
Slow is fine; these exist so the fast paths have something honest to match.
"""

import itertools
from fractions import Fraction


# ---------------------------------------------------------------------------
# window enumeration

def iter_windows(family, length):
    """All windows of the given classical family, as tuples of signed ints.

    family "A": plain permutations of 1..length.
    family "B": all sign choices on a permutation.
    family "D": sign choices with an even number of minus signs.
    Order is unspecified here; the oracles only ever tally.
    """
    base = range(1, length + 1)
    if family == "A":
        for p in itertools.permutations(base):
            yield p
        return
    for signs in itertools.product((1, -1), repeat=length):
        neg = sum(1 for s in signs if s < 0)
        if family == "D" and neg % 2 == 1:
            continue
        for p in itertools.permutations(base):
            yield tuple(s * v for s, v in zip(p, signs))


def count_windows(family, length):
    total = 1
    for k in range(2, length + 1):
        total *= k
    if family == "B":
        total <<= length
    elif family == "D":
        total <<= length - 1
    return total


# ---------------------------------------------------------------------------
# statistics from the definitions

def inv_of(window, family):
    n = len(window)
    total = 0
    for i in range(n):
        for j in range(i + 1, n):
            if window[i] > window[j]:
                total += 1
            if family in ("B", "D") and -window[i] > window[j]:
                total += 1
    if family == "B":
        total += sum(1 for v in window if v < 0)
    return total


def des_of(window, family):
    n = len(window)
    if family == "A":
        return sum(1 for i in range(n - 1) if window[i] > window[i + 1])
    head = 0 if family == "B" else -window[1]
    seq = (head,) + window
    return sum(1 for i in range(n) if seq[i] > seq[i + 1])


def invert_window(window):
    n = len(window)
    out = [0] * n
    for i, v in enumerate(window, start=1):
        if v > 0:
            out[v - 1] = i
        else:
            out[-v - 1] = -i
    return tuple(out)


def ides_of(window, family):
    return des_of(invert_window(window), family)


def fixed_points_of(window):
    return sum(1 for i, v in enumerate(window, start=1) if v == i)


def compose_windows(u, v):
    """(u o v)(i) = u(v(i)), windows over the same length."""
    out = []
    for x in v:
        y = u[abs(x) - 1]
        out.append(y if x > 0 else -y)
    return tuple(out)


def tally(family, length, statfn):
    """Histogram of statfn over the family's windows, as a list of counts."""
    counts = {}
    for w in iter_windows(family, length):
        k = statfn(w)
        counts[k] = counts.get(k, 0) + 1
    out = [0] * (max(counts) + 1)
    for k, c in counts.items():
        out[k] = c
    return out


def moments_of_tally(counts, k_max=2):
    """Raw moments of the uniform distribution given by a histogram."""
    total = sum(counts)
    out = []
    for j in range(1, k_max + 1):
        out.append(Fraction(sum(c * k ** j for k, c in enumerate(counts)), total))
    return out


# ---------------------------------------------------------------------------
# subgroups and double cosets, by closure over windows

def generated_subgroup(generators, length):
    """Closure of a set of windows under composition."""
    ident = tuple(range(1, length + 1))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for g in generators:
                for prod in (compose_windows(w, g), compose_windows(g, w)):
                    if prod not in seen:
                        seen.add(prod)
                        nxt.append(prod)
        frontier = nxt
    return seen


def double_coset_count(elements, left_gens, right_gens):
    """Number of orbits of x -> g.x.h over the given element set."""
    elements = set(elements)
    seen = set()
    orbits = 0
    for w in elements:
        if w in seen:
            continue
        orbits += 1
        frontier = [w]
        seen.add(w)
        while frontier:
            nxt = []
            for x in frontier:
                for g in left_gens:
                    y = compose_windows(g, x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                for h in right_gens:
                    y = compose_windows(x, h)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
    return orbits


def orbit_count(elements, step_funcs):
    """Orbits of an arbitrary element set under arbitrary step functions.

    Used for the reflection-realized groups where elements are not windows;
    step_funcs take and return whatever representation the caller supplies.
    """
    elements = set(elements)
    seen = set()
    orbits = 0
    for w in elements:
        if w in seen:
            continue
        orbits += 1
        frontier = [w]
        seen.add(w)
        while frontier:
            nxt = []
            for x in frontier:
                for f in step_funcs:
                    y = f(x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
    return orbits


# ---------------------------------------------------------------------------
# frozen small values, checked by hand from the definitions above

# inversion tallies
TALLY_INV_A3 = [1, 3, 5, 6, 5, 3, 1]        # S_4
TALLY_INV_B2 = [1, 2, 2, 2, 1]
TALLY_DES_A3 = [1, 11, 11, 1]               # S_4 descents
TALLY_DES_B2 = [1, 6, 1]

# worked single elements
WORKED_A = ((2, 5, 1, 3, 6, 4), {"inv": 5, "des": 2, "ides": 2})
WORKED_B = (((-1, -2), 4), ((-2, -1), 3))   # (window, type-B inv)
