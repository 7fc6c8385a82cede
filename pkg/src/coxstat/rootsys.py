"""Reflection realizations and exact element enumeration for any type.

A RootSystem stores the positive roots of one irreducible factor in
simple-root coordinates, plus the action of each simple reflection as a
permutation of positive-root indices.  Crystallographic factors use the
integer Cartan matrix; H3/H4 use Z[phi]; I2(m) uses the exact cosine
ring, so coordinates never touch floating point.

Elements are represented by signed action vectors: act[i] = +-(j+1)
means w(beta_i) = +-beta_j over the positive roots beta_0..beta_{N-1}.
The inversion set of w is then {i : act[i] < 0}, right descents are the
negative entries among the first rank positions (the simple roots come
first), and left descents are the positions j with -(j+1) appearing in
the vector, since Inv(w^-1) = -w(Inv(w)).  Extending w by a simple
reflection s is a single gather: act_ws[i] = act_w[perm_s[i]] for
i != s, and act_ws[s] = -act_w[s].

The breadth-first walk over the weak order visits each element once per
length level, deduplicating by packed inversion bitsets; levels arrive
sorted by that bitset, so runs are deterministic and mergeable.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .groups import (
    IrreducibleLabel,
    coxeter_number,
    descriptor,
    group_order,
    irreducible_degrees,
)
from .rings import GoldenInt, cos_ring_generator

__all__ = [
    "RootSystem",
    "ElementRecord",
    "build_root_system",
    "enumerate_inversion_sets",
    "statistics_tally",
    "cached_tally",
    "element_actions",
    "compose_actions",
    "simple_action",
    "identity_action",
    "DEFAULT_ENUM_CAP",
    "TALLY_STATISTICS",
]

DEFAULT_ENUM_CAP = 5_000_000

TALLY_STATISTICS = ("inv", "des", "des_plus_ides")


@dataclass(frozen=True)
class RootSystem:
    label: IrreducibleLabel
    rank: int
    positive_roots: tuple[tuple, ...]
    # action[s][j] = index of s(beta_j); position j = s holds s itself,
    # standing for the sign flip s(alpha_s) = -alpha_s
    action: tuple[tuple[int, ...], ...]

    @property
    def root_count(self):
        return len(self.positive_roots)


@dataclass(frozen=True)
class ElementRecord:
    inversion_set: int          # bitset over positive-root indices
    length: int
    right_descents: int         # bitset over simple positions
    left_descents: int


# ---------------------------------------------------------------------------
# reflection rows per family

def _crystallographic_rows(label):
    """Cartan matrix rows: row[s][j] multiplies coordinate j in s's update."""
    f, n = label.family, label.rank
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 2
    if f == "A":
        edges = [(i, i + 1, 3) for i in range(n - 1)]
    elif f == "B":
        edges = [(i, i + 1, 3) for i in range(n - 2)] + [(n - 2, n - 1, 4)]
    elif f == "D":
        edges = [(i, i + 1, 3) for i in range(n - 3)]
        edges += [(n - 3, n - 2, 3), (n - 3, n - 1, 3)]
    elif f == "E":
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        edges = [(a, b, 3) for a, b in zip(chain, chain[1:])]
        edges.append((1, 3, 3))
    else:  # F4
        edges = [(0, 1, 3), (1, 2, 4), (2, 3, 3)]
    for a, b, m in edges:
        if m == 3:
            rows[a][b] = rows[b][a] = -1
        else:
            # double bond: b is the short root in this orientation; the
            # statistics computed here do not depend on which end is short
            rows[a][b] = -1
            rows[b][a] = -2
    return rows, 1, 0


def _golden_rows(label):
    n = label.rank
    two, one, zero = GoldenInt(2, 0), GoldenInt(1, 0), GoldenInt(0, 0)
    phi = GoldenInt(0, 1)
    rows = [[zero] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = two
    labels = [5] + [3] * (n - 2)
    for i, m in enumerate(labels):
        entry = -phi if m == 5 else -one
        rows[i][i + 1] = rows[i + 1][i] = entry
    return rows, one, zero


def _dihedral_rows(m):
    gen, one = cos_ring_generator(m)
    zero = one - one
    two = one + one
    rows = [[two, -gen], [-gen, two]]
    return rows, one, zero


def _reflection_rows(label):
    if label.family == "H":
        return _golden_rows(label)
    if label.family == "I2":
        return _dihedral_rows(label.m)
    return _crystallographic_rows(label)


def build_root_system(label):
    """Close the simple roots under reflection; exact arithmetic throughout."""
    rows, one, zero = _reflection_rows(label)
    n = label.rank
    expected = sum(d - 1 for d in irreducible_degrees(label))

    def reflect(s, coords):
        out = list(coords)
        acc = zero
        for j, c in enumerate(coords):
            entry = rows[s][j]
            if entry:
                acc = acc + entry * c
        out[s] = coords[s] - acc
        return tuple(out)

    roots = []
    index = {}
    for i in range(n):
        e = tuple(one if j == i else zero for j in range(n))
        index[e] = i
        roots.append(e)
    frontier = list(range(n))
    while frontier:
        nxt = []
        for j in frontier:
            for s in range(n):
                if j == s:
                    continue  # s(alpha_s) is the lone negative image
                img = reflect(s, roots[j])
                if img not in index:
                    index[img] = len(roots)
                    roots.append(img)
                    nxt.append(index[img])
                    if len(roots) > expected:
                        raise RuntimeError(
                            f"{label}: reflection closure exceeded the expected "
                            f"{expected} positive roots"
                        )
        frontier = nxt
    if len(roots) != expected:
        raise RuntimeError(
            f"{label}: closure found {len(roots)} positive roots, expected {expected}"
        )
    action = []
    for s in range(n):
        row = []
        for j in range(len(roots)):
            row.append(s if j == s else index[reflect(s, roots[j])])
        action.append(tuple(row))
    return RootSystem(label=label, rank=n, positive_roots=tuple(roots), action=tuple(action))


# ---------------------------------------------------------------------------
# breadth-first element walk

def _inversion_keys(acts):
    """Pack the sign pattern of each row into one or more uint64 words."""
    neg = acts < 0
    nrows, ncols = neg.shape
    words = (ncols + 63) // 64
    padded = np.zeros((nrows, words * 64), dtype=bool)
    padded[:, :ncols] = neg
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").reshape(nrows, words)


def _check_cap(label, cap):
    order = group_order(descriptor(label))
    if order > cap:
        raise ValueError(
            f"group order {order} of {label} exceeds enumeration cap {cap}; "
            "pass a larger cap to override"
        )
    return order


def _bfs_levels(rs, cap):
    """Yield (length, acts, keys) per level, rows sorted by inversion key."""
    order = _check_cap(rs.label, cap)
    n = rs.rank
    N = rs.root_count
    dtype = np.int8 if N <= 126 else np.int16
    perms = [np.asarray(row, dtype=np.int64) for row in rs.action]
    acts = np.arange(1, N + 1, dtype=dtype).reshape(1, N)
    length = 0
    total = 0
    while True:
        keys = _inversion_keys(acts)
        total += len(acts)
        yield length, acts, keys
        chunks = []
        for s in range(n):
            mask = acts[:, s] > 0
            if not mask.any():
                continue
            sub = acts[mask][:, perms[s]]
            sub[:, s] = -sub[:, s]
            chunks.append(sub)
        if not chunks:
            break
        new = np.concatenate(chunks, axis=0)
        new_keys = _inversion_keys(new)
        if new_keys.shape[1] == 1:
            _, first = np.unique(new_keys[:, 0], return_index=True)
        else:
            _, first = np.unique(new_keys, axis=0, return_index=True)
        acts = new[first]
        length += 1
    if total != order:
        raise RuntimeError(f"{rs.label}: walk visited {total} elements, expected {order}")


def enumerate_inversion_sets(rs, cap=DEFAULT_ENUM_CAP):
    """ElementRecords in (length, inversion set) order."""
    n = rs.rank
    simple_mask = (1 << n) - 1
    for length, acts, keys in _bfs_levels(rs, cap):
        left = np.zeros(len(acts), dtype=np.int64)
        for j in range(n):
            left |= (acts == -(j + 1)).any(axis=1).astype(np.int64) << j
        words = keys.shape[1]
        for r in range(len(acts)):
            inv = 0
            for wdx in range(words):
                inv |= int(keys[r, wdx]) << (64 * wdx)
            yield ElementRecord(
                inversion_set=inv,
                length=length,
                right_descents=inv & simple_mask,
                left_descents=int(left[r]),
            )


def statistics_tally(rs, statistic, cap=DEFAULT_ENUM_CAP):
    """Exact histogram of inv, des, or des_plus_ides over the whole group."""
    if statistic not in TALLY_STATISTICS:
        raise ValueError(f"statistic must be one of {TALLY_STATISTICS}, got {statistic!r}")
    n = rs.rank
    N = rs.root_count
    if statistic == "inv":
        counts = [0] * (N + 1)
        for length, acts, _ in _bfs_levels(rs, cap):
            counts[length] = int(len(acts))
        return tuple(counts)
    size = n + 1 if statistic == "des" else 2 * n + 1
    counts = np.zeros(size, dtype=np.int64)
    for _, acts, _ in _bfs_levels(rs, cap):
        neg = acts < 0
        vals = neg[:, :n].sum(axis=1)
        if statistic == "des_plus_ides":
            vals = vals + (neg & (acts >= -n)).sum(axis=1)
        counts += np.bincount(vals.astype(np.int64), minlength=size)
    return tuple(int(c) for c in counts)


# ---------------------------------------------------------------------------
# tally cache: in-memory per process, optional binary files on disk

_MEMORY_TALLIES: dict[tuple[IrreducibleLabel, str], tuple[int, ...]] = {}

_CACHE_ENV = "COXSTAT_CACHE"


def _disk_cache_dir(cache_dir):
    if cache_dir is not None:
        return Path(cache_dir)
    env = os.environ.get(_CACHE_ENV)
    if env:
        return Path(env) / "tallies"
    return None


def _tally_path(dirp, label, statistic):
    safe = str(label).replace("(", "_").replace(")", "")
    return dirp / f"{safe}.{statistic}.tally"


def write_tally_file(path, counts):
    """Length-prefixed little-endian big integers: u32 count, then per
    coefficient a u32 byte length and the magnitude bytes."""
    blob = bytearray(struct.pack("<I", len(counts)))
    for c in counts:
        if c < 0:
            raise ValueError("tallies are nonnegative")
        raw = c.to_bytes((c.bit_length() + 7) // 8 or 1, "little")
        blob += struct.pack("<I", len(raw)) + raw
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_bytes(bytes(blob))
    tmp.replace(path)


def read_tally_file(path):
    blob = path.read_bytes()
    (count,) = struct.unpack_from("<I", blob, 0)
    off = 4
    out = []
    for _ in range(count):
        (ln,) = struct.unpack_from("<I", blob, off)
        off += 4
        out.append(int.from_bytes(blob[off:off + ln], "little"))
        off += ln
    if off != len(blob):
        raise ValueError(f"trailing bytes in tally file {path}")
    return tuple(out)


def cached_tally(label, statistic, cap=DEFAULT_ENUM_CAP, cache_dir=None):
    """statistics_tally with a process-level and optional disk cache."""
    key = (label, statistic)
    hit = _MEMORY_TALLIES.get(key)
    if hit is not None:
        return hit
    dirp = _disk_cache_dir(cache_dir)
    if dirp is not None:
        path = _tally_path(dirp, label, statistic)
        if path.exists():
            counts = read_tally_file(path)
            _MEMORY_TALLIES[key] = counts
            return counts
    counts = statistics_tally(build_root_system(label), statistic, cap=cap)
    _MEMORY_TALLIES[key] = counts
    if dirp is not None:
        write_tally_file(_tally_path(dirp, label, statistic), counts)
    return counts


# ---------------------------------------------------------------------------
# action vectors as explicit group elements (oracle plumbing)

def identity_action(rs):
    return tuple(range(1, rs.root_count + 1))


def simple_action(rs, s):
    row = rs.action[s]
    return tuple(-(s + 1) if j == s else row[j] + 1 for j in range(rs.root_count))


def compose_actions(u, v):
    """Action vector of u o v from those of u and v."""
    out = []
    for x in v:
        y = u[x - 1] if x > 0 else -u[-x - 1]
        out.append(y)
    return tuple(out)


def element_actions(rs, cap=DEFAULT_ENUM_CAP):
    """All action vectors, deterministic (length, inversion set) order."""
    for _, acts, _ in _bfs_levels(rs, cap):
        for row in acts:
            yield tuple(int(x) for x in row)
