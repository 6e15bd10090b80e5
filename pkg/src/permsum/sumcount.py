"""Exact consecutive-sum statistics of a permutation.

S(a) is materialised as a boolean table over 1..n(n+1)/2. Interval sums are
differences of prefix sums; they are generated one interval length at a
time so each step is a single vectorised scatter.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import OutOfRange, SizeCapError
from .perm import Permutation

DEFAULT_CAP = 65536
NAIVE_CAP = 2000
LOWER_COEF = 1.0 / (4.0 * math.sqrt(2.0))


def resolve_cap(cap: int | None = None) -> int:
    """Explicit argument, then $PERMSUM_CAP, then DEFAULT_CAP."""
    if cap is not None:
        return int(cap)
    env = os.environ.get("PERMSUM_CAP")
    return int(env) if env else DEFAULT_CAP


def _check_cap(n: int, cap: int | None) -> None:
    limit = resolve_cap(cap)
    if n > limit:
        raise SizeCapError(f"n={n} exceeds size cap {limit}")


def _values(a: Permutation) -> np.ndarray:
    return np.fromiter(a.values, dtype=np.int64, count=a.n)


def prefix_sums(a: Permutation) -> np.ndarray:
    """P_0 = 0, P_v = a_1 + ... + a_v; length n + 1, int64."""
    P = np.zeros(a.n + 1, dtype=np.int64)
    np.cumsum(_values(a), out=P[1:])
    return P


@dataclass(frozen=True, eq=False)
class SumSet:
    n: int
    bits: np.ndarray  # bool, index 0 unused
    count: int

    @property
    def total(self) -> int:
        return self.n * (self.n + 1) // 2

    def __contains__(self, s: int) -> bool:
        return 1 <= s <= self.total and bool(self.bits[s])

    def __len__(self) -> int:
        return self.count

    def to_list(self) -> list[int]:
        return np.flatnonzero(self.bits).tolist()

    def write(self, path: str | Path) -> None:
        Path(path).write_text("".join(f"{s}\n" for s in self.to_list()))


def _mark_sums(P: np.ndarray) -> np.ndarray:
    n = len(P) - 1
    bits = np.zeros(n * (n + 1) // 2 + 1, dtype=bool)
    for length in range(1, n + 1):
        bits[P[length:] - P[:-length]] = True
    return bits


def sum_set(a: Permutation, cap: int | None = None) -> SumSet:
    _check_cap(a.n, cap)
    bits = _mark_sums(prefix_sums(a))
    return SumSet(a.n, bits, int(np.count_nonzero(bits)))


def distinct_sum_count(a: Permutation, cap: int | None = None) -> int:
    return sum_set(a, cap).count


def distinct_sum_count_naive(a: Permutation) -> int:
    """Oracle: insert every interval sum into a Python set."""
    if a.n > NAIVE_CAP:
        raise SizeCapError(f"naive oracle limited to n <= {NAIVE_CAP}")
    vals = a.values
    sums = set()
    for u in range(a.n):
        acc = 0
        for v in range(u, a.n):
            acc += vals[v]
            sums.add(acc)
    return len(sums)


def band_profile(a: Permutation, cap: int | None = None) -> list[int]:
    """|S_k(a)| for bands kn+1 <= s <= (k+1)n, k = 0 .. ceil((n+1)/2) - 1."""
    ss = sum_set(a, cap)
    n = a.n
    members = np.flatnonzero(ss.bits)
    nbands = -(-(n + 1) // 2)
    return np.bincount((members - 1) // n, minlength=nbands).tolist()


def big_pairs_count(a: Permutation) -> int:
    """|L(a)|: pairs u <= v with 4 * (P_v - P_{u-1}) >= n(n+1).

    The minimal qualifying v is non-decreasing in u, so one sweep suffices.
    """
    n = a.n
    need = n * (n + 1)
    P = prefix_sums(a).tolist()
    count = 0
    v = 1
    for u in range(1, n + 1):
        if v < u:
            v = u
        while v <= n and 4 * (P[v] - P[u - 1]) < need:
            v += 1
        if v > n:
            break
        count += n - v + 1
    return count


def product_table_count(n: int, cap: int | None = None) -> int:
    """|{i*j : 1 <= i, j <= n}|, exact."""
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_cap(n, cap)
    seen = np.zeros(n * n + 1, dtype=bool)
    for i in range(1, n + 1):
        seen[i * np.arange(i, n + 1, dtype=np.int64)] = True
    return int(np.count_nonzero(seen))


def lower_bound(n: int) -> float:
    return n ** 1.5 * LOWER_COEF


def lower_bound_check(a: Permutation, cap: int | None = None,
                      count: int | None = None) -> tuple[bool, float]:
    """(|S(a)| >= n^{3/2} / (4 sqrt 2), |S(a)| / bound)."""
    if count is None:
        count = distinct_sum_count(a, cap)
    bound = lower_bound(a.n)
    return count >= bound, count / bound


def membership(a: Permutation, s: int, P: np.ndarray | None = None) -> bool:
    """Whether s is some interval sum; binary search of s + P_{u-1} in P."""
    n = a.n
    if not 1 <= s <= n * (n + 1) // 2:
        raise OutOfRange(f"s={s} outside 1..{n * (n + 1) // 2}")
    if P is None:
        P = prefix_sums(a)
    targets = P[:-1] + s
    idx = np.searchsorted(P, targets)
    hit = idx <= n
    return bool(np.any(P[idx[hit]] == targets[hit]))


def membership_many(a: Permutation, values, P: np.ndarray | None = None,
                    chunk: int = 1 << 20) -> np.ndarray:
    """Vectorised membership: one bool per queried value, same search as membership."""
    n = a.n
    values = np.asarray(values, dtype=np.int64)
    total = n * (n + 1) // 2
    if values.size and (values.min() < 1 or values.max() > total):
        raise OutOfRange(f"queries must lie in 1..{total}")
    if P is None:
        P = prefix_sums(a)
    out = np.zeros(values.shape, dtype=bool)
    flat, res = values.ravel(), out.ravel()
    step = max(1, chunk // n)
    for lo in range(0, flat.size, step):
        targets = flat[lo:lo + step, None] + P[None, :-1]
        idx = np.minimum(np.searchsorted(P, targets), n)
        res[lo:lo + step] = np.any(P[idx] == targets, axis=1)
    return out
