"""Permutations of [n] and the named constructions.

Values are stored 0-indexed in a tuple, but every public formula and index
argument is 1-indexed: ``a[i - 1]`` is a_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import InvalidBlockSize, NotAPermutation, TooManySwaps
from .rng import SplitMix64


@dataclass(frozen=True)
class Permutation:
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        n = len(self.values)
        if n == 0:
            raise NotAPermutation("empty sequence")
        seen = bytearray(n + 1)
        for pos, v in enumerate(self.values, start=1):
            if not 1 <= v <= n:
                raise NotAPermutation(f"value {v} at position {pos} outside 1..{n}")
            if seen[v]:
                raise NotAPermutation(f"duplicate value {v} at position {pos}")
            seen[v] = 1

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


def validate(seq: Iterable[int]) -> Permutation:
    return Permutation(tuple(seq))


def identity(n: int) -> Permutation:
    _check_n(n)
    return Permutation(tuple(range(1, n + 1)))


def zigzag(n: int) -> Permutation:
    """1, n, 2, n-1, 3, ... so that a_i + a_{i+1} = n + 1 for odd i."""
    _check_n(n)
    lo, hi = 1, n
    out = []
    for i in range(n):
        if i % 2 == 0:
            out.append(lo)
            lo += 1
        else:
            out.append(hi)
            hi -= 1
    return Permutation(tuple(out))


def tent(n: int) -> Permutation:
    """a_i = 2i for i <= n/2, otherwise 2(n - i) + 1."""
    _check_n(n)
    return Permutation(tuple(2 * i if 2 * i <= n else 2 * (n - i) + 1
                             for i in range(1, n + 1)))


def block(n: int, M: int) -> Permutation:
    """a_i = ceil(i/M) + (n/M) * ((i - 1) mod M); requires M | n."""
    _check_n(n)
    if M < 1 or n % M:
        raise InvalidBlockSize(f"block size M={M} must be >= 1 and divide n={n}")
    q = n // M
    return Permutation(tuple(-(-i // M) + q * ((i - 1) % M) for i in range(1, n + 1)))


def reverse(a: Permutation) -> Permutation:
    return Permutation(a.values[::-1])


def uniform_random(n: int, seed: int) -> Permutation:
    _check_n(n)
    items = list(range(1, n + 1))
    SplitMix64(seed).shuffle(items)
    return Permutation(tuple(items))


def paired_random(n: int, seed: int) -> Permutation:
    """Uniform permutation subject to a_{2j-1} + a_{2j} = n + 1.

    Draw order: one Fisher-Yates pass over the floor(n/2) pair labels, then
    one orientation bit per pair slot. For odd n the self-paired value
    (n+1)/2 sits at position n.
    """
    _check_n(n)
    rng = SplitMix64(seed)
    half = n // 2
    labels = list(range(1, half + 1))
    rng.shuffle(labels)
    out = []
    for k in labels:
        if rng.bit():
            out += [n + 1 - k, k]
        else:
            out += [k, n + 1 - k]
    if n % 2:
        out.append((n + 1) // 2)
    return Permutation(tuple(out))


def apply_swaps(a: Permutation, indices: Iterable[int]) -> Permutation:
    """Transpose a_i and a_{i+1} for each i; indices must be pairwise non-adjacent."""
    idx = sorted(indices)
    for prev, cur in zip(idx, idx[1:]):
        if cur - prev < 2:
            raise ValueError(f"swap indices {prev} and {cur} overlap")
    if idx and not (1 <= idx[0] and idx[-1] <= a.n - 1):
        raise ValueError(f"swap indices must lie in 1..{a.n - 1}")
    vals = list(a.values)
    for i in idx:
        vals[i - 1], vals[i] = vals[i], vals[i - 1]
    return Permutation(tuple(vals))


def sample_swap_indices(n: int, m: int, seed: int) -> list[int]:
    """Uniform m-subset of 1..n-1 with no two elements adjacent.

    Uses the bijection j_1 < ... < j_m in 1..n-m  <->  i_k = j_k + (k - 1),
    so an ordinary uniform m-subset (partial Fisher-Yates) maps to a uniform
    non-adjacent one without rejection.
    """
    if m < 0 or m > n // 2:
        raise TooManySwaps(f"m={m} swaps do not fit in n={n} (max {n // 2})")
    if m == 0:
        return []
    pool = list(range(1, n - m + 1))
    rng = SplitMix64(seed)
    for t in range(m):
        j = t + rng.below(len(pool) - t)
        pool[t], pool[j] = pool[j], pool[t]
    return [j + k for k, j in enumerate(sorted(pool[:m]))]


def swap_perturb(a: Permutation, m: int, seed: int) -> Permutation:
    return apply_swaps(a, sample_swap_indices(a.n, m, seed))


# -- text format: line 1 = n, line 2 = n values ----------------------------

def format_permutation(a: Permutation) -> str:
    return f"{a.n}\n{' '.join(map(str, a.values))}\n"


def parse_permutation(text: str) -> Permutation:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 2:
        raise NotAPermutation(f"expected 2 non-empty lines, got {len(lines)}")
    try:
        n = int(lines[0].strip())
        vals = [int(tok) for tok in lines[1].split()]
    except ValueError as exc:
        raise NotAPermutation(f"non-integer token: {exc}") from None
    if n < 1 or len(vals) != n:
        raise NotAPermutation(f"header says n={n} but {len(vals)} values follow")
    return Permutation(tuple(vals))


def read_permutation(path: str | Path) -> Permutation:
    return parse_permutation(Path(path).read_text())


def write_permutation(a: Permutation, path: str | Path) -> None:
    Path(path).write_text(format_permutation(a))


CONSTRUCTIONS = ("identity", "zigzag", "tent", "block", "paired", "uniform", "swap")


def construct(name: str, n: int, M: int | None = None, seed: int = 0,
              m: int | None = None) -> Permutation:
    """Dispatch by construction name. ``swap`` perturbs identity(n) with m swaps."""
    if name == "identity":
        return identity(n)
    if name == "zigzag":
        return zigzag(n)
    if name == "tent":
        return tent(n)
    if name == "block":
        if M is None:
            raise InvalidBlockSize("block construction needs M")
        return block(n, M)
    if name == "paired":
        return paired_random(n, seed)
    if name == "uniform":
        return uniform_random(n, seed)
    if name == "swap":
        return swap_perturb(identity(n), n // 4 if m is None else m, seed)
    raise ValueError(f"unknown construction {name!r}; choose from {', '.join(CONSTRUCTIONS)}")


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")


def is_permutation(seq: Sequence[int]) -> bool:
    try:
        validate(seq)
    except NotAPermutation:
        return False
    return True
