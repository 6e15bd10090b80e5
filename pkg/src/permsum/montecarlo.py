"""Seeded Monte Carlo estimates of |S(a)| statistics.

Replicate ``i`` always uses seed ``mix(seed, i)``, so results do not depend on
how replicates are scheduled. Statistics are reduced in replicate order.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable, Sequence

from . import perm
from .perm import Permutation
from .rng import mix
from .sumcount import big_pairs_count, distinct_sum_count, lower_bound_check, membership

C_MEAN = (1.0 + math.exp(-2.0)) / 4.0
C_PAIRED = 1.5 - 2.0 / math.sqrt(math.e)
C_UPPER = 0.25 + math.pi / 16.0
LAMBDA_TENT = math.pi / 16.0
LOWER_COEF = 1.0 / (4.0 * math.sqrt(2.0))

SAMPLERS: dict[str, Callable[[int, int], Permutation]] = {
    "uniform": perm.uniform_random,
    "paired": perm.paired_random,
}
TARGETS = {"uniform": C_MEAN, "paired": C_PAIRED}


@dataclass(frozen=True)
class StatSummary:
    n: int
    samples: int
    mean: float
    std: float
    sem: float
    ci95: tuple[float, float]
    seed: int

    @classmethod
    def from_values(cls, n: int, values: Sequence[float], seed: int) -> "StatSummary":
        m = len(values)
        mean = math.fsum(values) / m
        var = math.fsum((x - mean) ** 2 for x in values) / (m - 1) if m > 1 else 0.0
        std = math.sqrt(var)
        sem = std / math.sqrt(m)
        return cls(n, m, mean, std, sem, (mean - 1.96 * sem, mean + 1.96 * sem), seed)


@dataclass(frozen=True)
class HitEstimate:
    summary: StatSummary
    sigma: float
    s: int
    theory: float  # 1 - exp(-2 + 2 sigma)


def hit_theory(sigma: float) -> float:
    return 1.0 - math.exp(-2.0 + 2.0 * sigma)


def _map(fn, items, workers: int):
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def _ratio(i: int, n: int, seed: int, sampler: str, cap: int | None) -> float:
    a = SAMPLERS[sampler](n, mix(seed, i))
    return distinct_sum_count(a, cap) / n**2


def _hit(i: int, n: int, seed: int, s: int) -> float:
    return float(membership(perm.uniform_random(n, mix(seed, i)), s))


def estimate_mean_ratio(n: int, m: int, seed: int, sampler: str = "uniform",
                        workers: int = 1, cap: int | None = None) -> StatSummary:
    """Mean of |S(a)|/n^2 over m sampled permutations."""
    if n < 2 or m < 2:
        raise ValueError("need n >= 2 and m >= 2")
    if sampler not in SAMPLERS:
        raise ValueError(f"unknown sampler {sampler!r}")
    vals = _map(partial(_ratio, n=n, seed=seed, sampler=sampler, cap=cap), range(m), workers)
    return StatSummary.from_values(n, vals, seed)


def hit_target(n: int, sigma: float) -> int:
    return min(max(round(sigma * n * n / 2), 1), n * (n + 1) // 2)


def estimate_hit_probability(n: int, sigma: float, m: int, seed: int,
                             workers: int = 1) -> HitEstimate:
    """Fraction of uniform permutations whose sum set contains round(sigma n^2 / 2)."""
    if not 0.0 < sigma < 1.0:
        raise ValueError("sigma must lie in (0, 1)")
    if m < 1:
        raise ValueError("m must be positive")
    s = hit_target(n, sigma)
    vals = _map(partial(_hit, n=n, seed=seed, s=s), range(m), workers)
    return HitEstimate(StatSummary.from_values(n, vals, seed), sigma, s, hit_theory(sigma))


def variance_sweep(ns: Sequence[int], m: int, seed: int, workers: int = 1,
                   cap: int | None = None) -> list[tuple[int, float]]:
    if m < 10:
        raise ValueError("variance sweep needs m >= 10")
    if list(ns) != sorted(set(ns)):
        raise ValueError("ns must be strictly increasing")
    return [(n, estimate_mean_ratio(n, m, seed, "uniform", workers, cap).std) for n in ns]


def convergence_sweep(ns: Sequence[int], m: int, seed: int, sampler: str = "uniform",
                      workers: int = 1, cap: int | None = None) -> list[tuple[int, float, float]]:
    target = TARGETS[sampler]
    rows = []
    for n in ns:
        mean = estimate_mean_ratio(n, m, seed, sampler, workers, cap).mean
        rows.append((n, mean, abs(mean - target)))
    return rows


@dataclass(frozen=True)
class ReportRow:
    name: str
    S_ratio: float
    L_ratio: float
    lower_bound_ratio: float

    @property
    def lower_bound_ok(self) -> bool:
        return self.lower_bound_ratio >= 1.0


def report_row(name: str, a: Permutation, cap: int | None = None) -> ReportRow:
    n = a.n
    count = distinct_sum_count(a, cap)
    _, ratio = lower_bound_check(a, count=count)
    return ReportRow(name, count / n**2, big_pairs_count(a) / n**2, ratio)


def construction_suite(n: int, seed: int = 0,
                       block_sizes: Sequence[int] = (2, 4, 8)) -> list[tuple[str, Permutation]]:
    suite = [("identity", perm.identity(n)), ("zigzag", perm.zigzag(n)), ("tent", perm.tent(n))]
    suite += [(f"block{M}", perm.block(n, M)) for M in block_sizes if n % M == 0]
    suite += [("uniform", perm.uniform_random(n, seed)), ("paired", perm.paired_random(n, seed))]
    return suite


def construction_report(n: int, seed: int = 0, block_sizes: Sequence[int] = (2, 4, 8),
                        cap: int | None = None) -> list[ReportRow]:
    return [report_row(name, a, cap) for name, a in construction_suite(n, seed, block_sizes)]
