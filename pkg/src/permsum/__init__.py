"""Distinct consecutive sums of permutations of [n]: exact counts, seeded
Monte Carlo estimates, and the continuous functional bounding |L(a)|."""

from .perm import (Permutation, block, identity, paired_random, reverse, swap_perturb,
                   tent, uniform_random, validate, zigzag)
from .sumcount import (band_profile, big_pairs_count, distinct_sum_count,
                       distinct_sum_count_naive, lower_bound_check, membership, membership_many,
                       prefix_sums, product_table_count, sum_set)

__all__ = [
    "Permutation", "block", "identity", "paired_random", "reverse", "swap_perturb",
    "tent", "uniform_random", "validate", "zigzag",
    "band_profile", "big_pairs_count", "distinct_sum_count", "distinct_sum_count_naive",
    "lower_bound_check", "membership", "membership_many", "prefix_sums", "product_table_count", "sum_set",
]
