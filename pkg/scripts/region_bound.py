"""Slack in |L(a)| <= (pi/16) n^2 + 4n for structured and random permutations."""

import argparse
import math
import sys

from permsum import perm
from permsum import sumcount as sc
from permsum.cli import render
from permsum.montecarlo import construction_suite
from permsum.rng import mix


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=1024)
    p.add_argument("--random", type=int, default=100)
    p.add_argument("--seed", type=int, default=1)
    args = p.parse_args(argv)
    n = args.n
    limit = math.pi / 16 * n * n + 4 * n
    suite = list(construction_suite(n, args.seed))
    suite += [(f"uniform{i}", perm.uniform_random(n, mix(args.seed, i))) for i in range(args.random)]
    rows = []
    for name, a in suite:
        L = sc.big_pairs_count(a)
        rows.append({"name": name, "L_count": L, "L_ratio": L / n**2, "slack": limit - L})
    sys.stdout.write(render(rows, "csv"))


if __name__ == "__main__":
    main()
