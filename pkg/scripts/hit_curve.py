"""Estimated P(floor(sigma n^2) in S) against 1 - exp(-2 + 2 sigma)."""

import argparse
import sys

from permsum import montecarlo as mc
from permsum.cli import render


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=4096)
    p.add_argument("--samples", type=int, default=400)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--sigmas", default="0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")
    p.add_argument("--workers", type=int, default=1)
    args = p.parse_args(argv)
    rows = []
    for sigma in (float(x) for x in args.sigmas.split(",")):
        est = mc.estimate_hit_probability(args.n, sigma, args.samples, args.seed, args.workers)
        rows.append({"sigma": sigma, "s": est.s, "estimate": est.summary.mean,
                     "sem": est.summary.sem, "theory": est.theory})
    sys.stdout.write(render(rows, "csv"))


if __name__ == "__main__":
    main()
