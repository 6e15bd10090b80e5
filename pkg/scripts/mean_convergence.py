"""Monte Carlo mean of |S|/n^2 against its limiting constant, over a range of n."""

import argparse
import sys

from permsum import montecarlo as mc
from permsum.cli import parse_ns, render


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--ns", type=parse_ns, default=[512, 1024, 2048, 4096])
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--sampler", choices=mc.SAMPLERS, default="uniform")
    p.add_argument("--workers", type=int, default=1)
    args = p.parse_args(argv)
    target = mc.TARGETS[args.sampler]
    rows = []
    for n in args.ns:
        st = mc.estimate_mean_ratio(n, args.samples, args.seed, args.sampler, args.workers)
        rows.append({"n": n, "mean": st.mean, "std": st.std, "sem": st.sem,
                     "target": target, "abs_err": abs(st.mean - target)})
    sys.stdout.write(render(rows, "csv"))


if __name__ == "__main__":
    main()
