"""|S|/n^2 for identity and block constructions next to the product-table count."""

import argparse
import sys

from permsum import perm
from permsum import sumcount as sc
from permsum.cli import parse_ns, render


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--ns", type=parse_ns, default=[256, 512, 1024, 2048, 4096])
    p.add_argument("--blocks", type=parse_ns, default=[2, 4, 8])
    args = p.parse_args(argv)
    rows = []
    for n in args.ns:
        row = {"n": n, "product": sc.product_table_count(n) / n**2,
               "identity": sc.distinct_sum_count(perm.identity(n)) / n**2}
        for M in args.blocks:
            row[f"block{M}"] = sc.distinct_sum_count(perm.block(n, M)) / n**2 if n % M == 0 else ""
        rows.append(row)
    sys.stdout.write(render(rows, "csv"))


if __name__ == "__main__":
    main()
