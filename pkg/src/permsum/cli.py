"""Command-line front end.

Exit codes: 0 success, 1 runtime failure (size cap, I/O), 2 usage or parse
error. Data goes to stdout or --out; the resolved seed goes to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import continuous, montecarlo, perm, sumcount
from .errors import SizeCapError

DEFAULT_SEED = 0


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    M: int | None = None
    m: int = 100
    seed: int = DEFAULT_SEED
    sigma: float | None = None
    ns: list[int] = field(default_factory=list)
    sampler: str = "uniform"
    grid: int = 131072
    format: str = "csv"
    out: Path | None = None
    cap: int | None = None
    workers: int = 1

    def validate(self) -> None:
        if self.n is not None and self.n < 1:
            raise ValueError(f"--n must be >= 1, got {self.n}")
        if self.m < 1:
            raise ValueError(f"--samples must be >= 1, got {self.m}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("--seed must be a 64-bit unsigned integer")
        if self.sigma is not None and not 0.0 < self.sigma < 1.0:
            raise ValueError("--sigma must lie in (0, 1)")
        if self.grid < 2:
            raise ValueError("--grid must be >= 2")
        if self.cap is not None and self.cap < 1:
            raise ValueError("--cap must be positive")
        if self.workers < 1:
            raise ValueError("--workers must be positive")


def fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.9g}"
    return str(x)


def render(rows: list[dict], fmt_name: str) -> str:
    if fmt_name == "json":
        def conv(v):
            if isinstance(v, float):
                return float(f"{v:.9g}")
            return v
        return json.dumps([{k: conv(v) for k, v in r.items()} for r in rows], indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if rows:
        writer.writerow(rows[0].keys())
        for r in rows:
            writer.writerow(fmt(v) for v in r.values())
    return buf.getvalue()


def emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def parse_ns(text: str) -> list[int]:
    try:
        ns = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--ns expects a comma list of integers, got {text!r}")
    return ns


def _permutation_from_args(args) -> perm.Permutation:
    if getattr(args, "file", None):
        return perm.read_permutation(args.file)
    if args.name is None or args.n is None:
        raise ValueError("give --file or a construction name with --n")
    return perm.construct(args.name, args.n, M=args.M, seed=args.seed, m=args.swaps)


# -- commands ---------------------------------------------------------------

def cmd_construct(cfg: RunConfig, args) -> None:
    if cfg.n is None:
        raise ValueError("construct needs --n")
    a = perm.construct(args.name, cfg.n, M=cfg.M, seed=cfg.seed, m=args.swaps)
    emit(perm.format_permutation(a), cfg.out)


def count_record(a: perm.Permutation, cap: int | None = None) -> dict:
    n = a.n
    S = sumcount.distinct_sum_count(a, cap)
    L = sumcount.big_pairs_count(a)
    ok, _ = sumcount.lower_bound_check(a, count=S)
    return {"n": n, "S_count": S, "S_ratio": S / n**2, "L_count": L,
            "L_ratio": L / n**2, "lower_bound_ok": ok}


def cmd_count(cfg: RunConfig, args) -> None:
    a = _permutation_from_args(args)
    emit(render([count_record(a, cfg.cap)], cfg.format), cfg.out)


def cmd_mc(cfg: RunConfig, args) -> None:
    kind = args.kind
    rows: list[dict] = []
    if kind in ("mean", "hit") and cfg.n is None:
        raise ValueError(f"mc {kind} needs --n")
    if kind == "mean":
        st = montecarlo.estimate_mean_ratio(cfg.n, cfg.m, cfg.seed, cfg.sampler, cfg.workers, cfg.cap)
        rows.append({"n": st.n, "samples": st.samples, "sampler": cfg.sampler, "seed": st.seed,
                     "mean": st.mean, "std": st.std, "sem": st.sem, "ci_low": st.ci95[0],
                     "ci_high": st.ci95[1], "target": montecarlo.TARGETS[cfg.sampler]})
    elif kind == "hit":
        if cfg.sigma is None:
            raise ValueError("mc hit needs --sigma")
        h = montecarlo.estimate_hit_probability(cfg.n, cfg.sigma, cfg.m, cfg.seed, cfg.workers)
        st = h.summary
        rows.append({"n": st.n, "sigma": h.sigma, "s": h.s, "samples": st.samples, "seed": st.seed,
                     "estimate": st.mean, "std": st.std, "sem": st.sem, "ci_low": st.ci95[0],
                     "ci_high": st.ci95[1], "theory": h.theory})
    elif kind == "var":
        ns = cfg.ns or ([cfg.n] if cfg.n else [])
        for n, std in montecarlo.variance_sweep(ns, cfg.m, cfg.seed, cfg.workers, cfg.cap):
            rows.append({"n": n, "samples": cfg.m, "seed": cfg.seed, "std": std})
    else:
        target = montecarlo.TARGETS[cfg.sampler]
        for n, mean, err in montecarlo.convergence_sweep(cfg.ns, cfg.m, cfg.seed, cfg.sampler,
                                                         cfg.workers, cfg.cap):
            rows.append({"n": n, "samples": cfg.m, "sampler": cfg.sampler, "seed": cfg.seed,
                         "mean": mean, "target": target, "abs_err": err})
    emit(render(rows, cfg.format), cfg.out)


def cmd_lambda(cfg: RunConfig, args) -> None:
    if args.fn:
        f = continuous.read_function(args.fn)
    elif args.source == "tent":
        f = continuous.make_tent(cfg.grid)
    else:
        raise ValueError("lambda needs 'tent' or --fn FILE")
    r = continuous.evaluate_lambda(f)
    emit(render([{"grid": f.G, "lambda": r.value, "dual": r.dual, "dual_gap": r.gap}],
                cfg.format), cfg.out)


def cmd_report(cfg: RunConfig, args) -> None:
    if cfg.n is None:
        raise ValueError("report needs --n")
    rows = [{"name": r.name, "n": cfg.n, "S_ratio": r.S_ratio, "L_ratio": r.L_ratio,
             "lower_bound_ratio": r.lower_bound_ratio, "lower_bound_ok": r.lower_bound_ok}
            for r in montecarlo.construction_report(cfg.n, cfg.seed, args.blocks, cfg.cap)]
    emit(render(rows, cfg.format), cfg.out)


COMMANDS = {"construct": cmd_construct, "count": cmd_count, "mc": cmd_mc,
            "lambda": cmd_lambda, "report": cmd_report}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", type=Path)
    common.add_argument("--cap", type=int, help="size cap for n (default $PERMSUM_CAP or 65536)")

    p = argparse.ArgumentParser(prog="permsum", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="write a permutation file")
    c.add_argument("name", choices=perm.CONSTRUCTIONS)
    c.add_argument("--M", type=int)
    c.add_argument("--swaps", type=int, help="number of swaps for 'swap' (default n//4)")

    c = sub.add_parser("count", parents=[common], help="exact |S(a)| and |L(a)|")
    c.add_argument("name", nargs="?", choices=perm.CONSTRUCTIONS)
    c.add_argument("--file", type=Path)
    c.add_argument("--M", type=int)
    c.add_argument("--swaps", type=int)

    c = sub.add_parser("mc", parents=[common], help="Monte Carlo experiments")
    c.add_argument("kind", choices=("mean", "hit", "var", "sweep"))
    c.add_argument("--samples", type=int, default=100)
    c.add_argument("--sigma", type=float)
    c.add_argument("--ns", type=parse_ns, default=[])
    c.add_argument("--sampler", choices=tuple(montecarlo.SAMPLERS), default="uniform")
    c.add_argument("--workers", type=int, default=1)

    c = sub.add_parser("lambda", parents=[common], help="evaluate Lambda(f)")
    c.add_argument("source", nargs="?", choices=("tent",))
    c.add_argument("--fn", type=Path)
    c.add_argument("--grid", type=int, default=131072)

    c = sub.add_parser("report", parents=[common], help="compare the named constructions")
    c.add_argument("--blocks", type=parse_ns, default=[2, 4, 8])
    return p


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(
        command=args.command, n=args.n, M=getattr(args, "M", None),
        m=getattr(args, "samples", 100), seed=args.seed, sigma=getattr(args, "sigma", None),
        ns=getattr(args, "ns", []), sampler=getattr(args, "sampler", "uniform"),
        grid=getattr(args, "grid", 131072), format=args.format, out=args.out, cap=args.cap,
        workers=getattr(args, "workers", 1),
    )
    cfg.validate()
    return cfg


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        print(f"seed={cfg.seed}", file=sys.stderr)
        COMMANDS[cfg.command](cfg, args)
    except (SizeCapError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
