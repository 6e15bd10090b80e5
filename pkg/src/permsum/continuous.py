"""Numerical engine for the continuous relaxation of |L(a)|.

A function on [0, 1] is stored by its values on the uniform grid k/G. Each
cell [k/G, (k+1)/G] carries a linear piece from ``lo[k]`` to ``hi[k]``
(``step=True`` makes every piece constant), so the running integral is an
exact quadratic per cell and inverting it is closed form.

Conventions: v(u) is the right end of the longest interval starting at u
with mass <= 1/4, u(v) the left end of the longest one ending at v, and
Lambda(f) the area of {(x, y): x <= y, mass of [x, y] >= 1/4}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Callable

import numpy as np

from .errors import (GridMismatch, MalformedFunctionFile, OddGrid, OutOfDomain,
                     RangeViolation, SupportViolation, TooCloseToKappa)
from .perm import Permutation

QUARTER = 0.25


@dataclass(frozen=True)
class Tolerances:
    eta: float = 0.05           # margin around kappa excluded from w
    mass: float = 1e-6          # total mass / split mass checks
    mean_zero: float = 1e-9     # |integral of h|
    rearrangement: float = 1e-9
    monotone: float = 1e-12


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True, eq=False)
class PiecewiseLinearFn:
    values: np.ndarray
    step: bool = False

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.ndim != 1 or len(vals) < 2:
            raise ValueError("need at least two grid values")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def G(self) -> int:
        return len(self.values) - 1

    @property
    def h(self) -> float:
        return 1.0 / self.G

    @cached_property
    def grid(self) -> np.ndarray:
        return np.arange(self.G + 1) / self.G

    @cached_property
    def lo(self) -> np.ndarray:
        return self.values[:-1]

    @cached_property
    def hi(self) -> np.ndarray:
        return self.values[:-1] if self.step else self.values[1:]

    @cached_property
    def cumulative(self) -> np.ndarray:
        c = np.zeros(self.G + 1)
        np.cumsum((self.lo + self.hi) * (0.5 * self.h), out=c[1:])
        return c

    @property
    def mass(self) -> float:
        return float(self.cumulative[-1])

    @cached_property
    def kappa(self) -> float:
        """Point where the running mass reaches 1/4."""
        return float(v_of(self, 0.0))

    def _cell(self, x: np.ndarray) -> np.ndarray:
        return np.minimum((x * self.G).astype(np.int64), self.G - 1)

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        k = self._cell(x)
        t = x * self.G - k
        return self.lo[k] + (self.hi[k] - self.lo[k]) * t

    def integral(self, x):
        """Running integral from 0 to x."""
        x = np.asarray(x, dtype=np.float64)
        k = self._cell(x)
        t = x - k * self.h
        d = self.hi[k] - self.lo[k]
        return self.cumulative[k] + self.lo[k] * t + d * t * t * (0.5 * self.G)

    def _solve_in_cell(self, k: np.ndarray, r: np.ndarray) -> np.ndarray:
        """x in cell k with running integral exceeding cumulative[k] by r."""
        lo = self.lo[k]
        d = self.hi[k] - self.lo[k]
        disc = np.maximum(lo * lo + 2.0 * d * r * self.G, 0.0)
        denom = lo + np.sqrt(disc)
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.where(denom > 0, 2.0 * r / denom, 0.0)
        return k * self.h + np.clip(t, 0.0, self.h)


def _check_unit(x, what: str) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if np.any((x < 0.0) | (x > 1.0)) or np.any(np.isnan(x)):
        raise OutOfDomain(f"{what} must lie in [0, 1]")
    return x


def v_of(f: PiecewiseLinearFn, u):
    """sup{v : mass of [u, v] <= 1/4}; 1 when less than 1/4 remains."""
    u = _check_unit(u, "u")
    target = f.integral(u) + QUARTER
    k = np.searchsorted(f.cumulative, target, side="right") - 1
    full = k >= f.G
    kc = np.minimum(k, f.G - 1)
    out = f._solve_in_cell(kc, target - f.cumulative[kc])
    out = np.where(full, 1.0, np.maximum(out, u))
    return out if out.ndim else float(out)


def u_of(f: PiecewiseLinearFn, v):
    """inf{u : mass of [u, v] <= 1/4}; 0 when [0, v] holds at most 1/4."""
    v = _check_unit(v, "v")
    target = f.integral(v) - QUARTER
    empty = target <= 0.0
    k = np.searchsorted(f.cumulative, target, side="left")
    kc = np.clip(k - 1, 0, f.G - 1)
    out = f._solve_in_cell(kc, np.maximum(target - f.cumulative[kc], 0.0))
    out = np.where(empty, 0.0, np.minimum(out, v))
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class LambdaResult:
    value: float      # trapezoid of 1 - v(u)
    dual: float       # trapezoid of u(v)
    gap: float


def evaluate_lambda(f: PiecewiseLinearFn) -> LambdaResult:
    x = f.grid
    primal = float(np.trapezoid(1.0 - v_of(f, x), x))
    dual = float(np.trapezoid(u_of(f, x), x))
    return LambdaResult(primal, dual, abs(primal - dual))


def lambda_value(f: PiecewiseLinearFn) -> float:
    return evaluate_lambda(f).value


# -- constructors ---------------------------------------------------------

def make_tent(G: int) -> PiecewiseLinearFn:
    if G < 2 or G % 2:
        raise OddGrid(f"tent needs an even grid size >= 2, got {G}")
    k = np.arange(G + 1)
    return PiecewiseLinearFn(2.0 * np.minimum(k, G - k) / G)


def from_callable(fn: Callable[[np.ndarray], np.ndarray], G: int) -> PiecewiseLinearFn:
    return PiecewiseLinearFn(fn(np.arange(G + 1) / G))


def embed_permutation(a: Permutation, G: int) -> PiecewiseLinearFn:
    """Step function equal to a_i / (n + 1) on [(i-1)/n, i/n)."""
    n = a.n
    if G % n:
        raise GridMismatch(f"grid size {G} is not a multiple of n={n}")
    cells = np.repeat(np.asarray(a.values, dtype=np.float64) / (n + 1), G // n)
    return PiecewiseLinearFn(np.append(cells, cells[-1]), step=True)


def random_fmon(G: int, seed: int, knots: int = 8, max_tries: int = 1000,
                tol: Tolerances = DEFAULT_TOL) -> PiecewiseLinearFn:
    """Heuristic sampler of unimodal members of F_mon (not uniform on F_mon).

    An increasing left shape and decreasing right shape, each normalised to
    peak 1, are glued at kappa and scaled by a common gamma; kappa and gamma
    are the unique values giving mass 1/4 on either side. Candidates with
    gamma > 1 or failing the rearrangement condition are rejected.
    """
    rng = np.random.default_rng(seed)
    x = np.arange(G + 1) / G
    for _ in range(max_tries):
        left = _monotone_shape(rng, knots)
        right = _monotone_shape(rng, knots)
        I_L = _shape_mean(left)
        I_R = _shape_mean(right)
        kappa = I_R / (I_L + I_R)
        gamma = (I_L + I_R) / (4.0 * I_L * I_R)
        if gamma > 1.0:
            continue
        t = np.linspace(0.0, 1.0, knots + 1)
        vals = np.where(
            x <= kappa,
            np.interp(x / kappa, t, left),
            np.interp((1.0 - x) / (1.0 - kappa), t, right),
        )
        g = PiecewiseLinearFn(gamma * vals)
        if validate_fmon(g, tol):
            return g
    raise RuntimeError(f"no F_mon sample accepted in {max_tries} tries")


def _monotone_shape(rng: np.random.Generator, knots: int) -> np.ndarray:
    start = rng.uniform(0.0, 0.8)
    inc = rng.uniform(size=knots)
    return start + (1.0 - start) * np.cumsum(np.r_[0.0, inc]) / inc.sum()


def _shape_mean(knot_values: np.ndarray) -> float:
    return float(np.mean((knot_values[:-1] + knot_values[1:]) / 2.0))


# -- membership -----------------------------------------------------------

@dataclass(frozen=True)
class FmonReport:
    in_range: bool
    mass_ok: bool
    split_ok: bool
    monotone_ok: bool
    rearrangement_ok: bool
    mass: float
    kappa: float
    rearrangement_margin: float

    @property
    def in_F(self) -> bool:
        return self.in_range and self.mass_ok and self.rearrangement_ok

    @property
    def ok(self) -> bool:
        return self.in_F and self.split_ok and self.monotone_ok

    def __bool__(self) -> bool:
        return self.ok


def validate_fmon(f: PiecewiseLinearFn, tol: Tolerances = DEFAULT_TOL) -> FmonReport:
    """Check both F_mon conditions on the grid.

    Monotonicity is checked on grid nodes up to floor(kappa G) and from
    ceil(kappa G); the single cell straddling kappa is not constrained.
    The mass condition uses the worst set of each measure j/G: the union
    of the j cells with the smallest averages.
    """
    vals = f.values
    in_range = bool(np.all(vals >= -tol.monotone) and np.all(vals <= 1.0 + tol.monotone))
    mass = f.mass
    mass_ok = abs(mass - 0.5) <= tol.mass
    kappa = f.kappa
    split_ok = abs(float(f.integral(kappa)) - QUARTER) <= tol.mass
    kl = int(math.floor(kappa * f.G))
    kr = int(math.ceil(kappa * f.G))
    monotone_ok = bool(np.all(np.diff(vals[: kl + 1]) >= -tol.monotone)
                       and np.all(np.diff(vals[kr:]) <= tol.monotone))
    cell_means = np.sort((f.lo + f.hi) / 2.0)
    j = np.arange(1, f.G + 1)
    margin = float(np.min(np.cumsum(cell_means) / f.G - 0.5 * (j / f.G) ** 2))
    return FmonReport(in_range, mass_ok, split_ok, monotone_ok,
                      margin >= -tol.rearrangement, mass, kappa, margin)


# -- first variation ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Perturbation:
    values: np.ndarray
    support: tuple[float, float]

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        x0, x1 = self.support
        if not 0.0 <= x0 < x1 <= 1.0:
            raise SupportViolation(f"bad support {self.support}")
        if np.any(np.abs(vals) > 1.0):
            raise SupportViolation("perturbation must satisfy |h| <= 1")
        x = np.arange(len(vals)) / (len(vals) - 1)
        if np.any(vals[(x < x0) | (x > x1)] != 0.0):
            raise SupportViolation("perturbation does not vanish outside its support")

    @property
    def G(self) -> int:
        return len(self.values) - 1

    @property
    def integral(self) -> float:
        return float(np.trapezoid(self.values, dx=1.0 / self.G))


def bump_pair(G: int, x0: float, x1: float) -> Perturbation:
    """One sine period on [x0, x1]: a positive bump then a negative one."""
    x = np.arange(G + 1) / G
    inside = (x >= x0) & (x <= x1)
    vals = np.where(inside, np.sin(2.0 * np.pi * (x - x0) / (x1 - x0)), 0.0)
    return Perturbation(vals, (x0, x1))


def weight_w(f: PiecewiseLinearFn, x, tol: Tolerances = DEFAULT_TOL):
    """w(x) = int_0^x du / f(v(u)) left of kappa, int_x^1 dv / f(u(v)) right of it.

    Composite trapezoid on the grid, closed off exactly at x.
    """
    x = _check_unit(x, "x")
    kappa = f.kappa
    left = x <= kappa - tol.eta
    right = x >= kappa + tol.eta
    if not np.all(left | right):
        raise TooCloseToKappa(f"w is only evaluated outside ({kappa - tol.eta}, {kappa + tol.eta})")
    out = np.zeros_like(x)
    G = f.G
    grid = f.grid
    if np.any(left):
        kl = int(math.floor((kappa - tol.eta) * G))
        nodes = grid[: kl + 1]
        g = 1.0 / f(v_of(f, nodes))
        W = np.r_[0.0, np.cumsum((g[1:] + g[:-1]) * (0.5 / G))]
        xs = x[left]
        j = np.minimum((xs * G).astype(np.int64), kl)
        gx = 1.0 / f(v_of(f, xs))
        out[left] = W[j] + (xs - grid[j]) * (g[j] + gx) / 2.0
    if np.any(right):
        kr = int(math.ceil((kappa + tol.eta) * G))
        nodes = grid[kr:]
        g = 1.0 / f(u_of(f, nodes))
        seg = (g[1:] + g[:-1]) * (0.5 / G)
        W = np.r_[np.cumsum(seg[::-1])[::-1], 0.0]
        xs = x[right]
        j = np.maximum(np.ceil(xs * G - 1e-9).astype(np.int64), kr)
        gx = 1.0 / f(u_of(f, xs))
        out[right] = W[j - kr] + (grid[j] - xs) * (g[j - kr] + gx) / 2.0
    return out if out.ndim else float(out)


def _check_support(f: PiecewiseLinearFn, h: Perturbation, tol: Tolerances) -> None:
    if h.G != f.G:
        raise GridMismatch(f"perturbation grid {h.G} != function grid {f.G}")
    x0, x1 = h.support
    kappa = f.kappa
    in_left = tol.eta <= x0 and x1 <= kappa - tol.eta
    in_right = kappa + tol.eta <= x0 and x1 <= 1.0 - tol.eta
    if not (in_left or in_right):
        raise SupportViolation(
            f"support {h.support} must lie in [{tol.eta}, kappa-eta] or [kappa+eta, {1 - tol.eta}]")
    if abs(h.integral) > tol.mean_zero:
        raise SupportViolation(f"perturbation has nonzero mean {h.integral:.3g}")


def directional_derivative(f: PiecewiseLinearFn, h: Perturbation,
                           tol: Tolerances = DEFAULT_TOL) -> float:
    """First variation of Lambda along h: integral of h * w over supp h."""
    _check_support(f, h, tol)
    x0, x1 = h.support
    G = f.G
    k0 = int(math.floor(x0 * G))
    k1 = int(math.ceil(x1 * G))
    nodes = f.grid[k0 : k1 + 1]
    inside = (nodes >= x0) & (nodes <= x1)
    w = np.zeros_like(nodes)
    w[inside] = weight_w(f, nodes[inside], tol)
    return float(np.trapezoid(h.values[k0 : k1 + 1] * w, nodes))


def finite_difference(f: PiecewiseLinearFn, h: Perturbation, tau: float,
                      central: bool = False) -> float:
    """(Lambda(f + tau h) - Lambda(f)) / tau, or the central version.

    F-membership of the perturbed function is not enforced.
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    if f.step:
        raise ValueError("finite differences need a piecewise-linear f")
    if h.G != f.G:
        raise GridMismatch(f"perturbation grid {h.G} != function grid {f.G}")

    def perturbed(sign: float) -> PiecewiseLinearFn:
        vals = f.values + sign * tau * h.values
        if np.any(vals < 0.0) or np.any(vals > 1.0):
            raise RangeViolation(f"f {'+' if sign > 0 else '-'} tau*h leaves [0, 1]")
        return PiecewiseLinearFn(vals)

    up = lambda_value(perturbed(1.0))
    if central:
        return (up - lambda_value(perturbed(-1.0))) / (2.0 * tau)
    return (up - lambda_value(f)) / tau


# -- file format: line 1 = G, then G + 1 values ---------------------------

def format_function(f: PiecewiseLinearFn) -> str:
    return f"{f.G}\n" + "".join(f"{v!r}\n" for v in f.values.tolist())


def parse_function(text: str) -> PiecewiseLinearFn:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MalformedFunctionFile("empty function file")
    try:
        G = int(lines[0])
        vals = [float(v) for v in lines[1:]]
    except ValueError as exc:
        raise MalformedFunctionFile(str(exc)) from None
    if G < 1 or len(vals) != G + 1:
        raise MalformedFunctionFile(f"header says G={G} but {len(vals)} values follow")
    if not all(math.isfinite(v) and 0.0 <= v <= 1.0 for v in vals):
        raise MalformedFunctionFile("function values must lie in [0, 1]")
    return PiecewiseLinearFn(np.array(vals))


def read_function(path: str | Path) -> PiecewiseLinearFn:
    return parse_function(Path(path).read_text())


def write_function(f: PiecewiseLinearFn, path: str | Path) -> None:
    Path(path).write_text(format_function(f))
