"""Deterministic scalar root finding and low-dimensional maximization."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "Bracket",
    "Maximum",
    "ConvergenceError",
    "NoSignChangeError",
    "bisect_root",
    "maximize_1d",
    "maximize_grid_refine",
]

ROOT_TOL = 1e-12
ARG_TOL = 1e-10
MAX_ITER = 200

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class ConvergenceError(RuntimeError):
    pass


class NoSignChangeError(ValueError):
    pass


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    tol: float = ROOT_TOL
    max_iter: int = MAX_ITER

    def __post_init__(self):
        if not (self.lo < self.hi):
            raise ValueError(f"empty bracket [{self.lo}, {self.hi}]")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


class Maximum(NamedTuple):
    x: float | np.ndarray
    value: float
    flat: bool = False


def bisect_root(f: Callable[[float], float], b: Bracket) -> float:
    """Root of ``f`` inside ``b`` by bisection.

    Stops once the bracket is narrower than ``b.tol`` or can no longer be split
    in floating point.
    """
    lo, hi = b.lo, b.hi
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise NoSignChangeError(f"f({lo})={flo} and f({hi})={fhi} have the same sign")
    for _ in range(b.max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= b.tol or mid <= lo or mid >= hi:
            return mid
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    if hi - lo <= b.tol:
        return 0.5 * (lo + hi)
    raise ConvergenceError(f"bisection did not reach tol={b.tol} in {b.max_iter} iterations")


def maximize_1d(f: Callable[[float], float], b: Bracket) -> Maximum:
    """Golden-section maximization of a unimodal ``f`` on ``b``.

    The endpoints and the midpoint are always probed so a monotone or badly
    seeded objective still returns the best value seen.
    """
    lo, hi = b.lo, b.hi
    probes = {lo: f(lo), hi: f(hi), 0.5 * (lo + hi): f(0.5 * (lo + hi))}
    a, d = lo, hi
    c1 = d - _INVPHI * (d - a)
    c2 = a + _INVPHI * (d - a)
    f1, f2 = f(c1), f(c2)
    probes[c1], probes[c2] = f1, f2
    for _ in range(b.max_iter):
        if d - a <= b.tol:
            break
        if f1 >= f2:
            d, c2, f2 = c2, c1, f1
            c1 = d - _INVPHI * (d - a)
            f1 = f(c1)
            probes[c1] = f1
        else:
            a, c1, f1 = c1, c2, f2
            c2 = a + _INVPHI * (d - a)
            f2 = f(c2)
            probes[c2] = f2
    else:
        raise ConvergenceError(f"golden section did not reach tol={b.tol} in {b.max_iter} iterations")
    x_best = max(probes, key=lambda x: (probes[x], -x))
    values = np.fromiter(probes.values(), float)
    flat = bool(np.all(np.abs(values - values[0]) <= 1e-15 * max(1.0, abs(values[0]))))
    return Maximum(x_best, probes[x_best], flat)


def maximize_grid_refine(
    f: Callable[[np.ndarray], float],
    box: Sequence[Bracket],
    grid_n: int = 41,
    tol: float = ARG_TOL,
    max_passes: int = 100,
) -> Maximum:
    """Maximize ``f`` over a box of at most 3 axes.

    A coarse grid scan seeds coordinate-wise golden-section passes, each
    restricted to one grid spacing around the incumbent. Passes stop once the
    objective improves by less than ``tol``. Ties on the grid go to the
    lexicographically smallest point.
    """
    if len(box) == 0:
        raise ValueError("empty box")
    if len(box) > 3:
        raise ValueError("at most 3 axes are supported")
    axes = [np.linspace(b.lo, b.hi, grid_n) for b in box]
    best_x, best_v = None, -math.inf
    for pt in itertools.product(*axes):
        v = f(np.array(pt))
        if v > best_v:
            best_x, best_v = np.array(pt), v
    if best_x is None:
        raise ValueError("objective is -inf on the whole grid")
    steps = [(b.hi - b.lo) / (grid_n - 1) for b in box]
    for _ in range(max_passes):
        start = best_v
        for i, b in enumerate(box):
            lo = max(b.lo, best_x[i] - steps[i])
            hi = min(b.hi, best_x[i] + steps[i])
            if hi <= lo:
                continue

            def along(t, i=i, x=best_x):
                y = x.copy()
                y[i] = t
                return f(y)

            m = maximize_1d(along, Bracket(lo, hi, tol=tol))
            if m.value > best_v:
                best_x = best_x.copy()
                best_x[i] = m.x
                best_v = m.value
        if best_v - start < tol:
            break
    return Maximum(best_x, best_v, False)
