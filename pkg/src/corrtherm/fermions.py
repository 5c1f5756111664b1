"""Entanglement generation between two fermionic modes of equal frequency.

Two protocols are covered. The even protocol cools both modes to the same
temperature and rotates in the even-parity block. The asymmetric protocol
prepares independent occupations ``N1 <= N2`` and rotates both parity blocks,
the odd one at no energy cost. Entanglement is the superselected entanglement
of formation in nats, one maximally entangled pair being worth ``ln 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .numerics import Bracket, bisect_root, maximize_grid_refine
from .thermo import BetaLike, as_beta, temperature

__all__ = [
    "FermionThermal",
    "FermionProtocolPoint",
    "fermion_thermal",
    "occupation",
    "w_max",
    "w_opt",
    "fermion_eof_symmetric",
    "fermion_eof_asymmetric",
    "fermion_w2_asymmetric",
    "fermion_w1",
    "fermion_optimize_even",
    "fermion_optimize",
]

LN2 = math.log(2.0)
QUARTER_PI = math.pi / 4


@dataclass(frozen=True)
class FermionThermal:
    beta: float
    p00: float
    p10: float
    p01: float
    p11: float


@dataclass(frozen=True)
class FermionProtocolPoint:
    N1: float
    N2: float
    theta_even: float
    theta_odd: float
    W_I: float = 0.0
    W_II: float = 0.0
    eof: float = 0.0
    T_II: float = math.nan

    def __post_init__(self):
        for name in ("N1", "N2"):
            v = getattr(self, name)
            if not -1e-12 <= v <= 1 + 1e-12:
                raise ValueError(f"{name}={v} outside [0, 1]")
        for name in ("theta_even", "theta_odd"):
            v = getattr(self, name)
            if not -1e-12 <= v <= QUARTER_PI + 1e-12:
                raise ValueError(f"{name}={v} outside [0, pi/4]")


def occupation(beta: BetaLike) -> float:
    """Fermi-Dirac occupation 1/(e^beta + 1) of one mode."""
    beta = as_beta(beta)
    if math.isinf(beta) or beta > 745:
        return 0.0
    return 1.0 / (math.exp(beta) + 1.0)


def fermion_thermal(beta: BetaLike) -> FermionThermal:
    beta = as_beta(beta)
    n = occupation(beta)
    return FermionThermal(beta, (1 - n) ** 2, n * (1 - n), n * (1 - n), n * n)


def _mode_free_energy(n: float, T: float) -> float:
    # omega*N + T [N ln N + (1-N) ln(1-N)]
    if T == 0:
        return n
    neg_s = 0.0
    if 0 < n < 1:
        neg_s = n * math.log(n) + (1 - n) * math.log1p(-n)
    return n + T * neg_s


def _thermal_mode_free_energy(beta: float) -> float:
    if math.isinf(beta):
        return 0.0
    return -math.log1p(math.exp(-beta)) / beta


def w_max(beta: BetaLike) -> float:
    """Cost 2T ln(e^beta + 1) - omega of a pure maximally entangled state."""
    beta = as_beta(beta)
    if math.isinf(beta):
        return 1.0
    # 2T ln(e^beta + 1) - 1 = 1 + 2T ln(1 + e^-beta)
    return 1.0 + 2.0 * math.log1p(math.exp(-beta)) / beta


def w_opt(beta: BetaLike) -> float:
    """Smallest cost at which the asymmetric protocol reaches ln 2."""
    beta = as_beta(beta)
    return w_max(beta) - temperature(beta) * LN2


def fermion_eof_symmetric(W_II: float, beta_I: BetaLike) -> float:
    """ln2 * sqrt(W_II) * sqrt(2 tanh(beta_I/2) - W_II)."""
    beta_I = as_beta(beta_I)
    cap = 2.0 * (1.0 if math.isinf(beta_I) else math.tanh(beta_I / 2))
    if W_II < 0 or W_II > cap * (1 + 1e-14):
        raise ValueError(f"W_II={W_II} outside [0, {cap}]")
    return LN2 * math.sqrt(W_II) * math.sqrt(max(cap - W_II, 0.0))


def fermion_eof_asymmetric(p: FermionProtocolPoint) -> float:
    return LN2 * (
        abs(1 - p.N1 - p.N2) * math.sin(2 * p.theta_even)
        + abs(p.N1 - p.N2) * math.sin(2 * p.theta_odd)
    )


def fermion_w2_asymmetric(N1: float, N2: float, theta_even: float) -> float:
    """Energy of the even-block rotation, 2(1 - N1 - N2) sin^2(theta_even)."""
    return 2.0 * (1.0 - N1 - N2) * math.sin(theta_even) ** 2


def fermion_w1(N1: float, N2: float, beta: BetaLike) -> float:
    """Free-energy cost of preparing occupations N1, N2 from the thermal state."""
    beta = as_beta(beta)
    T = temperature(beta)
    f_th = _thermal_mode_free_energy(beta)
    return (_mode_free_energy(N1, T) - f_th) + (_mode_free_energy(N2, T) - f_th)


def _marginal_temperature(n: float) -> float:
    if n <= 0:
        return 0.0
    if n >= 0.5 - 1e-12:
        return math.inf
    return 1.0 / math.log((1 - n) / n)


def _check_budget(W: float, beta: float) -> float:
    wm = w_max(beta)
    if W < 0:
        raise ValueError("W must be non-negative")
    if W > wm * (1 + 1e-12):
        raise ValueError(f"W={W} exceeds W_max={wm}")
    return wm


def _mode_cost_bounds(W: float, beta: float) -> tuple[float, float]:
    """Occupations reachable for one mode when it alone receives ``W``."""
    T = temperature(beta)
    n_th = occupation(beta)
    f_th = _thermal_mode_free_energy(beta)

    def cost(n):
        return _mode_free_energy(n, T) - f_th - W

    if cost(n_th) >= 0:
        # budget below rounding level
        return n_th, n_th
    lo = 0.0 if cost(0.0) <= 0 else bisect_root(cost, Bracket(0.0, n_th, tol=1e-15))
    hi = 1.0 if cost(1.0) <= 0 else bisect_root(cost, Bracket(n_th, 1.0, tol=1e-15))
    return lo, hi


def fermion_optimize_even(W: float, beta: BetaLike) -> FermionProtocolPoint:
    """Best split of ``W`` for the symmetric even-subspace protocol.

    Both modes are cooled to a common occupation ``N``; the remaining budget
    drives the even-block rotation, capped at theta = pi/4.
    """
    beta = as_beta(beta)
    _check_budget(W, beta)
    n_th = occupation(beta)
    if W == 0:
        return FermionProtocolPoint(n_th, n_th, 0.0, 0.0, 0.0, 0.0, 0.0, _marginal_temperature(n_th))

    def split(n):
        # the thermal occupation costs nothing; avoid rounding noise there
        w1 = 0.0 if n == n_th else fermion_w1(n, n, beta)
        a = 1.0 - 2.0 * n
        w2 = min(W - w1, a)
        return w1, w2, a

    def objective(n):
        w1, w2, a = split(n)
        if w2 < 0:
            return -math.inf
        return LN2 * math.sqrt(w2 * (2 * a - w2))

    n_lo, _ = _mode_cost_bounds(W / 2, beta)
    if n_th - n_lo <= 0:
        n = n_th
    else:
        n = float(maximize_grid_refine(lambda x: objective(x[0]), [Bracket(n_lo, n_th)], grid_n=65).x[0])
    w1, w2, a = split(n)
    w2 = max(w2, 0.0)
    theta = math.asin(math.sqrt(min(w2 / (2 * a), 0.5))) if a > 0 else 0.0
    n_final = n + w2 / 2
    return FermionProtocolPoint(n, n, theta, 0.0, w1, w2, objective(n), _marginal_temperature(n_final))


def _asym_eval(N1: float, N2: float, W: float, beta: float):
    s = 1.0 - N1 - N2
    if s < 0:
        return -math.inf, 0.0, 0.0
    w1 = fermion_w1(N1, N2, beta)
    budget = W - w1
    if budget < 0:
        return -math.inf, w1, 0.0
    if s == 0:
        return LN2 * abs(N2 - N1), w1, 0.0
    x = min(budget / (2 * s), 0.5)
    eof = LN2 * (s * 2 * math.sqrt(x * (1 - x)) + abs(N2 - N1))
    return eof, w1, x


def fermion_optimize(W: float, beta: BetaLike, grid_n: int = 41) -> FermionProtocolPoint:
    """Best asymmetric protocol for budget ``W``.

    The even angle is eliminated through the budget, leaving a search over
    the occupations (N1, N2) inside the box of occupations each mode could
    reach on its own. Once ln 2 is reachable the purest such state is
    reported, i.e. N1 = 0 and the smallest affordable N2.
    """
    beta = as_beta(beta)
    _check_budget(W, beta)
    n_th = occupation(beta)
    if W == 0:
        return FermionProtocolPoint(n_th, n_th, 0.0, QUARTER_PI, 0.0, 0.0, 0.0)

    if W >= w_opt(beta) * (1 - 1e-15):
        # ln 2 is reachable: N1 = 0 and N2 solves W1(0, N2) + (1 - N2) = W
        def excess(n2):
            return fermion_w1(0.0, n2, beta) + (1.0 - n2) - W

        if excess(0.0) <= 0:
            n2 = 0.0
        elif excess(0.5) >= 0:
            n2 = 0.5
        else:
            n2 = bisect_root(excess, Bracket(0.0, 0.5, tol=1e-15))
        w1 = fermion_w1(0.0, n2, beta)
        return FermionProtocolPoint(0.0, n2, QUARTER_PI, QUARTER_PI, w1, 1.0 - n2, LN2)

    lo, hi = _mode_cost_bounds(W, beta)
    if hi - lo <= 1e-15:
        return FermionProtocolPoint(n_th, n_th, 0.0, QUARTER_PI, 0.0, 0.0, 0.0)
    box = [Bracket(lo, hi), Bracket(lo, hi)]
    best = maximize_grid_refine(lambda x: _asym_eval(x[0], x[1], W, beta)[0], box, grid_n=grid_n)
    N1, N2 = sorted((float(best.x[0]), float(best.x[1])))
    eof, w1, x = _asym_eval(N1, N2, W, beta)
    theta = math.asin(math.sqrt(x))
    w2 = fermion_w2_asymmetric(N1, N2, theta)
    return FermionProtocolPoint(N1, N2, theta, QUARTER_PI, w1, w2, eof)
