"""Work cost of generating mutual information between two subsystems.

The optimal two-step protocol first thermalizes the system at a lower
temperature (cooling, cost ``W_I``) and then applies a unitary that leaves
both marginals thermal (correlating, cost ``W_II``).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .numerics import Bracket, bisect_root
from .thermo import BetaLike, as_beta, noneq_free_energy, temperature

__all__ = [
    "Regime",
    "ProtocolSplit",
    "SaturationError",
    "mi_ultimate_bound",
    "solve_beta_II",
    "beta_for_energy",
    "mi_optimal",
    "boson_mi_asymptotic",
]

BETA_LO, BETA_HI = 1e-6, 1e6


class SaturationError(ValueError):
    """Requested energy lies above what any positive temperature can hold."""

    def __init__(self, target: float, sup: float):
        super().__init__(f"target energy {target:.6g} exceeds the spectrum supremum {sup:.6g}")
        self.target = target
        self.sup = sup


class Regime(str, enum.Enum):
    LINEAR = "linear"
    ENTROPY_SATURATED = "entropy_saturated"


@dataclass(frozen=True)
class ProtocolSplit:
    W_total: float
    W_I: float
    W_II: float
    beta_I: float
    beta_II: float
    mutual_info: float
    regime: Regime


def mi_ultimate_bound(W: float, beta: BetaLike) -> float:
    """I <= beta * W, the bound no protocol can beat."""
    if W < 0:
        raise ValueError("W must be non-negative")
    beta = as_beta(beta)
    if W == 0:
        return 0.0
    return beta * W


def beta_for_energy(sys, energy: float) -> float:
    """Inverse temperature at which the thermal energy equals ``energy``."""
    e0 = sys.ground_energy
    if energy < e0:
        raise ValueError(f"target energy {energy} is below the ground energy {e0}")
    if energy >= sys.energy_sup:
        raise SaturationError(energy, sys.energy_sup)
    if energy == e0:
        return math.inf
    if sys.thermal_props(BETA_HI).energy >= energy:
        return BETA_HI
    lo = BETA_LO
    while sys.thermal_props(lo).energy < energy:
        lo *= 1e-3
        if lo < 1e-300:
            raise SaturationError(energy, sys.energy_sup)
    u = bisect_root(
        lambda v: sys.thermal_props(math.exp(v)).energy - energy,
        Bracket(math.log(lo), math.log(BETA_HI), tol=1e-15),
    )
    return math.exp(u)


def solve_beta_II(sys, W: float, beta: BetaLike) -> float:
    """beta_II solving E(tau(beta_II)) = W + F(tau(beta))."""
    beta = as_beta(beta)
    return beta_for_energy(sys, W + sys.thermal_props(beta).free_energy)


def _beta_for_entropy(sys, entropy: float, beta_min: float) -> float:
    s_ground = math.log(sys.ground_degeneracy)
    if entropy <= s_ground:
        return math.inf
    if sys.thermal_props(beta_min).entropy <= entropy:
        return beta_min
    hi = max(BETA_HI, beta_min * 2)
    if sys.thermal_props(hi).entropy >= entropy:
        return hi
    u = bisect_root(
        lambda v: sys.thermal_props(math.exp(v)).entropy - entropy,
        Bracket(math.log(beta_min), math.log(hi), tol=1e-15),
    )
    return math.exp(u)


def mi_optimal(sys, W: float, beta: BetaLike) -> ProtocolSplit:
    """Largest mutual information reachable with work ``W`` from ``tau(beta)``.

    Linear regime: ``beta_II = beta``, ``I = beta W`` and ``beta_I`` is found
    from ``S(tau(beta_I)) = S(tau(beta)) - beta W``. Entropy-saturated regime:
    cool to the ground state and heat the marginals with the rest.
    """
    if W < 0:
        raise ValueError("W must be non-negative")
    beta = as_beta(beta)
    T = temperature(beta)
    tau = sys.thermal_props(beta)
    ground = sys.thermal_props(math.inf)
    s_ground = ground.entropy

    if W == 0:
        return ProtocolSplit(0.0, 0.0, 0.0, beta, beta, 0.0, Regime.LINEAR)

    if not math.isinf(beta) and beta * W <= tau.entropy - s_ground:
        beta_I = _beta_for_entropy(sys, tau.entropy - beta * W, beta)
        cooled = sys.thermal_props(beta_I)
        W_I = noneq_free_energy(cooled, beta) - tau.free_energy
        W_II = W - W_I
        return ProtocolSplit(W, W_I, W_II, beta_I, beta, beta * W, Regime.LINEAR)

    W_I = ground.energy - T * s_ground - tau.free_energy
    W_II = W - W_I
    beta_II = beta_for_energy(sys, ground.energy + W_II)
    info = sys.thermal_props(beta_II).entropy - s_ground
    return ProtocolSplit(W, W_I, W_II, math.inf, beta_II, info, Regime.ENTROPY_SATURATED)


def boson_mi_asymptotic(W_II: float) -> float:
    """High-energy form 2 + 2 ln(W_II / 2) of the two-mode bosonic optimum."""
    if W_II <= 0:
        raise ValueError("W_II must be positive")
    return 2.0 + 2.0 * math.log(W_II / 2.0)
