"""Thermal states of discrete spectra.

Energies are in units of the mode frequency, temperatures in units of
hbar*omega/k_B, entropies in nats. ``beta = math.inf`` is a valid input
everywhere and is handled by closed-form ground-state branches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

__all__ = [
    "SpectrumSystem",
    "OscillatorPair",
    "ThermalSpec",
    "ThermalProps",
    "two_fermion_modes",
    "two_boson_modes",
    "thermal_props",
    "noneq_free_energy",
    "relative_entropy_thermal",
    "entropic_f",
    "as_beta",
]


@dataclass(frozen=True)
class ThermalSpec:
    """Inverse temperature of a bath, ``beta`` in units of 1/omega."""

    beta: float

    def __post_init__(self):
        as_beta(self.beta)

    @property
    def T(self) -> float:
        return 0.0 if math.isinf(self.beta) else 1.0 / self.beta

    @classmethod
    def from_temperature(cls, T: float) -> "ThermalSpec":
        if not T >= 0 or math.isinf(T):
            raise ValueError(f"temperature must be finite and >= 0, got {T}")
        return cls(math.inf if T == 0 else 1.0 / T)


BetaLike = Union[float, ThermalSpec]


def as_beta(beta: BetaLike) -> float:
    if isinstance(beta, ThermalSpec):
        return beta.beta
    beta = float(beta)
    if math.isnan(beta) or beta <= 0 or beta == -math.inf:
        raise ValueError(f"beta must be > 0 or +inf, got {beta}")
    return beta


def temperature(beta: float) -> float:
    return 0.0 if math.isinf(beta) else 1.0 / beta


@dataclass(frozen=True)
class ThermalProps:
    energy: float
    entropy: float
    free_energy: float
    partition_function: float
    log_partition: float = field(repr=False, default=math.nan)

    # short aliases used throughout the protocols
    @property
    def E(self) -> float:
        return self.energy

    @property
    def S(self) -> float:
        return self.entropy

    @property
    def F(self) -> float:
        return self.free_energy

    @property
    def Z(self) -> float:
        return self.partition_function


@dataclass(frozen=True)
class SpectrumSystem:
    """Diagonal Hamiltonian given as aggregated levels.

    ``energies`` must be sorted and finite, ``degeneracies`` positive integers.
    """

    energies: tuple
    degeneracies: tuple
    name: str = "spectrum"

    def __post_init__(self):
        e = np.asarray(self.energies, dtype=float)
        g = np.asarray(self.degeneracies)
        if e.ndim != 1 or e.size < 2:
            raise ValueError("a spectrum needs at least 2 levels")
        if g.shape != e.shape:
            raise ValueError("energies and degeneracies differ in length")
        if not np.all(np.isfinite(e)):
            raise ValueError("energies must be finite")
        if np.any(np.diff(e) < 0):
            raise ValueError("energies must be sorted non-decreasing")
        if np.any(g < 1) or not np.all(np.equal(np.mod(g, 1), 0)):
            raise ValueError("degeneracies must be positive integers")
        object.__setattr__(self, "energies", tuple(float(x) for x in e))
        object.__setattr__(self, "degeneracies", tuple(int(x) for x in g))

    @property
    def ground_energy(self) -> float:
        return self.energies[0]

    @property
    def ground_degeneracy(self) -> int:
        return self.degeneracies[0]

    @property
    def energy_sup(self) -> float:
        """Energy of the infinite-temperature state, the largest thermal energy."""
        e = np.asarray(self.energies)
        g = np.asarray(self.degeneracies, dtype=float)
        return float(np.dot(g, e) / g.sum())

    def thermal_props(self, beta: float) -> ThermalProps:
        e = np.asarray(self.energies)
        g = np.asarray(self.degeneracies, dtype=float)
        e0 = e[0]
        if math.isinf(beta):
            g0 = g[e == e0].sum()
            s0 = math.log(g0)
            z0 = g0 if e0 == 0 else (0.0 if e0 > 0 else math.inf)
            return ThermalProps(e0, s0, e0, z0, math.log(z0) if z0 > 0 else -math.inf)
        # shift by the ground energy for overflow safety
        logw = np.log(g) - beta * (e - e0)
        lse = float(np.logaddexp.reduce(logw))
        p = np.exp(logw - lse)
        energy = float(np.dot(p, e))
        log_z = lse - beta * e0
        # S = -sum p ln(p/g) aggregated per level = beta*E + ln Z
        entropy = float(-np.dot(p, logw - lse - np.log(g)))
        free = float(-log_z / beta)
        return ThermalProps(energy, entropy, free, math.exp(log_z), log_z)


@dataclass(frozen=True)
class OscillatorPair:
    """Two identical, untruncated harmonic modes evaluated in closed form."""

    name: str = "two_boson_modes_exact"
    ground_energy: float = 0.0
    ground_degeneracy: int = 1
    energy_sup: float = math.inf

    def thermal_props(self, beta: float) -> ThermalProps:
        if math.isinf(beta):
            return ThermalProps(0.0, 0.0, 0.0, 1.0, 0.0)
        # E = coth(beta/2) - 1 = 2/(e^beta - 1); ln Z = -2 ln(1 - e^-beta)
        energy = 2.0 / math.expm1(beta) if beta < 700 else 2.0 * math.exp(-beta)
        log_z = -2.0 * math.log(-math.expm1(-beta))
        entropy = 2.0 * entropic_f(1.0 + energy)
        return ThermalProps(energy, entropy, -log_z / beta, math.exp(log_z), log_z)


def two_fermion_modes() -> SpectrumSystem:
    return SpectrumSystem((0.0, 1.0, 2.0), (1, 2, 1), name="two_fermion_modes")


def two_boson_modes(n_max: int | None = 64):
    """Two oscillator modes truncated at occupation ``n_max`` each.

    ``n_max=None`` returns the untruncated pair. The truncation error of the
    thermal populations is bounded by the neglected weight
    ``1 - (1 - e^{-beta (n_max+1)})^2``, below 1e-12 for
    ``beta * (n_max + 1) > 28``.
    """
    if n_max is None:
        return OscillatorPair()
    n_max = int(n_max)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    k = np.arange(2 * n_max + 1)
    deg = np.where(k <= n_max, k + 1, 2 * n_max - k + 1)
    return SpectrumSystem(tuple(k.astype(float)), tuple(deg), name=f"two_boson_modes({n_max})")


def thermal_props(sys, spec: BetaLike) -> ThermalProps:
    """Energy, entropy, free energy and partition function of ``tau(beta)``."""
    return sys.thermal_props(as_beta(spec))


def noneq_free_energy(props: ThermalProps, beta_bath: float) -> float:
    """Free energy E - T S of a state measured against a bath at ``beta_bath``."""
    return props.energy - temperature(beta_bath) * props.entropy


def relative_entropy_thermal(sys, beta_a: BetaLike, beta_b: BetaLike) -> float:
    """S(tau(beta_a) || tau(beta_b)) in nats, via the free-energy difference."""
    beta_a, beta_b = as_beta(beta_a), as_beta(beta_b)
    if beta_a == beta_b:
        return 0.0
    if math.isinf(beta_b):
        raise ValueError("relative entropy to the ground state is infinite for beta_a < inf")
    a = sys.thermal_props(beta_a)
    b = sys.thermal_props(beta_b)
    # beta_b * (E_a - T_b S_a + T_b ln Z_b)
    value = beta_b * a.energy - a.entropy + b.log_partition
    return max(value, 0.0)


def entropic_f(x: float) -> float:
    """Per-mode thermal entropy as a function of the symplectic eigenvalue ``x``.

    f(x) = ((x+1)/2) ln((x+1)/2) - ((x-1)/2) ln((x-1)/2), with f(1) = 0.
    """
    if x < 1:
        raise ValueError(f"entropic_f needs x >= 1, got {x}")
    n = 0.5 * (x - 1.0)
    if n == 0:
        return 0.0
    # (n+1) ln(n+1) - n ln n, written to avoid cancellation at large n
    return math.log1p(n) + n * math.log1p(1.0 / n)
