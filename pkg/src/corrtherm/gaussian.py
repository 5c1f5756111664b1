"""Gaussian entanglement generation between two bosonic modes.

Quadratures are ordered (x1, p1, x2, p2) and the vacuum covariance matrix is
the identity. A thermal mode at temperature T has symplectic eigenvalue
coth(1/(2T)). The protocol cools both modes to ``nu_I`` and then applies
two-mode squeezing.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .numerics import Bracket, bisect_root, maximize_grid_refine
from .thermo import entropic_f

__all__ = [
    "CovarianceMatrix",
    "GaussStatus",
    "GaussProtocolPoint",
    "OMEGA",
    "nu_of_T",
    "T_of_nu",
    "gauss_w1",
    "gauss_w2",
    "nu_tilde_from_w2",
    "eof_gaussian",
    "gauss_optimize",
    "symplectic_eigenvalues",
    "partial_transpose",
    "thermal_squeezed_cov",
]

OMEGA = np.array([[0.0, 1.0], [-1.0, 0.0]])
_OMEGA4 = np.kron(np.eye(2), OMEGA)


class CovarianceMatrix:
    """Real symmetric 4x4 second-moment matrix with zero first moments."""

    def __init__(self, sigma, check: bool = True):
        sigma = np.array(sigma, dtype=float)
        if sigma.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got {sigma.shape}")
        if not np.allclose(sigma, sigma.T, atol=1e-12, rtol=0):
            raise ValueError("covariance matrix is not symmetric")
        self.sigma = 0.5 * (sigma + sigma.T)
        if check and symplectic_eigenvalues(self.sigma)[0] < 1 - 1e-10:
            raise ValueError("matrix violates the uncertainty relation sigma + i Omega >= 0")

    def __array__(self, dtype=None, copy=None):
        return self.sigma if dtype is None else self.sigma.astype(dtype)

    def partial_transpose(self) -> "CovarianceMatrix":
        return CovarianceMatrix(partial_transpose(self.sigma), check=False)

    def symplectic_eigenvalues(self) -> tuple[float, float]:
        return symplectic_eigenvalues(self.sigma)


def symplectic_eigenvalues(sigma) -> tuple[float, float]:
    """(nu_minus, nu_plus): moduli of the eigenvalues of i Omega sigma."""
    sigma = np.asarray(sigma, dtype=float)
    if sigma.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {sigma.shape}")
    if not np.allclose(sigma, sigma.T, atol=1e-12, rtol=0):
        raise ValueError("covariance matrix is not symmetric")
    ev = np.sort(np.abs(np.linalg.eigvals(1j * _OMEGA4 @ sigma)))
    # eigenvalues come in +- pairs
    return float(0.5 * (ev[0] + ev[1])), float(0.5 * (ev[2] + ev[3]))


def partial_transpose(sigma) -> np.ndarray:
    """Flip the momentum of the second mode."""
    flip = np.diag([1.0, 1.0, 1.0, -1.0])
    return flip @ np.asarray(sigma, dtype=float) @ flip


def thermal_squeezed_cov(nu_I: float, r: float) -> np.ndarray:
    """Two-mode squeezed thermal state nu_I * S(r) S(r)^T."""
    c, s = math.cosh(2 * r), math.sinh(2 * r)
    z = np.diag([1.0, -1.0])
    eye = np.eye(2)
    return nu_I * np.block([[c * eye, s * z], [s * z, c * eye]])


def nu_of_T(T: float) -> float:
    if T < 0:
        raise ValueError("temperature must be non-negative")
    if T == 0 or T < 1 / 1400:
        return 1.0
    return 1.0 / math.tanh(1.0 / (2.0 * T))


def T_of_nu(nu: float) -> float:
    """Temperature of a thermal mode with symplectic eigenvalue ``nu``."""
    if nu < 1:
        raise ValueError("nu must be >= 1")
    if nu == 1:
        return 0.0
    if math.isinf(nu):
        return math.inf
    return 1.0 / math.log((nu + 1) / (nu - 1))


def gauss_w1(nu_I: float, T: float) -> float:
    """Cost of cooling both modes from nu(T) to nu_I, in units of omega."""
    nu_T = nu_of_T(T)
    if not 1 - 1e-15 <= nu_I <= nu_T * (1 + 1e-15):
        raise ValueError(f"nu_I={nu_I} outside [1, nu(T)={nu_T}]")
    nu_I = min(max(nu_I, 1.0), nu_T)
    if T == 0:
        return 0.0
    return max(nu_I - nu_T - 2.0 * T * (entropic_f(nu_I) - entropic_f(nu_T)), 0.0)


def gauss_w2(nu_I: float, nu_tilde: float) -> float:
    """Squeezing cost (nu_I^2 / 2 nu~) (nu~/nu_I - 1)^2 = (nu_I - nu~)^2 / (2 nu~)."""
    if nu_tilde <= 0:
        raise ValueError("nu_tilde must be positive")
    return (nu_I - nu_tilde) ** 2 / (2.0 * nu_tilde)


def nu_tilde_from_w2(nu_I: float, W_II: float) -> float:
    """Smaller root of nu~^2 - 2 nu~ (nu_I + W_II) + nu_I^2 = 0."""
    if W_II < 0:
        raise ValueError("W_II must be non-negative")
    if W_II == 0:
        return nu_I
    # nu_I^2 / (larger root), avoiding the cancellation in (a - sqrt(a^2 - b))
    root = nu_I * nu_I / (nu_I + W_II + math.sqrt(W_II * (2.0 * nu_I + W_II)))
    return min(root, nu_I)


def _h(x: float) -> float:
    hp = (x + 1) ** 2 / (4 * x)
    hm = (x - 1) ** 2 / (4 * x)
    out = hp * math.log(hp)
    if hm > 0:
        out -= hm * math.log(hm)
    return out


def eof_gaussian(nu_tilde: float) -> float:
    """Entanglement of formation of a symmetric two-mode Gaussian state."""
    if nu_tilde <= 0:
        raise ValueError("nu_tilde must be positive")
    if nu_tilde >= 1:
        return 0.0
    return _h(nu_tilde)


class GaussStatus(str, enum.Enum):
    ENTANGLED = "entangled"
    NO_ENTANGLEMENT = "no_entanglement"


@dataclass(frozen=True)
class GaussProtocolPoint:
    nu_I: float
    nu_tilde: float
    r: float
    W_I: float
    W_II: float
    eof: float
    T_II: float
    status: GaussStatus


def _nu_min(W: float, T: float) -> float:
    """Lowest nu_I affordable with budget W (gauss_w1 decreases in nu_I)."""
    nu_T = nu_of_T(T)
    if nu_T == 1.0 or gauss_w1(1.0, T) <= W:
        return 1.0
    return bisect_root(lambda nu: gauss_w1(nu, T) - W, Bracket(1.0, nu_T, tol=1e-15))


def gauss_optimize(W: float, T: float, grid_n: int = 65) -> GaussProtocolPoint:
    """Optimal cooling depth for the Gaussian protocol at budget ``W``.

    Since the entanglement decreases monotonically in nu~, the search
    minimizes nu~ over nu_I, which is smooth even where no entanglement
    forms.
    """
    if W < 0:
        raise ValueError("W must be non-negative")
    nu_T = nu_of_T(T)

    def nu_tilde_at(nu_I):
        w2 = W - gauss_w1(nu_I, T)
        return nu_tilde_from_w2(nu_I, max(w2, 0.0))

    lo = _nu_min(W, T)
    if nu_T - lo <= 1e-15:
        nu_I = nu_T if lo >= nu_T else lo
    else:
        best = maximize_grid_refine(lambda x: -nu_tilde_at(x[0]), [Bracket(lo, nu_T)], grid_n=grid_n, tol=1e-13)
        nu_I = float(best.x[0])
    W_I = gauss_w1(nu_I, T)
    W_II = max(W - W_I, 0.0)
    nt = nu_tilde_from_w2(nu_I, W_II)
    r = 0.5 * math.log(nu_I / nt)
    nu_local = nu_I * math.cosh(2 * r)
    eof = eof_gaussian(nt)
    status = GaussStatus.ENTANGLED if nt < 1 else GaussStatus.NO_ENTANGLEMENT
    return GaussProtocolPoint(nu_I, nt, r, W_I, W_II, eof, T_of_nu(nu_local), status)
