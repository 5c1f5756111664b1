"""Non-Gaussian subspace rotation between two bosonic modes.

Both modes start thermal at ``beta_I``. A rotation by ``alpha`` mixes |00>
with |nn> and leaves the rest alone. Restricted to span{|00>, |0n>, |n0>, |nn>}
the state is an (unnormalized) two-qubit X state whose concurrence has a
closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Union

from .gaussian import eof_gaussian, nu_of_T, nu_tilde_from_w2
from .thermo import BetaLike, as_beta, temperature

__all__ = [
    "NGProtocolPoint",
    "fock_probability",
    "ng_w2",
    "ng_concurrence",
    "ng_concurrence_from_w2",
    "ng_entanglement_condition",
    "ng_cmax",
    "ng_w2_useful",
    "ng_best",
    "ng_best_auto",
    "concurrence_to_eof",
    "ng_vs_gauss_curve",
]

QUARTER_PI = math.pi / 4


@dataclass(frozen=True)
class NGProtocolPoint:
    n: int
    alpha: float
    beta_I: float
    p0: float
    pn: float
    W_II: float
    C: float
    eof: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0 <= self.C <= 1:
            raise ValueError(f"concurrence {self.C} outside [0, 1]")


def fock_probability(k: int, beta_I: BetaLike) -> float:
    """Single-mode thermal occupation probability (1 - e^-beta) e^(-k beta)."""
    beta_I = as_beta(beta_I)
    if math.isinf(beta_I):
        return 1.0 if k == 0 else 0.0
    return -math.expm1(-beta_I) * math.exp(-k * beta_I)


def _check(alpha: float, n: int):
    if n < 1 or int(n) != n:
        raise ValueError(f"n must be a positive integer, got {n}")
    if not -1e-15 <= alpha <= QUARTER_PI + 1e-15:
        raise ValueError(f"alpha={alpha} outside [0, pi/4]")


def _gap(n: int, beta_I: float) -> tuple[float, float, float]:
    p0 = fock_probability(0, beta_I)
    pn = fock_probability(n, beta_I)
    return p0, pn, p0 * p0 - pn * pn


def ng_w2(alpha: float, n: int, beta_I: BetaLike) -> float:
    """Energy 2 n (p0^2 - pn^2) sin^2(alpha) of the rotation."""
    _check(alpha, n)
    _, _, d = _gap(n, as_beta(beta_I))
    return 2 * n * d * math.sin(alpha) ** 2


def ng_concurrence(alpha: float, n: int, beta_I: BetaLike, raw: bool = False) -> float:
    """(p0^2 - pn^2) sin(2 alpha) - 2 p0 pn, clamped at 0 unless ``raw``."""
    _check(alpha, n)
    p0, pn, d = _gap(n, as_beta(beta_I))
    c = d * math.sin(2 * alpha) - 2 * p0 * pn
    return c if raw else max(c, 0.0)


def ng_concurrence_from_w2(W_II: float, n: int, beta_I: BetaLike, raw: bool = False) -> float:
    """Same concurrence written through the spent energy instead of alpha."""
    p0, pn, d = _gap(n, as_beta(beta_I))
    u = W_II / n
    if u < 0 or u > d * (1 + 1e-12):
        raise ValueError(f"W_II={W_II} outside [0, n (p0^2 - pn^2)]")
    c = math.sqrt(u) * math.sqrt(max(2 * d - u, 0.0)) - 2 * p0 * pn
    return c if raw else max(c, 0.0)


def ng_entanglement_condition(W_II: float, n: int, beta_I: BetaLike) -> bool:
    """True iff W_II (p0^2 - pn^2 - W_II/(2n)) > 2 n p0^2 pn^2."""
    if W_II < 0:
        raise ValueError("W_II must be non-negative")
    p0, pn, d = _gap(n, as_beta(beta_I))
    return W_II * (d - W_II / (2 * n)) > 2 * n * (p0 * pn) ** 2


def ng_cmax(n: int, beta_I: BetaLike) -> float:
    """Concurrence ceiling (p0 - pn)^2 for level ``n``.

    The concurrence actually reached at alpha = pi/4 is
    p0^2 - pn^2 - 2 p0 pn, which is lower by 2 pn^2; the two agree only
    when pn = 0.
    """
    p0, pn, _ = _gap(n, as_beta(beta_I))
    return (p0 - pn) ** 2


def ng_w2_useful(n: int, beta_I: BetaLike) -> float:
    """Energy n (p0^2 - pn^2) beyond which more rotation does not help."""
    return n * _gap(n, as_beta(beta_I))[2]


def concurrence_to_eof(C: float) -> float:
    """Two-qubit entanglement of formation in nats from the concurrence."""
    if not -1e-15 <= C <= 1 + 1e-15:
        raise ValueError(f"concurrence {C} outside [0, 1]")
    C = min(max(C, 0.0), 1.0)
    # 1 - x = (1 - sqrt(1 - C^2)) / 2 = C^2 / (2 (1 + sqrt(1 - C^2)))
    root = math.sqrt((1 - C) * (1 + C))
    y = C * C / (2 * (1 + root))
    if y == 0:
        return 0.0
    return -(1 - y) * math.log1p(-y) - y * math.log(y)


def ng_best(W_II: float, n: int, beta_I: BetaLike) -> NGProtocolPoint:
    """Largest concurrence at budget ``W_II``; alpha follows from the budget."""
    if W_II < 0:
        raise ValueError("W_II must be non-negative")
    beta_I = as_beta(beta_I)
    p0, pn, d = _gap(n, beta_I)
    s2 = 0.5 if d == 0 else min(W_II / (2 * n * d), 0.5)
    alpha = math.asin(math.sqrt(s2))
    C = ng_concurrence(alpha, n, beta_I)
    return NGProtocolPoint(n, alpha, beta_I, p0, pn, ng_w2(alpha, n, beta_I), C, concurrence_to_eof(C))


def ng_best_auto(W_II: float, beta_I: BetaLike, n_cap: int = 200) -> NGProtocolPoint:
    """Best level n <= n_cap at budget W_II; ties go to the smaller n."""
    beta_I = as_beta(beta_I)
    best = ng_best(W_II, 1, beta_I)
    for n in range(2, n_cap + 1):
        p = ng_best(W_II, n, beta_I)
        if p.C > best.C:
            best = p
    return best


def ng_vs_gauss_curve(
    beta_I: BetaLike,
    n: Union[int, str],
    W_grid: Iterable[float],
    n_cap: int = 200,
) -> list[tuple[float, float, float]]:
    """(W_II, eof_nongauss, eof_gauss) along ``W_grid``.

    Both protocols start from thermal modes at ``beta_I`` and spend only
    the correlating energy. ``n="auto"`` picks the best level up to ``n_cap``.
    """
    beta_I = as_beta(beta_I)
    if n != "auto" and (isinstance(n, str) or int(n) != n or n < 1):
        raise ValueError(f"n must be a positive integer or 'auto', got {n!r}")
    nu_I = nu_of_T(temperature(beta_I))
    out = []
    for w in W_grid:
        w = float(w)
        if w < 0:
            raise ValueError("W_II grid must be non-negative")
        ng = ng_best_auto(w, beta_I, n_cap) if n == "auto" else ng_best(w, int(n), beta_I)
        g = eof_gaussian(nu_tilde_from_w2(nu_I, w))
        out.append((w, ng.eof, g))
    return out
