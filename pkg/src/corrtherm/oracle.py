"""Brute-force density-matrix checks of the analytic results.

Everything here works with explicit matrices on small tensor-product
spaces. It is slow by design and independent of the closed forms it checks.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .fermions import FermionProtocolPoint, fermion_eof_symmetric, fermion_w2_asymmetric, w_max
from .nongaussian import fock_probability, ng_concurrence, ng_w2
from .thermo import as_beta, temperature

__all__ = [
    "DensityMatrix",
    "DiagonalHamiltonian",
    "partial_trace",
    "von_neumann_entropy",
    "mutual_information",
    "relative_entropy",
    "wootters_concurrence",
    "haar_unitary",
    "FreeEnergyReport",
    "verify_free_energy_decomposition",
    "BoundReport",
    "verify_ultimate_bound",
    "ng_embedded_state",
    "fermion_protocol_state",
    "default_identity_hamiltonian",
    "run_suite",
    "SUITES",
]

BATH_LEVELS = (0.0, 0.7, 1.3, 2.1)
IDENTITY_TOL = 1e-10
BOUND_TOL = 1e-9
ORACLE_TOL = 1e-10


class DensityMatrix:
    """Hermitian positive matrix on a tensor product with declared factor dims.

    ``normalized=False`` skips the unit-trace check, which the projected
    subspace states need.
    """

    def __init__(self, matrix, dims: Sequence[int] | None = None, normalized: bool = True, check: bool = True):
        m = np.array(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got {m.shape}")
        dims = tuple(int(d) for d in (dims if dims is not None else (m.shape[0],)))
        if int(np.prod(dims)) != m.shape[0]:
            raise ValueError(f"factor dims {dims} do not match size {m.shape[0]}")
        if check:
            if not np.allclose(m, m.conj().T, atol=1e-12, rtol=0):
                raise ValueError("density matrix is not Hermitian")
            if np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min() < -1e-10:
                raise ValueError("density matrix has negative eigenvalues")
            if normalized and abs(np.trace(m).real - 1) > 1e-12:
                raise ValueError(f"trace {np.trace(m).real} differs from 1")
        self.matrix = 0.5 * (m + m.conj().T)
        self.dims = dims
        self.normalized = normalized

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def ptrace(self, keep: Sequence[int]) -> "DensityMatrix":
        return partial_trace(self, keep)

    def entropy(self) -> float:
        return von_neumann_entropy(self)

    def normalize(self) -> "DensityMatrix":
        return DensityMatrix(self.matrix / self.trace, self.dims)


def _as_dm(rho, dims=None) -> DensityMatrix:
    if isinstance(rho, DensityMatrix):
        return rho
    return DensityMatrix(rho, dims, normalized=False)


def partial_trace(rho, keep: Sequence[int], dims: Sequence[int] | None = None) -> DensityMatrix:
    """Reduced state on the factors listed in ``keep``, in their original order."""
    rho = _as_dm(rho, dims)
    dims = rho.dims
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= n for k in keep):
        raise ValueError(f"factor indices {keep} out of range for {n} factors")
    t = rho.matrix.reshape(dims + dims)
    letters = "abcdefghijklmnopqrstuvwxyz"
    row = list(letters[:n])
    col = list(letters[n : 2 * n])
    for i in range(n):
        if i not in keep:
            col[i] = row[i]
    out = "".join(row[i] for i in keep) + "".join(col[i] for i in keep)
    reduced = np.einsum("".join(row) + "".join(col) + "->" + out, t)
    d = int(np.prod([dims[i] for i in keep])) if keep else 1
    return DensityMatrix(reduced.reshape(d, d), [dims[i] for i in keep] or [1], normalized=False, check=False)


def _eigvals(rho) -> np.ndarray:
    m = np.asarray(rho.matrix if isinstance(rho, DensityMatrix) else rho, dtype=complex)
    if not np.allclose(m, m.conj().T, atol=1e-12, rtol=0):
        raise ValueError("matrix is not Hermitian")
    return np.linalg.eigvalsh(0.5 * (m + m.conj().T))


def von_neumann_entropy(rho) -> float:
    """-sum lambda ln lambda in nats, with 0 ln 0 = 0."""
    lam = _eigvals(rho)
    lam = lam[lam > 0]
    return float(-np.sum(lam * np.log(lam)))


def mutual_information(rho, part_a: Sequence[int], part_b: Sequence[int] | None = None) -> float:
    """S(rho_a) + S(rho_b) - S(rho_ab) for disjoint groups of factors."""
    rho = _as_dm(rho)
    a = sorted(part_a)
    b = sorted(part_b) if part_b is not None else [i for i in range(len(rho.dims)) if i not in a]
    if set(a) & set(b):
        raise ValueError("bipartition groups overlap")
    ab = sorted(a + b)
    joint = rho if len(ab) == len(rho.dims) else partial_trace(rho, ab)
    return von_neumann_entropy(partial_trace(rho, a)) + von_neumann_entropy(partial_trace(rho, b)) - von_neumann_entropy(joint)


def relative_entropy(rho, sigma_diag) -> float:
    """S(rho || sigma) for a full-rank sigma that is diagonal in the product basis."""
    p = np.asarray(sigma_diag, dtype=float)
    if np.any(p <= 0):
        raise ValueError("reference state must be full rank")
    m = np.asarray(rho.matrix if isinstance(rho, DensityMatrix) else rho)
    return float(-von_neumann_entropy(rho) - np.dot(np.diag(m).real, np.log(p)))


_YY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


def wootters_concurrence(rho, rtol: float = 1e-12) -> float:
    """Two-qubit concurrence max(0, l1 - l2 - l3 - l4), no renormalization.

    The l_i are the singular values of sqrt(rho) (Y x Y) conj(sqrt(rho)),
    the same as the square roots of the eigenvalues of rho rho~. Eigenvalues
    of rho below ``rtol`` times the largest are treated as zero so that
    rank-deficient inputs do not pick up square-root noise.
    """
    m = np.asarray(rho.matrix if isinstance(rho, DensityMatrix) else rho, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"concurrence needs a 4x4 matrix, got {m.shape}")
    lam, vec = np.linalg.eigh(0.5 * (m + m.conj().T))
    top = max(lam.max(), 0.0)
    lam = np.where(lam > rtol * top, lam, 0.0)
    root = (vec * np.sqrt(lam)) @ vec.conj().T
    sv = np.linalg.svd(root @ _YY @ root.conj(), compute_uv=False)
    return float(max(0.0, sv[0] - sv[1:].sum()))


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random d x d unitary from the QR decomposition of a Ginibre matrix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


@dataclass(frozen=True)
class DiagonalHamiltonian:
    """Non-interacting Hamiltonian, one diagonal per tensor factor."""

    factors: tuple

    def __post_init__(self):
        fs = tuple(np.asarray(f, dtype=float) for f in self.factors)
        if not fs:
            raise ValueError("need at least one factor")
        for f in fs:
            if f.ndim != 1 or f.size < 1 or not np.all(np.isfinite(f)):
                raise ValueError("factor energies must be finite 1-d arrays")
        object.__setattr__(self, "factors", fs)

    @property
    def dims(self) -> tuple:
        return tuple(f.size for f in self.factors)

    def total_diagonal(self) -> np.ndarray:
        out = np.zeros(1)
        for f in self.factors:
            out = np.add.outer(out, f).ravel()
        return out

    def thermal_probs(self, beta: float) -> list[np.ndarray]:
        out = []
        for f in self.factors:
            w = np.exp(-beta * (f - f.min()))
            out.append(w / w.sum())
        return out

    def thermal_state(self, beta: float) -> np.ndarray:
        p = np.ones(1)
        for q in self.thermal_probs(beta):
            p = np.outer(p, q).ravel()
        return p


def default_identity_hamiltonian() -> DiagonalHamiltonian:
    """Two qubits with gap 1 and a four-level bath with unrelated gaps."""
    return DiagonalHamiltonian(([0.0, 1.0], [0.0, 1.0], BATH_LEVELS))


@dataclass
class FreeEnergyReport:
    beta: float
    W: float
    mutual_info_S1S2: float
    mutual_info_SB: float
    residuals: dict = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values()) if self.residuals else 0.0


def _factor_terms(rho: DensityMatrix, h: DiagonalHamiltonian, probs, group, T):
    """(Delta F, relative entropy to thermal) of the reduced state on ``group``."""
    red = partial_trace(rho, group)
    diag_h = np.zeros(1)
    p = np.ones(1)
    for i in group:
        diag_h = np.add.outer(diag_h, h.factors[i]).ravel()
        p = np.outer(p, probs[i]).ravel()
    e_final = float(np.dot(np.diag(red.matrix).real, diag_h))
    e_init = float(np.dot(p, diag_h))
    s_init = float(-np.dot(p, np.log(p)))
    dF = (e_final - e_init) - T * (von_neumann_entropy(red) - s_init)
    return dF, relative_entropy(red, p)


def verify_free_energy_decomposition(h: DiagonalHamiltonian, beta: float, unitary) -> FreeEnergyReport:
    """Apply ``unitary`` to the product thermal state and check the free-energy identities.

    Factors 0 and 1 form the system, any remaining factors form the bath.
    Residuals are absolute and in the units of each identity.
    """
    beta = as_beta(beta)
    if math.isinf(beta):
        raise ValueError("identity checks need a finite temperature")
    T = temperature(beta)
    dims = h.dims
    if len(dims) < 2:
        raise ValueError("need at least two system factors")
    u = np.asarray(unitary, dtype=complex)
    d = int(np.prod(dims))
    if u.shape != (d, d):
        raise ValueError(f"unitary shape {u.shape} does not match dims {dims}")
    p = h.thermal_state(beta)
    rho = DensityMatrix((u * p) @ u.conj().T, dims, check=False)
    probs = h.thermal_probs(beta)
    W = float(np.dot(np.diag(rho.matrix).real - p, h.total_diagonal()))

    sys_, bath = [0, 1], list(range(2, len(dims)))
    dF1, D1 = _factor_terms(rho, h, probs, [0], T)
    dF2, D2 = _factor_terms(rho, h, probs, [1], T)
    dFS, DS = _factor_terms(rho, h, probs, sys_, T)
    if bath:
        dFB, DB = _factor_terms(rho, h, probs, bath, T)
        i_sb = mutual_information(rho, sys_, bath)
    else:
        dFB = DB = i_sb = 0.0
    i_12 = mutual_information(rho, [0], [1])

    spec_in = np.sort(p)
    spec_out = np.sort(_eigvals(rho))
    res = {
        "system_bath_split": abs(W - (dFS + dFB + T * i_sb)),
        "subsystem_split": abs(dFS - (dF1 + dF2 + T * i_12)),
        "relative_entropy_form": abs(beta * W - (D1 + D2 + DB + i_12 + i_sb)),
        "free_energy_as_relative_entropy": max(
            abs(T * D - dF) for D, dF in ((D1, dF1), (D2, dF2), (DS, dFS), (DB, dFB))
        ),
        "spectrum_preserved": float(np.max(np.abs(spec_in - spec_out))),
    }
    return FreeEnergyReport(beta, W, i_12, i_sb, res)


@dataclass
class BoundReport:
    beta: float
    samples: int
    violations: int
    min_slack: float
    max_ratio: float
    worst_index: int


def verify_ultimate_bound(h: DiagonalHamiltonian, beta: float, unitaries) -> BoundReport:
    """Check I(S1:S2) <= beta W for each unitary; slack = beta W - I."""
    beta = as_beta(beta)
    violations, min_slack, max_ratio, worst = 0, math.inf, 0.0, -1
    count = 0
    for k, u in enumerate(unitaries):
        r = verify_free_energy_decomposition(h, beta, u)
        slack = beta * r.W - r.mutual_info_S1S2
        if slack < -BOUND_TOL:
            violations += 1
        if slack < min_slack:
            min_slack, worst = slack, k
        if r.W > 0:
            max_ratio = max(max_ratio, r.mutual_info_S1S2 / (beta * r.W))
        count += 1
    return BoundReport(beta, count, violations, min_slack, max_ratio, worst)


def ng_embedded_state(alpha: float, n: int, beta_I, n_max: int | None = None):
    """Rotated two-mode thermal state projected on span{|00>, |0n>, |n0>, |nn>}.

    Returns the unnormalized 4x4 block and the energy the rotation added,
    measured as Tr(H (rho' - rho)) on the truncated space.
    """
    beta_I = as_beta(beta_I)
    n = int(n)
    n_max = 2 * n if n_max is None else int(n_max)
    if n < 1:
        raise ValueError("n must be >= 1")
    if n_max < n:
        raise ValueError(f"truncation n_max={n_max} below target level n={n}")
    d = n_max + 1
    p = np.array([fock_probability(k, beta_I) for k in range(d)])
    rho = np.diag(np.outer(p, p).ravel()).astype(complex)
    i00, inn = 0, n * d + n
    u = np.eye(d * d, dtype=complex)
    c, s = math.cos(alpha), math.sin(alpha)
    # |00> -> c|00> + s|nn>,  |nn> -> c|nn> - s|00>
    u[i00, i00], u[inn, i00] = c, s
    u[inn, inn], u[i00, inn] = c, -s
    out = u @ rho @ u.conj().T
    levels = np.arange(d, dtype=float)
    h = np.add.outer(levels, levels).ravel()
    w = float(np.dot(np.diag(out).real - np.diag(rho).real, h))
    idx = [i00, n, n * d, inn]
    block = out[np.ix_(idx, idx)]
    return DensityMatrix(block, (2, 2), normalized=False), w


def fermion_protocol_state(point: FermionProtocolPoint) -> tuple[DensityMatrix, float]:
    """Product state with occupations (N1, N2) after the two parity-block rotations.

    Basis order |00>, |01>, |10>, |11> with the first digit for mode 1.
    Returns the state and its energy change.
    """
    N1, N2 = point.N1, point.N2
    p = np.array([(1 - N1) * (1 - N2), (1 - N1) * N2, N1 * (1 - N2), N1 * N2])
    rho = np.diag(p).astype(complex)
    u = np.zeros((4, 4), dtype=complex)
    ce, se = math.cos(point.theta_even), math.sin(point.theta_even)
    co, so = math.cos(point.theta_odd), math.sin(point.theta_odd)
    u[np.ix_([0, 3], [0, 3])] = [[ce, -se], [se, ce]]
    u[np.ix_([1, 2], [1, 2])] = [[co, -so], [so, co]]
    out = u @ rho @ u.conj().T
    h = np.array([0.0, 1.0, 1.0, 2.0])
    dE = float(np.dot(np.diag(out).real - p, h))
    return DensityMatrix(out, (2, 2)), dE


# ---------------------------------------------------------------- suites


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("CORRTHERM_THREADS", "1")))
    except ValueError:
        return 1


def _identity_sample(args):
    seed_seq, beta = args
    rng = np.random.default_rng(seed_seq)
    h = default_identity_hamiltonian()
    u = haar_unitary(int(np.prod(h.dims)), rng)
    return verify_free_energy_decomposition(h, beta, u)


def _map(fn, items):
    workers = _threads()
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def _check(name, residual, tol, instance=None):
    ok = bool(residual <= tol)
    out = {"name": name, "max_residual": float(residual), "tolerance": tol, "pass": ok}
    if not ok and instance is not None:
        out["instance"] = instance
    return out


def _suite_identities(seed: int, samples: int, betas=(0.3, 1.0, 3.0)) -> list[dict]:
    children = np.random.SeedSequence(seed).spawn(samples)
    items = [(ss, b) for b in betas for ss in children]
    reports = _map(_identity_sample, items)
    checks = []
    names = reports[0].residuals.keys() if reports else []
    for name in names:
        k = int(np.argmax([r.residuals[name] for r in reports]))
        worst = reports[k]
        inst = {"beta": worst.beta, "sample": k % samples, "seed": seed}
        checks.append(_check(name, worst.residuals[name], IDENTITY_TOL, inst))
    return checks


def _suite_bound(seed: int, samples: int, beta: float = 1.0) -> list[dict]:
    children = np.random.SeedSequence(seed).spawn(samples)
    reports = _map(_identity_sample, [(ss, beta) for ss in children])
    slack = [beta * r.W - r.mutual_info_S1S2 for r in reports]
    k = int(np.argmin(slack)) if slack else 0
    violation = max(0.0, -min(slack)) if slack else 0.0
    chk = _check("ultimate_bound", violation, BOUND_TOL, {"beta": beta, "sample": k, "seed": seed})
    chk["min_slack"] = float(min(slack)) if slack else 0.0
    ratios = [r.mutual_info_S1S2 / (beta * r.W) for r in reports if r.W > 0]
    chk["max_ratio"] = float(max(ratios)) if ratios else 0.0
    return [chk]


def _suite_fermion(seed: int, samples: int) -> list[dict]:
    del seed, samples  # deterministic grids
    worst_sym, worst_sym_at = 0.0, None
    worst_w, worst_w_at = 0.0, None
    for N in np.linspace(0.0, 0.5, 100, endpoint=False):
        beta_I = math.inf if N == 0 else math.log((1 - N) / N)
        for th in np.linspace(0.0, math.pi / 4, 100):
            pt = FermionProtocolPoint(N, N, th, 0.0)
            w2 = fermion_w2_asymmetric(N, N, th)
            direct = math.log(2) * (1 - 2 * N) * math.sin(2 * th)
            err = abs(fermion_eof_symmetric(w2, beta_I) - direct)
            if err > worst_sym:
                worst_sym, worst_sym_at = err, {"N": N, "theta": th}
    for N1 in np.linspace(0, 1, 11):
        for N2 in np.linspace(0, 1, 11):
            for te in np.linspace(0, math.pi / 4, 7):
                for to in (0.0, math.pi / 8, math.pi / 4):
                    pt = FermionProtocolPoint(N1, N2, te, to)
                    _, dE = fermion_protocol_state(pt)
                    err = abs(dE - fermion_w2_asymmetric(N1, N2, te))
                    if err > worst_w:
                        worst_w, worst_w_at = err, {"N1": N1, "N2": N2, "theta_even": te, "theta_odd": to}
    wm = abs(w_max(1.0) - (2 * math.log(math.e + 1) - 1))
    return [
        _check("symmetric_eof_consistency", worst_sym, 1e-12, worst_sym_at),
        _check("block_rotation_energy", worst_w, 1e-12, worst_w_at),
        _check("w_max_closed_form", wm, 1e-12, {"beta": 1.0}),
    ]


def _suite_nongauss(seed: int, samples: int) -> list[dict]:
    del seed, samples
    worst_c, at_c = 0.0, None
    worst_e, at_e = 0.0, None
    for n in (1, 2, 5):
        for beta_I in (0.5, 1.0, math.inf):
            for a in np.linspace(0.0, math.pi / 4, 21):
                block, w = ng_embedded_state(a, n, beta_I)
                ec = abs(wootters_concurrence(block) - ng_concurrence(a, n, beta_I))
                ee = abs(w - ng_w2(a, n, beta_I))
                inst = {"n": n, "beta_I": "inf" if math.isinf(beta_I) else beta_I, "alpha": float(a)}
                if ec > worst_c:
                    worst_c, at_c = ec, inst
                if ee > worst_e:
                    worst_e, at_e = ee, inst
    return [
        _check("embedded_concurrence", worst_c, ORACLE_TOL, at_c),
        _check("embedded_energy", worst_e, ORACLE_TOL, at_e),
    ]


SUITES = {
    "identities": _suite_identities,
    "bound": _suite_bound,
    "fermion": _suite_fermion,
    "nongauss": _suite_nongauss,
}


def run_suite(suite: str, seed: int = 0, samples: int = 100) -> dict:
    """Run one suite (or ``all``) and return a JSON-ready report."""
    if suite != "all" and suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    names = list(SUITES) if suite == "all" else [suite]
    checks = []
    for name in names:
        for c in SUITES[name](seed, samples):
            c["name"] = f"{name}.{c['name']}"
            checks.append(c)
    return {"suite": suite, "seed": seed, "samples": samples, "checks": checks}
