import math

import numpy as np
import pytest

from corrtherm.fermions import FermionProtocolPoint, fermion_w2_asymmetric
from corrtherm.nongaussian import ng_concurrence, ng_w2
from corrtherm.oracle import (
    DensityMatrix,
    DiagonalHamiltonian,
    default_identity_hamiltonian,
    fermion_protocol_state,
    haar_unitary,
    mutual_information,
    ng_embedded_state,
    partial_trace,
    run_suite,
    verify_free_energy_decomposition,
    verify_ultimate_bound,
    von_neumann_entropy,
    wootters_concurrence,
)
from corrtherm.thermo import OscillatorPair, thermal_props

PHI_PLUS = np.array([1, 0, 0, 1]) / math.sqrt(2)


def pure(v, dims):
    return DensityMatrix(np.outer(v, np.conj(v)), dims)


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        DensityMatrix(np.eye(2))  # trace 2
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([1.5, -0.5]))
    with pytest.raises(ValueError):
        DensityMatrix(np.array([[0.5, 1.0], [0.0, 0.5]]))
    with pytest.raises(ValueError):
        DensityMatrix(np.eye(4) / 4, (2, 3))
    assert DensityMatrix(np.eye(2), normalized=False).trace == 2.0


def test_partial_trace_product():
    rng = np.random.default_rng(1)
    a = rng.random(2)
    a /= a.sum()
    b = rng.random(3)
    b /= b.sum()
    rho = DensityMatrix(np.kron(np.diag(a), np.diag(b)), (2, 3))
    assert np.allclose(partial_trace(rho, [0]).matrix, np.diag(a), atol=1e-15)
    assert np.allclose(partial_trace(rho, [1]).matrix, np.diag(b), atol=1e-15)
    with pytest.raises(ValueError):
        partial_trace(rho, [2])


def test_bell_marginals():
    rho = pure(PHI_PLUS, (2, 2))
    for k in (0, 1):
        assert np.allclose(rho.ptrace([k]).matrix, np.eye(2) / 2, atol=1e-15)
    assert von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-14)
    assert mutual_information(rho, [0], [1]) == pytest.approx(2 * math.log(2), abs=1e-14)


@pytest.mark.parametrize("seed", range(5))
def test_schmidt_symmetry_of_pure_states(seed):
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    v /= np.linalg.norm(v)
    rho = pure(v, (2, 3))
    assert von_neumann_entropy(rho.ptrace([0])) == pytest.approx(von_neumann_entropy(rho.ptrace([1])), abs=1e-12)
    mixed = DensityMatrix(0.5 * rho.matrix + 0.5 * np.eye(6) / 6, (2, 3))
    assert abs(von_neumann_entropy(mixed.ptrace([0])) - von_neumann_entropy(mixed.ptrace([1]))) > 1e-6


def test_truncated_boson_thermal_state():
    h = DiagonalHamiltonian((np.arange(41.0), np.arange(41.0)))
    rho = DensityMatrix(np.diag(h.thermal_state(1.0)), h.dims)
    assert von_neumann_entropy(rho) == pytest.approx(thermal_props(OscillatorPair(), 1.0).S, abs=1e-10)
    assert mutual_information(rho, [0], [1]) == pytest.approx(0.0, abs=1e-12)


def test_wootters_examples():
    assert wootters_concurrence(pure(PHI_PLUS, (2, 2))) == pytest.approx(1.0, abs=1e-12)
    assert wootters_concurrence(np.eye(4) / 4) == 0.0
    p = 2 / 3
    werner = p * np.outer(PHI_PLUS, PHI_PLUS) + (1 - p) / 4 * np.eye(4)
    assert wootters_concurrence(werner) == pytest.approx((3 * p - 1) / 2, abs=1e-12)
    with pytest.raises(ValueError):
        wootters_concurrence(np.eye(2) / 2)


def test_haar_is_unitary_and_seeded():
    u = haar_unitary(8, np.random.default_rng(3))
    assert np.allclose(u @ u.conj().T, np.eye(8), atol=1e-13)
    assert np.array_equal(u, haar_unitary(8, np.random.default_rng(3)))


def test_identity_unitary_changes_nothing():
    h = default_identity_hamiltonian()
    r = verify_free_energy_decomposition(h, 1.0, np.eye(16))
    assert r.W == pytest.approx(0.0, abs=1e-15)
    assert r.mutual_info_S1S2 == pytest.approx(0.0, abs=1e-14)
    assert r.max_residual < 1e-12


def test_swap_with_matching_bath_is_free():
    # S1 swapped with a qubit bath of the same gap: relabeling only
    h = DiagonalHamiltonian(([0.0, 1.0], [0.0, 1.0], [0.0, 1.0]))
    swap = np.zeros((8, 8))
    for a in range(2):
        for b in range(2):
            for c in range(2):
                swap[c * 4 + b * 2 + a, a * 4 + b * 2 + c] = 1
    r = verify_free_energy_decomposition(h, 1.0, swap)
    assert r.W == pytest.approx(0.0, abs=1e-15)
    assert r.mutual_info_S1S2 == pytest.approx(0.0, abs=1e-14)
    assert r.max_residual < 1e-12


@pytest.mark.parametrize("beta", [0.3, 1.0, 3.0])
def test_identities_on_random_unitaries(beta):
    h = default_identity_hamiltonian()
    rng = np.random.default_rng(11)
    for _ in range(10):
        r = verify_free_energy_decomposition(h, beta, haar_unitary(16, rng))
        assert r.max_residual < 1e-10


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        verify_free_energy_decomposition(default_identity_hamiltonian(), 1.0, np.eye(8))


def test_parity_rotation_sweep_respects_bound():
    h = DiagonalHamiltonian(([0.0, 1.0], [0.0, 1.0]))
    us = []
    for th in np.linspace(0.0, math.pi / 2, 25):
        u = np.eye(4, dtype=complex)
        c, s = math.cos(th), math.sin(th)
        u[np.ix_([0, 3], [0, 3])] = [[c, -s], [s, c]]
        us.append(u)
    rep = verify_ultimate_bound(h, 1.0, us)
    assert rep.violations == 0
    assert rep.max_ratio <= 1.0


def test_embedded_state_examples():
    block, w = ng_embedded_state(0.0, 1, 1.0)
    assert wootters_concurrence(block) == 0.0
    assert w == pytest.approx(0.0, abs=1e-15)
    block, w = ng_embedded_state(math.pi / 4, 1, math.inf)
    assert wootters_concurrence(block) == pytest.approx(1.0, abs=1e-12)
    assert w == pytest.approx(1.0, abs=1e-12)
    block, w = ng_embedded_state(math.pi / 4, 1, 1.0, n_max=20)
    assert wootters_concurrence(block) == pytest.approx(0.0515077293719473009, abs=1e-12)
    with pytest.raises(ValueError):
        ng_embedded_state(0.1, 3, 1.0, n_max=2)


@pytest.mark.parametrize("n", [1, 2, 5])
@pytest.mark.parametrize("beta", [0.5, 1.0, math.inf])
def test_embedded_state_matches_closed_forms(n, beta):
    for a in np.linspace(0.0, math.pi / 4, 9):
        block, w = ng_embedded_state(a, n, beta)
        assert wootters_concurrence(block) == pytest.approx(ng_concurrence(a, n, beta), abs=1e-10)
        assert w == pytest.approx(ng_w2(a, n, beta), abs=1e-10)


def test_fermion_state_examples():
    rho, dE = fermion_protocol_state(FermionProtocolPoint(0.3, 0.6, 0.0, 0.0))
    assert np.allclose(rho.matrix, np.diag([0.28, 0.42, 0.12, 0.18]), atol=1e-15)
    rho, dE = fermion_protocol_state(FermionProtocolPoint(0.0, 0.0, math.pi / 4, 0.0))
    assert np.allclose(rho.matrix, np.outer(PHI_PLUS, PHI_PLUS), atol=1e-15)
    assert dE == pytest.approx(1.0, abs=1e-15)
    rho, dE = fermion_protocol_state(FermionProtocolPoint(0.0, 0.5, math.pi / 4, math.pi / 4))
    assert dE == pytest.approx(0.5, abs=1e-15)
    assert dE == pytest.approx(fermion_w2_asymmetric(0.0, 0.5, math.pi / 4), abs=1e-15)


def test_fermion_state_keeps_parity_blocks_apart():
    rho, _ = fermion_protocol_state(FermionProtocolPoint(0.2, 0.4, 0.5, 0.3))
    even, odd = [0, 3], [1, 2]
    assert np.allclose(rho.matrix[np.ix_(even, odd)], 0.0, atol=1e-15)


def test_suites_deterministic_and_green():
    a = run_suite("identities", seed=5, samples=10)
    b = run_suite("identities", seed=5, samples=10)
    assert a == b
    assert all(c["pass"] for c in a["checks"])
    with pytest.raises(KeyError):
        run_suite("nope")
