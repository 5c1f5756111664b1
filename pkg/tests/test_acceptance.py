"""Acceptance gate. Each criterion prints one PASS/FAIL line."""

import math
import time

import numpy as np
import pytest

from corrtherm.fermions import (
    fermion_eof_asymmetric,
    fermion_eof_symmetric,
    fermion_optimize,
    fermion_optimize_even,
    fermion_w2_asymmetric,
    FermionProtocolPoint,
    w_max,
)
from corrtherm.gaussian import GaussStatus, gauss_optimize, gauss_w1, gauss_w2, nu_of_T, nu_tilde_from_w2
from corrtherm.mi_bounds import Regime, boson_mi_asymptotic, mi_optimal
from corrtherm.nongaussian import ng_concurrence, ng_entanglement_condition, ng_vs_gauss_curve, ng_w2
from corrtherm.oracle import ng_embedded_state, run_suite, wootters_concurrence
from corrtherm.thermo import thermal_props, two_boson_modes, two_fermion_modes

LN2 = math.log(2.0)
TEMPS = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]
POINTS = 200


def beta_of(T):
    return math.inf if T == 0 else 1.0 / T


def worst(report):
    return max(c["max_residual"] for c in report["checks"])


# ------------------------------------------------------------ criterion 1


def test_criterion_1_free_energy_identities(verdict):
    t0 = time.perf_counter()
    report = run_suite("identities", seed=2024, samples=100)
    dt = time.perf_counter() - t0
    res = worst(report)
    ok = res < 1e-10 and dt < 10.0
    verdict(1, ok, f"max residual {res:.2e} over 100 unitaries x 3 betas in {dt:.2f}s")
    assert ok


# ------------------------------------------------------------ criterion 2


def test_criterion_2_ultimate_bound(verdict):
    t0 = time.perf_counter()
    report = run_suite("bound", seed=7, samples=1000)
    dt = time.perf_counter() - t0
    chk = report["checks"][0]
    ok = chk["pass"] and chk["min_slack"] >= -1e-9 and dt < 30.0
    verdict(2, ok, f"min slack {chk['min_slack']:.3e}, max I/(beta W) {chk['max_ratio']:.3f} in {dt:.2f}s")
    assert ok


# ------------------------------------------------------------ criterion 3


@pytest.mark.parametrize("system", ["bosons", "fermions"])
@pytest.mark.parametrize("T", [0.5, 1.0, 2.0])
def test_criterion_3_branch_continuity(system, T, verdict):
    sys_ = two_boson_modes(None) if system == "bosons" else two_fermion_modes()
    beta = 1.0 / T
    w_star = T * thermal_props(sys_, beta).S
    below = mi_optimal(sys_, w_star * (1 - 1e-13), beta)
    above = mi_optimal(sys_, w_star * (1 + 1e-13), beta)
    gap = abs(above.mutual_info - below.mutual_info)
    ok = below.regime is Regime.LINEAR and above.regime is Regime.ENTROPY_SATURATED and gap < 1e-9
    verdict(3, ok, f"{system} T={T} kink jump {gap:.1e}")
    assert ok


def test_criterion_3_ground_state_optimum(verdict):
    p = mi_optimal(two_boson_modes(None), 2.0, math.inf)
    # two modes at mean occupation 1 each: 2 * (2 ln 2)
    err = abs(p.mutual_info - 4 * LN2)
    ok = err < 1e-9
    verdict(3, ok, f"bosons T=0 W=2 optimum error {err:.1e}")
    assert ok


# ------------------------------------------------------------ criterion 4


def test_criterion_4_boson_asymptote(verdict):
    scaled, rel = [], {}
    for w in (1e3, 1e4, 1e5):
        exact = mi_optimal(two_boson_modes(None), w, math.inf).mutual_info
        scaled.append(abs(exact - boson_mi_asymptotic(w)) * w)
        rel[w] = abs(exact - boson_mi_asymptotic(w)) / exact
    ok = max(scaled) < 3.0 and rel[1e4] < 1e-3
    verdict(4, ok, f"remainder x W = {', '.join(f'{s:.4f}' for s in scaled)}, rel err at 1e4 {rel[1e4]:.1e}")
    assert ok


# ------------------------------------------------------------ criterion 5


def test_criterion_5_fermion_consistency(verdict):
    err = 0.0
    for N in np.linspace(0.0, 0.5, 100, endpoint=False):
        beta_I = math.inf if N == 0 else math.log((1 - N) / N)
        for th in np.linspace(0.0, math.pi / 4, 100):
            direct = fermion_eof_asymmetric(FermionProtocolPoint(N, N, th, 0.0))
            err = max(err, abs(fermion_eof_symmetric(fermion_w2_asymmetric(N, N, th), beta_I) - direct))
    end = max(abs(fermion_optimize_even(w_max(beta_of(T)), beta_of(T)).eof - LN2) for T in (0.0, 0.5, 1.0))
    wm = abs(w_max(1.0) - (2 * math.log(math.e + 1) - 1))
    ok = err < 1e-12 and end < 1e-6 and wm < 1e-12 and abs(w_max(1.0) - 1.626524) < 1e-6
    verdict(5, ok, f"grid error {err:.1e}, endpoint error {end:.1e}, W_max error {wm:.1e}")
    assert ok


# ------------------------------------------------------------ criterion 6


def _separability_threshold(T):
    # least total work for which some cooling depth allows nu_tilde < 1
    opt = pytest.importorskip("scipy.optimize")
    nu_T = nu_of_T(T)

    def g(nu):
        return gauss_w1(min(max(nu, 1.0), nu_T), T) + (nu - 1) ** 2 / 2

    grid = np.linspace(1.0, nu_T, 20001)
    k = int(np.argmin([g(v) for v in grid]))
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
    return opt.minimize_scalar(g, bounds=(lo, hi), method="bounded", options={"xatol": 1e-14}).fun


def test_criterion_6_gaussian(verdict):
    rt = 0.0
    for nu_I in np.linspace(1.0, 10.0, 25):
        for w in np.geomspace(1e-9, 1e6, 40):
            rt = max(rt, abs(gauss_w2(nu_I, nu_tilde_from_w2(nu_I, w)) - w) / max(1.0, w))
    eof = gauss_optimize(1.0, 0.0).eof
    exact = 1.5 * math.log(1.5) - 0.5 * math.log(0.5)
    T = 0.5
    w_star = _separability_threshold(T)
    mismatches = 0
    scan = np.linspace(0.0, 3 * w_star, 10_000)
    for w in scan:
        if abs(w - w_star) < 1e-9:
            continue
        entangled = gauss_optimize(w, T).status is GaussStatus.ENTANGLED
        mismatches += entangled != (w > w_star)
    ok = rt < 1e-12 and abs(eof - exact) < 1e-12 and mismatches == 0
    verdict(6, ok, f"round trip {rt:.1e}, eof error {abs(eof - exact):.1e}, threshold {w_star:.6f} with {mismatches} flag mismatches in 1e4 points")
    assert ok


# ------------------------------------------------------------ criterion 7


def test_criterion_7_nongaussian_oracle(verdict):
    ec = ee = 0.0
    for n in (1, 2, 5):
        for beta_I in (0.5, 1.0, math.inf):
            for a in np.linspace(0.0, math.pi / 4, 41):
                block, w = ng_embedded_state(a, n, beta_I)
                ec = max(ec, abs(wootters_concurrence(block) - ng_concurrence(a, n, beta_I)))
                ee = max(ee, abs(w - ng_w2(a, n, beta_I)))
    flags = [ng_entanglement_condition(1e-3, n, 1.0) for n in range(1, 41)]
    first = flags.index(True) + 1 if any(flags) else None
    flips = not flags[0] and first is not None and all(flags[first - 1:])
    ok = ec < 1e-10 and ee < 1e-10 and flips
    verdict(7, ok, f"concurrence error {ec:.1e}, energy error {ee:.1e}, condition first true at n={first}")
    assert ok


# ------------------------------------------------------------ criterion 8


@pytest.fixture(scope="module")
def figures():
    out, timing = {}, {}
    t0 = time.perf_counter()
    w = np.linspace(0.0, 5.0, POINTS)
    out["mi_bosons"] = (w, np.array([[mi_optimal(two_boson_modes(None), x, beta_of(T)).mutual_info for x in w] for T in TEMPS]))
    # fermion pairs saturate once E exceeds the infinite-temperature energy
    wf = np.linspace(0.0, 0.95, POINTS)
    out["mi_fermions"] = (wf, np.array([[mi_optimal(two_fermion_modes(), x, beta_of(T)).mutual_info for x in wf] for T in TEMPS]))
    timing["mutual information"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    rel = np.linspace(0.0, 1.0, POINTS)
    out["fermion_even"] = (rel, np.array([[fermion_optimize_even(x * w_max(beta_of(T)), beta_of(T)).eof for x in rel] for T in TEMPS]))
    out["fermion_asym"] = (rel, np.array([[fermion_optimize(x * w_max(beta_of(T)), beta_of(T)).eof for x in rel] for T in TEMPS]))
    timing["fermions"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    wg = np.linspace(0.0, 3.0, POINTS)
    out["gaussian"] = (wg, np.array([[gauss_optimize(x, T).eof for x in wg] for T in TEMPS]))
    timing["gaussian"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    wn = np.linspace(0.0, 0.5, POINTS)
    for level in (1, "auto"):
        rows = [np.array(ng_vs_gauss_curve(beta_of(T), level, wn)) for T in TEMPS]
        out[f"ng_{level}"] = (wn, np.array([r[:, 1] for r in rows]))
        out[f"ng_gauss_{level}"] = (wn, np.array([r[:, 2] for r in rows]))
    timing["non-gaussian"] = time.perf_counter() - t0
    return out, timing


def nondecreasing_in_w(a):
    return bool(np.all(np.diff(a, axis=1) >= -1e-10))


def nonincreasing_in_t(a):
    return bool(np.all(np.diff(a, axis=0) <= 1e-10))


def test_criterion_8_runtime(figures, verdict):
    _, timing = figures
    ok = all(dt < 60.0 for dt in timing.values())
    verdict(8, ok, "figure sets " + ", ".join(f"{k} {v:.1f}s" for k, v in timing.items()))
    assert ok


def test_criterion_8_shapes(figures, verdict):
    curves, _ = figures
    in_w = all(nondecreasing_in_w(a) for _, a in curves.values())
    in_t = {k: nonincreasing_in_t(a) for k, (_, a) in curves.items() if k != "fermion_asym"}
    dominance = bool(np.all(curves["fermion_asym"][1] >= curves["fermion_even"][1] - 1e-12))
    wins = {}
    for level in (1, "auto"):
        ng, g = curves[f"ng_{level}"][1], curves[f"ng_gauss_{level}"][1]
        wins[level] = [bool(np.any(ng[i] > g[i] + 1e-12)) for i in range(len(TEMPS))]
    # never from the ground state, somewhere at every finite T_I
    ng_ok = all(not w[0] and all(w[1:]) for w in wins.values())
    ok = in_w and all(in_t.values()) and dominance and ng_ok
    verdict(8, ok, f"monotone in W {in_w}, non-increasing in T except asymmetric fermions {all(in_t.values())}, asymmetric >= even {dominance}, non-Gaussian wins only for T_I > 0 {ng_ok}")
    assert ok


def test_criterion_8_nongaussian_at_half():
    wn = np.linspace(0.0, 0.1, POINTS)
    for level in (1, "auto"):
        rows = np.array(ng_vs_gauss_curve(2.0, level, wn))
        assert np.any(rows[:, 1] > rows[:, 2])
        rows = np.array(ng_vs_gauss_curve(math.inf, level, np.linspace(0.0, 3.0, POINTS)))
        assert not np.any(rows[:, 1] > rows[:, 2] + 1e-12)


@pytest.mark.xfail(strict=True, reason="asymmetric fermion entanglement grows with T at fixed W/W_max and at fixed W")
def test_criterion_8_asymmetric_fermions_nonincreasing_in_t(figures, verdict):
    curves, _ = figures
    a = curves["fermion_asym"][1]
    ok = nonincreasing_in_t(a)
    rise = float(np.max(np.diff(a, axis=0)))
    verdict(8, ok, f"asymmetric fermion curves non-increasing in T {ok} (largest rise {rise:.3f} nats)")
    assert ok
