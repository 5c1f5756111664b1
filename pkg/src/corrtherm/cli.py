"""Command-line front end: curve generation and verification suites.

Exit codes: 0 success, 1 a verification check failed, 2 bad flags,
3 a fermionic mutual-information curve ran past saturation.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

import numpy as np

from . import __version__
from .fermions import fermion_optimize, fermion_optimize_even, w_max
from .gaussian import eof_gaussian, gauss_optimize, nu_of_T, nu_tilde_from_w2
from .mi_bounds import SaturationError, mi_optimal, mi_ultimate_bound
from .nongaussian import ng_best, ng_best_auto
from .oracle import run_suite
from .thermo import two_boson_modes, two_fermion_modes

EXIT_OK, EXIT_CHECK, EXIT_FLAGS, EXIT_SATURATED = 0, 1, 2, 3


def _beta(T: float) -> float:
    return math.inf if T == 0 else 1.0 / T


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _json_value(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("CORRTHERM_THREADS", "1")))
    except ValueError:
        return 1


def _map(fn, items):
    """Ordered map, fanned out over processes when CORRTHERM_THREADS > 1."""
    workers = _threads()
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def _grid(lo: float, hi: float, points: int, log: bool) -> np.ndarray:
    if log:
        return np.geomspace(lo, hi, points)
    return np.linspace(lo, hi, points)


# ------------------------------------------------------------------ rows


def _mi_row(args):
    system, T, W = args
    sys_ = two_boson_modes(None) if system == "bosons" else two_fermion_modes()
    beta = _beta(T)
    p = mi_optimal(sys_, W, beta)
    return [W, p.mutual_info, mi_ultimate_bound(W, beta), p.regime.value, p.W_I, p.W_II, 1 / p.beta_I, 1 / p.beta_II]


MI_COLUMNS = ["W[omega]", "mi_optimal[nats]", "mi_bound[nats]", "regime", "W_I[omega]", "W_II[omega]", "T_I[omega]", "T_II[omega]"]


def _fermion_row(args):
    mode, T, x = args
    beta = _beta(T)
    W = x * w_max(beta)
    if mode == "even":
        p = fermion_optimize_even(W, beta)
        return [T, x, W, p.eof, p.N1, p.theta_even, p.W_I, p.W_II, p.T_II]
    p = fermion_optimize(W, beta)
    return [T, x, W, p.eof, p.N1, p.N2, p.theta_even, p.W_I, p.W_II]


FERMION_COLUMNS = {
    "even": ["T[omega]", "W_rel", "W[omega]", "eof[nats]", "N", "theta_even[rad]", "W_I[omega]", "W_II[omega]", "T_II[omega]"],
    "asymmetric": ["T[omega]", "W_rel", "W[omega]", "eof[nats]", "N1", "N2", "theta_even[rad]", "W_I[omega]", "W_II[omega]"],
}


def _boson_row(args):
    protocol, T, n, W = args
    beta = _beta(T)
    if protocol == "gaussian":
        p = gauss_optimize(W, T)
        return [T, W, p.eof, p.nu_I, p.nu_tilde, p.r, p.W_I, p.W_II, p.T_II, p.status.value]
    ng = ng_best_auto(W, beta) if n == "auto" else ng_best(W, int(n), beta)
    if protocol == "nongaussian":
        return [T, W, ng.n, ng.alpha, ng.C, ng.eof]
    g = eof_gaussian(nu_tilde_from_w2(nu_of_T(T), W))
    return [T, W, ng.eof, g, ng.n]


BOSON_COLUMNS = {
    "gaussian": ["T[omega]", "W[omega]", "eof[nats]", "nu_I", "nu_tilde", "r", "W_I[omega]", "W_II[omega]", "T_II[omega]", "status"],
    "nongaussian": ["T_I[omega]", "W_II[omega]", "n", "alpha[rad]", "concurrence", "eof[nats]"],
    "compare": ["T_I[omega]", "W_II[omega]", "eof_nongauss[nats]", "eof_gauss[nats]", "n"],
}


# ---------------------------------------------------------------- output


def _render(command: str, params: dict, columns: list, rows: list, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(",".join(columns) + "\n")
        for r in rows:
            buf.write(",".join(_fmt(v) for v in r) + "\n")
        return buf.getvalue()
    doc = {
        "command": command,
        "version": __version__,
        "parameters": params,
        "columns": columns,
        "rows": [[_json_value(float(v)) if isinstance(v, (float, np.floating)) else v for v in r] for r in rows],
    }
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def _emit(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# -------------------------------------------------------------- commands


def cmd_mi_curve(a) -> int:
    grid = _grid(a.w_min, a.w_max, a.points, a.log_w)
    rows, code = [], EXIT_OK
    for W in grid:
        try:
            rows.append(_mi_row((a.system, a.T, float(W))))
        except SaturationError as e:
            print(f"warning: {e}; curve truncated at W={float(W)!r}", file=sys.stderr)
            code = EXIT_SATURATED
            break
    params = {"system": a.system, "T": a.T, "w_min": a.w_min, "w_max": a.w_max, "points": a.points, "log_w": a.log_w}
    _emit(_render("mi-curve", params, MI_COLUMNS, rows, a.format), a.out)
    return code


def cmd_fermion_curve(a) -> int:
    xs = np.linspace(0.0, 1.0, a.points)
    items = [(a.mode, T, float(x)) for T in a.T for x in xs]
    rows = _map(_fermion_row, items)
    params = {"mode": a.mode, "T": a.T, "points": a.points}
    _emit(_render("fermion-curve", params, FERMION_COLUMNS[a.mode], rows, a.format), a.out)
    return EXIT_OK


def cmd_boson_curve(a) -> int:
    grid = _grid(a.w_min, a.w_max, a.points, a.log_w)
    items = [(a.protocol, T, a.n, float(W)) for T in a.T for W in grid]
    rows = _map(_boson_row, items)
    params = {"protocol": a.protocol, "T": a.T, "n": a.n, "w_min": a.w_min, "w_max": a.w_max, "points": a.points, "log_w": a.log_w}
    _emit(_render("boson-curve", params, BOSON_COLUMNS[a.protocol], rows, a.format), a.out)
    return EXIT_OK


def cmd_verify(a) -> int:
    report = run_suite(a.suite, seed=a.seed, samples=a.samples)
    report["pass"] = all(c["pass"] for c in report["checks"])
    _emit(json.dumps(report, indent=1, allow_nan=False) + "\n", a.out)
    return EXIT_OK if report["pass"] else EXIT_CHECK


# ---------------------------------------------------------------- parser


def _nonneg(s: str) -> float:
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s!r}")
    if not math.isfinite(v) or v < 0:
        raise argparse.ArgumentTypeError(f"expected a finite value >= 0, got {s!r}")
    return v


def _temps(s: str) -> list[float]:
    return [_nonneg(t) for t in s.split(",") if t.strip()]


def _positive_int(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {s!r}")
    return v


def _level(s: str):
    return "auto" if s == "auto" else _positive_int(s)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="corrtherm", description="Work cost of correlations and entanglement in thermal systems.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def output(sp, formats=True):
        sp.add_argument("--out", default=None, help="output file (default stdout)")
        if formats:
            sp.add_argument("--format", choices=["csv", "json"], default="csv")

    def w_axis(sp, w_max):
        sp.add_argument("--w-min", type=_nonneg, default=0.0)
        sp.add_argument("--w-max", type=_nonneg, default=w_max)
        sp.add_argument("--log-w", action="store_true", help="geometric spacing in W")

    sp = sub.add_parser("mi-curve", help="optimal mutual information versus work")
    sp.add_argument("--system", choices=["bosons", "fermions"], required=True)
    sp.add_argument("--T", type=_nonneg, required=True, help="bath temperature")
    w_axis(sp, 5.0)
    sp.add_argument("--points", type=_positive_int, default=101)
    output(sp)
    sp.set_defaults(func=cmd_mi_curve)

    sp = sub.add_parser("fermion-curve", help="fermionic entanglement versus W/W_max")
    sp.add_argument("--mode", choices=["even", "asymmetric"], required=True)
    sp.add_argument("--T", type=_temps, required=True, help="comma-separated temperatures")
    sp.add_argument("--points", type=_positive_int, default=101)
    output(sp)
    sp.set_defaults(func=cmd_fermion_curve)

    sp = sub.add_parser("boson-curve", help="bosonic entanglement versus work")
    sp.add_argument("--protocol", choices=["gaussian", "nongaussian", "compare"], required=True)
    sp.add_argument("--T", type=_temps, required=True, help="comma-separated temperatures (T_I for nongaussian/compare)")
    sp.add_argument("--n", type=_level, default=1, help="Fock level of the rotation, or 'auto'")
    w_axis(sp, 5.0)
    sp.add_argument("--points", type=_positive_int, default=101)
    output(sp)
    sp.set_defaults(func=cmd_boson_curve)

    sp = sub.add_parser("verify", help="run brute-force verification suites")
    sp.add_argument("--suite", choices=["identities", "bound", "fermion", "nongauss", "all"], required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=_positive_int, default=100)
    output(sp, formats=False)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    if getattr(a, "w_min", None) is not None:
        if a.w_min > a.w_max:
            parser.error("--w-min must not exceed --w-max")
        if a.log_w and a.w_min <= 0:
            parser.error("--log-w needs --w-min > 0")
    if getattr(a, "T", None) == []:
        parser.error("--T needs at least one temperature")
    return a.func(a)


if __name__ == "__main__":
    sys.exit(main())
