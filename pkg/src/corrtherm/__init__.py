"""Work cost of correlations and entanglement between thermal quantum systems."""

__version__ = "0.1.0"

from .thermo import (
    OscillatorPair,
    SpectrumSystem,
    ThermalProps,
    ThermalSpec,
    entropic_f,
    noneq_free_energy,
    relative_entropy_thermal,
    thermal_props,
    two_boson_modes,
    two_fermion_modes,
)
from .mi_bounds import Regime, ProtocolSplit, SaturationError, boson_mi_asymptotic, mi_optimal, mi_ultimate_bound
from .fermions import fermion_optimize, fermion_optimize_even, w_max, w_opt
from .gaussian import GaussStatus, eof_gaussian, gauss_optimize, nu_of_T, nu_tilde_from_w2
from .nongaussian import concurrence_to_eof, ng_best, ng_concurrence, ng_vs_gauss_curve, ng_w2
