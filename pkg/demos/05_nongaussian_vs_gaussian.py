# # When non-Gaussian operations win
#
# Rotating |00> into |nn> inside the thermal state can entangle with less
# energy than squeezing, provided the state is not pure to begin with.

import math

import numpy as np

from corrtherm import ng_vs_gauss_curve
from corrtherm.oracle import ng_embedded_state, wootters_concurrence
from corrtherm.nongaussian import ng_concurrence

# The closed form agrees with an explicit two-qubit construction.

block, w = ng_embedded_state(math.pi / 4, 1, 1.0)
print("concurrence:", wootters_concurrence(block), ng_concurrence(math.pi / 4, 1, 1.0), " energy:", w)

for T in (0.0, 0.5):
    beta = math.inf if T == 0 else 1 / T
    print(f"T_I = {T}")
    for w, ng, g in ng_vs_gauss_curve(beta, "auto", np.linspace(0.01, 0.3, 6)):
        print(f"  W_II = {w:.3f}  non-Gaussian {ng:.5f}  Gaussian {g:.5f}")

# From the ground state squeezing always wins; at T_I = 0.5 the rotation
# produces entanglement where squeezing still gives none.
