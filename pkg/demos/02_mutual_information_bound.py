# # Optimal mutual information for a fixed work budget
#
# Cool first, then heat the marginals back to the bath temperature. While
# the entropy to be traded lasts the bound I = beta W is reached; beyond that
# the ground state limits it.

import math

import numpy as np

from corrtherm import boson_mi_asymptotic, mi_optimal, thermal_props, two_boson_modes

bosons = two_boson_modes(None)
beta = 1.0
kink = thermal_props(bosons, beta).S / beta
print(f"linear regime ends at W = T S = {kink:.6f}")

for w in np.linspace(0.5, 5.0, 10):
    p = mi_optimal(bosons, w, beta)
    print(f"W = {w:4.2f}  I = {p.mutual_info:.5f}  bound = {beta * w:.5f}  {p.regime.value}")

# From the ground state a work budget W = 2 puts one quantum in each mode on
# average, giving 4 ln 2.

print("T = 0, W = 2:", mi_optimal(bosons, 2.0, math.inf).mutual_info, 4 * math.log(2))

# At large budgets the optimum grows only logarithmically.

for w in (1e3, 1e4, 1e5):
    exact = mi_optimal(bosons, w, math.inf).mutual_info
    print(f"W = {w:.0e}  exact = {exact:.6f}  2 + 2 ln(W/2) = {boson_mi_asymptotic(w):.6f}")
