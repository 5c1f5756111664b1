# # Gaussian entanglement from cooling and two-mode squeezing
#
# A thermal two-mode state is cooled to symplectic eigenvalue nu_I and then
# squeezed. The smallest symplectic eigenvalue of the partial transpose,
# nu_tilde, fixes the entanglement of formation.

import math


from corrtherm import eof_gaussian, gauss_optimize, nu_tilde_from_w2

# From the vacuum, one unit of work gives nu_tilde = 2 - sqrt(3).

print("nu_tilde:", nu_tilde_from_w2(1.0, 1.0), 2 - math.sqrt(3))
print("eof:", eof_gaussian(nu_tilde_from_w2(1.0, 1.0)), 1.5 * math.log(1.5) - 0.5 * math.log(0.5))

# At finite temperature small budgets produce no entanglement at all.

for T in (0.0, 0.5, 1.0):
    print(f"T = {T}")
    for w in (0.02, 0.1, 0.5, 1.0, 3.0):
        p = gauss_optimize(w, T)
        print(f"  W = {w:4.2f}  eof = {p.eof:.5f}  nu_I = {p.nu_I:.4f}  r = {p.r:.4f}  {p.status.value}")
