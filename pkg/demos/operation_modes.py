"""
Operation modes versus compression ratio
========================================

A two-level Otto cycle between baths at inverse temperatures 10 and 2 acts
as a heater, an engine or a refrigerator depending on
r = sqrt(omega_h / omega_c).  Without a change of trap shape the engine
band is 1 < r <= sqrt(10 / 2).  Deforming the trap during the adiabats
moves that band.
"""

import numpy as np

from qotto.cycle import Mode, evaluate
from qotto.two_level import CycleConfig

BETA_C, BETA_H, OMEGA_C = 10.0, 2.0, 0.36
r_grid = np.linspace(0.5, 3.0, 2501)

# %%
# Classify every point of the grid and report the engine band for
# three pairs of gap ratios (cold, hot).

for gamma_c, gamma_h in [(2.0, 2.0), (2.0, 4.0), (4.0, 2.0)]:
    metrics = [evaluate(CycleConfig.build(OMEGA_C, OMEGA_C * r * r, gamma_c, gamma_h, BETA_C, BETA_H))
               for r in r_grid]
    band = [r for r, m in zip(r_grid, metrics) if m.mode is Mode.ENGINE and not m.boundary]
    best = max(m.efficiency for m in metrics if m.efficiency is not None)
    print(f"gammas ({gamma_c:g}, {gamma_h:g}): engine for r in [{band[0]:.3f}, {band[-1]:.3f}], "
          f"best eta/eta_C = {best / 0.8:.3f}")

# %%
# The band edges follow from the populations: work changes sign where
# r^2 = (gamma_c - 1)/(gamma_h - 1) and where the bath populations cross,
# r^2 = (beta_c/beta_h) (gamma_c - 1)/(gamma_h - 1).

for gamma_c, gamma_h in [(2.0, 4.0), (4.0, 2.0)]:
    k = (gamma_c - 1) / (gamma_h - 1)
    print(f"predicted band for ({gamma_c:g}, {gamma_h:g}): ({np.sqrt(k):.3f}, {np.sqrt(k * BETA_C / BETA_H):.3f}]")
