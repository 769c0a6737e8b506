"""
Efficiency against work fluctuations
====================================

At fixed frequencies (omega_c = 0.2, omega_h = 0.85) the efficiency depends
on the gap ratios only, while the relative power fluctuation
f_P = std(w) / <w> also depends on the bath populations.  Sweeping the hot
gap ratio shows that a cycle can be tuned to the same efficiency with a
different fluctuation level, or to a higher efficiency with smaller
fluctuations.
"""

import numpy as np

from qotto.cycle import evaluate
from qotto.two_level import CycleConfig

OMEGA_C, OMEGA_H, BETA_C, BETA_H = 0.2, 0.85, 10.0, 2.0


def row(gamma_c, gamma_h):
    m = evaluate(CycleConfig.build(OMEGA_C, OMEGA_H, gamma_c, gamma_h, BETA_C, BETA_H))
    return m.efficiency, m.rel_power_fluct


# %%
# A coarse sweep for the two cold gap ratios.

for gamma_c, gh_range in [(2.0, (1.5, 2.5)), (4.0, (3.0, 5.0))]:
    print(f"gamma_c = {gamma_c:g}")
    for gamma_h in np.linspace(*gh_range, 6):
        eta, f_p = row(gamma_c, gamma_h)
        eta_txt = f"{eta:.3f}" if eta is not None else "  -  "
        f_txt = f"{f_p:.2f}" if f_p is not None else "-"
        print(f"  gamma_h = {gamma_h:.2f}  eta = {eta_txt}  f_P = {f_txt}")

# %%
# The three operating points discussed for this configuration.

for gamma_c, gamma_h in [(2.0, 1.78), (4.0, 3.35), (2.0, 1.9)]:
    eta, f_p = row(gamma_c, gamma_h)
    print(f"({gamma_c:g}, {gamma_h:g}): eta = {eta:.4f}, f_P = {f_p:.4f}")
