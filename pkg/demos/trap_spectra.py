"""
Thermal sums for power-law traps
================================

Levels of a trap with exponent theta sit at omega * n**theta.  The
harmonic trap (theta = 1), a quartic-like trap (theta = 4/3) and the box
(theta = 2) are compared, and an isentropic change of shape is solved
for the matching temperature.
"""

from qotto import spectrum as sp

shapes = {"harmonic": sp.TrapShape(1.0), "quartic": sp.TrapShape(4 / 3), "box": sp.TrapShape(2.0)}

# %%
# Partition function, mean energy in units of omega and entropy.

for name, shape in shapes.items():
    s = sp.thermal_sums(sp.ThermalPoint(0.5, shape))
    print(f"{name:9s} Z = {s.partition:.6f}  g = {s.g:.6f}  S = {s.entropy:.6f}")

# %%
# Deform a harmonic trap at beta*omega = 0.5 into a box without changing
# the entropy, then deform it back.

start = sp.ThermalPoint(0.5, shapes["harmonic"])
box = sp.adiabatic_match(start, shapes["box"])
back = sp.adiabatic_match(box, shapes["harmonic"])
print(f"box point beta*omega = {box.beta_omega:.10f}; round trip {back.beta_omega:.12f}")
