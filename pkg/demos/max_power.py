"""
Efficiency at maximum power
===========================

Power factorizes into a frequency part and a contact-time part, so the
two are optimized separately.  The efficiency at the optimum depends only
on the Carnot efficiency, whatever the trap shapes.  A closed-form
approximation and the Curzon-Ahlborn value are printed alongside.
"""

from qotto import optimizer as opt

BETA_H = 2.0

# %%
# Contact times: the optimum satisfies a cosh relation between the two
# strokes.  A finite adiabatic stroke time is needed for an interior optimum.

times = opt.optimize_times(sigma_c=1.0, sigma_h=2.0, tau_adi=1.0)
print(f"tau_c* = {times.tau_c:.6f}, tau_h* = {times.tau_h:.6f}, cosh residual {times.residuals['cosh']:.1e}")

# %%
# Frequencies, for several Carnot efficiencies and gap-ratio pairs.

print(f"{'eta_C':>6} {'(2,2)':>9} {'(2,4)':>9} {'(4,2)':>9} {'closed':>9} {'CA':>9}")
for eta_c in (0.1, 0.3, 0.5, 0.7, 0.9):
    beta_c = opt.beta_cold_for(eta_c, BETA_H)
    etas = [opt.emp(beta_c, BETA_H, gc, gh) for gc, gh in ((2, 2), (2, 4), (4, 2))]
    print(f"{eta_c:6.2f} " + " ".join(f"{e:9.6f}" for e in etas)
          + f" {opt.emp_analytic(eta_c):9.6f} {opt.ca_efficiency(eta_c):9.6f}")

# %%
# The full optimum for one configuration.

best = opt.optimize_power(10.0, BETA_H, 2.0, 4.0, sigma_c=1.0, sigma_h=2.0, tau_adi=1.0)
print(f"omega_c* = {best.omega_c_star:.6f}, omega_h* = {best.omega_h_star:.6f}, "
      f"eta* = {best.eta_star:.6f}, P* = {best.p_star:.6e}")
