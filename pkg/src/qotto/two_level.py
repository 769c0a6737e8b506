"""Two-level working substance: equilibrium values, adiabats and finite-time relaxation.

Only the two lowest levels ``omega`` and ``gamma * omega`` of a power-law trap
are kept.  A state is then fixed by its excited-to-ground ratio ``chi``, and
the dimensionless energy is ``g = (1 + gamma*chi) / (1 + chi)``.

The four instants of the Otto cycle are labelled A (start of hot contact),
B (end of hot contact), C (start of cold contact) and D (end of cold contact).
The adiabats B->C and D->A keep populations frozen while the frequency and
the trap shape change.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .spectrum import TrapShape


def _gamma(shape_or_gamma):
    if isinstance(shape_or_gamma, TrapShape):
        return shape_or_gamma.gamma
    return shape_or_gamma


@dataclass(frozen=True)
class BathContact:
    """Contact with one reservoir.

    ``tau = inf`` is allowed and stands for full thermalization.
    """

    beta: float
    conductivity: float
    tau: float

    def __post_init__(self):
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise ValueError(f"bath inverse temperature must be positive and finite, got {self.beta!r}")
        if not (self.conductivity > 0 and math.isfinite(self.conductivity)):
            raise ValueError(f"conductivity must be positive and finite, got {self.conductivity!r}")
        if not self.tau >= 0:
            raise ValueError(f"contact time must be >= 0, got {self.tau!r}")

    @property
    def decay(self) -> float:
        """Relaxation factor ``exp(-conductivity * tau)`` in ``(0, 1]``."""
        return math.exp(-self.conductivity * self.tau)


@dataclass(frozen=True)
class CycleConfig:
    omega_c: float
    omega_h: float
    shape_c: TrapShape
    shape_h: TrapShape
    cold: BathContact
    hot: BathContact
    tau_adi: float = 0.0

    def __post_init__(self):
        if not (self.omega_c > 0 and self.omega_h > 0):
            raise ValueError("trap frequencies must be positive")
        if self.cold.beta < self.hot.beta:
            raise ValueError(
                f"cold bath must not be hotter than the hot bath "
                f"(beta_c={self.cold.beta}, beta_h={self.hot.beta})")
        if not self.tau_adi >= 0:
            raise ValueError(f"adiabatic stroke time must be >= 0, got {self.tau_adi!r}")
        if self.hot.tau == 0 and self.cold.tau == 0:
            raise ValueError("at least one bath contact must last a nonzero time")

    @classmethod
    def build(cls, omega_c, omega_h, gamma_c, gamma_h, beta_c, beta_h,
              tau_c=math.inf, tau_h=math.inf, sigma_c=1.0, sigma_h=1.0, tau_adi=0.0):
        """Shorthand taking gap ratios and bare numbers; contact times default to quasi-static."""
        return cls(
            omega_c=omega_c, omega_h=omega_h,
            shape_c=TrapShape.from_gamma(gamma_c), shape_h=TrapShape.from_gamma(gamma_h),
            cold=BathContact(beta_c, sigma_c, tau_c), hot=BathContact(beta_h, sigma_h, tau_h),
            tau_adi=tau_adi)

    @property
    def gamma_c(self) -> float:
        return self.shape_c.gamma

    @property
    def gamma_h(self) -> float:
        return self.shape_h.gamma

    @property
    def x(self) -> float:
        return self.hot.decay

    @property
    def y(self) -> float:
        return self.cold.decay

    @property
    def cycle_time(self) -> float:
        return self.hot.tau + self.cold.tau + self.tau_adi

    @property
    def carnot(self) -> float:
        return 1.0 - self.hot.beta / self.cold.beta

    @property
    def is_quasi_static(self) -> bool:
        return self.x == 0.0 and self.y == 0.0

    def g_eq_c(self) -> float:
        return eq_g(self.cold.beta * self.omega_c, self.gamma_c)

    def g_eq_h(self) -> float:
        return eq_g(self.hot.beta * self.omega_h, self.gamma_h)


@dataclass(frozen=True)
class CycleEndpoints:
    """Dimensionless energies at the four cycle instants of the periodic state."""

    g_A: float
    g_B: float
    g_C: float
    g_D: float
    chi_c: float
    chi_h: float

    def excited_B(self) -> float:
        return self.chi_h / (1.0 + self.chi_h)

    def excited_A(self) -> float:
        return self.chi_c / (1.0 + self.chi_c)

    def effective_betas(self, config: CycleConfig) -> tuple[float, float]:
        """Inverse temperatures ``(beta_B, beta_D)`` that reproduce the endpoint populations."""
        beta_b = -math.log(self.chi_h) / ((config.gamma_h - 1.0) * config.omega_h)
        beta_d = -math.log(self.chi_c) / ((config.gamma_c - 1.0) * config.omega_c)
        return beta_b, beta_d


def boltzmann_ratio(beta_omega, gamma):
    """``chi = exp(-(gamma - 1) * beta * omega)``."""
    return np.exp(-(gamma - 1.0) * beta_omega)


def eq_g(beta_omega, gamma):
    """Equilibrium dimensionless energy of the two-level system.

    Equal to ``(1 + gamma*chi) / (1 + chi)``; written through the logistic
    function so that ``beta_omega -> inf`` gives exactly 1.
    """
    return 1.0 + (gamma - 1.0) * expit(-(gamma - 1.0) * beta_omega)


def populations(beta_omega, gamma):
    """Ground and excited occupation ``(p_g, p_e)`` at equilibrium."""
    p_e = expit(-(gamma - 1.0) * beta_omega)
    return 1.0 - p_e, p_e


def chi_from_g(g, gamma):
    """Invert ``g = (1 + gamma*chi) / (1 + chi)``."""
    return (g - 1.0) / (gamma - g)


def excited_from_g(g, gamma):
    return (g - 1.0) / (gamma - 1.0)


def deformation_link(g, shape_from, shape_to):
    """Image of ``g`` under a population-preserving change of trap shape.

    ``deformation_link(g_D, shape_c, shape_h)`` gives ``g_A`` and
    ``deformation_link(g_B, shape_h, shape_c)`` gives ``g_C``.
    """
    gamma_from, gamma_to = _gamma(shape_from), _gamma(shape_to)
    if gamma_from == 1.0 or gamma_to == 1.0:
        raise ValueError("degenerate level spacing (gamma = 1)")
    return ((gamma_to - 1.0) * g + gamma_from - gamma_to) / (gamma_from - 1.0)


def relax(g_start, g_eq, decay):
    """Exponential relaxation over one contact: ``g_eq + (g_start - g_eq) * decay``."""
    return g_eq + (g_start - g_eq) * decay


def periodic_g(gamma_c, gamma_h, g_eq_c, g_eq_h, x, y):
    """Closed-form periodic-state energies ``(g_B, g_D)``.

    ``x`` and ``y`` are the hot and cold relaxation factors; ``x = y = 1``
    (no bath contact at all) has no unique periodic state and is rejected.
    """
    denom = 1.0 - x * y
    if np.any(denom <= 0):
        raise ValueError("both contact times are zero; the periodic state is undefined")
    g_b = g_eq_h + ((gamma_c - gamma_h) / (gamma_c - 1.0)
                    + (gamma_h - 1.0) / (gamma_c - 1.0) * g_eq_c - g_eq_h) * (1.0 - y) * x / denom
    g_d = g_eq_c + ((gamma_h - gamma_c) / (gamma_h - 1.0)
                    + (gamma_c - 1.0) / (gamma_h - 1.0) * g_eq_h - g_eq_c) * (1.0 - x) * y / denom
    return g_b, g_d


def relax_endpoints(config: CycleConfig) -> CycleEndpoints:
    gc, gh = config.gamma_c, config.gamma_h
    g_b, g_d = periodic_g(gc, gh, config.g_eq_c(), config.g_eq_h(), config.x, config.y)
    g_a = deformation_link(g_d, gc, gh)
    g_c = deformation_link(g_b, gh, gc)
    return CycleEndpoints(float(g_a), float(g_b), float(g_c), float(g_d),
                          chi_c=float(chi_from_g(g_d, gc)), chi_h=float(chi_from_g(g_b, gh)))


def xi_values(gamma_c, gamma_h, g_eq_c, g_eq_h, x, y):
    """Adiabat energy ratios ``(xi_hc, xi_ch) = (g_C/g_B, g_A/g_D)`` from bath data alone."""
    denom = 1.0 - x * y
    bracket_h = g_eq_h + ((gamma_c - gamma_h) / (gamma_c - 1.0)
                          + (gamma_h - 1.0) / (gamma_c - 1.0) * g_eq_c - g_eq_h) * (1.0 - y) * x / denom
    bracket_c = g_eq_c + ((gamma_h - gamma_c) / (gamma_h - 1.0)
                          + (gamma_c - 1.0) / (gamma_h - 1.0) * g_eq_h - g_eq_c) * (1.0 - x) * y / denom
    if np.any(bracket_h == 0) or np.any(bracket_c == 0):
        raise ZeroDivisionError("vanishing energy bracket in xi factors")
    xi_hc = (gamma_c - 1.0) / (gamma_h - 1.0) + (gamma_h - gamma_c) / (gamma_h - 1.0) / bracket_h
    xi_ch = (gamma_h - 1.0) / (gamma_c - 1.0) + (gamma_c - gamma_h) / (gamma_c - 1.0) / bracket_c
    return xi_hc, xi_ch


def xi_factors(config: CycleConfig) -> tuple[float, float]:
    xi_hc, xi_ch = xi_values(config.gamma_c, config.gamma_h, config.g_eq_c(), config.g_eq_h(),
                             config.x, config.y)
    return float(xi_hc), float(xi_ch)
