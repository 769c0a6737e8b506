"""Cycle observables: work, heat, efficiency, power, work fluctuations, operation mode.

Most quantities come in two forms that are kept deliberately separate:

* two-level closed forms written in ``gamma_c``, ``gamma_h`` and the
  equilibrium energies (``mean_work``, ``work_variance``, ``power_closed_form``,
  ``otto_efficiency``, ...);
* the general forms written through the adiabat ratios ``xi_hc``, ``xi_ch``
  (``mean_work_general``, ``heat_hot_general``, ``efficiency_general``),
  valid for any spectrum once the ratios are known.

Sign conventions: ``mean_work`` is work *output*, ``heat_hot`` is heat taken
from the hot bath and ``heat_cold = mean_work - heat_hot`` is the heat taken
from the cold bath, hence negative for an engine.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .two_level import CycleConfig, CycleEndpoints, relax_endpoints

BOUNDARY_RTOL = 1e-12


class Mode(enum.Enum):
    ENGINE = "engine"
    REFRIGERATOR = "refrigerator"
    HEATER = "heater"


class Classification(NamedTuple):
    mode: Mode
    boundary: bool = False

    def label(self) -> str:
        return f"boundary:{self.mode.value}" if self.boundary else self.mode.value


class NotAnEngineError(ValueError):
    """Efficiency requested for a cycle that does not run as an engine."""


class ModeBoundaryError(ZeroDivisionError):
    """A ratio is undefined because the mean work vanishes."""


@dataclass(frozen=True)
class CompressionRatio:
    r: float
    r_carnot: float


@dataclass(frozen=True)
class CycleMetrics:
    mean_work: float
    heat_hot: float
    heat_cold: float
    efficiency: Optional[float]
    power: float
    work_variance: float
    rel_power_fluct: Optional[float]
    mode: Mode
    boundary: bool = False


def compression_ratio(config: CycleConfig) -> CompressionRatio:
    return CompressionRatio(math.sqrt(config.omega_h / config.omega_c),
                            math.sqrt(config.cold.beta / config.hot.beta))


def shape_gain(x, y, xi_product=1.0):
    """Finite-time reduction factor ``(1-x)(1-y) / (1 - xi_hc*xi_ch*x*y)``.

    For the two-level engine the product of the adiabat ratios drops out and
    ``xi_product`` should be left at 1.
    """
    return (1.0 - x) * (1.0 - y) / (1.0 - xi_product * x * y)


# --- two-level closed forms -------------------------------------------------

def _work_prefactors(omega_c, omega_h, gamma_c, gamma_h, g_eq_c, g_eq_h):
    energy = g_eq_h - (gamma_h - 1.0) / (gamma_c - 1.0) * g_eq_c + (gamma_h - gamma_c) / (gamma_c - 1.0)
    frequency = omega_h - (gamma_c - 1.0) / (gamma_h - 1.0) * omega_c
    return energy, frequency


def quasi_static_mean_work(omega_c, omega_h, gamma_c, gamma_h, g_eq_c, g_eq_h):
    energy, frequency = _work_prefactors(omega_c, omega_h, gamma_c, gamma_h, g_eq_c, g_eq_h)
    return energy * frequency


def quasi_static_work_variance(omega_c, omega_h, gamma_c, gamma_h, g_eq_c, g_eq_h):
    return _variance_populations(omega_c, omega_h, gamma_c, gamma_h, g_eq_h, g_eq_c)


def _variance_populations(omega_c, omega_h, gamma_c, gamma_h, g_b, g_d):
    # Var = gap^2 [p_B(1-p_B) + p_A(1-p_A)], a sum of non-negative terms
    gap = (gamma_h - 1.0) * omega_h - (gamma_c - 1.0) * omega_c
    # near the ground state g - 1 can round to a hair below zero
    p_b = np.clip((g_b - 1.0) / (gamma_h - 1.0), 0.0, 1.0)
    p_a = np.clip((g_d - 1.0) / (gamma_c - 1.0), 0.0, 1.0)
    return gap * gap * (p_b * (1.0 - p_b) + p_a * (1.0 - p_a))


def _variance_g_form(omega_c, omega_h, gamma_c, gamma_h, g_b, g_d):
    k = omega_h - omega_c * (gamma_c - 1.0) / (gamma_h - 1.0)
    second = (gamma_h - 1.0) / (gamma_c - 1.0) * k ** 2 * (
        (g_b - 1.0) * (gamma_c - g_d) + (g_d - 1.0) * (gamma_h - g_b))
    first = (k / (gamma_c - 1.0)) ** 2 * ((g_b - 1.0) * gamma_c - (g_d - 1.0) * gamma_h + (g_d - g_b)) ** 2
    return second - first


def mean_work(config: CycleConfig) -> float:
    """Mean work output per cycle of the two-level engine in its periodic state."""
    energy, frequency = _work_prefactors(config.omega_c, config.omega_h, config.gamma_c,
                                         config.gamma_h, config.g_eq_c(), config.g_eq_h())
    return float(energy * frequency * shape_gain(config.x, config.y))


def work_from_endpoints(config: CycleConfig, endpoints: CycleEndpoints) -> float:
    """``omega_h (g_B - g_A) + omega_c (g_D - g_C)``: energy bookkeeping over both adiabats."""
    e = endpoints
    return config.omega_h * (e.g_B - e.g_A) + config.omega_c * (e.g_D - e.g_C)


def work_variance(config: CycleConfig, endpoints: Optional[CycleEndpoints] = None) -> float:
    """Variance of the stochastic work; never negative, even after rounding."""
    e = endpoints or relax_endpoints(config)
    return float(_variance_populations(config.omega_c, config.omega_h, config.gamma_c, config.gamma_h,
                                       e.g_B, e.g_D))


def work_variance_g(config: CycleConfig, endpoints: Optional[CycleEndpoints] = None) -> float:
    """Same variance, expanded in ``g_B`` and ``g_D``; can round slightly below zero."""
    e = endpoints or relax_endpoints(config)
    return float(_variance_g_form(config.omega_c, config.omega_h, config.gamma_c, config.gamma_h,
                                  e.g_B, e.g_D))


def work_variance_chi(config: CycleConfig, endpoints: Optional[CycleEndpoints] = None) -> float:
    """Same variance, written through the Boltzmann-like ratios at B and D."""
    e = endpoints or relax_endpoints(config)
    chi_c, chi_h = e.chi_c, e.chi_h
    delta = config.omega_c * (config.gamma_c - 1.0) - (config.gamma_h - 1.0) * config.omega_h
    norm = (chi_c + 1.0) * (chi_h + 1.0)
    return float((chi_c + chi_h) * delta ** 2 / norm - ((chi_c - chi_h) * delta / norm) ** 2)


def mean_heat_hot(config: CycleConfig, endpoints: Optional[CycleEndpoints] = None) -> float:
    e = endpoints or relax_endpoints(config)
    return config.omega_h * (e.g_B - e.g_A)


def mean_heat_cold(config: CycleConfig, endpoints: Optional[CycleEndpoints] = None) -> float:
    e = endpoints or relax_endpoints(config)
    return work_from_endpoints(config, e) - mean_heat_hot(config, e)


def otto_efficiency(omega_c, omega_h, gamma_c, gamma_h):
    """``1 - (omega_c/omega_h) (gamma_c - 1)/(gamma_h - 1)``, with no mode check."""
    return 1.0 - omega_c / omega_h * (gamma_c - 1.0) / (gamma_h - 1.0)


def power(config: CycleConfig) -> float:
    if math.isinf(config.cycle_time):
        return 0.0
    return mean_work(config) / config.cycle_time


def power_closed_form(config: CycleConfig) -> float:
    """Power written out in Boltzmann factors of the two bath equilibria."""
    if math.isinf(config.cycle_time):
        return 0.0
    bc, bh = config.cold.beta, config.hot.beta
    wc, wh = config.omega_c, config.omega_h
    gc, gh = config.gamma_c, config.gamma_h
    # Factor out exp(-bh*wh - bc*wc) so the exponents stay bounded.
    z_h = 1.0 + math.exp(-(gh - 1.0) * bh * wh)
    z_c = 1.0 + math.exp(-(gc - 1.0) * bc * wc)
    diff = math.exp(-(gc - 1.0) * bc * wc) - math.exp(-(gh - 1.0) * bh * wh)
    lead = -(gh - 1.0) * wh + (gc - 1.0) * wc
    return lead / (z_h * z_c) * diff * shape_gain(config.x, config.y) / config.cycle_time


# --- general forms through the adiabat ratios --------------------------------

def mean_work_xi(config: CycleConfig, endpoints: CycleEndpoints, xi_hc, xi_ch) -> float:
    """Mean work from ``g_B``, ``g_D`` and the adiabat ratios."""
    g_b, g_d = endpoints.g_B, endpoints.g_D
    # multiplied out so a vanishing g_B - xi_ch g_D is harmless
    return config.omega_h * (g_b - xi_ch * g_d) - config.omega_c * (xi_hc * g_b - g_d)


def mean_work_general(omega_c, omega_h, g_eq_c, g_eq_h, xi_hc, xi_ch, x, y):
    """Finite-time mean work for an arbitrary spectrum given its adiabat ratios.

    Written with the ``1/(1-x)``, ``1/(1-y)`` factors already multiplied into
    the gain, so ``x = 1`` or ``y = 1`` (one contact of zero length) is allowed.
    """
    prod = xi_hc * xi_ch
    denom = 1.0 - prod * x * y
    hot_coef = ((1.0 - prod * y) * omega_h - xi_hc * omega_c * (1.0 - y)) * (1.0 - x)
    cold_coef = (xi_ch * omega_h * (1.0 - x) - (1.0 - prod * x) * omega_c) * (1.0 - y)
    return (hot_coef * g_eq_h - cold_coef * g_eq_c) / denom


def heat_hot_general(omega_c, omega_h, g_eq_c, g_eq_h, xi_hc, xi_ch, x, y):
    prod = xi_hc * xi_ch
    return omega_h * ((1.0 - prod * y) * g_eq_h - xi_ch * g_eq_c * (1.0 - y)) * (1.0 - x) / (1.0 - prod * x * y)


def efficiency_general(omega_c, omega_h, g_eq_c, g_eq_h, xi_hc, xi_ch, x, y):
    prod = xi_hc * xi_ch
    numer = (xi_hc * g_eq_h * (1.0 - x) - (1.0 - prod * x) * g_eq_c) * (1.0 - y)
    denom = ((1.0 - prod * y) * g_eq_h - xi_ch * g_eq_c * (1.0 - y)) * (1.0 - x)
    return 1.0 - omega_c / omega_h * numer / denom


# --- classification and aggregate metrics -----------------------------------

def classify_signs(work, heat_hot, heat_cold, scale) -> Classification:
    """Operation mode from the signs of the mean energy flows.

    Engine: work out, heat in from the hot bath.  Refrigerator: work in,
    heat in from the cold bath.  Anything else dissipates work and is a
    heater.  ``|work| <= BOUNDARY_RTOL * scale`` is a boundary; it is filed
    under the mode that lies below it in compression ratio: heater when
    heat still flows in from the hot bath, engine when all flows vanish.
    """
    tol = BOUNDARY_RTOL * scale
    if abs(work) <= tol:
        if heat_hot > tol:
            return Classification(Mode.HEATER, True)
        if heat_hot < -tol:
            return Classification(Mode.REFRIGERATOR, True)
        return Classification(Mode.ENGINE, True)
    if work > 0 and heat_hot > 0:
        return Classification(Mode.ENGINE)
    if work < 0 and heat_cold > 0:
        return Classification(Mode.REFRIGERATOR)
    return Classification(Mode.HEATER)


def _energy_scale(config):
    return max(config.omega_h * config.gamma_h, config.omega_c * config.gamma_c)


def classify_mode(config: CycleConfig) -> Classification:
    e = relax_endpoints(config)
    w = mean_work(config)
    q_h = mean_heat_hot(config, e)
    return classify_signs(w, q_h, w - q_h, _energy_scale(config))


def efficiency(config: CycleConfig) -> float:
    """Engine efficiency; independent of the contact times for two levels."""
    cls = classify_mode(config)
    if cls.mode is not Mode.ENGINE or cls.boundary:
        raise NotAnEngineError(f"cycle runs as {cls.label()}, efficiency undefined")
    return otto_efficiency(config.omega_c, config.omega_h, config.gamma_c, config.gamma_h)


def rel_power_fluctuation(config: CycleConfig) -> float:
    """``sqrt(var(w)) / |<w>|``."""
    w = mean_work(config)
    if abs(w) <= BOUNDARY_RTOL * _energy_scale(config):
        raise ModeBoundaryError("mean work vanishes; relative fluctuation undefined")
    return math.sqrt(work_variance(config)) / abs(w)


def evaluate(config: CycleConfig) -> CycleMetrics:
    e = relax_endpoints(config)
    w = mean_work(config)
    q_h = mean_heat_hot(config, e)
    q_c = w - q_h
    var = work_variance(config, e)
    cls = classify_signs(w, q_h, q_c, _energy_scale(config))
    engine = cls.mode is Mode.ENGINE and not cls.boundary
    eta = otto_efficiency(config.omega_c, config.omega_h, config.gamma_c, config.gamma_h) if engine else None
    f_p = math.sqrt(var) / abs(w) if abs(w) > BOUNDARY_RTOL * _energy_scale(config) else None
    return CycleMetrics(mean_work=w, heat_hot=q_h, heat_cold=q_c, efficiency=eta,
                        power=power(config), work_variance=var, rel_power_fluct=f_p,
                        mode=cls.mode, boundary=cls.boundary)


def carnot_efficiency(beta_c, beta_h):
    return 1.0 - beta_h / beta_c


def engine_mask(omega_c, omega_h, gamma_c, gamma_h, beta_c, beta_h):
    """Vectorised quasi-static engine test for frequency grids."""
    u = (np.asarray(omega_h) * (gamma_h - 1.0))
    v = (np.asarray(omega_c) * (gamma_c - 1.0))
    return (u > v) & (beta_h * u < beta_c * v)
