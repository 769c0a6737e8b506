"""Maximum-power operation of the two-level engine.

Power factorizes as

    P = [(u - v) (p_h - p_c)] * [G(x, y) / tau_cyc]

with ``u = omega_h (gamma_h - 1)``, ``v = omega_c (gamma_c - 1)``,
``p_h``/``p_c`` the excited populations of the two bath equilibria, and
``G = (1-x)(1-y)/(1-xy)``.  The first factor depends only on the frequencies
and the second only on the contact times, so the two maximizations are
independent:

1. :func:`optimize_times` maximizes ``G / tau_cyc`` over ``(tau_c, tau_h)``;
2. :func:`optimize_frequencies` maximizes the work factor over
   ``(omega_c, omega_h)``.

Both are reduced to a single bracketed root search.  The optimal
efficiency depends on ``(u, v)`` only, so it is independent of the trap
shapes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq
from scipy.special import expit

from .cycle import otto_efficiency


class OptimizationError(RuntimeError):
    """No admissible interior optimum was found."""


@dataclass(frozen=True)
class TimeOptimum:
    tau_c: float
    tau_h: float
    rate: float
    residuals: dict = field(default_factory=dict)


@dataclass(frozen=True)
class FrequencyOptimum:
    omega_c: float
    omega_h: float
    eta: float
    work_factor: float
    residuals: dict = field(default_factory=dict)


@dataclass(frozen=True)
class OptimizationResult:
    omega_c_star: float
    omega_h_star: float
    tau_c_star: float
    tau_h_star: float
    eta_star: float
    p_star: float
    residuals: dict = field(default_factory=dict)


# --- contact times -----------------------------------------------------------

def time_gain(tau_c, tau_h, sigma_c, sigma_h, tau_adi):
    """``G / tau_cyc`` for given contact times (broadcasts over arrays)."""
    one_minus_x = -np.expm1(-sigma_h * np.asarray(tau_h, float))
    one_minus_y = -np.expm1(-sigma_c * np.asarray(tau_c, float))
    one_minus_xy = -np.expm1(-sigma_h * np.asarray(tau_h, float) - sigma_c * np.asarray(tau_c, float))
    return one_minus_x * one_minus_y / one_minus_xy / (tau_c + tau_h + tau_adi)


def _log_gain_slope(tau_this, tau_other, sigma_this, sigma_other):
    """d ln G / d tau_this."""
    x = math.exp(-sigma_this * tau_this)
    y = math.exp(-sigma_other * tau_other)
    return sigma_this * x * (1.0 - y) / (-math.expm1(-sigma_this * tau_this)
                                         * -math.expm1(-sigma_this * tau_this - sigma_other * tau_other))


def paired_cold_time(tau_h, sigma_c, sigma_h):
    """Cold contact time that satisfies the optimal-time relation for a given hot time.

    ``sigma_h (cosh(sigma_c tau_c) - 1) = sigma_c (cosh(sigma_h tau_h) - 1)``,
    solved through ``cosh(z) - 1 = 2 sinh(z/2)**2``.
    """
    return 2.0 * math.asinh(math.sqrt(sigma_c / sigma_h) * math.sinh(0.5 * sigma_h * tau_h)) / sigma_c


def cosh_residual(tau_c, tau_h, sigma_c, sigma_h):
    return sigma_h * (math.cosh(sigma_c * tau_c) - 1.0) - sigma_c * (math.cosh(sigma_h * tau_h) - 1.0)


def optimize_times(sigma_c: float, sigma_h: float, tau_adi: float) -> TimeOptimum:
    """Contact times maximizing ``G / tau_cyc`` at fixed frequencies.

    Requires ``tau_adi > 0``.  Without adiabatic time the gain keeps growing
    as both contacts shrink, so there is no interior maximum and an
    :class:`OptimizationError` is raised.
    """
    if not (sigma_c > 0 and sigma_h > 0):
        raise ValueError("conductivities must be positive")
    if not tau_adi > 0:
        raise OptimizationError("no interior maximum without adiabatic stroke time (tau_adi = 0)")

    def excess(tau_h):
        tau_c = paired_cold_time(tau_h, sigma_c, sigma_h)
        return _log_gain_slope(tau_h, tau_c, sigma_h, sigma_c) - 1.0 / (tau_h + tau_c + tau_adi)

    lo = 1e-9 * min(tau_adi, 1.0 / sigma_h)
    hi = 1.0 / sigma_h
    while excess(hi) > 0:
        hi *= 2.0
        if sigma_h * hi > 600:
            raise OptimizationError("failed to bracket the optimal hot contact time")
    if not excess(lo) > 0:
        raise OptimizationError("failed to bracket the optimal hot contact time")
    tau_h = brentq(excess, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    tau_c = paired_cold_time(tau_h, sigma_c, sigma_h)
    cycle = tau_h + tau_c + tau_adi
    residuals = {
        "cosh": cosh_residual(tau_c, tau_h, sigma_c, sigma_h),
        "d_tau_h": _log_gain_slope(tau_h, tau_c, sigma_h, sigma_c) - 1.0 / cycle,
        "d_tau_c": _log_gain_slope(tau_c, tau_h, sigma_c, sigma_h) - 1.0 / cycle,
    }
    return TimeOptimum(tau_c, tau_h, float(time_gain(tau_c, tau_h, sigma_c, sigma_h, tau_adi)), residuals)


# --- frequencies ---------------------------------------------------------------

def work_factor(omega_c, omega_h, gamma_c, gamma_h, beta_c, beta_h):
    """Quasi-static mean work ``(u - v)(p_h - p_c)``; broadcasts over arrays."""
    u = np.asarray(omega_h, float) * (gamma_h - 1.0)
    v = np.asarray(omega_c, float) * (gamma_c - 1.0)
    return (u - v) * (expit(-beta_h * u) - expit(-beta_c * v))


def stationarity_residuals(omega_c, omega_h, gamma_c, gamma_h, beta_c, beta_h) -> dict:
    """Residuals of the two power-stationarity conditions and the identities derived from them."""
    chi_c = math.exp(-beta_c * omega_c * (gamma_c - 1.0))
    chi_h = math.exp(-beta_h * omega_h * (gamma_h - 1.0))
    gap = omega_c * (gamma_c - 1.0) - omega_h * (gamma_h - 1.0)
    return {
        "cold": chi_c * beta_c * gap / (1.0 + chi_c) - (chi_c - chi_h) / (1.0 + chi_h),
        "hot": chi_h * beta_h * gap / (1.0 + chi_h) - (chi_c - chi_h) / (1.0 + chi_c),
        "ratio": math.sqrt(chi_h * beta_h / (chi_c * beta_c)) - (1.0 + chi_h) / (1.0 + chi_c),
        "gap": gap - (chi_c - chi_h) / math.sqrt(beta_c * beta_h * chi_c * chi_h),
    }


def _scaled_cold(a, beta_c, beta_h):
    # beta_h / cosh(a/2)^2 = beta_c / cosh(b/2)^2
    return 2.0 * math.acosh(math.sqrt(beta_c / beta_h) * math.cosh(0.5 * a))


def _scaled_excess(a, beta_c, beta_h):
    b = _scaled_cold(a, beta_c, beta_h)
    p_h, p_c = expit(-a), expit(-b)
    u, v = a / beta_h, b / beta_c
    return (p_h - p_c) - (u - v) * beta_h * p_h * (1.0 - p_h)


def optimize_frequencies(beta_c: float, beta_h: float, gamma_c: float, gamma_h: float) -> FrequencyOptimum:
    """Frequencies maximizing the work factor for given baths and trap shapes.

    Works in ``a = beta_h u``, along the curve where both stationarity
    conditions coincide, and takes the best stationary point found on a
    coarse scan of ``a``.
    """
    if not (beta_c > 0 and beta_h > 0):
        raise ValueError("inverse temperatures must be positive")
    if not (gamma_c > 1 and gamma_h > 1):
        raise ValueError("gap ratios must exceed 1")
    if not beta_c > beta_h:
        raise OptimizationError("no temperature gradient: no engine optimum exists")

    grid = np.linspace(1e-6, 60.0, 601)
    vals = np.array([_scaled_excess(a, beta_c, beta_h) for a in grid])
    brackets = np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)
    candidates = []
    for i in brackets:
        a = brentq(_scaled_excess, grid[i], grid[i + 1], args=(beta_c, beta_h),
                   xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
        u = a / beta_h
        v = _scaled_cold(a, beta_c, beta_h) / beta_c
        f = float((u - v) * (expit(-a) - expit(-beta_c * v)))
        if u > v and f > 0:
            candidates.append((f, u, v))
    if not candidates:
        raise OptimizationError("no stationary point inside the engine region")
    f, u, v = max(candidates)
    omega_h, omega_c = u / (gamma_h - 1.0), v / (gamma_c - 1.0)
    return FrequencyOptimum(
        omega_c=omega_c, omega_h=omega_h,
        eta=otto_efficiency(omega_c, omega_h, gamma_c, gamma_h), work_factor=f,
        residuals=stationarity_residuals(omega_c, omega_h, gamma_c, gamma_h, beta_c, beta_h))


def optimize_power(beta_c, beta_h, gamma_c, gamma_h, sigma_c=1.0, sigma_h=1.0, tau_adi=1.0) -> OptimizationResult:
    """Both optimization steps; power at the optimum is the product of the two maxima."""
    times = optimize_times(sigma_c, sigma_h, tau_adi)
    freqs = optimize_frequencies(beta_c, beta_h, gamma_c, gamma_h)
    return OptimizationResult(
        omega_c_star=freqs.omega_c, omega_h_star=freqs.omega_h,
        tau_c_star=times.tau_c, tau_h_star=times.tau_h,
        eta_star=freqs.eta, p_star=freqs.work_factor * times.rate,
        residuals={**freqs.residuals, **times.residuals})


# --- efficiency at maximum power -------------------------------------------------

def emp(beta_c, beta_h, gamma_c, gamma_h) -> float:
    """Efficiency at maximum power, found numerically."""
    return optimize_frequencies(beta_c, beta_h, gamma_c, gamma_h).eta


def _check_carnot(eta_c):
    if not 0.0 < eta_c < 1.0:
        raise ValueError(f"Carnot efficiency must lie in (0, 1), got {eta_c!r}")


def emp_analytic(eta_c: float) -> float:
    """``eta_C**2 / (eta_C - (1 - eta_C) ln(1 - eta_C))``."""
    _check_carnot(eta_c)
    return eta_c ** 2 / (eta_c - (1.0 - eta_c) * math.log1p(-eta_c))


def ca_efficiency(eta_c: float) -> float:
    """Curzon-Ahlborn efficiency ``1 - sqrt(1 - eta_C)``."""
    _check_carnot(eta_c)
    return 1.0 - math.sqrt(1.0 - eta_c)


def beta_cold_for(eta_c: float, beta_h: float) -> float:
    _check_carnot(eta_c)
    return beta_h / (1.0 - eta_c)
