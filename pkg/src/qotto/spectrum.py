"""Power-law trap spectra and their equilibrium thermodynamics.

A one-dimensional power-law trap has levels ``eps_n = omega * n**theta`` for
``n = 1, 2, ...``.  At equilibrium every thermal quantity depends on the
product ``beta * omega`` and on ``theta`` only, so the functions here take a
:class:`ThermalPoint` and return dimensionless values:

* ``Z``  -- partition function,
* ``g``  -- mean energy in units of ``omega`` (``U = omega * g``),
* ``S``  -- von Neumann (Shannon) entropy of the Gibbs state.

Sums are truncated at ``truncation`` levels.  When the last retained level
still carries a relative weight above :data:`CONVERGENCE_RTOL` a
:class:`TruncationWarning` is issued.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

DEFAULT_TRUNCATION = 200
CONVERGENCE_RTOL = 1e-14
ENTROPY_TOL = 1e-12


class TruncationWarning(RuntimeWarning):
    """The truncated level sum has not converged."""


class BracketError(ValueError):
    """No inverse temperature reproduces the requested entropy."""


@dataclass(frozen=True)
class TrapShape:
    """Shape of the trapping potential, set by the spectral exponent ``theta``.

    ``theta = 1`` is the harmonic trap, ``theta = 2`` the infinite well and
    ``theta = 4/3`` the quartic potential.  The first-gap ratio
    ``gamma = eps_2 / eps_1 = 2**theta`` is always derived.
    """

    theta: float

    def __post_init__(self):
        if not (math.isfinite(self.theta) and self.theta > 0):
            raise ValueError(f"theta must be a positive finite number, got {self.theta!r}")

    @property
    def gamma(self) -> float:
        return 2.0 ** self.theta

    @classmethod
    def from_gamma(cls, gamma: float) -> "TrapShape":
        if not gamma > 1:
            raise ValueError(f"gamma must exceed 1, got {gamma!r}")
        return cls(math.log2(gamma))


@dataclass(frozen=True)
class SpectrumParams:
    omega: float
    shape: TrapShape
    truncation: int = DEFAULT_TRUNCATION

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega!r}")
        _check_truncation(self.truncation)

    def levels(self) -> np.ndarray:
        n = np.arange(1, self.truncation + 1, dtype=float)
        return self.omega * n ** self.shape.theta


@dataclass(frozen=True)
class ThermalPoint:
    beta_omega: float
    shape: TrapShape

    def __post_init__(self):
        if not (math.isfinite(self.beta_omega) and self.beta_omega > 0):
            raise ValueError(f"beta_omega must be positive and finite, got {self.beta_omega!r}")


class ThermalSums(NamedTuple):
    partition: float
    g: float
    entropy: float
    converged: bool


def _check_truncation(truncation):
    if int(truncation) != truncation or truncation < 2:
        raise ValueError(f"truncation must be an integer >= 2, got {truncation!r}")


def energy_level(params: SpectrumParams, n: int) -> float:
    """Energy of level ``n`` (counted from 1)."""
    if int(n) != n or n < 1:
        raise ValueError(f"level index must be a positive integer, got {n!r}")
    return params.omega * float(n) ** params.shape.theta


def thermal_sums(point: ThermalPoint, truncation: int = DEFAULT_TRUNCATION,
                 warn: bool = True) -> ThermalSums:
    """Evaluate ``Z``, ``g`` and ``S`` together from one set of Boltzmann weights.

    Weights are taken relative to the ground level, so the sums stay finite
    for large ``beta_omega``; ``Z`` itself may still underflow to zero there.
    """
    _check_truncation(truncation)
    n = np.arange(1, truncation + 1, dtype=float)
    gaps = n ** point.shape.theta - 1.0
    weights = np.exp(-point.beta_omega * gaps)
    reduced = weights.sum()
    g = 1.0 + float(gaps @ weights) / reduced
    log_z = -point.beta_omega + math.log(reduced)
    entropy = point.beta_omega * (g - 1.0) + math.log(reduced)
    converged = bool(weights[-1] / reduced < CONVERGENCE_RTOL)
    if warn and not converged:
        warnings.warn(
            f"level sum not converged at truncation={truncation} "
            f"(beta_omega={point.beta_omega}, theta={point.shape.theta})",
            TruncationWarning, stacklevel=3)
    return ThermalSums(math.exp(log_z), g, max(entropy, 0.0), converged)


def partition_function(point: ThermalPoint, truncation: int = DEFAULT_TRUNCATION,
                       warn: bool = True) -> float:
    return thermal_sums(point, truncation, warn).partition


def g_value(point: ThermalPoint, truncation: int = DEFAULT_TRUNCATION,
            warn: bool = True) -> float:
    """Mean energy in units of ``omega``; always ``>= 1``."""
    return thermal_sums(point, truncation, warn).g


def entropy(point: ThermalPoint, truncation: int = DEFAULT_TRUNCATION,
            warn: bool = True) -> float:
    """Gibbs entropy ``S = beta*omega*g + ln Z``."""
    return thermal_sums(point, truncation, warn).entropy


def populations(point: ThermalPoint, truncation: int = DEFAULT_TRUNCATION) -> np.ndarray:
    """Boltzmann occupation of levels ``1..truncation``."""
    _check_truncation(truncation)
    n = np.arange(1, truncation + 1, dtype=float)
    w = np.exp(-point.beta_omega * (n ** point.shape.theta - 1.0))
    return w / w.sum()


_LOG_TINY = math.log(np.finfo(float).tiny)


def adiabatic_match(start: ThermalPoint, to_shape: TrapShape,
                    truncation: int = DEFAULT_TRUNCATION,
                    tol: float = ENTROPY_TOL) -> ThermalPoint:
    """Find the thermal point of shape ``to_shape`` with the same entropy as ``start``.

    ``S(beta_omega)`` is strictly decreasing at fixed shape, so the root is
    bracketed by geometric expansion and then located with Brent's method.
    Raises :class:`BracketError` when the entropy is out of reach, e.g.
    above ``ln(truncation)``.
    """
    if to_shape == start.shape:
        return start
    target = entropy(start, truncation)

    def excess(log_bw):
        return entropy(ThermalPoint(math.exp(log_bw), to_shape), truncation, warn=False) - target

    lo, hi = math.log(start.beta_omega) - 1.0, math.log(start.beta_omega) + 1.0
    for _ in range(60):
        if lo < _LOG_TINY or excess(lo) > 0:
            break
        lo -= 2.0
    if lo < _LOG_TINY or not excess(lo) > 0:
        raise BracketError(f"entropy {target:.6g} exceeds what {truncation} levels can hold")
    for _ in range(60):
        if excess(hi) < 0:
            break
        hi += 1.0
    else:
        raise BracketError(f"entropy {target:.6g} too small to resolve in double precision")

    log_bw = brentq(excess, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    if abs(excess(log_bw)) > tol:
        raise BracketError(f"entropy mismatch {excess(log_bw):.3g} above tolerance {tol:.1g}")
    return ThermalPoint(math.exp(log_bw), to_shape)
