"""Finite-time quantum Otto engine with adiabatic trap deformation."""

from .cycle import CycleMetrics, Mode, classify_mode, evaluate
from .optimizer import OptimizationError, emp, emp_analytic, optimize_power
from .spectrum import ThermalPoint, TrapShape, adiabatic_match, thermal_sums
from .stochastic import sample_work, work_pmf
from .two_level import BathContact, CycleConfig, relax_endpoints

__all__ = [
    "BathContact", "CycleConfig", "CycleMetrics", "Mode", "OptimizationError", "ThermalPoint",
    "TrapShape", "adiabatic_match", "classify_mode", "emp", "emp_analytic", "evaluate",
    "optimize_power", "relax_endpoints", "sample_work", "thermal_sums", "work_pmf",
]
