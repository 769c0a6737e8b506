"""Two-time-measurement statistics of work and heat.

Energy is measured at the end of each contact.  If the system is found in
level ``n`` at B and in level ``m`` at D (equivalently A, since adiabats do
not move populations) the cycle delivers

    w = (eps_n^h - eps_n^c) - (eps_m^h - eps_m^c)

with probability ``p_{n,B} * p_{m,A}``.  The resulting distributions are
finite, so moments are exact weighted sums; :func:`moments` is the
brute-force reference for the closed forms in :mod:`qotto.cycle`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import stats

from .csvio import format_number
from .two_level import CycleConfig, CycleEndpoints, populations, relax_endpoints

MERGE_RTOL = 1e-12


@dataclass(frozen=True)
class DiscreteDistribution:
    values: np.ndarray
    probs: np.ndarray

    def __len__(self):
        return len(self.values)

    def atoms(self) -> list[tuple[float, float]]:
        return [(float(v), float(p)) for v, p in zip(self.values, self.probs)]

    @property
    def mean(self) -> float:
        return moments(self)[0]

    @property
    def variance(self) -> float:
        return moments(self)[1]


class WorkDistribution(DiscreteDistribution):
    """Distribution of the stochastic work output per cycle."""


class HeatDistribution(DiscreteDistribution):
    """Distribution of the stochastic heat taken from the hot bath."""


def merge_atoms(values, probs, rtol=MERGE_RTOL):
    """Sort atoms, merge values closer than ``rtol * max|value|`` and drop null weights."""
    values = np.asarray(values, dtype=float).ravel()
    probs = np.asarray(probs, dtype=float).ravel()
    keep = probs > 0
    values, probs = values[keep], probs[keep]
    order = np.argsort(values, kind="stable")
    values, probs = values[order], probs[order]
    scale = np.max(np.abs(values)) if values.size else 0.0
    atol = rtol * scale
    out_v, out_p = [], []
    for v, p in zip(values, probs):
        if out_v and v - out_v[-1][0] <= atol:
            out_v[-1].append(v)
            out_p[-1] += p
        else:
            out_v.append([v])
            out_p.append(p)
    merged_v = np.array([0.5 * (c[0] + c[-1]) for c in out_v])
    return merged_v, np.array(out_p)


def work_pmf_from_populations(eps_h, eps_c, p_b, p_a) -> WorkDistribution:
    """Work distribution for arbitrary level sets and endpoint populations."""
    a = np.asarray(eps_h, float) - np.asarray(eps_c, float)
    w = a[:, None] - a[None, :]
    p = np.asarray(p_b, float)[:, None] * np.asarray(p_a, float)[None, :]
    return WorkDistribution(*merge_atoms(w, p))


def _two_level_levels(config):
    eps_h = config.omega_h * np.array([1.0, config.gamma_h])
    eps_c = config.omega_c * np.array([1.0, config.gamma_c])
    return eps_h, eps_c


def work_pmf(config: CycleConfig, endpoints: Optional[CycleEndpoints] = None) -> WorkDistribution:
    e = endpoints or relax_endpoints(config)
    eps_h, eps_c = _two_level_levels(config)
    pe_b, pe_a = e.excited_B(), e.excited_A()
    return work_pmf_from_populations(eps_h, eps_c, [1.0 - pe_b, pe_b], [1.0 - pe_a, pe_a])


def quasi_static_kernel(config: CycleConfig) -> np.ndarray:
    """Transition matrix ``K[m, n]`` of a fully thermalizing hot contact."""
    p_g, p_e = populations(config.hot.beta * config.omega_h, config.gamma_h)
    return np.tile([p_g, p_e], (2, 1))


def heat_pmf(config: CycleConfig, endpoints: Optional[CycleEndpoints] = None,
             kernel=None) -> HeatDistribution:
    """Distribution of the heat absorbed during the hot contact.

    ``kernel[m, n]`` is the probability to end the contact in ``n`` having
    started in ``m``.  Only the fully thermalizing kernel is known in closed
    form; for a finite contact time the caller has to supply one.
    """
    e = endpoints or relax_endpoints(config)
    if kernel is None:
        if config.x != 0.0:
            raise ValueError("finite hot contact: pass an explicit transition kernel")
        kernel = quasi_static_kernel(config)
    kernel = np.asarray(kernel, dtype=float)
    if kernel.shape != (2, 2) or np.any(kernel < 0) or not np.allclose(kernel.sum(axis=1), 1.0, atol=1e-14):
        raise ValueError("kernel must be a 2x2 row-stochastic matrix")
    eps_h, _ = _two_level_levels(config)
    pe_a = e.excited_A()
    p_a = np.array([1.0 - pe_a, pe_a])
    q = eps_h[None, :] - eps_h[:, None]
    return HeatDistribution(*merge_atoms(q, kernel * p_a[:, None]))


def moments(pmf: DiscreteDistribution) -> tuple[float, float]:
    """Exact mean and variance (central second moment) of a finite distribution."""
    mean = float(pmf.probs @ pmf.values)
    var = float(pmf.probs @ (pmf.values - mean) ** 2)
    return mean, var


@dataclass(frozen=True)
class WorkSample:
    values: np.ndarray
    counts: np.ndarray
    samples: np.ndarray

    @property
    def n(self) -> int:
        return int(self.counts.sum())

    @property
    def mean(self) -> float:
        return float(self.samples.mean())

    @property
    def variance(self) -> float:
        return float(self.samples.var())

    def frequencies(self) -> np.ndarray:
        return self.counts / self.n


def sample_work(pmf: DiscreteDistribution, n_samples: int, seed: int, shards: int = 1) -> WorkSample:
    """Draw ``n_samples`` i.i.d. cycles from ``pmf``.

    The stream is split over ``shards`` child generators spawned from
    ``seed``; shard outputs are concatenated in order, so the result depends
    only on ``(seed, n_samples, shards)``.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    if shards < 1:
        raise ValueError("shards must be >= 1")
    children = np.random.SeedSequence(seed).spawn(shards)
    sizes = [n_samples // shards + (i < n_samples % shards) for i in range(shards)]
    idx = np.concatenate([
        np.random.default_rng(ss).choice(len(pmf.values), size=k, p=pmf.probs)
        for ss, k in zip(children, sizes)
    ])
    counts = np.bincount(idx, minlength=len(pmf.values))
    return WorkSample(values=pmf.values.copy(), counts=counts, samples=pmf.values[idx])


def chi_square_pvalue(sample: WorkSample, pmf: DiscreteDistribution) -> float:
    """Goodness of fit of the sampled counts against the exact weights."""
    if len(pmf.values) < 2:
        return 1.0
    expected = pmf.probs / pmf.probs.sum() * sample.n
    return float(stats.chisquare(sample.counts, expected).pvalue)


def standard_error(pmf: DiscreteDistribution, n_samples: int) -> float:
    return math.sqrt(pmf.variance / n_samples)


def histogram_rows(pmf: DiscreteDistribution, sample: Optional[WorkSample] = None,
                   precision: int = 12) -> list[list[str]]:
    """Rows for CSV export: ``value, probability`` plus ``count, frequency`` if sampled."""
    rows = []
    for i, (v, p) in enumerate(zip(pmf.values, pmf.probs)):
        row = [format_number(v, precision), format_number(p, precision)]
        if sample is not None:
            row += [str(int(sample.counts[i])), format_number(sample.counts[i] / sample.n, precision)]
        rows.append(row)
    return rows
