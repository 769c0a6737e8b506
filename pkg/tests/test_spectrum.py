import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qotto import spectrum as sp
from qotto import two_level as tl
from qotto.spectrum import SpectrumParams, ThermalPoint, TrapShape

HARMONIC, QUARTIC, BOX = TrapShape(1.0), TrapShape(4.0 / 3.0), TrapShape(2.0)


def brute_thermal(beta_omega, theta, n_max):
    """Direct Gibbs sums with -sum p ln p for the entropy."""
    e = np.arange(1, n_max + 1, dtype=float) ** theta
    w = np.exp(-beta_omega * e)
    z = math.fsum(w)
    p = w / z
    p = p[p > 0]
    return z, math.fsum(e[: len(w)] * w) / z, -math.fsum(p * np.log(p))


class TestTrapShape:
    def test_gamma_is_derived(self):
        assert TrapShape(2.0).gamma == 4.0
        assert TrapShape.from_gamma(1.78).gamma == pytest.approx(1.78, rel=1e-15)

    @pytest.mark.parametrize("theta", [0.0, -1.0, math.inf, math.nan])
    def test_rejects_bad_theta(self, theta):
        with pytest.raises(ValueError):
            TrapShape(theta)

    def test_rejects_gamma_not_above_one(self):
        with pytest.raises(ValueError):
            TrapShape.from_gamma(1.0)


class TestEnergyLevel:
    def test_harmonic(self):
        assert sp.energy_level(SpectrumParams(1.0, HARMONIC), 3) == 3.0

    def test_box(self):
        assert sp.energy_level(SpectrumParams(0.5, BOX), 2) == 2.0

    def test_quartic(self):
        assert sp.energy_level(SpectrumParams(1.0, QUARTIC), 2) == pytest.approx(2.519842099789746, rel=1e-15)

    @pytest.mark.parametrize("n", [0, -2, 1.5])
    def test_rejects_bad_index(self, n):
        with pytest.raises(ValueError):
            sp.energy_level(SpectrumParams(1.0, HARMONIC), n)

    def test_levels_strictly_increase(self):
        levels = SpectrumParams(0.7, QUARTIC, truncation=50).levels()
        assert levels[0] == 0.7
        assert np.all(np.diff(levels) > 0)


class TestThermalSums:
    def test_two_term_partition(self):
        z = sp.partition_function(ThermalPoint(1.0, HARMONIC), truncation=2, warn=False)
        assert z == pytest.approx(0.5032147244080550, rel=1e-14)

    def test_ground_state_dominance(self):
        for theta in (1.0, 4 / 3, 2.0):
            bw = 40.0
            z = sp.partition_function(ThermalPoint(bw, TrapShape(theta)))
            assert z / math.exp(-bw) == pytest.approx(1.0, abs=1e-15)

    def test_box_partition_against_long_sum(self):
        # frozen from a 40-digit sum over 10^4 levels
        z = sp.partition_function(ThermalPoint(0.5, BOX), truncation=50)
        assert z == pytest.approx(0.7533141440214528, abs=1e-12)

    def test_two_level_g(self):
        g = sp.g_value(ThermalPoint(1.0, HARMONIC), truncation=2, warn=False)
        assert g == pytest.approx(1.2689414213699951, rel=1e-14)

    def test_g_ground_state_limit(self):
        assert sp.g_value(ThermalPoint(60.0, BOX)) == 1.0

    def test_harmonic_g_closed_form(self):
        g = sp.g_value(ThermalPoint(0.1, HARMONIC), truncation=500)
        assert g == pytest.approx(1.0 / (1.0 - math.exp(-0.1)), abs=1e-10)

    def test_two_level_entropy_is_binary_entropy(self):
        s = sp.entropy(ThermalPoint(1.0, HARMONIC), truncation=2, warn=False)
        p = math.exp(-1) / (1 + math.exp(-1))
        assert s == pytest.approx(-p * math.log(p) - (1 - p) * math.log(1 - p), abs=1e-14)
        assert s == pytest.approx(0.5822031088882180, abs=1e-14)

    def test_entropy_vanishes_at_low_temperature(self):
        assert sp.entropy(ThermalPoint(200.0, BOX)) == pytest.approx(0.0, abs=1e-300)

    def test_entropy_decreases(self):
        assert sp.entropy(ThermalPoint(0.8, HARMONIC)) > sp.entropy(ThermalPoint(1.2, HARMONIC))

    def test_unconverged_sum_warns(self):
        with pytest.warns(sp.TruncationWarning):
            sp.partition_function(ThermalPoint(0.01, HARMONIC), truncation=10)

    def test_converged_sum_is_silent(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            assert sp.thermal_sums(ThermalPoint(1.0, BOX)).converged

    def test_rejects_short_truncation(self):
        with pytest.raises(ValueError):
            sp.partition_function(ThermalPoint(1.0, BOX), truncation=1)

    @pytest.mark.parametrize("theta", [1.0, 4 / 3, 2.0])
    def test_monotone_in_beta_omega(self, theta):
        grid = np.linspace(0.1, 10.0, 60)
        sums = [sp.thermal_sums(ThermalPoint(b, TrapShape(theta)), 400) for b in grid]
        for k in ("partition", "g", "entropy"):
            vals = np.array([getattr(s, k) for s in sums])
            assert np.all(np.diff(vals) < 0), k

    @pytest.mark.parametrize("bw,theta", [(0.3, 1.0), (1.0, 4 / 3), (2.5, 2.0), (0.1, 2.0)])
    def test_against_brute_force(self, bw, theta):
        z, g, s = brute_thermal(bw, theta, 400)
        got = sp.thermal_sums(ThermalPoint(bw, TrapShape(theta)), 400)
        assert got.partition == pytest.approx(z, rel=1e-13)
        assert got.g == pytest.approx(g, rel=1e-13)
        assert got.entropy == pytest.approx(s, abs=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(bw=st.floats(0.05, 30.0), gamma=st.floats(1.05, 8.0))
    def test_two_level_truncation_matches_closed_form(self, bw, gamma):
        shape = TrapShape.from_gamma(gamma)
        g = sp.g_value(ThermalPoint(bw, shape), truncation=2, warn=False)
        assert g == pytest.approx(tl.eq_g(bw, shape.gamma), rel=1e-14)


def bisect_entropy(target, theta, n_max, lo=1e-6, hi=200.0):
    """Plain bisection on the decreasing map beta*omega -> S."""
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if brute_thermal(mid, theta, n_max)[2] > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@pytest.mark.filterwarnings("ignore::qotto.spectrum.TruncationWarning")
class TestAdiabaticMatch:
    def test_identity(self):
        start = ThermalPoint(1.0, HARMONIC)
        assert sp.adiabatic_match(start, HARMONIC) == start

    def test_harmonic_to_box(self):
        start = ThermalPoint(0.5, HARMONIC)
        out = sp.adiabatic_match(start, BOX, truncation=200)
        assert out.shape == BOX
        assert sp.entropy(out, 200) == pytest.approx(sp.entropy(start, 200), abs=1e-10)
        assert out.beta_omega == pytest.approx(bisect_entropy(sp.entropy(start, 200), 2.0, 200), rel=1e-9)

    @pytest.mark.parametrize("bw,gh,gc", [(1.7, 1.78, 2.0), (0.4, 4.0, 2.0), (3.0, 2.0, 3.35)])
    def test_two_level_preserves_population(self, bw, gh, gc):
        hot, cold = TrapShape.from_gamma(gh), TrapShape.from_gamma(gc)
        out = sp.adiabatic_match(ThermalPoint(bw, hot), cold, truncation=2)
        assert (gh - 1) * bw == pytest.approx((gc - 1) * out.beta_omega, rel=1e-10)

    @pytest.mark.parametrize("bw,ta,tb", [(0.5, 1.0, 2.0), (2.0, 4 / 3, 1.0), (0.2, 2.0, 4 / 3)])
    def test_involution(self, bw, ta, tb):
        a, b = TrapShape(ta), TrapShape(tb)
        there = sp.adiabatic_match(ThermalPoint(bw, a), b)
        back = sp.adiabatic_match(there, a)
        # entropy tolerance 1e-12 mapped through |dS/d(beta omega)| of order 1
        assert back.beta_omega == pytest.approx(bw, abs=10 * sp.ENTROPY_TOL / 0.01)
        assert sp.entropy(back) == pytest.approx(sp.entropy(ThermalPoint(bw, a)), abs=10 * sp.ENTROPY_TOL)

    def test_unreachable_entropy(self):
        # entropy equal to ln 2 in double precision: no finite temperature reaches it
        with pytest.raises(sp.BracketError):
            sp.adiabatic_match(ThermalPoint(1e-300, HARMONIC), BOX, truncation=2)
