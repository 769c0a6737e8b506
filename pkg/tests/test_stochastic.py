import math

import numpy as np
import pytest

from qotto import cycle as cy
from qotto import stochastic as stc
from qotto import two_level as tl
from qotto.stochastic import DiscreteDistribution
from qotto.two_level import CycleConfig

from conftest import random_config


def direct_work_atoms(config):
    """Unmerged (w, p) over the four index pairs, straight from the level energies."""
    e = tl.relax_endpoints(config)
    eh = [config.omega_h, config.gamma_h * config.omega_h]
    ec = [config.omega_c, config.gamma_c * config.omega_c]
    pb = [1 - e.excited_B(), e.excited_B()]
    pa = [1 - e.excited_A(), e.excited_A()]
    return [(eh[n] - ec[n] + ec[m] - eh[m], pb[n] * pa[m]) for n in (0, 1) for m in (0, 1)]


class TestWorkPmf:
    def test_zero_temperature_single_atom(self):
        c = CycleConfig.build(0.3, 0.9, 2.0, 3.0, 1e4, 1e3)
        pmf = stc.work_pmf(c)
        assert pmf.atoms() == [(0.0, 1.0)]

    def test_equal_shapes_three_atoms(self):
        c = CycleConfig.build(0.4, 0.8, 2.0, 2.0, 3.0, 1.0, tau_c=0.5, tau_h=0.9)
        pmf = stc.work_pmf(c)
        assert len(pmf) == 3
        assert pmf.values == pytest.approx([-0.4, 0.0, 0.4], abs=1e-15)

    def test_equal_shapes_general_gamma(self):
        c = CycleConfig.build(0.4, 0.8, 3.0, 3.0, 3.0, 1.0)
        assert stc.work_pmf(c).values == pytest.approx([-0.8, 0.0, 0.8], abs=1e-15)

    def test_support_is_image_of_level_pairs(self, rng):
        for _ in range(200):
            c = random_config(rng)
            allowed = np.array([w for w, _ in direct_work_atoms(c)])
            pmf = stc.work_pmf(c)
            assert len(pmf) <= 4
            for v in pmf.values:
                assert np.min(np.abs(allowed - v)) <= 1e-12 * np.max(np.abs(allowed))

    def test_normalized(self, rng):
        for _ in range(500):
            pmf = stc.work_pmf(random_config(rng))
            assert abs(pmf.probs.sum() - 1.0) <= 1e-14
            assert np.all(pmf.probs >= 0)

    def test_moments_match_closed_forms(self, rng):
        for _ in range(1000):
            c = random_config(rng)
            mean, var = stc.moments(stc.work_pmf(c))
            assert mean == pytest.approx(cy.mean_work(c), rel=1e-12, abs=1e-12)
            assert var == pytest.approx(cy.work_variance(c), rel=1e-12, abs=1e-12)

    def test_quasi_static_moments(self, rng):
        for _ in range(1000):
            c = random_config(rng, quasi_static=True)
            mean, var = stc.moments(stc.work_pmf(c))
            g_c, g_h = c.g_eq_c(), c.g_eq_h()
            args = (c.omega_c, c.omega_h, c.gamma_c, c.gamma_h, g_c, g_h)
            assert mean == pytest.approx(cy.quasi_static_mean_work(*args), rel=1e-12, abs=1e-12)
            assert var == pytest.approx(cy.quasi_static_work_variance(*args), rel=1e-12, abs=1e-12)

    def test_fig2b_config(self, fig2b):
        pmf = stc.work_pmf(fig2b)
        atoms = direct_work_atoms(fig2b)
        mean = math.fsum(w * p for w, p in atoms)
        var = math.fsum(p * (w - mean) ** 2 for w, p in atoms)
        assert pmf.mean == pytest.approx(mean, abs=1e-12)
        assert pmf.variance == pytest.approx(var, abs=1e-12)

    def test_generic_levels(self):
        pmf = stc.work_pmf_from_populations([1.0, 3.0, 6.0], [0.5, 1.0, 2.0], [0.7, 0.2, 0.1], [0.6, 0.3, 0.1])
        assert abs(pmf.probs.sum() - 1.0) < 1e-15
        assert 0.0 in pmf.values


class TestMerging:
    def test_merges_close_values(self):
        v, p = stc.merge_atoms([1.0, 1.0 + 1e-14, -1.0], [0.25, 0.25, 0.5])
        assert list(v) == pytest.approx([-1.0, 1.0])
        assert list(p) == [0.5, 0.5]

    def test_drops_null_weights(self):
        v, p = stc.merge_atoms([0.0, 2.0], [1.0, 0.0])
        assert list(v) == [0.0] and list(p) == [1.0]


class TestMoments:
    def test_single_atom(self):
        assert stc.moments(DiscreteDistribution(np.array([0.7]), np.array([1.0]))) == (0.7, 0.0)

    def test_symmetric_pair(self):
        mean, var = stc.moments(DiscreteDistribution(np.array([-2.0, 2.0]), np.array([0.5, 0.5])))
        assert mean == 0.0 and var == 4.0


class TestHeatPmf:
    def test_quasi_static_mean(self, rng):
        for _ in range(200):
            c = random_config(rng, quasi_static=True)
            e = tl.relax_endpoints(c)
            pmf = stc.heat_pmf(c, e)
            assert pmf.mean == pytest.approx(c.omega_h * (c.g_eq_h() - e.g_A), rel=1e-12, abs=1e-13)
            assert pmf.mean == pytest.approx(cy.mean_heat_hot(c, e), rel=1e-12, abs=1e-13)
            assert abs(pmf.probs.sum() - 1.0) <= 1e-14

    def test_atoms(self):
        c = CycleConfig.build(0.3, 0.9, 2.0, 2.5, 2.0, 1.0)
        pmf = stc.heat_pmf(c)
        assert pmf.values == pytest.approx([-1.5 * 0.9, 0.0, 1.5 * 0.9], rel=1e-15)

    def test_cold_hot_bath_gives_zero(self):
        c = CycleConfig.build(0.3, 0.9, 2.0, 2.5, 1e4, 1e4)
        assert stc.heat_pmf(c).atoms() == [(0.0, 1.0)]

    def test_finite_contact_needs_kernel(self):
        c = CycleConfig.build(0.3, 0.9, 2.0, 2.5, 2.0, 1.0, tau_c=1.0, tau_h=1.0)
        with pytest.raises(ValueError):
            stc.heat_pmf(c)

    def test_custom_kernel(self):
        c = CycleConfig.build(0.3, 0.9, 2.0, 2.5, 2.0, 1.0, tau_c=1.0, tau_h=1.0)
        pmf = stc.heat_pmf(c, kernel=np.eye(2))
        assert pmf.atoms() == [(0.0, 1.0)]

    @pytest.mark.parametrize("kernel", [np.ones((2, 2)), np.array([[1.2, -0.2], [0.0, 1.0]]), np.eye(3)])
    def test_rejects_bad_kernel(self, kernel):
        with pytest.raises(ValueError):
            stc.heat_pmf(CycleConfig.build(0.3, 0.9, 2.0, 2.5, 2.0, 1.0), kernel=kernel)


class TestSampler:
    def test_single_draw_is_an_atom(self, fig2b):
        pmf = stc.work_pmf(fig2b)
        s = stc.sample_work(pmf, 1, seed=3)
        assert s.n == 1
        assert s.samples[0] in pmf.values

    def test_deterministic(self, fig2b):
        pmf = stc.work_pmf(fig2b)
        a = stc.sample_work(pmf, 10_000, seed=11, shards=4)
        b = stc.sample_work(pmf, 10_000, seed=11, shards=4)
        assert np.array_equal(a.counts, b.counts)
        assert np.array_equal(a.samples, b.samples)

    def test_shards_cover_all_draws(self, fig2b):
        s = stc.sample_work(stc.work_pmf(fig2b), 1001, seed=0, shards=7)
        assert s.n == 1001 and len(s.samples) == 1001

    def test_mean_within_five_sigma(self, fig2b):
        pmf = stc.work_pmf(fig2b)
        n = 1_000_000
        s = stc.sample_work(pmf, n, seed=20240917)
        assert abs(s.mean - pmf.mean) < 5 * stc.standard_error(pmf, n)
        assert stc.chi_square_pvalue(s, pmf) > 1e-4

    def test_rejects_bad_sizes(self, fig2b):
        pmf = stc.work_pmf(fig2b)
        with pytest.raises(ValueError):
            stc.sample_work(pmf, 0, seed=1)
        with pytest.raises(ValueError):
            stc.sample_work(pmf, 10, seed=1, shards=0)

    def test_histogram_rows(self, fig2b):
        pmf = stc.work_pmf(fig2b)
        s = stc.sample_work(pmf, 100, seed=1)
        rows = stc.histogram_rows(pmf, s)
        assert len(rows) == len(pmf)
        assert sum(int(r[2]) for r in rows) == 100
        assert len(stc.histogram_rows(pmf)[0]) == 2
