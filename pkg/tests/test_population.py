import numpy as np
import pytest

from eml.equilibrium import classify_any, region_revenue_uniform
from eml.market import (BuyerChoice, DistributionSpec, MarketParams, Prices,
                        Supplies)
from eml.population import (ExperimentSpec, figure_experiments,
                            run_experiment, sample_population,
                            simulate_market)

STUDY_PRICES = Prices(0.15, 0.2)


def study_like(n_buyers=1000, n_resellers=1000, **kw):
    return MarketParams(q_o=0.6, delta=0.2, a=2.0, n_buyers=n_buyers,
                        n_resellers=n_resellers, **kw)


class TestSampling:
    def test_seed_determinism(self):
        params = study_like()
        a = sample_population(params, seed=7)
        b = sample_population(params, seed=7)
        assert np.array_equal(a.buyers_u, b.buyers_u)
        assert np.array_equal(a.resellers_g, b.resellers_g)
        assert np.array_equal(a.buyers_w, b.buyers_w)

    def test_different_seeds_differ(self):
        params = study_like()
        a = sample_population(params, seed=7)
        b = sample_population(params, seed=8)
        assert not np.array_equal(a.buyers_u, b.buyers_u)

    def test_beta_type_moments(self):
        params = study_like(n_buyers=100_000,
                            dist_u=DistributionSpec.beta22())
        pop = sample_population(params, seed=3)
        assert abs(pop.buyers_u.mean() - 0.5) < 0.01
        assert abs(pop.buyers_u.var() - 0.05) < 0.005

    def test_degenerate_usage_all_ones(self):
        pop = sample_population(study_like(), seed=1)
        assert np.all(pop.buyers_w == 1.0)
        assert np.all(pop.resellers_w == 1.0)


class TestSimulate:
    def test_choice_fractions_at_study_point(self):
        params = study_like(n_buyers=100_000)
        pop = sample_population(params, seed=11)
        out = simulate_market(pop, STUDY_PRICES, params, q_s_override=0.7)
        frac = {c: out.counts[c] / params.n_buyers for c in BuyerChoice}
        assert frac[BuyerChoice.SHARING] == pytest.approx(0.50, abs=0.01)
        assert frac[BuyerChoice.ON_DEMAND] == pytest.approx(0.25, abs=0.01)
        assert frac[BuyerChoice.NO_PURCHASE] == pytest.approx(0.25, abs=0.01)

    def test_counts_conserved(self, rng):
        for _ in range(10):
            params = study_like(n_buyers=int(rng.integers(10, 500)),
                                n_resellers=int(rng.integers(10, 500)))
            pop = sample_population(params, seed=int(rng.integers(1 << 30)))
            prices = Prices(float(rng.uniform(0, 1)), float(rng.uniform(0, 1)))
            out = simulate_market(pop, prices, params)
            assert sum(out.counts.values()) == params.n_buyers
            assert 0 <= out.n_sell <= params.n_resellers

    def test_zero_resale_price_kills_sharing(self):
        params = study_like()
        pop = sample_population(params, seed=5)
        out = simulate_market(pop, Prices(0.15, 0.0), params)
        assert out.n_sell == 0
        assert out.q_s_realized == 0.0
        assert out.counts[BuyerChoice.SHARING] == 0

    def test_revenue_matches_region_formula(self):
        params = study_like(n_buyers=100_000)
        pop = sample_population(params, seed=23)
        out = simulate_market(pop, STUDY_PRICES, params, q_s_override=0.7)
        analytic = region_revenue_uniform(
            classify_any(STUDY_PRICES, Supplies(0.6, 0.7)), STUDY_PRICES,
            Supplies(0.6, 0.7), 0.2, params.n_buyers)
        assert abs(out.revenue - analytic) / max(analytic, 1) < 0.01

    def test_usage_scales_revenue_exactly(self):
        half = study_like(dist_usage=DistributionSpec.degenerate(0.5))
        full = study_like()
        out_h = simulate_market(sample_population(half, seed=9), STUDY_PRICES,
                                half, q_s_override=0.7)
        out_f = simulate_market(sample_population(full, seed=9), STUDY_PRICES,
                                full, q_s_override=0.7)
        assert out_h.revenue == 0.5 * out_f.revenue
        assert out_h.counts == out_f.counts

    def test_realized_supply_uses_seller_usage(self):
        params = study_like(n_resellers=50_000)
        pop = sample_population(params, seed=13)
        out = simulate_market(pop, STUDY_PRICES, params)
        # sellers are the g < 0.16 resellers; w = 1 so the proportion
        # converges to that fraction
        expect = params.a * np.log1p(out.n_sell / params.n_resellers)
        assert out.q_s_realized == pytest.approx(expect, abs=1e-12)
        assert out.n_sell / params.n_resellers == pytest.approx(0.16,
                                                                abs=0.01)


class TestExperiments:
    def test_rows_deterministic(self):
        spec = ExperimentSpec("4a", "q_o", [0.2, 0.5],
                              MarketParams(q_o=0.5, n_buyers=50), reps=3,
                              seed=5)
        a = run_experiment(spec)
        b = run_experiment(spec)
        assert a == b

    def test_row_shape(self):
        spec = ExperimentSpec("4a", "q_o", [0.3], MarketParams(q_o=0.5,
                                                               n_buyers=50),
                              reps=4, seed=0)
        (row,) = run_experiment(spec)
        assert row.experiment == "4a" and row.axis == "q_o"
        assert row.region in ("R1", "R2", "R3", "R4")
        assert row.reps == 4 and row.stderr >= 0.0
        assert abs(row.mean - row.revenue) < max(6 * row.stderr, 0.5)

    def test_single_rep_has_zero_stderr(self):
        spec = ExperimentSpec("4a", "q_o", [0.3], MarketParams(q_o=0.5,
                                                               n_buyers=50),
                              reps=1, seed=0)
        (row,) = run_experiment(spec)
        assert row.stderr == 0.0

    def test_figure_catalog(self):
        specs = figure_experiments("4a")
        assert len(specs) == 1 and specs[0].axis == "q_o"
        assert specs[0].params.dist_u.kind == "uniform"
        specs = figure_experiments("4b")
        assert specs[0].params.dist_u.kind == "beta"
        specs = figure_experiments("5c")
        assert specs[0].axis == "delta" and specs[0].params.q_o == 0.2
        specs = figure_experiments("5a")
        assert len(specs) > 1  # one sweep per commission level
        specs = figure_experiments("6a")
        assert specs[0].mode == "fixed-prices" and specs[0].p_r_fixed == 0.5

    def test_unknown_figure_rejected(self):
        with pytest.raises(ValueError):
            figure_experiments("9z")
