import numpy as np
import pytest

from eml import kernels
from helpers import oracle_ks_d, oracle_revenue

needs_numba = pytest.mark.skipif(not kernels.HAVE_NUMBA,
                                 reason="numba backend disabled")


def test_backend_report():
    assert kernels.backend() in ("numba", "numpy")
    assert (kernels.backend() == "numba") == kernels.HAVE_NUMBA


def test_buyer_choice_codes(rng):
    u = rng.random(1000)
    codes = kernels.buyer_choices(u, 0.15, 0.2, 0.6, 0.7)
    assert set(np.unique(codes)) <= {kernels.NONE, kernels.ON_DEMAND,
                                     kernels.SHARING}
    # thresholds 0.25 and 0.5 partition the choices
    assert np.all(codes[u <= 0.25 - 1e-9] == kernels.NONE)
    assert np.all(codes[(u > 0.25 + 1e-9) & (u < 0.5 - 1e-9)]
                  == kernels.ON_DEMAND)
    assert np.all(codes[u > 0.5 + 1e-9] == kernels.SHARING)


@needs_numba
def test_buyer_choices_backends_agree(rng):
    for _ in range(20):
        u = rng.random(512)
        po, pr = rng.uniform(0, 1.2, 2)
        qo = rng.uniform(0.05, 1.0)
        qs = rng.uniform(0.0, 1.0)
        a = kernels.buyer_choices_numpy(u, po, pr, qo, qs)
        b = kernels._buyer_choices_jit(u, po, pr, qo, qs)
        assert np.array_equal(a, b)


def test_grid_search_matches_mass_oracle(rng):
    for _ in range(10):
        qo = rng.uniform(0.1, 1.0)
        qs = rng.uniform(0.0, 1.0)
        delta = rng.uniform(0.05, 0.95)
        rev, po, pr = kernels.best_revenue_grid(qo, qs, delta, 50.0, step=5e-3)
        assert rev == pytest.approx(
            float(oracle_revenue(po, pr, qo, qs, delta, 50)), abs=1e-9)


@needs_numba
def test_grid_search_backends_agree(rng):
    cases = [(0.4, 0.2, 0.2), (0.2, 0.7, 0.2), (0.9, 0.5, 0.8),
             (0.5, 0.5, 0.3)]
    for _ in range(4):
        cases.append((rng.uniform(0.1, 1), rng.uniform(0, 1),
                      rng.uniform(0.05, 0.95)))
    for qo, qs, delta in cases:
        for filt in (kernels.ANY_REGION, kernels.R1_ONLY, kernels.R2_ONLY,
                     kernels.R3_ONLY):
            if filt != kernels.ANY_REGION and qs == qo:
                continue
            a = kernels.best_revenue_grid_numpy(qo, qs, delta, 50.0,
                                                step=5e-3, region_filter=filt)
            b = kernels._best_revenue_grid_jit(qo, qs, delta, 50.0, 5e-3, 1.0,
                                               filt)
            assert a == pytest.approx(tuple(map(float, b)), abs=1e-12)


def test_ks_statistic_small_cases():
    assert kernels.ks_statistic([0.1, 0.2, 0.3], [0.1, 0.2, 0.3]) == 0.0
    assert kernels.ks_statistic([0.1, 0.2, 0.3], [0.6, 0.7, 0.8]) == 1.0
    # one shared point out of two
    assert kernels.ks_statistic([0.1, 0.5], [0.5, 0.9]) == pytest.approx(0.5)


def test_ks_statistic_matches_reference(rng):
    for _ in range(50):
        n, m = rng.integers(5, 300, 2)
        a = rng.random(n)
        b = rng.normal(0.4, 0.3, m)
        assert kernels.ks_statistic(a, b) == \
            pytest.approx(oracle_ks_d(a, b), abs=1e-12)


@needs_numba
def test_ks_backends_agree(rng):
    for _ in range(20):
        a = rng.random(rng.integers(3, 200))
        b = rng.random(rng.integers(3, 200)) + rng.uniform(-0.2, 0.2)
        d_np = kernels.ks_statistic_numpy(a, b)
        d_jit = float(kernels._ks_statistic_jit(np.sort(a), np.sort(b)))
        assert d_np == pytest.approx(d_jit, abs=1e-12)


def test_numpy_fallback_env_flag():
    import os
    import subprocess
    import sys

    out = subprocess.run(
        [sys.executable, "-c",
         "from eml import kernels; print(kernels.backend())"],
        capture_output=True, text=True,
        env={**os.environ, "EML_NO_NUMBA": "1"})
    assert out.stdout.strip() == "numpy"
