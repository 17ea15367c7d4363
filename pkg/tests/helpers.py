"""Independent reference implementations used by the tests.

Revenue here is computed from best-response threshold masses, deliberately
not from the per-region closed forms the solver uses, so oracle and
implementation stay independent. Same for the KS helpers: plain numpy,
no imports from the package under test.
"""

import numpy as np

from eml.market import (BuyerChoice, Prices, ResellerChoice,
                        buyer_best_response, reseller_best_response, Supplies)
from eml.records import BuyerRecord, ResellerRecord, format_record

STUDY = dict(q_o=0.6, q_s=0.7, p_o=0.15, p_r=0.2, delta=0.2)


def oracle_masses(po, pr, qo, qs):
    """Uniform[0,1] buyer masses (on_demand, sharing); po may be an array.

    Tie rules: zero best payoff buys nothing, pool ties go on-demand.
    """
    po = np.asarray(po, dtype=float)
    to = po / qo
    ts = pr / qs if qs > 0 else np.inf
    if qs > qo:
        t1 = (pr - po) / (qs - qo)
        mass_o = np.clip(np.minimum(t1, 1.0) - np.clip(to, 0.0, 1.0), 0.0, 1.0)
        mass_s = 1.0 - np.clip(np.maximum(ts, t1), 0.0, 1.0)
    elif qs < qo:
        t1 = (po - pr) / (qo - qs)
        mass_o = 1.0 - np.clip(np.maximum(to, t1), 0.0, 1.0)
        mass_s = np.clip(np.clip(t1, 0.0, 1.0) - np.clip(ts, 0.0, 1.0),
                         0.0, 1.0)
    else:
        od = po <= pr
        mass_o = np.where(od, 1.0 - np.clip(to, 0.0, 1.0), 0.0)
        mass_s = np.where(~od, 1.0 - np.clip(np.minimum(ts, 1.0), 0.0, 1.0),
                          0.0)
    return mass_o, mass_s


def oracle_revenue(po, pr, qo, qs, delta, n=50):
    mo, ms = oracle_masses(po, pr, qo, qs)
    return n * (np.asarray(po, dtype=float) * mo + delta * pr * ms)


def oracle_grid_case1(qo, qs, delta, n=50, step=1e-3, hi=1.0):
    """Brute-force (revenue, p_o, p_r) argmax over the price grid."""
    grid = np.arange(0.0, hi + step / 2, step)
    best = (-1.0, 0.0, 0.0)
    for pr in grid:
        r = oracle_revenue(grid, pr, qo, qs, delta, n)
        i = int(np.argmax(r))
        if r[i] > best[0]:
            best = (float(r[i]), float(grid[i]), float(pr))
    return best


def oracle_ks_d(a, b):
    a, b = np.sort(np.asarray(a, float)), np.sort(np.asarray(b, float))
    pts = np.concatenate([a, b])
    fa = np.searchsorted(a, pts, side="right") / len(a)
    fb = np.searchsorted(b, pts, side="right") / len(b)
    return float(np.max(np.abs(fa - fb)))


def oracle_ks_d_grid(a, b, step=1e-4):
    """Sup over an evenly spaced evaluation grid instead of sample points.

    Grid values are re-rounded to the decimal lattice so samples that sit
    on the lattice coincide with grid points bit-for-bit.
    """
    a, b = np.sort(np.asarray(a, float)), np.sort(np.asarray(b, float))
    lo = min(a[0], b[0]) - step
    hi = max(a[-1], b[-1]) + step
    grid = np.arange(round(lo / step), round(hi / step) + 1) * step
    grid = np.round(grid, 6)
    fa = np.searchsorted(a, grid, side="right") / len(a)
    fb = np.searchsorted(b, grid, side="right") / len(b)
    return float(np.max(np.abs(fa - fb)))


def oracle_permutation_p(a, b, shuffles, rng):
    """Permutation p-value for the KS distance; resolution 1/shuffles."""
    d_obs = oracle_ks_d(a, b)
    pool = np.concatenate([np.asarray(a, float), np.asarray(b, float)])
    n = len(a)
    hits = 0
    for _ in range(shuffles):
        rng.shuffle(pool)
        if oracle_ks_d(pool[:n], pool[n:]) >= d_obs - 1e-12:
            hits += 1
    return d_obs, hits / shuffles


def make_study_records(n_buyers, n_resellers, seed, noise=0.0,
                       t0=1_700_000_000):
    """Synthetic study records at the default service parameters.

    Choices follow the model; with noise > 0 that share of each
    predicted-choice group (exact count, randomly chosen members) is
    flipped to a uniformly drawn different choice.
    """
    rng = np.random.default_rng(seed)
    prices = Prices(STUDY["p_o"], STUDY["p_r"])
    supplies = Supplies(STUDY["q_o"], STUDY["q_s"])
    records = []
    u = rng.random(n_buyers)
    choices = [buyer_best_response(x, prices, supplies) for x in u]
    _flip(choices, list(BuyerChoice), noise, rng)
    for i, (x, ch) in enumerate(zip(u, choices)):
        records.append(BuyerRecord(round(rng.random(), 6), round(float(x), 6),
                                   STUDY["q_o"], STUDY["q_s"], STUDY["p_o"],
                                   STUDY["p_r"], ch, t0 + i))
    g = rng.random(n_resellers)
    choices = [reseller_best_response(x, STUDY["p_r"], STUDY["delta"])
               for x in g]
    _flip(choices, list(ResellerChoice), noise, rng)
    for i, (x, ch) in enumerate(zip(g, choices)):
        records.append(ResellerRecord(round(rng.random(), 6),
                                      round(float(x), 6), STUDY["p_r"],
                                      STUDY["delta"], "Distributed AI", ch,
                                      t0 + n_buyers + i))
    return records


def _flip(choices, options, noise, rng):
    if noise <= 0:
        return
    original = list(choices)  # flip sets come from the pristine grouping
    for opt in options:
        idx = [i for i, c in enumerate(original) if c is opt]
        k = round(noise * len(idx))
        for i in rng.choice(len(idx), size=k, replace=False):
            others = [o for o in options if o is not opt]
            choices[idx[int(i)]] = others[int(rng.integers(len(others)))]


def records_text(records):
    return "".join(format_record(r) + "\n" for r in records)
