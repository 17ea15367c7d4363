"""Monte Carlo market: sampled buyer/re-seller populations, realized
aggregate outcomes under fixed prices, and the figure-reproduction
experiment driver."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import equilibrium, kernels
from .market import BuyerChoice, DistributionSpec, MarketParams, Prices


@dataclass(frozen=True)
class Population:
    """Sampled types and usage levels; reproducible from the stored seed."""

    buyers_u: np.ndarray
    buyers_w: np.ndarray
    resellers_g: np.ndarray
    resellers_w: np.ndarray
    seed: int

    @property
    def n_buyers(self):
        return self.buyers_u.size

    @property
    def n_resellers(self):
        return self.resellers_g.size


@dataclass(frozen=True)
class MarketOutcome:
    counts: dict
    n_sell: int
    revenue_on_demand: float
    revenue_sharing: float
    payoffs: np.ndarray  # per-unit payoff of each buyer's chosen option
    q_s_realized: float

    @property
    def revenue(self) -> float:
        return self.revenue_on_demand + self.revenue_sharing


def sample_population(params: MarketParams, seed: int) -> Population:
    """Draw a population; the draw order is fixed so seeds are stable."""
    rng = np.random.default_rng(seed)
    u = params.dist_u.sample(rng, params.n_buyers)
    g = params.dist_g.sample(rng, params.n_resellers)
    w_b = params.dist_usage.sample(rng, params.n_buyers)
    w_r = params.dist_usage.sample(rng, params.n_resellers)
    return Population(u, w_b, g, w_r, int(seed))


def simulate_market(pop: Population, prices: Prices, params: MarketParams,
                    q_s_override: Optional[float] = None) -> MarketOutcome:
    """Aggregate outcome at fixed prices.

    Re-sellers sell when their net unit income strictly beats g; the realized
    sharing supply is a*log(1 + sum of selling usage / n_resellers) unless
    overridden (the override pins q_s for analytic cross-checks). Buyer usage
    scales revenue linearly; choices themselves are per-unit.
    """
    sell = (1.0 - params.delta) * prices.p_r > pop.resellers_g
    if q_s_override is None:
        proportion = float(pop.resellers_w[sell].sum()) / pop.n_resellers
        q_s = params.a * np.log1p(proportion)
    else:
        q_s = float(q_s_override)
    choices = kernels.buyer_choices(pop.buyers_u, prices.p_o, prices.p_r,
                                    params.q_o, q_s)
    od = choices == kernels.ON_DEMAND
    sh = choices == kernels.SHARING
    counts = {
        BuyerChoice.ON_DEMAND: int(od.sum()),
        BuyerChoice.SHARING: int(sh.sum()),
        BuyerChoice.NO_PURCHASE: int(pop.n_buyers - od.sum() - sh.sum()),
    }
    rev_od = prices.p_o * float(pop.buyers_w[od].sum())
    rev_sh = params.delta * prices.p_r * float(pop.buyers_w[sh].sum())
    payoffs = np.where(od, pop.buyers_u * params.q_o - prices.p_o,
                       np.where(sh, pop.buyers_u * q_s - prices.p_r, 0.0))
    return MarketOutcome(counts, int(sell.sum()), rev_od, rev_sh, payoffs,
                         float(q_s))


@dataclass(frozen=True)
class ExperimentSpec:
    """One sweep with Monte Carlo replications at each optimum."""

    experiment_id: str
    axis: str
    values: tuple
    params: MarketParams
    mode: str = "case2"  # case2 | fixed-prices
    p_r_fixed: Optional[float] = None
    reps: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.reps < 1:
            raise ValueError("replication count must be >= 1")


@dataclass(frozen=True)
class ExperimentRow:
    experiment: str
    axis: str
    value: float
    p_o: float
    p_r: float
    q_s: float
    region: str
    revenue: float
    mean: float
    stderr: float
    reps: int


def _child_seed(root: int, i_value: int, rep: int) -> int:
    ss = np.random.SeedSequence([int(root), int(i_value), int(rep)])
    return int(ss.generate_state(1, np.uint64)[0])


def run_experiment(spec: ExperimentSpec) -> list:
    """Solve along the axis, then replicate the market at each optimum.

    Revenue is the analytic value at the solved prices; mean/stderr summarize
    the Monte Carlo replications (independent seed stream per axis point and
    replication). Deterministic for a fixed spec.
    """
    curve = equilibrium.sweep(spec.params, spec.axis, spec.values, spec.mode,
                              p_r=spec.p_r_fixed)
    rows = []
    for i, pt in enumerate(curve.points):
        samples = np.empty(spec.reps)
        p_at = spec.params if spec.axis not in ("q_o", "delta", "a") else \
            replace(spec.params, **{spec.axis: pt.value})
        for rep in range(spec.reps):
            pop = sample_population(p_at, _child_seed(spec.seed, i, rep))
            out = simulate_market(pop, pt.prices, p_at)
            samples[rep] = out.revenue
        stderr = float(samples.std(ddof=1) / np.sqrt(spec.reps)) \
            if spec.reps > 1 else 0.0
        rows.append(ExperimentRow(spec.experiment_id, spec.axis, pt.value,
                                  pt.prices.p_o, pt.prices.p_r, pt.q_s,
                                  pt.region.label, pt.revenue,
                                  float(samples.mean()), stderr, spec.reps))
    return rows


def _qo_axis():
    return tuple(np.round(np.arange(0.1, 0.9001, 0.05), 10))


def _delta_axis():
    return tuple(np.round(np.arange(0.05, 0.9501, 0.05), 10))


def figure_experiments(figure: str, n: int = 50, reps: int = 20,
                       seed: int = 0) -> list:
    """Experiment specs for a catalog id (4a-4c, 5a-5e, 6a, 6b)."""
    uni = DistributionSpec.uniform01()
    beta = DistributionSpec.beta22()
    w1 = DistributionSpec.degenerate(1.0)

    def params(q_o=0.2, delta=0.2, a=2.0, dist=uni, usage=w1):
        return MarketParams(q_o=q_o, delta=delta, a=a, n_buyers=n,
                            n_resellers=n, dist_u=dist, dist_g=dist,
                            dist_usage=usage)

    if figure == "4a":
        return [ExperimentSpec("4a", "q_o", _qo_axis(), params(), reps=reps,
                               seed=seed)]
    if figure == "4b":
        return [ExperimentSpec("4b", "q_o", _qo_axis(), params(dist=beta),
                               reps=reps, seed=seed)]
    if figure == "4c":
        return [ExperimentSpec("4c", "q_o", _qo_axis(), params(usage=uni),
                               reps=reps, seed=seed)]
    if figure == "5a":
        return [ExperimentSpec(f"5a:delta={d:g}", "q_o", _qo_axis(),
                               params(delta=d), reps=reps, seed=seed)
                for d in (0.2, 0.4, 0.6, 0.8)]
    if figure == "5b":
        return [ExperimentSpec(f"5b:q_o={q:g}", "delta", _delta_axis(),
                               params(q_o=q), reps=reps, seed=seed)
                for q in (0.2, 0.4, 0.6, 0.8)]
    if figure == "5c":
        return [ExperimentSpec("5c", "delta", _delta_axis(), params(),
                               reps=reps, seed=seed)]
    if figure == "5d":
        return [ExperimentSpec("5d", "delta", _delta_axis(),
                               params(dist=beta), reps=reps, seed=seed)]
    if figure == "5e":
        return [ExperimentSpec("5e", "delta", _delta_axis(),
                               params(usage=uni), reps=reps, seed=seed)]
    if figure == "6a":
        return [ExperimentSpec("6a", "p_o", tuple(np.round(
            np.arange(0.0, 0.3001, 0.01), 10)), params(dist=beta),
            mode="fixed-prices", p_r_fixed=0.5, reps=reps, seed=seed)]
    if figure == "6b":
        return [ExperimentSpec("6b", "q_o", _qo_axis(), params(a=1.5),
                               reps=reps, seed=seed)]
    raise ValueError(f"unknown figure id {figure!r}")
