"""Aggregate buyer-equilibrium regions, closed-form region revenues, and the
platform's two pricing problems: exogenous sharing supply (case 1) and supply
induced by the re-sale price (case 2), plus the brute-force grid oracle used
to validate both."""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import kernels
from .market import DistributionSpec, MarketParams, Prices, Supplies, sharing_supply


class Subcase(enum.Enum):
    SHARING_DOMINANT = "sharing_dominant"  # q_s > q_o (or = on the equal path)
    ON_DEMAND_DOMINANT = "on_demand_dominant"  # q_o > q_s
    EQUAL = "equal"


@dataclass(frozen=True)
class Region:
    label: str  # R1 | R2 | R3 | R4
    subcase: Subcase


class DegenerateSuppliesError(ValueError):
    """Raised when q_s == q_o reaches the divided-difference classifier."""


class RegionMismatchError(ValueError):
    """Prices do not satisfy the boundary conditions of the claimed region."""


class SweepError(RuntimeError):
    pass


@dataclass(frozen=True)
class Candidate:
    """One entry of a solve's diagnostic trail."""

    label: str
    prices: Optional[Prices]
    revenue: Optional[float]
    feasible: bool
    note: str = ""


@dataclass(frozen=True)
class SolveResult:
    prices: Prices
    region: Region
    revenue: float
    q_s_at_opt: float
    diagnostics: tuple


@dataclass(frozen=True)
class CurvePoint:
    value: float
    revenue: float
    region: Region
    prices: Prices
    q_s: float


@dataclass(frozen=True)
class RevenueCurve:
    axis: str
    mode: str
    points: tuple

    def __post_init__(self):
        vals = [p.value for p in self.points]
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("sweep values must be strictly increasing")


def classify_region(prices: Prices, supplies: Supplies) -> Region:
    """Unique buyer-equilibrium region of a price pair when q_s != q_o.

    R1: both pools attract buyers; R2: on-demand only; R3: sharing only;
    R4: nobody buys. Boundary operators are < / > for R1, >= for R2's line,
    <= for R3's line, >= for R4, so shared boundaries land in exactly one
    region.
    """
    q_o, q_s = supplies.q_o, supplies.q_s
    if q_s == q_o:
        raise DegenerateSuppliesError(
            "q_s == q_o has no divided-difference thresholds; equal-supply "
            "inputs are classified by the cheaper-pool rule")
    sub = Subcase.SHARING_DOMINANT if q_s > q_o else Subcase.ON_DEMAND_DOMINANT
    p_o, p_r = prices.p_o, prices.p_r
    lo = max(q_s / q_o, 1.0) * p_o - max(q_o - q_s, 0.0)
    hi = min(q_s / q_o, 1.0) * p_o + max(q_s - q_o, 0.0)
    if lo < p_r < hi:
        return Region("R1", sub)
    if p_o < q_o and p_r >= hi:
        return Region("R2", sub)
    if p_r < q_s and p_r <= lo:
        return Region("R3", sub)
    if p_r >= q_s and p_o >= q_o:
        return Region("R4", sub)
    raise RegionMismatchError(f"no region covers {prices} at {supplies}")


def _classify_equal(prices: Prices, supplies: Supplies) -> Region:
    # Equal supplies: the cheaper pool takes every buying customer; a price
    # tie goes to on-demand, like the pointwise tie rule.
    p_o, p_r = prices.p_o, prices.p_r
    if p_o <= p_r:
        label = "R2" if p_o < supplies.q_o else "R4"
    else:
        label = "R3" if p_r < supplies.q_s else "R4"
    return Region(label, Subcase.EQUAL)


def classify_any(prices: Prices, supplies: Supplies) -> Region:
    """classify_region with the equal-supply path folded in."""
    if supplies.q_s == supplies.q_o:
        return _classify_equal(prices, supplies)
    return classify_region(prices, supplies)


def region_revenue_uniform(region: Region, prices: Prices, supplies: Supplies,
                           delta: float, n: float) -> float:
    """Closed-form revenue for uniform types, valid only inside the region.

    Raises RegionMismatchError when the prices do not actually lie in the
    claimed region.
    """
    actual = classify_any(prices, supplies)
    if actual != region:
        raise RegionMismatchError(
            f"prices {prices} lie in {actual}, not the claimed {region}")
    return _revenue_in_region(region.label, prices, supplies, delta, n)


def _revenue_in_region(label, prices, supplies, delta, n):
    p_o, p_r = prices.p_o, prices.p_r
    q_o, q_s = supplies.q_o, supplies.q_s
    if label == "R1":
        if q_s > q_o:
            t1 = (p_r - p_o) / (q_s - q_o)
            return n * p_o * (t1 - p_o / q_o) + n * p_r * delta * (1.0 - t1)
        t1 = (p_o - p_r) / (q_o - q_s)
        return n * p_r * delta * (t1 - p_r / q_s) + n * p_o * (1.0 - t1)
    if label == "R2":
        return n * p_o * (1.0 - p_o / q_o)
    if label == "R3":
        return n * p_r * delta * (1.0 - p_r / q_s)
    return 0.0


def _revenue_at(prices, supplies, delta, n):
    region = classify_any(prices, supplies)
    return region, _revenue_in_region(region.label, prices, supplies, delta, n)


def _general_masses(p_o, p_r, supplies, dist_u):
    """On-demand and sharing masses as cdf differences over the
    best-response intervals; p_o may be an array."""
    q_o, q_s = supplies.q_o, supplies.q_s
    p_o = np.asarray(p_o, dtype=float)
    cdf = dist_u.cdf
    t_o = np.clip(p_o / q_o, 0.0, 1.0)
    if q_s > q_o:
        t1 = np.clip((p_r - p_o) / (q_s - q_o), 0.0, 1.0)
        t_s = min(max(p_r / q_s, 0.0), 1.0)
        mass_o = np.maximum(cdf(t1) - cdf(t_o), 0.0)
        mass_s = 1.0 - cdf(np.maximum(t_s, t1))
    elif q_s < q_o:
        t1 = np.clip((p_o - p_r) / (q_o - q_s), 0.0, 1.0)
        t_s = min(max(p_r / q_s, 0.0), 1.0) if q_s > 0 else 1.0
        mass_o = 1.0 - cdf(np.maximum(t_o, t1))
        mass_s = np.maximum(cdf(t1) - cdf(t_s), 0.0)
    else:
        od = p_o <= p_r
        t_s = min(max(p_r / q_s, 0.0), 1.0)
        mass_o = np.where(od, 1.0 - cdf(t_o), 0.0)
        mass_s = np.where(od, 0.0, 1.0 - cdf(t_s))
    return mass_o, mass_s


def revenue_general(prices: Prices, supplies: Supplies, delta: float, n: float,
                    dist_u: DistributionSpec) -> float:
    """Revenue for an arbitrary type distribution; reduces to
    region_revenue_uniform for uniform types."""
    mass_o, mass_s = _general_masses(prices.p_o, prices.p_r, supplies, dist_u)
    return float(n * (prices.p_o * mass_o + delta * prices.p_r * mass_s))


def grid_search_case1(q_o, q_s, delta, n, step=1e-3, hi=1.0):
    """Brute-force oracle: argmax of mass-route revenue over the price grid.

    Returns (revenue, Prices). Independent of the closed forms above, so it
    validates them.
    """
    rev, po, pr = kernels.best_revenue_grid(q_o, q_s, delta, n, step, hi)
    return rev, Prices(po, pr)


def _interval_note(name, lo, hi):
    return f"{name} free in [{lo:.6g}, {hi:.6g}], midpoint reported"


def solve_case1(q_o: float, q_s: float, delta: float, n: float,
                step: float = 1e-3) -> SolveResult:
    """Optimal (p_o, p_r) when both supplies are exogenous.

    Closed-form candidates: the interior stationary point of R1 when its
    concavity certificate holds and it lies inside R1, the R1 boundary pair,
    the single-pool optima of R2 and R3, and the no-sale corner. A failed
    certificate sends that R1 subproblem to the grid oracle (diagnostic
    recorded). The winner is re-classified at its own prices, so boundary
    winners carry the label of the region that actually owns the boundary.
    """
    if q_o <= 0 or q_s <= 0:
        raise ValueError("solve_case1 requires q_o > 0 and q_s > 0")
    if not 0.0 <= delta <= 1.0:
        raise ValueError("delta must lie in [0,1]")
    cap = max(1.0, q_o, q_s)
    supplies = Supplies(q_o, q_s)
    cands = []

    def add(label, prices, feasible=True, note=""):
        rev = _revenue_at(prices, supplies, delta, n)[1] if feasible else None
        cands.append(Candidate(label, prices, rev, feasible, note))

    if q_s == q_o:
        lo2 = q_o / 2
        add("R2", Prices(q_o / 2, (lo2 + cap) / 2),
            note=_interval_note("p_r", lo2, cap))
        add("R3", Prices((q_s / 2 + cap) / 2, q_s / 2),
            note=_interval_note("p_o", q_s / 2, cap))
        add("R4", Prices(max(q_o, cap), max(q_s, cap)))
    else:
        if q_s > q_o:
            d = q_s - q_o
            gate = 4.0 * delta * q_s - (1.0 + delta) ** 2 * q_o
            if gate > 0:
                po_i = delta * (1.0 + delta) * q_o * d / gate
                pr_i = d / 2.0 + (1.0 + delta) ** 2 * q_o * d / (2.0 * gate)
                inside = (q_s / q_o) * po_i < pr_i < po_i + d
                if inside:
                    add("R1 interior", Prices(po_i, pr_i), note="stationary point")
                else:
                    cands.append(Candidate("R1 interior", Prices(po_i, pr_i),
                                           None, False,
                                           "violates the R1 boundary conditions"))
            else:
                rev_g, po_g, pr_g = kernels.best_revenue_grid(
                    q_o, q_s, delta, n, step, cap, kernels.R1_ONLY)
                note = ("concavity certificate 4*delta*q_s > (1+delta)^2*q_o "
                        "failed; R1 subproblem solved on the grid")
                if rev_g >= 0:
                    cands.append(Candidate("R1 grid", Prices(po_g, pr_g),
                                           rev_g, True, note))
            boundary = [Prices(q_o / 2, q_s - q_o / 2), Prices(q_o / 2, q_s / 2)]
        else:
            e = q_o - q_s
            gate = 4.0 * delta * q_o - (1.0 + delta) ** 2 * q_s
            if gate > 0:
                po_i = 2.0 * delta * q_o * e / gate
                pr_i = q_s * (1.0 + delta) * e / gate
                inside = po_i - e < pr_i < (q_s / q_o) * po_i
                if inside:
                    add("R1 interior", Prices(po_i, pr_i), note="stationary point")
                else:
                    cands.append(Candidate("R1 interior", Prices(po_i, pr_i),
                                           None, False,
                                           "violates the R1 boundary conditions"))
            else:
                rev_g, po_g, pr_g = kernels.best_revenue_grid(
                    q_o, q_s, delta, n, step, cap, kernels.R1_ONLY)
                note = ("concavity certificate 4*delta*q_o > (1+delta)^2*q_s "
                        "failed; R1 subproblem solved on the grid")
                if rev_g >= 0:
                    cands.append(Candidate("R1 grid", Prices(po_g, pr_g),
                                           rev_g, True, note))
            boundary = [Prices(q_o - q_s / 2, q_s / 2), Prices(q_o / 2, q_s / 2)]
        for b in boundary:
            add("R1 boundary", b)
        # Single-pool optima; the free price reports its feasible interval.
        if q_s > q_o:
            pr_lo = q_s - q_o / 2
        else:
            pr_lo = q_s / 2
        add("R2", Prices(q_o / 2, (pr_lo + cap) / 2),
            note=_interval_note("p_r", pr_lo, cap))
        po_lo = q_o / 2 if q_s > q_o else q_o - q_s / 2
        add("R3", Prices((po_lo + cap) / 2, q_s / 2),
            note=_interval_note("p_o", po_lo, cap))
        add("R4", Prices(max(q_o, q_s), max(q_o, q_s)))

    best = None
    for c in cands:
        if c.feasible and c.revenue is not None:
            if best is None or c.revenue > best.revenue:
                best = c
    region, revenue = _revenue_at(best.prices, supplies, delta, n)
    return SolveResult(best.prices, region, revenue, q_s, tuple(cands))


@dataclass(frozen=True)
class PoCandidate:
    label: str  # R1a | R1b | R2a | R2b | R2
    p_o: float
    feasible: bool
    note: str = ""


def optimal_po_given_pr(p_r: float, q_s_val: float, q_o: float,
                        delta: float) -> list:
    """Per-region optimal on-demand price for a fixed re-sale price.

    The revenue is concave in p_o inside every region, so each candidate is
    either the interior stationary point or the better region endpoint;
    B1 = p_r - q_s + q_o and B2 = p_r*q_o/q_s are the boundary points.
    """
    out = []
    if q_s_val <= 0:
        # dead sharing pool: only the on-demand problem remains
        out.append(PoCandidate("R2b", q_o / 2, True, "q_s = 0, on-demand only"))
        return out
    b1 = p_r - q_s_val + q_o
    b2 = p_r * q_o / q_s_val
    if q_s_val > q_o:

        def rev_r1a(po):
            t1 = (p_r - po) / (q_s_val - q_o)
            return po * (t1 - po / q_o) + p_r * delta * (1.0 - t1)

        lo, hi = max(b1, 0.0), b2
        if lo < hi:
            po_star = q_o * p_r * (1.0 + delta) / (2.0 * q_s_val)
            if lo < po_star < hi:
                out.append(PoCandidate("R1a", po_star, True, "stationary"))
            else:
                po_b = max((lo, hi), key=rev_r1a)
                out.append(PoCandidate("R1a", po_b, True,
                                       f"boundary argmax of [{lo:.6g}, {hi:.6g}]"))
        else:
            out.append(PoCandidate("R1a", lo, False, "empty R1 interval"))
        if b1 > 0:
            po_c = q_o / 2 if q_o / 2 <= b1 else b1
            out.append(PoCandidate("R2a", po_c, True))
        else:
            out.append(PoCandidate("R2a", 0.0, False, "B1 <= 0, empty R2"))
    elif q_s_val < q_o:

        def rev_r1b(po):
            t1 = (po - p_r) / (q_o - q_s_val)
            return p_r * delta * (t1 - p_r / q_s_val) + po * (1.0 - t1)

        lo, hi = b2, b1  # non-empty exactly when p_r < q_s
        if lo < hi:
            po_star = (p_r * (1.0 + delta) + q_o - q_s_val) / 2.0
            if lo < po_star < hi:
                out.append(PoCandidate("R1b", po_star, True, "stationary"))
            else:
                po_b = max((lo, hi), key=rev_r1b)
                out.append(PoCandidate("R1b", po_b, True,
                                       f"boundary argmax of [{lo:.6g}, {hi:.6g}]"))
        else:
            out.append(PoCandidate("R1b", lo, False, "empty R1 interval"))
        po_c = q_o / 2 if q_o / 2 <= b2 else b2
        out.append(PoCandidate("R2b", po_c, True))
    else:
        # equal supplies: on-demand wins while p_o <= p_r
        po_c = q_o / 2 if q_o / 2 <= p_r else p_r
        out.append(PoCandidate("R2", po_c, True))
    return out


def r_max(p_r: float, params: MarketParams):
    """Best achievable revenue at a fixed re-sale price.

    Returns (revenue, region label, p_o). Uniform types use the closed-form
    candidates; other distributions use a p_o grid of revenue_general.
    """
    q_o, delta, n = params.q_o, params.delta, params.n_buyers
    q_s = sharing_supply(p_r, delta, params.a, params.dist_g)
    supplies = Supplies(q_o, q_s)
    cap = max(1.0, q_o, q_s)
    if params.dist_u.kind != "uniform":
        po_grid = np.arange(0.0, cap + 5e-4, 1e-3)
        mass_o, mass_s = _general_masses(po_grid, p_r, supplies, params.dist_u)
        rev = n * (po_grid * mass_o + delta * p_r * mass_s)
        i = int(np.argmax(rev))
        region = classify_any(Prices(po_grid[i], p_r), supplies)
        return float(rev[i]), region.label, float(po_grid[i])
    best_rev, best_po = 0.0, None
    for cand in optimal_po_given_pr(p_r, q_s, q_o, delta):
        if not cand.feasible:
            continue
        _, rev = _revenue_at(Prices(cand.p_o, p_r), supplies, delta, n)
        if best_po is None or rev > best_rev:
            best_rev, best_po = rev, cand.p_o
    if p_r < q_s:
        # sharing-only region exists for any high enough p_o
        po_r3 = ((q_o / q_s) * p_r if q_s > q_o else p_r + q_o - q_s)
        po_r3 = (min(po_r3, cap) + cap) / 2 if po_r3 < cap else po_r3
        _, rev = _revenue_at(Prices(po_r3, p_r), supplies, delta, n)
        if best_po is None or rev > best_rev:
            best_rev, best_po = rev, po_r3
    if best_po is None:
        # nobody buys anywhere: report the no-sale corner
        best_rev, best_po = 0.0, max(q_o, q_s)
    region = classify_any(Prices(best_po, p_r), supplies)
    return float(best_rev), region.label, float(best_po)


def solve_case2(params: MarketParams, p_r_max: float = 2.0,
                step: float = 1e-3) -> SolveResult:
    """Linear search of r_max over the re-sale price grid."""
    if step <= 0:
        raise ValueError("grid step must be positive")
    prs = np.arange(0.0, p_r_max + 0.5 * step, step)
    best = (-1.0, "R4", 0.0, 0.0)
    for pr in prs:
        rev, label, po = r_max(float(pr), params)
        if rev > best[0]:
            best = (rev, label, po, float(pr))
    rev, label, po, pr = best
    q_s = sharing_supply(pr, params.delta, params.a, params.dist_g)
    supplies = Supplies(params.q_o, q_s)
    prices = Prices(po, pr)
    region = classify_any(prices, supplies)
    diags = []
    for c in optimal_po_given_pr(pr, q_s, params.q_o, params.delta):
        c_prices = Prices(c.p_o, pr)
        c_rev = _revenue_at(c_prices, supplies, params.delta,
                            params.n_buyers)[1] if c.feasible else None
        diags.append(Candidate(c.label, c_prices, c_rev, c.feasible, c.note))
    if pr >= prs[-1] - 0.5 * step and pr > 0:
        diags.append(Candidate("warning", None, None, True,
                               f"argmax at the p_r search bound {prs[-1]:.3f}; "
                               "widen p_r_max"))
    return SolveResult(prices, region, rev, q_s, tuple(diags))


_AXIS_FIELDS = {"q_o": "q_o", "delta": "delta", "a": "a"}


def sweep(params: MarketParams, axis: str, values, mode: str,
          q_s: Optional[float] = None, p_r: Optional[float] = None,
          p_r_max: float = 2.0, step: float = 1e-3) -> RevenueCurve:
    """One solve (or fixed-price evaluation) per axis value.

    mode "case1" needs an explicit q_s; mode "fixed-prices" needs the pinned
    p_r and sweeps p_o. Per-point failures are re-raised with the offending
    value attached.
    """
    values = [float(v) for v in values]
    if mode not in ("case1", "case2", "fixed-prices"):
        raise ValueError(f"unknown sweep mode {mode!r}")
    if axis == "p_o" and mode != "fixed-prices":
        raise ValueError("axis p_o requires fixed-prices mode")
    if mode == "fixed-prices" and (axis != "p_o" or p_r is None):
        raise ValueError("fixed-prices mode sweeps p_o at a given p_r")
    if mode != "fixed-prices" and axis not in _AXIS_FIELDS:
        raise ValueError(f"unknown sweep axis {axis!r}")
    if mode == "case1" and q_s is None:
        raise ValueError("case1 mode needs an explicit q_s")
    points = []
    for v in values:
        try:
            points.append(_sweep_point(params, axis, v, mode, q_s, p_r,
                                       p_r_max, step))
        except Exception as exc:
            raise SweepError(f"{axis}={v}: {exc}") from exc
    return RevenueCurve(axis, mode, tuple(points))


def _sweep_point(params, axis, v, mode, q_s, p_r, p_r_max, step):
    if mode == "fixed-prices":
        qs_v = sharing_supply(p_r, params.delta, params.a, params.dist_g)
        supplies = Supplies(params.q_o, qs_v)
        prices = Prices(v, p_r)
        region = classify_any(prices, supplies)
        if params.dist_u.kind == "uniform":
            rev = _revenue_in_region(region.label, prices, supplies,
                                     params.delta, params.n_buyers)
        else:
            rev = revenue_general(prices, supplies, params.delta,
                                  params.n_buyers, params.dist_u)
        return CurvePoint(v, rev, region, prices, qs_v)
    p = replace(params, **{_AXIS_FIELDS[axis]: v}) if axis in _AXIS_FIELDS \
        else params
    if mode == "case1":
        res = solve_case1(p.q_o, q_s, p.delta, p.n_buyers, step)
    else:
        res = solve_case2(p, p_r_max, step)
    return CurvePoint(v, res.revenue, res.region, res.prices, res.q_s_at_opt)
