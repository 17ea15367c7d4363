"""Core market primitives: prices, supplies, type distributions, and the
per-unit best responses of buyers and re-sellers."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import special


class BuyerChoice(enum.Enum):
    ON_DEMAND = "ONDEMAND"
    SHARING = "SHARING"
    NO_PURCHASE = "NONE"


class ResellerChoice(enum.Enum):
    SELL = "Y"
    NO = "N"


@dataclass(frozen=True)
class DistributionSpec:
    """Type distribution on [0,1]: uniform, beta(alpha, beta), or a point mass."""

    kind: str
    alpha: float = 2.0
    beta: float = 2.0
    value: float = 1.0

    _KINDS = ("uniform", "beta", "degenerate")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown distribution kind {self.kind!r}")
        if self.kind == "beta" and (self.alpha <= 0 or self.beta <= 0):
            raise ValueError("beta shapes must be positive")
        if self.kind == "degenerate" and not 0.0 <= self.value <= 1.0:
            raise ValueError("degenerate value must lie in [0,1]")

    @classmethod
    def uniform01(cls):
        return cls("uniform")

    @classmethod
    def beta22(cls):
        return cls("beta", 2.0, 2.0)

    @classmethod
    def degenerate(cls, value: float):
        return cls("degenerate", value=value)

    def cdf(self, x):
        """Cumulative distribution function, valid for scalars or arrays."""
        x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
        if self.kind == "uniform":
            out = x
        elif self.kind == "beta":
            out = special.betainc(self.alpha, self.beta, x)
        else:
            out = np.where(x >= self.value, 1.0, 0.0)
        return float(out) if out.ndim == 0 else out

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if self.kind == "uniform":
            return rng.random(size)
        if self.kind == "beta":
            return rng.beta(self.alpha, self.beta, size)
        return np.full(size, self.value)

    def mean(self) -> float:
        if self.kind == "uniform":
            return 0.5
        if self.kind == "beta":
            return self.alpha / (self.alpha + self.beta)
        return self.value

    def label(self) -> str:
        if self.kind == "beta":
            return f"beta({self.alpha:g},{self.beta:g})"
        if self.kind == "degenerate":
            return f"degenerate({self.value:g})"
        return "uniform"


@dataclass(frozen=True)
class Prices:
    p_o: float
    p_r: float

    def __post_init__(self):
        if not (math.isfinite(self.p_o) and math.isfinite(self.p_r)):
            raise ValueError("prices must be finite")
        if self.p_o < 0 or self.p_r < 0:
            raise ValueError("prices must be non-negative")


@dataclass(frozen=True)
class Supplies:
    q_o: float
    q_s: float

    def __post_init__(self):
        if not (math.isfinite(self.q_o) and math.isfinite(self.q_s)):
            raise ValueError("supplies must be finite")
        if self.q_o <= 0:
            raise ValueError("q_o must be positive")
        if self.q_s < 0:
            raise ValueError("q_s must be non-negative")


@dataclass(frozen=True)
class MarketParams:
    """Exogenous market configuration; q_s is endogenous (see sharing_supply)."""

    q_o: float
    delta: float = 0.2
    a: float = 2.0
    n_buyers: int = 50
    n_resellers: int = 50
    dist_u: DistributionSpec = DistributionSpec.uniform01()
    dist_g: DistributionSpec = DistributionSpec.uniform01()
    dist_usage: DistributionSpec = DistributionSpec.degenerate(1.0)

    def __post_init__(self):
        if self.q_o <= 0:
            raise ValueError("q_o must be positive")
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError("delta must lie in [0,1]")
        if self.a <= 0:
            raise ValueError("a must be positive")
        if self.n_buyers < 1 or self.n_resellers < 1:
            raise ValueError("population counts must be >= 1")


def buyer_payoff(u: float, choice: BuyerChoice, prices: Prices, supplies: Supplies) -> float:
    """Per-unit payoff of one buyer: u*q - p for the chosen pool, 0 otherwise."""
    if choice is BuyerChoice.ON_DEMAND:
        return u * supplies.q_o - prices.p_o
    if choice is BuyerChoice.SHARING:
        return u * supplies.q_s - prices.p_r
    return 0.0


def reseller_payoff(g: float, choice: ResellerChoice, p_r: float, delta: float) -> float:
    """Per-unit payoff of one re-seller: the sale price net of commission and
    inconvenience when selling, 0 otherwise."""
    if choice is ResellerChoice.SELL:
        return (1.0 - delta) * p_r - g
    return 0.0


def buyer_best_response(u: float, prices: Prices, supplies: Supplies) -> BuyerChoice:
    """Payoff-maximizing choice for a buyer of type u.

    Zero is never beaten by a zero pool payoff (strict purchase rule), and an
    exact tie between the pools goes to the on-demand pool.
    """
    pi_o = u * supplies.q_o - prices.p_o
    pi_s = u * supplies.q_s - prices.p_r
    if max(pi_o, pi_s) <= 0.0:
        return BuyerChoice.NO_PURCHASE
    if pi_o >= pi_s:
        return BuyerChoice.ON_DEMAND
    return BuyerChoice.SHARING


def reseller_best_response(g: float, p_r: float, delta: float) -> ResellerChoice:
    """Sell exactly when the net unit income strictly beats the inconvenience cost."""
    if (1.0 - delta) * p_r > g:
        return ResellerChoice.SELL
    return ResellerChoice.NO


def reseller_proportion(p_r: float, delta: float, dist_g: DistributionSpec) -> float:
    """Fraction of re-sellers whose best response is to sell, cdf_g((1-delta)*p_r)."""
    return float(np.clip(dist_g.cdf((1.0 - delta) * p_r), 0.0, 1.0))


def sharing_supply(p_r: float, delta: float, a: float, dist_g: DistributionSpec) -> float:
    """Sharing-pool supply level a*log(1 + selling proportion).

    Diminishing returns in the selling proportion; 0 at p_r = 0.
    """
    return a * math.log1p(reseller_proportion(p_r, delta, dist_g))
