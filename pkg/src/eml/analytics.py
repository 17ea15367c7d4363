"""Comparison of recorded human decisions with the model's best responses:
per-region percentage agreement and a two-sample Kolmogorov-Smirnov test."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .market import (BuyerChoice, Prices, ResellerChoice, Supplies,
                     buyer_best_response, reseller_best_response)
from .records import BuyerRecord, ResellerRecord


class EmptySampleError(ValueError):
    pass


class MixedParametersError(ValueError):
    """The study is fixed-parameter; heterogeneous records are refused."""


BUYER_REGIONS = {
    BuyerChoice.SHARING: "sharing",
    BuyerChoice.ON_DEMAND: "on_demand",
    BuyerChoice.NO_PURCHASE: "neither",
}
RESELLER_REGIONS = {
    ResellerChoice.SELL: "reselling",
    ResellerChoice.NO: "not_reselling",
}


def predicted_choice(record):
    """The model's decision for the record's own parameters."""
    if isinstance(record, BuyerRecord):
        return buyer_best_response(record.u, Prices(record.p_o, record.p_r),
                                   Supplies(record.q_o, record.q_s))
    if isinstance(record, ResellerRecord):
        return reseller_best_response(record.g, record.p_r, record.delta)
    raise TypeError(f"not a record: {record!r}")


def _split_roles(records):
    buyers = [r for r in records if isinstance(r, BuyerRecord)]
    resellers = [r for r in records if isinstance(r, ResellerRecord)]
    if len(buyers) + len(resellers) != len(records):
        raise TypeError("records must be BuyerRecord or ResellerRecord")
    if len({(r.q_o, r.q_s, r.p_o, r.p_r) for r in buyers}) > 1:
        raise MixedParametersError("buyer records mix market parameters")
    if len({(r.p_r, r.delta) for r in resellers}) > 1:
        raise MixedParametersError("re-seller records mix market parameters")
    return buyers, resellers


def percentage_agreement(records) -> dict:
    """Per-region (count, fraction of records matching the model).

    Regions are the model-side intervals: each record belongs to the region
    of its predicted choice, and agrees when its recorded choice coincides.
    The fraction is None for empty regions.
    """
    buyers, resellers = _split_roles(records)
    out = {}
    for recs, region_of in ((buyers, BUYER_REGIONS),
                            (resellers, RESELLER_REGIONS)):
        if not recs:
            continue
        for choice, name in region_of.items():
            members = [r for r in recs if predicted_choice(r) is choice]
            hits = sum(1 for r in members if r.choice is choice)
            frac = hits / len(members) if members else None
            out[name] = (len(members), frac)
    return out


def _ks_pvalue(d: float, n: int, m: int) -> float:
    """Asymptotic Kolmogorov tail with the finite-size lambda correction."""
    if d <= 0.0:
        return 1.0
    ne = n * m / (n + m)
    lam = (math.sqrt(ne) + 0.12 + 0.11 / math.sqrt(ne)) * d
    total, sign = 0.0, 1.0
    for k in range(1, 10001):
        term = 2.0 * math.exp(-2.0 * (k * lam) ** 2)
        if term < 1e-12:
            break
        total += sign * term
        sign = -sign
    return min(max(total, 0.0), 1.0)


def ks_two_sample(sample_a, sample_b):
    """Two-sample KS test: exact sup-distance D and asymptotic p-value."""
    a = np.asarray(sample_a, dtype=float)
    b = np.asarray(sample_b, dtype=float)
    if a.size == 0 or b.size == 0:
        raise EmptySampleError("KS test needs two non-empty samples")
    d = kernels.ks_statistic(a, b)
    return float(d), _ks_pvalue(float(d), a.size, b.size)


@dataclass(frozen=True)
class ReportRow:
    role: str
    region: str
    count: int
    agreement: Optional[float]
    ks_d: Optional[float]
    ks_p: Optional[float]
    distinct: Optional[bool]


@dataclass(frozen=True)
class StudyReport:
    rows: tuple
    n_buyers: int
    n_resellers: int
    alpha: float

    def to_text(self) -> str:
        lines = [f"buyers: {self.n_buyers}  re-sellers: {self.n_resellers}  "
                 f"significance level: {self.alpha:g}"]
        header = (f"{'role':<9} {'region':<14} {'count':>5} {'agree':>7} "
                  f"{'D':>7} {'p':>8}  distinct?")
        lines.append(header)
        for r in self.rows:
            agree = f"{r.agreement:.3f}" if r.agreement is not None else "-"
            d = f"{r.ks_d:.4f}" if r.ks_d is not None else "-"
            p = f"{r.ks_p:.4f}" if r.ks_p is not None else "-"
            if r.distinct is None:
                verdict = "-"
            else:
                verdict = "yes" if r.distinct else "no evidence"
            lines.append(f"{r.role:<9} {r.region:<14} {r.count:>5} {agree:>7} "
                         f"{d:>7} {p:>8}  {verdict}")
        return "\n".join(lines)


def build_study_report(records, alpha: float = 0.05) -> StudyReport:
    """Per-region agreement plus KS(data vs model) over the same type values.

    For each region the data sample holds the u (or g) values of records whose
    recorded choice selects it, the model sample those whose predicted choice
    does. A one-sided empty pairing is maximally distinct (D=1, p=0); regions
    empty on both sides carry no test.
    """
    buyers, resellers = _split_roles(records)
    agreement = percentage_agreement(records)
    rows = []
    for role, recs, region_of, value_of in (
            ("buyer", buyers, BUYER_REGIONS, lambda r: r.u),
            ("reseller", resellers, RESELLER_REGIONS, lambda r: r.g)):
        if not recs:
            continue
        predicted = [predicted_choice(r) for r in recs]
        for choice, name in region_of.items():
            data = [value_of(r) for r in recs if r.choice is choice]
            model = [value_of(r) for r, p in zip(recs, predicted)
                     if p is choice]
            count, agree = agreement[name]
            if not data and not model:
                row = ReportRow(role, name, count, agree, None, None, None)
            elif not data or not model:
                row = ReportRow(role, name, count, agree, 1.0, 0.0, True)
            else:
                d, p = ks_two_sample(data, model)
                row = ReportRow(role, name, count, agree, d, p, p < alpha)
            rows.append(row)
    return StudyReport(tuple(rows), len(buyers), len(resellers), alpha)
