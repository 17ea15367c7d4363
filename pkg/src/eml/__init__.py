"""Market laboratory for re-sold edge capacity: pricing equilibria,
population simulation, and the decision-study pipeline."""

from .equilibrium import (Region, RevenueCurve, SolveResult, classify_any,
                          classify_region, region_revenue_uniform,
                          revenue_general, solve_case1, solve_case2, sweep)
from .market import (BuyerChoice, DistributionSpec, MarketParams, Prices,
                     ResellerChoice, Supplies, buyer_best_response,
                     buyer_payoff, reseller_best_response, reseller_payoff,
                     reseller_proportion, sharing_supply)
from .population import (ExperimentSpec, figure_experiments, run_experiment,
                         sample_population, simulate_market)
from .records import (BuyerRecord, RecordFormatError, ResellerRecord,
                      format_record, parse_line, parse_records, read_records)
from .analytics import (build_study_report, ks_two_sample,
                        percentage_agreement, predicted_choice)
from .service import SessionOffer, StudyConfig, StudyService, create_app

__version__ = "0.1.0"

__all__ = [
    "BuyerChoice", "BuyerRecord", "DistributionSpec", "ExperimentSpec",
    "MarketParams", "Prices", "RecordFormatError", "Region", "ResellerChoice",
    "ResellerRecord", "RevenueCurve", "SessionOffer", "SolveResult",
    "StudyConfig", "StudyService", "Supplies", "build_study_report",
    "buyer_best_response", "buyer_payoff", "classify_any", "classify_region",
    "create_app", "figure_experiments", "format_record", "ks_two_sample",
    "parse_line", "parse_records", "percentage_agreement", "predicted_choice",
    "read_records", "region_revenue_uniform", "reseller_best_response",
    "reseller_payoff", "reseller_proportion", "revenue_general",
    "run_experiment", "sample_population", "sharing_supply", "simulate_market",
    "solve_case1", "solve_case2", "sweep",
]
