"""Number of blocks in the Ewens-Pitman random partition.

Exact law and sampling of K_n, several evaluation routes for its
moment-generating function, Mittag-Leffler functions, the large-deviation
rate function and the resulting concentration bound.
"""
from ._backend import NAME as BACKEND
from .concentration import BoundReport, exact_chernoff, exact_tail, paper_bound
from .core import ModelParams, c_factor, log_rising, martingale_weight, p_prefactor
from .errors import DomainError, NumericError
from .harness import McEstimate, VerifyReport, mc_tail, verify_bound
from .ldp import RateEvalConfig, RateResult, limit_log_mgf, limit_log_mgf_deriv, rate_alpha, rate_ewens
from .mgf import MgfBounds, MgfResult, mgf
from .mittag import QuadratureConfig, SeriesConfig, ml3_series, ml_integral, ml_series
from .partition import (
    KnDistribution,
    PartitionCounts,
    SampleResult,
    crp_sample,
    enumerate_partitions,
    eppf_log_prob,
    ewens_bernoulli_sample,
    kn_distribution,
)

__version__ = "0.1.0"
