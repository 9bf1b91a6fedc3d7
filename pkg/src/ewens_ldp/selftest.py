"""Fast invariant checks behind ``ewens-ldp selftest``."""
from __future__ import annotations

import math

import numpy as np
from scipy.special import erf

from .concentration import exact_tail, paper_bound
from .core import ModelParams, martingale_weight
from .ldp import limit_log_mgf, limit_log_mgf_deriv, rate_alpha
from .mgf import gf_taylor_coeff, mgf_ml_form_theta0, mgf_series_general, mgf_series_theta0
from .mittag import ml_integral, ml_series
from .partition import enumerate_partitions, eppf_log_prob, exact_mgf_enumeration, kn_distribution

GRID = [ModelParams(a, th) for a in (0.25, 0.5, 0.75) for th in (-0.1, 0.0, 0.5, 1.0)]


def _eppf_normalised():
    return max(
        abs(math.fsum(math.exp(eppf_log_prob(p, c)) for c in enumerate_partitions(n)) - 1.0)
        for p in GRID
        for n in (1, 4, 8)
    ) <= 1e-10


def _martingale_mean():
    worst = 0.0
    for p in GRID:
        base = kn_distribution(ModelParams(p.alpha, 0.0), 8)
        s = math.fsum(base.probs[k - 1] * martingale_weight(p, 8, k) for k in range(1, 9))
        worst = max(worst, abs(s - 1.0))
    return worst <= 1e-10


def _mgf_engines():
    worst = 0.0
    for a in (0.3, 0.7):
        for t in (0.5, 2.0):
            ref = exact_mgf_enumeration(ModelParams(a, 0.0), 6, t)
            for v in (
                mgf_series_theta0(a, 6, t).value,
                mgf_ml_form_theta0(a, 6, t).value,
                gf_taylor_coeff(a, t, 6)[-1],
                mgf_series_general(ModelParams(a, 0.0), 6, t).value,
            ):
                worst = max(worst, abs(v / ref - 1.0))
    return worst <= 1e-8


def _mittag():
    ok = abs(ml_series(0.5, 1.0) - math.e * (1.0 + erf(1.0))) <= 1e-10
    return ok and abs(ml_integral(0.7, 2.0) / ml_series(0.7, 2.0) - 1.0) <= 1e-8


def _rate():
    r = rate_alpha(0.5, 0.5)
    closed = -0.5 * math.log(1.5) + math.log(2.0 / 1.5)
    h = 1e-5
    fd = (limit_log_mgf(0.3, 1.0 + h) - limit_log_mgf(0.3, 1.0 - h)) / (2 * h)
    return abs(r.rate - closed) <= 1e-9 and abs(fd - limit_log_mgf_deriv(0.3, 1.0)) <= 1e-6


def _theorem2():
    return all(
        exact_tail(p, 50, x) <= paper_bound(p, 50, x)
        for p in GRID
        for x in (0.2, 0.5, 0.8)
    )


CHECKS = [
    ("eppf normalisation", _eppf_normalised),
    ("martingale mean one", _martingale_mean),
    ("mgf engines agree with enumeration", _mgf_engines),
    ("mittag-leffler series vs integral", _mittag),
    ("rate function closed form", _rate),
    ("concentration bound dominates exact tail", _theorem2),
]


def run(stream=None) -> bool:
    ok = True
    for name, check in CHECKS:
        passed = bool(check())
        ok &= passed
        if stream is not None:
            print(f"{'PASS' if passed else 'FAIL'} {name}", file=stream)
    return ok
