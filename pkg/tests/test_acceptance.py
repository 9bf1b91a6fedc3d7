"""Acceptance criteria, one test each, at their stated tolerances.

Every test records a one-line PASS/FAIL verdict that the terminal summary
prints under "acceptance criteria".
"""
import functools
import math
import time
from contextlib import contextmanager

import numpy as np
import pytest
from scipy.special import erf

from ewens_ldp.concentration import exact_tail, paper_bound
from ewens_ldp.core import ModelParams, martingale_weight
from ewens_ldp.harness import mc_tail
from ewens_ldp.ldp import d_factor, limit_log_mgf, limit_log_mgf_deriv, rate_alpha
from ewens_ldp.mgf import (
    gf_taylor_coeff,
    mgf_ml_form_theta0,
    mgf_series_general,
    mgf_series_theta0,
    mgf_series_theta0_deriv,
    mgf_sharp_theta0,
    remainder_bound,
)
from ewens_ldp.mittag import ml_integral, ml_series
from ewens_ldp.partition import crp_sample_batch, enumerate_partitions, eppf_log_prob, exact_mgf_enumeration, kn_distribution

PARAMS = [ModelParams(a, th) for a in (0.25, 0.5, 0.75) for th in (-0.1, 0.0, 0.5, 1.0)]
ENGINE_GRID = [(a, n, t) for a in (0.3, 0.5, 0.7) for n in range(2, 13) for t in (0.5, 1.0, 2.0)]


@contextmanager
def criterion(log, number, title, budget=None):
    """Record PASS/FAIL for one criterion; ``info`` collects the worst observed error."""
    info = {}
    t0 = time.perf_counter()
    ok = False
    try:
        yield info
        ok = True
    finally:
        elapsed = time.perf_counter() - t0
        detail = ", ".join(f"{k}={v:.3g}" if isinstance(v, float) else f"{k}={v}" for k, v in info.items())
        timing = f"{elapsed:.2f}s" + (f" (budget {budget}s)" if budget else "")
        log.append(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}; {timing}")
    if budget is not None:
        assert elapsed < budget, f"criterion {number} took {elapsed:.1f}s > {budget}s"


def rel(a, b):
    return abs(a - b) / abs(b)


@functools.lru_cache(maxsize=None)
def sharp(a, n, t):
    return mgf_sharp_theta0(a, n, t)


def test_01_eppf_normalisation(acceptance_log):
    with criterion(acceptance_log, 1, "EPPF normalisation n<=10", budget=5) as info:
        worst = 0.0
        for p in PARAMS:
            for n in range(1, 11):
                total = math.fsum(math.exp(eppf_log_prob(p, c)) for c in enumerate_partitions(n))
                worst = max(worst, abs(total - 1.0))
        info["max_err"] = worst
        assert worst <= 1e-10


def test_02_mgf_oracle_equivalence(acceptance_log):
    with criterion(acceptance_log, 2, "series MGF vs enumeration") as info:
        worst = 0.0
        for n in range(1, 11):
            for t in (0.5, 1.0, 2.0):
                for a in (0.25, 0.3, 0.5, 0.7, 0.75):
                    worst = max(worst, rel(mgf_series_theta0(a, n, t).value, exact_mgf_enumeration(ModelParams(a), n, t)))
                for p in PARAMS:
                    worst = max(worst, rel(mgf_series_general(p, n, t).value, exact_mgf_enumeration(p, n, t)))
        info["max_rel"] = worst
        assert worst <= 1e-10


def test_03_cross_engine_agreement(acceptance_log):
    with criterion(acceptance_log, 3, "Series/MlIntegral/Sharp/GfCoeff agreement") as info:
        worst = 0.0
        for a, n, t in ENGINE_GRID:
            vals = [
                mgf_series_theta0(a, n, t).value,
                mgf_ml_form_theta0(a, n, t).value,
                sharp(a, n, t).value,
                gf_taylor_coeff(a, t, n)[-1],
            ]
            for i in range(4):
                for j in range(i + 1, 4):
                    worst = max(worst, rel(vals[i], vals[j]))
        info["max_rel"] = worst
        assert worst <= 1e-6


def test_04_sharp_remainder(acceptance_log):
    with criterion(acceptance_log, 4, "remainder bounds and sharp expansion") as info:
        worst, min_rem, max_ratio = 0.0, math.inf, 0.0
        for a, n, t in ENGINE_GRID:
            rem = sharp(a, n, t).remainder
            min_rem = min(min_rem, rem)
            max_ratio = max(max_ratio, rem / remainder_bound(a, n, t))
            lead = d_factor(a, t) ** -n / a
            worst = max(worst, rel(lead - rem, mgf_series_theta0(a, n, t).value))
        info.update(min_R=min_rem, max_R_over_bound=max_ratio, max_rel=worst)
        assert min_rem > 0 and max_ratio <= 1.0 and worst <= 1e-6


def test_05_sandwich_limit(acceptance_log):
    with criterion(acceptance_log, 5, "scaled log-MGF vs L_alpha", budget=30) as info:
        worst = 0.0
        for a in (0.3, 0.5, 0.7):
            for t in (0.5, 1.0, 2.0):
                for n in (10**3, 10**4):
                    gap = abs(mgf_series_theta0(a, n, t).log_value / n - limit_log_mgf(a, t))
                    worst = max(worst, gap * n / (math.log(1 / a) + 1))
        info["max_gap_over_allowance"] = worst
        assert worst <= 1.0


def test_06_martingale_mean(acceptance_log):
    with criterion(acceptance_log, 6, "martingale mean one") as info:
        worst = 0.0
        for p in PARAMS:
            for n in range(1, 11):
                base = kn_distribution(ModelParams(p.alpha, 0.0), n)
                total = math.fsum(base.pmf(k) * martingale_weight(p, n, k) for k in range(1, n + 1))
                worst = max(worst, abs(total - 1.0))
        info["max_err"] = worst
        assert worst <= 1e-10


def test_07_mittag_leffler(acceptance_log):
    with criterion(acceptance_log, 7, "Mittag-Leffler conformance") as info:
        rep = 0.0
        for a in (0.3, 0.5, 0.7, 0.9):
            for z in (0.1, 0.5, 1.0, 2.0, 5.0):
                s = ml_series(a, z)
                rep = max(rep, abs(s - ml_integral(a, z)) / s)
        half = abs(ml_series(0.5, 1.0) - math.e * (1 + erf(1.0)))
        exp_err = max(abs(ml_series(1.0, z) - math.exp(z)) for z in (0.5, 1.0, 2.0))
        info.update(series_vs_integral=rep, E_half_1=half, E_1=exp_err)
        assert rep <= 1e-8 and half <= 1e-10 and exp_err <= 1e-12


def test_08_rate_function(acceptance_log):
    with criterion(acceptance_log, 8, "rate function") as info:
        x = 0.5
        t_cf = math.log((2 - x) / (2 - 2 * x))
        closed = (x - 1) * t_cf + math.log(2 / (2 - x))
        r = rate_alpha(0.5, 0.5)
        point = max(abs(r.rate - 0.0849495184), abs(r.rate - closed))
        dual = 0.0
        for a in (0.3, 0.5, 0.7):
            for t in (0.25, 0.5, 1.0, 2.0, 4.0):
                xt = limit_log_mgf_deriv(a, t)
                rr = rate_alpha(a, xt)
                dual = max(dual, abs(rr.rate - (t * xt - limit_log_mgf(a, t))), abs(rr.t_x - t))
        h, fd = 1e-5, 0.0
        for a in (0.3, 0.5, 0.7):
            for t in np.arange(0.2, 3.0001, 0.2):
                num = (limit_log_mgf(a, t + h) - limit_log_mgf(a, t - h)) / (2 * h)
                fd = max(fd, abs(num - limit_log_mgf_deriv(a, t)))
        info.update(I_half_err=point, duality=dual, finite_diff=fd)
        assert abs(r.rate - 0.0849495184) <= 1e-9 and abs(r.rate - closed) <= 1e-9
        assert dual <= 1e-9 and fd <= 1e-6


def test_09_theorem2_exact(acceptance_log):
    with criterion(acceptance_log, 9, "exact tail below the bound", budget=60) as info:
        violations, cells, slack = 0, 0, math.inf
        for a in (0.3, 0.5, 0.7):
            for th in (-0.1, 0.0, 0.5, 1.0):
                p = ModelParams(a, th)
                for n in (10, 50, 200, 500):
                    for x in (0.2, 0.4, 0.6, 0.8):
                        tail, bound = exact_tail(p, n, x), paper_bound(p, n, x)
                        cells += 1
                        violations += tail > bound
                        slack = min(slack, bound / tail)
        info.update(cells=cells, violations=violations, min_bound_over_tail=slack)
        assert violations == 0


def test_10_theorem2_monte_carlo(acceptance_log):
    with criterion(acceptance_log, 10, "Monte Carlo bound check and sampler law") as info:
        reps, failed = 10**5, []
        for th in (0.0, 1.0):
            p = ModelParams(0.5, th)
            for x in (0.3, 0.5, 0.7):
                est = mc_tail(p, 200, x, reps, seed=20240601)
                bound = paper_bound(p, 200, x)
                if not est.ci_upper_95 <= bound:
                    failed.append(f"theta={th},x={x}:upper={est.ci_upper_95:.3g}>bound={bound:.3g}")
        draws = crp_sample_batch(ModelParams(0.5), 4, 10**6, seed=4)
        counts = np.bincount(draws, minlength=5)[1:]
        probs = kn_distribution(ModelParams(0.5), 4).probs
        z = np.abs(counts - 1e6 * probs) / np.sqrt(1e6 * probs * (1 - probs))
        info.update(pmf_max_z=float(z.max()), ci_failures=len(failed))
        if failed:
            info["cells"] = "; ".join(failed)
        assert (z <= 4).all()
        assert not failed, "Wilson upper limit above the bound: " + "; ".join(failed)


def test_11_recurrence(acceptance_log):
    with criterion(acceptance_log, 11, "MGF recurrence") as info:
        worst = 0.0
        for a in (0.3, 0.5, 0.7):
            for t in (0.5, 1.0, 2.0):
                for n in range(1, 12):
                    lhs = mgf_series_theta0(a, n + 1, t).value
                    rhs = mgf_series_theta0(a, n, t).value + (a / n) * math.expm1(t) * mgf_series_theta0_deriv(a, n, t)
                    worst = max(worst, rel(rhs, lhs))
        info["max_rel"] = worst
        assert worst <= 1e-9
