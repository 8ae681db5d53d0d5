"""Acceptance suite: the ten end-to-end checks the artifact must answer for.

Each criterion is a self-contained callable returning a report dict with an
`ok` flag plus the numbers behind the verdict.  The same list drives both
the pytest gate (tests/test_acceptance.py) and `tautools report --suite
acceptance`, so the two can never drift apart.  Expensive expansions and
angle tables are cached per process and shared between criteria.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from .bounds import BoundContext, sato_tate_discrepancy_bound, schoenfeld_check
from .density import (
    DENSITY_TABLE_CONFIGS,
    DensityConfig,
    certify_weight16_two_power_rule,
    check_rules,
    density_lower_bound,
    density_upper_bound_11a,
    reproduce_density_table,
    zero_bound_fn,
)
from .newforms import (
    build_angle_table,
    build_form,
    curve_ap,
    get_form_spec,
    hecke_check,
    supersingular_primes,
)
from .primes import primes_up_to
from .quadform import decomposition_check, f_alpha, thm19_check
from .satotate import (
    Interval,
    fourier_coeff_sum_check,
    main_term_check,
    mu_st,
    prime_angle_count,
    sandwich_check,
)

__all__ = ["CRITERIA", "Criterion", "run_criterion", "run_all"]


@lru_cache(maxsize=None)
def _series(label: str, prec: int):
    return build_form(label, prec)


@lru_cache(maxsize=None)
def _table(label: str, x_max: int):
    return build_angle_table(get_form_spec(label), x_max,
                             series=_series(label, x_max + 1))


def criterion_1_coefficient_engine() -> dict:
    """Weight-12 expansion to 10^5 under 60 s with every Hecke relation exact."""
    t0 = time.perf_counter()
    f = build_form("delta12", 100_000)
    elapsed = time.perf_counter() - t0
    ok_hecke, first = hecke_check(f, 12)
    return {
        "ok": elapsed < 60.0 and ok_hecke,
        "build_seconds": elapsed,
        "hecke_ok": ok_hecke,
        "first_violation": first,
        "prec": f.prec,
    }


def criterion_2_point_count_oracle() -> dict:
    """Level-11 eta coefficients equal curve point-count traces, p <= 10^3."""
    f = _series("11a", 1002)
    good = [int(p) for p in primes_up_to(1000) if p != 11]
    mismatches = [p for p in good if f[p] != curve_ap(p)]
    return {"ok": not mismatches, "primes_checked": len(good),
            "mismatches": mismatches}


def criterion_3_congruence_suite() -> dict:
    """All 44 congruences to n = 10^4 plus the Sturm-certified two-power rule."""
    t0 = time.perf_counter()
    series = {w: _series(f"delta{w}", 10_001)
              for w in (12, 16, 18, 20, 22, 26)}
    violations = {}
    for k in (16, 18, 20, 22, 26):
        v = check_rules(k, 10_001, series=series)
        if v:
            violations[k] = v[:3]
    cert = certify_weight16_two_power_rule(series[16])
    elapsed = time.perf_counter() - t0
    return {
        "ok": not violations and cert["certified"] and elapsed <= 300.0,
        "violations": violations,
        "certificate": cert,
        "seconds": elapsed,
    }


_EQUIDISTRIBUTION_INTERVALS = (
    Interval(0.0, math.pi / 2),
    Interval(math.pi / 4, math.pi / 2),
    Interval(math.pi / 3, 2 * math.pi / 3),
)


def criterion_4_equidistribution() -> dict:
    """Angle frequencies in [x, 2x] within 0.02 of the limiting measure."""
    x = 5e5
    rows = []
    ok = True
    for label in ("delta12", "11a"):
        table = _table(label, 1_000_000)
        window = int(((table.primes >= x) & (table.primes <= 2 * x)).sum())
        for iv in _EQUIDISTRIBUTION_INTERVALS:
            frac = prime_angle_count(x, iv, table) / window
            dev = abs(frac - mu_st(iv))
            ok = ok and dev <= 0.02
            rows.append({"form": label, "interval": (iv.alpha, iv.beta),
                         "fraction": frac, "mu_st": mu_st(iv),
                         "deviation": dev})
    return {"ok": ok, "x": x, "rows": rows}


def criterion_5_sandwich() -> dict:
    """Smoothed two-sided estimates bracket exact counts in 20 random runs."""
    rng = random.Random(64133)
    table = _table("delta12", 1_000_000)
    runs = []
    ok = True
    for _ in range(20):
        delta = rng.uniform(1e-4, 1e-3)
        x = rng.uniform(1e3, 1e5)
        alpha = rng.uniform(0.0, math.pi - 0.25)
        beta = alpha + rng.uniform(0.2, math.pi - alpha - 0.01)
        try:
            rep = sandwich_check(x, Interval(alpha, beta), delta, 40, table)
            runs.append({"x": x, "delta": delta,
                         "interval": (alpha, beta), "count": rep["count"]})
        except AssertionError as exc:
            ok = False
            runs.append({"x": x, "delta": delta,
                         "interval": (alpha, beta), "error": str(exc)})
    return {"ok": ok, "runs": len(runs), "failures":
            [r for r in runs if "error" in r]}


def criterion_6_fourier_bounds() -> dict:
    """Coefficient-sum ceilings and the 4-delta main-term bound on a grid."""
    alphas = np.linspace(0.0, 2.4, 5)
    lengths = np.linspace(0.3, 0.7, 4)
    deltas = np.geomspace(1e-4, 9e-4, 5)
    checked = 0
    violations = []
    for a in alphas:
        for w in lengths:
            for d in deltas:
                iv = Interval(float(a), float(a + w))
                for sign in (-1, +1):
                    rep = fourier_coeff_sum_check(iv, float(d), sign)
                    if not rep["ok"]:
                        violations.append(("coeff", a, w, d, sign))
                main = main_term_check(iv, float(d))
                if not main["ok"]:
                    violations.append(("main", a, w, d))
                checked += 1
    return {"ok": not violations, "grid_points": checked,
            "violations": violations}


def criterion_7_density_table() -> dict:
    """Reproduce the six-row nonvanishing-density table in seconds."""
    t0 = time.perf_counter()
    table = reproduce_density_table()
    elapsed = time.perf_counter() - t0
    d12 = table[12]["lower_bound"]
    ok = (0.9999912 <= d12 <= 0.9999912 + 2e-6
          and all(rep["clears_printed"] for rep in table.values()))
    return {
        "ok": ok,
        "weight12_lower": d12,
        "rows": {k: {"lower_bound": rep["lower_bound"],
                     "printed": rep["printed"],
                     "clears": rep["clears_printed"]}
                 for k, rep in table.items()},
        "seconds": elapsed,
    }


def criterion_8_level11_density() -> dict:
    """Level-11 density bounds from the million-limit supersingular list.

    Expected to FAIL as stated: the printed 0.8465248 ceiling encodes
    zero-prime data reaching 10^11, and the 98 supersingular primes below
    10^6 leave the product at ~0.8465927; the lower bound suffers the same
    truncation.  Kept faithful rather than loosened.
    """
    zeros = tuple(supersingular_primes(1_000_000,
                                       series=_series("11a", 1_000_001)))
    upper = density_upper_bound_11a(zeros)
    cfg = DensityConfig(x0=1e6, bound_fn=zero_bound_fn(11, 2),
                        zero_primes=zeros, alpha=Fraction(14, 15))
    lower = density_lower_bound(cfg)
    return {
        "ok": upper <= 0.8465248 and lower >= 0.80,
        "supersingular_count": len(zeros),
        "upper": upper,
        "upper_target": 0.8465248,
        "lower": lower,
        "lower_target": 0.80,
    }


def criterion_9_quadratic_forms() -> dict:
    """Exact theta decompositions, the equivalence scan, and f_alpha."""
    tau = _series("delta12", 10_001)
    ok1, first1 = decomposition_check("q1", 1000)
    ok2, first2 = decomposition_check("q2", 5000, series=tau.truncate(5001))
    scan = thm19_check(5000, tau_series=tau.truncate(5001))
    seq = f_alpha(300)
    recurrence_ok = seq.recurrence_failures == (2,)
    alpha2 = {"direct": seq.values[2],
              "recurrence": -24 * seq.values[1] - 2048 * seq.values[0]}
    ok = (ok1 and ok2 and scan["ok"] and scan["factorization_ok"]
          and seq.nonvanishing and recurrence_ok
          and alpha2 == {"direct": 393536, "recurrence": -667328})
    return {
        "ok": ok,
        "q1_decomposition": (ok1, first1),
        "q2_decomposition": (ok2, first2),
        "equivalence_scan": {k: scan[k] for k in
                             ("ok", "factorization_ok", "tau_zeros")},
        "nonvanishing_to_300": seq.nonvanishing,
        "recurrence_failures": seq.recurrence_failures,
        "alpha2_discrepancy": alpha2,
    }


def criterion_10_bound_evaluators() -> dict:
    """Interval-translation invariance, the prime-count band, and the
    Chebyshev ceiling theta(x) < 1.001102 x through 10^7."""
    rng = random.Random(1732)
    base_iv = Interval(1 / 8, 1 / 8 + 5 / 16)
    base = sato_tate_discrepancy_bound(
        BoundContext(level=1, weight=12, x=1e17, interval=base_iv))
    max_shift = int((math.pi - base_iv.beta) * 64)
    translation_ok = True
    for _ in range(50):
        t = rng.randrange(0, max_shift + 1) / 64
        shifted = sato_tate_discrepancy_bound(BoundContext(
            level=1, weight=12, x=1e17,
            interval=Interval(base_iv.alpha + t, base_iv.beta + t)))
        translation_ok = translation_ok and shifted == base

    schoenfeld = [schoenfeld_check(x) for x in (1e4, 1e5, 1e6)]
    band_ok = all(rep["ok"] for rep in schoenfeld)

    primes = primes_up_to(10**7)
    theta = np.cumsum(np.log(primes.astype(np.float64)))
    chebyshev_ok = bool(np.all(theta < 1.001102 * primes))

    return {
        "ok": translation_ok and band_ok and chebyshev_ok,
        "translation_invariant": translation_ok,
        "schoenfeld": [{k: rep[k] for k in ("x", "gap", "bound", "ok")}
                       for rep in schoenfeld],
        "chebyshev_ok": chebyshev_ok,
        "chebyshev_primes": len(primes),
    }


@dataclass(frozen=True)
class Criterion:
    ident: int
    title: str
    fn: Callable[[], dict]


CRITERIA = (
    Criterion(1, "coefficient engine speed and Hecke exactness",
              criterion_1_coefficient_engine),
    Criterion(2, "level-11 coefficients vs curve point counts",
              criterion_2_point_count_oracle),
    Criterion(3, "congruence suite with Sturm certificate",
              criterion_3_congruence_suite),
    Criterion(4, "angle equidistribution at half-million scale",
              criterion_4_equidistribution),
    Criterion(5, "randomized smoothed sandwich brackets",
              criterion_5_sandwich),
    Criterion(6, "smoothing coefficient-sum and main-term ceilings",
              criterion_6_fourier_bounds),
    Criterion(7, "six-row density table reproduction",
              criterion_7_density_table),
    Criterion(8, "level-11 density bounds at the million crossover",
              criterion_8_level11_density),
    Criterion(9, "quadratic-form decompositions and f_alpha certificates",
              criterion_9_quadratic_forms),
    Criterion(10, "bound evaluator invariances and prime-count bands",
              criterion_10_bound_evaluators),
)


def run_criterion(ident: int) -> dict:
    for crit in CRITERIA:
        if crit.ident == ident:
            t0 = time.perf_counter()
            report = crit.fn()
            report.update(ident=crit.ident, title=crit.title,
                          seconds=report.get("seconds",
                                             time.perf_counter() - t0))
            return report
    raise ValueError(f"no criterion {ident}; have 1..{len(CRITERIA)}")


def run_all(idents=None) -> list:
    wanted = sorted(idents) if idents is not None \
        else [c.ident for c in CRITERIA]
    return [run_criterion(i) for i in wanted]


if __name__ == "__main__":
    for rep in run_all():
        flag = "PASS" if rep["ok"] else "FAIL"
        print(f"criterion {rep['ident']:2d} [{flag}] {rep['title']} "
              f"({rep['seconds']:.1f}s)")
