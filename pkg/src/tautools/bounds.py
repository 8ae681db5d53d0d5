"""Closed-form evaluators for the explicit equidistribution error bounds.

Every ceiling used by the counting pipeline has a pure evaluator here: the
window-discrepancy bound for angle counts, the zero-prime window bound, the
prime-power crossover error, per-strip zero counts, sums over nontrivial and
trivial zeros, the explicit-formula remainder, and the smoothed prime-sum
("theta-star") bound.  The module also houses empirical comparators that
measure the matching statistic from an angle table so bounds can be checked
against reality inside the table's window.

Evaluators are deterministic double-precision formula evaluations; pass
``dps`` to re-evaluate with mpmath at >= 50 significant digits when freezing
regression constants.  Evaluating below a bound's proved threshold is
permitted for exploration but emits :class:`OutOfRegimeWarning`, and the
``evaluate`` dispatcher tags such results ``regime: extrapolated``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy.integrate import quad

from .primes import primes_up_to
from .satotate import Interval, psi_symn_window, theta_symn_sum

__all__ = [
    "BoundContext",
    "OutOfRegimeWarning",
    "BOUND_KINDS",
    "li",
    "li_high_precision",
    "schoenfeld_gap_bound",
    "schoenfeld_check",
    "chebyshev_theta_check",
    "sato_tate_discrepancy_bound",
    "zero_prime_window_bound",
    "prime_power_error_bound",
    "prime_power_error_actual",
    "zero_count_bound",
    "trivial_zero_bound",
    "sum_over_zeros_bound",
    "explicit_formula_error",
    "theta_star_bound",
    "theta_star_zero_height",
    "discrepancy_smoothing_width",
    "smoothing_width_in_range",
    "empirical_theta_star",
    "evaluate",
]


class OutOfRegimeWarning(UserWarning):
    """A bound was evaluated below the threshold where it is proved.

    The formula is still computed (useful for exploration), but any report
    built from it must carry the ``extrapolated`` tag.
    """


def _warn_regime(name: str, detail: str) -> None:
    warnings.warn(f"{name} evaluated out of regime: {detail}",
                  OutOfRegimeWarning, stacklevel=3)


@dataclass(frozen=True)
class BoundContext:
    """Shared inputs for the bound evaluators.

    ``zero_height`` is the cutoff T for the zero-sum and explicit-formula
    errors; for the per-strip zero count it is read as the strip index j
    (number of zeros with height between j and j+1).
    """

    level: int
    weight: int
    x: float
    interval: Interval | None = None
    sym_power: int | None = None
    zero_height: float | None = None
    smoothing_width: float | None = None

    def __post_init__(self):
        if self.level < 1 or self.weight < 2:
            raise ValueError("need level >= 1 and weight >= 2")
        if not self.x >= 2:
            raise ValueError("x must be >= 2")
        if self.sym_power is not None and self.sym_power < 0:
            raise ValueError("symmetric-power index must be >= 0")
        if self.zero_height is not None and not self.zero_height > 0:
            raise ValueError("zero height must be positive")
        if self.smoothing_width is not None and not 0.0 < self.smoothing_width < 1e-3:
            raise ValueError("smoothing width must lie in (0, 1/1000)")


# ---------------------------------------------------------------------------
# logarithmic integral and classical prime-counting checks


def li(x: float) -> float:
    """Integral of dt/log(t) from 2 to x, by adaptive quadrature.

    Relative error <= 1e-12 (the quadrature runs at 1e-13 and the reported
    error estimate is asserted).  Cross-validated against the mpmath offset
    logarithmic integral in `li_high_precision`.
    """
    x = float(x)
    if x < 2.0:
        raise ValueError("li is defined for x >= 2")
    if x == 2.0:
        return 0.0
    # integrate in exponent space (t = e^u): the domain [log 2, log x] stays
    # tiny even for astronomically large x, where direct quadrature over
    # [2, x] stalls on roundoff
    val, err = quad(lambda u: math.exp(u) / u, math.log(2.0), math.log(x),
                    epsabs=0.0, epsrel=1e-13, limit=400)
    assert err <= 1e-12 * abs(val)
    return val


def li_high_precision(x: float, dps: int = 50):
    """Same integral through mpmath's offset logarithmic integral.

    An independent route used to cross-check the quadrature and to freeze
    regression constants; returns an mpf with ``dps`` significant digits.
    """
    if x < 2:
        raise ValueError("li is defined for x >= 2")
    with mpmath.workdps(dps):
        return mpmath.li(mpmath.mpf(x), offset=True)


def schoenfeld_gap_bound(x: float) -> float:
    """Conditional ceiling sqrt(x)*log(x)/(8*pi) for |pi(x) - li(x)|, x >= 2657."""
    if x < 2657:
        _warn_regime("schoenfeld_gap_bound", f"x={x:g} < 2657")
    return math.sqrt(x) * math.log(x) / (8.0 * math.pi)


def schoenfeld_check(x: int) -> dict:
    """Measure |pi(x) - li(x)| against `schoenfeld_gap_bound` at one point."""
    x = int(x)
    pi_x = int(primes_up_to(x).size)
    li_x = li(float(x))
    gap = abs(pi_x - li_x)
    bound = schoenfeld_gap_bound(float(x))
    return {"x": x, "prime_count": pi_x, "li": li_x,
            "gap": gap, "bound": bound, "ok": bool(gap <= bound)}


def chebyshev_theta_check(x_values) -> list[dict]:
    """theta(x) = sum of log(p) over p <= x, against the 1.001102*x ceiling."""
    xs = sorted(int(v) for v in x_values)
    assert xs and xs[0] >= 2
    ps = primes_up_to(xs[-1])
    cum = np.cumsum(np.log(ps.astype(np.float64)))
    out = []
    for x in xs:
        idx = int(np.searchsorted(ps, x, side="right"))
        theta = float(cum[idx - 1]) if idx else 0.0
        out.append({"x": x, "theta": theta, "ceiling": 1.001102 * x,
                    "ok": bool(theta < 1.001102 * x)})
    return out


# ---------------------------------------------------------------------------
# closed-form bound evaluators
#
# Each bound has a private term builder producing (name, value) pairs so the
# dispatcher can expose every summand separately.  Builders are written once
# and run either with the math module on floats or with mpmath under a
# workdps context; numeric literals pass through ``num`` so the decimal
# constants stay exact in the high-precision path.


def _run(builder, dps, *args):
    if dps is None:
        terms = builder(math, float, *args)
        return terms, math.fsum(v for _, v in terms)
    with mpmath.workdps(dps):
        terms = builder(mpmath, mpmath.mpf, *args)
        return terms, mpmath.fsum(v for _, v in terms)


def _discrepancy_terms(m, num, x, length, level, weight):
    x = num(x)
    length = num(length)
    lg = m.log(x)
    x34 = x ** num("0.75")
    return [
        ("leading_x34", num("2.5") * x34),
        ("loglog_x34", -x34 * m.log(lg) / (2 * lg)),
        ("level_weight_x34", m.log(num(level * (weight - 1))) * x34 / lg),
        ("interval_sqrtx",
         -(2 * (7 + 10 * length) * m.log(length)) / (25 * length) * m.sqrt(x)),
    ]


def sato_tate_discrepancy_bound(ctx: BoundContext, dps: int | None = None):
    """Ceiling for |#{p in [x,2x]: theta_p in I} - mu_ST(I)(pi(2x)-pi(x))|.

    Four terms: 5x^(3/4)/2, minus a loglog correction, plus a level-weight
    term, minus an interval-length term.  Proved for x >= 1e17; depends on
    the interval only through its length beta - alpha, so the value is
    exactly invariant under translating the interval.
    """
    if ctx.interval is None:
        raise ValueError("interval required for the discrepancy bound")
    iv = ctx.interval
    if not iv.beta > iv.alpha:
        raise ValueError("interval must have positive length")
    if ctx.x < 1e17:
        _warn_regime("sato_tate_discrepancy_bound", f"x={ctx.x:g} < 1e17")
    _, total = _run(_discrepancy_terms, dps,
                    ctx.x, iv.beta - iv.alpha, ctx.level, ctx.weight)
    return total


def _zero_window_terms(m, num, x, level, weight):
    x = num(x)
    lg = m.log(x)
    x34 = x ** num("0.75")
    return [
        ("leading", num("7.392") * x34 / m.sqrt(lg)),
        ("loglog", -num("7.391") * x34 * m.log(lg) / lg ** num("1.5")),
        ("level_weight",
         (num("15.296") + num("14.784") * m.log(num(level * (weight - 1))))
         * x34 / lg ** num("1.5")),
    ]


def zero_prime_window_bound(ctx: BoundContext, dps: int | None = None):
    """Ceiling for #{p in [x,2x]: a(p) = 0}.

    7.392*x^(3/4)/sqrt(log x) minus a loglog correction plus a level-weight
    term, all over log(x)^(3/2).  Proved for x >= 1e11.
    """
    if ctx.x < 1e11:
        _warn_regime("zero_prime_window_bound", f"x={ctx.x:g} < 1e11")
    _, total = _run(_zero_window_terms, dps, ctx.x, ctx.level, ctx.weight)
    return total


def _prime_power_terms(m, num, n, x):
    x = num(x)
    return [("prime_power", num(8) / 5 * (n + 1) * m.sqrt(x) / m.log(x))]


def prime_power_error_bound(n: int, x: float, dps: int | None = None):
    """Ceiling (8/5)(n+1)sqrt(x)/log(x) for switching the degree-n prime sum
    to its prime-power completion.  Proved for x >= 1e17."""
    if n < 0:
        raise ValueError("symmetric-power index must be >= 0")
    if x < 1e17:
        _warn_regime("prime_power_error_bound", f"x={x:g} < 1e17")
    _, total = _run(_prime_power_terms, dps, n, x)
    return total


def prime_power_error_actual(n: int, x: float, table) -> float:
    """Exact |Theta - Psi| for the degree-n sums over the table's window."""
    return abs(theta_symn_sum(x, n, table) - psi_symn_window(x, n, table))


def _zero_count_terms(m, num, n, j, level, weight):
    return [
        ("level_weight", 5 * num(n) / 6 * m.log(num(level * (weight - 1)) / 2)),
        ("height_weight", 2 * m.log(num(4 * j + weight + 7))),
        ("sym_height",
         5 * (num(n) + 5) / 6 * m.log(num(n) / 2 + num("3.5") + num(j))),
    ]


def zero_count_bound(n: int, j: float, level: int, weight: int,
                     dps: int | None = None):
    """Ceiling for the number of nontrivial zeros of the degree-n L-function
    with height between j and j+1."""
    if n < 0:
        raise ValueError("symmetric-power index must be >= 0")
    if j < 0:
        raise ValueError("strip index must be >= 0")
    _, total = _run(_zero_count_terms, dps, n, j, level, weight)
    return total


def _trivial_zero_terms(m, num, n, x):
    return [("trivial_zeros", (num(n) + 3) / m.sqrt(num(x)))]


def trivial_zero_bound(n: int, x: float, dps: int | None = None):
    """Ceiling (n+3)/sqrt(x) for the sum of |x^rho/rho| over nonzero trivial
    zeros of the degree-n L-function.  Proved for x >= 1e17."""
    if n < 0:
        raise ValueError("symmetric-power index must be >= 0")
    if x < 1e17:
        _warn_regime("trivial_zero_bound", f"x={x:g} < 1e17")
    _, total = _run(_trivial_zero_terms, dps, n, x)
    return total


def _zero_sum_terms(m, num, n, height, x, level, weight):
    x = num(x)
    t = num(height)
    rootx = m.sqrt(x)
    lgt = m.log(t)
    # The log(n) factor in the third term is clamped at 0: for n = 0 the
    # literal term is -inf, and discarding a negative contribution only
    # loosens an upper bound (n = 1 gives log 1 = 0, so the clamp is exact
    # there).
    log_n = m.log(num(n)) if n > 1 else num(0)
    return [
        ("sym_pair", rootx * lgt * n * m.log(num(n + 1))),
        ("conductor_height", rootx * lgt * m.log(t * level * (weight - 1)) / 2),
        ("sym_log", rootx * lgt * log_n),
        ("weight_height", num(9) / 2 * rootx * lgt * m.log(t * (weight + 7))),
    ]


def sum_over_zeros_bound(n: int, zero_height: float, x: float,
                         level: int, weight: int, dps: int | None = None):
    """Ceiling for the sum of |x^rho/rho| over nontrivial zeros of the
    degree-n L-function with height below the cutoff.  Proved for cutoffs
    >= 1e12."""
    if n < 0:
        raise ValueError("symmetric-power index must be >= 0")
    if not zero_height > 0:
        raise ValueError("zero height must be positive")
    if zero_height < 1e12:
        _warn_regime("sum_over_zeros_bound", f"T={zero_height:g} < 1e12")
    _, total = _run(_zero_sum_terms, dps, n, zero_height, x, level, weight)
    return total


def _formula_error_terms(m, num, height, x):
    x = num(x)
    t = num(height)
    lg = m.log(x)
    prefactor = m.e * lg / (2 * t)
    return [
        ("height", prefactor * 8 * t),
        ("linear_x", prefactor * 9 * x),
        ("x_logx", prefactor * 4 * x * lg),
    ]


def explicit_formula_error(zero_height: float, x: float,
                           dps: int | None = None):
    """Remainder (e*log(x)/2T)(8T + 9x + 4x*log(x)) of the truncated
    explicit formula; the per-degree error is (n+1) times this.  Proved for
    cutoffs >= 1e12.  As x/T -> 0 the value tends to 4e*log(x)."""
    if not zero_height > 0:
        raise ValueError("zero height must be positive")
    if not x >= 2:
        raise ValueError("x must be >= 2")
    if zero_height < 1e12:
        _warn_regime("explicit_formula_error", f"T={zero_height:g} < 1e12")
    _, total = _run(_formula_error_terms, dps, zero_height, x)
    return total


def _theta_star_terms(m, num, n, x, level, weight):
    x = num(x)
    rootx = m.sqrt(x)
    lg = m.log(x)
    return [
        ("sym_pair", num(7) / 25 * n * m.log(num(n + 1)) * rootx),
        ("sym_main",
         (lg / 8 + m.log(num(level * (weight - 1))) / 7) * n * rootx),
        ("pair_log", num(2) / 5 * m.log(num(n + 1)) * rootx),
        ("main", (lg + num(7) / 5 * m.log(num(weight + 7))) * rootx),
    ]


def theta_star_bound(n: int, x: float, level: int, weight: int,
                     dps: int | None = None):
    """Ceiling for |Theta*(x)|, the degree-n smoothed prime sum over [x,2x]
    with the degree-0 main term li(2x) - li(x) removed.

    Four terms, each a multiple of sqrt(x).  Proved for x >= 1e17; the
    derivation truncates the explicit formula at the cutoff exposed by
    `theta_star_zero_height`.
    """
    if n < 0:
        raise ValueError("symmetric-power index must be >= 0")
    if x < 1e17:
        _warn_regime("theta_star_bound", f"x={x:g} < 1e17")
    _, total = _run(_theta_star_terms, dps, n, x, level, weight)
    return total


def theta_star_zero_height(x: float) -> float:
    """Zero-sum cutoff T = 20*sqrt(x)*log(x) substituted when deriving
    `theta_star_bound` from the explicit formula."""
    return 20.0 * math.sqrt(x) * math.log(x)


def discrepancy_smoothing_width(x: float) -> float:
    """Smoothing width delta = (sqrt(39)/20) x^(-1/4) log(x) chosen when
    deriving `sato_tate_discrepancy_bound`."""
    return math.sqrt(39.0) / 20.0 * x ** -0.25 * math.log(x)


def smoothing_width_in_range(x: float) -> bool:
    """Whether the derivation's smoothing width stays below 1/1000, the
    hypothesis under which the Fourier-coefficient sums are bounded.

    The width decreases in x and crosses 1/1000 between 1e16 and 1e17, so
    configurations below the discrepancy bound's own x-threshold can leave
    the proved smoothing range; callers should flag those.
    """
    return discrepancy_smoothing_width(x) < 1e-3


def empirical_theta_star(n: int, x: float, table) -> float:
    """Theta*(x) measured from an angle table: the degree-n window sum with
    the main term li(2x) - li(x) subtracted when n = 0."""
    value = theta_symn_sum(x, n, table)
    if n == 0:
        value -= li(2.0 * x) - li(x)
    return value


# ---------------------------------------------------------------------------
# dispatcher

BOUND_KINDS = ("main", "zero", "prime-power", "zero-count", "trivial-zero",
               "sum-over-zeros", "explicit-formula", "theta-star")

# bound kind -> (threshold field, threshold); kinds absent here have no
# regime restriction
_THRESHOLDS = {
    "main": ("x", 1e17),
    "zero": ("x", 1e11),
    "prime-power": ("x", 1e17),
    "trivial-zero": ("x", 1e17),
    "theta-star": ("x", 1e17),
    "sum-over-zeros": ("zero_height", 1e12),
    "explicit-formula": ("zero_height", 1e12),
}


def _require(ctx: BoundContext, *fields: str) -> None:
    missing = [f for f in fields if getattr(ctx, f) is None]
    if missing:
        raise ValueError("bound context missing fields: " + ", ".join(missing))


def evaluate(which: str, ctx: BoundContext, dps: int | None = None) -> dict:
    """Evaluate one bound kind on a context, exposing each summand.

    Returns ``{"which", "value", "regime", "terms"}`` where ``terms`` lists
    ``{"name", "value"}`` per summand and ``regime`` is ``in-regime`` or
    ``extrapolated``.  With ``dps`` set, values are decimal strings carrying
    that many significant digits; otherwise they are floats.
    """
    if which == "main":
        _require(ctx, "interval")
        iv = ctx.interval
        if not iv.beta > iv.alpha:
            raise ValueError("interval must have positive length")
        builder, args = _discrepancy_terms, (ctx.x, iv.beta - iv.alpha,
                                             ctx.level, ctx.weight)
    elif which == "zero":
        builder, args = _zero_window_terms, (ctx.x, ctx.level, ctx.weight)
    elif which == "prime-power":
        _require(ctx, "sym_power")
        builder, args = _prime_power_terms, (ctx.sym_power, ctx.x)
    elif which == "zero-count":
        _require(ctx, "sym_power", "zero_height")
        builder, args = _zero_count_terms, (ctx.sym_power, ctx.zero_height,
                                            ctx.level, ctx.weight)
    elif which == "trivial-zero":
        _require(ctx, "sym_power")
        builder, args = _trivial_zero_terms, (ctx.sym_power, ctx.x)
    elif which == "sum-over-zeros":
        _require(ctx, "sym_power", "zero_height")
        builder, args = _zero_sum_terms, (ctx.sym_power, ctx.zero_height,
                                          ctx.x, ctx.level, ctx.weight)
    elif which == "explicit-formula":
        _require(ctx, "zero_height")
        builder, args = _formula_error_terms, (ctx.zero_height, ctx.x)
    elif which == "theta-star":
        _require(ctx, "sym_power")
        builder, args = _theta_star_terms, (ctx.sym_power, ctx.x,
                                            ctx.level, ctx.weight)
    else:
        raise ValueError(f"unknown bound kind {which!r}; "
                         f"expected one of {', '.join(BOUND_KINDS)}")

    regime = "in-regime"
    restriction = _THRESHOLDS.get(which)
    if restriction is not None:
        field, threshold = restriction
        if getattr(ctx, field) < threshold:
            regime = "extrapolated"

    terms, total = _run(builder, dps, *args)
    if dps is None:
        render = float
    else:
        def render(v):
            return mpmath.nstr(v, dps)
    return {
        "which": which,
        "value": render(total),
        "regime": regime,
        "terms": [{"name": name, "value": render(value)}
                  for name, value in terms],
    }


def _self_check() -> None:
    assert li(2.0) == 0.0
    assert abs(li(1e6) - 78626.5) < 1.0
    ctx = BoundContext(level=1, weight=12, x=1e17,
                       interval=Interval(math.pi / 4, math.pi / 2))
    v = sato_tate_discrepancy_bound(ctx)
    assert math.isfinite(v) and v > 0
    report = evaluate("main", ctx)
    assert report["regime"] == "in-regime"
    assert math.isclose(sum(t["value"] for t in report["terms"]), v,
                        rel_tol=1e-15)
    print("bounds self-check ok:", v)


if __name__ == "__main__":
    _self_check()
