"""Exact representation numbers for two quadratic forms and the
Eisenstein/cusp split of their theta series.

The two shipped forms: a quaternary form of determinant 11^2 (q1) and the
sum of 24 squares (q2).  Representation counts come from bounded lattice
enumeration (q1) or exact convolution powers of the unary theta series
(q2); both decompose as an explicit Eisenstein part plus a multiple of a
cusp eigenform, and everything here is integer/rational arithmetic with no
floating point in any asserted identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .newforms import build_form
from .qexp import FourierSeries, series_mul, sigma

__all__ = [
    "QuadraticFormSpec",
    "Q1_SPEC",
    "Q2_SPEC",
    "get_quadform_spec",
    "r_q_enumerate",
    "unary_theta",
    "theta_power",
    "r_q2_theta",
    "eisenstein_coeff",
    "cusp_coeff",
    "eisenstein_table",
    "cusp_table",
    "decomposition_check",
    "GAMMAS",
    "CLOSED_FORM_CONSTANTS",
    "FAlphaSequence",
    "tau_two_power_table",
    "f_alpha",
    "thm19_check",
]


def _ldl_exact(gram):
    """Exact LDL^T factorization over the rationals.

    Returns (L, D) with unit lower-triangular L and positive pivots D, or
    raises ValueError if some pivot fails to be positive (the matrix is
    then not positive definite).  x^T A x = sum_i D[i] * y_i^2 with
    y = L^T x.
    """
    d = len(gram)
    L = [[Fraction(1) if i == j else Fraction(0) for j in range(d)]
         for i in range(d)]
    D = [Fraction(0)] * d
    for i in range(d):
        acc = Fraction(gram[i][i])
        for k in range(i):
            acc -= L[i][k] * L[i][k] * D[k]
        if acc <= 0:
            raise ValueError("gram matrix is not positive definite")
        D[i] = acc
        for j in range(i + 1, d):
            s = Fraction(gram[j][i])
            for k in range(i):
                s -= L[j][k] * L[i][k] * D[k]
            L[j][i] = s / D[i]
    return L, D


@dataclass(frozen=True)
class QuadraticFormSpec:
    """An integral positive-definite quadratic form Q(x) = (1/2) x^T A x.

    The gram matrix must be symmetric with even diagonal, so Q takes
    integer values; positive definiteness (checked via exact rational
    pivots) then forces Q(x) >= 1 for every nonzero integer vector.
    """

    name: str
    gram: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.gram)
        object.__setattr__(self, "gram", rows)
        d = len(rows)
        assert all(len(row) == d for row in rows), "gram must be square"
        for i in range(d):
            assert rows[i][i] % 2 == 0, "diagonal entries must be even"
            for j in range(d):
                assert rows[i][j] == rows[j][i], "gram must be symmetric"
        _ldl_exact(rows)  # raises unless positive definite

    @property
    def dimension(self) -> int:
        return len(self.gram)

    def value(self, x) -> int:
        """Q(x), exact."""
        assert len(x) == self.dimension
        twice = sum(self.gram[i][j] * x[i] * x[j]
                    for i in range(self.dimension)
                    for j in range(self.dimension))
        assert twice % 2 == 0
        return twice // 2


# x^2 + y^2 + 3z^2 + 3w^2 + xz + yw
Q1_SPEC = QuadraticFormSpec("q1", ((2, 0, 1, 0),
                                   (0, 2, 0, 1),
                                   (1, 0, 6, 0),
                                   (0, 1, 0, 6)))

# sum of 24 squares
Q2_SPEC = QuadraticFormSpec("q2", tuple(tuple(2 if i == j else 0
                                              for j in range(24))
                                        for i in range(24)))


def get_quadform_spec(name: str) -> QuadraticFormSpec:
    key = name.lower()
    if key == "q1":
        return Q1_SPEC
    if key == "q2":
        return Q2_SPEC
    raise ValueError(f"unknown quadratic form {name!r}; have q1, q2")


def r_q_enumerate(spec: QuadraticFormSpec, n_max: int):
    """Exact counts r_Q(0..n_max) by bounded lattice enumeration.

    Coordinate windows come from the exact LDL profile (evaluated in
    floats, then widened by two units on each side); membership of every
    candidate is decided by the exact integer value of Q, so the counts
    are exact as long as the widened windows cover the true ones, which
    the two-unit pad guarantees against the sub-1e-9 float drift involved.
    Dimensions above 6 are refused: enumeration cost grows too fast and
    the shipped large form has a convolution path instead.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    d = spec.dimension
    if d > 6:
        raise ValueError("enumeration path handles dimension <= 6 only; "
                         "use a theta-series route for larger forms")
    L, D = _ldl_exact(spec.gram)
    Lf = [[float(v) for v in row] for row in L]
    Df = [float(v) for v in D]
    A = spec.gram
    half_a00 = A[0][0] // 2
    counts = np.zeros(n_max + 1, dtype=np.int64)
    budget = 2.0 * n_max  # working bound on sum_k D_k y_k^2 = 2 Q(x)
    slack = 1e-7 * (budget + 1.0)
    x = [0] * d

    def descend(i: int, rem: float) -> None:
        c = math.fsum(Lf[j][i] * x[j] for j in range(i + 1, d))
        width = math.sqrt(max(rem, 0.0) / Df[i])
        lo = math.ceil(-c - width) - 2
        hi = math.floor(-c + width) + 2
        if i == 0:
            t = np.arange(lo, hi + 1, dtype=np.int64)
            s = sum(A[0][j] * x[j] for j in range(1, d))
            x[0] = 0
            base = spec.value(x)
            q = half_a00 * t * t + s * t + base
            np.add.at(counts, q[(q >= 0) & (q <= n_max)], 1)
            return
        for v in range(lo, hi + 1):
            x[i] = v
            y = v + c
            descend(i - 1, rem - Df[i] * y * y + slack)
        x[i] = 0

    descend(d - 1, budget)
    return [int(v) for v in counts]


def unary_theta(n_max: int) -> FourierSeries:
    """1 + 2q + 2q^4 + 2q^9 + ...: the theta series of a single square."""
    return FourierSeries(
        1 if n == 0 else (2 if math.isqrt(n) ** 2 == n else 0)
        for n in range(n_max + 1))


def theta_power(power: int, n_max: int) -> FourierSeries:
    """Theta series of a sum of `power` squares, by repeated squaring."""
    if power < 1:
        raise ValueError("power must be >= 1")
    base = unary_theta(n_max)
    out = None
    while power:
        if power & 1:
            out = base if out is None else series_mul(out, base)
        power >>= 1
        if power:
            base = series_mul(base, base)
    return out


def r_q2_theta(n_max: int):
    """Exact counts r(0..n_max) for the sum of 24 squares."""
    return [int(c) for c in theta_power(24, n_max).coeffs]


def _sigma_or_zero(m: int, n: int, q: int) -> int:
    """sigma_m(n/q), with sigma of a non-integral argument read as 0."""
    return sigma(m, n // q) if n % q == 0 else 0


def eisenstein_coeff(form: str, n: int) -> Fraction:
    """Exact n-th coefficient of the Eisenstein part of the theta series."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return Fraction(1)
    key = form.lower()
    if key == "q1":
        return Fraction(12, 5) * (sigma(1, n) - 11 * _sigma_or_zero(1, n, 11))
    if key == "q2":
        return Fraction(16, 691) * (sigma(11, n)
                                    - 2 * _sigma_or_zero(11, n, 2)
                                    + 4096 * _sigma_or_zero(11, n, 4))
    raise ValueError(f"unknown quadratic form {form!r}")


def cusp_coeff(form: str, n: int, series: FourierSeries | None = None) -> Fraction:
    """Exact n-th coefficient of the cusp part of the theta series.

    `series` may carry the relevant eigenform expansion (the level-11 form
    for q1, the weight-12 form for q2) to precision > n; it is built on
    demand otherwise.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return Fraction(0)
    key = form.lower()
    if key == "q1":
        a11 = series if series is not None else build_form("11a", n + 1)
        return Fraction(8, 5) * a11[n]
    if key == "q2":
        tau = series if series is not None else build_form("delta12", n + 1)
        combo = (GAMMAS[0] * tau[n]
                 + GAMMAS[1] * (tau[n // 2] if n % 2 == 0 else 0)
                 + GAMMAS[2] * (tau[n // 4] if n % 4 == 0 else 0))
        return Fraction(128, 691) * combo
    raise ValueError(f"unknown quadratic form {form!r}")


def eisenstein_table(form: str, n_max: int):
    return [eisenstein_coeff(form, n) for n in range(n_max + 1)]


def cusp_table(form: str, n_max: int, series: FourierSeries | None = None):
    key = form.lower()
    if series is None:
        series = build_form("11a" if key == "q1" else "delta12", n_max + 1)
    return [cusp_coeff(key, n, series) for n in range(n_max + 1)]


def decomposition_check(form: str, n_max: int,
                        series: FourierSeries | None = None,
                        counts=None):
    """Assert r_Q(n) = Eisenstein + cusp coefficient exactly for n <= n_max.

    Returns (True, None) or (False, first failing n).  All rational
    arithmetic; `counts` may supply a precomputed representation table.
    """
    key = form.lower()
    if counts is None:
        counts = r_q_enumerate(Q1_SPEC, n_max) if key == "q1" \
            else r_q2_theta(n_max)
    eis = eisenstein_table(key, n_max)
    cusp = cusp_table(key, n_max, series=series)
    for n in range(n_max + 1):
        if Fraction(counts[n]) != eis[n] + cusp[n]:
            return False, n
    return True, None


# ---------------------------------------------------------------------------
# the two-power coefficient combination

GAMMAS = (259, 11920, 1060864)

# Constants of the closed form f_alpha = (l1*phi^alpha + l2*conj(phi)^alpha)/l0
# over Z[sqrt(-119)], recorded as (rational part, sqrt(-119) part) metadata.
# They are a proof device only -- no computation here uses them.
CLOSED_FORM_CONSTANTS = {
    "discriminant": -119,
    "lambda0": (5712, -1904),
    "lambda1": (1479408, -370960),
    "lambda2": (797895, -388141),
    "phi": (-12, 4),
}


def tau_two_power_table(alpha_max: int):
    """tau_12(2^alpha) for alpha = 0..alpha_max via the Hecke recursion."""
    if alpha_max < 0:
        raise ValueError("alpha_max must be >= 0")
    tau2 = int(build_form("delta12", 3)[2])
    out = [1, tau2]
    while len(out) <= alpha_max:
        out.append(tau2 * out[-1] - 2**11 * out[-2])
    return out[:alpha_max + 1]


@dataclass(frozen=True)
class FAlphaSequence:
    """f_alpha = g1*tau(2^a) + g2*tau(2^(a-1)) + g3*tau(2^(a-2)), exact.

    tau at a non-positive power index is read as 0, so f_0 = g1 and
    f_1 = g1*tau(2) + g2.  recurrence_failures lists the alpha >= 2 where
    the three-term recurrence f_a = -24 f_(a-1) - 2048 f_(a-2) does NOT
    hold (expected: exactly alpha = 2, where the g3 slot is newly born).
    """

    values: tuple
    tau_two_powers: tuple
    nonvanishing: bool
    recurrence_failures: tuple
    gammas: tuple = GAMMAS

    def __post_init__(self):
        assert len(self.values) == len(self.tau_two_powers)
        g1, g2, g3 = self.gammas
        taus = self.tau_two_powers
        for a, f in enumerate(self.values):
            direct = (g1 * taus[a]
                      + (g2 * taus[a - 1] if a >= 1 else 0)
                      + (g3 * taus[a - 2] if a >= 2 else 0))
            assert f == direct, f"stored f_{a} disagrees with its definition"


def f_alpha(alpha_max: int) -> FAlphaSequence:
    """The f_alpha sequence to alpha_max, with its nonvanishing certificate.

    Values come from the direct defining combination (not the printed
    recurrence, which fails at alpha = 2; see recurrence_failures).
    """
    taus = tau_two_power_table(alpha_max)
    g1, g2, g3 = GAMMAS
    values = []
    for a in range(alpha_max + 1):
        values.append(g1 * taus[a]
                      + (g2 * taus[a - 1] if a >= 1 else 0)
                      + (g3 * taus[a - 2] if a >= 2 else 0))
    failures = tuple(a for a in range(2, alpha_max + 1)
                     if values[a] != -24 * values[a - 1] - 2048 * values[a - 2])
    return FAlphaSequence(
        values=tuple(values),
        tau_two_powers=tuple(taus),
        nonvanishing=all(v != 0 for v in values),
        recurrence_failures=failures,
    )


def thm19_check(n_max: int, tau_series: FourierSeries | None = None) -> dict:
    """Exact equivalence scan: r_Q2(n) equals its Eisenstein part at n if
    and only if tau_12(n) = 0.

    Also certifies the factorization behind it, cross-multiplied to avoid
    division: for n = 2^alpha * m with m odd,

        (g1 tau(n) + g2 tau(n/2) + g3 tau(n/4)) * tau(2^alpha)
            = f_alpha * tau(n).

    Returns a report dict; `ok` requires the biconditional to hold at
    every n <= n_max (with no known tau zero, both sides stay False).
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    counts = r_q2_theta(n_max)
    tau = tau_series if tau_series is not None \
        else build_form("delta12", n_max + 1)
    if tau.prec < n_max + 1:
        raise ValueError("tau series too short")
    seq = f_alpha(n_max.bit_length())
    g1, g2, g3 = GAMMAS

    counterexample = None
    factorization_counterexample = None
    tau_zeros = []
    for n in range(1, n_max + 1):
        eis_equal = Fraction(counts[n]) == eisenstein_coeff("q2", n)
        tau_zero = tau[n] == 0
        if tau_zero:
            tau_zeros.append(n)
        if eis_equal != tau_zero and counterexample is None:
            counterexample = n
        a = (n & -n).bit_length() - 1
        combo = (g1 * tau[n]
                 + (g2 * tau[n // 2] if n % 2 == 0 else 0)
                 + (g3 * tau[n // 4] if n % 4 == 0 else 0))
        if combo * seq.tau_two_powers[a] != seq.values[a] * tau[n] \
                and factorization_counterexample is None:
            factorization_counterexample = n
    return {
        "n_max": n_max,
        "ok": counterexample is None,
        "counterexample": counterexample,
        "factorization_ok": factorization_counterexample is None,
        "factorization_counterexample": factorization_counterexample,
        "tau_zeros": tau_zeros,
    }


def _self_check() -> None:
    assert r_q_enumerate(Q1_SPEC, 1) == [1, 4]
    assert r_q2_theta(1) == [1, 48]
    assert eisenstein_coeff("q2", 1) == Fraction(16, 691)
    assert cusp_coeff("q2", 1) == Fraction(128 * 259, 691)
    assert Fraction(16, 691) + Fraction(128 * 259, 691) == 48
    assert eisenstein_coeff("q1", 11) == Fraction(12, 5)
    seq = f_alpha(3)
    assert seq.values[:3] == (259, 5704, 393536)
    assert seq.recurrence_failures == (2,)
    assert decomposition_check("q1", 60) == (True, None)
    assert decomposition_check("q2", 60) == (True, None)
    rep = thm19_check(60)
    assert rep["ok"] and rep["factorization_ok"] and not rep["tau_zeros"]
    print("quadform self-check ok")


if __name__ == "__main__":
    _self_check()
