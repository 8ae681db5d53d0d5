"""The seven concrete newforms and their Hecke angles.

Covers the six one-dimensional level-1 cusp spaces (weights 12, 16, 18,
20, 22, 26) and the weight-2 level-11 form.  The weight-12 form and the
level-11 form come straight from eta products; the higher weights are
the eta form times an Eisenstein series, which is the unique normalized
eigenform because the cusp space is one-dimensional.

Angles: a(p) = 2 p^((k-1)/2) cos(theta_p) with theta_p in [0, pi].  The
Deligne bound |a(p)| <= 2 p^((k-1)/2) is enforced exactly (integer
arithmetic) with a 1e-9 relative tolerance before clamping; a violation
beyond that is a hard error, because it can only mean the coefficients
are wrong.

The level-11 form has a second life as the L-series of the conductor-11
elliptic curve y^2 + y = x^3 - x^2 - 10x - 20; `curve_ap` counts points
by a quadratic-character sum and provides an oracle for the eta-product
coefficients (and certifies the supersingular primes the nonvanishing
pipeline depends on).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from math import acos, copysign, pi, sqrt

import numpy as np

from .primes import primes_up_to, smallest_prime_factor_table
from .qexp import FourierSeries, eisenstein_series, eta_product, series_mul

__all__ = [
    "NewformSpec",
    "FORMS",
    "get_form_spec",
    "build_form",
    "hecke_check",
    "theta_angle",
    "AngleTable",
    "build_angle_table",
    "curve_ap",
    "curve_point_count",
    "supersingular_primes",
]


@dataclass(frozen=True)
class NewformSpec:
    """Identifies one of the seven supported forms."""

    label: str
    weight: int
    level: int
    recipe: str  # "eta-product" or "delta-times-eisenstein"

    def __post_init__(self):
        assert (self.weight, self.level) in {
            (12, 1), (16, 1), (18, 1), (20, 1), (22, 1), (26, 1), (2, 11),
        }, f"unsupported (weight, level) = ({self.weight}, {self.level})"


FORMS = {
    "delta12": NewformSpec("delta12", 12, 1, "eta-product"),
    "delta16": NewformSpec("delta16", 16, 1, "delta-times-eisenstein"),
    "delta18": NewformSpec("delta18", 18, 1, "delta-times-eisenstein"),
    "delta20": NewformSpec("delta20", 20, 1, "delta-times-eisenstein"),
    "delta22": NewformSpec("delta22", 22, 1, "delta-times-eisenstein"),
    "delta26": NewformSpec("delta26", 26, 1, "delta-times-eisenstein"),
    "11a": NewformSpec("11a", 2, 11, "eta-product"),
}


def get_form_spec(label: str) -> NewformSpec:
    try:
        return FORMS[label]
    except KeyError:
        raise ValueError(
            f"unknown form {label!r}; choose from {sorted(FORMS)}"
        ) from None


def build_form(spec, prec: int) -> FourierSeries:
    """q-expansion of the requested newform, exact integer coefficients.

    Accepts a NewformSpec or one of the labels in FORMS.  a(1) = 1 always.
    """
    if isinstance(spec, str):
        spec = get_form_spec(spec)
    if spec.label == "delta12":
        return eta_product([(1, 24)], prec)
    if spec.label == "11a":
        return eta_product([(1, 2), (11, 2)], prec)
    # weight-k level-1 with one-dimensional cusp space: eta^24 * E_{k-12};
    # the Eisenstein factors for k-12 in {4,6,8,10,14} are already integral
    scaled, c = eisenstein_series(spec.weight - 12, prec)
    assert c.denominator == 1, "expected an integral Eisenstein factor"
    return series_mul(eta_product([(1, 24)], prec), scaled)


def hecke_check(f: FourierSeries, k: int, level: int = 1):
    """Verify the normalized-eigenform relations on every index below prec.

    Checks a(1) = 1, a(mn) = a(m) a(n) for coprime m, n, and the prime-power
    recursion a(p^{r+1}) = a(p) a(p^r) - p^{k-1} a(p^{r-1}) for p not
    dividing the level; for p | level the relation degrades to
    a(p^{r+1}) = a(p) a(p^r).  Returns (True, None) or (False, description
    of the first violated relation).
    """
    prec = f.prec
    if prec >= 2 and f[1] != 1:
        return False, f"a(1) = {f[1]} != 1"
    if prec <= 2:
        return True, None
    spf = smallest_prime_factor_table(prec - 1)
    pk = {}
    for n in range(2, prec):
        p = int(spf[n])
        q = p
        m = n // p
        while m % p == 0:
            q *= p
            m //= p
        if m > 1:
            # n = q * m with gcd(q, m) = 1 and q the power of the smallest prime
            if f[n] != f[q] * f[m]:
                return False, f"a({n}) != a({q})*a({m})"
        elif q != p:
            # n = p^r, r >= 2
            r_minus = n // p
            if level % p == 0:
                expect = f[p] * f[r_minus]
            else:
                if p not in pk:
                    pk[p] = p ** (k - 1)
                expect = f[p] * f[r_minus] - pk[p] * f[r_minus // p]
            if f[n] != expect:
                return False, f"a({p}^r) recursion fails at n = {n}"
    return True, None


def theta_angle(a_p: int, p: int, k: int) -> float:
    """theta_p = arccos(a_p / (2 p^((k-1)/2))) in [0, pi].

    The Deligne inequality a_p^2 <= 4 p^(k-1) is tested in exact integer
    arithmetic with 1e-9 relative slack: a_p^2 * 10^18 <= 4 p^(k-1) * (10^9+1)^2.
    Inside the slack the cosine is clamped to [-1, 1]; outside it the
    coefficient is simply wrong and we raise.
    """
    four_pk = 4 * p ** (k - 1)
    aa = a_p * a_p
    if aa * 10**18 > four_pk * (10**9 + 1) ** 2:
        raise ValueError(
            f"|a_p| exceeds 2 p^((k-1)/2) beyond tolerance: a_p={a_p}, p={p}, k={k}"
        )
    if a_p == 0:
        return pi / 2
    u = sqrt(float(Fraction(aa, four_pk)))
    u = min(u, 1.0)
    return acos(copysign(u, a_p))


class AngleTable:
    """Immutable table of Hecke angles theta_p for primes p <= x_max.

    `primes` is an int64 array, `thetas` the matching float64 angles.
    Primes dividing the level are excluded.  `zeros` records a(p) == 0
    as an exact integer fact: theta_p == pi/2 in floating point is NOT a
    reliable zero test at large weight, where tiny nonzero cosines round
    to pi/2 (a CSV round trip therefore reconstructs `zeros` from the
    pi/2 float, which is exact for weight 2 at any realistic size but
    only heuristic for the high weights — where no zero is known at all).
    """

    __slots__ = ("spec", "x_max", "primes", "thetas", "zeros")

    def __init__(self, spec: NewformSpec, x_max: int, primes, thetas, zeros=None):
        self.spec = spec
        self.x_max = int(x_max)
        self.primes = np.asarray(primes, dtype=np.int64)
        self.thetas = np.asarray(thetas, dtype=np.float64)
        if zeros is None:
            zeros = self.thetas == pi / 2
        self.zeros = np.asarray(zeros, dtype=bool)
        assert self.primes.shape == self.thetas.shape == self.zeros.shape
        assert np.all(self.thetas >= 0.0) and np.all(self.thetas <= pi)
        self.primes.setflags(write=False)
        self.thetas.setflags(write=False)
        self.zeros.setflags(write=False)

    def __len__(self):
        return len(self.primes)

    def __iter__(self):
        return zip(self.primes.tolist(), self.thetas.tolist())

    def in_range(self, lo: float, hi: float) -> "AngleTable":
        """Sub-table of primes with lo <= p <= hi."""
        mask = (self.primes >= lo) & (self.primes <= hi)
        return AngleTable(self.spec, min(self.x_max, int(hi)),
                          self.primes[mask], self.thetas[mask], self.zeros[mask])

    def save_csv(self, path: str) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(f"# form: {self.spec.label}\n")
            fh.write(f"# xmax: {self.x_max}\n")
            writer = csv.writer(fh)
            writer.writerow(["p", "theta_p"])
            for p, t in zip(self.primes.tolist(), self.thetas.tolist()):
                writer.writerow([p, format(t, ".17g")])

    @classmethod
    def load_csv(cls, path: str) -> "AngleTable":
        label = None
        x_max = 0
        primes = []
        thetas = []
        with open(path, newline="") as fh:
            rows = []
            for line in fh:
                if line.startswith("#"):
                    body = line[1:].strip()
                    if body.startswith("form:"):
                        label = body[5:].strip()
                    elif body.startswith("xmax:"):
                        x_max = int(body[5:].strip())
                    continue
                rows.append(line)
            for rec in csv.reader(rows):
                if not rec or rec[0] == "p":
                    continue
                primes.append(int(rec[0]))
                thetas.append(float(rec[1]))
        if label is None:
            raise ValueError(f"{path}: missing '# form:' header line")
        spec = get_form_spec(label)
        if not x_max and primes:
            x_max = max(primes)
        return cls(spec, x_max, primes, thetas)


def build_angle_table(spec, x_max: int, series: FourierSeries | None = None) -> AngleTable:
    """Angles for all primes p <= x_max with p not dividing the level.

    `series` lets callers reuse an expansion they already have; it must
    cover prec > x_max, else this raises (no silent extension).
    """
    if isinstance(spec, str):
        spec = get_form_spec(spec)
    if series is None:
        series = build_form(spec, x_max + 1)
    if series.prec <= x_max:
        raise ValueError(
            f"series precision {series.prec} does not cover x_max = {x_max}"
        )
    ps = primes_up_to(x_max)
    if spec.level > 1:
        ps = ps[(spec.level % ps) != 0] if len(ps) else ps
    coeffs = series.coeffs
    thetas = np.empty(len(ps), dtype=np.float64)
    zeros = np.zeros(len(ps), dtype=bool)
    for i, p in enumerate(ps.tolist()):
        thetas[i] = theta_angle(coeffs[p], p, spec.weight)
        zeros[i] = coeffs[p] == 0
    return AngleTable(spec, x_max, ps, thetas, zeros)


# --- the conductor-11 elliptic curve --------------------------------------
#
# E: y^2 + y = x^3 - x^2 - 10x - 20.  For odd p, completing the square
# turns y^2 + y = f(x) into (2y+1)^2 = 4 f(x) + 1, so the number of y
# over F_p is 1 + chi(4 f(x) + 1) with chi the quadratic character; hence
# a_p = p + 1 - #E(F_p) = -sum_x chi(4 f(x) + 1).


def curve_ap(p: int) -> int:
    """Trace of Frobenius at p for the conductor-11 curve (any prime p != 11)."""
    if p == 11:
        raise ValueError("p = 11 is the bad prime for this curve")
    if p == 2:
        # direct count: both x give y^2 + y = 0, satisfied by y = 0 and 1
        return 2 + 1 - 5
    x = np.arange(p, dtype=np.int64)
    x2 = x * x % p
    x3 = x2 * x % p
    g = (4 * (x3 - x2 - 10 * x - 20) + 1) % p
    qr = np.zeros(p, dtype=np.int8)
    sq = x2[1:]
    qr[sq] = 1
    chi = np.where(qr[g] == 1, 1, -1)
    chi[g == 0] = 0
    return -int(chi.sum())


def curve_point_count(p: int) -> int:
    """#E(F_p) including the point at infinity."""
    return p + 1 - curve_ap(p)


def supersingular_primes(x_max: int, series: FourierSeries | None = None) -> list[int]:
    """Primes p <= x_max (p != 11) where the level-11 form has a(p) = 0.

    Found by scanning the eta-product expansion, then each one is
    re-certified by the independent point-count route — a zero coefficient
    is exactly what the nonvanishing machinery leans on, so it gets two
    independent witnesses.
    """
    if series is None:
        series = build_form("11a", x_max + 1)
    if series.prec <= x_max:
        raise ValueError("series precision does not cover x_max")
    coeffs = series.coeffs
    out = []
    for p in primes_up_to(x_max).tolist():
        if p != 11 and coeffs[p] == 0:
            assert curve_ap(p) == 0, f"expansion says a({p}) = 0 but point count disagrees"
            out.append(p)
    return out


if __name__ == "__main__":  # pragma: no cover
    f = build_form("delta12", 2000)
    ok, why = hecke_check(f, 12)
    assert ok, why
    g = build_form("11a", 2000)
    ok, why = hecke_check(g, 2, level=11)
    assert ok, why
    for p in (2, 3, 5, 7, 13):
        assert g[p] == curve_ap(p)
    print("newforms self-check ok; supersingular primes to 2000:",
          supersingular_primes(1999, g))
