"""Exact integer q-expansion arithmetic.

The one data structure everything else consumes is :class:`FourierSeries`:
a truncated power series sum a(n) q^n with arbitrary-precision integer
coefficients and an explicit exclusive precision bound (`prec` == number of
stored coefficients).  Binary operations truncate to the shorter operand;
nothing ever reads past `prec`, and silent extension is impossible —
callers must request enough precision up front.

Multiplication is the hot path (eta powers at precision 10^6), so it runs
by Kronecker substitution: pack the coefficient vectors into two huge
integers, multiply once through gmpy2/GMP, and slice the digits back out.
Signed coefficients are handled by splitting each operand into positive and
negative parts before packing and by adding a per-digit offset of 2^(b-1)
before decoding, which keeps every base-2^b digit nonnegative without
inter-digit borrows.

Also here: divisor power sums, Bernoulli numbers, Eisenstein series (kept
integral via a separate rational prefactor), eta products via Euler's
pentagonal-number series and repeated squaring, the U(d)/V(d)/theta
operators, quadratic twists, Sturm bounds, and series congruence checks.
"""

from __future__ import annotations

import struct
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

import gmpy2

__all__ = [
    "FourierSeries",
    "series_mul",
    "sigma",
    "sigma_table",
    "bernoulli",
    "eisenstein_series",
    "eta_product",
    "u_operator",
    "v_operator",
    "theta_operator",
    "twist_quadratic",
    "twisted_level",
    "chi_minus4",
    "chi_8",
    "chi_minus8",
    "sturm_bound",
    "congruent_up_to",
    "save_text",
    "load_text",
    "save_binary",
    "load_binary",
]


class FourierSeries:
    """Truncated q-expansion with exact integer coefficients.

    coeffs[n] is the coefficient of q^n; prec == len(coeffs) is the
    exclusive bound: coefficients are correct for 0 <= n < prec and
    unknown beyond.  Instances are immutable.

    >>> f = FourierSeries([1, 1])      # 1 + q, prec 2
    >>> g = FourierSeries([1, -1, 0])  # 1 - q, prec 3
    >>> (f * g).coeffs                 # truncated to prec 2
    (1, 0)
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs):
        self._coeffs = tuple(int(c) for c in coeffs)

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def prec(self) -> int:
        return len(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    def __getitem__(self, n):
        return self._coeffs[n]

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other):
        return isinstance(other, FourierSeries) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        head = ", ".join(str(c) for c in self._coeffs[:6])
        tail = ", ..." if self.prec > 6 else ""
        return f"FourierSeries([{head}{tail}], prec={self.prec})"

    def truncate(self, prec: int) -> "FourierSeries":
        if prec > self.prec:
            raise ValueError(f"cannot extend precision {self.prec} to {prec}")
        return FourierSeries(self._coeffs[:prec])

    def shift(self, m: int) -> "FourierSeries":
        """Multiply by q^m, keeping the same precision window [0, prec)."""
        if m < 0:
            raise ValueError("negative shift")
        if m == 0:
            return self
        return FourierSeries((0,) * m + self._coeffs[: self.prec - m])

    def __add__(self, other):
        p = min(self.prec, other.prec)
        return FourierSeries(a + b for a, b in zip(self._coeffs[:p], other._coeffs[:p]))

    def __sub__(self, other):
        p = min(self.prec, other.prec)
        return FourierSeries(a - b for a, b in zip(self._coeffs[:p], other._coeffs[:p]))

    def __mul__(self, other):
        if isinstance(other, FourierSeries):
            return series_mul(self, other)
        if isinstance(other, int):
            return FourierSeries(other * c for c in self._coeffs)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return FourierSeries(other * c for c in self._coeffs)
        return NotImplemented

    def __neg__(self):
        return FourierSeries(-c for c in self._coeffs)


def _conv_small(a, b, prec):
    # plain convolution; used when the Kronecker machinery isn't worth the setup
    out = [0] * prec
    for i, ai in enumerate(a):
        if ai == 0 or i >= prec:
            continue
        top = min(len(b), prec - i)
        for j in range(top):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def _kronecker_mul(a, b, prec):
    """Convolution of integer sequences a, b truncated to prec, via one
    big-integer multiply.

    Digit width: each output coefficient is bounded in absolute value by
    min(nnz(a), nnz(b)) * max|a| * max|b|, so a signed digit fits in b bits
    once 2^(b-1) exceeds that bound; b is rounded up to whole bytes so the
    pack/unpack steps are byte slicing.
    """
    amax = max(abs(c) for c in a)
    bmax = max(abs(c) for c in b)
    nnz = min(sum(1 for c in a if c), sum(1 for c in b if c))
    bound = nnz * amax * bmax
    width = (bound.bit_length() + 2 + 7) // 8  # bytes per digit
    wbits = 8 * width

    def pack(cs):
        pos = bytearray(width * len(cs))
        neg = bytearray(width * len(cs))
        for i, c in enumerate(cs):
            if c > 0:
                pos[i * width : i * width + (c.bit_length() + 7) // 8] = c.to_bytes(
                    (c.bit_length() + 7) // 8, "little"
                )
            elif c < 0:
                c = -c
                neg[i * width : i * width + (c.bit_length() + 7) // 8] = c.to_bytes(
                    (c.bit_length() + 7) // 8, "little"
                )
        return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")

    za = gmpy2.mpz(pack(a))
    zb = gmpy2.mpz(pack(b))
    z = int(za * zb)

    n_full = len(a) + len(b) - 1
    n_out = min(prec, n_full)
    half = 1 << (wbits - 1)
    # repunit offset 0x80..0080..0080: adds 2^(wbits-1) to every product digit
    # so all decoded digits are nonnegative (coefficients are < half in
    # magnitude); covers the full product, not just the truncated prefix,
    # so no borrow can cross into the digits we keep
    rep = ((1 << (wbits * n_full)) - 1) // ((1 << wbits) - 1)
    v = z + rep * half
    if not 0 <= v < 1 << (wbits * n_full):
        raise AssertionError("Kronecker digit overflow — width bound violated")
    buf = v.to_bytes(width * n_full, "little")
    out = []
    for i in range(n_out):
        d = int.from_bytes(buf[i * width : (i + 1) * width], "little") - half
        out.append(d)
    out.extend([0] * (prec - n_out))
    return out


def series_mul(a: FourierSeries, b: FourierSeries) -> FourierSeries:
    """Cauchy product truncated to min(a.prec, b.prec); exact integers."""
    prec = min(a.prec, b.prec)
    if prec == 0:
        return FourierSeries(())
    ca = list(a.coeffs[:prec])
    cb = list(b.coeffs[:prec])
    # drop trailing zeros: shrinks the packed integers (eta inputs are sparse)
    while ca and ca[-1] == 0:
        ca.pop()
    while cb and cb[-1] == 0:
        cb.pop()
    if not ca or not cb:
        return FourierSeries((0,) * prec)
    if prec <= 64 or len(ca) * len(cb) <= 4096:
        return FourierSeries(_conv_small(ca, cb, prec))
    return FourierSeries(_kronecker_mul(ca, cb, prec))


def series_pow(base: FourierSeries, e: int) -> FourierSeries:
    """base**e by square-and-multiply (e >= 1)."""
    if e < 1:
        raise ValueError("exponent must be >= 1")
    result = None
    sq = base
    while True:
        if e & 1:
            result = sq if result is None else series_mul(result, sq)
        e >>= 1
        if not e:
            return result
        sq = series_mul(sq, sq)


# --- divisor sums and Bernoulli numbers ---------------------------------


def sigma(m: int, n: int) -> int:
    """sigma_m(n) = sum of d^m over divisors d of n (n >= 1).

    Callers dealing with sigma_m(n/d) for d not dividing n apply the
    "non-integer argument gives 0" convention themselves.
    """
    if n <= 0:
        raise ValueError("sigma expects n >= 1")
    if m < 0:
        raise ValueError("sigma expects m >= 0")
    total = 0
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            total += d**m
            e = n // d
            if e != d:
                total += e**m
    return total


def sigma_table(m: int, prec: int) -> list:
    """[0, sigma_m(1), ..., sigma_m(prec-1)] by a divisor sieve."""
    table = [0] * prec
    for d in range(1, prec):
        dm = d**m
        for i in range(d, prec, d):
            table[i] += dm
    return table


def sigma_mod_table(m: int, modulus: int, prec: int) -> list:
    """sigma_m(n) mod modulus for 0 < n < prec (index 0 unused, holds 0)."""
    table = [0] * prec
    for d in range(1, prec):
        dm = pow(d, m, modulus)
        for i in range(d, prec, d):
            table[i] = (table[i] + dm) % modulus
    return table


@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """Bernoulli number B_k (B_1 = -1/2 convention), exact.

    Standard recurrence sum_{j=0}^{k} C(k+1, j) B_j = 0.
    """
    if k < 0:
        raise ValueError("k >= 0")
    if k == 0:
        return Fraction(1)
    if k == 1:
        return Fraction(-1, 2)
    if k % 2:
        return Fraction(0)
    acc = Fraction(0)
    c = 1  # C(k+1, j)
    for j in range(k):
        acc += c * bernoulli(j)
        c = c * (k + 1 - j) // (j + 1)
    return -acc / (k + 1)


def eisenstein_series(k: int, prec: int) -> tuple[FourierSeries, Fraction]:
    """Weight-k Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n.

    Returns (scaled, c) where c = -2k/B_k and `scaled` is the integral
    series c.denominator * E_k; so E_k itself is scaled / c.denominator,
    and when c is an integer (k = 4, 6, 8, 10, 14, ...) `scaled` IS E_k.
    """
    if k < 4 or k % 2:
        raise ValueError("eisenstein_series needs even k >= 4")
    c = Fraction(-2 * k) / bernoulli(k)
    sig = sigma_table(k - 1, prec)
    coeffs = [c.numerator * s for s in sig]
    if prec > 0:
        coeffs[0] = c.denominator
    return FourierSeries(coeffs), c


def eisenstein_e2(prec: int) -> FourierSeries:
    """The quasi-modular E_2 = 1 - 24 sum sigma_1(n) q^n (integral)."""
    sig = sigma_table(1, prec)
    coeffs = [-24 * s for s in sig]
    if prec > 0:
        coeffs[0] = 1
    return FourierSeries(coeffs)


# --- eta products --------------------------------------------------------


def pentagonal_series(prec: int) -> FourierSeries:
    """(q; q)_inf = prod (1 - q^n) = sum_{k in Z} (-1)^k q^{k(3k-1)/2}.

    Both k and -k contribute, giving the generalized pentagonal numbers
    k(3k-1)/2 and k(3k+1)/2 with common sign (-1)^k.
    """
    coeffs = [0] * prec
    if prec > 0:
        coeffs[0] = 1
    k = 1
    while k * (3 * k - 1) // 2 < prec:
        sign = -1 if k % 2 else 1
        for g in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
            if g < prec:
                coeffs[g] += sign
        k += 1
    return FourierSeries(coeffs)


_euler_power_cache: dict[int, FourierSeries] = {}


def _euler_power(e: int, prec: int) -> FourierSeries:
    """(q; q)_inf ** e to the requested precision, cached."""
    cached = _euler_power_cache.get(e)
    if cached is not None and cached.prec >= prec:
        return cached.truncate(prec)
    s = series_pow(pentagonal_series(prec), e)
    _euler_power_cache[e] = s
    return s


def eta_product(factors, prec: int) -> FourierSeries:
    """Expansion of q^(sum d*e/24) * prod_n prod_(d,e) (1 - q^(d n))^e.

    `factors` is a list of (scale d, exponent e) pairs with d, e >= 1.
    The total weight sum(d*e) must be divisible by 24 so the leading
    power of q is integral.

    >>> eta_product([(1, 24)], 3).coeffs    # discriminant form
    (0, 1, -24)
    """
    factors = [(int(d), int(e)) for d, e in factors]
    if not factors or prec < 1:
        raise ValueError("need at least one factor and prec >= 1")
    for d, e in factors:
        if d < 1 or e < 1:
            raise ValueError(f"bad eta factor ({d}, {e})")
    total = sum(d * e for d, e in factors)
    if total % 24:
        raise ValueError(f"leading exponent {total}/24 is not integral")
    shift = total // 24

    # prod (1 - q^{d n})^e == V_d applied to (q; q)_inf^e, so each distinct
    # scale only needs the base power to ceil(prec/d) terms.
    result = None
    for d, e in sorted(factors, key=lambda f: f[0]):
        need = (prec + d - 1) // d
        part = _euler_power(e, need)
        if d > 1:
            part = v_operator(part, d)
        part = part.truncate(min(part.prec, prec))
        if part.prec < prec:
            part = FourierSeries(part.coeffs + (0,) * (prec - part.prec))
        result = part if result is None else series_mul(result, part)
    return result.shift(shift)


# --- operators -----------------------------------------------------------


def u_operator(f: FourierSeries, d: int) -> FourierSeries:
    """U(d): coefficient n of the output is coefficient d*n of the input."""
    if d < 1:
        raise ValueError("U(d) needs d >= 1")
    return FourierSeries(f.coeffs[::d])


def v_operator(f: FourierSeries, d: int) -> FourierSeries:
    """V(d): sends sum a(n) q^n to sum a(n) q^{dn}; precision grows to d*prec."""
    if d < 1:
        raise ValueError("V(d) needs d >= 1")
    if d == 1:
        return f
    coeffs = [0] * (d * f.prec)
    for n, c in enumerate(f.coeffs):
        coeffs[d * n] = c
    return FourierSeries(coeffs)


def theta_operator(f: FourierSeries) -> FourierSeries:
    """q d/dq: multiplies the n-th coefficient by n."""
    return FourierSeries(n * c for n, c in enumerate(f.coeffs))


def twist_quadratic(f: FourierSeries, character) -> FourierSeries:
    """Twist by a quadratic Dirichlet character: a(n) -> chi(n) * a(n).

    `character` maps n to -1, 0, or 1 and must be periodic in n.  A twist
    by a character of modulus m sends a form of level N into level N*m^2
    (see :func:`twisted_level` for the bookkeeping).
    """
    return FourierSeries(character(n) * c for n, c in enumerate(f.coeffs))


def twisted_level(level: int, modulus: int) -> int:
    """Level N * m^2 reached by twisting a level-N form by a modulus-m character."""
    return level * modulus * modulus


def chi_minus4(n: int) -> int:
    """Quadratic character mod 4 (the nontrivial one): +1, -1 at n = 1, 3 mod 4."""
    return (0, 1, 0, -1)[n % 4]


def chi_8(n: int) -> int:
    """Quadratic character mod 8 with chi(+-1) = 1, chi(+-3) = -1."""
    return (0, 1, 0, -1, 0, -1, 0, 1)[n % 8]


def chi_minus8(n: int) -> int:
    """Quadratic character mod 8 with chi(1) = chi(3) = 1, chi(5) = chi(7) = -1."""
    return (0, 1, 0, 1, 0, -1, 0, -1)[n % 8]


# --- Sturm bound and congruence checks ------------------------------------


def sturm_bound(k: int, level: int) -> int:
    """floor(k/12 * [SL2(Z) : Gamma_0(N)]), index N * prod_{p|N} (1 + 1/p).

    >>> sturm_bound(16, 64)
    128
    >>> sturm_bound(12, 1)
    1
    """
    if k < 1 or level < 1:
        raise ValueError("need k >= 1 and level >= 1")
    from .primes import factorize

    index = Fraction(level)
    for p, _ in factorize(level) if level > 1 else []:
        index *= Fraction(p + 1, p)
    return int(Fraction(k, 12) * index)


def congruent_up_to(a: FourierSeries, b: FourierSeries, modulus: int, bound: int):
    """(True, None) if a(n) == b(n) mod modulus for all n <= bound, else
    (False, first violating n).  bound must stay below both precisions."""
    if bound >= min(a.prec, b.prec):
        raise ValueError("bound exceeds series precision")
    for n in range(bound + 1):
        if (a[n] - b[n]) % modulus:
            return False, n
    return True, None


# --- serialization --------------------------------------------------------

_BIN_MAGIC = b"QXP1"


def save_text(f: FourierSeries, path: str) -> None:
    """Line-oriented text format: 'prec=<N>' header, one coefficient per line."""
    with open(path, "w") as fh:
        fh.write(f"prec={f.prec}\n")
        for c in f.coeffs:
            fh.write(f"{c}\n")


def load_text(path: str) -> FourierSeries:
    with open(path) as fh:
        header = fh.readline().strip()
        if not header.startswith("prec="):
            raise ValueError(f"bad header {header!r}")
        prec = int(header[5:])
        coeffs = [int(fh.readline()) for _ in range(prec)]
    return FourierSeries(coeffs)


def save_binary(f: FourierSeries, path: str) -> None:
    """Compact binary format: magic, uint64 prec, then per coefficient a
    uint32 byte length, a sign byte (0/1/2 = zero/positive/negative), and
    the little-endian magnitude."""
    with open(path, "wb") as fh:
        fh.write(_BIN_MAGIC)
        fh.write(struct.pack("<Q", f.prec))
        for c in f.coeffs:
            if c == 0:
                fh.write(struct.pack("<IB", 0, 0))
                continue
            mag = abs(c)
            raw = mag.to_bytes((mag.bit_length() + 7) // 8, "little")
            fh.write(struct.pack("<IB", len(raw), 1 if c > 0 else 2))
            fh.write(raw)


def load_binary(path: str) -> FourierSeries:
    with open(path, "rb") as fh:
        if fh.read(4) != _BIN_MAGIC:
            raise ValueError("not a coefficient table file")
        (prec,) = struct.unpack("<Q", fh.read(8))
        coeffs = []
        for _ in range(prec):
            length, sign = struct.unpack("<IB", fh.read(5))
            if sign == 0:
                coeffs.append(0)
                continue
            mag = int.from_bytes(fh.read(length), "little")
            coeffs.append(mag if sign == 1 else -mag)
    return FourierSeries(coeffs)


def _self_check():  # pragma: no cover - quick manual smoke test
    d = eta_product([(1, 24)], 8)
    assert d.coeffs == (0, 1, -24, 252, -1472, 4830, -6048, -16744)
    e4, c4 = eisenstein_series(4, 4)
    assert c4 == 240 and e4.coeffs == (1, 240, 2160, 6720)


if __name__ == "__main__":  # pragma: no cover
    _self_check()
    print("qexp self-check ok")
