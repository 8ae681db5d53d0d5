"""Prime sieves, factorization, and primality testing.

Shared number-theoretic plumbing: a numpy sieve of Eratosthenes for bulk
prime generation, smallest-prime-factor tables for fast factorization of
every integer below a bound, trial-division factorization for isolated
integers, Legendre symbols, and a Miller-Rabin test that is deterministic
for every integer below 3.3 * 10**24.
"""

from __future__ import annotations

import random

import numpy as np

# Deterministic Miller-Rabin base set: correct for all n < 3,317,044,064,679,887,385,961,981
# (Sorenson & Webster).  The sieve values we test (h*M - 1 with h up to ~10^9)
# sit far below that threshold.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def sieve_bools(limit: int) -> np.ndarray:
    """Boolean array b of length limit+1 with b[n] = True iff n is prime."""
    if limit < 1:
        return np.zeros(max(limit + 1, 0), dtype=bool)
    b = np.ones(limit + 1, dtype=bool)
    b[:2] = False
    for p in range(2, int(limit**0.5) + 1):
        if b[p]:
            b[p * p :: p] = False
    return b


def primes_up_to(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array."""
    return np.nonzero(sieve_bools(limit))[0].astype(np.int64)


def primes_in_range(lo: int, hi: int) -> np.ndarray:
    """Primes p with lo <= p <= hi (small-scale; sieves up to hi)."""
    ps = primes_up_to(hi)
    return ps[ps >= lo]


def smallest_prime_factor_table(limit: int) -> np.ndarray:
    """spf[n] = smallest prime factor of n for 2 <= n <= limit (spf[0]=spf[1]=0)."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if spf[p] == 0:
            spf[p::p][spf[p::p] == 0] = p
    return spf


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as [(p, e), ...] by trial division.

    Adequate for the sizes this package factors (indices below ~10^12);
    not a general-purpose factoring routine.
    """
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    # wheel over 6k +/- 1
    d = 7
    step = 4
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return out


def prime_power_split(n: int) -> tuple[int, int] | None:
    """(p, m) with n = p**m if n >= 2 is a prime power, else None."""
    if n < 2:
        return None
    fac = factorize(n)
    if len(fac) == 1:
        return fac[0]
    return None


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a|p) for an odd prime p, via Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def is_probable_prime(n: int, extra_rounds: int = 0, rng: random.Random | None = None) -> bool:
    """Miller-Rabin; deterministic for n < 3.3*10^24, optional random re-testing.

    extra_rounds adds that many random bases on top of the fixed base set —
    an independent re-test used to double-check sieve survivors.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def witness(a: int) -> bool:
        # True if a proves n composite
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            return False
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                return False
        return True

    for a in _MR_BASES:
        if witness(a):
            return False
    if extra_rounds:
        rng = rng or random.Random()
        for _ in range(extra_rounds):
            a = rng.randrange(2, n - 1)
            if witness(a):
                return False
    return True
