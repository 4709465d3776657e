"""Elementary arithmetic functions: v_p, sq(n), tau_k, mu, omega, rad,
factorization by trial division, and the square-free table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass
class Factorization:
    """Sign and sorted (prime, exponent) pairs; ``opaque`` holds any
    composite cofactor that trial division could not resolve."""

    sign: int
    pairs: list[tuple[int, int]] = field(default_factory=list)
    opaque: int = 1

    def value(self) -> int:
        v = self.sign * self.opaque
        for p, e in self.pairs:
            v *= p**e
        return v

    @property
    def complete(self) -> bool:
        return self.opaque == 1


def factorize(n: int, trial_bound: int | None = None) -> Factorization:
    """Factor n by trial division up to ``trial_bound`` (default: full,
    i.e. up to isqrt of the shrinking remainder), then primality and
    perfect-power checks on what is left."""
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = 1 if n > 0 else -1
    m = abs(n)
    pairs: list[tuple[int, int]] = []
    p = 2
    limit = trial_bound if trial_bound is not None else math.isqrt(m)
    while p <= limit and p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            pairs.append((p, e))
            if trial_bound is None:
                limit = math.isqrt(m)
        p += 1 if p == 2 else 2
    opaque = 1
    if m > 1:
        if is_prime(m):
            pairs.append((m, 1))
        else:
            r = math.isqrt(m)
            if r * r == m and is_prime(r):
                pairs.append((r, 2))
            else:
                opaque = m
    pairs.sort()
    return Factorization(sign, pairs, opaque)


def valuation(n: int, p: int) -> int:
    """v_p(n): the exact power of the prime p dividing n (n != 0)."""
    if n == 0:
        raise ValueError("v_p(0) undefined")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def sq_kernel(n: int) -> int:
    """sq(n) = prod over p^2|n of p^(v_p(n)-1)."""
    f = _complete_factorization(n)
    out = 1
    for p, e in f.pairs:
        if e >= 2:
            out *= p ** (e - 1)
    return out


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """(d, y) with |n| = d*y^2 and d square-free."""
    f = _complete_factorization(n)
    d, y = 1, 1
    for p, e in f.pairs:
        if e % 2:
            d *= p
        y *= p ** (e // 2)
    return d, y


def _complete_factorization(n: int) -> Factorization:
    f = factorize(n)
    if not f.complete:
        raise ValueError(f"could not fully factor {n}")
    return f


def tau_k(n: int, k: int) -> int:
    """Number of ordered k-tuples of positive integers with product |n|."""
    if n == 0:
        raise ValueError("n must be nonzero")
    if k < 1:
        raise ValueError("k must be >= 1")
    f = _complete_factorization(n)
    out = 1
    for _, e in f.pairs:
        out *= math.comb(e + k - 1, k - 1)
    return out


def mobius(n: int) -> int:
    if n <= 0:
        raise ValueError("n must be positive")
    f = _complete_factorization(n)
    if any(e >= 2 for _, e in f.pairs):
        return 0
    return -1 if len(f.pairs) % 2 else 1


def omega(n: int) -> int:
    if n <= 0:
        raise ValueError("n must be positive")
    return len(_complete_factorization(n).pairs)


def rad(n: int) -> int:
    if n <= 0:
        raise ValueError("n must be positive")
    out = 1
    for p, _ in _complete_factorization(n).pairs:
        out *= p
    return out


def squarefree_table(n: int) -> np.ndarray:
    """uint8 array, entry i = 1 iff i is square-free (i in 1..N)."""
    if n < 1:
        raise ValueError("N must be >= 1")
    return kernels.squarefree_mask(n)


def mobius_table(n: int) -> np.ndarray:
    """int8 array of mu(i) for i = 0..N (entry 0 unused, set to 0)."""
    mu = np.ones(n + 1, dtype=np.int8)
    mu[0] = 0
    primes = kernels.prime_sieve(n)
    for p in primes:
        p = int(p)
        mu[p::p] *= -1
        if p * p <= n:
            mu[p * p :: p * p] = 0
    return mu


def spf_table(n: int) -> np.ndarray:
    """Smallest prime factor for 0..N (spf[0]=0, spf[1]=1, spf[p]=p)."""
    spf = np.arange(n + 1, dtype=np.int64)
    for p in range(2, math.isqrt(n) + 1):
        if spf[p] == p:
            sl = spf[p * p :: p]
            sl[sl == np.arange(p * p, n + 1, p)] = p
    return spf
