"""Pure Python / numpy implementations of the hot kernels.

Three operations dominate the runtime of the censuses and averages:

* ``squarefree_mask`` -- sieve of square-free integers up to N,
* ``poly_roots_mod_p`` -- roots of an integer polynomial mod p,
* ``value_square_profile`` -- for P and x = 1..N, the exact pairs (p, v_p(P(x)))
  with v >= 2 and p <= B, plus the remainder of |P(x)| after removing all
  prime factors <= B.

The compiled backend (``_kernels_cy``) implements the same three functions;
``kernels`` picks one at import time.
"""

from __future__ import annotations

import math

import numpy as np

_INT64_SAFE = 2**62


def prime_sieve(n: int) -> np.ndarray:
    """All primes <= n as an int64 array."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.nonzero(mask)[0].astype(np.int64)


def squarefree_mask(n: int) -> np.ndarray:
    """uint8 array of length n+1; entry i is 1 iff i is square-free (i >= 1)."""
    mask = np.ones(n + 1, dtype=np.uint8)
    mask[0] = 0
    for p in range(2, math.isqrt(n) + 1):
        if mask[p]:  # p survived, so no q^2 <= p divides it: p is prime
            mask[p * p :: p * p] = 0
    return mask


# ---------------------------------------------------------------------------
# Polynomial arithmetic over Z/p (dense lists, low degree)


def _ptrim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmod(coeffs, p: int) -> list[int]:
    return _ptrim([int(a) % p for a in coeffs])


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _prem(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a by b over Z/p (b nonzero)."""
    a = a[:]
    db, lb = len(b) - 1, b[-1]
    inv = pow(lb, p - 2, p)
    while len(a) - 1 >= db and a:
        q = a[-1] * inv % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - q * bi) % p
        _ptrim(a)
    return a


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _prem(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [x * inv % p for x in a]
    return a


def _pderiv(a: list[int], p: int) -> list[int]:
    return _ptrim([i * a[i] % p for i in range(1, len(a))])


def _ppowmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    """base^e modulo (mod, p)."""
    result = [1]
    base = _prem(base, mod, p)
    while e:
        if e & 1:
            result = _prem(_pmul(result, base, p), mod, p)
        base = _prem(_pmul(base, base, p), mod, p)
        e >>= 1
    return result


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] = ai
    for i, bi in enumerate(b):
        out[i] = (out[i] - bi) % p
    return _ptrim(out)


def _extract_roots(s: list[int], p: int, out: list[int]) -> None:
    """Roots of s, a product of distinct monic linear factors mod p."""
    deg = len(s) - 1
    if deg == 0:
        return
    if deg == 1:
        out.append((-s[0]) % p)
        return
    # split by gcd with (x+a)^((p-1)/2) - 1 for successive shifts a
    a = 0
    while True:
        h = _ppowmod([a, 1], (p - 1) // 2, s, p)
        h = _psub(h, [1], p)
        g = _pgcd(h, s, p)
        if 0 < len(g) - 1 < deg:
            _extract_roots(g, p, out)
            _extract_roots(_pquo(s, g, p), p, out)
            return
        a += 1


def _pquo(a: list[int], b: list[int], p: int) -> list[int]:
    """Exact quotient of a by b over Z/p."""
    a = a[:]
    out = [0] * (len(a) - len(b) + 1)
    db, lb = len(b) - 1, b[-1]
    inv = pow(lb, p - 2, p)
    while len(a) - 1 >= db and a:
        q = a[-1] * inv % p
        shift = len(a) - 1 - db
        out[shift] = q
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - q * bi) % p
        _ptrim(a)
    return _ptrim(out)


def poly_roots_mod_p(coeffs, p: int) -> list[int]:
    """Sorted roots of the polynomial (low-to-high coeffs) mod the prime p.

    Raises ValueError if the polynomial vanishes identically mod p.
    """
    c = _pmod(coeffs, p)
    if not c:
        raise ValueError("polynomial vanishes identically mod p")
    if len(c) == 1:
        return []
    if p <= 43:
        return [x for x in range(p) if _peval(c, x, p) == 0]
    # remove repeated factors, then isolate the linear part
    g = _pgcd(c, _pderiv(c, p), p)
    sf = _pquo(c, g, p) if len(g) > 1 else c
    xp = _ppowmod([0, 1], p, sf, p)
    lin = _pgcd(_psub(xp, [0, 1], p), sf, p)
    roots: list[int] = []
    if len(lin) > 1:
        _extract_roots(lin, p, roots)
    return sorted(roots)


def _peval(c: list[int], x: int, p: int) -> int:
    acc = 0
    for a in reversed(c):
        acc = (acc * x + a) % p
    return acc


# ---------------------------------------------------------------------------
# Value profile sieve


def value_square_profile(coeffs, n: int, b: int):
    """Square-part profile of P(x) for x = 1..N with trial bound B.

    Returns (xs, ps, vs, rem):
      * xs, ps, vs: int64 arrays with v_p(P(x)) = v >= 2 and p <= B
        (content contributions included),
      * rem: int64 array of length N+1; rem[x] = |P(x)| with all prime
        factors <= B removed; rem[x] = 0 marks P(x) = 0; rem[0] = 1 unused.

    Values |P(x)| must stay below 2^62 (int64 arithmetic).
    """
    coeffs = [int(a) for a in coeffs]
    cont = 0
    for a in coeffs:
        cont = math.gcd(cont, a)
    if cont == 0:
        raise ValueError("zero polynomial")
    prim = [a // cont for a in coeffs]
    cont = abs(cont)

    xs64 = np.arange(n + 1, dtype=np.int64)
    vals = np.zeros(n + 1, dtype=np.int64)
    vmax = sum(abs(a) * n**i for i, a in enumerate(prim))
    if vmax >= _INT64_SAFE:
        raise OverflowError("|P(x)| exceeds int64 range; reduce N")
    for a in reversed(prim):
        vals = vals * xs64 + a
    np.abs(vals, out=vals)
    vals[0] = 1

    xs_out: list[np.ndarray] = []
    ps_out: list[np.ndarray] = []
    vs_out: list[np.ndarray] = []
    nonzero = vals != 0

    for p in prime_sieve(b):
        p = int(p)
        vcont = 0
        c = cont
        while c % p == 0:
            c //= p
            vcont += 1
        roots = poly_roots_mod_p(prim, p)
        for r in roots:
            first = r if r >= 1 else p
            idx = np.arange(first, n + 1, p, dtype=np.int64)
            idx = idx[nonzero[idx]]
            if idx.size == 0:
                continue
            sub = vals[idx]
            v = np.ones(idx.size, dtype=np.int64)
            sub //= p
            while True:
                m = sub % p == 0
                if not m.any():
                    break
                sub[m] //= p
                v[m] += 1
            vals[idx] = sub
            vt = v + vcont
            hit = vt >= 2
            if hit.any():
                xs_out.append(idx[hit])
                ps_out.append(np.full(int(hit.sum()), p, dtype=np.int64))
                vs_out.append(vt[hit])
        if vcont >= 2:
            # content alone forces v >= 2 at every x outside the root classes
            inroot = np.zeros(n + 1, dtype=bool)
            for r in roots:
                first = r if r >= 1 else p
                inroot[first::p] = True
            idx = np.nonzero(~inroot[1:])[0].astype(np.int64) + 1
            idx = idx[nonzero[idx]]
            if idx.size:
                xs_out.append(idx)
                ps_out.append(np.full(idx.size, p, dtype=np.int64))
                vs_out.append(np.full(idx.size, vcont, dtype=np.int64))
        elif vcont == 1:
            # v = 1 + v_p(P0) can reach 2 only inside root classes (handled),
            # except v = 1 everywhere else: below threshold, nothing to do
            pass

    if cont > 1:
        # a content prime beyond B would corrupt rem; desk-scale inputs
        # always have tiny content, so refuse rather than mishandle
        cc = cont
        for p in prime_sieve(b):
            while cc % int(p) == 0:
                cc //= int(p)
        if cc != 1:
            raise ValueError("content has a prime factor beyond B")

    vals[~nonzero] = 0
    vals[0] = 1
    if xs_out:
        xs = np.concatenate(xs_out)
        ps = np.concatenate(ps_out)
        vs = np.concatenate(vs_out)
    else:
        xs = np.zeros(0, dtype=np.int64)
        ps = np.zeros(0, dtype=np.int64)
        vs = np.zeros(0, dtype=np.int64)
    return xs, ps, vs, vals
