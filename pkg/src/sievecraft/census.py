"""Exact desk-scale censuses: power-free value counts, exceptional-set
counts delta(N), twist tables d*y^2 = F(x,z), splitting types mod p, and
the R(alpha, d) sums."""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import eulerprod, kernels, numutil
from .poly import BinForm, IntPoly, discriminant, factor_rational, is_squarefree_poly

_MASK_CAP = 1 << 31


@dataclass
class CensusReport:
    """One census run: parameters, the exact observed count, and the
    Euler-product main-term interval it is compared against."""

    params: dict
    observed: int
    main_lo: float
    main_hi: float
    zeros: int = 0
    seconds: float = 0.0
    method: str = ""

    @property
    def main_mid(self) -> float:
        return (self.main_lo + self.main_hi) / 2

    @property
    def discrepancy(self) -> float:
        return self.observed - self.main_mid

    @property
    def discrepancy_rel(self) -> float:
        return self.discrepancy / self.main_mid if self.main_mid else math.inf

    def to_json(self) -> str:
        out = dict(self.params)
        out.update(
            observed=self.observed,
            main_lo=self.main_lo,
            main_hi=self.main_hi,
            discrepancy_rel=self.discrepancy_rel,
            zeros=self.zeros,
            seconds=round(self.seconds, 3),
            method=self.method,
        )
        return json.dumps(out)


def _value_bound(coeffs: list[int], n: int) -> int:
    return sum(abs(a) * n**i for i, a in enumerate(coeffs))


def _trial_bound(vmax: int) -> int:
    """B with B^3 > vmax, so that after removing primes <= B the
    remainder is 1, p, p^2 or pq and squares are detected exactly."""
    b = max(10**4, math.isqrt(math.isqrt(vmax)))
    while b**3 <= vmax:
        b += b // 4 + 1
    return b


def _is_square(v: np.ndarray) -> np.ndarray:
    """Elementwise test for perfect squares > 1 (float isqrt, exactly
    corrected by one integer Newton refinement each way)."""
    r = np.sqrt(np.maximum(v, 0).astype(np.float64)).astype(np.int64)
    r = np.maximum(r - 1, 0)
    for _ in range(3):
        r = np.where((r + 1) * (r + 1) <= v, r + 1, r)
    return (r * r == v) & (v > 1)


def count_powerfree_values(P: IntPoly, n: int, m: int = 2) -> CensusReport:
    """Exact #{1 <= x <= N : P(x) != 0, P(x) free of m-th powers}.

    Small primes are handled by the residue-marking sieve; a single
    square remainder test catches the large primes, valid because the
    trial bound B satisfies |P(x)| < B^3.
    """
    t0 = time.monotonic()
    if not is_squarefree_poly(P):
        raise ValueError("P must be square-free")
    if n < 1 or m < 2:
        raise ValueError("need N >= 1 and m >= 2")
    vmax = _value_bound(P.coeffs, n)
    if vmax >= 1 << 62:
        raise OverflowError("values exceed the 64-bit budget")
    b = _trial_bound(vmax)
    xs, ps, vs, rem = kernels.value_square_profile(P.coeffs, n, b)
    bad = np.zeros(n + 1, dtype=bool)
    if m == 2:
        bad[xs[vs >= 2]] = True
        bad[np.nonzero(_is_square(rem))[0]] = True
    else:
        bad[xs[vs >= m]] = True
        # remainders have all prime factors > B and are < B^3: m-th-power-free
    zeros = int(np.count_nonzero(rem[1:] == 0))
    bad[rem == 0] = True
    observed = int(np.count_nonzero(~bad[1:]))
    est = eulerprod.density_univ(P, min(b, 10**4), m)
    report = CensusReport(
        params={"poly": str(P), "N": n, "m": m, "B": b},
        observed=observed,
        main_lo=n * est.lower,
        main_hi=n * est.upper,
        zeros=zeros,
        method="profile-sieve",
    )
    report.seconds = time.monotonic() - t0
    return report


def count_squarefree_form(
    F: BinForm,
    n: int,
    convention: str = "full-box",
    coprime: bool = True,
    sector=None,
) -> CensusReport:
    """Exact count of pairs with F square-free and nonzero, over
    {1..N}^2 (positive-quadrant) or [-N,N]^2 (full-box), optionally
    restricted to coprime pairs and to a sector."""
    t0 = time.monotonic()
    if not is_squarefree_poly(F):
        raise ValueError("F must be square-free")
    if convention not in ("full-box", "positive-quadrant"):
        raise ValueError("unknown convention")
    vmax = sum(abs(a) for a in F.coeffs) * n**F.degree
    if vmax >= _MASK_CAP:
        raise OverflowError("value range too large for the square-free table")
    mask = numutil.squarefree_table(max(vmax, 1)).copy()
    mask[0] = 0
    lo = 1 if convention == "positive-quadrant" else -n
    xs = np.arange(lo, n + 1, dtype=np.int64)
    observed = 0
    zeros = 0
    for y in range(lo, n + 1):
        vals = np.zeros(len(xs), dtype=np.int64)
        d = F.degree
        for i in range(d, -1, -1):
            vals = vals * xs + F.coeffs[i] * y ** (d - i)
        ok = np.ones(len(xs), dtype=bool)
        if coprime:
            ok &= np.gcd(np.abs(xs), abs(y)) == 1
        if sector is not None:
            ok &= sector.mask(xs, y)
        zeros += int(np.count_nonzero(ok & (vals == 0)))
        observed += int(np.count_nonzero(ok & (mask[np.abs(vals)] == 1)))
    est = eulerprod.density_form(F, 10**3, coprime=coprime)
    scale = n * n if convention == "positive-quadrant" else 4 * n * n
    report = CensusReport(
        params={"form": str(F), "N": n, "convention": convention, "coprime": coprime},
        observed=observed,
        main_lo=scale * est.lower,
        main_hi=scale * est.upper,
        zeros=zeros,
        method="row-scan",
    )
    report.seconds = time.monotonic() - t0
    return report


def delta_census_univ(P: IntPoly, n: int, threshold: int | None = None) -> int:
    """#{1 <= x <= N : some prime p > threshold has p^2 | P(x)},
    threshold defaulting to sqrt(N)."""
    if not is_squarefree_poly(P):
        raise ValueError("P must be square-free")
    if threshold is None:
        threshold = math.isqrt(n)
    vmax = _value_bound(P.coeffs, n)
    b = _trial_bound(vmax)
    if threshold > b:
        raise ValueError("threshold exceeds the trial bound")
    xs, ps, vs, rem = kernels.value_square_profile(P.coeffs, n, b)
    bad = np.zeros(n + 1, dtype=bool)
    sel = (vs >= 2) & (ps > threshold)
    bad[xs[sel]] = True
    bad[np.nonzero(_is_square(rem))[0]] = True
    bad[0] = False
    return int(np.count_nonzero(bad[1:]))


def delta_census_univ_alt(P: IntPoly, n: int, threshold: int | None = None) -> int:
    """Independent recount of delta_census_univ by looping over the
    primes p in (threshold, sqrt(max |P|)] and scanning the arithmetic
    progressions of roots mod p^2.  Intended for N <= 2000."""
    if threshold is None:
        threshold = math.isqrt(n)
    vmax = _value_bound(P.coeffs, n)
    hit: set[int] = set()
    from . import localdens

    for p in range(threshold + 1, math.isqrt(vmax) + 1):
        if not numutil.is_prime(p):
            continue
        p2 = p * p
        for r, e in localdens.roots_mod_pk(P, p, 2):
            mod = p**e if e else 1
            x = r % mod if mod > 1 else 1
            if x == 0:
                x = mod
            for v in range(x, n + 1, mod):
                if P(v) != 0 and P(v) % p2 == 0:
                    hit.add(v)
    return len(hit)


def delta_census_form(
    F: BinForm, n: int, threshold: int | None = None
) -> tuple[int, dict[int, int]]:
    """Coprime pairs in [-N,N]^2 whose value has p^2 | F for some prime
    p > threshold (default N); returns (count, per-prime profile).
    Asserts the per-prime bound 12*deg F when threshold >= N."""
    if not is_squarefree_poly(F):
        raise ValueError("F must be square-free")
    if threshold is None:
        threshold = n
    profile: dict[int, int] = {}
    count = 0
    for x in range(-n, n + 1):
        for y in range(-n, n + 1):
            if math.gcd(x, y) != 1:
                continue
            v = F(x, y)
            if v == 0:
                continue
            f = numutil.factorize(abs(v))
            if not f.complete:
                raise OverflowError("value too large to factor")
            hits = [p for p, e in f.pairs if e >= 2 and p > threshold]
            if hits:
                count += 1
                for p in hits:
                    profile[p] = profile.get(p, 0) + 1
    if threshold >= n:
        for p, c in profile.items():
            if c > 12 * F.degree:
                raise AssertionError(f"per-prime bound violated at p={p}: {c}")
    return count, profile


@dataclass
class TwistTable:
    """S(d) = #{coprime (x,z) in the box : F(x,z) = d*y^2, y > 0},
    indexed by the signed square-free kernel d."""

    form: str
    N: int
    table: dict[int, int] = field(default_factory=dict)
    zeros: int = 0
    pairs: int = 0

    def to_csv(self) -> str:
        lines = ["d,S_d"]
        for d in sorted(self.table):
            lines.append(f"{d},{self.table[d]}")
        return "\n".join(lines) + "\n"


def twist_census(F: BinForm, n: int) -> TwistTable:
    """Decompose every coprime value in [-N,N]^2 as d*y^2 with d the
    signed square-free kernel, and aggregate the counts S(d)."""
    if not is_squarefree_poly(F):
        raise ValueError("F must be square-free")
    if F.degree < 3:
        raise ValueError("deg F must be >= 3")
    out = TwistTable(form=str(F), N=n)
    for x in range(-n, n + 1):
        for y in range(-n, n + 1):
            if math.gcd(x, y) != 1:
                continue
            out.pairs += 1
            v = F(x, y)
            if v == 0:
                out.zeros += 1
                continue
            d0, _ = numutil.squarefree_decomposition(v)
            d = d0 if v > 0 else -d0
            out.table[d] = out.table.get(d, 0) + 1
    return out


def splitting_type(P: IntPoly, p: int) -> list[int]:
    """Sorted degrees of the irreducible factors of P mod p, for an
    irreducible P and p not dividing Disc(P)*lead(P); for such p this is
    the inertia-degree multiset of p in the root field."""
    _require_irreducible(P)
    if not numutil.is_prime(p):
        raise ValueError("p must be prime")
    if (discriminant(P) * P.lead) % p == 0:
        raise ValueError("p divides Disc(P)*lead(P); splitting type undefined here")
    return _ddf_degrees(P.coeffs, p)


def _require_irreducible(P: IntPoly) -> None:
    sign, cont, factors = factor_rational(P)
    if len(factors) != 1 or factors[0][1] != 1:
        raise ValueError("P must be irreducible")


def _ddf_degrees(coeffs: list[int], p: int) -> list[int]:
    from . import _kernels_py as K

    f = [c % p for c in coeffs]
    f = K._ptrim(f)
    inv = pow(f[-1], -1, p)
    f = [c * inv % p for c in f]
    degs: list[int] = []
    w = [0, 1]  # x
    k = 0
    while len(f) - 1 >= 1:
        k += 1
        if 2 * k > len(f) - 1:
            degs.append(len(f) - 1)
            break
        w = K._ppowmod(w, p, f, p)
        g = K._pgcd(K._psub(w, [0, 1], p), f, p)
        if len(g) - 1 >= 1:
            degs.extend([k] * ((len(g) - 1) // k))
            f = K._pquo(f, g, p)
            w = K._prem(w, f, p)
    return sorted(degs)


def _radical_mod_p(f: list[int], p: int) -> list[int]:
    """Product of the distinct irreducible factors of f over F_p."""
    from . import _kernels_py as K

    if len(f) - 1 < 1:
        return [1]
    fd = K._pderiv(f, p)
    if not fd:
        # f = g(x^p) = g(x)^p over F_p (a^p = a): recurse on the p-th root
        g = [f[i] for i in range(0, len(f), p)]
        return _radical_mod_p(K._ptrim(g), p)
    g = K._pgcd(f, fd, p)
    w = K._pquo(f, g, p)  # distinct factors of multiplicity not div. by p
    # strip the w-factors out of g; what remains is a p-th power
    while True:
        c = K._pgcd(g, w, p)
        if len(c) - 1 < 1:
            break
        g = K._pquo(g, c, p)
    rest = _radical_mod_p(g, p)
    return K._pmul(w, rest, p)


def _local_splitting(P: IntPoly, p: int) -> tuple[bool, int]:
    """(has a degree-1 factor, number of distinct irreducible factors)
    of P mod p; for ramified p this factors the radical of P mod p, an
    interpretive stand-in for the prime decomposition."""
    from . import _kernels_py as K

    f = K._ptrim([c % p for c in P.coeffs])
    if len(f) - 1 < 1:
        return False, 0
    sf = _radical_mod_p(f, p)
    degs = _ddf_degrees([c for c in sf], p)
    return (1 in degs), len(degs)


def r_alpha_sum(
    P: IntPoly, alpha: float, X: int, exponent: float | None = None
) -> tuple[float, list[tuple[int, float]]]:
    """Sum over square-free d <= X of R(alpha, d) =
    2^(alpha*(omega_K(d) - omega(d))) if every p | d has a degree-1
    prime above it (no p unsplit, i.e. inert), else 0.  Returns the sum
    and a table (X_i, S(X_i)/X_i/(log X_i)^exponent)."""
    _require_irreducible(P)
    if P.degree != 3:
        raise ValueError("P must be an irreducible cubic")
    if X < 1 or X > 10**7:
        raise ValueError("need 1 <= X <= 1e7")
    if exponent is None:
        disc = discriminant(P)
        r = math.isqrt(abs(disc))
        galois = disc > 0 and r * r == disc
        a2 = 2.0**alpha
        exponent = (
            a2 * a2 / 3 - 1 if galois else a2 / 2 + a2 * a2 / 6 - 1
        )
    mu = numutil.mobius_table(X)
    spf = numutil.spf_table(X)
    local: dict[int, tuple[bool, int]] = {}
    total = 0.0
    checkpoints = sorted({X} | {X // 4, X // 2} - {0})
    table = []
    ci = 0
    for d in range(1, X + 1):
        if mu[d] == 0 and d > 1:
            pass
        elif d == 1:
            total += 1.0
        else:
            m = d
            ok = True
            extra = 0
            while m > 1:
                p = int(spf[m])
                if p not in local:
                    local[p] = _local_splitting(P, p)
                split, nfac = local[p]
                if not split:
                    ok = False
                    break
                extra += nfac - 1
                while m % p == 0:
                    m //= p
            if ok:
                total += 2.0 ** (alpha * extra)
        while ci < len(checkpoints) and d == checkpoints[ci]:
            xi = checkpoints[ci]
            norm = total / xi / math.log(max(xi, 2)) ** exponent if xi >= 2 else total
            table.append((xi, norm))
            ci += 1
    return total, table
