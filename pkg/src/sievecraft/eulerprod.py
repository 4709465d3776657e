"""Rigorous interval evaluation of the Euler-product main terms."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels, localdens, numutil
from .poly import BinForm, IntPoly, discriminant, is_squarefree_poly


@dataclass
class EulerEstimate:
    """Interval [lower, upper] containing the infinite product, with the
    truncated part kept exact."""

    lower: float
    upper: float
    truncated: Fraction
    B: int
    factors: list[tuple[int, Fraction]] = field(default_factory=list)
    status: str = "ok"  # ok | widened | zero_density

    @property
    def midpoint(self) -> float:
        return (self.lower + self.upper) / 2


def _bad_primes_univ(P: IntPoly) -> list[int]:
    d = abs(discriminant(P)) * abs(P.lead) * max(P.content(), 1)
    f = numutil.factorize(abs(d)) if d != 0 else None
    if f is None or not f.complete:
        raise ValueError("could not factor the discriminant for tail control")
    return [p for p, _ in f.pairs]


def density_univ(P: IntPoly, B: int, m: int = 2) -> EulerEstimate:
    """Interval for prod_p (1 - ell(p^m)/p^m).

    The truncated part runs over p <= B plus every prime dividing
    Disc(P)*lead(P)*content(P) (so all tail primes satisfy
    ell(p^m) = ell(p) <= deg P); the tail lower bound uses
    sum_{p>B} p^-m < B^(1-m)/(m-1).
    """
    if not is_squarefree_poly(P):
        raise ValueError("P must be square-free")
    if P.degree < 1 or B < 2 or m < 2:
        raise ValueError("need deg P >= 1, B >= 2, m >= 2")
    primes = [int(p) for p in kernels.prime_sieve(B)]
    bad = _bad_primes_univ(P)
    status = "ok"
    for p in bad:
        if p > B:
            primes.append(p)
            status = "widened"
    primes = sorted(set(primes))
    trunc = Fraction(1)
    factors = []
    deg = P.degree
    for p in primes:
        ell = localdens.count_roots_mod_pk(P, p, m)
        f = 1 - Fraction(ell, p**m)
        factors.append((p, f))
        if f <= 0:
            return EulerEstimate(0.0, 0.0, Fraction(0), B, factors, "zero_density")
        trunc *= f
    # tail: all remaining primes are > B and do not divide Disc*lead*cont,
    # so ell(p^m) <= deg and each factor >= 1 - deg/p^m > 0
    tail_lo = max(0.0, 1.0 - deg * B ** (1 - m) / (m - 1))
    return EulerEstimate(float(trunc) * tail_lo, float(trunc), trunc, B, factors, status)


def _bad_primes_form(F: BinForm) -> list[int]:
    d = F.coeffs[-1] * F.coeffs[0]
    px = F.on_x_chart()
    if px.degree >= 1:
        d *= discriminant(px) if discriminant(px) != 0 else 1
    pz = F.on_z_chart()
    if pz.degree >= 1:
        d *= discriminant(pz) if discriminant(pz) != 0 else 1
    d = abs(d) * max(F.content(), 1)
    if d == 0:
        d = 1
    f = numutil.factorize(d)
    if not f.complete:
        raise ValueError("could not factor the form discriminant data")
    return [p for p, _ in f.pairs]


def density_form(F: BinForm, B: int, coprime: bool = False) -> EulerEstimate:
    """Interval for prod_p (1 - ell2(p^2)/p^4) (all pairs), or, with
    coprime=True, prod_p (1 - (p^2 + cc_p)/p^4) with cc_p the coprime
    pair count: the exact per-prime density of coprime pairs with
    square-free value, normalized per unit of all pairs.

    For primes away from Disc*lead the two factor families coincide.
    """
    if not is_squarefree_poly(F):
        raise ValueError("F must be square-free")
    if B < 2:
        raise ValueError("B must be >= 2")
    primes = [int(p) for p in kernels.prime_sieve(B)]
    status = "ok"
    for p in _bad_primes_form(F):
        if p > B:
            primes.append(p)
            status = "widened"
    primes = sorted(set(primes))
    trunc = Fraction(1)
    factors = []
    deg = F.degree
    for p in primes:
        if coprime:
            cc = localdens.coprime_count_form(F, p)
            f = 1 - Fraction(p * p + cc, p**4)
        else:
            ell2 = localdens.ell_form(F, p)
            f = 1 - Fraction(ell2, p**4)
        factors.append((p, f))
        if f <= 0:
            return EulerEstimate(0.0, 0.0, Fraction(0), B, factors, "zero_density")
        trunc *= f
    # tail: ell2(p^2) = cc + p^2 <= 2*deg*(p^2 - p) + p^2 <= (2*deg+1)*p^2
    tail_lo = max(0.0, 1.0 - (2 * deg + 1) / B)
    return EulerEstimate(float(trunc) * tail_lo, float(trunc), trunc, B, factors, status)
