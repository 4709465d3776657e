"""Closed-form sieve exponents: the sphere-packing alpha, the per-group
delta and beta tables for transitive sextic groups, and the cubic and
quintic exponents."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

N_POINTS = 6


def perm_from_cycles(cycles: list[tuple[int, ...]], n: int = N_POINTS) -> tuple[int, ...]:
    """Permutation (0-based image tuple) from 1-based disjoint cycles."""
    img = list(range(n))
    for cyc in cycles:
        for i, a in enumerate(cyc):
            img[a - 1] = cyc[(i + 1) % len(cyc)] - 1
    return tuple(img)


def compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """a after b: (a*b)(i) = a(b(i))."""
    return tuple(a[b[i]] for i in range(len(a)))


def cycle_count(g: tuple[int, ...]) -> int:
    """Number of cycles of g, fixed points included as 1-cycles."""
    seen = [False] * len(g)
    out = 0
    for i in range(len(g)):
        if not seen[i]:
            out += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = g[j]
    return out


@dataclass(frozen=True)
class PermGroup:
    name: str
    elements: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_transitive(self) -> bool:
        n = len(self.elements[0])
        orbit = {0}
        frontier = [0]
        while frontier:
            i = frontier.pop()
            for g in self.elements:
                if g[i] not in orbit:
                    orbit.add(g[i])
                    frontier.append(g[i])
        return len(orbit) == n


def closure(generators: list[tuple[int, ...]], name: str = "") -> PermGroup:
    """Breadth-first closure of the generators."""
    n = N_POINTS if not generators else len(generators[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        g = frontier.pop()
        for h in generators:
            gh = compose(h, g)
            if gh not in seen:
                seen.add(gh)
                frontier.append(gh)
    return PermGroup(name, tuple(sorted(seen)))


# ---------------------------------------------------------------------------
# alpha and the generic exponent formulas


def kl_bound(theta_degrees: float) -> float:
    """The binary-entropy sphere-packing bound at angle theta, with the
    0*log 0 = 0 convention."""
    if not 0 < theta_degrees <= 90:
        raise ValueError("theta must be in (0, 90] degrees")
    s = math.sin(math.radians(theta_degrees))
    a = (1 + s) / (2 * s)
    b = (1 - s) / (2 * s)
    out = a * math.log2(a)
    if b > 0:
        out -= b * math.log2(b)
    return out


def alpha_constant() -> float:
    """alpha = 0.4014... (the 60-degree instance of kl_bound)."""
    return kl_bound(60.0)


def delta_coefficients(G: PermGroup) -> list[Fraction]:
    """Exact coefficients (c_0..c_4) of delta = sum_k c_k 2^(k*alpha):
    c_k = #{g in G : g has a fixed point, cycles(g) = k + 2} / |G|."""
    if not G.is_transitive():
        raise ValueError("group must be transitive")
    counts = [0] * 5
    for g in G.elements:
        if any(g[i] == i for i in range(len(g))):
            counts[cycle_count(g) - 2] += 1
    return [Fraction(c, G.order) for c in counts]


def delta_exponent(G: PermGroup, alpha: float | None = None) -> float:
    if alpha is None:
        alpha = alpha_constant()
    return sum(float(c) * 2.0 ** (k * alpha) for k, c in enumerate(delta_coefficients(G)))


def beta_sextic(G: PermGroup) -> float:
    """beta = 1 - delta/3 at alpha = alpha_constant()."""
    return 1 - delta_exponent(G) / 3


def beta_cubic(discriminant_is_square: bool) -> float:
    """The square-free exponent for cubics: 1 - (1/9)2^(2a) if the
    splitting field is cyclic, else 1 - (1/6)2^a - (1/18)2^(2a)."""
    a = alpha_constant()
    if discriminant_is_square:
        return 1 - 2.0 ** (2 * a) / 9
    return 1 - 2.0**a / 6 - 2.0 ** (2 * a) / 18


def taube_exponent(galois: bool, alpha: float) -> float:
    """Exponent of log X in the R(alpha, d) partial sums."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if galois:
        return 2.0 ** (2 * alpha) / 3 - 1
    return 2.0**alpha / 2 + 2.0 ** (2 * alpha) / 6 - 1


def quintic_exponents() -> tuple[float, float]:
    """(beta, exponent) = ((15 - sqrt 113)/4, (5 + sqrt 113)/8); beta is
    the root in (0,2) of 2 b^2 - 15 b + 14 and exponent = (5 - beta)/2."""
    s = math.sqrt(113.0)
    beta = (15 - s) / 4
    exponent = (5 + s) / 8
    if abs(2 * beta * beta - 15 * beta + 14) > 1e-12:
        raise AssertionError("quintic root residual too large")
    if abs((5 - beta) / 2 - exponent) > 1e-12:
        raise AssertionError("exponent identity failed")
    return beta, exponent


# ---------------------------------------------------------------------------
# The 16 transitive sextic groups

F = Fraction
_CATALOG_DATA: list[tuple[str, list[list[tuple[int, ...]]], int, list[Fraction], float, float]] = [
    # (name, generators as 1-based cycles, order, (c_0..c_4), delta, beta)
    ("C(6)", [[(1, 2, 3, 4, 5, 6)]], 6,
     [F(0), F(0), F(0), F(0), F(1, 6)], 0.5072, 0.8309),
    ("D6(6)", [[(1, 2, 3), (4, 5, 6)], [(1, 4), (2, 6), (3, 5)]], 6,
     [F(0), F(0), F(0), F(0), F(1, 6)], 0.5072, 0.8309),
    ("D(6)", [[(1, 2, 3, 4, 5, 6)], [(2, 6), (3, 5)]], 12,
     [F(0), F(0), F(1, 4), F(0), F(1, 12)], 0.6897, 0.7700),
    ("A4(6)", [[(1, 4, 2), (3, 5, 6)], [(2, 5), (3, 4)]], 12,
     [F(0), F(0), F(1, 4), F(0), F(1, 12)], 0.6897, 0.7700),
    ("F18(6)", [[(1, 2, 3)], [(4, 5, 6)], [(1, 4), (2, 5), (3, 6)]], 18,
     [F(0), F(0), F(2, 9), F(0), F(1, 18)], 0.5567, 0.8144),
    ("2A4(6)", [[(1, 2)], [(1, 3, 5), (2, 4, 6)]], 24,
     [F(0), F(0), F(1, 8), F(1, 8), F(1, 24)], 0.6328, 0.7890),
    ("S4(6d)", [[(1, 4, 6, 3), (2, 5)], [(2, 4), (3, 5)]], 24,
     [F(0), F(0), F(3, 8), F(0), F(1, 24)], 0.7809, 0.7396),
    ("S4(6c)", [[(3, 6, 4, 5)], [(1, 6, 2, 5)]], 24,
     [F(0), F(1, 4), F(1, 8), F(0), F(1, 24)], 0.6750, 0.7749),
    ("F18(6):2", [[(1, 2, 3)], [(4, 5, 6)], [(1, 4), (2, 5), (3, 6)], [(2, 3), (5, 6)]], 36,
     [F(0), F(0), F(13, 36), F(0), F(1, 36)], 0.7145, 0.7618),
    ("F36(6)", [[(1, 2, 3)], [(1, 4), (2, 6, 3, 5)]], 36,
     [F(0), F(0), F(13, 36), F(0), F(1, 36)], 0.7145, 0.7618),
    ("2S4(6)", [[(1, 2)], [(1, 3, 5), (2, 4, 6)], [(1, 3), (2, 4)]], 48,
     [F(0), F(1, 8), F(3, 16), F(1, 16), F(1, 48)], 0.6996, 0.7667),
    ("L(6)", [[(1, 2, 3, 4, 5)], [(1, 6), (2, 5)]], 60,
     [F(2, 5), F(0), F(1, 4), F(0), F(1, 60)], 0.8868, 0.7043),
    ("F36(6):2", [[(1, 2, 3)], [(2, 3)], [(1, 4), (2, 5), (3, 6)]], 72,
     [F(0), F(1, 6), F(13, 72), F(1, 12), F(1, 72)], 0.7693, 0.7435),
    ("L(6):2", [[(1, 2, 3, 4, 5)], [(1, 6), (2, 5)], [(2, 3, 5, 4)]], 120,
     [F(1, 5), F(1, 4), F(1, 8), F(0), F(1, 120)], 0.7736, 0.7421),
    ("A6", [[(1, 2, 3, 4, 5)], [(4, 5, 6)]], 360,
     [F(2, 5), F(0), F(17, 72), F(0), F(1, 360)], 0.8203, 0.7265),
    ("S6", [[(1, 2, 3, 4, 5, 6)], [(1, 2)]], 720,
     [F(1, 5), F(7, 24), F(17, 144), F(1, 48), F(1, 720)], 0.8434, 0.7188),
]

_catalog_cache: list[PermGroup] | None = None


def catalog() -> list[PermGroup]:
    """The 16 transitive permutation groups on six points, each checked
    on first use against its recorded order, transitivity, coefficient
    vector and 4-decimal delta/beta values."""
    global _catalog_cache
    if _catalog_cache is None:
        groups = []
        for name, gens, order, coeffs, delta, beta in _CATALOG_DATA:
            G = closure([perm_from_cycles(c) for c in gens], name)
            if G.order != order:
                raise AssertionError(f"{name}: order {G.order} != {order}")
            if not G.is_transitive():
                raise AssertionError(f"{name}: not transitive")
            if delta_coefficients(G) != coeffs:
                raise AssertionError(
                    f"{name}: coefficients {delta_coefficients(G)} != {coeffs}"
                )
            # the reference table truncates to 4 decimals rather than rounding
            if math.floor(delta_exponent(G) * 10**4) != round(delta * 10**4):
                raise AssertionError(f"{name}: delta {delta_exponent(G)} != {delta}...")
            if math.floor(beta_sextic(G) * 10**4) != round(beta * 10**4):
                raise AssertionError(f"{name}: beta {beta_sextic(G)} != {beta}...")
            groups.append(G)
        _catalog_cache = groups
    return list(_catalog_cache)


def _trunc4(x: float) -> str:
    """Truncate (not round) to 4 decimals, matching the reference table."""
    return f"{math.floor(x * 10**4) / 10**4:.4f}"


def tables_csv() -> str:
    """The delta/beta table as CSV, one row per catalog group."""
    lines = ["group,order,c0,c1,c2,c3,c4,delta,beta"]
    for G in catalog():
        cs = delta_coefficients(G)
        lines.append(
            f"{G.name},{G.order},"
            + ",".join(str(c) for c in cs)
            + f",{_trunc4(delta_exponent(G))},{_trunc4(beta_sextic(G))}"
        )
    return "\n".join(lines) + "\n"
