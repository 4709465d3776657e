import math
from fractions import Fraction

import pytest

from sievecraft.exponents import (
    alpha_constant,
    beta_cubic,
    beta_sextic,
    catalog,
    closure,
    compose,
    cycle_count,
    delta_coefficients,
    delta_exponent,
    kl_bound,
    perm_from_cycles,
    quintic_exponents,
    tables_csv,
    taube_exponent,
)


def test_perm_helpers():
    g = perm_from_cycles([(1, 2, 3)], 6)
    assert g == (1, 2, 0, 3, 4, 5)
    h = perm_from_cycles([(1, 2)], 6)
    assert compose(g, h) == tuple(g[h[i]] for i in range(6))
    assert cycle_count(g) == 4
    assert cycle_count(tuple(range(6))) == 6


def test_closure_s3():
    G = closure([perm_from_cycles([(1, 2, 3)], 3), perm_from_cycles([(1, 2)], 3)])
    assert G.order == 6
    assert G.is_transitive()


def test_kl_bound_endpoints():
    # theta = 90: s = 1, a = 1, b = 0 -> 1*log2(1) = 0
    assert kl_bound(90.0) == 0.0
    with pytest.raises(ValueError):
        kl_bound(0.0)
    with pytest.raises(ValueError):
        kl_bound(91.0)


def test_alpha_constant():
    # [DERIVED] high-precision evaluation of the 60-degree entropy bound
    a = alpha_constant()
    assert abs(a - 0.40141354608572877) < 1e-15
    # [PAPER] 4-decimal value
    assert abs(a - 0.4014) < 5e-5
    # closed form check: s = sin 60 = sqrt(3)/2
    s = math.sqrt(3) / 2
    hi = (1 + s) / (2 * s)
    lo = (1 - s) / (2 * s)
    assert a == pytest.approx(hi * math.log2(hi) - lo * math.log2(lo), abs=1e-15)


def test_catalog_structure():
    groups = catalog()
    assert len(groups) == 16
    names = [G.name for G in groups]
    assert names[0] == "C(6)" and names[-1] == "S6"
    assert [G.order for G in groups] == sorted(G.order for G in groups)
    assert groups[-1].order == 720  # S6
    for G in groups:
        assert G.is_transitive()
        cs = delta_coefficients(G)
        assert len(cs) == 5
        # c_4 = 1/|G| (only the identity has 7 - 1 = 6 cycles)
        assert cs[4] == Fraction(1, G.order)


def test_delta_beta_relation():
    for G in catalog():
        assert beta_sextic(G) == pytest.approx(1 - delta_exponent(G) / 3)
        assert 0 < delta_exponent(G) < 1
        assert 0.7 < beta_sextic(G) < 0.84


def test_delta_monotone_in_alpha():
    # each delta is increasing in alpha (all coefficients nonnegative)
    for G in catalog():
        assert delta_exponent(G, 0.3) <= delta_exponent(G, 0.5)


def test_beta_cubic():
    # [PAPER] 4-decimal values (reference table truncates)
    assert math.floor(beta_cubic(True) * 10**4) == 8061
    assert math.floor(beta_cubic(False) * 10**4) == 6829
    a = alpha_constant()
    assert beta_cubic(True) == pytest.approx(1 - 2 ** (2 * a) / 9)


def test_taube_exponent():
    a = alpha_constant()
    assert taube_exponent(True, a) == pytest.approx(2 ** (2 * a) / 3 - 1)
    assert taube_exponent(False, a) == pytest.approx(
        2**a / 2 + 2 ** (2 * a) / 6 - 1
    )
    with pytest.raises(ValueError):
        taube_exponent(True, 0.0)


def test_quintic_exponents():
    beta, expo = quintic_exponents()
    assert abs(2 * beta * beta - 15 * beta + 14) < 1e-12
    assert expo == pytest.approx((5 + math.sqrt(113)) / 8)
    assert 0 < beta < 2


def test_tables_csv():
    csv = tables_csv()
    lines = csv.strip().split("\n")
    assert lines[0] == "group,order,c0,c1,c2,c3,c4,delta,beta"
    assert len(lines) == 17
    assert lines[1].startswith("C(6),6,")
    # D(6) row carries the truncated 0.7700
    d6 = next(l for l in lines if l.startswith("D(6),"))
    assert d6.endswith("0.7700")
