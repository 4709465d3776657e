import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sievecraft import numutil


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    assert {n for n in range(50) if numutil.is_prime(n)} == primes


def test_is_prime_large():
    assert numutil.is_prime(2**61 - 1)
    assert not numutil.is_prime(2**67 - 1)


@given(st.integers(min_value=2, max_value=10**6))
def test_factorize_roundtrip(n):
    f = numutil.factorize(n)
    assert f.complete
    assert f.value() == n
    assert all(numutil.is_prime(p) for p, _ in f.pairs)


def test_valuation():
    assert numutil.valuation(48, 2) == 4
    assert numutil.valuation(-27, 3) == 3
    assert numutil.valuation(5, 7) == 0
    with pytest.raises(ValueError):
        numutil.valuation(0, 2)
    with pytest.raises(ValueError):
        numutil.valuation(12, 4)


def test_sq_kernel_and_decomposition():
    assert numutil.sq_kernel(12) == 2  # 2^2 * 3 -> 2^(2-1)
    assert numutil.sq_kernel(30) == 1
    assert numutil.squarefree_decomposition(360) == (10, 6)
    d, y = numutil.squarefree_decomposition(-75)
    assert d * y * y == 75 and d == 3


def test_tau_mobius_omega_rad():
    assert numutil.tau_k(12, 2) == 6
    assert numutil.tau_k(1, 5) == 1
    assert numutil.mobius(1) == 1
    assert numutil.mobius(30) == -1
    assert numutil.mobius(12) == 0
    assert numutil.omega(360) == 3
    assert numutil.rad(360) == 30


def test_tables_against_scalar():
    n = 3000
    tab = numutil.squarefree_table(n)
    mu = numutil.mobius_table(n)
    spf = numutil.spf_table(n)
    for k in range(1, n + 1):
        assert tab[k] == (1 if numutil.mobius(k) != 0 else 0)
        assert mu[k] == numutil.mobius(k)
        if k >= 2:
            assert spf[k] == numutil.factorize(k).pairs[0][0]


def test_squarefree_count_oracle():
    # [DERIVED] brute-force oracle: 61 square-free integers <= 100
    assert int(numutil.squarefree_table(100).sum()) == 61
