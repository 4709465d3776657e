import random

import numpy as np

from sievecraft import _kernels_py as kpy
from sievecraft import kernels, numutil

try:
    from sievecraft import _kernels_cy as kcy
except ImportError:
    kcy = None

BACKENDS = [kpy] + ([kcy] if kcy is not None else [])


def _profile_key(res):
    xs, ps, vs, rem = res
    return set(zip(xs.tolist(), ps.tolist(), vs.tolist())), rem.tolist()


def test_prime_sieve():
    assert kernels.prime_sieve(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert kernels.prime_sieve(1).size == 0


def test_squarefree_mask_oracle():
    for mod in BACKENDS:
        mask = mod.squarefree_mask(200)
        for n in range(1, 201):
            assert mask[n] == (numutil.mobius(n) != 0)


def test_poly_roots_mod_p_oracle():
    rng = random.Random(11)
    primes = kernels.prime_sieve(200)
    for _ in range(150):
        coeffs = [rng.randint(-20, 20) for _ in range(rng.randint(1, 7))]
        p = int(rng.choice(primes))
        if all(a % p == 0 for a in coeffs):
            continue
        expect = sorted(
            x for x in range(p) if sum(a * x**i for i, a in enumerate(coeffs)) % p == 0
        )
        for mod in BACKENDS:
            assert mod.poly_roots_mod_p(coeffs, p) == expect, (coeffs, p)


def test_poly_roots_large_prime():
    # x^3 + 2 mod 10007: oracle by direct scan
    p = 10007
    expect = sorted(x for x in range(p) if (x**3 + 2) % p == 0)
    for mod in BACKENDS:
        assert mod.poly_roots_mod_p([2, 0, 0, 1], p) == expect


def test_value_square_profile_oracle():
    # Trial-division oracle: exact (x, p, v_p(P(x))) for v >= 2, p <= b,
    # and the cofactor of P(x) after removing all primes <= b.
    coeffs = [2, 0, 0, 1]
    n, b = 400, 11
    for mod in BACKENDS:
        xs, ps, vs, rem = mod.value_square_profile(coeffs, n, b)
        triples = set(zip(xs.tolist(), ps.tolist(), vs.tolist()))
        expect = set()
        for x in range(1, n + 1):
            val = x**3 + 2
            for p in (2, 3, 5, 7, 11):
                v = 0
                while val % p == 0:
                    val //= p
                    v += 1
                if v >= 2:
                    expect.add((x, p, v))
            assert rem[x] == val, x
        assert triples == expect


def test_backends_agree():
    if kcy is None:
        return
    rng = random.Random(3)
    for _ in range(30):
        coeffs = [rng.randint(-9, 9) for _ in range(rng.randint(2, 6))]
        if coeffs[-1] == 0:
            coeffs[-1] = 1
        n = rng.randint(50, 3000)
        b = rng.choice([10, 50, 500])
        assert _profile_key(kpy.value_square_profile(coeffs, n, b)) == _profile_key(
            kcy.value_square_profile(coeffs, n, b)
        )
    assert np.array_equal(kpy.squarefree_mask(10**5), kcy.squarefree_mask(10**5))
