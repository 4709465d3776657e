import random

from sievecraft.soil import (
    SieveBoundConstants,
    SoilSpec,
    main_term,
    mu,
    squarefree_soil,
    verify_assumptions,
    yugo_bound,
)


def test_mu():
    assert mu(0) == 1 and mu(1) == -1 and mu(2) == 1


def _squarefree_example():
    return squarefree_soil(list(range(1, 31)), [2, 3, 5])


def test_squarefree_soil_frozen():
    # [DERIVED] brute force over A = {1..30}, P = {2,3,5}
    S = _squarefree_example()
    assert S.direct_sum() == 19
    assert S.S(S.mask_of([2])) == 7  # multiples of 4 up to 30
    assert S.truncated_estimate(4) == 23
    assert S.ridd_bound(4) == 19
    # the truncation error is within the bound
    assert abs(S.truncated_estimate(4) - S.direct_sum()) <= S.ridd_bound(4)
    # full truncation is exact
    assert S.truncated_estimate(S.h_total()) == S.direct_sum()


def test_subsets_up_to():
    S = _squarefree_example()
    got = sorted(S.h(d) for d in S.subsets_up_to(40))
    assert got == [1, 4, 9, 25, 36]
    assert sorted(S.h(d) for d in S.subsets_up_to(10**6)) == sorted(
        S.h(d) for d in range(8)
    )


def _random_soil(rng):
    k = rng.randint(1, 5)
    primes = [(f"p{i}", rng.randint(2, 9)) for i in range(k)]
    n = rng.randint(1, 40)
    masks = [rng.randrange(1 << k) for _ in range(n)]
    fvals = {}

    def r(a):
        return [f"p{i}" for i in range(k) if masks[a] >> i & 1]

    def f(a, d):
        # nonnegative: the truncation bound assumes 0 <= f <= max f
        key = (a, frozenset(d))
        if key not in fvals:
            fvals[key] = rng.uniform(0, 2)
        return fvals[key]

    return SoilSpec(primes, list(range(n)), r, f)


def test_truncation_error_bounded_random():
    rng = random.Random(99)
    for _ in range(200):
        S = _random_soil(rng)
        for M in (1, 2, 5, 13, 50, 10**6):
            err = abs(S.truncated_estimate(M) - S.direct_sum())
            assert err <= S.ridd_bound(M) + 1e-9, (S.weights, M)


def _soil_with_constants(rng):
    """A soil built to satisfy (A1)/(A2) exactly: ground set = integers
    1..N, r(a) = {p : w_p | a}, f = 1 on the empty set, and the exact
    A_{d,d'} decomposition with X = N."""
    k = rng.randint(1, 4)
    weights = [p ** rng.randint(1, 2) for p in rng.sample([2, 3, 5, 7], k)]
    n = rng.randint(20, 200)
    primes = [(f"p{i}", w) for i, w in enumerate(weights)]

    def r(a):
        return [f"p{i}" for i, w in enumerate(weights) if a % w == 0]

    def f(a, d):
        return 1 if not d else 0

    S = SoilSpec(primes, list(range(1, n + 1)), r, f)

    def g(d1, d2):
        return 1 if d2 == 0 else 0

    def resid(d1, d2):
        return S.A_sum(d1, d2) - n * g(d1, d2) / S.h(d1)

    c = SieveBoundConstants(
        X=float(n), C0=2.0, C1=1.0, C2=1.0, C3=1.0, C4=1.0,
        M0=10**9, g=g, resid=resid,
    )
    return S, c


def test_yugo_bound_random():
    rng = random.Random(5)
    for _ in range(40):
        S, c = _soil_with_constants(rng)
        assert verify_assumptions(S, c)
        for M in (1, 3, 10, 100):
            main = main_term(S, c, M)
            assert abs(main - S.direct_sum()) <= yugo_bound(S, c, M) + 1e-9


def test_verify_assumptions_rejects_bad_constants():
    rng = random.Random(6)
    S, c = _soil_with_constants(rng)
    bad = SieveBoundConstants(
        X=c.X, C0=1e-6, C1=c.C1, C2=1e-6, C3=c.C3, C4=c.C4,
        M0=c.M0, g=c.g, resid=c.resid,
    )
    assert not verify_assumptions(S, bad)
