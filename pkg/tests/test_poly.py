import random

import pytest

from sievecraft.poly import (
    BinForm,
    IntPoly,
    ParseError,
    discriminant,
    factor_rational,
    format_poly,
    is_squarefree_poly,
    parse,
)


def test_parse_and_eval():
    p = parse("x^3 + 2")
    assert p.coeffs == (2, 0, 0, 1)
    assert p(3) == 29
    assert parse("2*x^2 - x + 5")(2) == 11
    assert parse("x*x*x - x")(5) == 120


def test_parse_form():
    f = parse("x^3 + 2*z^3", kind="form")
    assert isinstance(f, BinForm)
    assert f(1, 1) == 3 and f(2, 1) == 10
    g = parse("x*y", kind="form")  # y is a synonym for z
    assert g(3, 4) == 12


def test_parse_errors():
    with pytest.raises(ParseError):
        parse("x +")
    with pytest.raises(ParseError):
        parse("x^2 + z", kind="form")  # not homogeneous
    with pytest.raises(ParseError):
        parse("w + 1")


def test_format_roundtrip():
    rng = random.Random(4)
    for _ in range(100):
        coeffs = [rng.randint(-9, 9) for _ in range(rng.randint(1, 6))]
        if all(c == 0 for c in coeffs):
            continue
        p = IntPoly(coeffs)
        assert parse(str(p)).coeffs == p.coeffs
        assert parse(format_poly(p.coeffs, "x")).coeffs == p.coeffs


def test_discriminant_known():
    assert discriminant(parse("x^2 + 1")) == -4
    assert discriminant(parse("x^3 - 2")) == -108
    assert discriminant(parse("x^2 - 2*x + 1")) == 0
    assert discriminant(parse("3*x + 1")) == 1


def test_is_squarefree():
    assert is_squarefree_poly(parse("x^3 + 2"))
    assert not is_squarefree_poly(parse("x^2 - 2*x + 1"))
    assert is_squarefree_poly(parse("x*z", kind="form"))
    assert not is_squarefree_poly(parse("x^2*z", kind="form"))


def test_factor_rational_examples():
    sign, cont, factors = factor_rational(parse("x^2 - 1"))
    degs = sorted(f.degree for f, _ in factors)
    assert degs == [1, 1] and sign == 1 and cont == 1
    _, _, factors = factor_rational(parse("x^3 - 2"))
    assert len(factors) == 1 and factors[0][0].degree == 3


def test_factor_rational_roundtrip():
    rng = random.Random(7)
    done = 0
    while done < 60:
        coeffs = [rng.randint(-6, 6) for _ in range(rng.randint(2, 6))]
        if not coeffs[-1]:
            continue
        p = IntPoly(coeffs)
        if p.degree < 1:
            continue
        sign, cont, factors = factor_rational(p)
        prod = IntPoly([sign * cont])
        for f, m in factors:
            assert f.lead > 0
            for _ in range(m):
                prod = prod * f
        assert prod.coeffs == p.coeffs
        done += 1
