"""Exact scalar layer: polynomials, rational functions, series at infinity."""

import random
from fractions import Fraction

import pytest

from starprod.errors import PoleAtInfinityError
from starprod.scalars import (
    HbarSeries,
    LAMBDA,
    ONE_POLY,
    Polynomial,
    RationalFunction,
    ZERO_POLY,
    expand_at_infinity,
    frac_from_str,
    frac_to_str,
    poly_gcd,
)


def test_frac_round_trip():
    assert frac_to_str(Fraction(3, 4)) == "3/4"
    assert frac_to_str(Fraction(-5)) == "-5"
    assert frac_from_str("3/4") == Fraction(3, 4)
    assert frac_from_str("-7") == -7
    with pytest.raises(ValueError):
        frac_from_str("2/0")
    with pytest.raises(ValueError):
        frac_from_str("one half")


def test_polynomial_normalization():
    assert Polynomial([0, 0, 0]).is_zero
    assert Polynomial().degree == -1
    p = Polynomial([Fraction(1, 2), 0, Fraction(4, 2)])
    assert p.degree == 2
    assert p.coeffs == (Fraction(1, 2), 0, 2)
    # integral Fractions are demoted to ints, and the two forms stay equal
    assert Polynomial([Fraction(2), 1]) == Polynomial([2, 1])
    assert hash(Polynomial([Fraction(2), 1])) == hash(Polynomial([2, 1]))


def test_polynomial_arithmetic():
    p = Polynomial([1, 2])       # 1 + 2λ
    q = Polynomial([0, 0, 3])    # 3λ²
    assert (p + q).coeffs == (1, 2, 3)
    assert (p - p).is_zero
    assert (p * q).coeffs == (0, 0, 3, 6)
    assert (p ** 2).coeffs == (1, 4, 4)
    assert p.scale(Fraction(1, 2)).coeffs == (Fraction(1, 2), 1)
    assert q.shift(1).coeffs == (0, 0, 0, 3)
    assert p(Fraction(3)) == 7
    assert LAMBDA(Fraction(5, 2)) == Fraction(5, 2)


def test_polynomial_division():
    # (λ² - 1) = (λ - 1)(λ + 1)
    num = Polynomial([-1, 0, 1])
    quo, rem = num.divmod(Polynomial([-1, 1]))
    assert quo.coeffs == (1, 1) and rem.is_zero
    assert num.exact_div(Polynomial([1, 1])).coeffs == (-1, 1)
    with pytest.raises(ArithmeticError):
        num.exact_div(Polynomial([0, 0, 1]))
    with pytest.raises(ZeroDivisionError):
        num.divmod(ZERO_POLY)
    # non-monic divisor forces rational quotient coefficients
    quo, rem = Polynomial([0, 0, 1]).divmod(Polynomial([0, 2]))
    assert quo.coeffs == (0, Fraction(1, 2)) and rem.is_zero


def test_polynomial_render():
    assert Polynomial([0, -2, 1]).render() == "-2*λ+λ^2"
    assert Polynomial([Fraction(1, 2)]).render() == "1/2"
    assert Polynomial([0, 1]).render("x") == "x"
    assert ZERO_POLY.render() == "0"
    assert Polynomial([1, -1]).render() == "1-λ"


def test_polynomial_json_round_trip():
    p = Polynomial([Fraction(1, 3), -2, 0, 5])
    assert Polynomial.from_json(p.to_json()) == p


def test_poly_gcd():
    a = Polynomial([-1, 0, 1])       # (λ-1)(λ+1)
    b = Polynomial([1, 2, 1])        # (λ+1)²
    assert poly_gcd(a, b).coeffs == (1, 1)
    assert poly_gcd(a, ONE_POLY) == ONE_POLY
    assert poly_gcd(ZERO_POLY, b) == b.monic()
    # random products share exactly the planted factor
    rng = random.Random(7)
    for _ in range(25):
        f = Polynomial([rng.randint(-4, 4) for _ in range(3)] + [1])
        g = Polynomial([rng.randint(-4, 4) for _ in range(2)] + [1])
        h = Polynomial([rng.randint(-4, 4) for _ in range(2)] + [1])
        d = poly_gcd(f * g, f * h)
        assert d.exact_div(poly_gcd(d, f.monic())) == poly_gcd(g, h).monic()


def test_rational_function_reduction():
    # (λ² - λ) / (λ - 1) reduces to λ
    r = RationalFunction(Polynomial([0, -1, 1]), Polynomial([-1, 1]))
    assert r.num == LAMBDA and r.den == ONE_POLY
    # denominators are made monic so equal functions are structurally equal
    a = RationalFunction(Polynomial([1]), Polynomial([0, 2]))
    b = RationalFunction(Polynomial([Fraction(1, 2)]), LAMBDA)
    assert a == b and hash(a) == hash(b)
    with pytest.raises(ZeroDivisionError):
        RationalFunction(ONE_POLY, ZERO_POLY)


def test_rational_function_arithmetic():
    half = RationalFunction(1, Polynomial([0, 2]))
    r = half + half
    assert r == RationalFunction(ONE_POLY, LAMBDA)
    assert (r - r).is_zero
    prod = r * RationalFunction(LAMBDA, Polynomial([1, 1]))
    assert prod == RationalFunction(ONE_POLY, Polynomial([1, 1]))
    quot = prod / prod
    assert quot == RationalFunction(1)
    with pytest.raises(ZeroDivisionError):
        prod / RationalFunction(0)
    assert RationalFunction(0) + prod == prod
    assert prod.scale(0).is_zero


def test_order_at_infinity():
    assert RationalFunction(ONE_POLY, LAMBDA).order_at_infinity == 1
    assert RationalFunction(LAMBDA, ONE_POLY).order_at_infinity == -1
    assert RationalFunction(0).order_at_infinity is None


def test_expansion_at_infinity():
    # 1 / (2λ(λ-1)) = (1/2)ħ² + (1/2)ħ³ + ... in ħ = 1/λ
    f = RationalFunction(ONE_POLY, Polynomial([0, -2, 2]))
    s = expand_at_infinity(f, 3)
    assert s.coeffs == (0, 0, Fraction(1, 2), Fraction(1, 2))
    # 1/(λ - 1) = ħ + ħ² + ħ³ + ...
    g = RationalFunction(ONE_POLY, Polynomial([-1, 1]))
    assert expand_at_infinity(g, 4).coeffs == (0, 1, 1, 1, 1)
    # constants survive; poles at infinity are refused
    assert expand_at_infinity(RationalFunction(5), 2).coeffs == (5, 0, 0)
    with pytest.raises(PoleAtInfinityError):
        expand_at_infinity(RationalFunction(LAMBDA, ONE_POLY), 2)


def test_expansion_remainder_order():
    # subtracting the partial sum from f leaves a function of order > n at ∞
    rng = random.Random(3)
    n = 8
    for _ in range(20):
        num = Polynomial([rng.randint(-5, 5) for _ in range(3)])
        den = Polynomial([rng.randint(-5, 5), rng.randint(1, 5), 1])
        if num.is_zero:
            continue
        f = RationalFunction(num, den)
        s = expand_at_infinity(f, n)
        # Σ c_k λ^{-k} = (Σ c_k λ^{n-k}) / λ^n
        partial = RationalFunction(
            Polynomial(list(reversed(s.coeffs))), ONE_POLY.shift(n)
        )
        diff = f - partial
        assert diff.is_zero or diff.order_at_infinity > n


def test_hbar_series():
    s = HbarSeries(2, [1, 2, 3])
    t = HbarSeries(3, [1, 0, 0, 5])
    assert (s + t).coeffs == (2, 2, 3)
    assert (s * t).coeffs == (1, 2, 3)
    assert s.scale(2).coeffs == (2, 4, 6)
    assert HbarSeries.ratio([1], [1, -1], 4).coeffs == (1, 1, 1, 1, 1)
    assert HbarSeries.ratio([0, 1], [2], 2).coeffs == (0, Fraction(1, 2), 0)
    with pytest.raises(ZeroDivisionError):
        HbarSeries.ratio([1], [0, 1], 2)
    with pytest.raises(ValueError):
        HbarSeries(2, [1, 2])
    assert str(HbarSeries(2, [0, Fraction(-1, 2), 0])) == "-1/2*ħ"
