import itertools
import math

import pytest
from hypothesis import given, strategies as st

from resurgence.ring import (
    DEFAULT_PRIME,
    GREVLEX,
    LEX,
    DimensionError,
    FieldElement,
    Polynomial,
    PolynomialRing,
    block_order,
    count_monomials,
    format_polynomial,
    hasse_derivative,
    is_prime,
    monomial_compare,
    monomials_of_degree,
    parse_polynomial,
)

P = DEFAULT_PRIME
R3 = PolynomialRing(3)

exponents = st.tuples(*[st.integers(0, 3)] * 3)
coeffs = st.integers(0, P - 1)

polys = st.dictionaries(exponents, coeffs, max_size=6).map(lambda d: Polynomial(R3, d))
orders = st.sampled_from([GREVLEX, LEX, block_order(1), block_order(2)])


def test_is_prime_matches_trial_division():
    def slow(n):
        return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))

    assert all(is_prime(n) == slow(n) for n in range(2000))
    assert is_prime(32003) and not is_prime(32001)


def test_field_element_inverse():
    for v in (1, 2, 12345, P - 1):
        a = FieldElement(v)
        assert a * a.inverse() == 1
    with pytest.raises(ZeroDivisionError):
        FieldElement(0).inverse()


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + R3.zero() == f
    assert f * R3.one() == f
    assert (f - f).is_zero()


@given(exponents, exponents, exponents, orders)
def test_monomial_order_is_multiplicative(a, b, c, order):
    ac = tuple(x + z for x, z in zip(a, c))
    bc = tuple(y + z for y, z in zip(b, c))
    assert monomial_compare(a, b, order) == monomial_compare(ac, bc, order)


@given(exponents, exponents, orders)
def test_monomial_order_total_and_antisymmetric(a, b, order):
    ab, ba = monomial_compare(a, b, order), monomial_compare(b, a, order)
    assert ab == -ba
    assert (ab == 0) == (a == b)
    assert monomial_compare(a, (0, 0, 0), order) >= 0


def test_order_examples():
    # x0*x2 vs x1^2: lex prefers x0, grevlex looks at the last variable
    assert monomial_compare((1, 0, 1), (0, 2, 0), LEX) == 1
    assert monomial_compare((1, 0, 1), (0, 2, 0), GREVLEX) == -1
    # block(1) eliminates x0 even against higher degree elsewhere
    assert monomial_compare((1, 0, 0), (0, 5, 5), block_order(1)) == 1


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        monomial_compare((1, 0), (1, 0, 0))
    with pytest.raises(DimensionError):
        R3.var(0) + PolynomialRing(2).var(0)


def test_monomial_counts():
    for n, t in itertools.product(range(1, 5), range(6)):
        assert len(monomials_of_degree(n, t)) == count_monomials(n, t) == math.comb(t + n - 1, n - 1)


@given(polys, polys, st.tuples(*[st.integers(0, 2)] * 3))
def test_hasse_leibniz(f, g, gamma):
    lhs = hasse_derivative(f * g, gamma)
    rhs = R3.zero()
    for a in itertools.product(*[range(k + 1) for k in gamma]):
        b = tuple(k - x for k, x in zip(gamma, a))
        rhs = rhs + hasse_derivative(f, a) * hasse_derivative(g, b)
    assert lhs == rhs


def test_hasse_derivative_binomial():
    f = R3.parse("x0^5")
    assert hasse_derivative(f, (2, 0, 0)) == R3.parse("10*x0^3")


@given(polys)
def test_format_parse_roundtrip(f):
    assert parse_polynomial(format_polynomial(f), R3) == f


def test_parse_variants():
    f = R3.parse("x0**2 - 3*x1*x2 + 5")
    assert f.coefficient((2, 0, 0)) == 1
    assert f.coefficient((0, 1, 1)) == P - 3
    assert f.coefficient((0, 0, 0)) == 5
    with pytest.raises(ValueError):
        R3.parse("x7")


def test_evaluate():
    f = R3.parse("x0*x1 + x2^2")
    assert int(f.evaluate((2, 3, 4))) == 22
