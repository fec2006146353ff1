from math import comb

import pytest
from hypothesis import given, strategies as st
from oracles import gauss_at, gauss_minus_one_closed

from artin_homology.algebra import ZZ, Poly
from artin_homology.qcalc import (
    ONE,
    Q,
    T,
    QTPoly,
    exact_divide,
    gauss_binomial,
    primed_binomial,
    q_factorial,
    q_integer,
    specialize,
)


def poly(*c):
    return Poly(ZZ, list(c))


def test_q_integer_examples():
    assert q_integer(0) == ONE
    assert q_integer(3) == ONE + Q + Q**2
    assert specialize(q_integer(4)) == poly()
    assert specialize(q_integer(3)) == poly(1)


def test_gauss_examples():
    for m in range(6):
        assert gauss_binomial(m, 0) == ONE
    assert gauss_binomial(4, 2) == (ONE + Q**2) * (ONE + Q + Q**2)
    assert specialize(gauss_binomial(4, 2)) == poly(2)
    assert specialize(gauss_binomial(2, 1)) == poly()
    assert specialize(gauss_binomial(6, 2)) == poly(3)


def test_gauss_matches_factorial_quotient():
    for m in range(9):
        for i in range(m + 1):
            den = q_factorial(i) * q_factorial(m - i)
            assert exact_divide(q_factorial(m), den) == gauss_binomial(m, i)


def test_gauss_domain_errors():
    with pytest.raises(ValueError):
        gauss_binomial(2, 3)
    with pytest.raises(ValueError):
        primed_binomial(1, 2)
    with pytest.raises(ValueError):
        q_integer(-1)


def test_primed_examples():
    assert specialize(primed_binomial(1, 0)) == poly(1, 1)
    assert specialize(primed_binomial(2, 0)) == poly(1, 0, -1)
    assert specialize(primed_binomial(2, 1)) == poly()
    assert specialize((ONE + T) * (ONE + T * Q)) == poly(1, 0, -1)


def test_exact_divide_rejects_remainder():
    with pytest.raises(ArithmeticError):
        exact_divide(q_integer(3), q_integer(2))


@pytest.mark.parametrize("m", range(21))
def test_symmetry_and_closed_form(m):
    for i in range(m + 1):
        g = gauss_binomial(m, i)
        assert g == gauss_binomial(m, m - i)
        assert specialize(g) == poly(gauss_minus_one_closed(m, i))
        assert primed_binomial(m, i).evaluate(t=0) == g


@given(st.integers(1, 20), st.data())
def test_pascal_and_product_formula(m, data):
    i = data.draw(st.integers(1, m))
    if i < m:
        assert gauss_binomial(m, i) == gauss_binomial(m - 1, i - 1) + Q**i * gauss_binomial(m - 1, i)
    for q in (2, 3, -2):
        assert specialize(gauss_binomial(m, i), q) == poly(gauss_at(m, i, q))
    assert specialize(gauss_binomial(m, i), 1) == poly(comb(m, i))


def test_qtpoly_arithmetic():
    a = QTPoly({(1, 0): 2, (0, 1): -1})
    assert a - a == QTPoly()
    assert (a * a)[(1, 1)] == -4
    assert (ONE + T).t_degree() == 1
