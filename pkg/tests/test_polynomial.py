"""Tests for polynomials and function tables over prime Z_q."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zq_switching.errors import BudgetExceeded, DomainError
from zq_switching.polynomial import (
    FunctionTable,
    PolynomialZq,
    check_table_size,
    eval_poly,
    grid,
    is_prime,
    poly_from_table,
    quadratic_monomials,
    random_quadratic,
    reduce_mod_constraint,
    table_from_poly,
    vandermonde,
    vandermonde_inverse,
    with_hidden,
)
from zq_switching.sampling import Lcg64


@st.composite
def polynomials(draw, primes=(2, 3, 5), max_vars=3):
    q = draw(st.sampled_from(primes))
    nvars = draw(st.integers(0, max_vars))
    exps = st.tuples(*[st.integers(0, 2 * q) for _ in range(nvars)])
    terms = draw(st.lists(st.tuples(exps, st.integers(-10, 10)), max_size=6))
    return PolynomialZq(q, nvars, tuple(terms))


def test_primality():
    assert [q for q in range(12) if is_prime(q)] == [2, 3, 5, 7, 11]


def test_non_prime_modulus_rejected():
    with pytest.raises(DomainError):
        PolynomialZq(4, 1)
    with pytest.raises(DomainError):
        FunctionTable(6, 1, list(range(6)))


def test_exponents_reduce_and_terms_merge():
    x = PolynomialZq.variable(3, 1, 0)
    assert PolynomialZq(3, 1, (((3,), 1),)) == x
    assert PolynomialZq(3, 1, (((4,), 1),)).terms == (((2,), 1),)
    assert (x + x + x).terms == ()
    assert (x + x + x).degree == -1


def test_multiplication_uses_x_to_the_q():
    x = PolynomialZq.variable(2, 1, 0)
    one = PolynomialZq.constant(2, 1, 1)
    assert (x + one) * (x + one) == x + one


def test_bad_exponent_vectors():
    with pytest.raises(DomainError):
        PolynomialZq(3, 2, (((1,), 1),))
    with pytest.raises(DomainError):
        PolynomialZq(3, 1, (((-1,), 1),))
    with pytest.raises(DomainError):
        PolynomialZq.variable(3, 2, 0) + PolynomialZq.variable(3, 3, 0)


@settings(max_examples=100, deadline=None)
@given(polynomials())
def test_table_agrees_with_pointwise_evaluation(p):
    t = table_from_poly(p)
    for point in grid(p.q, p.nvars):
        assert t(*point) == eval_poly(p, point)


@settings(max_examples=100, deadline=None)
@given(polynomials())
def test_interpolation_recovers_the_reduced_polynomial(p):
    assert poly_from_table(table_from_poly(p)) == p


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_vandermonde_inverse(q):
    product = vandermonde(q) @ vandermonde_inverse(q) % q
    assert np.array_equal(product, np.eye(q, dtype=np.int64))


def test_grid_is_in_index_order():
    pts = grid(3, 2)
    assert pts.shape == (9, 2)
    assert pts[5].tolist() == [1, 2]
    assert grid(3, 0).shape == (1, 0)


def test_table_validation():
    with pytest.raises(DomainError):
        FunctionTable(3, 2, [0] * 8)
    with pytest.raises(DomainError):
        FunctionTable(3, 1, [0, 1, 3])
    t = FunctionTable(3, 2, [x % 3 for x in range(9)])
    assert t(2, 1) == 1
    with pytest.raises(DomainError):
        t(1)
    with pytest.raises(ValueError):
        t.values[0] = 1


def test_table_size_cap():
    check_table_size(3, 4, cap=81)
    with pytest.raises(BudgetExceeded):
        check_table_size(3, 5, cap=81)
    with pytest.raises(BudgetExceeded):
        table_from_poly(PolynomialZq.constant(3, 5, 1), cap=100)


def test_from_function_and_constant():
    t = FunctionTable.from_function(5, 2, lambda x, y: x * y + 1)
    assert t(3, 4) == 3
    assert FunctionTable.constant(5, 2, 7) == FunctionTable(5, 2, [2] * 25)


def test_quadratic_monomials():
    assert len(quadratic_monomials(2, 2)) == 4
    assert len(quadratic_monomials(2, 3)) == 6
    assert (2, 0) not in quadratic_monomials(2, 2)


def test_random_quadratic_is_seeded():
    p = random_quadratic(5, 3, Lcg64(9))
    assert p == random_quadratic(5, 3, Lcg64(9))
    assert p.degree <= 2


def test_reduce_substitutes_the_hidden_variable():
    # x1 * x0 with x0 = -(x1 + x2) over Z_3
    p = PolynomialZq(3, 3, (((1, 0, 1), 1),))
    tau = reduce_mod_constraint(p, 0)
    assert tau.coefficients == {(2, 0): 2, (1, 1): 2}


@settings(max_examples=60, deadline=None)
@given(polynomials(max_vars=3), st.integers(0, 4))
def test_reduction_agrees_on_the_constraint_set(p, a):
    if p.nvars == 0:
        with pytest.raises(DomainError):
            reduce_mod_constraint(p, a)
        return
    a %= p.q
    tau = reduce_mod_constraint(p, a)
    for point in grid(p.q, p.nvars - 1):
        hidden = (a - int(point.sum())) % p.q
        assert eval_poly(tau, point) == eval_poly(p, list(point) + [hidden])


def test_with_hidden_ignores_the_new_variable():
    p = PolynomialZq(3, 2, (((1, 1), 2), ((0, 1), 1)))
    h = with_hidden(p)
    assert h.nvars == 3
    assert eval_poly(h, [2, 1, 2]) == eval_poly(p, [2, 1])
