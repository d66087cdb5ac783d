from __future__ import annotations

import pytest

from boundary_yangian.scalarfield import (
    HBAR, ONE, P, T, U, V, ZERO, CapacityError, Divergent, ScalarError, arith,
    binomial_shift_series, boundary_limit, depends_on, expand_at_infinity, leading_term,
    order_in, param, parse, poly_coefficients, scalar, substitute, substitute_many, to_text,
)


def test_cancellation():
    assert (P / (U - V)) * (U - V) == P


def test_kernel_antisymmetry():
    assert 1 / (U - V) + 1 / (V - U) == ZERO


def test_eighth_kernel_coefficient():
    c = arith(scalar(1) / 8, U - V, "div")
    assert c == ONE / (8 * U - 8 * V)
    assert c * 8 * (U - V) == ONE


def test_division_by_zero():
    with pytest.raises(ScalarError):
        arith(P, ZERO, "div")


def test_unknown_parameter():
    with pytest.raises(KeyError):
        param("q")


def test_substitute_hbar():
    assert substitute(HBAR, "hbar", P * T) == P * T


def test_substitute_regular_at_zero():
    assert substitute(T / (P + T), "t", 0) == ZERO


def test_substitute_pole():
    with pytest.raises(ScalarError):
        substitute(1 / T, "t", 0)


def test_substitute_many_is_simultaneous():
    assert substitute_many(U - V, {"u": V, "v": U}) == V - U


def test_boundary_limit_examples():
    assert boundary_limit(T / 2, "t") == ZERO
    assert boundary_limit(P / 2, "t") == P / 2
    assert boundary_limit(P + T ** 2, "t") == P


def test_boundary_limit_divergent():
    # (1/2) hbar h@h under h -> h'/(2t), hbar -> p t: coefficient of h'@h' is p/(8t)
    coeff = substitute(HBAR / 2, "hbar", P * T) * (ONE / (2 * T)) ** 2
    assert coeff == P / (8 * T)
    assert boundary_limit(coeff, "t") == Divergent(1, P / 8)


def test_order_and_leading_term():
    assert order_in(P / (8 * T), "t") == -1
    assert order_in(T ** 2 * P + T ** 3, "t") == 2
    assert leading_term(P / (8 * T) + 1, "t") == (-1, P / 8)


def test_poly_coefficients_and_depends_on():
    s = 3 * U ** 2 * V + U - 1
    assert poly_coefficients(s, "u") == {2: 3 * V, 1: ONE, 0: -ONE}
    assert depends_on(s, "v") and not depends_on(s, "p")


def test_expand_geometric():
    s = expand_at_infinity(1 / (U - V), "u", 3)
    assert s.coefficients == (ZERO, ONE, V, V ** 2)


def test_expand_shift():
    s = expand_at_infinity(1 / (U + HBAR), "u", 2)
    assert s.coefficients == (ZERO, ONE, -HBAR)
    assert binomial_shift_series(1, "u", HBAR, 2) == s


def test_expand_product_matches_product_of_series():
    prod = expand_at_infinity(1 / ((U - V) * (U + HBAR)), "u", 3)
    a = expand_at_infinity(1 / (U - V), "u", 3)
    b = expand_at_infinity(1 / (U + HBAR), "u", 3)
    assert prod == a * b
    assert prod[2] == ONE and prod[3] == V - HBAR


def test_expand_growth_is_an_error():
    with pytest.raises(CapacityError):
        expand_at_infinity(U ** 2 / (U - V), "u", 2)


def test_text_round_trip():
    for s in (P / 2, HBAR * (U - V) / (8 * P * T), ONE, ZERO, -P ** 2 + T):
        assert parse(to_text(s)) == s
    assert to_text(P / 2) == "p/2"
