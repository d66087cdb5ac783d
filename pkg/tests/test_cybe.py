from __future__ import annotations

import pytest

from boundary_yangian.cybe import (
    LieAlg, LieAlgebraError, SpectralTensor, ad_invariance_residual, builtin, casimir_sl2,
    cobracket, compare_colie, cybe_residual, invariant_a, parametrized_r_divergence,
    project_factor_r, boundary_r, rational,
)
from boundary_yangian.scalarfield import ONE, P, T, U, V


def st(terms):
    return SpectralTensor(2, terms)


def test_builtin_brackets():
    assert builtin("a").bracket("e", "f") == {"hp": P / 2}
    assert builtin("c").bracket("e", "f") == {}
    assert builtin("double").bracket("e", "f") == {"h": ONE / 2, "hp": ONE / 2}


def test_invalid_lie_algebra():
    with pytest.raises(LieAlgebraError):
        LieAlg("bad", ("x", "y", "z"), {("x", "y"): {"z": 1}, ("y", "z"): {"y": 1}})


def test_invalid_form():
    with pytest.raises(LieAlgebraError):
        LieAlg("bad", ("e", "h"), {("h", "e"): {"e": 2}}, form={("e", "e"): 1})


def test_casimir_sl2():
    assert casimir_sl2() == st({("e", "f"): 1, ("f", "e"): 1, ("h", "h"): ONE / 2})


def test_invariant_a():
    assert invariant_a() == st({("e", "f"): 1, ("f", "e"): 1,
                                ("h", "hp"): ONE / 8, ("hp", "h"): ONE / 8})


def test_cybe_solutions():
    assert not cybe_residual(boundary_r(), builtin("a"))
    assert not cybe_residual(rational(casimir_sl2()), builtin("sl2"))


def test_commuting_tensor_solves_cybe():
    # every term of the residual contains [e, e] = 0
    assert not cybe_residual(st({("e", "e"): 1 / (U - V)}), builtin("sl2"))


def test_non_invariant_tensor_fails_cybe():
    assert cybe_residual(st({("e", "f"): 1 / (U - V)}), builtin("sl2"))


def test_ad_invariance():
    res = ad_invariance_residual(invariant_a(), builtin("a"))
    assert not any(res.values())
    bad = ad_invariance_residual(st({("h", "h"): 1}), builtin("sl2"))
    assert bad["e"]


def test_cobracket_examples():
    a, sl2 = builtin("a"), builtin("sl2")
    assert not cobracket(boundary_r(), "hp", a)
    assert not cobracket(rational(casimir_sl2()), "h", sl2)
    # invariance kills the zero mode; mode 1 leaves the h' part of [e, f]
    assert not cobracket(boundary_r(), "e", a)
    de = cobracket(boundary_r(), "e", a, mode=1)
    assert de == st({("hp", "e"): P / 2, ("e", "hp"): -P / 2})
    assert de.flip() == -de


def test_colie_constant(boundary):
    report = compare_colie(boundary, boundary_r())
    assert report.passed
    assert report.constant == ONE


def test_colie_rejects_wrong_r(boundary):
    assert not compare_colie(boundary, rational(st({("e", "f"): 1, ("f", "e"): 2}))).passed


def test_project_factor_r():
    assert project_factor_r(boundary_r()) == rational(st({("e", "f"): 1, ("f", "e"): 1}))
    plain = rational(st({("e", "f"): 1}))
    assert project_factor_r(plain) == plain


def test_divergence():
    report = parametrized_r_divergence()
    assert report.passed
    assert report.finite == boundary_r()
    assert report.orders[("hp", "hp")] == -1
    assert report.orders[("h", "h")] == 1
    assert report.divergent == st({("hp", "hp"): P / (8 * T * (U - V))})
