from __future__ import annotations

import pytest

from boundary_yangian.checks import all_passed
from boundary_yangian.evalrep import (
    EvalRep, LieRep, MatrixRF, NotNilpotentError, RepresentationError, SingularMatrixError,
    auxiliary_identities, evaluation_checks, exp_nilpotent, fundamental_sl2, pqybe_check,
    r_matrix, r_matrix_checks, rep_c4, twist_check, twist_exponent, twist_matrix, ybe_residual,
)
from boundary_yangian.cybe import builtin
from boundary_yangian.ncalg import TensorPoly, e, f, gen, h, tensor
from boundary_yangian.scalarfield import HBAR, L1, L2, LAM, P


def test_rep_brackets():
    rho = fundamental_sl2().images
    assert rho["e"].comm(rho["f"]) == rho["h"]
    c4 = rep_c4().images
    assert not c4["e"].comm(c4["f"])


def test_bad_rep_is_rejected():
    with pytest.raises(RepresentationError):
        LieRep(builtin("sl2"), {"e": MatrixRF.unit(2, 0, 1), "f": MatrixRF.unit(2, 1, 0),
                                "h": MatrixRF.diag(1, 1)})


def test_auxiliary_anticommutators_vanish():
    assert not any(auxiliary_identities(fundamental_sl2()).values())


def test_eval_modes():
    ev = EvalRep(fundamental_sl2())
    assert ev.eval_mode(e(2)) == MatrixRF.unit(2, 0, 1).scale(LAM ** 2)
    assert ev.eval_mode(h(0)) == MatrixRF.diag(1, -1)


def test_eval_recursion():
    ev = EvalRep(fundamental_sl2())
    m = ev.eval_mode
    res = m(h(1)).comm(m(e(0))) - m(h(0)).comm(m(e(1))) - m(h(0)).anticomm(m(e(0))).scale(HBAR)
    assert not res


def test_evaluation_relations():
    assert all_passed(evaluation_checks(3))


def test_exp_nilpotent():
    X = twist_exponent(0, 1, 2, (L1, L2))
    assert X @ X == MatrixRF(16)
    assert exp_nilpotent(X) == MatrixRF.identity(16) + X
    assert exp_nilpotent(MatrixRF(3)) == MatrixRF.identity(3)
    assert exp_nilpotent(X) @ exp_nilpotent(-X) == MatrixRF.identity(16)


def test_exp_rejects_non_nilpotent():
    with pytest.raises(NotNilpotentError):
        exp_nilpotent(MatrixRF.diag(1, 2))


def test_inverse():
    M = MatrixRF(2, {(0, 0): P, (0, 1): 1, (1, 1): L1})
    assert M @ M.inverse() == MatrixRF.identity(2)
    with pytest.raises(SingularMatrixError):
        MatrixRF(2, {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1}).inverse()


def test_twist_conjugation_h1():
    ev = EvalRep(rep_c4())
    F = twist_matrix()
    at = (L1, L2)
    lhs = F @ ev.tensor(TensorPoly.primitive(h(1)), at) @ F.inverse()
    want = TensorPoly.primitive(h(1)) - tensor(gen(f(0)), gen(e(0))).scale(4 * P)
    assert lhs == ev.tensor(want, at)


def test_twist_suite(factor):
    assert all_passed(twist_check(factor, max_mode=2))


def test_r_matrix():
    assert not ybe_residual()
    x = L1 - L2
    assert r_matrix(x) @ r_matrix(-x, 1, 0) == MatrixRF.identity(16)
    assert all_passed(r_matrix_checks())


@pytest.mark.parametrize("g", [h(0), h(1), h(2), e(1), f(1), e(2)])
def test_pqybe(g, factor):
    assert pqybe_check(g, factor=factor).passed


def test_pqybe_detects_wrong_coproduct():
    from boundary_yangian.presentations.algebras import build_y_sl2
    # Y(sl2) coproducts do not intertwine with the Y(c) R-matrix
    assert pqybe_check(h(1), factor=build_y_sl2(4)).status == "fail"
