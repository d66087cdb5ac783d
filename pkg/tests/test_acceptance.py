"""Acceptance criteria 1-11, each reported as one PASS/FAIL line.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys

import pytest

from boundary_yangian.checks import Check, all_passed
from boundary_yangian.cli import SuiteConfig, run
from boundary_yangian.cybe import compare_colie, cybe_checks, parametrized_r_divergence, boundary_r
from boundary_yangian.evalrep import pqybe_check, r_matrix_checks, twist_check
from boundary_yangian.ncalg import TensorPoly, e, f, gen, h, tensor
from boundary_yangian.presentations import (
    build_boundary, build_y_sl2, closed_form_factor_table, quotient_by_hp,
)
from boundary_yangian.presentations.currents import check_molev_coproduct, gf_suite
from boundary_yangian.presentations.hopf import p_divisibility_checks, verify_hopf, verify_hopf_ideal
from boundary_yangian.presentations.limit import expected_constraints, parametrize_and_limit
from boundary_yangian.scalarfield import ONE, P, order_in

MAX_MODE = 3
RESULTS: list[str] = []


def record(number: int, title: str, checks: list[Check]) -> None:
    ok = bool(checks) and all_passed(checks)
    bad = [c for c in checks if c.status != "pass"]
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({len(checks) - len(bad)}/{len(checks)} checks)"
    RESULTS.append(line)
    print(line)
    assert ok, "; ".join(f"{c.name}: {c.residual or c.detail}" for c in bad[:5])


@pytest.fixture(scope="module")
def pres():
    boundary = build_boundary(6)
    return {"y_sl2": build_y_sl2(6), "boundary": boundary, "factor": quotient_by_hp(boundary)}


def test_criterion_01_yangian_hopf(pres):
    checks = verify_hopf(pres["y_sl2"], 2, jacobi_max=4)
    kinds = {c.name.split("[")[0] for c in checks}
    checks.append(Check("all check kinds present", {"jacobi", "delta-homomorphism", "coassociativity",
                                                    "counit-left", "counit-right"} <= kinds))
    record(1, "Y(sl2) Jacobi (mode sum <= 4), Delta-homomorphy and coalgebra axioms (modes <= 2)", checks)


def test_criterion_02_molev(pres):
    checks = [c for c in check_molev_coproduct(2, pres["y_sl2"]) if "(h(u)) u^-2" not in c.name]
    record(2, "Molev current coproducts reproduce Delta(x_0), Delta(e_1), Delta(f_1), Delta(h_0)", checks)


def test_criterion_03_generating_functions(pres):
    checks = []
    for which in ("y_sl2", "boundary", "factor"):
        checks += [Check(f"{which}/{c.name}", c.passed, c.residual) for c in gf_suite(pres[which], which, 3)]
    record(3, "current relations match the tables at every bidegree i + j <= 3", checks)


def test_criterion_04_restricted_limit(pres):
    report = parametrize_and_limit(MAX_MODE, boundary=pres["boundary"])
    checks = list(report.checks)
    checks.append(Check("constraints are exactly h'-centrality",
                        set(report.constraints) == expected_constraints(MAX_MODE)))
    checks.append(Check("every relation classified", all(
        e_.classification in ("finite", "vanishing", "divergent") for e_ in report.entries)))
    record(4, "t -> 0 limit: finite parts are the boundary relations, constraints are h'-centrality", checks)


def test_criterion_05_boundary_hopf(pres):
    checks = verify_hopf(pres["boundary"], MAX_MODE) + p_divisibility_checks(pres["boundary"], MAX_MODE)
    record(5, "boundary Yangian Hopf suite at max mode 3, Delta - Delta^op divisible by p", checks)


def test_criterion_06_cybe():
    checks = cybe_checks()
    record(6, "CYBE for the rational r-matrices on a and sl2, ad-invariance of the a numerator", checks)


def test_criterion_07_colie(pres):
    report = compare_colie(pres["boundary"], boundary_r())
    mode1 = {c.name for c in report.checks} >= {"colie[e_1]", "colie[f_1]", "colie[h_1]", "colie[hp_1]"}
    checks = report.checks + [Check("all four mode-1 generators compared", mode1),
                              Check("single constant", report.constant == ONE)]
    record(7, "Delta - Delta^op matches the cobracket with one global constant", checks)


def test_criterion_08_divergence():
    report = parametrized_r_divergence()
    div, van = report.divergent, report.vanishing
    checks = report.checks + [
        Check("one pole term, h'@h'", list(div.terms) == [("hp", "hp")]
              and order_in(div.terms[("hp", "hp")], "t") == -1),
        Check("one O(t) term", len(van.terms) == 1 and order_in(next(iter(van.terms.values())), "t") == 1),
        Check("finite part", report.finite == boundary_r()),
    ]
    record(8, "parametrized Yang r-matrix: one t^-1 term, one t term, finite part boundary-r", checks)


def test_criterion_09_factorization(pres):
    ok, why = verify_hopf_ideal(pres["boundary"], {"Hp"}, detail=True)
    checks = [Check("J(h') is a Hopf ideal", ok, why)]
    factor = pres["factor"]
    for (a, b), val in closed_form_factor_table(factor.bound).entries.items():
        if a.mode <= MAX_MODE and b.mode <= MAX_MODE:
            diff = factor.bracket(a, b) - val
            checks.append(Check(f"[{a}, {b}]", not diff, str(diff) if diff else None))
    want = TensorPoly.primitive(h(1)) - tensor(gen(f(0)), gen(e(0))).scale(4 * P)
    diff = factor.coproduct(h(1)) - want
    checks.append(Check("Delta(h_1)", not diff, str(diff) if diff else None))
    record(9, "h' generates a Hopf ideal, quotient table and Delta(h_1) in closed form", checks)


def test_criterion_10_twist_and_r_matrix(pres):
    checks = twist_check(pres["factor"], max_mode=2) + r_matrix_checks()
    checks += [pqybe_check(g, factor=pres["factor"]) for g in (h(1), e(1), f(1))]
    names = {c.name for c in checks}
    checks.append(Check("required identities present", {"twist-cocycle", "ybe", "R = (F21 F)^-1"} <= names))
    record(10, "twist conjugation, cocycle, YBE, pqybe and R = (F21 F)^-1 in rep_c4", checks)


def test_criterion_11_negative_controls():
    checks = []
    for fault, suite, expected in (("table", "hopf", 1), ("tensor", "cybe", 1), ("exponent", "twist", 3)):
        report, code = run(SuiteConfig(suite, inject_fault=fault))
        bad = report["summary"]["failed"] + report["summary"]["errored"]
        checks.append(Check(f"{fault} fault is reported", code == expected and bad > 0 and report["status"] != "pass",
                            None if code == expected else f"exit {code}"))
    record(11, "corrupted table, non-invariant tensor and non-nilpotent exponent never pass silently", checks)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
