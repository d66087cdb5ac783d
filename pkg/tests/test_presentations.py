from __future__ import annotations

import pytest

from boundary_yangian.checks import all_passed
from boundary_yangian.ncalg import (
    IncompletePresentationError, NCPoly, TensorPoly, e, f, gen, h, hp, tensor, tensor_normal_order,
)
from boundary_yangian.presentations import closed_form_factor_table, quotient_by_hp
from boundary_yangian.presentations.algebras import build_y_sl2, corrupt
from boundary_yangian.presentations.currents import (
    IDENTITY_SETS, GFIdentity, check_gf_identity, check_molev_coproduct, gf_suite, mode_coefficient, molev_series,
)
from boundary_yangian.presentations.hopf import (
    counit_leg, p_divisibility_checks, verify_hopf, verify_hopf_ideal,
)
from boundary_yangian.presentations.limit import (
    combo_text, limit_relation, parametrize_and_limit, yangian_formal_relations,
)
from boundary_yangian.presentations.series import UnboundCurrentError
from boundary_yangian.scalarfield import HBAR, P


def t2(a, b, c=1):
    return tensor(a, b).scale(c)


class TestYangian:
    def test_entries(self, y_sl2):
        assert y_sl2.bracket(e(0), f(1)) == gen(h(1))
        assert y_sl2.bracket(e(1), e(0)) == NCPoly.word(e(0), e(0)).scale(HBAR)
        assert y_sl2.bracket(f(1), f(0)) == NCPoly.word(f(0), f(0)).scale(-HBAR)

    def test_delta_h1(self, y_sl2):
        want = (TensorPoly.primitive(h(1)) + t2(gen(h(0)), gen(h(0)), HBAR)
                - t2(gen(f(0)), gen(e(0)), 2 * HBAR))
        assert y_sl2.coproduct(h(1)) == want

    def test_delta_e1(self, y_sl2):
        assert y_sl2.coproduct(e(1)) == TensorPoly.primitive(e(1)) + t2(gen(h(0)), gen(e(0)), HBAR)

    def test_counit_on_delta_e1(self, y_sl2):
        d = y_sl2.coproduct(e(1))
        assert counit_leg(d, 0) == gen(e(1))
        assert counit_leg(d, 1) == gen(e(1))

    def test_hopf_suite(self, y_sl2):
        checks = verify_hopf(y_sl2, 2, jacobi_max=4)
        assert checks and all_passed(checks)
        names = {c.name.split("[")[0] for c in checks}
        assert {"jacobi", "relation", "delta-homomorphism", "coassociativity",
                "counit-left", "counit-right"} <= names

    def test_corrupted_table_is_caught(self, y_sl2):
        bad = corrupt(y_sl2, e(1), e(0))
        failed = [c for c in verify_hopf(bad, 2, jacobi_max=3) if c.status == "fail"]
        assert failed
        assert all(c.residual for c in failed)

    def test_capacity_overflow_is_an_error_not_a_failure(self):
        small = build_y_sl2(2)
        checks = verify_hopf(small, 2, jacobi_max=4)
        statuses = {c.status for c in checks}
        assert "error" in statuses and "fail" not in statuses

    def test_h_is_not_a_hopf_ideal(self, y_sl2):
        assert verify_hopf_ideal(y_sl2, {"H"}) is False


class TestBoundary:
    def test_entries(self, boundary):
        assert boundary.bracket(e(0), f(0)) == gen(hp(0)).scale(P / 2)
        for l in range(3):
            assert boundary.bracket(h(0), e(l)) == gen(e(l)).scale(4 * P)
            assert boundary.bracket(hp(0), e(l)) == NCPoly()

    def test_recursion_with_anticommutator(self, boundary):
        want = (gen(e(3)).scale(4 * P) + NCPoly.word(hp(0), e(2)).scale(2 * P ** 2)
                + NCPoly.word(hp(1), e(1)).scale(2 * P ** 2))
        assert boundary.bracket(h(2), e(1)) == want

    def test_delta_hp1(self, boundary):
        want = TensorPoly.primitive(hp(1)) + t2(gen(hp(0)), gen(hp(0)), P / 2)
        assert boundary.coproduct(hp(1)) == want

    def test_hopf_suite(self, boundary):
        checks = verify_hopf(boundary, 3) + p_divisibility_checks(boundary, 3)
        assert all_passed(checks)

    def test_ideals(self, boundary):
        assert verify_hopf_ideal(boundary, {"Hp"}) is True
        ok, why = verify_hopf_ideal(boundary, {"E"}, detail=True)
        assert not ok and why


class TestFactor:
    def test_closed_form(self, factor):
        closed = closed_form_factor_table(factor.bound)
        for (a, b), val in closed.entries.items():
            assert factor.bracket(a, b) == val
        assert factor.bracket(e(1), f(2)) == NCPoly()
        assert factor.bracket(h(2), e(1)) == gen(e(3)).scale(4 * P)

    def test_delta_h1(self, factor):
        want = TensorPoly.primitive(h(1)) - t2(gen(f(0)), gen(e(0)), 4 * P)
        assert factor.coproduct(h(1)) == want

    def test_hopf_suite(self, factor):
        assert all_passed(verify_hopf(factor, 3))

    def test_quotient_needs_an_hp_family(self, y_sl2):
        with pytest.raises(ValueError):
            quotient_by_hp(y_sl2)


class TestLimit:
    def test_report_passes(self, boundary):
        report = parametrize_and_limit(3, boundary=boundary)
        assert report.passed
        assert report.normalizers["ef"] == "p*t"

    def test_ef_relation(self):
        rel = next(r for r in yangian_formal_relations(1) if r.label == "[e_0,f_1]=h_1")
        entry = limit_relation(rel)
        assert entry.classification == "finite"
        assert combo_text(entry.finite) == "[e_0,f_1] + (-p/2)*hp_1"

    def test_h0e_relation_diverges_into_centrality(self):
        rel = next(r for r in yangian_formal_relations(1) if r.label == "[h_0,e_1]=2e_1")
        entry = limit_relation(rel)
        assert entry.classification == "divergent"
        assert combo_text(entry.finite) == "[h_0,e_1] + (-4*p)*e_1"

    def test_he_recursion_finite_part(self):
        rel = next(r for r in yangian_formal_relations(2) if r.label == "he-recursion(k=0,l=1)")
        text = combo_text(limit_relation(rel).finite)
        assert "(-p^2)*{hp_0,e_1}" in text

    def test_constraints(self, boundary):
        report = parametrize_and_limit(2, boundary=boundary)
        assert "[hp_0,e_1] = 0" in report.constraints
        assert all(c.startswith("[hp_") for c in report.constraints)


class TestCurrents:
    @pytest.mark.parametrize("which", ["y_sl2", "boundary", "factor"])
    def test_gf_identities(self, which, y_sl2, boundary, factor):
        pres = {"y_sl2": y_sl2, "boundary": boundary, "factor": factor}[which]
        assert all_passed(gf_suite(pres, which, 3))

    def test_ef_mode_coefficient(self, y_sl2):
        ident = next(i for i in IDENTITY_SETS["y_sl2"]() if i.name == "[e(u),f(v)]")
        for i, j in ((0, 0), (1, 2), (2, 1)):
            assert mode_coefficient(ident, y_sl2.table, i, j) == gen(h(i + j))

    def test_boundary_h0e_coefficient(self, boundary):
        ident = next(i for i in IDENTITY_SETS["boundary"]() if i.name == "[chi(u),e(v)]")
        assert mode_coefficient(ident, boundary.table, 0, 2) == gen(e(2)).scale(4 * P)

    def test_chi_chip_commute(self, boundary):
        ident = next(i for i in IDENTITY_SETS["boundary"]() if i.name == "[chi(u),chi'(v)]")
        assert mode_coefficient(ident, boundary.table, 1, 1, side="lhs") == NCPoly()

    def test_missing_family_is_caught(self, factor):
        ident = next(i for i in IDENTITY_SETS["boundary"]() if i.name == "[e(u),f(v)]")
        with pytest.raises(IncompletePresentationError):
            check_gf_identity(ident, factor.table, 2)

    def test_unbound_current(self, y_sl2):
        ident = IDENTITY_SETS["y_sl2"]()[0]
        bad = GFIdentity(ident.name, ident.lhs, ident.rhs, {})
        with pytest.raises(UnboundCurrentError):
            check_gf_identity(bad, y_sl2.table, 1)

    def test_molev_orders(self, y_sl2):
        series = molev_series(2)
        T = y_sl2.table
        assert tensor_normal_order(series["E"][1], T) == TensorPoly.primitive(e(0))
        assert tensor_normal_order(series["E"][2], T) == y_sl2.coproduct(e(1))
        assert tensor_normal_order(series["H"][1], T) == TensorPoly.primitive(h(0)).scale(HBAR)
        assert all_passed(check_molev_coproduct(3, y_sl2))
