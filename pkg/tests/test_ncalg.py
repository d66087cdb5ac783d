from __future__ import annotations

import pytest

from boundary_yangian.ncalg import (
    CommTable, Gen, IncompletePresentationError, NCPoly, TensorPoly, commutator, e, equals, f,
    gen, h, hp, normal_order, parse_dump, tensor, tensor_multiply,
)
from boundary_yangian.scalarfield import HBAR, CapacityError


def word(*gs):
    return NCPoly.word(*gs)


def test_ef_straightening(y_sl2):
    assert normal_order(word(e(0), f(1)), y_sl2.table) == word(f(1), e(0)) + gen(h(1))


def test_commuting_cartan(y_sl2):
    assert normal_order(word(h(3), h(1)), y_sl2.table) == word(h(1), h(3))


def test_ee_straightening(y_sl2):
    got = normal_order(word(e(1), e(0)), y_sl2.table)
    assert got == word(e(0), e(1)) + word(e(0), e(0)).scale(HBAR)


def test_commutator_examples(y_sl2):
    T = y_sl2.table
    assert commutator(gen(e(0)), gen(f(0)), T) == gen(h(0))
    assert commutator(gen(h(0)), gen(h(5)), T) == NCPoly()
    assert commutator(gen(h(0)), gen(e(2)), T) == gen(e(2)).scale(2)


def test_normal_order_of_zero_commutator(y_sl2):
    assert equals(NCPoly(), normal_order(word(h(0), h(1)) - word(h(1), h(0)), y_sl2.table))


def test_capacity_error(y_sl2):
    with pytest.raises(CapacityError):
        normal_order(word(e(7), f(0)), y_sl2.table)
    with pytest.raises(CapacityError):
        y_sl2.table.bracket(e(4), f(3))


def test_foreign_generator(y_sl2):
    with pytest.raises(IncompletePresentationError):
        normal_order(gen(hp(0)), y_sl2.table)


def test_incomplete_table_refuses_to_finalize():
    T = CommTable("partial", 1, ("E", "F", "H"))
    T.set(e(0), f(0), gen(h(0)))
    with pytest.raises(IncompletePresentationError):
        T.finalize()


def test_finalize_rejects_non_lowering_entry():
    T = CommTable("bad", 0, ("E", "F"))
    T.set(e(0), f(0), word(f(0), e(0)))
    with pytest.raises(ValueError):
        T.finalize()


def test_frozen_table(y_sl2):
    with pytest.raises(TypeError):
        y_sl2.table.set(e(0), f(0), NCPoly())


def test_tensor_examples(y_sl2):
    assert tensor(gen(h(0)), gen(e(0))).flip() == tensor(gen(e(0)), gen(h(0)))
    left = tensor(gen(e(0)), NCPoly.const(1))
    right = tensor(NCPoly.const(1), gen(f(0)))
    assert tensor_multiply(left, right, y_sl2.table) == tensor(gen(e(0)), gen(f(0)))
    assert tensor(gen(f(0)), gen(e(0))).embed("13") == tensor(gen(f(0)), NCPoly.const(1), gen(e(0)))


def test_primitive_is_cocommutative(y_sl2):
    d0 = y_sl2.coproduct(e(0))
    assert equals(d0, d0.flip())
    d1 = y_sl2.coproduct(e(1))
    assert not equals(d1, d1.flip())


def test_tensor_degree_mismatch(y_sl2):
    with pytest.raises(ValueError):
        tensor_multiply(TensorPoly.one(2), TensorPoly.one(3), y_sl2.table)


def test_gen_parse_round_trip():
    for g in (e(0), f(12), h(3), hp(2)):
        assert Gen.parse(str(g)) == g


def test_dump_round_trip(y_sl2):
    parsed = parse_dump(y_sl2.table.dump())
    assert len(parsed) == len(y_sl2.table.entries)
    assert parsed[(e(0), f(1))] == "h_1"
    assert parsed[(e(1), e(0))] == "(hbar)*e_0*e_0"
