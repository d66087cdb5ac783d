"""The Hopf presentations: Y(sl2), the boundary Yangian Y_{p,0}(a), and Y(c).

Each presentation carries a commutator table derived from its defining
relations, the explicitly known low-mode coproducts, and a rule for the
higher-mode coproducts.  Defining relations are kept as free-algebra
expressions that must vanish, so they can be pushed through Delta and checked
independently of the table that was derived from them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..ncalg import (
    CommTable, Gen, NCPoly, TensorPoly, anticomm, comm, e, f, gen, h, hp,
    normal_order, tensor_commutator, tensor_multiply, tensor_normal_order,
)
from ..scalarfield import HBAR, ONE, P, ZERO, Scalar
from .series import Series, current

DEFAULT_BOUND = 6


@dataclass
class Relation:
    """A defining relation, stored as a free-algebra expression equal to zero."""

    label: str
    expr: NCPoly
    modes: tuple[int, ...] = ()

    @property
    def max_mode(self) -> int:
        return max((g.mode for g in self.expr.generators()), default=0)


@dataclass
class HopfPresentation:
    name: str
    table: CommTable
    seeds: dict[Gen, TensorPoly]
    rules: dict[str, Callable[["HopfPresentation", int], TensorPoly]]
    relation_builder: Callable[[int], list[Relation]]
    parameters: tuple[str, ...]
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def bound(self) -> int:
        return self.table.bound

    @property
    def families(self) -> tuple[str, ...]:
        return self.table.families

    def generators(self, max_mode: int | None = None) -> list[Gen]:
        return self.table.generators(max_mode)

    def counit(self, g: Gen) -> Scalar:
        return ZERO

    def relations(self, max_mode: int | None = None) -> list[Relation]:
        top = self.bound if max_mode is None else max_mode
        return [r for r in self.relation_builder(top) if r.max_mode <= top]

    def coproduct(self, g: Gen) -> TensorPoly:
        hit = self._cache.get(g)
        if hit is None:
            if g in self.seeds:
                hit = self.seeds[g]
            elif g.mode == 0:
                hit = TensorPoly.primitive(g)
            else:
                hit = tensor_normal_order(self.rules[g.family](self, g.mode), self.table)
            self._cache[g] = hit
        return hit

    def coproducts(self, max_mode: int | None = None) -> dict[Gen, TensorPoly]:
        return {g: self.coproduct(g) for g in self.generators(max_mode)}

    def delta_word(self, w: tuple) -> TensorPoly:
        key = ("word", w)
        hit = self._cache.get(key)
        if hit is None:
            hit = TensorPoly.one(2)
            for g in w:
                hit = tensor_multiply(hit, self.coproduct(g), self.table)
            self._cache[key] = hit
        return hit

    def delta(self, x: NCPoly) -> TensorPoly:
        out = TensorPoly(2)
        for w, c in x.terms.items():
            out = out + self.delta_word(w).scale(c)
        return out

    def normal(self, x: NCPoly) -> NCPoly:
        return normal_order(x, self.table)

    def bracket(self, a: Gen, b: Gen) -> NCPoly:
        return self.table.bracket(a, b)


# --- table derivation ------------------------------------------------------

def _derive_table(name: str, families: tuple[str, ...], bound: int, *,
                  ef: Callable[[int], NCPoly],
                  h0_weight: Scalar,
                  he_extra: Callable[[int, int], NCPoly],
                  hf_extra: Callable[[int, int], NCPoly],
                  ee_extra: Callable[[int, int], NCPoly],
                  ff_extra: Callable[[int, int], NCPoly]) -> CommTable:
    """Solve the recursive mode relations upward in the first index.

    h-e:  [h_{k+1}, e_l] = [h_k, e_{l+1}] + he_extra(k, l), base [h_0, e_l] = w e_l
    e-e:  [e_{k+1}, e_l] = [e_k, e_{l+1}] + ee_extra(k, l); at k = l antisymmetry
          turns this into 2 [e_{l+1}, e_l] = ee_extra(l, l).
    Same for f.  Any Hp family is central.
    """
    T = CommTable(name, bound, families)
    N = bound

    def put(a: Gen, b: Gen, expr: NCPoly) -> None:
        T.set(a, b, normal_order(expr, T))

    cartan = [fam for fam in ("H", "Hp") if fam in families]
    for fa in cartan:
        for fb in cartan:
            for k in range(N + 1):
                for l in range(N + 1 - k):
                    a, b = Gen(fa, k), Gen(fb, l)
                    if a != b:
                        T.set(a, b, NCPoly())
    if "Hp" in families:
        for k in range(N + 1):
            for l in range(N + 1 - k):
                T.set(hp(k), e(l), NCPoly())
                T.set(hp(k), f(l), NCPoly())
    for k in range(N + 1):
        for l in range(N + 1 - k):
            put(e(k), f(l), ef(k + l))
    for k in range(N + 1):
        for l in range(N + 1 - k):
            if k == 0:
                put(h(0), e(l), gen(e(l)).scale(h0_weight))
                put(h(0), f(l), gen(f(l)).scale(-h0_weight))
            else:
                put(h(k), e(l), T.bracket(h(k - 1), e(l + 1)) + he_extra(k - 1, l))
                put(h(k), f(l), T.bracket(h(k - 1), f(l + 1)) + hf_extra(k - 1, l))
    for fam, extra in (("E", ee_extra), ("F", ff_extra)):
        for d in range(1, N + 1):
            for l in range(N + 1):
                k = l + d
                if k + l > N:
                    break
                if d == 1:
                    put(Gen(fam, k), Gen(fam, l), extra(l, l).scale(ONE / 2))
                else:
                    put(Gen(fam, k), Gen(fam, l),
                        T.bracket(Gen(fam, k - 1), Gen(fam, l + 1)) + extra(k - 1, l))
    return T.finalize()


def _zero2(k: int, l: int) -> NCPoly:
    return NCPoly()


# --- relation schemas ------------------------------------------------------

def _br(a: Gen, b: Gen) -> NCPoly:
    return comm(gen(a), gen(b))


def _an(a: Gen, b: Gen) -> NCPoly:
    return anticomm(gen(a), gen(b))


def yangian_relations(M: int) -> list[Relation]:
    """Defining relations of Y(sl2) with every mode at most M."""
    rels: list[Relation] = []
    add = lambda label, expr, *modes: rels.append(Relation(label, expr, modes))
    for k in range(M + 1):
        for l in range(k + 1, M + 1):
            add(f"[h_{k},h_{l}]=0", _br(h(k), h(l)), k, l)
    for k in range(M + 1):
        for l in range(M + 1 - k):
            add(f"[e_{k},f_{l}]=h_{k+l}", _br(e(k), f(l)) - gen(h(k + l)), k, l)
    for l in range(M + 1):
        add(f"[h_0,e_{l}]=2e_{l}", _br(h(0), e(l)) - gen(e(l)).scale(2), l)
        add(f"[h_0,f_{l}]=-2f_{l}", _br(h(0), f(l)) + gen(f(l)).scale(2), l)
    for k in range(M):
        for l in range(M):
            add(f"he-recursion(k={k},l={l})",
                _br(h(k + 1), e(l)) - _br(h(k), e(l + 1)) - _an(h(k), e(l)).scale(HBAR), k, l)
            add(f"hf-recursion(k={k},l={l})",
                _br(h(k + 1), f(l)) - _br(h(k), f(l + 1)) + _an(h(k), f(l)).scale(HBAR), k, l)
            add(f"ee-recursion(k={k},l={l})",
                _br(e(k + 1), e(l)) - _br(e(k), e(l + 1)) - _an(e(k), e(l)).scale(HBAR), k, l)
            add(f"ff-recursion(k={k},l={l})",
                _br(f(k + 1), f(l)) - _br(f(k), f(l + 1)) + _an(f(k), f(l)).scale(HBAR), k, l)
    return rels


def boundary_relations(M: int) -> list[Relation]:
    """Structure relations of the boundary Yangian Y_{p,0}(a)."""
    rels: list[Relation] = []
    add = lambda label, expr, *modes: rels.append(Relation(label, expr, modes))
    for k in range(M + 1):
        for l in range(M + 1):
            if k < l:
                add(f"[h_{k},h_{l}]=0", _br(h(k), h(l)), k, l)
                add(f"[hp_{k},hp_{l}]=0", _br(hp(k), hp(l)), k, l)
            add(f"[h_{k},hp_{l}]=0", _br(h(k), hp(l)), k, l)
    for l in range(M + 1):
        add(f"[h_0,e_{l}]=4pe_{l}", _br(h(0), e(l)) - gen(e(l)).scale(4 * P), l)
        add(f"[h_0,f_{l}]=-4pf_{l}", _br(h(0), f(l)) + gen(f(l)).scale(4 * P), l)
        add(f"[hp_0,e_{l}]=0", _br(hp(0), e(l)), l)
        add(f"[hp_0,f_{l}]=0", _br(hp(0), f(l)), l)
    for k in range(M + 1):
        for l in range(M + 1 - k):
            add(f"[e_{k},f_{l}]=(p/2)hp_{k+l}", _br(e(k), f(l)) - gen(hp(k + l)).scale(P / 2), k, l)
    for k in range(M):
        for l in range(M):
            add(f"he-recursion(k={k},l={l})",
                _br(h(k + 1), e(l)) - _br(h(k), e(l + 1)) - _an(hp(k), e(l)).scale(P ** 2), k, l)
            add(f"hf-recursion(k={k},l={l})",
                _br(h(k + 1), f(l)) - _br(h(k), f(l + 1)) + _an(hp(k), f(l)).scale(P ** 2), k, l)
            add(f"hpe-recursion(k={k},l={l})", _br(hp(k + 1), e(l)) - _br(hp(k), e(l + 1)), k, l)
            add(f"hpf-recursion(k={k},l={l})", _br(hp(k + 1), f(l)) - _br(hp(k), f(l + 1)), k, l)
            add(f"ee-recursion(k={k},l={l})", _br(e(k + 1), e(l)) - _br(e(k), e(l + 1)), k, l)
            add(f"ff-recursion(k={k},l={l})", _br(f(k + 1), f(l)) - _br(f(k), f(l + 1)), k, l)
    return rels


def factor_relations(M: int) -> list[Relation]:
    """Classical current-algebra relations of Y(c)."""
    rels: list[Relation] = []
    add = lambda label, expr, *modes: rels.append(Relation(label, expr, modes))
    for k in range(M + 1):
        for l in range(k + 1, M + 1):
            add(f"[h_{k},h_{l}]=0", _br(h(k), h(l)), k, l)
    for k in range(M + 1):
        for l in range(M + 1):
            add(f"[e_{k},f_{l}]=0", _br(e(k), f(l)), k, l)
    for l in range(M + 1):
        add(f"[h_0,e_{l}]=4pe_{l}", _br(h(0), e(l)) - gen(e(l)).scale(4 * P), l)
        add(f"[h_0,f_{l}]=-4pf_{l}", _br(h(0), f(l)) + gen(f(l)).scale(4 * P), l)
    for k in range(M):
        for l in range(M):
            add(f"ee-recursion(k={k},l={l})", _br(e(k + 1), e(l)) - _br(e(k), e(l + 1)), k, l)
            add(f"ff-recursion(k={k},l={l})", _br(f(k + 1), f(l)) - _br(f(k), f(l + 1)), k, l)
            add(f"he-recursion(k={k},l={l})", _br(h(k + 1), e(l)) - _br(h(k), e(l + 1)), k, l)
            add(f"hf-recursion(k={k},l={l})", _br(h(k + 1), f(l)) - _br(h(k), f(l + 1)), k, l)
    return rels


# --- Y(sl2) ----------------------------------------------------------------

def _t(*pairs) -> TensorPoly:
    """Tensor from (coefficient, left word, right word) triples."""
    out: dict = {}
    for c, a, b in pairs:
        key = (tuple(a), tuple(b))
        out[key] = out.get(key, ZERO) + c
    return TensorPoly(2, out)


def _tensor_anticomm(x: TensorPoly, y: TensorPoly, table: CommTable) -> TensorPoly:
    return tensor_multiply(x, y, table) + tensor_multiply(y, x, table)


def _ysl2_e_rule(pres: HopfPresentation, k: int) -> TensorPoly:
    # [h_1, e_k] = 2 e_{k+1} + hbar {h_0, e_k}
    D, T = pres.coproduct, pres.table
    return (tensor_commutator(D(h(1)), D(e(k - 1)), T)
            - _tensor_anticomm(D(h(0)), D(e(k - 1)), T).scale(HBAR)).scale(ONE / 2)


def _ysl2_f_rule(pres: HopfPresentation, k: int) -> TensorPoly:
    # [h_1, f_k] = -2 f_{k+1} - hbar {h_0, f_k}
    D, T = pres.coproduct, pres.table
    return (tensor_commutator(D(h(1)), D(f(k - 1)), T)
            + _tensor_anticomm(D(h(0)), D(f(k - 1)), T).scale(HBAR)).scale(-ONE / 2)


def _ysl2_h_rule(pres: HopfPresentation, k: int) -> TensorPoly:
    return tensor_commutator(pres.coproduct(e(k)), pres.coproduct(f(0)), pres.table)


def build_y_sl2(N: int = DEFAULT_BOUND) -> HopfPresentation:
    if N < 1:
        raise ValueError("N must be at least 1")
    table = _derive_table(
        "Y(sl2)", ("E", "F", "H"), N,
        ef=lambda m: gen(h(m)),
        h0_weight=2 * ONE,
        he_extra=lambda k, l: _an(h(k), e(l)).scale(HBAR),
        hf_extra=lambda k, l: _an(h(k), f(l)).scale(-HBAR),
        ee_extra=lambda k, l: _an(e(k), e(l)).scale(HBAR),
        ff_extra=lambda k, l: _an(f(k), f(l)).scale(-HBAR),
    )
    seeds = {
        e(1): _t((ONE, [e(1)], []), (ONE, [], [e(1)]), (HBAR, [h(0)], [e(0)])),
        f(1): _t((ONE, [f(1)], []), (ONE, [], [f(1)]), (HBAR, [f(0)], [h(0)])),
    }
    return HopfPresentation(
        "Y(sl2)", table, seeds,
        {"E": _ysl2_e_rule, "F": _ysl2_f_rule, "H": _ysl2_h_rule},
        yangian_relations, ("hbar",),
    )


# --- boundary Yangian ------------------------------------------------------

def boundary_current_coproduct(family: str, k: int) -> TensorPoly:
    """Mode k of the boundary current coproducts written with chi'(u).

    Delta(e(u))    = e(u)@1 + 1@e(u) + (p/2) chi'(u)@e(u)
    Delta(f(u))    = f(u)@1 + 1@f(u) + (p/2) f(u)@chi'(u)
    Delta(chi'(u)) = chi'(u)@1 + 1@chi'(u) + (p/2) chi'(u)@chi'(u)
    Delta(chi(u))  = chi(u)@1 + 1@chi(u) + (p/2)(chi'(u)@chi(u) + chi(u)@chi'(u))
                     - 4p f(u)(1 + (p/2)chi'(u)) @ (1 + (p/2)chi'(u)) e(u)
    Mode k is the coefficient of u^(-k-1).
    """
    n = k + 1
    one = Series.constant(n, NCPoly.const(1))
    x = lambda fam: current(fam, n)
    half_p = P / 2
    if family == "E":
        ser = x("E").tensor(one) + one.tensor(x("E")) + x("Hp").tensor(x("E")).scale(half_p)
    elif family == "F":
        ser = x("F").tensor(one) + one.tensor(x("F")) + x("F").tensor(x("Hp")).scale(half_p)
    elif family == "Hp":
        ser = x("Hp").tensor(one) + one.tensor(x("Hp")) + x("Hp").tensor(x("Hp")).scale(half_p)
    elif family == "H":
        dressing = one + x("Hp").scale(half_p)
        ser = (x("H").tensor(one) + one.tensor(x("H"))
               + (x("Hp").tensor(x("H")) + x("H").tensor(x("Hp"))).scale(half_p)
               + (x("F") * dressing).tensor(dressing * x("E")).scale(-4 * P))
    else:
        raise ValueError(family)
    return ser[n] or TensorPoly(2)


def _boundary_e_rule(pres: HopfPresentation, k: int) -> TensorPoly:
    # [h_1, e_l] = 4p e_{l+1} + p^2 {h'_0, e_l}
    D, T = pres.coproduct, pres.table
    return (tensor_commutator(D(h(1)), D(e(k - 1)), T)
            - _tensor_anticomm(D(hp(0)), D(e(k - 1)), T).scale(P ** 2)).scale(ONE / (4 * P))


def _boundary_f_rule(pres: HopfPresentation, k: int) -> TensorPoly:
    # [h_1, f_l] = -4p f_{l+1} - p^2 {h'_0, f_l}
    D, T = pres.coproduct, pres.table
    return (tensor_commutator(D(h(1)), D(f(k - 1)), T)
            + _tensor_anticomm(D(hp(0)), D(f(k - 1)), T).scale(P ** 2)).scale(-ONE / (4 * P))


def _boundary_hp_rule(pres: HopfPresentation, k: int) -> TensorPoly:
    # [e_k, f_0] = (p/2) h'_k
    return tensor_commutator(pres.coproduct(e(k)), pres.coproduct(f(0)), pres.table).scale(2 / P)


def _boundary_h_rule(pres: HopfPresentation, k: int) -> TensorPoly:
    # h_k (k >= 2) is not a bracket of lower modes; use the current formula
    return boundary_current_coproduct("H", k)


def boundary_table(N: int) -> CommTable:
    return _derive_table(
        "Y_p0(a)", ("E", "F", "H", "Hp"), N,
        ef=lambda m: gen(hp(m)).scale(P / 2),
        h0_weight=4 * P,
        he_extra=lambda k, l: _an(hp(k), e(l)).scale(P ** 2),
        hf_extra=lambda k, l: _an(hp(k), f(l)).scale(-P ** 2),
        ee_extra=_zero2,
        ff_extra=_zero2,
    )


def build_boundary(N: int = DEFAULT_BOUND) -> HopfPresentation:
    if N < 1:
        raise ValueError("N must be at least 1")
    table = boundary_table(N)
    half_p = P / 2
    seeds = {
        e(1): _t((ONE, [e(1)], []), (ONE, [], [e(1)]), (half_p, [hp(0)], [e(0)])),
        f(1): _t((ONE, [f(1)], []), (ONE, [], [f(1)]), (half_p, [f(0)], [hp(0)])),
        h(1): _t((ONE, [h(1)], []), (ONE, [], [h(1)]),
                 (half_p, [hp(0)], [h(0)]), (half_p, [h(0)], [hp(0)]),
                 (-4 * P, [f(0)], [e(0)])),
        hp(1): _t((ONE, [hp(1)], []), (ONE, [], [hp(1)]), (half_p, [hp(0)], [hp(0)])),
    }
    return HopfPresentation(
        "Y_p0(a)", table, seeds,
        {"E": _boundary_e_rule, "F": _boundary_f_rule, "Hp": _boundary_hp_rule, "H": _boundary_h_rule},
        boundary_relations, ("p",),
    )


# --- Hopf-ideal quotient ---------------------------------------------------

def kill_family(x, family: str):
    """Image of an NCPoly / TensorPoly after setting one generator family to zero."""
    if isinstance(x, NCPoly):
        return NCPoly({w: c for w, c in x.terms.items() if all(g.family != family for g in w)})
    return TensorPoly(x.degree, {
        legs: c for legs, c in x.terms.items()
        if all(g.family != family for w in legs for g in w)
    })


def closed_form_factor_table(N: int) -> CommTable:
    """[h_k, e_l] = 4p e_{k+l}, [h_k, f_l] = -4p f_{k+l}, all other brackets zero."""
    T = CommTable("Y(c) closed form", N, ("E", "F", "H"))
    for a in T.generators():
        for b in T.generators():
            if T.order.key(a) <= T.order.key(b) or a.mode + b.mode > N:
                continue
            val = NCPoly()
            m = a.mode + b.mode
            if a.family == "H" and b.family == "F":
                val = gen(f(m)).scale(-4 * P)
            elif a.family == "E" and b.family == "H":
                val = gen(e(m)).scale(-4 * P)
            T.set(a, b, val)
    return T.finalize()


def factor_current_coproduct(k: int) -> TensorPoly:
    """Delta(chi(u)) = chi(u)@1 + 1@chi(u) - 4p f(u)@e(u), mode k."""
    terms = [(ONE, [h(k)], []), (ONE, [], [h(k)])]
    terms += [(-4 * P, [f(a)], [e(k - 1 - a)]) for a in range(k)]
    return _t(*terms)


def quotient_by_hp(pres: HopfPresentation, check_ideal: bool = True) -> HopfPresentation:
    """Y(c) = boundary Yangian modulo the Hopf ideal generated by the h'_k."""
    from .hopf import verify_hopf_ideal

    if "Hp" not in pres.families:
        raise ValueError(f"{pres.name} has no h' family to factor out")
    if check_ideal:
        ok, why = verify_hopf_ideal(pres, {"Hp"}, detail=True)
        if not ok:
            raise ValueError(f"h' does not generate a Hopf ideal: {why}")
    N = pres.bound
    T = CommTable("Y(c)", N, ("E", "F", "H"))
    for (a, b), val in pres.table.entries.items():
        if "Hp" in (a.family, b.family):
            continue
        T.set(a, b, kill_family(val, "Hp"))
    T.finalize()
    quotient = HopfPresentation("Y(c)", T, {}, {}, factor_relations, pres.parameters)

    def projected(q: HopfPresentation, k: int, fam: str) -> TensorPoly:
        return kill_family(pres.coproduct(Gen(fam, k)), "Hp")

    quotient.rules = {fam: (lambda q, k, fam=fam: projected(q, k, fam)) for fam in ("E", "F", "H")}
    return quotient


def build_factor(N: int = DEFAULT_BOUND) -> HopfPresentation:
    return quotient_by_hp(build_boundary(N))


PRESENTATIONS = {
    "y_sl2": build_y_sl2,
    "boundary": build_boundary,
    "factor": build_factor,
}


def with_table(pres: HopfPresentation, table: CommTable, name: str | None = None) -> HopfPresentation:
    """Same presentation over a different (e.g. deliberately corrupted) table."""
    return HopfPresentation(name or pres.name, table, dict(pres.seeds), dict(pres.rules),
                            pres.relation_builder, pres.parameters)


def corrupt(pres: HopfPresentation, a: Gen, b: Gen, value: NCPoly | None = None) -> HopfPresentation:
    """Negative control: overwrite one table entry (default: set it to zero)."""
    table = pres.table.replace(a, b, value if value is not None else NCPoly(), name=f"{pres.name} (corrupted)")
    return with_table(pres, table, table.name)
