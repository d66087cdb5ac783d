"""Parametrize the Y(sl2) relations by the dual parameters p, t and take t -> 0.

Relations are kept in a formal form (linear combinations of brackets,
anticommutators and single generators) so the substitution

    e_k -> e_k / p,   f_k -> f_k / t,   h_k -> (h_k / p + h'_k / t) / 2,   hbar -> p t

can be applied bilinearly without any commutator table.  Brackets among the
Cartan families that involve h' vanish identically (h' is a commuting copy
of h in the double).  Each transformed relation is rescaled so that its
primary bracket keeps its original coefficient, and every term is then sorted by its
order in t: negative orders must be pure h'-brackets and become constraints,
order zero is the boundary relation, positive orders vanish in the limit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..checks import Check
from ..ncalg import Gen, NCPoly, anticomm, comm, e, f, gen, h, hp
from ..scalarfield import HBAR, ONE, P, T, Scalar, boundary_limit, order_in, substitute, to_text
from .algebras import boundary_relations, build_boundary, yangian_relations

_RANK = {"H": 0, "Hp": 1, "E": 2, "F": 3}
_CARTAN = {"H", "Hp"}


def _key(g: Gen) -> tuple[int, int]:
    return (_RANK[g.family], -g.mode)


def _br(a: Gen, b: Gen) -> tuple[Scalar, tuple] | None:
    if a == b:
        return None
    if _key(a) > _key(b):
        return -ONE, ("br", b, a)
    return ONE, ("br", a, b)


def _an(a: Gen, b: Gen) -> tuple[Scalar, tuple]:
    if _key(a) > _key(b):
        a, b = b, a
    return ONE, ("an", a, b)


def _add(acc: dict, term: tuple, c: Scalar) -> None:
    v = acc.get(term, 0) + c
    if v:
        acc[term] = v
    else:
        acc.pop(term, None)


def term_text(term: tuple) -> str:
    kind = term[0]
    if kind == "br":
        return f"[{term[1]},{term[2]}]"
    if kind == "an":
        return f"{{{term[1]},{term[2]}}}"
    return str(term[1])


def combo_text(combo: dict) -> str:
    if not combo:
        return "0"
    out = ""
    for term in sorted(combo, key=term_text):
        c = combo[term]
        body = term_text(term)
        if c == 1 or c == -1:
            piece = body
        else:
            piece = f"({to_text(c)})*{body}"
        sign = "-" if c == -1 else "+"
        out += (f" {sign} " if out else ("-" if sign == "-" else "")) + piece
    return out


def to_free(combo: dict) -> NCPoly:
    out = NCPoly()
    for term, c in combo.items():
        if term[0] == "br":
            x = comm(gen(term[1]), gen(term[2]))
        elif term[0] == "an":
            x = anticomm(gen(term[1]), gen(term[2]))
        else:
            x = gen(term[1])
        out = out + x.scale(c)
    return out


@dataclass
class FormalRelation:
    kind: str
    label: str
    combo: dict
    primary: tuple  # leading bracket; its coefficient is preserved by the rescaling


def yangian_formal_relations(M: int) -> list[FormalRelation]:
    """The Y(sl2) relations with every mode <= M, in formal form (expr = 0)."""
    rels: list[FormalRelation] = []

    def rel(kind, label, *pieces):
        acc: dict = {}
        prim = None
        for c, op, *args in pieces:
            if op == "br":
                hit = _br(*args)
                if hit:
                    _add(acc, hit[1], c * hit[0])
                    prim = prim or hit[1]
            elif op == "an":
                s, t_ = _an(*args)
                _add(acc, t_, c * s)
            else:
                _add(acc, ("g", args[0]), c)
        rels.append(FormalRelation(kind, label, acc, prim))

    for k in range(M + 1):
        for l in range(k + 1, M + 1):
            rel("hh", f"[h_{k},h_{l}]=0", (ONE, "br", h(k), h(l)))
    for k in range(M + 1):
        for l in range(M + 1 - k):
            rel("ef", f"[e_{k},f_{l}]=h_{k+l}", (ONE, "br", e(k), f(l)), (-ONE, "g", h(k + l)))
    for l in range(M + 1):
        rel("h0e", f"[h_0,e_{l}]=2e_{l}", (ONE, "br", h(0), e(l)), (-2 * ONE, "g", e(l)))
        rel("h0f", f"[h_0,f_{l}]=-2f_{l}", (ONE, "br", h(0), f(l)), (2 * ONE, "g", f(l)))
    for k in range(M):
        for l in range(M):
            for x, y, s, lab in ((h, e, -1, "he"), (h, f, 1, "hf"), (e, e, -1, "ee"), (f, f, 1, "ff")):
                rel(f"{lab}-recursion", f"{lab}-recursion(k={k},l={l})",
                    (ONE, "br", x(k + 1), y(l)), (-ONE, "br", x(k), y(l + 1)),
                    (s * HBAR, "an", x(k), y(l)))
    return rels


_SUBS = {
    "E": lambda k: [(e(k), ONE / P)],
    "F": lambda k: [(f(k), ONE / T)],
    "H": lambda k: [(h(k), ONE / (2 * P)), (hp(k), ONE / (2 * T))],
}


def transform(combo: dict) -> tuple[dict, list[str]]:
    """Apply the substitution bilinearly; returns the new combo and imposed zeros."""
    out: dict = {}
    imposed: list[str] = []
    for term, c in combo.items():
        c = substitute(c, "hbar", P * T)
        kind = term[0]
        if kind == "g":
            for g, cg in _SUBS[term[1].family](term[1].mode):
                _add(out, ("g", g), c * cg)
            continue
        a, b = term[1], term[2]
        for ga, ca in _SUBS[a.family](a.mode):
            for gb, cb in _SUBS[b.family](b.mode):
                if kind == "br":
                    if {ga.family, gb.family} <= _CARTAN and "Hp" in (ga.family, gb.family):
                        imposed.append(f"[{ga},{gb}]")
                        continue
                    hit = _br(ga, gb)
                    if hit:
                        _add(out, hit[1], c * ca * cb * hit[0])
                else:
                    s, t_ = _an(ga, gb)
                    _add(out, t_, c * ca * cb * s)
    return out, imposed


@dataclass
class LimitEntry:
    label: str
    normalizer: Scalar
    finite: dict
    vanishing: dict
    divergent: dict[int, dict]
    imposed: list[str]

    @property
    def classification(self) -> str:
        if self.divergent:
            return "divergent"
        return "finite" if self.finite else "vanishing"

    def to_record(self) -> dict:
        return {
            "relation": self.label,
            "normalizer": to_text(self.normalizer),
            "finite": combo_text(self.finite),
            "vanishing": combo_text(self.vanishing),
            "divergent": {str(k): combo_text(v) for k, v in sorted(self.divergent.items())},
        }


@dataclass
class LimitReport:
    entries: list[LimitEntry]
    constraints: list[str]
    normalizers: dict[str, str]
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def limit_relation(rel: FormalRelation) -> LimitEntry:
    combo, imposed = transform(rel.combo)
    # rescale so the primary bracket keeps its coefficient from the source relation
    normalizer = rel.combo[rel.primary] / combo[rel.primary]
    finite: dict = {}
    vanishing: dict = {}
    divergent: dict[int, dict] = {}
    for term, c in combo.items():
        c = c * normalizer
        k = order_in(c, "t")
        if k < 0:
            divergent.setdefault(k, {})[term] = c
        elif k == 0:
            finite[term] = boundary_limit(c, "t")
            rest = c - finite[term]
            if rest:
                vanishing[term] = rest
        else:
            vanishing[term] = c
    return LimitEntry(rel.label, normalizer, finite, vanishing, divergent, imposed)


def _is_hp_bracket(term: tuple) -> bool:
    return term[0] == "br" and "Hp" in (term[1].family, term[2].family)


def expected_constraints(M: int) -> set[str]:
    """[h'_0, e_l] = 0, [h'_0, f_l] = 0 and the two h' recursions."""
    out = set()
    for l in range(M + 1):
        out.add(f"[hp_0,e_{l}] = 0")
        out.add(f"[hp_0,f_{l}] = 0")
    for k in range(M):
        for l in range(M):
            for x in (e, f):
                combo: dict = {}
                _add(combo, _br(hp(k + 1), x(l))[1], ONE)
                _add(combo, _br(hp(k), x(l + 1))[1], -ONE)
                out.add(combo_text(_monic(combo)) + " = 0")
    return out


def parametrize_and_limit(N: int = 3, boundary=None) -> LimitReport:
    """Restricted limit of all Y(sl2) relations with modes <= N."""
    if N < 2:
        raise ValueError("N must be at least 2")
    boundary = boundary or build_boundary(max(N + 3, 6))
    targets = {frozenset(r.expr.terms.items()): r.label for r in boundary_relations(N)}
    entries: list[LimitEntry] = []
    checks: list[Check] = []
    constraints: list[str] = []
    normalizers: dict[str, str] = {}
    free_rels = {r.label: r.expr for r in yangian_relations(N)}
    formal = yangian_formal_relations(N)
    if sorted(free_rels) != sorted(r.label for r in formal):
        raise AssertionError("formal and free relation lists disagree")
    for rel in formal:
        if to_free(rel.combo) != free_rels[rel.label]:
            checks.append(Check(f"limit-source[{rel.label}]", False, combo_text(rel.combo)))
        entry = limit_relation(rel)
        entries.append(entry)
        seen = normalizers.setdefault(rel.kind, to_text(entry.normalizer))
        if seen != to_text(entry.normalizer):
            checks.append(Check(f"limit-normalizer[{rel.label}]", False,
                                f"{to_text(entry.normalizer)} differs from {seen}"))

        free = to_free(entry.finite)
        match = targets.get(frozenset(free.terms.items()))
        in_table = boundary.normal(free)
        ok = match is not None and not in_table
        checks.append(Check(
            f"limit-finite[{rel.label}]", ok,
            None if ok else f"finite part {combo_text(entry.finite)} (table residual {in_table})",
            detail=f"-> {match}" if match else None,
        ))
        bad = [t_ for part in entry.divergent.values() for t_ in part if not _is_hp_bracket(t_)]
        checks.append(Check(f"limit-divergence[{rel.label}]", not bad,
                            None if not bad else ", ".join(term_text(t_) for t_ in bad)))
        for order in sorted(entry.divergent):
            part = entry.divergent[order]
            lead = _monic({t_: boundary_limit(c * T ** (-order), "t") for t_, c in part.items()})
            text = combo_text(lead) + " = 0"
            if text not in constraints:
                constraints.append(text)
            res = boundary.normal(to_free(lead))
            checks.append(Check(f"limit-constraint[{text}]", not res, None if not res else str(res)))

    want = expected_constraints(N)
    got = set(constraints)
    ok = got == want
    checks.append(Check(
        "limit-constraints-are-h'-centrality", ok,
        None if ok else f"missing {sorted(want - got)}; unexpected {sorted(got - want)}",
    ))
    labels = [e_.label for e_ in entries]
    ok = len(labels) == len(set(labels)) == len(free_rels)
    checks.append(Check("limit-coverage", ok, None if ok else "relations missing or repeated"))
    return LimitReport(entries, constraints, normalizers, checks)


def _monic(combo: dict) -> dict:
    """Scale a constraint so its first term (in text order) has coefficient one."""
    if not combo:
        return combo
    lead = combo[min(combo, key=term_text)]
    return {t_: c / lead for t_, c in combo.items()}
