"""Hopf-axiom verification for a presentation.

All checks are exact: a residual is normal-ordered and compared with zero.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from ..checks import Check, residual_check
from ..ncalg import Gen, NCPoly, TensorPoly, commutator, gen
from ..scalarfield import CapacityError, order_in
from .algebras import HopfPresentation, kill_family


def jacobi_residual(pres: HopfPresentation, a: Gen, b: Gen, c: Gen) -> NCPoly:
    T = pres.table
    return (commutator(gen(a), T.bracket(b, c), T)
            + commutator(gen(b), T.bracket(c, a), T)
            + commutator(gen(c), T.bracket(a, b), T))


def jacobi_checks(pres: HopfPresentation, max_sum: int) -> list[Check]:
    gens = [g for g in pres.generators(max_sum)]
    out = []
    for a, b, c in combinations(gens, 3):
        if a.mode + b.mode + c.mode <= max_sum:
            out.append(residual_check(f"jacobi[{a},{b},{c}]", jacobi_residual(pres, a, b, c)))
    return out


def relation_checks(pres: HopfPresentation, max_mode: int) -> list[Check]:
    """Each defining relation holds in the table and is preserved by Delta."""
    out = []
    for rel in pres.relations(max_mode):
        out.append(residual_check(f"relation[{rel.label}]", pres.normal(rel.expr)))
        out.append(residual_check(f"delta-homomorphism[{rel.label}]", pres.delta(rel.expr)))
    return out


def delta_left(pres: HopfPresentation, x: TensorPoly) -> TensorPoly:
    return x.apply_leg(0, pres.delta_word)


def delta_right(pres: HopfPresentation, x: TensorPoly) -> TensorPoly:
    return x.apply_leg(1, pres.delta_word)


def counit_leg(x: TensorPoly, leg: int) -> NCPoly:
    """Apply the counit to one leg (generators have counit zero)."""
    keep = 1 - leg
    out: dict = {}
    for legs, c in x.terms.items():
        if not legs[leg]:
            out[legs[keep]] = out.get(legs[keep], 0) + c
    return NCPoly(out)


def coalgebra_checks(pres: HopfPresentation, max_mode: int) -> list[Check]:
    out = []
    for g in pres.generators(max_mode):
        d = pres.coproduct(g)
        out.append(residual_check(f"coassociativity[{g}]", delta_left(pres, d) - delta_right(pres, d)))
        out.append(residual_check(f"counit-left[{g}]", counit_leg(d, 0) - gen(g)))
        out.append(residual_check(f"counit-right[{g}]", counit_leg(d, 1) - gen(g)))
        if pres.counit(g):
            out.append(Check(f"counit-value[{g}]", False, str(pres.counit(g))))
    return out


def _guard(name: str, fn) -> list[Check]:
    try:
        return fn()
    except CapacityError as exc:
        return [Check(name, False, None, str(exc), errored=True)]


def verify_hopf(pres: HopfPresentation, max_mode: int, *, jacobi_max: int | None = None,
                relation_max: int | None = None, coalg_max: int | None = None) -> list[Check]:
    """Jacobi, relation/Delta-homomorphism, coassociativity and counit checks.

    ``max_mode`` is the default for all three ranges: Jacobi triples are
    bounded by their mode sum, relations and generators by their largest mode.
    """
    jm = max_mode if jacobi_max is None else jacobi_max
    rm = max_mode if relation_max is None else relation_max
    cm = max_mode if coalg_max is None else coalg_max
    return (_guard("jacobi", lambda: jacobi_checks(pres, jm))
            + _guard("relations", lambda: relation_checks(pres, rm))
            + _guard("coalgebra", lambda: coalgebra_checks(pres, cm)))


# --- Hopf ideals -----------------------------------------------------------

def _ideal_gens(pres: HopfPresentation, ideal: Iterable[Gen | str]) -> set[Gen]:
    out: set[Gen] = set()
    for item in ideal:
        if isinstance(item, str):
            out.update(g for g in pres.generators() if g.family == item)
        else:
            out.add(item)
    return out


def _in_ideal(x: NCPoly, ideal: set[Gen]) -> bool:
    return all(any(g in ideal for g in w) for w in x.terms)


def _kill(x: TensorPoly, ideal: set[Gen]) -> TensorPoly:
    return TensorPoly(x.degree, {
        legs: c for legs, c in x.terms.items() if not any(g in ideal for w in legs for g in w)
    })


def verify_hopf_ideal(pres: HopfPresentation, ideal: Iterable[Gen | str], detail: bool = False):
    """Whether the generators in ``ideal`` span a Hopf ideal (up to the mode bound).

    The ideal is the span of normal words containing an ideal letter; it is
    two-sided once every bracket [x, j] stays inside it.  Delta(j) must vanish
    after setting the ideal generators to zero on both legs, and eps(j) = 0.
    """
    gens = _ideal_gens(pres, ideal)
    reason = None
    for j in sorted(gens, key=pres.table.order.key):
        for x in pres.generators():
            if x.mode + j.mode > pres.bound:
                continue
            val = pres.bracket(x, j)
            if not _in_ideal(val, gens):
                reason = f"[{x}, {j}] = {val} leaves the ideal"
                break
        if reason:
            break
        rest = _kill(pres.coproduct(j), gens)
        if rest:
            reason = f"Delta({j}) leaves J@Y + Y@J: {rest}"
            break
        if pres.counit(j):
            reason = f"eps({j}) != 0"
            break
    ok = reason is None
    return (ok, reason) if detail else ok


def p_divisibility_checks(pres: HopfPresentation, max_mode: int) -> list[Check]:
    """(Delta - Delta^op)(g) has every coefficient divisible by p."""
    out = []
    for g in pres.generators(max_mode):
        d = pres.coproduct(g)
        skew = d - d.flip()
        bad = [c for c in skew.terms.values() if order_in(c, "p") < 1]
        out.append(Check(f"p-divisible[{g}]", not bad, None if not bad else str(skew)))
    return out


__all__ = [
    "verify_hopf", "verify_hopf_ideal", "jacobi_residual", "jacobi_checks", "relation_checks",
    "coalgebra_checks", "p_divisibility_checks", "delta_left", "delta_right", "counit_leg",
    "kill_family",
]
