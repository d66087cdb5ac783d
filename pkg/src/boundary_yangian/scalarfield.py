"""Exact rational functions in a fixed set of formal parameters.

A ``Scalar`` is an element of the fraction field Z(hbar, p, t, u, v, w,
lambda1, lambda2, lambda3, lam) with graded-lex monomial order.  Elements are
kept reduced (numerator and denominator coprime, denominator with positive
leading coefficient), so ``==`` is an exact identity test.

The heavy lifting (gcd cancellation) is done by ``sympy.polys.fields``; this
module adds substitution, restricted limits, expansion at infinity and a
deterministic text form on top of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from sympy import Symbol, ZZ
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)
from sympy.polys.fields import FracElement, field
from sympy.polys.orderings import grlex

PARAMS: tuple[str, ...] = (
    "hbar", "p", "t", "u", "v", "w", "lambda1", "lambda2", "lambda3", "lam",
)

FIELD, *_GENS = field(",".join(PARAMS), ZZ, grlex)
RING = FIELD.ring
_INDEX = {name: i for i, name in enumerate(PARAMS)}
_GEN = dict(zip(PARAMS, _GENS))

Scalar = FracElement
ScalarLike = Union[FracElement, int, Fraction]

HBAR, P, T, U, V, W, L1, L2, L3, LAM = (_GEN[n] for n in PARAMS)
ZERO = FIELD.zero
ONE = FIELD.one


class ScalarError(ArithmeticError):
    """An algebraic step that has no value (division by zero, pole hit)."""


class CapacityError(ValueError):
    """Expansion request outside what the representation supports."""


def param(name: str) -> Scalar:
    try:
        return _GEN[name]
    except KeyError:
        raise KeyError(f"unknown parameter {name!r}; registry is {PARAMS}") from None


def scalar(x: ScalarLike | str) -> Scalar:
    """Coerce ints, Fractions, Scalars and infix strings to a Scalar."""
    if isinstance(x, FracElement):
        return x
    if isinstance(x, Fraction):
        return FIELD(x.numerator) / x.denominator
    if isinstance(x, str):
        return parse(x)
    return FIELD(x)


def _index(var: str | Scalar) -> int:
    if isinstance(var, str):
        return _INDEX[var]
    for name, g in _GEN.items():
        if g == var:
            return _INDEX[name]
    raise KeyError(f"{var} is not a registered parameter")


def arith(a: ScalarLike, b: ScalarLike, kind: str) -> Scalar:
    a, b = scalar(a), scalar(b)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        if not b:
            raise ScalarError("division by the zero scalar")
        return a / b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def depends_on(s: Scalar, var: str) -> bool:
    i = _index(var)
    return any(m[i] for m in s.numer.monoms()) or any(m[i] for m in s.denom.monoms())


# --- polynomial slicing ----------------------------------------------------

def _split(poly, i: int) -> dict[int, object]:
    """Coefficients of a ring polynomial as a polynomial in generator i."""
    parts: dict[int, dict] = {}
    for monom, coeff in poly.terms():
        e = monom[i]
        rest = monom[:i] + (0,) + monom[i + 1:]
        parts.setdefault(e, {})[rest] = coeff
    return {e: RING.from_dict(d) for e, d in parts.items()}


def _low_degree(poly, i: int) -> int:
    return min(m[i] for m in poly.monoms())


def _high_degree(poly, i: int) -> int:
    return max(m[i] for m in poly.monoms())


def poly_coefficients(s: Scalar, var: str) -> dict[int, Scalar]:
    """{k: c_k} with s = sum c_k var^k; s must be polynomial in var."""
    i = _index(var)
    if any(m[i] for m in s.denom.monoms()):
        raise ValueError(f"{to_text(s)} is not polynomial in {var}")
    if not s:
        return {}
    return {e: FIELD.new(c, s.denom) for e, c in sorted(_split(s.numer, i).items())}


def order_in(s: Scalar, var: str) -> int:
    """Valuation of s at var = 0 (positive: zero, negative: pole)."""
    if not s:
        raise ValueError("the zero scalar has no finite order")
    i = _index(var)
    return _low_degree(s.numer, i) - _low_degree(s.denom, i)


# --- substitution ----------------------------------------------------------

def _compose(poly, i: int, num, den):
    """poly(var_i = num/den) * den^deg, as a ring polynomial, plus deg."""
    parts = _split(poly, i)
    deg = max(parts)
    out = RING.zero
    for e, c in parts.items():
        out += c * _pow(num, e) * _pow(den, deg - e)
    return out, deg


def _pow(poly, e: int):
    return RING.one if e == 0 else poly ** e


def substitute(s: Scalar, var: str, value: ScalarLike) -> Scalar:
    """Replace the parameter ``var`` by ``value`` inside ``s``."""
    value = scalar(value)
    if not s:
        return ZERO
    i = _index(var)
    num, den = value.numer, value.denom
    top, dn = _compose(s.numer, i, num, den)
    bottom, dd = _compose(s.denom, i, num, den)
    if not bottom:
        raise ScalarError(f"substituting {var} = {to_text(value)} into {to_text(s)} hits a pole")
    if dd >= dn:
        return FIELD.new(top * den ** (dd - dn), bottom)
    return FIELD.new(top, bottom * den ** (dn - dd))


def substitute_many(s: Scalar, values: dict[str, ScalarLike]) -> Scalar:
    """Simultaneous substitution (safe for swaps such as u <-> v)."""
    vals = {k: scalar(x) for k, x in values.items()}
    fresh = [
        n for n in PARAMS
        if n not in vals and not depends_on(s, n) and not any(depends_on(x, n) for x in vals.values())
    ]
    staged = {}
    for var in values:
        if not depends_on(s, var):
            continue
        tmp = fresh.pop()
        s = substitute(s, var, _GEN[tmp])
        staged[tmp] = vals[var]
    for tmp, val in staged.items():
        s = substitute(s, tmp, val)
    return s


# --- restricted limit ------------------------------------------------------

@dataclass(frozen=True)
class Divergent:
    """Pole of the given order at var = 0 with leading Laurent coefficient."""

    order: int
    leading: Scalar

    def __str__(self) -> str:
        return f"Divergent(order={self.order}, leading={to_text(self.leading)})"


def boundary_limit(s: Scalar, var: str) -> Scalar | Divergent:
    if not s:
        return ZERO
    i = _index(var)
    a = _low_degree(s.numer, i)
    b = _low_degree(s.denom, i)
    lead_num = _split(s.numer, i)[a]
    lead_den = _split(s.denom, i)[b]
    if a < b:
        return Divergent(b - a, FIELD.new(lead_num, lead_den))
    if a > b:
        return ZERO
    return FIELD.new(lead_num, lead_den)


def leading_term(s: Scalar, var: str) -> tuple[int, Scalar]:
    """(order, coefficient) of the lowest Laurent term of s in var."""
    i = _index(var)
    a = _low_degree(s.numer, i)
    b = _low_degree(s.denom, i)
    return a - b, FIELD.new(_split(s.numer, i)[a], _split(s.denom, i)[b])


# --- expansion at infinity -------------------------------------------------

@dataclass(frozen=True)
class SeriesAtInfinity:
    """Truncated expansion sum_{k=0..order} coefficients[k] * var^(-k)."""

    variable: str
    order: int
    coefficients: tuple[Scalar, ...]

    def __getitem__(self, k: int) -> Scalar:
        return self.coefficients[k] if 0 <= k <= self.order else ZERO

    def _check(self, other: "SeriesAtInfinity") -> int:
        if other.variable != self.variable:
            raise ValueError("series in different variables")
        return min(self.order, other.order)

    def __add__(self, other: "SeriesAtInfinity") -> "SeriesAtInfinity":
        n = self._check(other)
        return SeriesAtInfinity(self.variable, n, tuple(self[k] + other[k] for k in range(n + 1)))

    def __mul__(self, other: "SeriesAtInfinity") -> "SeriesAtInfinity":
        n = self._check(other)
        coeffs = tuple(
            sum((self[j] * other[k - j] for j in range(k + 1)), ZERO) for k in range(n + 1)
        )
        return SeriesAtInfinity(self.variable, n, coeffs)

    def __str__(self) -> str:
        parts = [f"({to_text(c)})*{self.variable}^-{k}" for k, c in enumerate(self.coefficients) if c]
        return " + ".join(parts) or "0"


def expand_at_infinity(s: Scalar, var: str, order: int) -> SeriesAtInfinity:
    """Laurent expansion of s in 1/var, keeping var^0 .. var^-order.

    Only functions that stay bounded as var -> infinity are accepted; the
    other parameters are treated as constants (so 1/(u - v) is expanded in
    the region |u| > |v|).
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    i = _index(var)
    if not s:
        return SeriesAtInfinity(var, order, (ZERO,) * (order + 1))
    num = _split(s.numer, i)
    den = _split(s.denom, i)
    dn, dd = max(num), max(den)
    if dn > dd:
        raise CapacityError(f"{to_text(s)} grows like {var}^{dn - dd} at infinity")
    # With x = 1/var: s = x^(dd-dn) * N(x)/D(x), N and D the reversed polynomials.
    rev_num = [FIELD.new(num.get(dn - j, RING.zero), RING.one) for j in range(dn + 1)]
    rev_den = [FIELD.new(den.get(dd - j, RING.zero), RING.one) for j in range(dd + 1)]
    shift = dd - dn
    q: list[Scalar] = []
    lead = rev_den[0]
    for k in range(order + 1 - shift):
        acc = rev_num[k] if k < len(rev_num) else ZERO
        for j in range(1, min(k, dd) + 1):
            acc -= rev_den[j] * q[k - j]
        q.append(acc / lead)
    coeffs = [ZERO] * shift + q
    return SeriesAtInfinity(var, order, tuple(coeffs[: order + 1]))


def binomial_shift_series(power: int, var: str, shift: ScalarLike, order: int) -> SeriesAtInfinity:
    """(var + shift)^(-power) via the binomial series sum_j C(-power, j) shift^j var^(-power-j)."""
    shift = scalar(shift)
    coeffs = [ZERO] * (order + 1)
    binom = 1
    for j in range(order + 1 - power):
        coeffs[power + j] = binom * shift ** j
        binom = binom * (-power - j) // (j + 1)
    return SeriesAtInfinity(var, order, tuple(coeffs))


# --- text form -------------------------------------------------------------

def _monomial_text(monom: tuple[int, ...]) -> str:
    out = []
    for name, e in zip(PARAMS, monom):
        if e == 1:
            out.append(name)
        elif e > 1:
            out.append(f"{name}^{e}")
    return "*".join(out)


def _poly_text(poly) -> str:
    if not poly:
        return "0"
    pieces = []
    for n, (monom, coeff) in enumerate(poly.terms()):
        sign = "-" if coeff < 0 else "+"
        mag = abs(int(coeff))
        body = _monomial_text(monom)
        if not body:
            term = str(mag)
        elif mag == 1:
            term = body
        else:
            term = f"{mag}*{body}"
        if n == 0:
            pieces.append(("-" if sign == "-" else "") + term)
        else:
            pieces.append(f" {sign} {term}")
    return "".join(pieces)


def to_text(s: ScalarLike) -> str:
    """Deterministic infix form; ``parse(to_text(s)) == s``."""
    s = scalar(s)
    num = _poly_text(s.numer)
    if s.denom == RING.one:
        return num
    if len(s.numer.terms()) > 1:
        num = f"({num})"
    den_terms = s.denom.terms()
    if len(den_terms) == 1 and den_terms[0][0] == (0,) * len(PARAMS):
        den = str(int(den_terms[0][1]))
    elif len(den_terms) == 1 and den_terms[0][1] == 1 and sum(den_terms[0][0]) == 1:
        den = _monomial_text(den_terms[0][0])
    else:
        den = f"({_poly_text(s.denom)})"
    return f"{num}/{den}"


_LOCALS = {name: Symbol(name) for name in PARAMS}
_TRANSFORMS = standard_transformations + (convert_xor,)


def parse(text: str) -> Scalar:
    expr = parse_expr(text, local_dict=dict(_LOCALS), transformations=_TRANSFORMS, evaluate=True)
    unknown = {str(sym) for sym in expr.free_symbols} - set(PARAMS)
    if unknown:
        raise ValueError(f"unregistered symbols in {text!r}: {sorted(unknown)}")
    return FIELD.from_expr(expr)
