"""Truncated series in inverse spectral variables with operator coefficients.

``Series`` holds sum_n c_n u^(-n) for n = 0..order with NCPoly (or TensorPoly)
coefficients; products keep the word order of their factors.  ``DoubleSeries``
holds terms u^a v^b (b may be positive, from the kernel 1/(u - v) expanded
for |u| > |v|) and truncates on a >= -umax and a + b >= -dmax.  Both cut-offs
are sound because every factor used here only has terms with a <= 0 and
a + b <= 0.
"""

from __future__ import annotations

from typing import Callable, Mapping

from ..ncalg import Gen, NCPoly, TensorPoly
from ..scalarfield import (
    HBAR, ONE, U, V, Scalar, ScalarLike, expand_at_infinity, poly_coefficients, scalar,
)


class UnboundCurrentError(KeyError):
    pass


def _add(acc: dict, key, val) -> None:
    cur = acc.get(key)
    val = val if cur is None else cur + val
    if val:
        acc[key] = val
    else:
        acc.pop(key, None)


class Series:
    """sum_{n=0..order} coeffs[n] * u^(-n)."""

    def __init__(self, order: int, coeffs: Mapping[int, object] | None = None):
        self.order = order
        self.coeffs = {n: c for n, c in (coeffs or {}).items() if n <= order and c}

    def __getitem__(self, n: int):
        return self.coeffs.get(n)

    def __add__(self, other: "Series") -> "Series":
        acc = dict(self.coeffs)
        for n, c in other.coeffs.items():
            _add(acc, n, c)
        return Series(min(self.order, other.order), acc)

    def scale(self, c: ScalarLike) -> "Series":
        c = scalar(c)
        return Series(self.order, {n: v.scale(c) for n, v in self.coeffs.items()})

    def __mul__(self, other: "Series") -> "Series":
        order = min(self.order, other.order)
        acc: dict = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                if a + b <= order:
                    _add(acc, a + b, x * y)
        return Series(order, acc)

    def tensor(self, other: "Series") -> "Series":
        """Coefficientwise tensor product in the same variable."""
        order = min(self.order, other.order)
        acc: dict = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                if a + b <= order:
                    _add(acc, a + b, TensorPoly.pure(x, y))
        return Series(order, acc)

    def power(self, k: int) -> "Series":
        out = Series.constant(self.order, NCPoly.const(1))
        for _ in range(k):
            out = out * self
        return out

    @classmethod
    def constant(cls, order: int, c) -> "Series":
        return cls(order, {0: c})


def current(family: str, order: int, shift: ScalarLike = 0, prefactor: ScalarLike = 1) -> Series:
    """prefactor * sum_k x_k (u + shift)^(-k-1), truncated at u^(-order)."""
    shift = scalar(shift)
    pre = scalar(prefactor)
    acc: dict = {}
    for k in range(order):
        g = NCPoly.gen(Gen(family, k))
        if not shift:
            _add(acc, k + 1, g.scale(pre))
            continue
        ser = expand_at_infinity(ONE / (U + shift) ** (k + 1), "u", order)
        for n, c in enumerate(ser.coefficients):
            if c:
                _add(acc, n, g.scale(pre * c))
    return Series(order, acc)


# --- double series ---------------------------------------------------------

class DoubleSeries:
    def __init__(self, umax: int, dmax: int, terms: Mapping[tuple[int, int], NCPoly] | None = None):
        self.umax = umax
        self.dmax = dmax
        self.terms = {
            k: c for k, c in (terms or {}).items()
            if c and k[0] >= -umax and k[0] + k[1] >= -dmax
        }

    def coefficient(self, a: int, b: int) -> NCPoly:
        return self.terms.get((a, b), NCPoly())

    def __add__(self, other: "DoubleSeries") -> "DoubleSeries":
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _add(acc, k, c)
        return DoubleSeries(self.umax, self.dmax, acc)

    def __neg__(self) -> "DoubleSeries":
        return DoubleSeries(self.umax, self.dmax, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "DoubleSeries") -> "DoubleSeries":
        return self + (-other)

    def scale(self, c: ScalarLike) -> "DoubleSeries":
        return DoubleSeries(self.umax, self.dmax, {k: v.scale(c) for k, v in self.terms.items()})

    def __mul__(self, other: "DoubleSeries") -> "DoubleSeries":
        acc: dict = {}
        for (a1, b1), x in self.terms.items():
            for (a2, b2), y in other.terms.items():
                a, b = a1 + a2, b1 + b2
                if a >= -self.umax and a + b >= -self.dmax:
                    _add(acc, (a, b), x * y)
        return DoubleSeries(self.umax, self.dmax, acc)


# --- current-algebra expressions -------------------------------------------

class Expr:
    """Tiny expression language for generating-function identities."""

    def __add__(self, other: "Expr") -> "Expr":
        return Add(self, other)

    def __sub__(self, other: "Expr") -> "Expr":
        return Add(self, Scale(-1, other))

    def __neg__(self) -> "Expr":
        return Scale(-1, self)

    def __mul__(self, other):
        if isinstance(other, Expr):
            return Mul(self, other)
        return Scale(other, self)

    def __rmul__(self, other):
        return Scale(other, self)

    def currents(self) -> set[str]:
        return set()


class Cur(Expr):
    def __init__(self, name: str, var: str):
        self.name, self.var = name, var

    def currents(self) -> set[str]:
        return {self.name}

    def __str__(self) -> str:
        return f"{self.name}({self.var})"


class Const(Expr):
    def __init__(self, c: ScalarLike):
        self.c = scalar(c)

    def __str__(self) -> str:
        return str(self.c)


class Kernel(Expr):
    """1/(u - v), expanded in the region |u| > |v|."""

    def __str__(self) -> str:
        return "1/(u-v)"


class Add(Expr):
    def __init__(self, a: Expr, b: Expr):
        self.a, self.b = a, b

    def currents(self) -> set[str]:
        return self.a.currents() | self.b.currents()

    def __str__(self) -> str:
        return f"({self.a} + {self.b})"


class Mul(Expr):
    def __init__(self, a: Expr, b: Expr):
        self.a, self.b = a, b

    def currents(self) -> set[str]:
        return self.a.currents() | self.b.currents()

    def __str__(self) -> str:
        return f"{self.a}*{self.b}"


class Scale(Expr):
    def __init__(self, c: ScalarLike, a: Expr):
        self.c, self.a = scalar(c), a

    def currents(self) -> set[str]:
        return self.a.currents()

    def __str__(self) -> str:
        return f"({self.c})*{self.a}"


def bracket(a: Expr, b: Expr) -> Expr:
    return a * b - b * a


def anti(a: Expr, b: Expr) -> Expr:
    return a * b + b * a


def evaluate(expr: Expr, binding: Mapping[str, str], umax: int, dmax: int) -> DoubleSeries:
    """Expand an expression into a truncated double series in u^-1, v^-1."""
    rec: Callable[[Expr], DoubleSeries] = lambda x: evaluate(x, binding, umax, dmax)
    if isinstance(expr, Cur):
        if expr.name not in binding:
            raise UnboundCurrentError(f"current {expr.name!r} has no binding")
        fam = binding[expr.name]
        terms = {}
        for k in range(max(umax, dmax)):
            key = (-k - 1, 0) if expr.var == "u" else (0, -k - 1)
            terms[key] = NCPoly.gen(Gen(fam, k))
        return DoubleSeries(umax, dmax, terms)
    if isinstance(expr, Const):
        return DoubleSeries(umax, dmax, {(0, 0): NCPoly.const(expr.c)})
    if isinstance(expr, Kernel):
        ser = expand_at_infinity(ONE / (U - V), "u", umax)
        terms = {}
        for n, c in enumerate(ser.coefficients):
            for b, cb in poly_coefficients(c, "v").items():
                terms[(-n, b)] = NCPoly.const(cb)
        return DoubleSeries(umax, dmax, terms)
    if isinstance(expr, Add):
        return rec(expr.a) + rec(expr.b)
    if isinstance(expr, Mul):
        return rec(expr.a) * rec(expr.b)
    if isinstance(expr, Scale):
        return rec(expr.a).scale(expr.c)
    raise TypeError(f"not an expression: {expr!r}")


def h_current(var: str, deformation: Scalar = HBAR) -> Expr:
    """h(var) = 1 + deformation * chi(var)."""
    return Const(1) + Scale(deformation, Cur("chi", var))
