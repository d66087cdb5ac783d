"""Finite-dimensional Lie algebras, spectral r-matrices and the classical YBE.

A ``SpectralTensor`` is a sum of pure tensors of basis elements with
coefficients in the scalar field; spectral dependence lives in the
coefficients (u, v, w).  Legs are identified by position.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping

from .checks import Check
from .ncalg import Gen, TensorPoly
from .scalarfield import (
    HBAR, ONE, P, T, U, V, W, ZERO, Scalar, ScalarLike, depends_on, order_in, poly_coefficients, scalar,
    substitute_many, to_text,
)

Vec = dict  # basis name -> Scalar


def _vadd(acc: dict, key, c) -> None:
    v = acc.get(key, ZERO) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class LieAlgebraError(ValueError):
    pass


class LieAlg:
    """Structure constants on a named basis, checked exactly on construction."""

    def __init__(self, name: str, basis: tuple[str, ...],
                 brackets: Mapping[tuple[str, str], Mapping[str, ScalarLike]],
                 form: Mapping[tuple[str, str], ScalarLike] | None = None):
        self.name = name
        self.basis = tuple(basis)
        self._br: dict[tuple[str, str], Vec] = {}
        for (a, b), val in brackets.items():
            vec = {k: scalar(c) for k, c in val.items() if scalar(c)}
            self._br[(a, b)] = vec
            self._br[(b, a)] = {k: -c for k, c in vec.items()}
        self.form = None
        if form is not None:
            self.form = {}
            for (a, b), c in form.items():
                self.form[(a, b)] = self.form[(b, a)] = scalar(c)
        self._validate()

    def bracket(self, a: str, b: str) -> Vec:
        if a not in self.basis or b not in self.basis:
            raise KeyError(f"{a!r} or {b!r} is not a basis element of {self.name}")
        return dict(self._br.get((a, b), {}))

    def bracket_vec(self, x: Vec, y: Vec) -> Vec:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for k, c in self._br.get((a, b), {}).items():
                    _vadd(out, k, ca * cb * c)
        return out

    def B(self, a: str, b: str) -> Scalar:
        return self.form.get((a, b), ZERO) if self.form else ZERO

    def jacobi_residuals(self) -> dict[tuple[str, str, str], Vec]:
        out = {}
        for a, b, c in product(self.basis, repeat=3):
            res: dict = {}
            for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                for k, v in self.bracket_vec({x: ONE}, self.bracket(y, z)).items():
                    _vadd(res, k, v)
            if res:
                out[(a, b, c)] = res
        return out

    def form_residuals(self) -> dict[tuple[str, str, str], Scalar]:
        """B([x,y],z) + B(y,[x,z]) for all basis triples (nonzero entries only)."""
        out = {}
        if not self.form:
            return out
        for x, y, z in product(self.basis, repeat=3):
            val = (sum((c * self.B(k, z) for k, c in self.bracket(x, y).items()), ZERO)
                   + sum((c * self.B(y, k) for k, c in self.bracket(x, z).items()), ZERO))
            if val:
                out[(x, y, z)] = val
        return out

    def _validate(self) -> None:
        for (a, b) in self._br:
            if a == b and self._br[(a, b)]:
                raise LieAlgebraError(f"{self.name}: [{a}, {a}] must vanish")
        bad = self.jacobi_residuals()
        if bad:
            raise LieAlgebraError(f"{self.name}: Jacobi fails on {next(iter(bad))}")
        bad = self.form_residuals()
        if bad:
            raise LieAlgebraError(f"{self.name}: form is not ad-invariant on {next(iter(bad))}")

    def __repr__(self) -> str:
        return f"LieAlg({self.name}, {self.basis})"


def builtin(name: str) -> LieAlg:
    half = ONE / 2
    if name == "sl2":
        return LieAlg("sl2", ("e", "f", "h"), {
            ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}, ("e", "f"): {"h": 1},
        })
    if name == "double":
        return LieAlg("double", ("e", "f", "h", "hp"), {
            ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2},
            ("hp", "e"): {"e": 2}, ("hp", "f"): {"f": -2},
            ("e", "f"): {"h": half, "hp": half},
        })
    if name == "a":
        return LieAlg("a", ("e", "f", "h", "hp"), {
            ("h", "e"): {"e": 4 * P}, ("h", "f"): {"f": -4 * P}, ("e", "f"): {"hp": P / 2},
        }, form={("e", "f"): 1, ("h", "hp"): 8})
    if name == "c":
        return LieAlg("c", ("e", "f", "h"), {
            ("h", "e"): {"e": 4 * P}, ("h", "f"): {"f": -4 * P},
        })
    if name == "borel2":
        return LieAlg("borel2", ("e", "h"), {("h", "e"): {"e": 2}})
    raise KeyError(f"unknown Lie algebra {name!r}")


def killing_form(g: LieAlg) -> dict[tuple[str, str], Scalar]:
    """tr(ad x ad y) on basis pairs."""
    out = {}
    for x, y in product(g.basis, repeat=2):
        tr = ZERO
        for b in g.basis:
            img = g.bracket_vec({x: ONE}, g.bracket(y, b))
            tr += img.get(b, ZERO)
        out[(x, y)] = tr
    return out


def _invert(mat: list[list[Scalar]]) -> list[list[Scalar]]:
    n = len(mat)
    aug = [row[:] + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise LieAlgebraError("form is degenerate")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = ONE / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                k = aug[r][col]
                aug[r] = [x - k * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def casimir(g: LieAlg, form: Mapping[tuple[str, str], Scalar]) -> "SpectralTensor":
    """sum_ij (B^-1)_ij x_i @ x_j for a nondegenerate form B."""
    basis = g.basis
    inv = _invert([[scalar(form.get((a, b), ZERO)) for b in basis] for a in basis])
    return SpectralTensor(2, {
        (a, b): inv[i][j] for i, a in enumerate(basis) for j, b in enumerate(basis) if inv[i][j]
    })


# --- spectral tensors ------------------------------------------------------

@dataclass
class SpectralTensor:
    degree: int
    terms: dict[tuple[str, ...], Scalar] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {k: scalar(c) for k, c in self.terms.items() if scalar(c)}
        for k in self.terms:
            if len(k) != self.degree:
                raise ValueError(f"expected {self.degree} legs, got {k}")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, SpectralTensor) and self.degree == other.degree
                and self.terms == other.terms)

    def __add__(self, other: "SpectralTensor") -> "SpectralTensor":
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _vadd(acc, k, c)
        return SpectralTensor(self.degree, acc)

    def __neg__(self) -> "SpectralTensor":
        return self.scale(-ONE)

    def __sub__(self, other: "SpectralTensor") -> "SpectralTensor":
        return self + (-other)

    def scale(self, c: ScalarLike) -> "SpectralTensor":
        c = scalar(c)
        return SpectralTensor(self.degree, {k: v * c for k, v in self.terms.items()})

    def map_coefficients(self, fn) -> "SpectralTensor":
        return SpectralTensor(self.degree, {k: fn(c) for k, c in self.terms.items()})

    def flip(self) -> "SpectralTensor":
        """Exchange the legs together with the spectral variables u <-> v."""
        if self.degree != 2:
            raise ValueError("flip is defined on degree-2 tensors")
        acc: dict = {}
        for (a, b), c in self.terms.items():
            _vadd(acc, (b, a), substitute_many(c, {"u": V, "v": U}))
        return SpectralTensor(2, acc)

    def at(self, values: Mapping[str, ScalarLike]) -> "SpectralTensor":
        return self.map_coefficients(lambda c: substitute_many(c, values))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for legs in sorted(self.terms):
            c = self.terms[legs]
            body = " @ ".join(legs)
            parts.append(body if c == 1 else f"-{body}" if c == -1 else f"({to_text(c)})*{body}")
        return " + ".join(parts)

    __str__ = to_text


def _shared_commutator(g: LieAlg, x: dict, xl: tuple[int, int], y: dict, yl: tuple[int, int]) -> dict:
    """[X, Y] in g^(x)3 for X on legs xl and Y on legs yl sharing exactly one leg."""
    shared = set(xl) & set(yl)
    if len(shared) != 1:
        raise ValueError("embedded tensors must share exactly one leg")
    (s,) = shared
    acc: dict = {}
    for xk, cx in x.items():
        xs = dict(zip(xl, xk))
        for yk, cy in y.items():
            ys = dict(zip(yl, yk))
            for k, cb in g.bracket(xs[s], ys[s]).items():
                legs = [None, None, None]
                legs[s] = k
                for i in xl:
                    if i != s:
                        legs[i] = xs[i]
                for i in yl:
                    if i != s:
                        legs[i] = ys[i]
                _vadd(acc, tuple(legs), cx * cy * cb)
    return acc


def cybe_residual(r: SpectralTensor, g: LieAlg) -> SpectralTensor:
    """[r12, r13] + [r12, r23] + [r13, r23] with r12 = r(u,v), r13 = r(u,w), r23 = r(v,w)."""
    if r.degree != 2:
        raise ValueError("r must have degree 2")
    r12 = r.terms
    r13 = r.at({"v": W}).terms
    r23 = r.at({"u": V, "v": W}).terms
    acc: dict = {}
    for x, xl, y, yl in ((r12, (0, 1), r13, (0, 2)), (r12, (0, 1), r23, (1, 2)), (r13, (0, 2), r23, (1, 2))):
        for k, c in _shared_commutator(g, x, xl, y, yl).items():
            _vadd(acc, k, c)
    return SpectralTensor(3, acc)


def ad_action(g: LieAlg, omega: SpectralTensor, x: str) -> SpectralTensor:
    """[x@1 + 1@x, omega]."""
    acc: dict = {}
    for (a, b), c in omega.terms.items():
        for k, v in g.bracket(x, a).items():
            _vadd(acc, (k, b), c * v)
        for k, v in g.bracket(x, b).items():
            _vadd(acc, (a, k), c * v)
    return SpectralTensor(2, acc)


def ad_invariance_residual(omega: SpectralTensor, g: LieAlg) -> dict[str, SpectralTensor]:
    for c in omega.terms.values():
        if any(depends_on(c, var) for var in ("u", "v", "w")):
            raise ValueError("the invariant tensor must be constant in the spectral variables")
    return {x: ad_action(g, omega, x) for x in g.basis}


def cobracket(r: SpectralTensor, x: str, g: LieAlg, mode: int | None = None) -> SpectralTensor:
    """Cobracket of x (or of the mode x_k) induced by r(u, v).

    Without a mode this is [x@1 + 1@x, r(u, v)].  With ``mode=k`` the element
    is the current mode x u^k, acting as x u^k on leg one and x v^k on leg two:
    [x u^k @ 1 + 1 @ x v^k, r(u, v)].
    """
    if r.degree != 2:
        raise ValueError("r must have degree 2")
    wu = ONE if mode is None else U ** mode
    wv = ONE if mode is None else V ** mode
    acc: dict = {}
    for (a, b), c in r.terms.items():
        for k, v in g.bracket(x, a).items():
            _vadd(acc, (k, b), c * v * wu)
        for k, v in g.bracket(x, b).items():
            _vadd(acc, (a, k), c * v * wv)
    return SpectralTensor(2, acc)


_FAMILY = {"e": "E", "f": "F", "h": "H", "hp": "Hp"}


def polynomial_modes(t: SpectralTensor) -> TensorPoly:
    """Read u^a v^b x@y as x_a @ y_b; coefficients must be polynomial in u, v."""
    acc: dict = {}
    for (a, b), c in t.terms.items():
        for i, cu in poly_coefficients(c, "u").items():
            for j, cv in poly_coefficients(cu, "v").items():
                if i < 0 or j < 0:
                    raise ValueError(f"coefficient {to_text(c)} is not polynomial in u, v")
                key = ((Gen(_FAMILY[a], i),), (Gen(_FAMILY[b], j),))
                _vadd(acc, key, cv)
    return TensorPoly(2, acc)


@dataclass
class ColieReport:
    constant: Scalar | None
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def compare_colie(boundary, r: SpectralTensor, g: LieAlg | None = None,
                  modes: tuple[int, ...] = (0, 1)) -> ColieReport:
    """Find one constant c with (Delta - Delta^op)(x_k) = c * delta(x_k) for all x, k."""
    g = g or builtin("a")
    constant: Scalar | None = None
    anchor = None
    checks = []
    for k in modes:
        for x in g.basis:
            gen_ = Gen(_FAMILY[x], k)
            d = boundary.coproduct(gen_)
            skew = d - d.flip()
            name = f"colie[{gen_}]"
            try:
                cob = polynomial_modes(cobracket(r, x, g, mode=k))
            except ValueError as exc:
                checks.append(Check(name, False, f"cobracket has a pole: {exc}"))
                continue
            if not cob:
                ok = not skew
                checks.append(Check(name, ok, None if ok else f"skew part {skew} but zero cobracket"))
                continue
            legs, c0 = next(iter(cob.terms.items()))
            ratio = skew.terms.get(legs, ZERO) / c0
            if not ratio or skew != cob.scale(ratio):
                checks.append(Check(name, False, f"{skew} is not proportional to {cob}"))
                continue
            if constant is None:
                constant, anchor = ratio, gen_
                checks.append(Check(name, True, detail=f"constant {to_text(ratio)}"))
            else:
                ok = ratio == constant
                checks.append(Check(name, ok, None if ok else
                                    f"constant {to_text(ratio)} differs from {to_text(constant)} at {anchor}"))
    checks.append(Check("colie-constant-found", constant is not None,
                        None if constant is not None else "no nonzero cobracket"))
    return ColieReport(constant, checks)


def project_factor_r(r: SpectralTensor) -> SpectralTensor:
    """Drop every term with an h' leg (the image in c after factoring by h')."""
    return SpectralTensor(r.degree, {k: c for k, c in r.terms.items() if "hp" not in k})


def casimir_sl2() -> SpectralTensor:
    """e@f + f@e + (1/2) h@h, i.e. 4 times the inverse Killing form."""
    return casimir(builtin("sl2"), killing_form(builtin("sl2"))).scale(4)


def invariant_a() -> SpectralTensor:
    """(1/8)(h@h' + h'@h) + e@f + f@e, the inverse of the invariant form of a."""
    g = builtin("a")
    return casimir(g, g.form)


def rational(omega: SpectralTensor) -> SpectralTensor:
    return omega.scale(ONE / (U - V))


def boundary_r() -> SpectralTensor:
    """Invariant tensor of a over (u - v): the rational r-matrix of the boundary algebra."""
    return rational(invariant_a())


@dataclass
class DivergenceReport:
    divergent: SpectralTensor
    finite: SpectralTensor
    vanishing: SpectralTensor
    orders: dict[tuple[str, str], int]
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


_SUBS = {
    "e": [("e", ONE / P)],
    "f": [("f", ONE / T)],
    "h": [("h", ONE / (2 * P)), ("hp", ONE / (2 * T))],
}


def parametrize_tensor(r: SpectralTensor) -> SpectralTensor:
    """Apply e -> e/p, f -> f/t, h -> (h/p + h'/t)/2 and hbar -> p t to a 2-tensor."""
    acc: dict = {}
    for (a, b), c in r.terms.items():
        c = substitute_many(c, {"hbar": P * T})
        for x, cx in _SUBS[a]:
            for y, cy in _SUBS[b]:
                _vadd(acc, (x, y), c * cx * cy)
    return SpectralTensor(2, acc)


def parametrized_r_divergence() -> DivergenceReport:
    r = parametrize_tensor(rational(casimir_sl2()).scale(HBAR))
    parts = {-1: {}, 0: {}, 1: {}}
    orders = {}
    extra = []
    for k, c in r.terms.items():
        n = order_in(c, "t")
        orders[k] = n
        bucket = -1 if n < 0 else (0 if n == 0 else 1)
        parts[bucket][k] = c
        if abs(n) > 1:
            extra.append(k)
    div, fin, van = (SpectralTensor(2, parts[i]) for i in (-1, 0, 1))
    checks = [
        Check("divergence-finite-part=boundary-r", fin == boundary_r(),
              None if fin == boundary_r() else str(fin - boundary_r())),
        Check("divergence-single-pole", list(div.terms) == [("hp", "hp")] and orders[("hp", "hp")] == -1,
              None if list(div.terms) == [("hp", "hp")] else str(div)),
        Check("divergence-single-vanishing", list(van.terms) == [("h", "h")] and orders[("h", "h")] == 1,
              None if list(van.terms) == [("h", "h")] else str(van)),
    ]
    return DivergenceReport(div, fin, van, orders, checks)


def cybe_checks() -> list[Check]:
    a, sl2 = builtin("a"), builtin("sl2")
    out = []
    for name, r, g in (("cybe[boundary-r on a]", boundary_r(), a),
                       ("cybe[casimir/(u-v) on sl2]", rational(casimir_sl2()), sl2)):
        res = cybe_residual(r, g)
        out.append(Check(name, not res, None if not res else str(res)))
    for x, res in ad_invariance_residual(invariant_a(), a).items():
        out.append(Check(f"ad-invariance[{x}]", not res, None if not res else str(res)))
    for x in a.basis:
        d = cobracket(boundary_r(), x, a, mode=1)
        ok = not (d + d.flip())
        out.append(Check(f"co-antisymmetry[{x}_1]", ok, None if ok else str(d + d.flip())))
    for name in ("sl2", "double", "a", "c", "borel2"):
        g = builtin(name)
        out.append(Check(f"lie-jacobi[{name}]", not g.jacobi_residuals()))
    return out
