"""Evaluation representations and matrix-level checks of the twist and R-matrix.

Matrices are sparse (a dict of nonzero entries) over the scalar field, so
spectral parameters stay symbolic throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Mapping

from .checks import Check
from .cybe import LieAlg, SpectralTensor, builtin, project_factor_r, boundary_r
from .ncalg import Gen, NCPoly, TensorPoly
from .scalarfield import (
    L1, L2, L3, ONE, P, ZERO, Scalar, ScalarLike, param, scalar, substitute_many, to_text,
)


class NotNilpotentError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    pass


class MatrixRF:
    """Square matrix over the scalar field, stored sparsely."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries: Mapping[tuple[int, int], ScalarLike] | None = None):
        self.dim = dim
        self.entries: dict[tuple[int, int], Scalar] = {}
        for (i, j), c in (entries or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexError(f"entry {(i, j)} outside a {dim}x{dim} matrix")
            c = scalar(c)
            if c:
                self.entries[(i, j)] = c

    @classmethod
    def identity(cls, dim: int) -> "MatrixRF":
        return cls(dim, {(i, i): ONE for i in range(dim)})

    @classmethod
    def unit(cls, dim: int, i: int, j: int) -> "MatrixRF":
        return cls(dim, {(i, j): ONE})

    @classmethod
    def diag(cls, *values: ScalarLike) -> "MatrixRF":
        return cls(len(values), {(i, i): v for i, v in enumerate(values)})

    def _new(self, entries: dict) -> "MatrixRF":
        out = MatrixRF(self.dim)
        out.entries = entries
        return out

    def __bool__(self) -> bool:
        return bool(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MatrixRF) and self.dim == other.dim and self.entries == other.entries

    __hash__ = None

    def __add__(self, other: "MatrixRF") -> "MatrixRF":
        acc = dict(self.entries)
        for k, c in other.entries.items():
            v = acc.get(k, ZERO) + c
            if v:
                acc[k] = v
            else:
                acc.pop(k, None)
        return self._new(acc)

    def __neg__(self) -> "MatrixRF":
        return self._new({k: -c for k, c in self.entries.items()})

    def __sub__(self, other: "MatrixRF") -> "MatrixRF":
        return self + (-other)

    def scale(self, c: ScalarLike) -> "MatrixRF":
        c = scalar(c)
        if not c:
            return MatrixRF(self.dim)
        return self._new({k: v * c for k, v in self.entries.items()})

    def __matmul__(self, other: "MatrixRF") -> "MatrixRF":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        rows: dict[int, list] = {}
        for (k, j), c in other.entries.items():
            rows.setdefault(k, []).append((j, c))
        acc: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in rows.get(k, ()):
                v = acc.get((i, j), ZERO) + a * b
                if v:
                    acc[(i, j)] = v
                else:
                    acc.pop((i, j), None)
        return self._new(acc)

    __mul__ = __matmul__

    def comm(self, other: "MatrixRF") -> "MatrixRF":
        return self @ other - other @ self

    def anticomm(self, other: "MatrixRF") -> "MatrixRF":
        return self @ other + other @ self

    def kron(self, other: "MatrixRF") -> "MatrixRF":
        d = other.dim
        out = MatrixRF(self.dim * d)
        out.entries = {
            (i * d + k, j * d + l): a * b
            for (i, j), a in self.entries.items() for (k, l), b in other.entries.items()
        }
        return out

    def map_entries(self, fn) -> "MatrixRF":
        return MatrixRF(self.dim, {k: fn(c) for k, c in self.entries.items()})

    def inverse(self) -> "MatrixRF":
        """Gauss-Jordan elimination over the rational-function field."""
        n = self.dim
        rows = [{j: c for (i, j), c in self.entries.items() if i == r} for r in range(n)]
        inv = [{r: ONE} for r in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if rows[r].get(col)), None)
            if piv is None:
                raise SingularMatrixError("matrix is singular")
            rows[col], rows[piv] = rows[piv], rows[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            s = ONE / rows[col][col]
            rows[col] = {j: c * s for j, c in rows[col].items()}
            inv[col] = {j: c * s for j, c in inv[col].items()}
            for r in range(n):
                k = rows[r].get(col) if r != col else None
                if k:
                    for src, dst in ((rows[col], rows[r]), (inv[col], inv[r])):
                        for j, c in src.items():
                            v = dst.get(j, ZERO) - k * c
                            if v:
                                dst[j] = v
                            else:
                                dst.pop(j, None)
        return MatrixRF(n, {(i, j): c for i, row in enumerate(inv) for j, c in row.items()})

    def rows(self) -> list[list[str]]:
        return [[to_text(self.entries.get((i, j), ZERO)) for j in range(self.dim)] for i in range(self.dim)]

    def to_text(self) -> str:
        if not self.entries:
            return "0"
        return "; ".join(f"({i},{j}): {to_text(c)}" for (i, j), c in sorted(self.entries.items()))

    __str__ = to_text

    def __repr__(self) -> str:
        return f"MatrixRF({self.dim}, {self.to_text()})"


def exp_nilpotent(M: MatrixRF) -> MatrixRF:
    """sum_{k<d} M^k / k!, after verifying M^d = 0."""
    out = MatrixRF.identity(M.dim)
    term = MatrixRF.identity(M.dim)
    for k in range(1, M.dim + 1):
        term = (term @ M).scale(ONE / k)
        if not term:
            return out
        out = out + term
    raise NotNilpotentError("matrix is not nilpotent")


# --- representations -------------------------------------------------------

class RepresentationError(ValueError):
    pass


@dataclass
class LieRep:
    algebra: LieAlg
    images: dict[str, MatrixRF]

    def __post_init__(self):
        bad = self.bracket_residuals()
        if bad:
            x, y = next(iter(bad))
            raise RepresentationError(f"rho([{x},{y}]) != [rho({x}), rho({y})]")

    @property
    def dim(self) -> int:
        return next(iter(self.images.values())).dim

    def image(self, vec: Mapping[str, Scalar]) -> MatrixRF:
        out = MatrixRF(self.dim)
        for k, c in vec.items():
            out = out + self.images[k].scale(c)
        return out

    def bracket_residuals(self) -> dict[tuple[str, str], MatrixRF]:
        out = {}
        for x in self.algebra.basis:
            for y in self.algebra.basis:
                res = self.images[x].comm(self.images[y]) - self.image(self.algebra.bracket(x, y))
                if res:
                    out[(x, y)] = res
        return out


def fundamental_sl2() -> LieRep:
    return LieRep(builtin("sl2"), {
        "h": MatrixRF.diag(1, -1),
        "e": MatrixRF.unit(2, 0, 1),
        "f": MatrixRF.unit(2, 1, 0),
    })


def rep_c4() -> LieRep:
    """Block-diagonal rep of c: e = E12, f = E34, h = 2p diag(1, -1, -1, 1)."""
    return LieRep(builtin("c"), {
        "e": MatrixRF.unit(4, 0, 1),
        "f": MatrixRF.unit(4, 2, 3),
        "h": MatrixRF.diag(2 * P, -2 * P, -2 * P, 2 * P),
    })


_NAME = {"E": "e", "F": "f", "H": "h", "Hp": "hp"}


@dataclass
class EvalRep:
    rep: LieRep
    spectral: str = "lam"

    def eval_mode(self, g: Gen, at: ScalarLike | None = None) -> MatrixRF:
        lam = param(self.spectral) if at is None else scalar(at)
        name = _NAME[g.family]
        if name not in self.rep.images:
            raise KeyError(f"{g.family} has no image in this representation")
        return self.rep.images[name].scale(lam ** g.mode)

    def word(self, w: tuple, at: ScalarLike | None = None) -> MatrixRF:
        return reduce(lambda a, b: a @ b, (self.eval_mode(g, at) for g in w), MatrixRF.identity(self.rep.dim))

    def poly(self, x: NCPoly, at: ScalarLike | None = None) -> MatrixRF:
        out = MatrixRF(self.rep.dim)
        for w, c in x.terms.items():
            out = out + self.word(w, at).scale(c)
        return out

    def tensor(self, x: TensorPoly, at: tuple[ScalarLike, ...]) -> MatrixRF:
        """Image of a tensor with leg i evaluated at spectral value at[i]."""
        out = MatrixRF(self.rep.dim ** x.degree)
        cache: dict = {}
        for legs, c in x.terms.items():
            mats = []
            for i, w in enumerate(legs):
                key = (i, w)
                if key not in cache:
                    cache[key] = self.word(w, at[i])
                mats.append(cache[key])
            out = out + reduce(MatrixRF.kron, mats).scale(c)
        return out


def eval_mode(rep: EvalRep, g: Gen, at: ScalarLike | None = None) -> MatrixRF:
    return rep.eval_mode(g, at)


def auxiliary_identities(rep: LieRep) -> dict[str, MatrixRF]:
    """Anticommutators that must vanish for x_k -> lam^k rho(x) to satisfy the
    deformed Y(sl2) recursions."""
    im = rep.images
    return {
        "{h,e}": im["h"].anticomm(im["e"]),
        "{h,f}": im["h"].anticomm(im["f"]),
        "{e,e}": im["e"].anticomm(im["e"]),
        "{f,f}": im["f"].anticomm(im["f"]),
    }


def mode_relation_checks(rep: EvalRep, relations, label: str) -> list[Check]:
    out = []
    for rel in relations:
        res = rep.poly(rel.expr)
        out.append(Check(f"{label}[{rel.label}]", not res, None if not res else str(res)))
    return out


# --- twist, R-matrix, morphism property ------------------------------------

def two_leg(a: MatrixRF, b: MatrixRF, i: int, j: int, n: int) -> MatrixRF:
    """a on leg i, b on leg j, identity elsewhere, in an n-fold tensor power."""
    d = a.dim
    mats = [MatrixRF.identity(d) for _ in range(n)]
    mats[i], mats[j] = a, b
    return reduce(MatrixRF.kron, mats)


def _rho():
    r = rep_c4().images
    return r["e"], r["f"], r["h"]


def twist_exponent(i: int, j: int, n: int, lam: tuple) -> MatrixRF:
    """f_0 (leg i) e_0 (leg j) / (lam_j - lam_i)."""
    E, F, _ = _rho()
    return two_leg(F, E, i, j, n).scale(ONE / (lam[j] - lam[i]))


def r_exponent(i: int, j: int, n: int, x: ScalarLike) -> MatrixRF:
    """(f@e + e@f) / x on legs i, j."""
    E, F, _ = _rho()
    return (two_leg(F, E, i, j, n) + two_leg(E, F, i, j, n)).scale(ONE / scalar(x))


def twist_matrix(lam1=L1, lam2=L2) -> MatrixRF:
    return exp_nilpotent(twist_exponent(0, 1, 2, (lam1, lam2)))


def r_matrix(x: ScalarLike, i: int = 0, j: int = 1, n: int = 2) -> MatrixRF:
    return exp_nilpotent(r_exponent(i, j, n, x))


def _mat_check(name: str, residual: MatrixRF) -> Check:
    return Check(name, not residual, None if not residual else residual.to_text())


def twist_check(factor=None, max_mode: int = 2) -> list[Check]:
    """F Delta_0(g) F^-1 equals the Y(c) coproduct of g in rep_c4 @ rep_c4."""
    from .presentations import build_factor

    factor = factor or build_factor(max(max_mode + 3, 4))
    ev = EvalRep(rep_c4())
    lam = (L1, L2)
    X = twist_exponent(0, 1, 2, lam)
    F = exp_nilpotent(X)
    Finv = exp_nilpotent(-X)
    out = [_mat_check("twist-inverse", F @ Finv - MatrixRF.identity(16)),
           _mat_check("twist-inverse-gauss-jordan", F.inverse() - Finv)]
    for g in factor.generators(max_mode):
        d0 = ev.tensor(TensorPoly.primitive(g), lam)
        want = ev.tensor(factor.coproduct(g), lam)
        out.append(_mat_check(f"twist-conjugation[{g}]", F @ d0 @ Finv - want))

    # cocycle: F12 (Delta0 @ id)(F) = F23 (id @ Delta0)(F), kernels on the coupled legs
    lam3 = (L1, L2, L3)
    t = lambda i, j: twist_exponent(i, j, 3, lam3)
    lhs = exp_nilpotent(t(0, 1)) @ exp_nilpotent(t(0, 2) + t(1, 2))
    rhs = exp_nilpotent(t(1, 2)) @ exp_nilpotent(t(0, 1) + t(0, 2))
    out.append(_mat_check("twist-cocycle", lhs - rhs))
    return out


def ybe_residual() -> MatrixRF:
    """R12(l1-l2) R13(l1-l3) R23(l2-l3) - R23 R13 R12 in rep_c4^(x)3."""
    R12 = r_matrix(L1 - L2, 0, 1, 3)
    R13 = r_matrix(L1 - L3, 0, 2, 3)
    R23 = r_matrix(L2 - L3, 1, 2, 3)
    return R12 @ R13 @ R23 - R23 @ R13 @ R12


def flip_matrix(M: MatrixRF, d: int) -> MatrixRF:
    """sigma M sigma for M acting on V (x) V with dim V = d."""
    sw = lambda k: (k % d) * d + k // d
    return MatrixRF(M.dim, {(sw(i), sw(j)): c for (i, j), c in M.entries.items()})


def r_matrix_checks() -> list[Check]:
    x = L1 - L2
    R = r_matrix(x)
    out = [_mat_check("ybe", ybe_residual())]
    out.append(_mat_check("unitarity R12(x) R21(-x)",
                          R @ flip_matrix(r_matrix(-x), 4) - MatrixRF.identity(16)))
    F = twist_matrix()
    F21 = flip_matrix(F, 4)
    out.append(_mat_check("R = (F21 F)^-1", (F21 @ F).inverse() - R))
    # first-order term of the exponent against the projected classical r-matrix
    ev = EvalRep(rep_c4())
    r_img = spectral_image(project_factor_r(boundary_r()), ev.rep, {"u": L1, "v": L2})
    out.append(_mat_check("R-exponent = projected boundary-r", r_exponent(0, 1, 2, x) - r_img))
    return out


def spectral_image(r: SpectralTensor, rep: LieRep, values: Mapping[str, ScalarLike]) -> MatrixRF:
    out = MatrixRF(rep.dim ** r.degree)
    for legs, c in r.terms.items():
        out = out + reduce(MatrixRF.kron, [rep.images[a] for a in legs]).scale(substitute_many(c, values))
    return out


def pqybe_check(a: Gen, lam: str = "lam", factor=None) -> Check:
    """(T_lam @ id) Delta^op(a) = R (T_lam @ id) Delta(a) R^-1 with R = R(l1 + lam - l2)."""
    from .presentations import build_factor

    factor = factor or build_factor(max(a.mode + 3, 4))
    ev = EvalRep(rep_c4())
    shifted = (L1 + param(lam), L2)
    d = factor.coproduct(a)
    lhs = ev.tensor(d.flip(), shifted)
    x = shifted[0] - shifted[1]
    X = r_exponent(0, 1, 2, x)
    rhs = exp_nilpotent(X) @ ev.tensor(d, shifted) @ exp_nilpotent(-X)
    return _mat_check(f"pqybe[{a}]", lhs - rhs)


def evaluation_checks(max_mode: int = 3) -> list[Check]:
    """Mode relations of Y(sl2) and Y(c) in their evaluation representations."""
    from .presentations.algebras import factor_relations, yangian_relations

    out = []
    for name, res in auxiliary_identities(fundamental_sl2()).items():
        out.append(_mat_check(f"fundamental-aux{name}", res))
    out += mode_relation_checks(EvalRep(fundamental_sl2()), yangian_relations(max_mode), "eval-y_sl2")
    out += mode_relation_checks(EvalRep(rep_c4()), factor_relations(max_mode), "eval-factor")
    return out
