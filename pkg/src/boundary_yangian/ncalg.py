"""Noncommutative polynomials in mode generators, normal ordering, tensor powers.

Generators are ``Gen(family, mode)`` with family one of E, F, H, Hp.  A
``CommTable`` stores every bracket [a, b] (a > b in the generator order) in
normal form; ``normal_order`` straightens words with it by repeatedly
rewriting a descent ``a b -> b a + [a, b]``.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Mapping, NamedTuple

from .scalarfield import ONE, CapacityError, Scalar, ScalarLike, scalar, to_text

FAMILIES = ("E", "F", "H", "Hp")
_LETTER = {"E": "e", "F": "f", "H": "h", "Hp": "hp"}
_FAMILY_OF_LETTER = {v: k for k, v in _LETTER.items()}


class IncompletePresentationError(KeyError):
    pass


class Gen(NamedTuple):
    family: str
    mode: int

    def __str__(self) -> str:
        return f"{_LETTER[self.family]}_{self.mode}"

    @classmethod
    def parse(cls, text: str) -> "Gen":
        letter, _, mode = text.strip().partition("_")
        return cls(_FAMILY_OF_LETTER[letter], int(mode))


def e(k: int) -> Gen:
    return Gen("E", k)


def f(k: int) -> Gen:
    return Gen("F", k)


def h(k: int) -> Gen:
    return Gen("H", k)


def hp(k: int) -> Gen:
    return Gen("Hp", k)


Word = tuple  # tuple[Gen, ...]


class GenOrder:
    """Total order on generators: by family rank, then by mode."""

    def __init__(self, families: Iterable[str] = ("F", "Hp", "H", "E")):
        self.families = tuple(families)
        self._rank = {fam: i for i, fam in enumerate(self.families)}

    def key(self, g: Gen) -> tuple[int, int]:
        return (self._rank[g.family], g.mode)

    def word_key(self, w: Word) -> tuple:
        return (len(w), tuple(self.key(g) for g in w))

    def is_normal(self, w: Word) -> bool:
        return all(self.key(a) <= self.key(b) for a, b in zip(w, w[1:]))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GenOrder) and other.families == self.families

    def __hash__(self) -> int:
        return hash(self.families)

    def __repr__(self) -> str:
        return "GenOrder(" + " < ".join(self.families) + ")"


DEFAULT_ORDER = GenOrder()


def mode_sum(w: Word) -> int:
    return sum(g.mode for g in w)


def word_text(w: Word) -> str:
    return "*".join(str(g) for g in w) if w else "1"


def _coeff_text(c: Scalar, body: str) -> str:
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    ct = to_text(c)
    if body == "1":
        return ct
    return f"({ct})*{body}"


def _add_into(acc: dict, key, c) -> None:
    v = acc.get(key)
    v = c if v is None else v + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


# --- NCPoly ----------------------------------------------------------------

class NCPoly:
    """Finite linear combination of words with Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, ScalarLike] | None = None):
        self.terms: dict[Word, Scalar] = {}
        for w, c in (terms or {}).items():
            c = scalar(c)
            if c:
                self.terms[tuple(w)] = c

    @classmethod
    def gen(cls, g: Gen, c: ScalarLike = 1) -> "NCPoly":
        return cls({(g,): c})

    @classmethod
    def const(cls, c: ScalarLike) -> "NCPoly":
        return cls({(): c})

    @classmethod
    def word(cls, *gens: Gen) -> "NCPoly":
        return cls({tuple(gens): 1})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, NCPoly) and self.terms == other.terms

    __hash__ = None  # mutable-looking container; compare by value only

    def copy(self) -> "NCPoly":
        out = NCPoly()
        out.terms = dict(self.terms)
        return out

    def __add__(self, other: "NCPoly") -> "NCPoly":
        out = self.copy()
        for w, c in other.terms.items():
            _add_into(out.terms, w, c)
        return out

    def __neg__(self) -> "NCPoly":
        out = NCPoly()
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def scale(self, c: ScalarLike) -> "NCPoly":
        c = scalar(c)
        out = NCPoly()
        if c:
            out.terms = {w: c * v for w, v in self.terms.items()}
        return out

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        acc: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _add_into(acc, w1 + w2, c1 * c2)
        out = NCPoly()
        out.terms = acc
        return out

    def __rmul__(self, c):
        return self.scale(c)

    def generators(self) -> set[Gen]:
        return {g for w in self.terms for g in w}

    def substitute(self, mapping: Mapping[Gen, "NCPoly"]) -> "NCPoly":
        """Replace generators by polynomials (free algebra map)."""
        out = NCPoly()
        for w, c in self.terms.items():
            term = NCPoly.const(c)
            for g in w:
                term = term * mapping.get(g, NCPoly.gen(g))
                if not term:
                    break
            out = out + term
        return out

    def map_coefficients(self, fn) -> "NCPoly":
        out = NCPoly()
        for w, c in self.terms.items():
            v = fn(c)
            if v:
                out.terms[w] = v
        return out

    def sorted_terms(self, order: GenOrder = DEFAULT_ORDER) -> list[tuple[Word, Scalar]]:
        return sorted(self.terms.items(), key=lambda kv: order.word_key(kv[0]))

    def to_text(self, order: GenOrder = DEFAULT_ORDER) -> str:
        if not self.terms:
            return "0"
        return " + ".join(_coeff_text(c, word_text(w)) for w, c in self.sorted_terms(order))

    __str__ = to_text

    def __repr__(self) -> str:
        return f"NCPoly({self.to_text()})"


def gen(g: Gen) -> NCPoly:
    return NCPoly.gen(g)


def comm(a: NCPoly, b: NCPoly) -> NCPoly:
    """Free-algebra commutator ab - ba (no straightening)."""
    return a * b - b * a


def anticomm(a: NCPoly, b: NCPoly) -> NCPoly:
    return a * b + b * a


# --- commutator tables -----------------------------------------------------

class CommTable:
    """Brackets [a, b] for a > b, each stored normal-ordered.

    Entries cover every pair whose mode sum is at most ``bound``; a lookup
    beyond that raises ``CapacityError``.  ``finalize`` checks that every
    entry is normal and strictly lowers the (mode sum, length) filtration,
    which makes straightening terminate.
    """

    def __init__(self, name: str, bound: int, families: Iterable[str],
                 order: GenOrder = DEFAULT_ORDER):
        self.name = name
        self.bound = bound
        self.families = tuple(families)
        self.order = order
        self.entries: dict[tuple[Gen, Gen], NCPoly] = {}
        self._frozen = False
        self._cache: dict = {}

    def generators(self, max_mode: int | None = None) -> list[Gen]:
        top = self.bound if max_mode is None else max_mode
        gens = [Gen(fam, k) for fam in self.families for k in range(top + 1)]
        return sorted(gens, key=self.order.key)

    def set(self, a: Gen, b: Gen, value: NCPoly) -> None:
        if self._frozen:
            raise TypeError("commutator table is frozen")
        if a == b:
            raise ValueError("[a, a] is identically zero")
        if self.order.key(a) < self.order.key(b):
            a, b, value = b, a, -value
        self.entries[(a, b)] = value
        self._cache.clear()

    def bracket(self, a: Gen, b: Gen) -> NCPoly:
        if a == b:
            return NCPoly()
        flip = self.order.key(a) < self.order.key(b)
        key = (b, a) if flip else (a, b)
        try:
            val = self.entries[key]
        except KeyError:
            if a.mode > self.bound or b.mode > self.bound or a.mode + b.mode > self.bound:
                raise CapacityError(
                    f"[{a}, {b}] needs modes beyond the bound N={self.bound} of {self.name}"
                ) from None
            raise IncompletePresentationError(f"{self.name} has no entry for [{a}, {b}]") from None
        return -val if flip else val

    def expected_pairs(self) -> list[tuple[Gen, Gen]]:
        gens = self.generators()
        key = self.order.key
        return [
            (a, b) for a in gens for b in gens
            if key(a) > key(b) and a.mode + b.mode <= self.bound
        ]

    def finalize(self) -> "CommTable":
        missing = [pair for pair in self.expected_pairs() if pair not in self.entries]
        if missing:
            a, b = missing[0]
            raise IncompletePresentationError(f"{self.name}: {len(missing)} missing entries, e.g. [{a}, {b}]")
        for (a, b), val in self.entries.items():
            limit = (a.mode + b.mode, 2)
            for w in val.terms:
                if not self.order.is_normal(w):
                    raise ValueError(f"{self.name}: entry [{a}, {b}] is not normal-ordered: {word_text(w)}")
                if (mode_sum(w), len(w)) >= limit:
                    raise ValueError(f"{self.name}: entry [{a}, {b}] does not lower the filtration")
        self._frozen = True
        return self

    def replace(self, a: Gen, b: Gen, value: NCPoly, name: str | None = None) -> "CommTable":
        """Copy of the table with one entry overwritten (used for negative controls)."""
        out = CommTable(name or self.name, self.bound, self.families, self.order)
        out.entries = dict(self.entries)
        out.set(a, b, value)
        out._frozen = True
        return out

    # straightening -------------------------------------------------------

    def _check_word(self, w: Word) -> None:
        for g in w:
            if g.mode > self.bound:
                raise CapacityError(f"{g} exceeds the mode bound N={self.bound} of {self.name}")
            if g.family not in self.families:
                raise IncompletePresentationError(f"{g} is not a generator of {self.name}")

    def normal_word(self, w: Word, order: GenOrder | None = None) -> dict[Word, Scalar]:
        order = order or self.order
        ck = (order, w)
        hit = self._cache.get(ck)
        if hit is not None:
            return hit
        key = order.key
        for i in range(len(w) - 1):
            a, b = w[i], w[i + 1]
            if key(a) > key(b):
                acc = dict(self.normal_word(w[:i] + (b, a) + w[i + 2:], order))
                head, tail = w[:i], w[i + 2:]
                for mid, c in self.bracket(a, b).terms.items():
                    for nw, nc in self.normal_word(head + mid + tail, order).items():
                        _add_into(acc, nw, c * nc)
                self._cache[ck] = acc
                return acc
        out = {w: ONE}
        self._cache[ck] = out
        return out

    def dump(self) -> str:
        key = self.order.key
        lines = []
        for (a, b) in sorted(self.entries, key=lambda ab: (key(ab[0]), key(ab[1]))):
            lines.append(f"[{a}, {b}] = {self.entries[(a, b)].to_text(self.order)}")
        return "\n".join(lines) + "\n"


def normal_order(x: NCPoly, table: CommTable, order: GenOrder | None = None) -> NCPoly:
    acc: dict = {}
    for w, c in x.terms.items():
        table._check_word(w)
        for nw, nc in table.normal_word(w, order).items():
            _add_into(acc, nw, c * nc)
    out = NCPoly()
    out.terms = acc
    return out


def commutator(a: NCPoly, b: NCPoly, table: CommTable, order: GenOrder | None = None) -> NCPoly:
    return normal_order(a * b - b * a, table, order)


def dump_table(table: CommTable) -> str:
    return table.dump()


def parse_dump(text: str) -> dict[tuple[Gen, Gen], str]:
    """Read back the (a, b) -> right-hand-side text map of a table dump."""
    out = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        lhs, _, rhs = line.partition(" = ")
        a, b = lhs.strip("[]").split(", ")
        out[(Gen.parse(a), Gen.parse(b))] = rhs
    return out


# --- tensor powers ---------------------------------------------------------

class TensorPoly:
    """Linear combination of d-tuples of words (legs commute with each other)."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping[tuple, ScalarLike] | None = None):
        self.degree = degree
        self.terms: dict[tuple, Scalar] = {}
        for legs, c in (terms or {}).items():
            if len(legs) != degree:
                raise ValueError(f"expected {degree} legs, got {len(legs)}")
            c = scalar(c)
            if c:
                self.terms[tuple(tuple(w) for w in legs)] = c

    @classmethod
    def pure(cls, *legs: NCPoly) -> "TensorPoly":
        acc: dict = {}
        for combo in product(*(leg.terms.items() for leg in legs)):
            c = ONE
            for _, v in combo:
                c = c * v
            _add_into(acc, tuple(w for w, _ in combo), c)
        out = cls(len(legs))
        out.terms = acc
        return out

    @classmethod
    def one(cls, degree: int = 2) -> "TensorPoly":
        return cls(degree, {((),) * degree: 1})

    @classmethod
    def primitive(cls, g: Gen) -> "TensorPoly":
        return cls(2, {((g,), ()): 1, ((), (g,)): 1})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, TensorPoly) and self.degree == other.degree and self.terms == other.terms

    __hash__ = None

    def _new(self, terms: dict) -> "TensorPoly":
        out = TensorPoly(self.degree)
        out.terms = terms
        return out

    def __add__(self, other: "TensorPoly") -> "TensorPoly":
        if other.degree != self.degree:
            raise ValueError("tensor degree mismatch")
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(acc, k, c)
        return self._new(acc)

    def __neg__(self) -> "TensorPoly":
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TensorPoly") -> "TensorPoly":
        return self + (-other)

    def scale(self, c: ScalarLike) -> "TensorPoly":
        c = scalar(c)
        if not c:
            return self._new({})
        return self._new({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TensorPoly):
            raise TypeError("use tensor_multiply(x, y, table) for products")
        return self.scale(other)

    __rmul__ = scale

    def flip(self) -> "TensorPoly":
        if self.degree != 2:
            raise ValueError("flip is defined on degree-2 tensors")
        acc: dict = {}
        for (a, b), c in self.terms.items():
            _add_into(acc, (b, a), c)
        return self._new(acc)

    def embed(self, legs: str | tuple[int, int]) -> "TensorPoly":
        """Place a degree-2 tensor on legs 12, 13 or 23 of a degree-3 tensor."""
        if self.degree != 2:
            raise ValueError("embed takes a degree-2 tensor")
        if isinstance(legs, str):
            legs = (int(legs[0]) - 1, int(legs[1]) - 1)
        i, j = legs
        if not (0 <= i < j <= 2):
            raise ValueError(f"bad leg pair {legs}")
        acc: dict = {}
        for (a, b), c in self.terms.items():
            slots = [(), (), ()]
            slots[i], slots[j] = a, b
            _add_into(acc, tuple(slots), c)
        out = TensorPoly(3)
        out.terms = acc
        return out

    def map_coefficients(self, fn) -> "TensorPoly":
        acc = {}
        for k, c in self.terms.items():
            v = fn(c)
            if v:
                acc[k] = v
        return self._new(acc)

    def apply_leg(self, leg: int, fn) -> "TensorPoly":
        """Replace leg ``leg`` (0-based) by fn(word) -> TensorPoly or NCPoly, linearly."""
        acc: dict = {}
        for legs, c in self.terms.items():
            img = fn(legs[leg])
            if isinstance(img, NCPoly):
                for w, v in img.terms.items():
                    _add_into(acc, legs[:leg] + (w,) + legs[leg + 1:], c * v)
            else:
                for sub, v in img.terms.items():
                    _add_into(acc, legs[:leg] + sub + legs[leg + 1:], c * v)
        degree = len(next(iter(acc))) if acc else self.degree
        out = TensorPoly(degree)
        out.terms = acc
        return out

    def generators(self) -> set[Gen]:
        return {g for legs in self.terms for w in legs for g in w}

    def sorted_terms(self, order: GenOrder = DEFAULT_ORDER):
        return sorted(self.terms.items(), key=lambda kv: tuple(order.word_key(w) for w in kv[0]))

    def to_text(self, order: GenOrder = DEFAULT_ORDER) -> str:
        if not self.terms:
            return "0"
        parts = []
        for legs, c in self.sorted_terms(order):
            body = " @ ".join(word_text(w) for w in legs)
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"({to_text(c)})*{body}")
        return " + ".join(parts)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"TensorPoly({self.to_text()})"


def tensor(*legs: NCPoly) -> TensorPoly:
    return TensorPoly.pure(*legs)


def _normal_legs(legs: tuple, table: CommTable, order: GenOrder | None) -> dict:
    acc: dict = {(): ONE}
    for w in legs:
        table._check_word(w)
        nxt: dict = {}
        for prefix, c in acc.items():
            for nw, nc in table.normal_word(w, order).items():
                _add_into(nxt, prefix + (nw,), c * nc)
        acc = nxt
    return acc


def tensor_normal_order(x: TensorPoly, table: CommTable, order: GenOrder | None = None) -> TensorPoly:
    acc: dict = {}
    for legs, c in x.terms.items():
        for nl, nc in _normal_legs(legs, table, order).items():
            _add_into(acc, nl, c * nc)
    out = TensorPoly(x.degree)
    out.terms = acc
    return out


def tensor_multiply(x: TensorPoly, y: TensorPoly, table: CommTable,
                    order: GenOrder | None = None) -> TensorPoly:
    if x.degree != y.degree:
        raise ValueError(f"tensor degree mismatch: {x.degree} vs {y.degree}")
    acc: dict = {}
    for lx, cx in x.terms.items():
        for ly, cy in y.terms.items():
            legs = tuple(a + b for a, b in zip(lx, ly))
            c = cx * cy
            for nl, nc in _normal_legs(legs, table, order).items():
                _add_into(acc, nl, c * nc)
    out = TensorPoly(x.degree)
    out.terms = acc
    return out


def tensor_commutator(x: TensorPoly, y: TensorPoly, table: CommTable) -> TensorPoly:
    return tensor_multiply(x, y, table) - tensor_multiply(y, x, table)


def tensor_ops(x: TensorPoly, y: TensorPoly | None, kind: str, *,
               table: CommTable | None = None, legs: str | None = None) -> TensorPoly:
    if kind == "multiply":
        if table is None:
            raise ValueError("multiply needs a commutator table")
        return tensor_multiply(x, y, table)
    if kind == "flip":
        return x.flip()
    if kind == "embed":
        return x.embed(legs or "12")
    raise ValueError(f"unknown tensor operation {kind!r}")


def equals(x: NCPoly | TensorPoly, y: NCPoly | TensorPoly) -> bool:
    return x == y
