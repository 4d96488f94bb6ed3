"""Chow ring and K-theory of products of projective spaces.

For ``X = P^d1 x ... x P^dk`` both theories are modelled on
``Q[e]/(e^p) [y1, ..., yk] / (y1^(d1+1), ..., yk^(dk+1))`` where ``yi`` is the
first Chern class of ``O(1)`` pulled back from factor ``i``.  The Chow model
follows the additive group law and the K model the multiplicative one, so
only Chern classes, pushforwards along projections and the line basis differ.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from .coeff import SCALAR_TYPES, Coefficient, invert_coefficient
from .errors import (
    BadParam,
    NonUnit,
    NotImmersion,
    OrderMismatch,
    RingMismatch,
    TruncationError,
    WrongTheory,
)
from .series import GroupLaw, UnivariateSeries, group_law

CH = "CH"
K = "K"


@dataclass(frozen=True)
class Space:
    """``P^d1 x ... x P^dk``; the empty product is the point."""

    dims: tuple = ()

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if any(d < 0 for d in dims):
            raise BadParam(f"negative dimension in {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def dimension(self) -> int:
        return sum(self.dims)

    @property
    def nfactors(self) -> int:
        return len(self.dims)

    def exponents(self) -> list:
        """Monomial exponents ``0 <= e_i <= d_i`` in lexicographic order."""
        return list(itertools.product(*(range(d + 1) for d in self.dims)))

    def __str__(self):
        if not self.dims:
            return "pt"
        return " x ".join(f"P^{d}" for d in self.dims)


def point() -> Space:
    return Space(())


@dataclass(frozen=True)
class TheoryRing:
    space: Space
    law: str
    p: int = 1

    def __post_init__(self):
        if self.law not in (CH, K):
            raise BadParam(f"law must be {CH!r} or {K!r}, got {self.law!r}")
        if self.p < 1:
            raise BadParam("p must be >= 1")

    @property
    def is_additive(self) -> bool:
        return self.law == CH

    @property
    def nilpotency(self) -> int:
        """Every monomial of total degree above this vanishes."""
        return self.space.dimension

    def group_law(self, order: Optional[int] = None) -> GroupLaw:
        tag = "additive" if self.is_additive else "multiplicative"
        return group_law(tag, self.nilpotency if order is None else order, p=self.p)

    def with_law(self, law: str) -> "TheoryRing":
        return TheoryRing(self.space, law, self.p)

    def with_p(self, p: int) -> "TheoryRing":
        return TheoryRing(self.space, self.law, p)

    def on(self, space: Space) -> "TheoryRing":
        return TheoryRing(space, self.law, self.p)

    def coeff(self, value) -> Coefficient:
        if isinstance(value, Coefficient):
            if value.p != self.p:
                return value.lift(self.p)
            return value
        return Coefficient.scalar(value, self.p)

    def zero(self) -> "TruncatedPolynomial":
        return TruncatedPolynomial._raw(self, {})

    def one(self) -> "TruncatedPolynomial":
        return self.scalar(1)

    def scalar(self, value) -> "TruncatedPolynomial":
        c = self.coeff(value)
        if c.is_zero():
            return self.zero()
        return TruncatedPolynomial._raw(self, {(0,) * self.space.nfactors: c})

    def monomial(self, exp: Sequence[int], value=1) -> "TruncatedPolynomial":
        return self.element({tuple(exp): value})

    def gen(self, i: int) -> "TruncatedPolynomial":
        exp = tuple(1 if k == i else 0 for k in range(self.space.nfactors))
        return self.element({exp: 1})

    def element(self, terms: Mapping) -> "TruncatedPolynomial":
        """Build an element, dropping monomials killed by the relations."""
        caps = self.space.dims
        out = {}
        for exp, value in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(caps):
                raise BadParam(f"exponent {exp} does not fit {self.space}")
            if any(e < 0 for e in exp):
                raise BadParam(f"negative exponent {exp}")
            if any(e > d for e, d in zip(exp, caps)):
                continue
            c = self.coeff(value)
            if not c.is_zero():
                out[exp] = out[exp] + c if exp in out else c
        return TruncatedPolynomial._raw(self, {e: c for e, c in out.items() if c})

    def basis(self) -> list:
        return [self.monomial(e) for e in self.space.exponents()]

    def __str__(self):
        suffix = "" if self.p == 1 else f", p={self.p}"
        return f"{self.law}({self.space}{suffix})"


def linear_combination(ring: TheoryRing, pairs) -> "TruncatedPolynomial":
    """``sum c * v`` over ``(v, c)`` pairs, all ``v`` in ``ring``."""
    out: dict = {}
    for v, c in pairs:
        if v.ring != ring:
            raise RingMismatch(f"{v.ring} vs {ring}")
        c = ring.coeff(c)
        for e, x in v.terms.items():
            term = x * c
            s = out.get(e)
            out[e] = term if s is None else s + term
    return TruncatedPolynomial._raw(ring, {e: x for e, x in out.items() if not x.is_zero()})


@lru_cache(maxsize=None)
def _product_table(dims: tuple) -> dict:
    """``table[e1][e2]`` is the exponent of ``y^e1 * y^e2``, absent when it vanishes."""
    exps = list(itertools.product(*(range(d + 1) for d in dims)))
    table = {}
    for e1 in exps:
        row = {}
        for e2 in exps:
            e = tuple(a + b for a, b in zip(e1, e2))
            if all(x <= d for x, d in zip(e, dims)):
                row[e2] = e
        table[e1] = row
    return table


class TruncatedPolynomial:
    """An element of a :class:`TheoryRing`; immutable."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: TheoryRing, terms: Mapping):
        built = ring.element(terms)
        self.ring = ring
        self.terms = built.terms

    @classmethod
    def _raw(cls, ring: TheoryRing, terms: dict) -> "TruncatedPolynomial":
        obj = object.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    def one_like(self) -> "TruncatedPolynomial":
        return self.ring.one()

    def _same(self, other: "TruncatedPolynomial") -> None:
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def _promote(self, other):
        if isinstance(other, TruncatedPolynomial):
            self._same(other)
            return other
        if isinstance(other, SCALAR_TYPES + (Coefficient,)):
            return self.ring.scalar(other)
        return None

    def __add__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
        return TruncatedPolynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedPolynomial._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if isinstance(other, SCALAR_TYPES + (Coefficient,)):
            c = self.ring.coeff(other)
            if c.is_zero():
                return self.ring.zero()
            out = {e: v * c for e, v in self.terms.items()}
            if c.p > 1:
                out = {e: v for e, v in out.items() if not v.is_zero()}
            return TruncatedPolynomial._raw(self.ring, out)
        if not isinstance(other, TruncatedPolynomial):
            return NotImplemented
        self._same(other)
        table = _product_table(self.ring.space.dims)
        out: dict = {}
        right = list(other.terms.items())
        for e1, c1 in self.terms.items():
            row = table[e1]
            for e2, c2 in right:
                e = row.get(e2)
                if e is None:
                    continue
                prod = c1 * c2
                s = out.get(e)
                out[e] = prod if s is None else s + prod
        return TruncatedPolynomial._raw(
            self.ring, {e: c for e, c in out.items() if not c.is_zero()}
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SCALAR_TYPES + (Coefficient,)):
            return self * invert_coefficient(self.ring.coeff(other))
        if isinstance(other, TruncatedPolynomial):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def constant_term(self) -> Coefficient:
        return self.terms.get((0,) * self.ring.space.nfactors, self.ring.coeff(0))

    def is_unit(self) -> bool:
        return self.constant_term().is_unit()

    def inverse(self) -> "TruncatedPolynomial":
        """Inverse of a unit: geometric series in the nilpotent part."""
        c0 = self.constant_term()
        if not c0.is_unit():
            raise NonUnit(f"{self} is not a unit in {self.ring}")
        inv0 = invert_coefficient(c0)
        minus_n = -(self * inv0 - 1)
        total = self.ring.one()
        power = total
        # (-n)^k vanishes once k exceeds the total degree, or p - 1 extra
        # factors when n lies in e * Q[e][y].
        for _ in range(self.ring.nilpotency + self.ring.p):
            power = power * minus_n
            if power.is_zero():
                break
            total = total + power
        return total * inv0

    def __eq__(self, other):
        if isinstance(other, TruncatedPolynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, SCALAR_TYPES + (Coefficient,)):
            return self == self.ring.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exp: Sequence[int]) -> Coefficient:
        return self.terms.get(tuple(exp), self.ring.coeff(0))

    def coefficients(self) -> list:
        """``(exponent, coefficient)`` pairs in canonical order."""
        return sorted(self.terms.items())

    def homogeneous_part(self, degree: int) -> "TruncatedPolynomial":
        return TruncatedPolynomial._raw(
            self.ring, {e: c for e, c in self.terms.items() if sum(e) == degree}
        )

    def substitute_one(self, factor: int) -> "TruncatedPolynomial":
        """Set ``y_factor := 1`` and drop that variable (target ring has one factor less)."""
        dims = self.ring.space.dims
        target = self.ring.on(Space(dims[:factor] + dims[factor + 1 :]))
        out: dict = {}
        for e, c in self.terms.items():
            key = e[:factor] + e[factor + 1 :]
            out[key] = out[key] + c if key in out else c
        return TruncatedPolynomial._raw(target, {e: c for e, c in out.items() if c})

    def lift(self, p: int) -> "TruncatedPolynomial":
        if p == self.ring.p:
            return self
        return TruncatedPolynomial._raw(
            self.ring.with_p(p), {e: c.lift(p) for e, c in self.terms.items()}
        )

    def relabel(self, ring: TheoryRing) -> "TruncatedPolynomial":
        """Same term map read in another ring with the same space and p."""
        if ring.space != self.ring.space or ring.p != self.ring.p:
            raise RingMismatch(f"cannot relabel {self.ring} as {ring}")
        return TruncatedPolynomial._raw(ring, dict(self.terms))

    def _mono(self, exp) -> str:
        k = len(exp)
        names = ["y"] if k == 1 else [f"y{i + 1}" for i in range(k)]
        return " ".join(n + (f"^{e}" if e > 1 else "") for n, e in zip(names, exp) if e)

    def __str__(self):
        out = []
        for exp, c in self.coefficients():
            mono = self._mono(exp)
            nonzero = [k for k, part in enumerate(c.parts) if part]
            if len(nonzero) == 1:
                neg = c.parts[nonzero[0]] < 0
                mag = -c if neg else c
                if not mono:
                    body = str(mag)
                elif mag == 1:
                    body = mono
                else:
                    body = f"{mag} * {mono}"
            else:
                neg = False
                body = f"({c})" + (f" * {mono}" if mono else "")
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out) if out else "0"

    def __repr__(self):
        return f"<{self.ring}: {self}>"

    def to_dict(self) -> dict:
        return {
            "space": list(self.ring.space.dims),
            "law": self.ring.law,
            "p": self.ring.p,
            "terms": [{"exp": list(e), "coeff": str(c)} for e, c in self.coefficients()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "TruncatedPolynomial":
        ring = TheoryRing(Space(tuple(data["space"])), data["law"], int(data["p"]))
        terms = {tuple(t["exp"]): Coefficient.parse(t["coeff"], ring.p) for t in data["terms"]}
        return ring.element(terms)

    @classmethod
    def from_json(cls, text: str) -> "TruncatedPolynomial":
        return cls.from_dict(json.loads(text))


# -- line bundles and virtual bundles ------------------------------------------------


@dataclass(frozen=True, order=True)
class LineClass:
    """The line bundle ``O(a1, ..., ak)``."""

    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(a) for a in self.degrees))

    def dual(self) -> "LineClass":
        return LineClass(tuple(-a for a in self.degrees))

    def __mul__(self, other: "LineClass") -> "LineClass":
        return LineClass(tuple(a + b for a, b in zip(self.degrees, other.degrees)))

    def power(self, j: int) -> "LineClass":
        return LineClass(tuple(j * a for a in self.degrees))

    def __str__(self):
        return "O(" + ",".join(str(a) for a in self.degrees) + ")"


def O(*degrees) -> LineClass:
    return LineClass(tuple(degrees))


def trivial_line(space: Space) -> LineClass:
    return LineClass((0,) * space.nfactors)


def factor_line(space: Space, i: int, degree: int = 1) -> LineClass:
    return LineClass(tuple(degree if k == i else 0 for k in range(space.nfactors)))


@dataclass(frozen=True)
class VirtualBundle:
    """Integer combination of line bundles on ``space``."""

    space: Space
    combo: tuple = ()

    def __post_init__(self):
        acc: dict = {}
        items = self.combo.items() if isinstance(self.combo, Mapping) else self.combo
        for line, mult in items:
            line = line if isinstance(line, LineClass) else LineClass(tuple(line))
            if len(line.degrees) != self.space.nfactors:
                raise BadParam(f"{line} does not live on {self.space}")
            acc[line] = acc.get(line, 0) + int(mult)
        object.__setattr__(
            self, "combo", tuple(sorted((l, m) for l, m in acc.items() if m))
        )

    @classmethod
    def of(cls, space: Space, mapping: Mapping) -> "VirtualBundle":
        return cls(space, tuple(mapping.items()))

    @classmethod
    def empty(cls, space: Space) -> "VirtualBundle":
        return cls(space, ())

    @property
    def rank(self) -> int:
        return sum(m for _, m in self.combo)

    def items(self):
        return iter(self.combo)

    def _check(self, other: "VirtualBundle") -> None:
        if other.space != self.space:
            raise RingMismatch(f"bundles on {self.space} and {other.space}")

    def __add__(self, other: "VirtualBundle") -> "VirtualBundle":
        self._check(other)
        return VirtualBundle(self.space, self.combo + other.combo)

    def __neg__(self) -> "VirtualBundle":
        return VirtualBundle(self.space, tuple((l, -m) for l, m in self.combo))

    def __sub__(self, other: "VirtualBundle") -> "VirtualBundle":
        return self + (-other)

    def scale(self, n: int) -> "VirtualBundle":
        return VirtualBundle(self.space, tuple((l, n * m) for l, m in self.combo))

    def dual(self) -> "VirtualBundle":
        return VirtualBundle(self.space, tuple((l.dual(), m) for l, m in self.combo))

    def is_empty(self) -> bool:
        return not self.combo

    def __str__(self):
        if not self.combo:
            return "0"
        out = []
        for line, m in self.combo:
            sign = "-" if m < 0 else "+"
            mag = abs(m)
            body = f"{line}" if mag == 1 else f"{mag}*{line}"
            out.append(("-" if m < 0 else "") + body if not out else f" {sign} {body}")
        return "".join(out)


# -- Chern classes and the line basis ------------------------------------------------


def _one_minus_y_power(exponent: int, cap: int) -> list:
    """Coefficients of ``(1 - y)^exponent`` up to ``y^cap`` (any integer exponent)."""
    out = []
    for n in range(cap + 1):
        num = 1
        for i in range(n):
            num *= exponent - i
        out.append((-1) ** n * (num // math.factorial(n)))
    return out


@lru_cache(maxsize=None)
def _line_terms(dims: tuple, degrees: tuple) -> tuple:
    """Monomial expansion of ``O(a) = prod_i (1 - y_i)^(-a_i)``."""
    per_factor = [_one_minus_y_power(-a, d) for a, d in zip(degrees, dims)]
    terms = []
    for exp in itertools.product(*(range(d + 1) for d in dims)):
        value = 1
        for i, e in enumerate(exp):
            value *= per_factor[i][e]
            if not value:
                break
        if value:
            terms.append((exp, value))
    return tuple(terms)


def _require_k(ring: TheoryRing) -> None:
    if ring.law != K:
        raise WrongTheory(f"{ring} is not a K-theory ring")


def line_element(ring: TheoryRing, line: LineClass) -> TruncatedPolynomial:
    """The class ``[O(a)]`` in the K model, in the monomial basis."""
    _require_k(ring)
    if len(line.degrees) != ring.space.nfactors:
        raise BadParam(f"{line} does not live on {ring.space}")
    return TruncatedPolynomial._raw(
        ring, {e: ring.coeff(v) for e, v in _line_terms(ring.space.dims, line.degrees)}
    )


def c1(ring: TheoryRing, line: LineClass) -> TruncatedPolynomial:
    """First Chern class: ``sum a_i y_i`` in CH, ``1 - [O(-a)]`` in K."""
    if len(line.degrees) != ring.space.nfactors:
        raise BadParam(f"{line} does not live on {ring.space}")
    if ring.law == CH:
        terms = {}
        for i, a in enumerate(line.degrees):
            if a:
                terms[tuple(1 if k == i else 0 for k in range(ring.space.nfactors))] = a
        return ring.element(terms)
    return 1 - line_element(ring, line.dual())


def to_lines(a: TruncatedPolynomial) -> dict:
    """Write a K-class in the basis ``{[O(-e)] : 0 <= e_i <= d_i}``.

    Uses ``y_i = 1 - [O(-e_i)]``; the result maps :class:`LineClass` to
    :class:`Coefficient` and omits zero entries.
    """
    _require_k(a.ring)
    return dict(_to_lines_cached(a))


@lru_cache(maxsize=4096)
def _to_lines_cached(a: TruncatedPolynomial) -> dict:
    out: dict = {}
    for exp, c in a.terms.items():
        # y^e = prod_i sum_m C(e_i, m) (-1)^m [O(-m e_i)]
        ranges = [range(e + 1) for e in exp]
        for ms in itertools.product(*ranges):
            weight = 1
            for e, m in zip(exp, ms):
                weight *= (-1) ** m * math.comb(e, m)
            line = LineClass(tuple(-m for m in ms))
            term = c * weight
            out[line] = out[line] + term if line in out else term
    return {l: c for l, c in sorted(out.items()) if not c.is_zero()}


def from_lines(ring: TheoryRing, combo: Mapping) -> TruncatedPolynomial:
    """Inverse of :func:`to_lines`; any line classes are accepted."""
    _require_k(ring)
    total = ring.zero()
    for line, mult in combo.items():
        line = line if isinstance(line, LineClass) else LineClass(tuple(line))
        total = total + line_element(ring, line) * ring.coeff(mult)
    return total


def change_basis(ring: TheoryRing, element, direction: str):
    """Convert between the monomial basis and the line basis of a K ring.

    ``direction`` is ``"to-lines"`` (element is a polynomial) or
    ``"to-monomials"`` (element is a mapping LineClass -> multiplicity).
    """
    if direction == "to-lines":
        if element.ring != ring:
            raise RingMismatch(f"element of {element.ring}, expected {ring}")
        return to_lines(element)
    if direction == "to-monomials":
        return from_lines(ring, element)
    raise BadParam(f"unknown direction {direction!r}")


def evaluate(F: UnivariateSeries, x: TruncatedPolynomial) -> TruncatedPolynomial:
    """``F(x)`` for ``x`` with zero constant term (hence nilpotent)."""
    ring = x.ring
    if not x.constant_term().is_zero():
        raise BadParam(f"cannot evaluate a series at {x}: nonzero constant term")
    need = ring.nilpotency
    if F.order < need:
        raise TruncationError(
            f"series of order {F.order} is too short for {ring} (needs {need})"
        )
    if F.p != ring.p:
        if F.p == 1:
            F = F.lift(ring.p)
        else:
            raise OrderMismatch(f"series has p={F.p}, ring has p={ring.p}")
    F = F.truncate(need)
    acc = ring.scalar(F.coeffs[need])
    for c in reversed(F.coeffs[:need]):
        acc = acc * x + c
    return acc


def x_class(ring: TheoryRing, factor: int = 0) -> TruncatedPolynomial:
    """``c1`` of the tautological bundle ``O(-1)`` of one factor."""
    return c1(ring, factor_line(ring.space, factor, -1))


# -- morphisms ---------------------------------------------------------------------


PROJECTION = "projection"
IMMERSION = "immersion"


@dataclass(frozen=True)
class MorphismDesc:
    """A projection dropping whole factors or a linear immersion in one factor."""

    kind: str
    source: Space
    target: Space
    kept: tuple = ()
    factor: int = -1
    codim: int = 0

    def __str__(self):
        if self.kind == PROJECTION:
            dropped = [i + 1 for i in self.dropped]
            return f"projection {self.source} -> {self.target} (drop {dropped})"
        return (
            f"immersion {self.source} -> {self.target} "
            f"(factor {self.factor + 1}, codim {self.codim})"
        )

    @property
    def dropped(self) -> tuple:
        return tuple(i for i in range(self.source.nfactors) if i not in self.kept)

    @property
    def relative_dimension(self) -> int:
        return self.source.dimension - self.target.dimension


def projection(space: Space, drop: Iterable[int]) -> MorphismDesc:
    """Projection of ``space`` forgetting the factors in ``drop`` (0-based)."""
    drop = set(drop)
    if any(i < 0 or i >= space.nfactors for i in drop):
        raise BadParam(f"factor index out of range for {space}")
    kept = tuple(i for i in range(space.nfactors) if i not in drop)
    target = Space(tuple(space.dims[i] for i in kept))
    return MorphismDesc(PROJECTION, space, target, kept=kept)


def to_point(space: Space) -> MorphismDesc:
    return projection(space, range(space.nfactors))


def identity(space: Space) -> MorphismDesc:
    return projection(space, ())


def immersion(space: Space, factor: int, codim: int) -> MorphismDesc:
    """Linear ``P^(d-c) -> P^d`` in factor ``factor`` of ``space``, identity elsewhere."""
    if factor < 0 or factor >= space.nfactors:
        raise BadParam(f"factor index out of range for {space}")
    d = space.dims[factor]
    if codim < 1 or codim > d:
        raise BadParam(f"codimension must be in 1..{d}, got {codim}")
    dims = list(space.dims)
    dims[factor] = d - codim
    return MorphismDesc(IMMERSION, Space(tuple(dims)), space, factor=factor, codim=codim)


def compose(outer: MorphismDesc, inner: MorphismDesc) -> MorphismDesc:
    """``outer o inner`` for two projections or two immersions in the same factor."""
    if inner.target != outer.source:
        raise BadParam("morphisms are not composable")
    if inner.kind == outer.kind == PROJECTION:
        kept = tuple(inner.kept[k] for k in outer.kept)
        return MorphismDesc(PROJECTION, inner.source, outer.target, kept=kept)
    if inner.kind == outer.kind == IMMERSION and inner.factor == outer.factor:
        return immersion(outer.target, outer.factor, inner.codim + outer.codim)
    raise BadParam("only projection/projection and same-factor immersions compose")


def projections_from(space: Space) -> list:
    """All projections dropping a nonempty set of factors."""
    out = []
    n = space.nfactors
    for r in range(1, n + 1):
        for drop in itertools.combinations(range(n), r):
            out.append(projection(space, drop))
    return out


def immersions_into(space: Space) -> list:
    return [
        immersion(space, i, c)
        for i, d in enumerate(space.dims)
        for c in range(1, d + 1)
    ]


def pullback(m: MorphismDesc, a: TruncatedPolynomial) -> TruncatedPolynomial:
    if a.ring.space != m.target:
        raise RingMismatch(f"element lives on {a.ring.space}, not on {m.target}")
    ring = a.ring.on(m.source)
    if m.kind == PROJECTION:
        n = m.source.nfactors
        out = {}
        for e, c in a.terms.items():
            full = [0] * n
            for k, i in enumerate(m.kept):
                full[i] = e[k]
            out[tuple(full)] = c
        return TruncatedPolynomial._raw(ring, out)
    cap = m.source.dims[m.factor]
    return TruncatedPolynomial._raw(
        ring, {e: c for e, c in a.terms.items() if e[m.factor] <= cap}
    )


def pushforward(m: MorphismDesc, a: TruncatedPolynomial) -> TruncatedPolynomial:
    if a.ring.space != m.source:
        raise RingMismatch(f"element lives on {a.ring.space}, not on {m.source}")
    ring = a.ring.on(m.target)
    if m.kind == IMMERSION:
        # canonical lift, then multiply by y_i^c
        out = {}
        for e, c in a.terms.items():
            e = list(e)
            e[m.factor] += m.codim
            out[tuple(e)] = c
        return TruncatedPolynomial._raw(ring, out)
    dropped = m.dropped
    out: dict = {}
    for e, c in a.terms.items():
        if a.ring.law == CH and any(e[i] != m.source.dims[i] for i in dropped):
            continue
        key = tuple(e[i] for i in m.kept)
        out[key] = out[key] + c if key in out else c
    return TruncatedPolynomial._raw(ring, {e: c for e, c in out.items() if not c.is_zero()})


# -- tangent and normal bundles ------------------------------------------------------


def tangent_bundle(space: Space) -> VirtualBundle:
    """Euler sequence: ``T = sum_i ((d_i + 1) O(e_i) - O(0))``."""
    combo = []
    for i, d in enumerate(space.dims):
        combo.append((factor_line(space, i), d + 1))
        combo.append((trivial_line(space), -1))
    return VirtualBundle(space, tuple(combo))


def normal_bundle(m: MorphismDesc) -> VirtualBundle:
    if m.kind != IMMERSION:
        raise NotImmersion(f"{m} is not an immersion")
    return VirtualBundle(m.source, ((factor_line(m.source, m.factor), m.codim),))


def relative_tangent(m: MorphismDesc) -> VirtualBundle:
    """``T_f = T_source - f^* T_target`` as a bundle on the source."""
    if m.kind == IMMERSION:
        return -normal_bundle(m)
    combo = []
    for i in m.dropped:
        combo.append((factor_line(m.source, i), m.source.dims[i] + 1))
        combo.append((trivial_line(m.source), -1))
    return VirtualBundle(m.source, tuple(combo))


def euler_characteristic_oracle(d: int, n: int) -> int:
    """``chi(P^d, O(n))`` by counting monomials and Serre duality."""
    if n >= 0:
        return math.comb(n + d, d)
    if n >= -d:
        return 0
    return (-1) ** d * math.comb(-n - 1, d)
