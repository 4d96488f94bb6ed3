"""Characteristic classes: additive and multiplicative extensions of series.

Every K-class of a product of projective spaces is a combination of line
bundles, so extensions are computed on the line basis: ``F_+`` sends
``[L]`` to ``F(c1(L))`` and ``F_x`` sends ``L`` to ``F(c1(L))``
multiplicatively.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .coeff import Coefficient
from .errors import (
    BadParam,
    NewtonMismatch,
    NonUnit,
    NonUnitFactor,
    RingMismatch,
    TruncationError,
    WrongTheory,
)
from .model import (
    CH,
    K,
    LineClass,
    TheoryRing,
    TruncatedPolynomial,
    VirtualBundle,
    c1,
    evaluate,
    from_lines,
    line_element,
    linear_combination,
    to_lines,
)
from .series import UnivariateSeries, builtin_series


def _series_at(F: UnivariateSeries, ring: TheoryRing) -> UnivariateSeries:
    if F.order < ring.nilpotency:
        raise TruncationError(f"series of order {F.order} too short for {ring}")
    return F


@lru_cache(maxsize=8192)
def _value_on_line(F: UnivariateSeries, ring: TheoryRing, line: LineClass) -> TruncatedPolynomial:
    return evaluate(F, c1(ring, line))


def additive_extension(
    F: UnivariateSeries, a: TruncatedPolynomial, target: TheoryRing
) -> TruncatedPolynomial:
    """``F_+(a) = sum_L mult(L) F(c1(L))`` with ``c1`` taken in ``target``."""
    if a.ring.law != K:
        raise WrongTheory("additive extensions are defined on K-classes")
    if target.space != a.ring.space:
        raise RingMismatch(f"{a.ring} and {target} live on different spaces")
    _series_at(F, target)
    total = target.zero()
    for line, mult in to_lines(a).items():
        total = total + _value_on_line(F, target, line) * target.coeff(mult)
    return total


def multiplicative_extension(
    F: UnivariateSeries, E: VirtualBundle, ring: TheoryRing
) -> TruncatedPolynomial:
    """``F_x(E) = prod_L F(c1(L))^mult(L)``; negative powers need ``F(0)`` a unit."""
    if E.space != ring.space:
        raise RingMismatch(f"bundle on {E.space}, ring on {ring.space}")
    _series_at(F, ring)
    result = ring.one()
    for line, mult in E.items():
        value = _value_on_line(F, ring, line)
        if mult < 0:
            try:
                value = value.inverse()
            except NonUnit as exc:
                raise NonUnitFactor(
                    f"negative multiplicity of {line} needs {F} to be invertible"
                ) from exc
        result = result * value ** abs(mult)
    return result


def adams(j: int, a: TruncatedPolynomial) -> TruncatedPolynomial:
    """``psi^j``: ``[O(a)] -> [O(j a)]`` on the line basis; ``psi^0`` is the rank."""
    ring = a.ring
    if ring.law != K:
        raise WrongTheory("Adams operations act on the K model")
    total = ring.zero()
    for line, mult in to_lines(a).items():
        total = total + line_element(ring, line.power(j)) * mult
    return total


def chern_character(a: TruncatedPolynomial, ch_ring: Optional[TheoryRing] = None) -> TruncatedPolynomial:
    """Additive extension of ``exp`` (``exp(e t)`` when ``ch_ring.p >= 2``)."""
    if a.ring.law != K:
        raise WrongTheory("the Chern character is defined on K-classes")
    if ch_ring is None:
        ch_ring = a.ring.with_law(CH)
    if ch_ring.law != CH:
        raise WrongTheory("the Chern character lands in the additive model")
    order = ch_ring.nilpotency
    if ch_ring.p == 1:
        F = builtin_series("Exp", order)
    else:
        F = builtin_series("ExpEps", order, p=ch_ring.p)
    return additive_extension(F, a.lift(ch_ring.p), ch_ring)


def theta(j: int, E: VirtualBundle, ring: TheoryRing) -> TruncatedPolynomial:
    """Bott's class ``theta^j(E)``, computed as ``B^j_x(E*)``."""
    if j == 0:
        raise BadParam("theta^0 is not defined")
    if ring.law != K:
        raise WrongTheory("Bott classes live in the K model")
    return multiplicative_extension(builtin_series("Bj", ring.nilpotency, j=j), E.dual(), ring)


def theta_literal(j: int, E: VirtualBundle, ring: TheoryRing) -> TruncatedPolynomial:
    """``theta^j`` from ``theta^j(L) = (1 - L^j) / (1 - L)`` written as a Laurent polynomial.

    For ``j > 0`` this is ``1 + L + ... + L^(j-1)``; for ``j < 0`` it is
    ``-(L^j + ... + L^-1)``.
    """
    if j == 0:
        raise BadParam("theta^0 is not defined")
    if ring.law != K:
        raise WrongTheory("Bott classes live in the K model")
    powers = range(j) if j > 0 else range(j, 0)
    sign = 1 if j > 0 else -1
    result = ring.one()
    for line, mult in E.items():
        value = ring.zero()
        for k in powers:
            value = value + line_element(ring, line.power(k))
        value = value * sign
        if mult < 0:
            value = value.inverse()
        result = result * value ** abs(mult)
    return result


def chern_classes(E: VirtualBundle, ring: TheoryRing) -> list:
    """Total Chern class ``prod_L (1 + c1(L) t)^mult`` as ``[c_0, ..., c_N]``.

    ``c_k`` lies in the k-th power of the ideal of Chern classes, so nothing
    beyond ``N`` = dim survives.
    """
    if E.space != ring.space:
        raise RingMismatch(f"bundle on {E.space}, ring on {ring.space}")
    n = ring.nilpotency
    total = [ring.one()] + [ring.zero()] * n
    for line, mult in E.items():
        x = c1(ring, line)
        if mult > 0:
            factor = [ring.one(), x] + [ring.zero()] * (n - 1)
        else:
            # (1 + x t)^-1 = sum_k (-x)^k t^k
            factor = [(-x) ** k for k in range(n + 1)]
        for _ in range(abs(mult)):
            total = _poly_mul(total, factor[: n + 1], n)
    return total


def _poly_mul(a: list, b: list, n: int) -> list:
    out = [a[0].ring.zero() for _ in range(n + 1)]
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for k in range(n + 1 - i):
            if k < len(b) and not b[k].is_zero():
                out[i + k] = out[i + k] + ai * b[k]
    return out


def power_sum(m: int, E: VirtualBundle, ring: TheoryRing) -> TruncatedPolynomial:
    """``s_m(E)`` as the additive extension of ``t^m`` (via the K line basis)."""
    k_ring = TheoryRing(ring.space, K, ring.p)
    kclass = from_lines(k_ring, dict(E.items()))
    return additive_extension(builtin_series("Power", max(ring.nilpotency, m), m=m), kclass, ring)


def newton_s(m: int, E: VirtualBundle, ring: TheoryRing) -> TruncatedPolynomial:
    """``s_m(E)`` computed directly and through Newton's identities; both must agree."""
    if m < 0:
        raise BadParam("m must be >= 0")
    direct = power_sum(m, E, ring)
    c = chern_classes(E, ring)
    n = ring.nilpotency

    def e(k):
        return c[k] if k <= n else ring.zero()

    s = [ring.scalar(E.rank)]
    for k in range(1, m + 1):
        acc = e(k) * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            acc = acc + e(i) * s[k - i] * ((-1) ** (i - 1))
        s.append(acc)
    if s[m] != direct:
        raise NewtonMismatch(f"s_{m}({E}): direct {direct} vs Newton {s[m]}")
    return direct


def phi_grading(j: int, a: TruncatedPolynomial) -> TruncatedPolynomial:
    """Multiply the degree-n part by ``j^n`` (Chow model only)."""
    if a.ring.law != CH:
        raise WrongTheory("the grading operator needs the graded (Chow) model")
    scaled = ((e, c * j ** sum(e)) for e, c in a.terms.items())
    return TruncatedPolynomial._raw(a.ring, {e: c for e, c in scaled if not c.is_zero()})


# -- named transformations -------------------------------------------------------------


ADAMS = "adams"
CHERN = "ch"
TWISTED = "ch-eps"
ADD_EXT = "add-ext"
MULT_EXT = "mult-ext"
IDENTITY = "id"


@dataclass(frozen=True)
class Transformation:
    """A natural transformation out of the K model (or the identity on any model).

    Extension kinds carry a builtin series by name together with its
    parameters, so the series can be produced at whatever order a ring needs.
    """

    kind: str
    j: Optional[int] = None
    p: int = 1
    series_name: Optional[str] = None
    series_params: tuple = ()
    target_law: str = K

    @property
    def source_law(self) -> Optional[str]:
        return None if self.kind == IDENTITY else K

    def series(self, order: int) -> UnivariateSeries:
        """The series whose additive (or multiplicative) extension this is."""
        if self.kind == ADAMS:
            return builtin_series("OneMinusTPow", order, j=self.j)
        if self.kind == CHERN:
            return builtin_series("Exp", order)
        if self.kind == TWISTED:
            return builtin_series("ExpEps", order, p=self.p)
        if self.kind in (ADD_EXT, MULT_EXT):
            return builtin_series(self.series_name, order, **dict(self.series_params))
        raise BadParam(f"{self} has no defining series")

    def target_ring(self, source: TheoryRing) -> TheoryRing:
        if self.kind == IDENTITY:
            return source
        return TheoryRing(source.space, self.target_law, max(self.p, source.p))

    def __call__(self, a: TruncatedPolynomial) -> TruncatedPolynomial:
        if self.kind == IDENTITY:
            return a
        if a.ring.law != K:
            raise WrongTheory(f"{self} acts on K-classes, got {a.ring}")
        target = self.target_ring(a.ring)
        a = a.lift(target.p)
        if self.kind != MULT_EXT:
            # linear: combine cached images of the monomials
            return linear_combination(
                target, [(self._on_monomial(a.ring, exp), c) for exp, c in a.terms.items()]
            )
        return self._apply(a, target)

    @lru_cache(maxsize=None)
    def _on_monomial(self, ring: TheoryRing, exp: tuple) -> TruncatedPolynomial:
        return self._apply(ring.monomial(exp), self.target_ring(ring))

    def _apply(self, a: TruncatedPolynomial, target: TheoryRing) -> TruncatedPolynomial:
        if self.kind == ADAMS:
            return adams(self.j, a)
        if self.kind in (CHERN, TWISTED):
            return chern_character(a, target)
        if self.kind == ADD_EXT:
            return additive_extension(self.series(target.nilpotency), a, target)
        # multiplicative extension of a virtual bundle; needs integral multiplicities
        combo = {}
        for line, mult in to_lines(a).items():
            if not mult.is_rational() or mult.parts[0].denominator != 1:
                raise BadParam(f"{a} is not a virtual bundle (multiplicity {mult})")
            combo[line] = int(mult.parts[0])
        E = VirtualBundle(a.ring.space, tuple(combo.items()))
        return multiplicative_extension(self.series(target.nilpotency), E, target)

    def __str__(self):
        if self.kind == ADAMS:
            return f"psi:{self.j}"
        if self.kind == TWISTED:
            return f"ch-eps:{self.p}"
        if self.kind in (ADD_EXT, MULT_EXT):
            params = ",".join(f"{k}={v}" for k, v in self.series_params)
            out = f"{self.kind}:{self.series_name}"
            if params:
                out += f":{params}"
            return out + f"@{self.target_law}"
        return self.kind


def adams_op(j: int) -> Transformation:
    return Transformation(ADAMS, j=j, target_law=K)


def chern_op() -> Transformation:
    return Transformation(CHERN, target_law=CH)


def twisted_chern_op(p: int) -> Transformation:
    if p < 2:
        raise BadParam("the twisted Chern character needs p >= 2")
    return Transformation(TWISTED, p=p, target_law=CH)


def identity_op() -> Transformation:
    return Transformation(IDENTITY)


def additive_ext_op(name: str, target_law: str = CH, **params) -> Transformation:
    p = int(params.get("p", 1))
    return Transformation(
        ADD_EXT, p=p, series_name=name, series_params=tuple(sorted(params.items())),
        target_law=target_law,
    )


def multiplicative_ext_op(name: str, target_law: str = CH, **params) -> Transformation:
    p = int(params.get("p", 1))
    return Transformation(
        MULT_EXT, p=p, series_name=name, series_params=tuple(sorted(params.items())),
        target_law=target_law,
    )


def parse_transformation(text: str) -> Transformation:
    """Parse ``psi:<j>``, ``ch``, ``ch-eps:<p>``, ``id``,
    ``add-ext:<series>[:k=v,...][@CH|@K]`` or ``mult-ext:...``."""
    text = text.strip()
    if text == "ch":
        return chern_op()
    if text == "id":
        return identity_op()
    head, _, rest = text.partition(":")
    if head == "psi":
        try:
            return adams_op(int(rest))
        except ValueError:
            raise BadParam(f"psi needs an integer, got {rest!r}") from None
    if head == "ch-eps":
        try:
            return twisted_chern_op(int(rest))
        except ValueError:
            raise BadParam(f"ch-eps needs an integer p, got {rest!r}") from None
    if head in (ADD_EXT, MULT_EXT):
        body, _, law = rest.partition("@")
        law = law or CH
        if law not in (CH, K):
            raise BadParam(f"target law must be CH or K, got {law!r}")
        name, _, params_text = body.partition(":")
        params = {}
        if params_text:
            for item in params_text.split(","):
                key, _, value = item.partition("=")
                if key not in ("j", "p", "m"):
                    raise BadParam(f"unknown series parameter {key!r}")
                params[key] = int(value)
        builder = additive_ext_op if head == ADD_EXT else multiplicative_ext_op
        return builder(name, law, **params)
    raise BadParam(f"unknown transformation {text!r}")
