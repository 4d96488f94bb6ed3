"""Order-truncated power series, formal group laws and the named series.

A :class:`UnivariateSeries` of order ``D`` keeps the coefficients of
``t^0 .. t^D``; a :class:`MultiSeries` keeps every monomial of total degree
at most ``D``.  Binary operations truncate to the smaller order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .coeff import SCALAR_TYPES, Coefficient, invert_coefficient
from .errors import (
    BadParam,
    CompositionConstantTerm,
    InvalidGroupLaw,
    NonUnit,
    NoSolution,
    OrderMismatch,
)
from .report import VerificationReport


def _coeff(value, p: int) -> Coefficient:
    if isinstance(value, Coefficient):
        return value.lift(p)
    return Coefficient.scalar(value, p)


def _term(c: Coefficient, mono: str, first: bool) -> str:
    """Render ``c * mono`` with the sign pulled out front."""
    nonzero = [k for k, part in enumerate(c.parts) if part]
    if len(nonzero) == 1:
        value = c.parts[nonzero[0]]
        neg, mag = value < 0, Coefficient(tuple(abs(x) for x in c.parts))
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
    else:
        neg = False
        body = f"({c})" + (f"*{mono}" if mono else "")
    if first:
        return ("-" if neg else "") + body
    return (" - " if neg else " + ") + body


class UnivariateSeries:
    """Truncated series ``sum_{n <= D} c_n t^n`` over Q[e]/(e^p)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence, p: int = 1):
        if not coeffs:
            raise BadParam("a series needs at least one coefficient")
        self.coeffs = tuple(_coeff(c, p) for c in coeffs)
        if len({c.p for c in self.coeffs}) != 1:
            raise OrderMismatch("coefficients with mixed nilpotency order")

    @classmethod
    def _raw(cls, coeffs: tuple) -> "UnivariateSeries":
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        return obj

    @classmethod
    def constant(cls, value, order: int, p: int = 1) -> "UnivariateSeries":
        return cls([value] + [0] * order, p)

    @classmethod
    def variable(cls, order: int, p: int = 1) -> "UnivariateSeries":
        return cls([1 if n == 1 else 0 for n in range(order + 1)], p)

    def one_like(self) -> "UnivariateSeries":
        return UnivariateSeries.constant(1, self.order, self.p)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def p(self) -> int:
        return self.coeffs[0].p

    def __getitem__(self, key: int) -> Coefficient:
        if key > self.order:
            raise IndexError(f"t^{key} beyond order {self.order}")
        return self.coeffs[key]

    def truncate(self, order: int) -> "UnivariateSeries":
        if order > self.order:
            raise BadParam(f"cannot extend order {self.order} to {order}")
        return UnivariateSeries._raw(self.coeffs[: order + 1])

    def lift(self, p: int) -> "UnivariateSeries":
        return UnivariateSeries._raw(tuple(c.lift(p) for c in self.coeffs))

    def _pair(self, other):
        if isinstance(other, UnivariateSeries):
            n = min(self.order, other.order)
            return self.coeffs[: n + 1], other.coeffs[: n + 1]
        if isinstance(other, SCALAR_TYPES + (Coefficient,)):
            c = _coeff(other, self.p)
            zero = Coefficient.scalar(0, self.p)
            return self.coeffs, (c,) + (zero,) * self.order
        return None

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return UnivariateSeries._raw(tuple(a + b for a, b in zip(*pair)))

    __radd__ = __add__

    def __neg__(self):
        return UnivariateSeries._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return UnivariateSeries._raw(tuple(a - b for a, b in zip(*pair)))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if isinstance(other, SCALAR_TYPES + (Coefficient,)):
            return UnivariateSeries._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, UnivariateSeries):
            return NotImplemented
        return series_multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return series_invert(self) ** (-n)
        result = UnivariateSeries.constant(1, self.order, self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, UnivariateSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def shift_down(self) -> "UnivariateSeries":
        """Divide by ``t``; the constant term must vanish.  Order drops by one."""
        if self.coeffs[0]:
            raise BadParam("series has a constant term; cannot divide by t")
        if self.order == 0:
            raise BadParam("order-0 series cannot be divided by t")
        return UnivariateSeries._raw(self.coeffs[1:])

    def shift_up(self) -> "UnivariateSeries":
        """Multiply by ``t``; the order grows by one."""
        return UnivariateSeries._raw((Coefficient.scalar(0, self.p),) + self.coeffs)

    def __call__(self, x):
        """Evaluate at ``x`` by Horner's rule.

        ``x`` may be another series (composition) or any ring element that
        supports addition and multiplication by :class:`Coefficient`.  The
        caller guarantees that truncation is harmless in the target ring.
        """
        if isinstance(x, UnivariateSeries):
            return series_compose(self, x)
        if isinstance(x, MultiSeries):
            return _evaluate_on_multi(self, x)
        acc = None
        for c in reversed(self.coeffs):
            acc = c * x.one_like() if acc is None else acc * x + c
        return acc

    def __repr__(self):
        return f"UnivariateSeries({self})"

    def __str__(self):
        out = []
        for n, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if n == 0 else ("t" if n == 1 else f"t^{n}")
            out.append(_term(c, mono, not out))
        return "".join(out) if out else "0"

    def to_strings(self) -> list:
        return [str(c) for c in self.coeffs]


def series_multiply(f: UnivariateSeries, g: UnivariateSeries) -> UnivariateSeries:
    """Cauchy product truncated to the smaller order."""
    n = min(f.order, g.order)
    a, b = f.coeffs, g.coeffs
    zero = Coefficient.scalar(0, f.p)
    out = [zero] * (n + 1)
    for i in range(n + 1):
        if a[i].is_zero():
            continue
        ai = a[i]
        for k in range(n + 1 - i):
            if b[k]:
                out[i + k] = out[i + k] + ai * b[k]
    return UnivariateSeries._raw(tuple(out))


def series_compose(f: UnivariateSeries, g: UnivariateSeries) -> UnivariateSeries:
    """``f(g(t))`` truncated to the smaller order; ``g(0)`` must be zero."""
    if g.coeffs[0]:
        raise CompositionConstantTerm(f"inner series has constant term {g.coeffs[0]}")
    n = min(f.order, g.order)
    g = g.truncate(n)
    acc = UnivariateSeries.constant(f.coeffs[n], n, f.p)
    for c in reversed(f.coeffs[:n]):
        acc = acc * g + c
    return acc


def series_invert(f: UnivariateSeries) -> UnivariateSeries:
    """Multiplicative inverse up to the order of ``f``."""
    a = f.coeffs
    if not a[0].is_unit():
        raise NonUnit(f"constant term {a[0]} is not a unit")
    b0 = invert_coefficient(a[0])
    b = [b0]
    for n in range(1, len(a)):
        acc = Coefficient.scalar(0, f.p)
        for k in range(1, n + 1):
            if a[k]:
                acc = acc + a[k] * b[n - k]
        b.append(-(b0 * acc))
    return UnivariateSeries._raw(tuple(b))


# -- named series -------------------------------------------------------------


def _binom(top: int, k: int) -> int:
    """Generalized binomial coefficient C(top, k) for any integer ``top``."""
    num = 1
    for i in range(k):
        num *= top - i
    return num // math.factorial(k)


def _need_j(name: str, j, allow_zero: bool = False) -> int:
    if j is None:
        raise BadParam(f"{name} needs the parameter j")
    if j == 0 and not allow_zero:
        raise BadParam(f"{name} is not defined for j = 0")
    return int(j)


def _need_eps(name: str, p: int) -> None:
    if p < 2:
        raise BadParam(f"{name} needs a nilpotent e, i.e. p >= 2 (got p={p})")


def _adams_bj(order, j, p, m):
    j = _need_j("Bj", j)
    return [(-1) ** n * _binom(j, n + 1) for n in range(order + 1)]


def _todd_inverse(order, j, p, m):
    return [Fraction((-1) ** n, math.factorial(n + 1)) for n in range(order + 1)]


def _scaled_todd_inverse(order, j, p, m):
    j = _need_j("Sj", j)
    return [Fraction((-1) ** n * j ** (n + 1), math.factorial(n + 1)) for n in range(order + 1)]


def _one_minus_t_pow(order, j, p, m):
    j = _need_j("OneMinusTPow", j, allow_zero=True)
    return [(-1) ** n * _binom(-j, n) for n in range(order + 1)]


def _exp(order, j, p, m):
    return [Fraction(1, math.factorial(n)) for n in range(order + 1)]


def _eps_power(k: int, p: int) -> Coefficient:
    parts = [0] * p
    if k < p:
        parts[k] = 1
    return Coefficient(parts)


def _exp_eps(order, j, p, m):
    _need_eps("ExpEps", p)
    return [_eps_power(n, p) * Fraction(1, math.factorial(n)) for n in range(order + 1)]


def _twisted_todd_inverse(order, j, p, m):
    _need_eps("TwistedT", p)
    return [
        _eps_power(n + 1, p) * Fraction((-1) ** n, math.factorial(n + 1))
        for n in range(order + 1)
    ]


def _monomial(order, j, p, m):
    if m is None or m < 1:
        raise BadParam("Monomial needs m >= 1")
    return [(-1) ** (m - 1) if n == m - 1 else 0 for n in range(order + 1)]


def _power(order, j, p, m):
    if m is None or m < 0:
        raise BadParam("Power needs m >= 0")
    return [1 if n == m else 0 for n in range(order + 1)]


def _todd(order, j, p, m):
    return series_invert(UnivariateSeries(_todd_inverse(order, j, p, m))).coeffs


def _geometric(order, j, p, m):
    return [1] * (order + 1)


_BUILTINS: dict[str, Callable] = {
    "Bj": _adams_bj,
    "T": _todd_inverse,
    "Sj": _scaled_todd_inverse,
    "OneMinusTPow": _one_minus_t_pow,
    "Exp": _exp,
    "ExpEps": _exp_eps,
    "Monomial": _monomial,
    "TwistedT": _twisted_todd_inverse,
    "Power": _power,
    "Todd": _todd,
    "Geometric": _geometric,
}

BUILTIN_NAMES = tuple(_BUILTINS)


def builtin_series(
    name: str,
    order: int,
    *,
    j: Optional[int] = None,
    p: int = 1,
    m: Optional[int] = None,
) -> UnivariateSeries:
    """Exact truncation of one of the named series.

    ``Bj``            (1 - (1-t)^j)/t
    ``T``             (1 - e^-t)/t
    ``Sj``            (1 - e^-jt)/t
    ``OneMinusTPow``  (1 - t)^-j, the series whose additive extension is psi^j
    ``Exp``           e^t
    ``ExpEps``        e^(e t)
    ``Monomial``      (-t)^(m-1)
    ``TwistedT``      (1 - e^(-e t))/t
    ``Power``         t^m
    ``Todd``          t/(1 - e^-t)
    ``Geometric``     1/(1 - t)
    """
    if order < 0:
        raise BadParam("order must be >= 0")
    try:
        build = _BUILTINS[name]
    except KeyError:
        raise BadParam(f"unknown series {name!r}; expected one of {BUILTIN_NAMES}") from None
    return UnivariateSeries(build(order, j, p, m), p)


# -- several variables ---------------------------------------------------------


class MultiSeries:
    """Series in ``nvars`` variables truncated at total degree ``order``."""

    __slots__ = ("nvars", "order", "p", "terms")

    def __init__(self, nvars: int, order: int, terms: dict | None = None, p: int = 1):
        self.nvars = nvars
        self.order = order
        self.p = p
        self.terms = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != nvars:
                raise BadParam(f"exponent {exp} has wrong length")
            c = _coeff(c, p)
            if sum(exp) <= order and not c.is_zero():
                self.terms[exp] = c

    @classmethod
    def _raw(cls, nvars, order, p, terms) -> "MultiSeries":
        obj = object.__new__(cls)
        obj.nvars, obj.order, obj.p, obj.terms = nvars, order, p, terms
        return obj

    @classmethod
    def gen(cls, i: int, nvars: int, order: int, p: int = 1) -> "MultiSeries":
        exp = tuple(1 if k == i else 0 for k in range(nvars))
        return cls(nvars, order, {exp: 1}, p)

    def one_like(self) -> "MultiSeries":
        return MultiSeries._raw(
            self.nvars, self.order, self.p, {(0,) * self.nvars: Coefficient.scalar(1, self.p)}
        )

    def zero_like(self) -> "MultiSeries":
        return MultiSeries._raw(self.nvars, self.order, self.p, {})

    def lift(self, p: int) -> "MultiSeries":
        if p == self.p:
            return self
        return MultiSeries._raw(
            self.nvars, self.order, p, {e: c.lift(p) for e, c in self.terms.items()}
        )

    def truncate(self, order: int) -> "MultiSeries":
        return MultiSeries._raw(
            self.nvars,
            order,
            self.p,
            {e: c for e, c in self.terms.items() if sum(e) <= order},
        )

    def constant_term(self) -> Coefficient:
        return self.terms.get((0,) * self.nvars, Coefficient.scalar(0, self.p))

    def _check(self, other: "MultiSeries") -> int:
        if other.nvars != self.nvars:
            raise BadParam("series in different numbers of variables")
        if other.p != self.p:
            raise OrderMismatch(f"cannot mix p={self.p} with p={other.p}")
        return min(self.order, other.order)

    def _as_series(self, other):
        if isinstance(other, MultiSeries):
            return other
        if isinstance(other, SCALAR_TYPES + (Coefficient,)):
            return MultiSeries._raw(
                self.nvars, self.order, self.p, {(0,) * self.nvars: _coeff(other, self.p)}
            ) if other else self.zero_like()
        return None

    def __add__(self, other):
        other = self._as_series(other)
        if other is None:
            return NotImplemented
        order = self._check(other)
        out = {e: c for e, c in self.terms.items() if sum(e) <= order}
        for e, c in other.terms.items():
            if sum(e) > order:
                continue
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return MultiSeries._raw(self.nvars, order, self.p, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiSeries._raw(
            self.nvars, self.order, self.p, {e: -c for e, c in self.terms.items()}
        )

    def __sub__(self, other):
        other = self._as_series(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if isinstance(other, SCALAR_TYPES + (Coefficient,)):
            if not other:
                return self.zero_like()
            return MultiSeries._raw(
                self.nvars, self.order, self.p, {e: c * other for e, c in self.terms.items()}
            )
        if not isinstance(other, MultiSeries):
            return NotImplemented
        order = self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            if d1 > order:
                continue
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > order:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                prod = c1 * c2
                out[e] = prod if s is None else s + prod
        return MultiSeries._raw(
            self.nvars, order, self.p, {e: c for e, c in out.items() if not c.is_zero()}
        )

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise BadParam("negative powers of multivariate series are not supported")
        result = self.one_like()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, MultiSeries):
            return (
                self.nvars == other.nvars
                and self.order == other.order
                and self.terms == other.terms
            )
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def swap(self, i: int, k: int) -> "MultiSeries":
        def sw(e):
            e = list(e)
            e[i], e[k] = e[k], e[i]
            return tuple(e)

        return MultiSeries._raw(
            self.nvars, self.order, self.p, {sw(e): c for e, c in self.terms.items()}
        )

    def substitute(self, values: Sequence):
        """Replace variable ``i`` by ``values[i]``.

        The values must share a ring and have zero constant term, so the
        truncation of ``self`` is harmless when the target order does not
        exceed ``self.order``.
        """
        if len(values) != self.nvars:
            raise BadParam("one value per variable is required")
        one = values[0].one_like()
        powers = [[one] for _ in values]
        result = None
        for e, c in sorted(self.terms.items()):
            mono = one
            for i, k in enumerate(e):
                while len(powers[i]) <= k:
                    powers[i].append(powers[i][-1] * values[i])
                if k:
                    mono = mono * powers[i][k]
            term = mono * c
            result = term if result is None else result + term
        if result is None:
            result = one * 0
        return result

    def lowest_degree(self) -> Optional[int]:
        return min((sum(e) for e in self.terms), default=None)

    def __repr__(self):
        return f"MultiSeries({self})"

    def __str__(self):
        names = "uvw" if self.nvars <= 3 else None
        out = []
        for e, c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0]))):
            mono = " ".join(
                (names[i] if names else f"x{i + 1}") + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(e)
                if k
            )
            out.append(_term(c, mono, not out))
        return "".join(out) if out else "0"


class BivariateSeries(MultiSeries):
    """Series in ``u, v`` truncated at total degree ``order``."""

    __slots__ = ()

    def __init__(self, order: int, terms: dict | None = None, p: int = 1):
        super().__init__(2, order, terms, p)

    @classmethod
    def from_multi(cls, s: MultiSeries) -> "BivariateSeries":
        obj = object.__new__(cls)
        obj.nvars, obj.order, obj.p, obj.terms = 2, s.order, s.p, dict(s.terms)
        return obj


def _univariate_as_multi(f: UnivariateSeries, var: int, nvars: int, order: int) -> MultiSeries:
    terms = {}
    for n, c in enumerate(f.coeffs[: order + 1]):
        if not c.is_zero():
            terms[tuple(n if k == var else 0 for k in range(nvars))] = c
    return MultiSeries._raw(nvars, order, f.p, terms)


# -- formal group laws -----------------------------------------------------------


@dataclass(frozen=True)
class GroupLaw:
    tag: str
    order: int
    series: BivariateSeries

    @property
    def p(self) -> int:
        return self.series.p

    def __call__(self, u, v):
        return self.series.substitute([u, v])


def _standard_law(tag: str, order: int, p: int) -> BivariateSeries:
    if tag == "additive":
        return BivariateSeries(order, {(1, 0): 1, (0, 1): 1}, p)
    if tag == "multiplicative":
        return BivariateSeries(order, {(1, 0): 1, (0, 1): 1, (1, 1): -1}, p)
    raise BadParam(f"unknown group law {tag!r}")


def group_law(tag: str, order: int, custom: BivariateSeries | None = None, p: int = 1) -> GroupLaw:
    """``additive``, ``multiplicative`` or ``custom`` (validated) group law."""
    tag = tag.lower()
    if tag == "custom":
        if custom is None:
            raise BadParam("a custom law needs its bivariate series")
        report = check_group_law(custom)
        if not report.passed:
            raise InvalidGroupLaw(report.summary())
        return GroupLaw("custom", custom.order, custom)
    return GroupLaw(tag, order, _standard_law(tag, order, p))


def _opp_from_series(f: MultiSeries) -> UnivariateSeries:
    order = f.order
    p = f.p
    lead = f.terms.get((0, 1), Coefficient.scalar(0, p))
    if not lead.is_unit():
        raise NoSolution("coefficient of v in f(u, v) is not a unit")
    inv_lead = invert_coefficient(lead)
    opp = UnivariateSeries.constant(0, order, p)
    u = UnivariateSeries.variable(order, p)
    for n in range(1, order + 1):
        residual = f.substitute([u, opp])
        c = residual.coeffs[n]
        if c:
            coeffs = list(opp.coeffs)
            coeffs[n] = coeffs[n] - c * inv_lead
            opp = UnivariateSeries._raw(tuple(coeffs))
    if not f.substitute([u, opp]).is_zero():
        raise NoSolution("triangular solve for opp left a nonzero residual")
    return opp


def opp_series(law: GroupLaw) -> UnivariateSeries:
    """The inverse series ``opp`` with ``f(u, opp(u)) = 0``, solved degree by degree."""
    return _opp_from_series(law.series)


def check_group_law(f: MultiSeries) -> VerificationReport:
    """Check the commutative group axioms for ``f(u, v)`` up to its order."""
    order, p = f.order, f.p
    report = VerificationReport("group-law", {"law": str(f), "order": order, "p": p})
    u2 = MultiSeries.gen(0, 2, order, p)
    report.add("(a) f(u,v) = f(v,u)", f, f.swap(0, 1))
    f_u0 = MultiSeries._raw(2, order, p, {e: c for e, c in f.terms.items() if e[1] == 0})
    report.add("(b) f(u,0) = u", f_u0, u2)
    u3, v3, w3 = (MultiSeries.gen(i, 3, order, p) for i in range(3))
    left = f.substitute([u3, f.substitute([v3, w3])])
    right = f.substitute([f.substitute([u3, v3]), w3])
    report.add("(c) f(u,f(v,w)) = f(f(u,v),w)", left, right)
    try:
        opp = _opp_from_series(f)
    except NoSolution as exc:
        report.add_residual("(d) f(u,opp(u)) = 0", "no solution", "0", f"NoSolution: {exc}")
    else:
        u1 = UnivariateSeries.variable(order, p)
        value = f.substitute([u1, opp])
        report.add("(d) f(u,opp(u)) = 0", value, UnivariateSeries.constant(0, order, p))
        report.params["opp"] = str(opp)
    return report


def check_multiplicativity(F: UnivariateSeries, law: GroupLaw) -> VerificationReport:
    """Compare ``F(u) F(v)`` with ``F(f(u, v))`` as bivariate series."""
    order = min(F.order, law.order)
    p = max(F.p, law.p)
    F = F.lift(p)
    fl = law.series.lift(p).truncate(order)
    u = _univariate_as_multi(F, 0, 2, order)
    v = _univariate_as_multi(F, 1, 2, order)
    lhs = u * v
    rhs = _evaluate_on_multi(F, fl)
    report = VerificationReport(
        "multiplicativity", {"series": str(F), "law": law.tag, "order": order, "p": p}
    )
    report.add("F(u) F(v) = F(f(u,v))", lhs, rhs)
    return report


def _evaluate_on_multi(F: UnivariateSeries, x: MultiSeries) -> MultiSeries:
    if not x.constant_term().is_zero():
        raise CompositionConstantTerm("argument has a nonzero constant term")
    order = min(F.order, x.order)
    x = x.truncate(order)
    acc = x.one_like() * F.coeffs[order]
    for c in reversed(F.coeffs[:order]):
        acc = acc * x + c
    return acc
