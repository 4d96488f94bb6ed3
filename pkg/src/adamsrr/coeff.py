"""Exact arithmetic in Q[e]/(e^p).

Every cohomology class in the package has coefficients of this type.  With
``p == 1`` the ring is plain Q; larger ``p`` adjoins a nilpotent ``e`` used
by the twisted Chern character.
"""

from __future__ import annotations

import enum
import math
import re
from fractions import Fraction
from typing import Iterable, Union

from .errors import NonUnit, OrderMismatch

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover
    Rational = Fraction

# Types accepted wherever a plain rational scalar is expected.
SCALAR_TYPES = (int, Fraction, type(Rational(0)))
Scalar = Union[int, Fraction]


class Coefficient:
    """An element ``sum_k parts[k] * e^k`` of Q[e]/(e^p)."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[Scalar] = (0,)):
        parts = tuple(Rational(c) for c in parts)
        if not parts:
            raise ValueError("a coefficient needs at least one part")
        self.parts = parts

    @classmethod
    def scalar(cls, value: Scalar, p: int = 1) -> "Coefficient":
        return cls._raw((Rational(value),) + (Rational(0),) * (p - 1))

    @classmethod
    def eps(cls, p: int) -> "Coefficient":
        if p < 2:
            raise ValueError("e is zero when p == 1")
        return cls._raw((Rational(0), Rational(1)) + (Rational(0),) * (p - 2))

    @classmethod
    def _raw(cls, parts: tuple) -> "Coefficient":
        obj = object.__new__(cls)
        obj.parts = parts
        return obj

    @property
    def p(self) -> int:
        return len(self.parts)

    def _coerce(self, other) -> "Coefficient":
        if isinstance(other, Coefficient):
            if len(other.parts) != len(self.parts):
                raise OrderMismatch(f"cannot mix p={self.p} with p={other.p}")
            return other
        if isinstance(other, SCALAR_TYPES):
            return Coefficient.scalar(other, self.p)
        return NotImplemented

    def __add__(self, other):
        if type(other) is Coefficient and len(self.parts) == 1 == len(other.parts):
            return Coefficient._raw((self.parts[0] + other.parts[0],))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Coefficient._raw(tuple(a + b for a, b in zip(self.parts, other.parts)))

    __radd__ = __add__

    def __neg__(self):
        return Coefficient._raw(tuple(-a for a in self.parts))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Coefficient._raw(tuple(a - b for a, b in zip(self.parts, other.parts)))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if type(other) is Coefficient:
            a, b = self.parts, other.parts
            if len(a) == 1 and len(b) == 1:
                return Coefficient._raw((a[0] * b[0],))
        if isinstance(other, SCALAR_TYPES):
            return Coefficient._raw(tuple(a * other for a in self.parts))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.parts, other.parts
        p = len(a)
        if p == 1:
            return Coefficient._raw((a[0] * b[0],))
        out = [Rational(0)] * p
        for i, ai in enumerate(a):
            if ai:
                for k in range(p - i):
                    if b[k]:
                        out[i + k] += ai * b[k]
        return Coefficient._raw(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SCALAR_TYPES):
            return Coefficient._raw(tuple(a / other for a in self.parts))
        return self * invert_coefficient(self._coerce(other))

    def __pow__(self, n: int):
        if n < 0:
            return invert_coefficient(self) ** (-n)
        result = Coefficient.scalar(1, self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Coefficient):
            return self.parts == other.parts
        if isinstance(other, SCALAR_TYPES):
            return self.parts[0] == other and not any(self.parts[1:])
        return NotImplemented

    def __hash__(self):
        if not any(self.parts[1:]):
            return hash(self.parts[0])
        return hash(self.parts)

    def __bool__(self):
        return any(self.parts)

    def is_zero(self) -> bool:
        return not any(self.parts)

    def is_unit(self) -> bool:
        return self.parts[0] != 0

    def is_rational(self) -> bool:
        return not any(self.parts[1:])

    def lift(self, p: int) -> "Coefficient":
        """Embed a plain rational (p == 1) into Q[e]/(e^p)."""
        if self.p == p:
            return self
        if self.p != 1:
            raise OrderMismatch(f"cannot lift p={self.p} to p={p}")
        return Coefficient.scalar(self.parts[0], p)

    def __repr__(self):
        return f"Coefficient({self})"

    def __str__(self):
        pieces = []
        for k, c in enumerate(self.parts):
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "e" if k == 1 else f"e^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            pieces.append((c < 0, body))
        if not pieces:
            return "0"
        neg, body = pieces[0]
        out = ("-" if neg else "") + body
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    @classmethod
    def parse(cls, text: str, p: int = 1) -> "Coefficient":
        """Inverse of ``str``; ``p`` fixes the nilpotency order."""
        parts = [Rational(0)] * p
        sign = 1
        for token in text.split():
            if token in "+-":
                sign = -1 if token == "-" else 1
                continue
            if token.startswith("-"):
                sign, token = -sign, token[1:]
            m = re.fullmatch(r"(?:(\d+(?:/\d+)?)\*)?e(?:\^(\d+))?", token)
            if m:
                value = Rational(m.group(1)) if m.group(1) else Rational(1)
                k = int(m.group(2)) if m.group(2) else 1
            else:
                value, k = Rational(token), 0
            if k >= p:
                raise ValueError(f"term e^{k} out of range for p={p}")
            parts[k] += sign * value
            sign = 1
        return cls._raw(tuple(parts))


def invert_coefficient(c: Coefficient) -> Coefficient:
    """Inverse in Q[e]/(e^p) via the geometric series of the nilpotent part."""
    a0 = c.parts[0]
    if a0 == 0:
        raise NonUnit(f"{c} has zero constant part")
    p = c.p
    inv0 = 1 / a0
    if p == 1:
        return Coefficient._raw((inv0,))
    # c = a0 (1 + n) with n nilpotent, so c^-1 = a0^-1 sum_k (-n)^k.
    minus_n = Coefficient._raw((Rational(0),) + tuple(-x * inv0 for x in c.parts[1:]))
    total = Coefficient.scalar(1, p)
    power = total
    for _ in range(p - 1):
        power = power * minus_n
        total = total + power
    return total * inv0


class Integrality(enum.Enum):
    INTEGER = "INTEGER"
    J_LOCAL = "J_LOCAL"
    RATIONAL = "RATIONAL"


def integrality_profile(c, j: int) -> tuple[Integrality, int]:
    """Classify a rational as integral, integral after inverting ``j``, or neither.

    Returns the verdict together with the reduced denominator.
    """
    if isinstance(c, Coefficient):
        if not c.is_rational():
            raise ValueError("integrality is only defined for plain rationals")
        c = c.parts[0]
    den = int(Rational(c).denominator)
    if den == 1:
        return Integrality.INTEGER, den
    if j == 0:
        return Integrality.RATIONAL, den
    rest = den
    while True:
        g = math.gcd(rest, j)
        if g == 1:
            break
        while rest % g == 0:
            rest //= g
    return (Integrality.J_LOCAL if rest == 1 else Integrality.RATIONAL), den

