"""Exact coefficient rings.

Three commutative Q-algebras are supported:

* ``rationals``  -- elements are plain :class:`fractions.Fraction` objects;
* ``dual``       -- the dual numbers Q[eps]/(eps^2);
* ``poly_y``     -- Q[y]/(y^(d+1)), polynomials in ``y`` truncated at degree d.

Dual numbers are the ``d = 1`` case of the truncated polynomial ring, so both
use :class:`TruncPoly` for their elements; only the printed name of the
nilpotent generator differs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


class RingMismatch(TypeError):
    """Raised when elements of two different coefficient rings meet."""


@dataclass(frozen=True)
class CoefficientRing:
    kind: str
    max_degree: int = 0

    def __post_init__(self):
        if self.kind not in ("rationals", "dual", "poly_y"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "rationals" and self.max_degree != 0:
            raise ValueError("the rationals carry no truncation degree")
        if self.kind == "dual" and self.max_degree != 1:
            raise ValueError("dual numbers are truncated at degree 1")
        if self.max_degree < 0:
            raise ValueError("max_degree must be nonnegative")

    def __str__(self):
        if self.kind == "poly_y":
            return f"poly_y:{self.max_degree}"
        return self.kind

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def generator(self):
        """The nilpotent generator (``eps`` or ``y``)."""
        if self.kind == "rationals":
            raise ValueError("the rationals have no nilpotent generator")
        return TruncPoly(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.max_degree - 1))

    def __call__(self, value):
        """Coerce ``value`` into this ring.

        Accepts ints, Fractions, ``"p/q"`` strings, elements of this ring and,
        for the truncated rings, a sequence of rational components.
        """
        if self.kind == "rationals":
            if isinstance(value, TruncPoly):
                raise RingMismatch(f"cannot coerce {value.ring} element into rationals")
            return Fraction(value)
        if isinstance(value, TruncPoly):
            if value.ring != self:
                raise RingMismatch(f"cannot coerce {value.ring} element into {self}")
            return value
        if isinstance(value, (int, Rational, str)):
            return TruncPoly(self, (Fraction(value),) + (Fraction(0),) * self.max_degree)
        comps = [Fraction(c) for c in value]
        if len(comps) > self.max_degree + 1:
            if any(comps[self.max_degree + 1:]):
                raise ValueError(f"too many components for {self}")
            comps = comps[: self.max_degree + 1]
        comps += [Fraction(0)] * (self.max_degree + 1 - len(comps))
        return TruncPoly(self, tuple(comps))

    def contains(self, value) -> bool:
        if self.kind == "rationals":
            return isinstance(value, (int, Fraction))
        return isinstance(value, TruncPoly) and value.ring == self

    def constant_part(self, value) -> Fraction:
        if isinstance(value, TruncPoly):
            return value.coeffs[0]
        return Fraction(value)

    def is_unit(self, value) -> bool:
        return self.constant_part(value) != 0

    def inverse(self, value):
        value = self(value)
        if not self.is_unit(value):
            raise ZeroDivisionError(f"{value} is not a unit in {self}")
        if self.kind == "rationals":
            return 1 / value
        return value.inverse()


RATIONALS = CoefficientRing("rationals")
DUAL = CoefficientRing("dual", 1)


def poly_in_y(max_degree: int) -> CoefficientRing:
    return CoefficientRing("poly_y", max_degree)


def parse_ring(text: str) -> CoefficientRing:
    """Parse ``rationals``, ``dual`` or ``poly_y:d``."""
    if text == "rationals":
        return RATIONALS
    if text == "dual":
        return DUAL
    if text.startswith("poly_y:"):
        return poly_in_y(int(text.split(":", 1)[1]))
    raise ValueError(f"unknown ring {text!r}")


def ring_of(value) -> CoefficientRing:
    if isinstance(value, TruncPoly):
        return value.ring
    return RATIONALS


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_element(value) -> str:
    if isinstance(value, TruncPoly):
        return str(value)
    return format_rational(value)


class TruncPoly:
    """Element c0 + c1*t + ... + cd*t^d of Q[t]/(t^(d+1))."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: CoefficientRing, coeffs: tuple):
        self.ring = ring
        self.coeffs = coeffs

    @property
    def a(self) -> Fraction:
        """Real part of a dual number."""
        return self.coeffs[0]

    @property
    def b(self) -> Fraction:
        """Infinitesimal (eps) part of a dual number."""
        return self.coeffs[1]

    def _other(self, other):
        if isinstance(other, TruncPoly):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other.coeffs
        if isinstance(other, (int, Fraction)):
            return (Fraction(other),) + (Fraction(0),) * self.ring.max_degree
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return TruncPoly(self.ring, tuple(p + q for p, q in zip(self.coeffs, o)))

    __radd__ = __add__

    def __neg__(self):
        return TruncPoly(self.ring, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return TruncPoly(self.ring, tuple(p - q for p, q in zip(self.coeffs, o)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncPoly(self.ring, tuple(c * other for c in self.coeffs))
        o = self._other(other)
        if o is NotImplemented:
            return o
        d = self.ring.max_degree
        out = [Fraction(0)] * (d + 1)
        for i, p in enumerate(self.coeffs):
            if p:
                for j in range(d + 1 - i):
                    out[i + j] += p * o[j]
        return TruncPoly(self.ring, tuple(out))

    __rmul__ = __mul__

    def inverse(self):
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError(f"{self} is not a unit")
        d = self.ring.max_degree
        out = [Fraction(0)] * (d + 1)
        out[0] = 1 / c0
        for n in range(1, d + 1):
            out[n] = -sum(self.coeffs[k] * out[n - k] for k in range(1, n + 1)) / c0
        return TruncPoly(self.ring, tuple(out))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return TruncPoly(self.ring, tuple(c / other for c in self.coeffs))
        if isinstance(other, TruncPoly):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, TruncPoly):
            return self.ring == other.ring and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.ring, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def component(self, i: int) -> Fraction:
        return self.coeffs[i]

    def __repr__(self):
        return f"TruncPoly({self.ring}, {self})"

    def __str__(self):
        t = "eps" if self.ring.kind == "dual" else "y"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(format_rational(c))
            else:
                mono = t if i == 1 else f"{t}^{i}"
                terms.append(mono if c == 1 else f"{format_rational(c)}*{mono}")
        if not terms:
            return "0"
        return "+".join(terms).replace("+-", "-")
