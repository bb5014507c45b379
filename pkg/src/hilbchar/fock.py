"""Creation-operator states on the cohomology of Hilbert schemes of points.

The direct sum of the cohomologies of all ``Hilb^n X`` is modelled as a
commutative polynomial algebra on creation operators applied to the vacuum.
A monomial is a sorted tuple of :class:`Gen` generators; a state is a dict
from monomials to ring elements.

Two alphabets are used:

* concrete states (:class:`FockState`) over the classes ``1`` and ``h`` of a
  surface whose H^2 is spanned by ``h`` and whose H^4 vanishes;
* formal states (:class:`FormalState`) over ``q_k(1)``, ``q_k(K)``,
  ``q_k(F)`` and the diagonal operators ``q_(k,l)(1)`` (label ``Q``), before a
  surface has been chosen.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import NamedTuple

from .rings import RATIONALS, CoefficientRing, format_element
from .series import Series, exp_series, power_sum_xy


class Gen(NamedTuple):
    """``q_k(label)``; for label ``Q`` it is ``q_(k,l)(1)`` with ``k <= l``."""

    label: str
    k: int
    l: int = 0

    @property
    def weight(self) -> int:
        return self.k + self.l

    @property
    def degree(self) -> int:
        if self.label == "1":
            return 2 * self.k - 2
        return 2 * self.weight

    def __str__(self):
        if self.label == "Q":
            return f"q({self.k},{self.l})(1)"
        return f"q{self.k}({self.label})"


def q(k: int, label: str = "1") -> Gen:
    if k < 1:
        raise ValueError("creation operators need k >= 1")
    return Gen(label, k)


def qq(k: int, l: int) -> Gen:
    """The diagonal operator ``q_(k,l)(1)``; symmetric in ``k``, ``l``."""
    if min(k, l) < 1:
        raise ValueError("creation operators need k, l >= 1")
    return Gen("Q", min(k, l), max(k, l))


def monomial_weight(mono: tuple) -> int:
    return sum(g.weight for g in mono)


def monomial_degree(mono: tuple) -> int:
    return sum(g.degree for g in mono)


def _mono_key(mono: tuple):
    return (monomial_weight(mono), tuple(_gen_key(g) for g in mono))


_LABEL_ORDER = {"1": 0, "h": 1, "K": 2, "F": 3, "Q": 4}


def _gen_key(g: Gen):
    return (_LABEL_ORDER[g.label], g.k, g.l)


def format_monomial(mono: tuple) -> str:
    if not mono:
        return "|0>"
    return " ".join(str(g) for g in mono)


class State:
    """A finite linear combination of creation-operator monomials on the vacuum."""

    labels = frozenset("1hKFQ")

    def __init__(self, terms=None, ring: CoefficientRing = RATIONALS):
        self.ring = ring
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(sorted(mono, key=_gen_key))
            for g in mono:
                if g.label not in self.labels:
                    raise ValueError(f"generator {g} not allowed in {type(self).__name__}")
            c = ring(c)
            if mono in clean:
                c = clean[mono] + c
            clean[mono] = c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def vacuum(cls, ring=RATIONALS):
        return cls({(): ring.one}, ring)

    @classmethod
    def generator(cls, gen: Gen, coeff=1, ring=RATIONALS):
        return cls({(gen,): coeff}, ring)

    def _new(self, terms):
        return type(self)(terms, self.ring)

    def __add__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return self._new(out)

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def mul(self, other: "State", weight_cap=None) -> "State":
        out = {}
        for m1, c1 in self.terms.items():
            w1 = monomial_weight(m1)
            for m2, c2 in other.terms.items():
                if weight_cap is not None and w1 + monomial_weight(m2) > weight_cap:
                    continue
                m = tuple(sorted(m1 + m2, key=_gen_key))
                v = c1 * c2
                out[m] = out[m] + v if m in out else v
        return self._new(out)

    def __mul__(self, other):
        if isinstance(other, State):
            return self.mul(other)
        other = self.ring(other)
        return self._new({m: c * other for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __iter__(self):
        """Terms in graded-lex order of monomials."""
        for m in sorted(self.terms, key=_mono_key):
            yield m, self.terms[m]

    def __len__(self):
        return len(self.terms)

    def coefficient(self, *gens):
        mono = tuple(sorted(gens, key=_gen_key))
        return self.terms.get(mono, self.ring.zero)

    def lines(self) -> list:
        if not self.terms:
            return ["0"]
        return [f"{format_element(c)} {format_monomial(m)}" for m, c in self]

    def __str__(self):
        return "\n".join(self.lines())

    def __repr__(self):
        return f"{type(self).__name__}({'; '.join(self.lines())})"

    def weights(self) -> set:
        return {monomial_weight(m) for m in self.terms}


class FockState(State):
    labels = frozenset("1h")


class FormalState(State):
    labels = frozenset("1KFQ")


@dataclass(frozen=True)
class CohClass:
    """``c0 * 1 + c2 * h`` in the cohomology of the surface (``h^2 = 0``)."""

    c0: object = 0
    c2: object = 0

    def __mul__(self, other: "CohClass") -> "CohClass":
        return CohClass(self.c0 * other.c0, self.c0 * other.c2 + self.c2 * other.c0)

    def __add__(self, other: "CohClass") -> "CohClass":
        return CohClass(self.c0 + other.c0, self.c2 + other.c2)


H_CLASS = CohClass(0, 1)


@dataclass(frozen=True)
class SurfaceModel:
    """Total space of O(-gamma) over P^1: ``K = (gamma - 2) h``, ``delta_! 1 = -gamma h (x) h``."""

    gamma: int

    def __post_init__(self):
        if self.gamma < 2:
            raise ValueError("surface models need gamma >= 2")

    @property
    def canonical(self) -> CohClass:
        return CohClass(0, self.gamma - 2)

    @property
    def diag_coeff(self) -> int:
        return -self.gamma

    euler = 0
    K_squared = 0

    @property
    def jack_parameter(self) -> Fraction:
        return Fraction(1, self.gamma - 1)


def exp_state(linear: State, weight_cap: int) -> State:
    """``sum linear^m / m!`` keeping only monomials of weight <= ``weight_cap``."""
    if any(monomial_weight(m) == 0 for m in linear.terms):
        raise ValueError("exp_state needs every term to have positive weight")
    result = type(linear).vacuum(linear.ring)
    power = result
    for m in range(1, weight_cap + 1):
        power = power.mul(linear, weight_cap)
        if not power.terms:
            break
        result = result + power * Fraction(1, factorial(m))
    return result


def weight_component(s: State, n: int) -> State:
    return s._new({m: c for m, c in s.terms.items() if monomial_weight(m) == n})


def top_degree_part(s: State) -> State:
    """Monomials of cohomological degree ``2 * weight`` (the ``phi_n`` part)."""
    return s._new({m: c for m, c in s.terms.items() if monomial_degree(m) == 2 * monomial_weight(m)})


def _class_state(k: int, cls: CohClass, ring) -> FockState:
    return FockState({(Gen("1", k),): cls.c0, (Gen("h", k),): cls.c2}, ring)


def specialize(fs: FormalState, surface: SurfaceModel, F_class: CohClass = None) -> FockState:
    """Evaluate a formal state on a concrete surface model.

    ``q_k(K) -> (gamma-2) q_k(h)``, ``q_(k,l)(1) -> -gamma q_k(h) q_l(h)``,
    ``q_k(F) -> c0 q_k(1) + c2 q_k(h)`` and ``q_k(1)`` is unchanged.
    """
    ring = fs.ring
    uses_F = any(g.label == "F" for m in fs.terms for g in m)
    if uses_F and F_class is None:
        raise ValueError("state mentions q_k(F) but no F class was given")

    def image(g: Gen) -> FockState:
        if g.label == "1":
            return FockState({(g,): 1}, ring)
        if g.label == "K":
            return _class_state(g.k, surface.canonical, ring)
        if g.label == "F":
            return _class_state(g.k, F_class, ring)
        return FockState({(Gen("h", g.k), Gen("h", g.l)): surface.diag_coeff}, ring)

    out = FockState({}, ring)
    for mono, c in fs.terms.items():
        term = FockState.vacuum(ring)
        for g in mono:
            term = term * image(g)
        out = out + term * c
    return out


def rho(s: State, cap=None) -> Series:
    """Evaluate ``q_k(h) -> x^k + y^k`` on a state of pure ``h``-monomials."""
    if cap is None:
        cap = max((monomial_weight(m) for m in s.terms), default=0)
    ring = s.ring
    out = Series.zero(ring, ("x", "y"), cap)
    for mono, c in s.terms.items():
        if any(g.label != "h" for g in mono):
            raise ValueError(f"rho is only defined on q_k(h) monomials, got {format_monomial(mono)}")
        if monomial_weight(mono) > cap:
            continue
        term = Series.constant(c, ("x", "y"), cap, ring)
        for g in mono:
            term = term * power_sum_xy(g.k, cap, ring)
        out = out + term
    return out


def rho_exp(linear: State, cap: int) -> Series:
    """``exp`` taken on the series side: ``exp(rho(linear))``."""
    return exp_series(rho(linear, cap))
