"""Closed formulas for multiplicative classes of Hilbert schemes of points.

For a multiplicative class given by ``f`` in ``1 + x A[[x]]`` we use

* ``F(x) = f(x) f(-x)``, ``G = x / F`` and its compositional inverse ``g``;
* ``H = x / f(-x)`` and its compositional inverse ``h``.

The tangent bundle of ``Hilb^n X`` (``X`` non-compact, simply connected) is

    sum_n phi(T) = exp(sum_k a_k q_k(1) + b_k q_k(K) + sum_{k,l} a_kl q_(k,l)(1)) |0>

with ``sum k a_k x^k = g``, ``sum b_k x^k = 1/2 log(f(-g)^2 / g')`` and
``sum a_kl x^k y^l = 1/2 log(F(g(x) - g(y)) / D)``, where ``D`` is the divided
difference ``(g(x) - g(y)) / (x - y)``. Tautological bundles use ``h`` instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Optional

from .fock import (
    FormalState,
    SurfaceModel,
    CohClass,
    exp_state,
    q,
    qq,
    rho,
    specialize,
    top_degree_part,
    weight_component,
)
from .rings import DUAL, RATIONALS, CoefficientRing
from .series import (
    Series,
    compose_inverse,
    derivative,
    divided_difference,
    exp_series,
    inverse_series,
    log_series,
    substitute,
)


class ClassSpec:
    """A multiplicative class, given by the coefficients of ``f``.

    ``coeff(k)`` returns the ``x^k`` coefficient of ``f`` (with ``coeff(0) == 1``).
    ``exact_cap`` bounds the available precision; ``None`` means unlimited.
    """

    def __init__(self, name: str, coeff: Callable[[int], object], ring: CoefficientRing = RATIONALS,
                 exact_cap: Optional[int] = None):
        self.name = name
        self.ring = ring
        self._coeff = coeff
        self.exact_cap = exact_cap
        if ring(coeff(0)) != 1:
            raise ValueError(f"f must have constant term 1 (class {name!r})")

    def __repr__(self):
        return f"ClassSpec({self.name!r}, ring={self.ring})"

    def f(self, cap: int) -> Series:
        if self.exact_cap is not None and cap > self.exact_cap:
            raise ValueError(f"class {self.name!r} is only known to order {self.exact_cap}")
        return Series.from_list([self.ring(self._coeff(k)) for k in range(cap + 1)], cap, ring=self.ring)

    @property
    def f1(self):
        return self.ring(self._coeff(1))

    @classmethod
    def from_coefficients(cls, name: str, coeffs, ring: CoefficientRing = RATIONALS):
        """``f = 1 + coeffs[0] x + coeffs[1] x^2 + ...`` (a polynomial, exact to any order)."""
        values = [ring(1)] + [ring(c) for c in coeffs]

        def coeff(k):
            return values[k] if k < len(values) else ring.zero

        return cls(name, coeff, ring)

    @classmethod
    def from_series(cls, name: str, f: Series):
        if f.variables != ("x",):
            raise ValueError("f must be univariate in x")
        values = f.univariate_list()
        return cls(name, lambda k: values[k], f.ring, exact_cap=f.cap)


def _series_class(name: str, build: Callable[[int], Series], ring=RATIONALS) -> ClassSpec:
    cache = {}

    def coeff(k):
        if k not in cache:
            cap = max(16, 2 * k)
            cache.update(enumerate(build(cap).univariate_list()))
        return cache[k]

    return ClassSpec(name, coeff, ring)


def _todd(cap):
    # x / (1 - e^-x) = 1 / (sum_k (-1)^k x^k / (k+1)!)
    return inverse_series(Series.from_list([Fraction((-1) ** k, factorial(k + 1)) for k in range(cap + 1)]))


def _a_hat(cap):
    # (x/2) / sinh(x/2) = 1 / (sum_k (x/2)^(2k) / (2k+1)!)
    den = [Fraction(1, factorial(k + 1) * 2 ** k) if k % 2 == 0 else Fraction(0) for k in range(cap + 1)]
    return inverse_series(Series.from_list(den))


def _l_genus(cap):
    # x / tanh x = cosh x / (sinh x / x)
    cosh = Series.from_list([Fraction(1, factorial(k)) if k % 2 == 0 else Fraction(0) for k in range(cap + 1)])
    sinh_x = Series.from_list([Fraction(1, factorial(k + 1)) if k % 2 == 0 else Fraction(0) for k in range(cap + 1)])
    return cosh * inverse_series(sinh_x)


def _ch_dual(k):
    # 1 + eps (e^x - 1)
    return DUAL((1, 0)) if k == 0 else DUAL((0, Fraction(1, factorial(k))))


BUILTIN_CLASSES = {
    "trivial": lambda: ClassSpec.from_coefficients("trivial", []),
    "chern": lambda: ClassSpec.from_coefficients("chern", [1]),
    "todd": lambda: _series_class("todd", _todd),
    "a_hat": lambda: _series_class("a_hat", _a_hat),
    "l_genus": lambda: _series_class("l_genus", _l_genus),
    "ch_dual": lambda: ClassSpec("ch_dual", _ch_dual, DUAL),
}


def builtin(name: str) -> ClassSpec:
    try:
        return BUILTIN_CLASSES[name]()
    except KeyError:
        raise KeyError(f"unknown class {name!r}; known: {', '.join(sorted(BUILTIN_CLASSES))}") from None


def _neg_arg(s: Series) -> Series:
    """``s(-x)`` for a univariate series."""
    return Series(s.ring, s.variables, s.cap, {e: (-c if e[0] % 2 else c) for e, c in s.coeffs.items()})


@dataclass
class InversionData:
    F_even: Series
    G: Series
    g: Series
    H: Series
    h: Series


def build_inversion(spec: ClassSpec, cap: int) -> InversionData:
    if cap < 1:
        raise ValueError("cap must be >= 1")
    f = spec.f(cap)
    f_neg = _neg_arg(f)
    F = f * f_neg
    G = inverse_series(F.truncate(cap - 1)).shift("x", 1)
    H = inverse_series(f_neg.truncate(cap - 1)).shift("x", 1)
    return InversionData(F, G, compose_inverse(G), H, compose_inverse(H))


@dataclass
class CoefficientTables:
    """``a[k]``, ``b[k]``, ``c[k]`` for ``1 <= k <= order`` and ``akl[(k, l)]`` for ``k + l <= order``."""

    kind: str
    order: int
    ring: CoefficientRing
    a: dict = field(default_factory=dict)
    b: dict = field(default_factory=dict)
    akl: dict = field(default_factory=dict)
    c: Optional[dict] = None

    def a_list(self):
        return [self.a[k] for k in range(1, self.order + 1)]

    def b_list(self):
        return [self.b[k] for k in range(1, self.order + 1)]

    def c_list(self):
        return [self.c[k] for k in range(1, self.order + 1)] if self.c is not None else None

    def akl_rows(self):
        """Row ``k - 1`` holds ``a_{k,1}, ..., a_{k,order-k}``."""
        return [[self.akl[(k, l)] for l in range(1, self.order - k + 1)] for k in range(1, self.order)]

    def map(self, fn, ring) -> "CoefficientTables":
        return CoefficientTables(
            self.kind, self.order, ring,
            {k: fn(v) for k, v in self.a.items()},
            {k: fn(v) for k, v in self.b.items()},
            {k: fn(v) for k, v in self.akl.items()},
            None if self.c is None else {k: fn(v) for k, v in self.c.items()},
        )

    def linear_state(self, with_F: bool = False) -> FormalState:
        """``sum a_k q_k(1) + b_k q_k(K) [+ c_k q_k(F)] + sum_{k,l} a_kl q_(k,l)(1)``."""
        terms = {}
        for k, v in self.a.items():
            terms[(q(k, "1"),)] = v
        for k, v in self.b.items():
            terms[(q(k, "K"),)] = v
        if with_F and self.c is not None:
            for k, v in self.c.items():
                terms[(q(k, "F"),)] = v
        for (k, l), v in self.akl.items():
            mono = (qq(k, l),)
            terms[mono] = terms[mono] + v if mono in terms else v
        return FormalState(terms, self.ring)


def _univariate_table(s: Series, order: int, scale=None) -> dict:
    out = {}
    for k in range(1, order + 1):
        v = s[(k,)]
        out[k] = v / k if scale == "divide_k" else v
    return out


def _bivariate_table(s: Series, order: int) -> dict:
    return {(k, l): s[(k, l)] for k in range(1, order) for l in range(1, order - k + 1)}


def _tables_from_inverse(inv: Series, order: int):
    """Shared by the tangent and tautological tables: the ``a_k`` and the divided difference of the inverse."""
    a = _univariate_table(inv, order, "divide_k")
    D = divided_difference(inv)
    return a, D


def tangent_coefficients(spec: ClassSpec, cap: int) -> CoefficientTables:
    if cap < 1:
        raise ValueError("cap must be >= 1")
    ring = spec.ring
    work = cap + 1
    inv = build_inversion(spec, work)
    f, g, F = spec.f(work), inv.g, inv.F_even
    a, D = _tables_from_inverse(g, cap)

    # b: 1/2 log(f(-g)^2 / g')
    f_neg_g = substitute(f, "x", -g)
    b_series = log_series(f_neg_g * f_neg_g * inverse_series(derivative(g, "x"))) / 2
    b = _univariate_table(b_series, cap)

    # a_kl: 1/2 log(F(g(x) - g(y)) / D)
    delta = g.embed(("x", "y")) - g.rename({"x": "y"}).embed(("x", "y"))
    F_delta = substitute(F, "x", delta)
    akl_series = log_series(F_delta * inverse_series(D)) / 2
    akl = _bivariate_table(akl_series, cap)
    return CoefficientTables("tangent", cap, ring, a, b, akl)


def tautological_coefficients(spec: ClassSpec, cap: int) -> CoefficientTables:
    if cap < 1:
        raise ValueError("cap must be >= 1")
    ring = spec.ring
    work = cap + 1
    h = build_inversion(spec, work).h
    a, D = _tables_from_inverse(h, cap)

    h_over_x = h.shift("x", -1)
    b_series = log_series(h_over_x * h_over_x * inverse_series(derivative(h, "x"))) / 2
    c_series = -log_series(h_over_x)
    hx = h_over_x.embed(("x", "y"))
    hy = h_over_x.rename({"x": "y"}).embed(("x", "y"))
    akl_series = log_series(hx * hy * inverse_series(D)) / 2
    return CoefficientTables(
        "tautological", cap, ring, a,
        _univariate_table(b_series, cap),
        _bivariate_table(akl_series, cap),
        _univariate_table(c_series, cap),
    )


def chern_character_tables(cap: int) -> CoefficientTables:
    """Rational tables for the Chern character of the tangent bundle.

    ``a``: 2 at ``k = 1`` and ``2 / k!`` at odd ``k >= 3``;
    ``b``: ``-1/(2m+1)!`` at ``k = 2m+1`` and ``k = 2m+2``;
    ``a_kl``: ``((-1)^k C(2m, k) - 1) / (2m)!`` at ``k + l = 2m``.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    a, b, akl = {}, {}, {}
    for k in range(1, cap + 1):
        a[k] = Fraction(2, factorial(k)) if k % 2 else Fraction(0)
        m = (k - 1) // 2
        b[k] = Fraction(-1, factorial(2 * m + 1))
    for k in range(1, cap):
        for l in range(1, cap - k + 1):
            n = k + l
            akl[(k, l)] = Fraction((-1) ** k * comb(n, k) - 1, factorial(n)) if n % 2 == 0 else Fraction(0)
    return CoefficientTables("chern_character", cap, RATIONALS, a, b, akl)


def dual_part_tables(tables: CoefficientTables) -> CoefficientTables:
    """The eps-components of tables computed over the dual numbers."""
    if tables.ring != DUAL:
        raise ValueError("tables are not over the dual numbers")
    return tables.map(lambda v: v.b, RATIONALS)


def _class_state(linear: FormalState, n: int, surface: Optional[SurfaceModel], F_class=None):
    if surface is not None:
        linear = specialize(linear, surface, F_class)
    return weight_component(exp_state(linear, n), n)


def tangent_class_state(spec: ClassSpec, n: int, cap: Optional[int] = None,
                        surface: Optional[SurfaceModel] = None, tables: Optional[CoefficientTables] = None):
    """Weight-``n`` component of ``sum phi(T_{Hilb^n})``.

    Returns a :class:`FormalState`, or a :class:`FockState` when a surface
    model is given.
    """
    cap = n if cap is None else cap
    if n > cap:
        raise ValueError("n must not exceed cap")
    if n == 0:
        return _class_state(FormalState({}, spec.ring), 0, surface)
    tables = tables or tangent_coefficients(spec, cap)
    return _class_state(tables.linear_state(), n, surface)


def tautological_class_state(spec: ClassSpec, n: int, cap: Optional[int] = None,
                             surface: Optional[SurfaceModel] = None, F_class: Optional[CohClass] = None):
    cap = n if cap is None else cap
    if n > cap:
        raise ValueError("n must not exceed cap")
    if n == 0:
        return _class_state(FormalState({}, spec.ring), 0, surface, F_class)
    tables = tautological_coefficients(spec, cap)
    return _class_state(tables.linear_state(with_F=True), n, surface, F_class)


def chern_character_state(n: int, cap: Optional[int] = None, surface: Optional[SurfaceModel] = None):
    """Weight-``n`` component of ``(sum a_k q_k(1) + ...) exp(q_1(1)) |0>``."""
    cap = n if cap is None else cap
    if n > cap:
        raise ValueError("n must not exceed cap")
    if n == 0:
        return FormalState({}) if surface is None else specialize(FormalState({}), surface)
    linear = chern_character_tables(cap).linear_state()
    shift = FormalState({(q(1),): 1})
    if surface is not None:
        linear, shift = specialize(linear, surface), specialize(shift, surface)
    return weight_component(linear.mul(exp_state(shift, n), n), n)


def closed_form_z(tables: CoefficientTables, gamma: int, cap: int) -> Series:
    """``exp(sum (gamma-2) b_k (x^k+y^k) - gamma sum a_kl (x^k+y^k)(x^l+y^l))``."""
    surface = SurfaceModel(gamma)
    linear = specialize(tables.linear_state(), surface)
    pure = top_degree_part(linear)
    return exp_series(rho(pure, cap))
