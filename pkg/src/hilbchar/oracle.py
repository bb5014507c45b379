"""Localization cross-checks for the closed formulas.

On the total space of O(-gamma) over P^1 the torus fixed points of
``Hilb^n`` are indexed by bipartitions ``(lam0, lam1)``. Pushing the
localization formula through the ``rho`` evaluation gives

    Z_gamma(x, y) = sum_{lam0, lam1} P^1_lam0(x, y) P^(1/(gamma-1))_lam1(x, y)
                    * [u^n] prod_{w in W_lam0(-1,-1) + W_lam1(gamma-1,1)} f(w u)
                    / (c'_lam0(-1,-1) c'_lam1(gamma-1,1))

which must agree with the exponential built from the closed-formula tables.
Everything here is computed from fixed-point data and Jack polynomials alone;
the engine is only consulted on the other side of each comparison.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Optional

from .engine import (
    ClassSpec,
    CoefficientTables,
    build_inversion,
    builtin,
    chern_character_tables,
    closed_form_z,
    dual_part_tables,
    tangent_coefficients,
)
from .partitions import (
    Bipartition,
    Partition,
    cells,
    enumerate_bipartitions,
    enumerate_partitions,
    hook_product,
    weight_multiset,
)
from .series import (
    Series,
    derivative,
    divided_difference,
    exp_series,
    first_mismatch,
    inverse_series,
    log_series,
    substitute,
)
from .symfunc import jack_polynomial, specialize_two_vars


@dataclass
class Report:
    name: str
    passed: bool
    mismatch: Optional[tuple] = None
    detail: str = ""

    def __bool__(self):
        return self.passed

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        where = f" first mismatch at {self.mismatch}" if self.mismatch is not None else ""
        extra = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.name}{where}{extra}"


def _compare(name: str, lhs: Series, rhs: Series, cap: int, detail: str = "") -> Report:
    bad = first_mismatch(lhs, rhs, cap)
    return Report(name, bad is None, bad, detail)


def _check_gamma(gamma: int):
    if gamma < 2:
        raise ValueError(f"gamma must be >= 2, got {gamma}")


# -- fixed point data -----------------------------------------------------


def fixed_point_weights(bp: Bipartition, gamma: int) -> list:
    return sorted(weight_multiset(bp.first, -1, -1) + weight_multiset(bp.second, gamma - 1, 1))


def fixed_point_denominator(bp: Bipartition, gamma: int) -> Fraction:
    return Fraction(hook_product(bp.first, -1, -1) * hook_product(bp.second, gamma - 1, 1))


def weighted_product_coefficient(f: Series, weights, n: int):
    """``[u^n] prod_w f(w u)``.

    Computed as ``exp(sum_k l_k p_k(W) u^k)`` with ``log f = sum l_k x^k`` and
    ``p_k(W) = sum_w w^k``.
    """
    ring = f.ring
    logf = log_series(f.truncate(n))
    coeffs = {}
    for k in range(1, n + 1):
        lk = logf[(k,)]
        if lk:
            coeffs[(k,)] = lk * sum(w ** k for w in weights)
    return exp_series(Series(ring, ("u",), n, coeffs))[(n,)]


@lru_cache(maxsize=None)
def _jack_xy(lam: Partition, alpha: Fraction):
    return specialize_two_vars(jack_polynomial(lam, alpha)).coeffs


def jack_factor(bp: Bipartition, gamma: int, ring, cap: int) -> Series:
    """``P^1_lam0(x, y) P^(1/(gamma-1))_lam1(x, y)``."""
    p0 = Series(ring, ("x", "y"), cap, _jack_xy(bp.first, Fraction(1)))
    p1 = Series(ring, ("x", "y"), cap, _jack_xy(bp.second, Fraction(1, gamma - 1)))
    return p0 * p1


def localization_term(bp: Bipartition, gamma: int, spec: ClassSpec, cap: int) -> Series:
    _check_gamma(gamma)
    n = bp.total
    if n > cap:
        raise ValueError("bipartition exceeds the cap")
    ring = spec.ring
    jack = jack_factor(bp, gamma, ring, cap)
    if not jack.coeffs:
        return jack
    f = spec.f(max(n, 1))
    num = weighted_product_coefficient(f, fixed_point_weights(bp, gamma), n)
    return jack * (num / fixed_point_denominator(bp, gamma))


def z_gamma(gamma: int, spec: ClassSpec, cap: int, order=None, y_zero: bool = False) -> Series:
    """The bipartition sum ``Z_gamma(x, y)`` up to total degree ``cap``.

    ``order`` optionally permutes the accumulation (used to test that the sum
    does not depend on it). With ``y_zero`` only the terms surviving ``y = 0``
    are evaluated and the result is univariate in ``x``.
    """
    _check_gamma(gamma)
    terms = [bp for n in range(cap + 1) for bp in enumerate_bipartitions(n)]
    if y_zero:
        terms = [bp for bp in terms if bp.first.length <= 1 and bp.second.length <= 1]
    if order is not None:
        terms = [terms[i] for i in order]
    total = Series.zero(spec.ring, ("x", "y"), cap)
    for bp in terms:
        total = total + localization_term(bp, gamma, spec, cap)
    if y_zero:
        total = restrict_y_zero(total)
    return total


def restrict_y_zero(s: Series) -> Series:
    return substitute(s, "y", Series.zero(s.ring, (), s.cap))


def restrict_x_zero(s: Series) -> Series:
    return substitute(s, "x", Series.zero(s.ring, (), s.cap))


# -- verifications --------------------------------------------------------


def verify_defw(gamma: int, spec: ClassSpec, cap: int, tables: Optional[CoefficientTables] = None) -> Report:
    """Bipartition sum against ``exp((gamma-2) sum b_k p_k - gamma sum a_kl p_k p_l)``."""
    _check_gamma(gamma)
    tables = tables or tangent_coefficients(spec, cap)
    lhs = z_gamma(gamma, spec, cap)
    rhs = closed_form_z(tables, gamma, cap)
    return _compare(f"defw gamma={gamma} class={spec.name} order={cap}", lhs, rhs, cap)


def read_off_coefficients(spec: ClassSpec, cap: int) -> CoefficientTables:
    """``b`` and ``a_kl`` recovered from ``Z_2`` and ``Z_3`` alone.

    ``sum a_kl x^k y^l = -1/4 (log Z_2(x,y) - log Z_2(x,0) - log Z_2(0,y))`` and
    ``sum b_k x^k = log Z_3(x,0) - 3/2 log Z_2(x,0)``.
    """
    z2 = z_gamma(2, spec, cap)
    log_z2 = log_series(z2)
    log_z2_x = log_series(restrict_y_zero(z2))
    log_z2_y = log_series(restrict_x_zero(z2))
    mixed = log_z2 - log_z2_x.embed(("x", "y")) - log_z2_y.embed(("x", "y"))
    mixed = mixed * Fraction(-1, 4)
    z3x = z_gamma(3, spec, cap, y_zero=True)
    b_series = log_series(z3x) - log_z2_x * Fraction(3, 2)
    b = {k: b_series[(k,)] for k in range(1, cap + 1)}
    akl = {(k, l): mixed[(k, l)] for k in range(1, cap) for l in range(1, cap - k + 1)}
    return CoefficientTables("read_off", cap, spec.ring, {}, b, akl)


def verify_readoff(spec: ClassSpec, cap: int) -> Report:
    got = read_off_coefficients(spec, cap)
    want = tangent_coefficients(spec, cap)
    for k in range(1, cap + 1):
        if got.b[k] != want.b[k]:
            return Report(f"readoff class={spec.name} order={cap}", False, ("b", k))
    for key in sorted(got.akl, key=lambda kl: (sum(kl), kl)):
        if got.akl[key] != want.akl[key]:
            return Report(f"readoff class={spec.name} order={cap}", False, ("akl",) + key)
    return Report(f"readoff class={spec.name} order={cap}", True)


def lemma_z2_closed_form(spec: ClassSpec, cap: int) -> Series:
    """``g'(x) g'(y) (D / F(g(x) - g(y)))^2`` with ``D`` the divided difference of ``g``."""
    inv = build_inversion(spec, cap + 1)
    g = inv.g
    xy = ("x", "y")
    gp = derivative(g, "x")
    gpx, gpy = gp.embed(xy), gp.rename({"x": "y"}).embed(xy)
    delta = g.embed(xy) - g.rename({"x": "y"}).embed(xy)
    ratio = divided_difference(g) * inverse_series(substitute(inv.F_even, "x", delta))
    return gpx * gpy * ratio * ratio


def verify_lemma_z2(spec: ClassSpec, cap: int) -> Report:
    lhs = z_gamma(2, spec, cap)
    return _compare(f"z2 class={spec.name} order={cap}", lhs, lemma_z2_closed_form(spec, cap), cap)


def lemma_z3_closed_form(spec: ClassSpec, cap: int) -> Series:
    """``f(-g(x)) g'(x)``."""
    g = build_inversion(spec, cap + 1).g
    return substitute(spec.f(cap + 1), "x", -g) * derivative(g, "x")


def verify_lemma_z3(spec: ClassSpec, cap: int) -> Report:
    lhs = z_gamma(3, spec, cap, y_zero=True)
    return _compare(f"z3 class={spec.name} order={cap}", lhs, lemma_z3_closed_form(spec, cap), cap)


def dots_remainder(spec: ClassSpec, n: int, u_cap: int) -> Series:
    """``prod_{w=a-n}^{a} f(w u) - f(a u)^(n+1)`` in ``(u, a)``, exact for u-degree <= ``u_cap``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    cap = 2 * u_cap  # a-degree never exceeds u-degree
    ring = spec.ring
    f = spec.f(cap)
    ua = ("u", "a")
    au = Series(ring, ua, cap, {(1, 1): 1})
    u = Series(ring, ua, cap, {(1, 0): 1})
    prod = Series.one(ring, ua, cap)
    for j in range(n + 1):
        prod = prod * substitute(f, "x", au - u * j)
    fa = substitute(f, "x", au)
    rem = prod - fa ** (n + 1)
    return Series(ring, ua, cap, {e: c for e, c in rem.coeffs.items() if e[0] <= u_cap})


def verify_lemma_dots(spec: ClassSpec, n: int, u_cap: int) -> Report:
    rem = dots_remainder(spec, n, u_cap)
    bad = [e for e in rem.coeffs if e[1] >= e[0]]
    mismatch = min(bad) if bad else None
    return Report(f"dots class={spec.name} n={n} order={u_cap}", not bad, mismatch)


def alternating_moment(r: int, k: int) -> Fraction:
    """``sum_{a=0}^r (-1)^a a^k / (a! (r-a)!)``."""
    return sum((Fraction((-1) ** a * a ** k, factorial(a) * factorial(r - a)) for a in range(r + 1)), Fraction(0))


def verify_cases(r_max: int, k_max: Optional[int] = None) -> Report:
    k_max = r_max if k_max is None else k_max
    for r in range(r_max + 1):
        for k in range(min(k_max, r) + 1):
            want = (-1) ** r if k == r else 0
            if alternating_moment(r, k) != want:
                return Report(f"cases r<={r_max}", False, (r, k))
    return Report(f"cases r<={r_max}", True)


def verify_dual(cap: int) -> Report:
    """Dual-number run of the tangent formulas against the Chern character tables."""
    got = dual_part_tables(tangent_coefficients(builtin("ch_dual"), cap))
    want = chern_character_tables(cap)
    name = f"dual order={cap}"
    for k in range(1, cap + 1):
        # the rank 2n of T Hilb^n shows up as the extra 2 q_1(1)
        if got.a[k] + (2 if k == 1 else 0) != want.a[k]:
            return Report(name, False, ("a", k))
        if got.b[k] != want.b[k]:
            return Report(name, False, ("b", k))
    for key in sorted(want.akl):
        if got.akl[key] != want.akl[key]:
            return Report(name, False, ("akl",) + key)
    return Report(name, True)


# -- the affine plane ------------------------------------------------------


def _n_cycle_character(lam: Partition) -> int:
    """Symmetric group character of ``lam`` on an ``n``-cycle (Murnaghan-Nakayama)."""
    if all(p == 1 for p in lam[1:]):
        return (-1) ** (len(lam) - 1)
    return 0


def affine_plane_a(spec: ClassSpec, n: int) -> object:
    """``a_n`` from localization on ``Hilb^n(C^2)`` for the anti-diagonal torus.

    There the fixed points are partitions with tangent weights ``+-hook``, the
    fixed-point classes correspond to Schur functions, and ``q_n(1)|0>`` to
    ``p_n``. Reading off the coefficient of ``q_n(1)`` in the degree ``2n-2``
    part of ``phi(T)`` gives

        a_n = (-1)^(n+1) / n * sum_lam chi^lam(n-cycle) / prod hooks
              * [u^(n-1)] prod_cells F(hook u).

    This is independent of the inversion used by the engine.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    f = spec.f(max(n - 1, 1))
    total = spec.ring.zero
    for lam in enumerate_partitions(n):
        chi = _n_cycle_character(lam)
        if not chi:
            continue
        hooks = [c.arm + c.leg + 1 for c in cells(lam)]
        hook_prod = 1
        for h in hooks:
            hook_prod *= h
        # prod_cells F(h u) = prod over the weights +-h of f(w u)
        weights = hooks + [-h for h in hooks]
        coeff = weighted_product_coefficient(f, weights, n - 1) if n > 1 else spec.ring.one
        total = total + coeff * Fraction(chi, hook_prod)
    return total * Fraction((-1) ** (n + 1), n)


def verify_affine_plane(spec: ClassSpec, cap: int) -> Report:
    tables = tangent_coefficients(spec, cap)
    for n in range(1, cap + 1):
        if affine_plane_a(spec, n) != tables.a[n]:
            return Report(f"plane class={spec.name} order={cap}", False, ("a", n))
    return Report(f"plane class={spec.name} order={cap}", True)


def random_class(seed: int = 20240917, degree: int = 6, height: int = 5) -> ClassSpec:
    """A reproducible class with random rational coefficients up to ``x^degree``."""
    rng = random.Random(seed)
    coeffs = []
    for _ in range(degree):
        num = rng.randint(-height, height)
        den = rng.randint(1, height)
        coeffs.append(Fraction(num, den))
    if coeffs[0] == 0:
        coeffs[0] = Fraction(1, 2)
    return ClassSpec.from_coefficients(f"random{seed}", coeffs)
