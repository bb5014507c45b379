"""Symmetric functions of bounded degree and Jack polynomials.

Symmetric functions are stored by their coefficients on partitions of a fixed
degree, in either the monomial (``m``) or power-sum (``p``) basis. Jack
polynomials are built by Gram-Schmidt against the alpha-deformed power-sum
pairing ``<p_lam, p_mu> = delta z_lam alpha^len(lam)`` and normalized to be
monic in ``m_lam``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .partitions import Partition, dominance_leq, enumerate_partitions, z_lambda
from .rings import RATIONALS, CoefficientRing
from .series import Series

MAX_DEGREE = 12


class DegreeError(ValueError):
    pass


@dataclass(frozen=True)
class SymFunc:
    degree: int
    basis: str
    coeffs: dict = field(hash=False)
    ring: CoefficientRing = RATIONALS

    def __post_init__(self):
        if self.basis not in ("monomial", "power_sum"):
            raise ValueError(f"unknown basis {self.basis!r}")
        for lam in self.coeffs:
            if sum(lam) != self.degree:
                raise ValueError(f"partition {lam} has size != {self.degree}")

    def __getitem__(self, lam):
        return self.coeffs.get(Partition(lam), Fraction(0))

    def nonzero(self) -> dict:
        return {lam: c for lam, c in self.coeffs.items() if c}

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        return (self.degree, self.basis) == (other.degree, other.basis) and self.nonzero() == other.nonzero()

    def to_power_sum(self) -> "SymFunc":
        if self.basis == "power_sum":
            return self
        a = monomial_to_power(self.degree)
        return _apply(self, a, "power_sum")

    def to_monomial(self) -> "SymFunc":
        if self.basis == "monomial":
            return self
        m = power_to_monomial(self.degree)
        return _apply(self, m, "monomial")


def _apply(f: SymFunc, matrix: dict, basis: str) -> SymFunc:
    out = {}
    for lam, c in f.coeffs.items():
        if not c:
            continue
        for mu, v in matrix[lam].items():
            out[mu] = out.get(mu, 0) + c * v
    return SymFunc(f.degree, basis, out, f.ring)


def monomial(lam) -> SymFunc:
    lam = Partition(lam)
    return SymFunc(lam.size, "monomial", {lam: Fraction(1)})


def power_sum(lam) -> SymFunc:
    lam = Partition(lam)
    return SymFunc(lam.size, "power_sum", {lam: Fraction(1)})


def _check_degree(n: int, maximum: int):
    if n < 0 or n > maximum:
        raise DegreeError(f"degree {n} outside 0..{maximum}")


def _times_power_sum(r: int, mu: Partition) -> dict:
    """``p_r * m_mu`` in the monomial basis."""
    candidates = {Partition(sorted(mu + (r,), reverse=True))}
    for i in set(range(len(mu))):
        bumped = list(mu)
        bumped[i] += r
        candidates.add(Partition(sorted(bumped, reverse=True)))
    out = {}
    for nu in candidates:
        # count positions of nu that reduce to mu after removing r
        count = 0
        for i, part in enumerate(nu):
            if part < r:
                continue
            rest = list(nu)
            rest[i] -= r
            if Partition(sorted((p for p in rest if p), reverse=True)) == mu:
                count += 1
        if count:
            out[nu] = count
    return out


@lru_cache(maxsize=None)
def _p_to_m(n: int) -> dict:
    result = {}
    for lam in enumerate_partitions(n):
        current = {Partition(): 1}
        for r in reversed(lam):
            nxt = {}
            for mu, c in current.items():
                for nu, v in _times_power_sum(r, mu).items():
                    nxt[nu] = nxt.get(nu, 0) + c * v
            current = nxt
        result[lam] = {mu: Fraction(c) for mu, c in current.items()}
    return result


def power_to_monomial(n: int, maximum: int = MAX_DEGREE) -> dict:
    """Transition ``M`` with ``p_lam = sum_mu M[lam][mu] m_mu``."""
    _check_degree(n, maximum)
    return _p_to_m(n)


@lru_cache(maxsize=None)
def _m_to_p(n: int) -> dict:
    # M is triangular: p_lam involves only m_mu with mu dominating lam,
    # and those come no later than lam in reverse-lex order
    order = enumerate_partitions(n)
    m = _p_to_m(n)
    inv = {}
    for lam in order:
        # m_lam = (p_lam - sum_{mu > lam} M[lam][mu] m_mu) / M[lam][lam]
        row = {lam: Fraction(1)}
        for mu, c in m[lam].items():
            if mu == lam:
                continue
            for nu, v in inv[mu].items():
                row[nu] = row.get(nu, 0) - c * v
        diag = m[lam][lam]
        inv[lam] = {nu: v / diag for nu, v in row.items() if v}
    return inv


def monomial_to_power(n: int, maximum: int = MAX_DEGREE) -> dict:
    """Inverse transition: ``m_lam = sum_mu A[lam][mu] p_mu``."""
    _check_degree(n, maximum)
    return _m_to_p(n)


def jack_inner(f: SymFunc, g: SymFunc, alpha) -> Fraction:
    if f.degree != g.degree:
        raise DegreeError(f"degree mismatch: {f.degree} vs {g.degree}")
    fp, gp = f.to_power_sum(), g.to_power_sum()
    alpha = Fraction(alpha)
    return sum(
        (c * gp.coeffs.get(lam, 0) * z_lambda(lam) * alpha ** len(lam) for lam, c in fp.coeffs.items()),
        Fraction(0),
    )


def reverse_lex_order(n: int) -> list:
    """Linear extension of dominance, smallest first."""
    return list(reversed(enumerate_partitions(n)))


def n_statistic_order(n: int) -> list:
    """Another linear extension: by decreasing ``sum (i-1) lam_i``, ties anti-lex."""
    return sorted(enumerate_partitions(n), key=lambda lam: (-sum(i * p for i, p in enumerate(lam)), lam))


@lru_cache(maxsize=None)
def _jack_family(n: int, alpha: Fraction, order_name: str) -> dict:
    order = reverse_lex_order(n) if order_name == "reverse_lex" else n_statistic_order(n)
    a = _m_to_p(n)
    weight = {lam: z_lambda(lam) * alpha ** len(lam) for lam in order}

    def inner(u, v):
        return sum((c * v[lam] * weight[lam] for lam, c in u.items() if lam in v), Fraction(0))

    done = []  # (P in power-sum coordinates, <P,P>)
    family = {}
    for lam in order:
        vec = dict(a[lam])
        for prev, norm in done:
            coef = inner(vec, prev) / norm
            if coef:
                for mu, v in prev.items():
                    vec[mu] = vec.get(mu, 0) - coef * v
        vec = {mu: v for mu, v in vec.items() if v}
        done.append((vec, inner(vec, vec)))
        family[lam] = SymFunc(n, "power_sum", vec).to_monomial().nonzero()
    return family


def jack_polynomial(lam, alpha, order: str = "reverse_lex", maximum: int = MAX_DEGREE) -> SymFunc:
    """Jack polynomial ``P^alpha_lam`` in the monomial basis."""
    lam = Partition(lam)
    _check_degree(lam.size, maximum)
    alpha = Fraction(alpha)
    if alpha == 0:
        raise ValueError("Jack parameter must be nonzero")
    coeffs = _jack_family(lam.size, alpha, order)[lam]
    return SymFunc(lam.size, "monomial", dict(coeffs))


def is_unitriangular(f: SymFunc, lam: Partition) -> bool:
    """``f = m_lam + (terms m_mu with mu strictly dominated by lam)``."""
    f = f.to_monomial()
    if f[lam] != 1:
        return False
    return all(mu == lam or dominance_leq(mu, lam) for mu in f.nonzero())


@lru_cache(maxsize=None)
def _two_var_monomial(mu: Partition) -> dict:
    if len(mu) > 2:
        return {}
    a, b = (tuple(mu) + (0, 0))[:2]
    if a == b:
        return {(a, a): 1}
    return {(a, b): 1, (b, a): 1}


def specialize_two_vars(f: SymFunc, ring: CoefficientRing = RATIONALS, cap=None) -> Series:
    """``f(x, y, 0, 0, ...)`` as a homogeneous series in ``(x, y)``."""
    f = f.to_monomial()
    cap = f.degree if cap is None else cap
    out = {}
    for mu, c in f.coeffs.items():
        if not c:
            continue
        for e, v in _two_var_monomial(mu).items():
            out[e] = out.get(e, 0) + c * v
    return Series(ring, ("x", "y"), cap, out)


def schur_two_vars(a: int, b: int, ring: CoefficientRing = RATIONALS, cap=None) -> Series:
    """``s_(a,b)(x, y) = (x^(a+1) y^b - y^(a+1) x^b) / (x - y) = (xy)^b (x^(a-b) + ... + y^(a-b))``."""
    if a < b or b < 0:
        raise ValueError(f"need a >= b >= 0, got ({a}, {b})")
    cap = a + b if cap is None else cap
    d = a - b
    return Series(ring, ("x", "y"), cap, {(b + i, b + d - i): 1 for i in range(d + 1)})
