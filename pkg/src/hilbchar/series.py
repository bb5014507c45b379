"""Truncated multivariate formal power series over an exact coefficient ring.

A :class:`Series` stores its coefficients in a dict keyed by exponent tuples,
one entry per variable. Every series carries a *cap*: coefficients of total
degree above the cap are unknown and are never stored. Arithmetic results
carry the smallest cap of their operands, so a coefficient reported by a
series is always trustworthy.

Variables are drawn from ``x, y, u, a`` and are always kept in that order.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _iproduct

from .rings import RATIONALS, CoefficientRing, RingMismatch, format_element, ring_of

VARIABLES = ("x", "y", "u", "a")


class SeriesError(ValueError):
    pass


def _canonical(variables) -> tuple:
    variables = tuple(variables)
    for v in variables:
        if v not in VARIABLES:
            raise SeriesError(f"unknown variable {v!r}")
    if len(set(variables)) != len(variables):
        raise SeriesError(f"repeated variable in {variables}")
    return tuple(v for v in VARIABLES if v in variables)


def graded_key(exps: tuple) -> tuple:
    """Graded-lex order: by total degree, then larger leading exponents first."""
    return (sum(exps), tuple(-e for e in exps))


class Series:
    __slots__ = ("ring", "variables", "cap", "coeffs")

    def __init__(self, ring: CoefficientRing, variables, cap: int, coeffs=None):
        if cap < 0:
            raise SeriesError("cap must be nonnegative")
        self.ring = ring
        self.variables = _canonical(variables)
        self.cap = cap
        n = len(self.variables)
        fast = ring.kind == "rationals"
        clean = {}
        for exps, c in (coeffs or {}).items():
            if len(exps) != n:
                raise SeriesError(f"exponent {exps} does not match variables {self.variables}")
            if sum(exps) > cap or not c:
                continue
            clean[tuple(exps)] = c if fast and type(c) is Fraction else ring(c)
        self.coeffs = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, value, variables=("x",), cap=0, ring=None):
        ring = ring or ring_of(value)
        return cls(ring, variables, cap, {(0,) * len(_canonical(variables)): value})

    @classmethod
    def zero(cls, ring, variables=("x",), cap=0):
        return cls(ring, variables, cap)

    @classmethod
    def one(cls, ring, variables=("x",), cap=0):
        return cls.constant(ring.one, variables, cap, ring)

    @classmethod
    def variable(cls, name, variables=("x",), cap=1, ring=RATIONALS):
        variables = _canonical(variables)
        exps = tuple(int(v == name) for v in variables)
        if sum(exps) != 1:
            raise SeriesError(f"{name!r} not among {variables}")
        return cls(ring, variables, cap, {exps: ring.one})

    @classmethod
    def from_list(cls, coeffs, cap=None, var="x", ring=RATIONALS):
        """Univariate series ``sum coeffs[k] var^k``; cap defaults to the list length minus one."""
        if cap is None:
            cap = len(coeffs) - 1
        return cls(ring, (var,), cap, {(k,): c for k, c in enumerate(coeffs)})

    # -- basic protocol ----------------------------------------------------

    def _check(self, other: "Series"):
        if not isinstance(other, Series):
            raise TypeError(f"expected Series, got {type(other).__name__}")
        if other.variables != self.variables:
            raise SeriesError(f"variable mismatch: {self.variables} vs {other.variables}")
        if other.ring != self.ring:
            raise RingMismatch(f"ring mismatch: {self.ring} vs {other.ring}")

    def _scalar(self, value):
        return self.constant(self.ring(value), self.variables, self.cap, self.ring)

    def __add__(self, other):
        if not isinstance(other, Series):
            other = self._scalar(other)
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.ring, self.variables, self.cap, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, Series):
            other = self._scalar(other)
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Series):
            return mul(self, other)
        other = self.ring(other)
        return Series(self.ring, self.variables, self.cap, {e: c * other for e, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series):
            return mul(self, inverse_series(other))
        if isinstance(other, int):
            return Series(self.ring, self.variables, self.cap, {e: c / other for e, c in self.coeffs.items()})
        return self * self.ring.inverse(other)

    def __pow__(self, n: int):
        if n < 0:
            return inverse_series(self) ** (-n)
        result = Series.one(self.ring, self.variables, self.cap)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Series):
            return (self.variables == other.variables and self.ring == other.ring
                    and self.cap == other.cap and self.coeffs == other.coeffs)
        return NotImplemented

    __hash__ = None

    def agrees_with(self, other: "Series", cap=None) -> bool:
        """Equality of coefficients up to ``cap`` (default: the smaller cap)."""
        return first_mismatch(self, other, cap) is None

    def __repr__(self):
        return f"Series({self}, cap={self.cap})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for exps in sorted(self.coeffs, key=graded_key):
            c = self.coeffs[exps]
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exps) if e
            )
            cs = format_element(c)
            if "+" in cs[1:] or "-" in cs[1:]:
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- accessors ---------------------------------------------------------

    def coefficient(self, exponents):
        return coefficient(self, exponents)

    def __getitem__(self, exponents):
        if isinstance(exponents, int):
            exponents = (exponents,)
        return coefficient(self, exponents)

    def constant_term(self):
        return self.coeffs.get((0,) * len(self.variables), self.ring.zero)

    def univariate_list(self):
        """Coefficients ``[c_0, ..., c_cap]`` of a univariate series."""
        if len(self.variables) != 1:
            raise SeriesError("univariate_list needs a univariate series")
        return [self.coeffs.get((k,), self.ring.zero) for k in range(self.cap + 1)]

    def homogeneous_part(self, degree: int) -> "Series":
        return Series(self.ring, self.variables, self.cap,
                      {e: c for e, c in self.coeffs.items() if sum(e) == degree})

    def truncate(self, cap: int) -> "Series":
        if cap > self.cap:
            raise SeriesError(f"cannot raise cap from {self.cap} to {cap}")
        return Series(self.ring, self.variables, cap, self.coeffs)

    def valuation(self):
        if not self.coeffs:
            return None
        return min(sum(e) for e in self.coeffs)

    def embed(self, variables) -> "Series":
        """The same series viewed in a larger variable set."""
        variables = _canonical(variables)
        if not set(self.variables) <= set(variables):
            raise SeriesError(f"{self.variables} not contained in {variables}")
        idx = [self.variables.index(v) if v in self.variables else None for v in variables]
        coeffs = {tuple(e[i] if i is not None else 0 for i in idx): c for e, c in self.coeffs.items()}
        return Series(self.ring, variables, self.cap, coeffs)

    def rename(self, mapping: dict) -> "Series":
        """Rename variables, e.g. ``{"x": "y"}`` turns g(x) into g(y)."""
        new = [mapping.get(v, v) for v in self.variables]
        target = _canonical(new)
        perm = [new.index(v) for v in target]
        coeffs = {tuple(e[i] for i in perm): c for e, c in self.coeffs.items()}
        return Series(self.ring, target, self.cap, coeffs)

    def shift(self, var: str, k: int) -> "Series":
        """Multiply by ``var^k`` (exact, so the cap moves by ``k``).

        Negative ``k`` divides by ``var^-k`` and requires divisibility.
        """
        i = self.variables.index(var)
        coeffs = {}
        for e, c in self.coeffs.items():
            if e[i] + k < 0:
                raise SeriesError(f"series is not divisible by {var}^{-k}")
            coeffs[e[:i] + (e[i] + k,) + e[i + 1:]] = c
        return Series(self.ring, self.variables, self.cap + k, coeffs)

    def map_coefficients(self, fn, ring=None) -> "Series":
        ring = ring or self.ring
        return Series(ring, self.variables, self.cap, {e: fn(c) for e, c in self.coeffs.items()})


# -- the operations ---------------------------------------------------------


def add(s: Series, t: Series) -> Series:
    s._check(t)
    cap = min(s.cap, t.cap)
    out = {e: c for e, c in s.coeffs.items() if sum(e) <= cap}
    for e, c in t.coeffs.items():
        if sum(e) <= cap:
            out[e] = out[e] + c if e in out else c
    return Series(s.ring, s.variables, cap, out)


def mul(s: Series, t: Series) -> Series:
    s._check(t)
    cap = min(s.cap, t.cap)
    out = {}
    tt = [(e, sum(e), c) for e, c in t.coeffs.items()]
    for e1, c1 in s.coeffs.items():
        d1 = sum(e1)
        if d1 > cap:
            continue
        for e2, d2, c2 in tt:
            if d1 + d2 > cap:
                continue
            e = tuple(p + q for p, q in zip(e1, e2))
            v = c1 * c2
            out[e] = out[e] + v if e in out else v
    return Series(s.ring, s.variables, cap, out)


def inverse_series(s: Series) -> Series:
    """Multiplicative inverse of a series with unit constant term."""
    c0 = s.constant_term()
    if not s.ring.is_unit(c0):
        raise SeriesError("constant term is not a unit")
    inv0 = s.ring.inverse(c0)
    rest = s * inv0 - 1
    result = Series.one(s.ring, s.variables, s.cap)
    term = Series.one(s.ring, s.variables, s.cap)
    for _ in range(s.cap):
        term = -(term * rest)
        if not term.coeffs:
            break
        result = result + term
    return result * inv0


def exp_series(s: Series) -> Series:
    """``sum s^k / k!``; requires a vanishing constant term."""
    if s.constant_term():
        raise SeriesError("exp_series needs a zero constant term")
    result = Series.one(s.ring, s.variables, s.cap)
    term = Series.one(s.ring, s.variables, s.cap)
    for k in range(1, s.cap + 1):
        term = (term * s) / k
        if not term.coeffs:
            break
        result = result + term
    return result


def log_series(s: Series) -> Series:
    """``sum (-1)^(k+1) (s-1)^k / k``; requires constant term 1."""
    if s.constant_term() != 1:
        raise SeriesError("log_series needs constant term 1")
    t = s - 1
    result = Series.zero(s.ring, s.variables, s.cap)
    power = Series.one(s.ring, s.variables, s.cap)
    for k in range(1, s.cap + 1):
        power = power * t
        if not power.coeffs:
            break
        result = result + (power / k if k % 2 else -(power / k))
    return result


def derivative(s: Series, var: str) -> Series:
    if var not in s.variables:
        raise SeriesError(f"{var!r} is not a variable of this series")
    i = s.variables.index(var)
    out = {}
    for e, c in s.coeffs.items():
        if e[i]:
            out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
    return Series(s.ring, s.variables, max(s.cap - 1, 0), out)


def substitute(s: Series, var: str, t: Series) -> Series:
    """Replace ``var`` by ``t`` in ``s``.

    The result lives in the union of ``t``'s variables and the remaining
    variables of ``s``; ``t`` must have zero constant term.
    """
    if var not in s.variables:
        raise SeriesError(f"{var!r} is not a variable of this series")
    if t.ring != s.ring:
        raise RingMismatch(f"ring mismatch: {s.ring} vs {t.ring}")
    if t.constant_term():
        raise SeriesError("substituted series must have zero constant term")
    i = s.variables.index(var)
    rest_vars = s.variables[:i] + s.variables[i + 1:]
    target = _canonical(set(rest_vars) | set(t.variables))
    cap = min(s.cap, t.cap)

    by_power = {}
    for e, c in s.coeffs.items():
        by_power.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c

    tt = t.embed(target).truncate(cap)
    result = Series.zero(s.ring, target, cap)
    power = Series.one(s.ring, target, cap)
    for j in range(max(by_power, default=0) + 1):
        if j:
            power = power * tt
            if not power.coeffs:
                break
        if j in by_power:
            part = Series(s.ring, rest_vars, cap, by_power[j]).embed(target)
            result = result + part * power
    return result


def compose_inverse(s: Series) -> Series:
    """Compositional inverse of a univariate series ``s = c1 x + ...`` with unit ``c1``.

    Writing ``s = x / u(x)``, iterate ``g <- x * u(g)``; each pass fixes one
    more coefficient.
    """
    if len(s.variables) != 1:
        raise SeriesError("compose_inverse needs a univariate series")
    if s.cap < 1:
        raise SeriesError("compose_inverse needs cap >= 1")
    if s.constant_term():
        raise SeriesError("compose_inverse needs zero constant term")
    (var,) = s.variables
    if not s.ring.is_unit(s[(1,)]):
        raise SeriesError("linear coefficient is not a unit")
    u = inverse_series(s.shift(var, -1))
    g = Series.zero(s.ring, s.variables, s.cap)
    for _ in range(s.cap):
        g = substitute(u, var, g).shift(var, 1)
    return g


def coefficient(s: Series, exponents):
    exponents = tuple(exponents)
    if len(exponents) != len(s.variables):
        raise SeriesError(f"exponent {exponents} does not match variables {s.variables}")
    if sum(exponents) > s.cap:
        raise SeriesError(f"exponent {exponents} lies beyond the cap {s.cap}")
    return s.coeffs.get(exponents, s.ring.zero)


def divided_difference(g: Series) -> Series:
    """``(g(x) - g(y)) / (x - y)`` as a series in ``(x, y)``, computed termwise."""
    if g.variables != ("x",):
        raise SeriesError("divided_difference needs a univariate series in x")
    if g.constant_term():
        raise SeriesError("divided_difference needs zero constant term")
    out = {}
    for (k,), c in g.coeffs.items():
        for i in range(k):
            out[(i, k - 1 - i)] = c
    return Series(g.ring, ("x", "y"), max(g.cap - 1, 0), out)


def first_mismatch(s: Series, t: Series, cap=None):
    """The graded-lex first exponent where ``s`` and ``t`` differ, or None."""
    s._check(t)
    limit = min(s.cap, t.cap) if cap is None else cap
    if limit > min(s.cap, t.cap):
        raise SeriesError(f"comparison cap {limit} exceeds available caps")
    keys = {e for e in s.coeffs if sum(e) <= limit} | {e for e in t.coeffs if sum(e) <= limit}
    bad = [e for e in keys if s.coeffs.get(e, s.ring.zero) != t.coeffs.get(e, t.ring.zero)]
    return min(bad, key=graded_key) if bad else None


def monomials(variables, cap):
    """All exponent tuples of total degree <= cap."""
    n = len(variables)
    for e in _iproduct(range(cap + 1), repeat=n):
        if sum(e) <= cap:
            yield e


def power_sum_xy(k: int, cap: int, ring=RATIONALS) -> Series:
    """``x^k + y^k``."""
    return Series(ring, ("x", "y"), cap, {(k, 0): 1, (0, k): 1} if k else {(0, 0): 2})
