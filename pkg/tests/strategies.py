"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from hilbchar.rings import DUAL, RATIONALS, poly_in_y
from hilbchar.series import Series

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)

RINGS = [RATIONALS, DUAL, poly_in_y(3)]


def elements(ring):
    if ring.kind == "rationals":
        return small_fractions
    return st.lists(small_fractions, min_size=ring.max_degree + 1, max_size=ring.max_degree + 1).map(ring)


@st.composite
def univariate(draw, cap=6, constant=None, linear=None, ring=RATIONALS):
    coeffs = draw(st.lists(elements(ring), min_size=cap + 1, max_size=cap + 1))
    if constant is not None:
        coeffs[0] = ring(constant)
    if linear is not None:
        coeffs[1] = ring(linear)
    return Series.from_list(coeffs, cap, ring=ring)


@st.composite
def bivariate(draw, cap=5, constant=None):
    coeffs = {}
    for i in range(cap + 1):
        for j in range(cap + 1 - i):
            coeffs[(i, j)] = draw(small_fractions)
    if constant is not None:
        coeffs[(0, 0)] = Fraction(constant)
    return Series(RATIONALS, ("x", "y"), cap, coeffs)
