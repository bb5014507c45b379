import random
from fractions import Fraction
from math import factorial

import pytest

from hilbchar.engine import builtin, chern_character_tables, closed_form_z, tangent_coefficients
from hilbchar.oracle import (
    affine_plane_a,
    alternating_moment,
    dots_remainder,
    fixed_point_denominator,
    localization_term,
    read_off_coefficients,
    restrict_y_zero,
    verify_affine_plane,
    verify_cases,
    verify_defw,
    verify_dual,
    verify_lemma_dots,
    verify_lemma_z2,
    verify_lemma_z3,
    verify_readoff,
    weighted_product_coefficient,
    z_gamma,
)
from hilbchar.partitions import EMPTY, Bipartition, Partition, enumerate_bipartitions
from hilbchar.series import Series, first_mismatch

ONE = Partition((1,))
chern, todd, a_hat, trivial = (builtin(n) for n in ("chern", "todd", "a_hat", "trivial"))


def test_localization_term_examples():
    assert localization_term(Bipartition(EMPTY, EMPTY), 2, chern, 4).coeffs == {(0, 0): 1}
    assert localization_term(Bipartition(ONE, EMPTY), 2, chern, 4).coeffs == {}
    assert localization_term(Bipartition(EMPTY, ONE), 3, chern, 4).coeffs == {(1, 0): -1, (0, 1): -1}
    with pytest.raises(ValueError):
        localization_term(Bipartition(EMPTY, ONE), 1, chern, 4)


def test_weighted_product_coefficient_direct():
    # expand prod (1 + w u) by hand
    f = Series.from_list([1, 1], 5)
    weights = [1, -2, 3]
    poly = [Fraction(1)]
    for w in weights:
        poly = [a + w * b for a, b in zip(poly + [0], [0] + poly)]
    for n in range(4):
        assert weighted_product_coefficient(f, weights, n) == poly[n]


def test_z_gamma_examples():
    for spec in (chern, todd):
        assert z_gamma(2, spec, 3)[(0, 0)] == 1
    z3 = z_gamma(3, chern, 3)
    assert (z3[(1, 0)], z3[(0, 1)]) == (-1, -1)
    z2 = z_gamma(2, chern, 3)
    assert (z2[(1, 0)], z2[(0, 1)]) == (0, 0)


def test_z_gamma_homogeneity():
    for n in range(6):
        for bp in enumerate_bipartitions(n):
            term = localization_term(bp, 3, todd, 6)
            assert all(sum(e) == n for e in term.coeffs)


def test_denominators_nonzero():
    for gamma in (2, 3, 4):
        for n in range(11):
            for bp in enumerate_bipartitions(n):
                assert fixed_point_denominator(bp, gamma) != 0


def test_accumulation_order_is_irrelevant():
    n_terms = sum(len(enumerate_bipartitions(n)) for n in range(7))
    order = list(range(n_terms))
    random.Random(7).shuffle(order)
    assert z_gamma(3, todd, 6, order=order) == z_gamma(3, todd, 6)


@pytest.mark.parametrize("gamma,spec,cap", [(2, chern, 6), (3, todd, 6), (4, a_hat, 6)])
def test_defw_passes(gamma, spec, cap):
    r = verify_defw(gamma, spec, cap)
    assert r.passed, r.line()


def test_defw_detects_perturbed_akl():
    tables = tangent_coefficients(chern, 6)
    tables.akl[(1, 1)] += 1
    r = verify_defw(2, chern, 6, tables)
    assert not r.passed
    # -2 (x + y)^2 shifts x^2, xy and y^2; graded-lex puts x^2 first
    assert r.mismatch == (2, 0)
    lhs, rhs = z_gamma(2, chern, 6), closed_form_z(tables, 2, 6)
    diff = (lhs - rhs).homogeneous_part(2)
    assert diff.coeffs == {(2, 0): 2, (1, 1): 4, (0, 2): 2}


def test_read_off_examples():
    t = read_off_coefficients(chern, 6)
    assert t.akl[(1, 1)] == Fraction(3, 2)
    assert (t.b[1], t.b[2]) == (-1, 1)
    z = read_off_coefficients(trivial, 6)
    assert all(v == 0 for v in list(z.b.values()) + list(z.akl.values()))
    assert verify_readoff(todd, 6).passed


def test_verify_z2_examples():
    assert verify_lemma_z2(trivial, 6).passed
    assert z_gamma(2, trivial, 6).coeffs == {(0, 0): 1}
    assert verify_lemma_z2(chern, 8).passed
    assert verify_lemma_z2(a_hat, 8).passed


def test_verify_z3_examples():
    assert restrict_y_zero(z_gamma(3, trivial, 6)).coeffs == {(0,): 1}
    assert verify_lemma_z3(trivial, 6).passed
    z = z_gamma(3, chern, 4, y_zero=True)
    assert z[(0,)] == 1 and z[(1,)] == -1
    assert verify_lemma_z3(todd, 8).passed


def test_dots_remainder_examples():
    assert dots_remainder(chern, 0, 6).coeffs == {}
    assert dots_remainder(chern, 1, 6).coeffs == {(1, 0): -1, (2, 1): -1}
    assert verify_lemma_dots(todd, 5, 8).passed
    with pytest.raises(ValueError):
        dots_remainder(chern, -1, 4)


def test_cases_examples():
    assert alternating_moment(2, 1) == 0
    assert alternating_moment(2, 2) == 1
    assert verify_cases(10).passed
    # the k = r + 1 moment is not covered by the identity
    assert alternating_moment(3, 4) != 0


def test_dual_check():
    assert verify_dual(10).passed


def test_affine_plane_matches_engine():
    for spec in (chern, todd, a_hat):
        assert verify_affine_plane(spec, 8).passed
    # the Chern character coefficient a_3 seen on the affine plane
    eps = affine_plane_a(builtin("ch_dual"), 3)
    assert eps.b == Fraction(1, 3) == chern_character_tables(3).a[3]
    for k in (5, 7):
        assert affine_plane_a(builtin("ch_dual"), k).b == Fraction(2, factorial(k))


def test_report_lines():
    ok = verify_cases(3)
    assert ok.line() == "PASS cases r<=3"
    tables = tangent_coefficients(chern, 4)
    tables.akl[(1, 1)] += 1
    assert verify_defw(2, chern, 4, tables).line().startswith("FAIL defw gamma=2 class=chern order=4 first mismatch at (2, 0)")


def test_first_mismatch_order():
    a = Series.zero(chern.ring, ("x", "y"), 4)
    b = Series(chern.ring, ("x", "y"), 4, {(0, 2): 1, (1, 1): 1, (3, 0): 1})
    assert first_mismatch(a, b) == (1, 1)
