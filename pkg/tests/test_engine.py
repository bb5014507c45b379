from fractions import Fraction
from math import comb, factorial

import pytest

from hilbchar.engine import (
    BUILTIN_CLASSES,
    ClassSpec,
    build_inversion,
    builtin,
    chern_character_state,
    chern_character_tables,
    dual_part_tables,
    tangent_class_state,
    tangent_coefficients,
    tautological_class_state,
    tautological_coefficients,
)
from hilbchar.fock import H_CLASS, CohClass, FockState, FormalState, SurfaceModel, monomial_degree, monomial_weight, q, specialize
from hilbchar.oracle import random_class
from hilbchar.rings import DUAL
from hilbchar.series import Series, substitute

CLASSES = [builtin(n) for n in ("chern", "todd", "a_hat", "l_genus")] + [random_class()]
IDS = [s.name for s in CLASSES]



def test_build_inversion_examples():
    inv = build_inversion(builtin("chern"), 9)
    assert inv.F_even.univariate_list() == [1, 0, -1] + [0] * 7
    assert inv.g.univariate_list() == [0, 1, 0, -1, 0, 2, 0, -5, 0, 14]
    triv = build_inversion(builtin("trivial"), 6)
    for s in (triv.G, triv.g, triv.H, triv.h):
        assert s.coeffs == {(1,): 1}


def test_dual_inversion_matches_cosh():
    cap = 11
    inv = build_inversion(builtin("ch_dual"), cap)
    expected = {1: DUAL.one}
    for k in range(3, cap + 1, 2):
        expected[k] = DUAL((0, Fraction(2, factorial(k - 1))))
    assert inv.g.coeffs == {(k,): v for k, v in expected.items()}


@pytest.mark.parametrize("spec", CLASSES + [builtin("ch_dual")], ids=IDS + ["ch_dual"])
def test_inversions_round_trip_to_twelve(spec):
    inv = build_inversion(spec, 12)
    x = Series.variable("x", ("x",), 12, spec.ring)
    assert substitute(inv.G, "x", inv.g).agrees_with(x)
    assert substitute(inv.g, "x", inv.G).agrees_with(x)
    assert substitute(inv.H, "x", inv.h).agrees_with(x)
    assert substitute(inv.h, "x", inv.H).agrees_with(x)
    for s in (inv.g, inv.G):
        assert all(e[0] % 2 == 1 for e in s.coeffs)


@pytest.mark.parametrize("spec", CLASSES, ids=IDS)
def test_tangent_structure(spec):
    t = tangent_coefficients(spec, 10)
    assert t.a[1] == 1 and t.a[2] == 0
    assert all(t.a[k] == 0 for k in range(2, 11, 2))
    assert t.b[1] == -spec.f1
    assert all(t.akl[(k, l)] == t.akl[(l, k)] for (k, l) in t.akl)


def test_tangent_chern_values():
    t = tangent_coefficients(builtin("chern"), 6)
    assert (t.b[1], t.b[2]) == (-1, 1)
    assert t.akl[(1, 1)] == Fraction(3, 2)
    assert t.a_list() == [1, 0, Fraction(-1, 3), 0, Fraction(2, 5), 0]


def test_tangent_todd_b_against_sympy():
    sp = pytest.importorskip("sympy")
    x = sp.symbols("x")
    N = 7

    def trunc(e, n=N + 1):
        e = sp.expand(e)
        return sum(e.coeff(x, k) * x ** k for k in range(n + 1))

    f = sp.series(x / (1 - sp.exp(-x)), x, 0, N + 1).removeO()
    F = trunc(f * f.subs(x, -x))
    # Lagrange inversion: [x^n] g = [x^(n-1)] F^n / n
    g = sum(trunc(F ** n, n).coeff(x, n - 1) / n * x ** n for n in range(1, N + 2))
    arg = trunc(trunc(f.subs(x, -g)) ** 2) * trunc(sp.series(1 / sp.diff(g, x), x, 0, N + 1).removeO())
    bser = sp.series(sp.log(trunc(arg)) / 2, x, 0, N + 1).removeO()
    expected = [Fraction(str(bser.coeff(x, k))) for k in range(1, N + 1)]
    assert tangent_coefficients(builtin("todd"), N).b_list() == expected


def test_tautological_examples():
    t = tautological_coefficients(builtin("chern"), 8)
    assert t.c_list() == [Fraction((-1) ** (k + 1), k) for k in range(1, 9)]
    assert all(v == 0 for v in t.b_list())
    assert all(v == 0 for v in t.akl.values())
    triv = tautological_coefficients(builtin("trivial"), 6)
    assert triv.a_list() == [1, 0, 0, 0, 0, 0]
    assert all(v == 0 for v in triv.b_list() + triv.c_list() + list(triv.akl.values()))


@pytest.mark.parametrize("spec", CLASSES, ids=IDS)
def test_tautological_first_coefficients(spec):
    t = tautological_coefficients(spec, 6)
    assert (t.a[1], t.b[1], t.c[1]) == (1, 0, spec.f1)
    assert all(t.akl[(k, l)] == t.akl[(l, k)] for (k, l) in t.akl)


def test_chern_character_examples():
    ch = chern_character_tables(10)
    assert ch.a[1] == 2
    assert ch.b_list()[:4] == [-1, -1, Fraction(-1, 6), Fraction(-1, 6)]
    assert ch.akl[(1, 1)] == Fraction(-3, 2)


def test_dual_part_reproduces_chern_character_tables():
    order = 10
    eps = dual_part_tables(tangent_coefficients(builtin("ch_dual"), order))
    ch = chern_character_tables(order)
    # the q_k(1) row picks up the rank-2 contribution at k = 1
    assert {k: v + (2 if k == 1 else 0) for k, v in eps.a.items()} == ch.a
    assert eps.b == ch.b
    assert eps.akl == ch.akl
    for (k, l), v in ch.akl.items():
        n = k + l
        assert v == (Fraction((-1) ** k * comb(n, k) - 1, factorial(n)) if n % 2 == 0 else 0)


def test_dual_b_series_is_sinh():
    order = 10
    eps = dual_part_tables(tangent_coefficients(builtin("ch_dual"), order))
    # -(1 + x) sinh x
    sinh = {k: Fraction(1, factorial(k)) if k % 2 else Fraction(0) for k in range(order + 1)}
    assert eps.b_list() == [-(sinh[k] + sinh[k - 1]) for k in range(1, order + 1)]


def test_tangent_state_examples():
    chern = builtin("chern")
    assert tangent_class_state(chern, 0) == FormalState.vacuum()
    assert tangent_class_state(chern, 1) == FormalState({(q(1),): 1, (q(1, "K"),): -1})
    assert tangent_class_state(chern, 1, surface=SurfaceModel(2)) == FockState({(q(1),): 1})


@pytest.mark.parametrize("name", sorted(BUILTIN_CLASSES))
def test_n_equals_one_ground_truth(name):
    spec = builtin(name)
    r = spec.ring
    assert tangent_class_state(spec, 1) == FormalState({(q(1),): r.one, (q(1, "K"),): -spec.f1}, r)
    assert tautological_class_state(spec, 1) == FormalState({(q(1),): r.one, (q(1, "F"),): spec.f1}, r)


def test_tautological_state_examples():
    assert tautological_class_state(builtin("trivial"), 1) == FormalState({(q(1),): 1})
    s = tautological_class_state(builtin("chern"), 2, surface=SurfaceModel(2), F_class=H_CLASS)
    h1, h2, o1, o2 = q(1, "h"), q(2, "h"), q(1), q(2)
    half = Fraction(1, 2)
    assert s == FockState({(o1, o1): half, (o1, h1): 1, (o2,): -half, (h1, h1): half, (h2,): -half})


def test_chern_character_state_examples():
    assert chern_character_state(0) == FormalState({})
    assert chern_character_state(1) == FormalState({(q(1),): 2, (q(1, "K"),): -1})
    for n in range(1, 6):
        s = chern_character_state(n)
        rank = {m: c for m, c in s.terms.items() if monomial_degree(m) == 0}
        assert rank == {(q(1),) * n: Fraction(2 * n, factorial(n))}


@pytest.mark.parametrize("spec", CLASSES, ids=IDS)
def test_gamma_two_kills_canonical_terms(spec):
    tables = tangent_coefficients(spec, 5)
    state = specialize(tables.linear_state().__class__(
        {m: c for m, c in tables.linear_state().terms.items() if m[0].label == "K"}), SurfaceModel(2))
    assert state == FockState({})


@pytest.mark.parametrize("gamma", [2, 3, 4])
def test_degree_bookkeeping(gamma):
    s = tangent_class_state(builtin("todd"), 5, surface=SurfaceModel(gamma))
    for m in s.terms:
        if any(g.label == "1" for g in m):
            assert monomial_degree(m) < 2 * monomial_weight(m)
        else:
            assert monomial_degree(m) == 2 * monomial_weight(m)


def test_class_spec_validation():
    with pytest.raises(ValueError):
        ClassSpec("bad", lambda k: 2)
    with pytest.raises(KeyError):
        builtin("pontryagin")
    s = ClassSpec.from_series("poly", Series.from_list([1, 2, 3], 2))
    with pytest.raises(ValueError):
        s.f(3)
    with pytest.raises(ValueError):
        tangent_coefficients(builtin("chern"), 0)


def test_state_with_concrete_F_class():
    s = tautological_class_state(builtin("todd"), 1, surface=SurfaceModel(3), F_class=CohClass(2, 5))
    half = Fraction(1, 2)
    assert s == FockState({(q(1),): 1 + 2 * half, (q(1, "h"),): 5 * half})
