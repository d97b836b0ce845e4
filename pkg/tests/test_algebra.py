from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from pergraph.algebra import (
    DimensionError,
    LaurentPoly,
    UniPoly,
    determinant,
    gcd_and_real_roots,
    poly_gcd,
    real_roots,
    squarefree_part,
    sylvester_resultant,
    vanishes_at,
)
from pergraph.algebra.linalg import leibniz_determinant

X = sympy.Symbol("x")

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
unipolys = st.lists(small, min_size=1, max_size=6).map(UniPoly)
nonzero_unipolys = unipolys.filter(lambda p: not p.is_zero())


def to_sympy(p: UniPoly):
    cs = [sympy.Rational(c.numerator, c.denominator) for c in p.coeffs]
    return sympy.Poly(list(reversed(cs)) or [0], X, domain="QQ")


def laurent(dim, max_terms=5):
    mono = st.tuples(st.tuples(*[st.integers(-2, 2)] * dim), st.integers(0, 2))
    return st.dictionaries(mono, small, max_size=max_terms).map(lambda t: LaurentPoly(dim, t))


# univariate -------------------------------------------------------------


@given(unipolys, unipolys)
def test_unipoly_ring_matches_sympy(p, q):
    assert to_sympy(p * q) == to_sympy(p) * to_sympy(q)
    assert to_sympy(p + q) == to_sympy(p) + to_sympy(q)


@given(unipolys, nonzero_unipolys)
def test_divmod_identity(p, q):
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.degree < q.degree


@given(nonzero_unipolys, nonzero_unipolys)
def test_gcd_matches_sympy(p, q):
    g = poly_gcd(p, q)
    assert g.lead == 1
    assert to_sympy(g) == sympy.gcd(to_sympy(p), to_sympy(q)).monic()


@settings(max_examples=60)
@given(nonzero_unipolys, nonzero_unipolys)
def test_resultant_magnitude_matches_sympy(p, q):
    if p.degree < 1 or q.degree < 1:
        return
    expected = sympy.resultant(to_sympy(p).as_expr(), to_sympy(q).as_expr(), X)
    assert abs(sylvester_resultant(p, q)) == abs(Fraction(int(sympy.numer(expected)), int(sympy.denom(expected))))


@given(small.filter(bool), st.lists(small, min_size=1, max_size=4), nonzero_unipolys)
def test_resultant_product_formula(lead, roots, q):
    # Res(p, q) = lead^deg(q) * prod q(root)
    if q.degree < 1:
        return
    p = UniPoly.from_roots(roots) * lead
    expected = lead ** q.degree
    for r in roots:
        expected *= q(r)
    assert sylvester_resultant(p, q) == expected


@settings(max_examples=60)
@given(nonzero_unipolys)
def test_real_root_count_matches_sympy(p):
    roots = real_roots(p)
    expected = sympy.Poly(to_sympy(p).as_expr(), X).count_roots() if p.degree > 0 else 0
    # sympy counts distinct roots
    assert len(roots) == expected
    for r in roots:
        assert r.lo <= r.hi
        assert vanishes_at(p, r)


@given(st.lists(small, min_size=1, max_size=5, unique=True))
def test_real_roots_recover_rational_roots_exactly(rs):
    roots = real_roots(UniPoly.from_roots(rs))
    assert [r.exact for r in roots] == sorted(rs)


def test_irrational_roots_are_isolated():
    roots = real_roots(UniPoly([-2, 0, 1]))
    assert len(roots) == 2
    assert all(not r.is_exact for r in roots)
    r = roots[1].refine(Fraction(1, 10**12))
    assert r.lo**2 < 2 < r.hi**2
    assert r.width < Fraction(1, 10**12)


def test_multiplicity_and_squarefree():
    p = UniPoly.from_roots([1, 1, 1, -2])
    assert squarefree_part(p) == UniPoly.from_roots([-2, 1])
    assert [(r.exact, r.multiplicity) for r in real_roots(p)] == [(-2, 1), (1, 3)]


def test_gcd_and_real_roots_common_root():
    a = UniPoly.from_roots([0, 3])
    b = UniPoly.from_roots([0, -1]) * UniPoly([1, 0, 1])
    g, roots = gcd_and_real_roots([a, b])
    assert g == UniPoly.x()
    assert [r.exact for r in roots] == [0]


def test_vanishes_at_distinguishes_conjugate_roots():
    root = real_roots(UniPoly([-2, 0, 1]))[1]
    assert vanishes_at(UniPoly([-2, 0, 1]), root)
    assert not vanishes_at(UniPoly([-3, 0, 1]), root)
    assert not vanishes_at(UniPoly([2, 1]), root)


# Laurent ----------------------------------------------------------------


@given(laurent(2), laurent(2), laurent(2))
def test_laurent_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert (p - p).is_zero()


@given(laurent(2), laurent(2))
def test_laurent_product_evaluates_pointwise(p, q):
    z, lam = (Fraction(2), Fraction(-3, 2)), Fraction(1, 3)
    assert (p * q).evaluate(z, lam) == p.evaluate(z, lam) * q.evaluate(z, lam)


@given(laurent(2), laurent(2))
def test_leibniz_rule(p, q):
    for var in (1, 2, "lambda"):
        assert (p * q).diff(var) == p.diff(var) * q + p * q.diff(var)


@given(laurent(3))
def test_text_roundtrip(p):
    assert LaurentPoly.parse(p.to_text(), 3) == p


def test_canonical_text_form():
    p = LaurentPoly.zsym(1, 2) * LaurentPoly.lam(2) - 3
    assert p.to_text() == "-3 * z1^0 * z2^0 * L^0 + 1 * z1^-1 * z2^0 * L^1 + 1 * z1^1 * z2^0 * L^1"
    assert LaurentPoly.zero(2).to_text() == "0"


@given(laurent(2))
def test_sign_substitution_matches_evaluation(p):
    q = p.substitute_sign({1: -1})
    assert q.dim == 1
    assert q.evaluate((Fraction(5, 2),), Fraction(2)) == p.evaluate((-1, Fraction(5, 2)), Fraction(2))


@given(laurent(1), small.filter(bool))
def test_lambda_shift(p, a):
    # at z2 = 2 the shift is a(2 + 1/2)
    mu = Fraction(7, 3)
    shifted = p.substitute_lambda_shift(a)
    assert shifted.evaluate((2, 2), mu) == p.evaluate((2,), mu - a * Fraction(5, 2))


def test_lambda_shift_rejects_zero():
    with pytest.raises(ValueError):
        LaurentPoly.lam(1).substitute_lambda_shift(0)


def test_dimension_mismatch_raises():
    with pytest.raises(DimensionError):
        LaurentPoly.z(1, 1) + LaurentPoly.z(1, 2)
    with pytest.raises(DimensionError):
        LaurentPoly.z(3, 2)


# determinants -----------------------------------------------------------


def matrices(n, dim=1):
    return st.lists(st.lists(laurent(dim, 3), min_size=n, max_size=n), min_size=n, max_size=n)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(matrices))
def test_determinant_matches_leibniz(m):
    assert determinant(m) == leibniz_determinant(m)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_constant_determinant_matches_sympy(rows):
    m = [[LaurentPoly.constant(c, 1) for c in row] for row in rows]
    expected = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in rows]).det()
    assert determinant(m).coefficient((0,)) == Fraction(int(sympy.numer(expected)), int(sympy.denom(expected)))
