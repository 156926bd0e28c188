"""Exact polynomial core: arithmetic, calculus ops, canonical form."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from germsplit import CPoly, CRat, Poly, ValidationError, poisson, substitute_linear, x, y
from helpers import from_sympy, random_poly, rand_rng, to_sympy

F = Fraction


def monomials(n, max_degree=5):
    return st.tuples(*[st.integers(0, max_degree // 2 + 1)] * (2 * n)).filter(
        lambda m: sum(m) <= max_degree)


def coeffs():
    return st.fractions(min_value=-8, max_value=8, max_denominator=6)


def polys(n, max_degree=5, max_terms=6):
    return st.dictionaries(monomials(n, max_degree), coeffs(),
                           max_size=max_terms).map(lambda d: Poly(n, d))


# -- examples -----------------------------------------------------------------


def test_difference_of_squares():
    p = (x(1, 1) + y(1, 1)) * (x(1, 1) - y(1, 1))
    assert p == x(1, 1) ** 2 - y(1, 1) ** 2


def test_multiplication_by_zero_annihilates():
    rng = rand_rng(11)
    for _ in range(10):
        p = random_poly(rng, 2, 5)
        assert (p * Poly.zero(2)).is_zero
        assert (p * 0).is_zero


def test_truncated_product():
    # (x1^2+y1^2)*(x2*y2) at bound 4: both degree-4 terms survive, exactly.
    a = Poly(2, {(2, 0, 0, 0): 1, (0, 2, 0, 0): 1}, degree_bound=4)
    b = Poly(2, {(0, 0, 1, 1): 1}, degree_bound=4)
    expected = Poly(2, {(2, 0, 1, 1): 1, (0, 2, 1, 1): 1})
    assert a * b == expected


def test_truncation_is_eager():
    a = Poly(1, {(1, 0): 1}, degree_bound=2)
    b = Poly(1, {(2, 0): 1, (1, 0): 1}, degree_bound=2)
    assert a * b == Poly(1, {(2, 0): 1})


def test_partial_examples():
    p = Poly(2, {(2, 0, 0, 1): 1})          # x1^2*y2
    assert p.partial(0) == Poly(2, {(1, 0, 0, 1): 2})
    assert Poly.constant(2, 7).partial(0).is_zero
    assert (x(1, 1) * y(1, 1)).partial(1) == x(1, 1)


def test_poisson_examples():
    # {x1*y1, x1^2} = -2 x1^2
    assert poisson(x(1, 1) * y(1, 1), x(1, 1) ** 2) == (x(1, 1) ** 2).scale(-2)
    rng = rand_rng(5)
    for _ in range(5):
        f = random_poly(rng, 2, 4)
        assert poisson(f, f).is_zero
    # {x1^2+y1^2, x1} = -2 y1
    assert poisson(x(1, 1) ** 2 + y(1, 1) ** 2, x(1, 1)) == y(1, 1).scale(-2)


def test_evaluate_examples():
    q1 = x(1, 1) ** 2 + y(1, 1) ** 2
    assert q1.evaluate((3, 4)) == 25
    assert Poly.zero(2).evaluate((1, 2, 3, 4)) == 0
    p = x(1, 2) * y(1, 2) - x(2, 2) * y(2, 2)
    assert p.evaluate((1, 2, 3, 4)) == -10


def test_homogeneous_components_examples():
    p = x(1, 1) + x(1, 1) * y(1, 1)
    comps = p.homogeneous_components()
    assert comps == [(1, x(1, 1)), (2, x(1, 1) * y(1, 1))]
    assert Poly.zero(1).homogeneous_components() == []
    sq = (x(1, 1) + y(1, 1)) ** 2
    assert sq.homogeneous_components() == [(2, sq)]


def test_render_canonical():
    p = Poly(2, {(2, 0, 0, 1): F(3, 2), (0, 1, 0, 0): F(-1)})
    assert p.render() == "3/2*x1^2*y2 - 1*y1"
    assert Poly.zero(2).render() == "0"
    assert Poly.constant(1, F(-5, 3)).render() == "-5/3"


def test_dimension_mismatch_raises():
    with pytest.raises(ValidationError):
        x(1, 1) + x(1, 2)
    with pytest.raises(ValidationError):
        poisson(x(1, 1), x(1, 2))


def test_canonical_form_no_zero_coefficients():
    p = Poly(1, {(1, 0): 1, (0, 1): 0})
    assert (0, 1) not in p.terms
    q = p - x(1, 1)
    assert q.is_zero and q.terms == {}


# -- ring axioms --------------------------------------------------------------


@given(polys(2), polys(2), polys(2))
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(polys(2), polys(2))
def test_evaluate_is_ring_homomorphism(a, b):
    point = (F(1, 2), F(-2), F(3, 4), F(1))
    assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)
    assert (a + b).evaluate(point) == a.evaluate(point) + b.evaluate(point)


def test_partial_commutes():
    rng = rand_rng(23)
    for _ in range(20):
        p = random_poly(rng, 2, 6)
        for u in range(4):
            for v in range(4):
                assert p.partial(u).partial(v) == p.partial(v).partial(u)


def test_poisson_identities():
    rng = rand_rng(31)
    for _ in range(15):
        f = random_poly(rng, 2, 5, max_terms=4)
        g = random_poly(rng, 2, 5, max_terms=4)
        h = random_poly(rng, 2, 5, max_terms=4)
        assert poisson(f, g) == -poisson(g, f)
        assert poisson(f, g * h) == poisson(f, g) * h + g * poisson(f, h)
        jacobi = (poisson(f, poisson(g, h)) + poisson(g, poisson(h, f))
                  + poisson(h, poisson(f, g)))
        assert jacobi.is_zero


# -- independent sympy oracle -------------------------------------------------


def test_multiplication_against_sympy():
    rng = rand_rng(47)
    for _ in range(12):
        a = random_poly(rng, 2, 5)
        b = random_poly(rng, 2, 5)
        assert a * b == from_sympy(to_sympy(a) * to_sympy(b), 2)


def test_partial_against_sympy():
    rng = rand_rng(53)
    for _ in range(12):
        p = random_poly(rng, 2, 6)
        for k in range(4):
            sym = sympy.Symbol(("x" if k % 2 == 0 else "y") + str(k // 2 + 1))
            assert p.partial(k) == from_sympy(sympy.diff(to_sympy(p), sym), 2)


def test_poisson_against_sympy():
    rng = rand_rng(59)
    for _ in range(8):
        f = random_poly(rng, 2, 4)
        g = random_poly(rng, 2, 4)
        sf, sg = to_sympy(f), to_sympy(g)
        expected = sympy.Integer(0)
        for i in (1, 2):
            xi, yi = sympy.Symbol(f"x{i}"), sympy.Symbol(f"y{i}")
            expected += (sympy.diff(sf, xi) * sympy.diff(sg, yi)
                         - sympy.diff(sf, yi) * sympy.diff(sg, xi))
        assert poisson(f, g) == from_sympy(expected, 2)


# -- complex layer ------------------------------------------------------------


def test_crat_arithmetic():
    i = CRat.I
    assert i * i == CRat(-1)
    assert (CRat(1, 2) * CRat(3, -1)) == CRat(5, 5)
    assert (CRat(1, 1) / CRat(1, -1)) == CRat(0, 1)
    assert CRat(2, 3).conjugate() == CRat(2, -3)


def test_cpoly_roundtrip_and_mul():
    a = CPoly(x(1, 1), y(1, 1))        # x1 + i y1
    b = a.conjugate()
    prod = a * b                       # x1^2 + y1^2
    assert prod.im.is_zero
    assert prod.re == x(1, 1) ** 2 + y(1, 1) ** 2
    with pytest.raises(ValidationError):
        a.as_real()
    assert (a + b).as_real() == x(1, 1).scale(2)


def test_mixed_poly_cpoly_arith():
    a = CPoly(x(1, 1), y(1, 1))
    assert (a + x(1, 1)).re == x(1, 1).scale(2)
    assert (x(1, 1) * 2 + a * 0).re == x(1, 1).scale(2)


def test_substitute_linear_swap():
    # swap x1 <-> y1
    m = [[F(0), F(1)], [F(1), F(0)]]
    p = x(1, 1) ** 2 + y(1, 1)
    assert substitute_linear(p, m) == y(1, 1) ** 2 + x(1, 1)
