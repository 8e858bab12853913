import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from bimatroids.catalog import bimatroids as catalog_bimatroids, matroids
from bimatroids.construct import from_matrix
from bimatroids.errors import PreconditionError, SchemaError
from bimatroids.exactnum import FieldMatrix
from bimatroids.matroid import independent_sets, popcount, uniform
from bimatroids.morphism import basis_counts, bases_of_morphism, to_point
from bimatroids.polynomial import (MultiPoly, basis_generating_poly, bivariate_collapse,
                                   homogeneous_basis_poly, independent_set_poly_homogenized,
                                   indicator_poly, partial_derivative, regular_minor_poly,
                                   substitute, weak_basis_poly)

from corpus import morphism_corpus
from oracles import sympy_poly

XY = ("x", "y")


def poly(variables, terms):
    return MultiPoly(variables, terms)


small_terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.integers(-5, 5), max_size=6)


def test_arithmetic_examples():
    x, y = MultiPoly.var(XY, "x"), MultiPoly.var(XY, "y")
    assert (x + y) ** 2 == poly(XY, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
    assert (x - x) == MultiPoly.zero(XY) and not (x - x)
    assert str(2 * x * y + 1) == "2*x*y + 1"
    with pytest.raises(PreconditionError):
        MultiPoly(("x", "x"))
    with pytest.raises(PreconditionError):
        MultiPoly.var(XY, "z")


@settings(max_examples=60, deadline=None)
@given(small_terms, small_terms)
def test_product_matches_sympy(a, b):
    p, q = poly(XY, a), poly(XY, b)
    ep, syms = sympy_poly(p)
    eq, _ = sympy_poly(q)
    er, _ = sympy_poly(p * q)
    assert sympy.expand(ep * eq - er) == 0


@settings(max_examples=60, deadline=None)
@given(small_terms, st.tuples(st.integers(0, 3), st.integers(0, 3)))
def test_derivative_matches_sympy(a, alpha):
    p = poly(XY, a)
    e, (sx, sy) = sympy_poly(p)
    expect = sympy.diff(e, sx, alpha[0], sy, alpha[1]) if any(alpha) else e
    got, _ = sympy_poly(partial_derivative(p, alpha))
    assert sympy.expand(expect - got) == 0


def test_derivative_examples():
    p = poly(XY, {(3, 1): 1})
    assert partial_derivative(p, (2, 0)) == poly(XY, {(1, 1): 6})
    assert partial_derivative(p, (0, 2)) == MultiPoly.zero(XY)
    with pytest.raises(PreconditionError):
        partial_derivative(p, (1,))


def test_substitute_examples():
    p = poly(XY, {(1, 1): 1})
    q = substitute(p, {"x": {"u": 1, "v": 2}}, ("u", "v", "y"))
    assert q == poly(("u", "v", "y"), {(1, 0, 1): 1, (0, 1, 1): 2})
    with pytest.raises(PreconditionError):
        substitute(p, {"x": {"u": -1}})


@settings(max_examples=40, deadline=None)
@given(small_terms, st.integers(0, 4), st.integers(0, 4))
def test_substitute_then_evaluate(a, c, d):
    p = poly(XY, a)
    q = substitute(p, {"x": {"t": c}, "y": {"t": d}}, ("t",))
    assert q.evaluate({"t": 1}) == p.evaluate({"x": c, "y": d})


def test_collapse_examples():
    p = poly(("a", "b", "c"), {(1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1})
    assert bivariate_collapse(p, {"a": "x", "b": "x", "c": "y"}) == [1, 2, 0]
    with pytest.raises(PreconditionError):
        bivariate_collapse(poly(XY, {(1, 0): 1, (0, 0): 1}), {"x": "x", "y": "y"})
    with pytest.raises(PreconditionError):
        bivariate_collapse(p, {"a": "x"})


def test_truncation():
    p = poly(XY, {(2, 0): 1, (1, 1): 1, (0, 2): 1})
    assert p.truncate_le((1, 2)) == poly(XY, {(1, 1): 1, (0, 2): 1})
    assert p.truncate_ge((1, 0)) == poly(XY, {(2, 0): 1, (1, 1): 1})


def test_indicator_poly():
    p = indicator_poly(XY, [(2, 0), (1, 1)])
    assert p.coefficient((2, 0)) == Fraction(1, 2) and p.coefficient((1, 1)) == 1


def test_json_round_trip():
    p = poly(XY, {(2, 0): Fraction(1, 3), (0, 2): -4})
    assert MultiPoly.from_json(p.to_json()) == p
    with pytest.raises(SchemaError):
        MultiPoly.from_json({"vars": ["x"]})


def test_regular_minor_poly_examples():
    z = regular_minor_poly(from_matrix(FieldMatrix.zeros(1, 1)))
    assert z == poly(("w_e0", "w_f0"), {(1, 0): 1})
    i1 = regular_minor_poly(from_matrix(FieldMatrix.identity(1)))
    assert i1 == poly(("w_e0", "w_f0"), {(1, 0): 1, (0, 1): 1})


def test_regular_minor_poly_invariants():
    for B in catalog_bimatroids().values():
        p = regular_minor_poly(B)
        assert p.is_homogeneous() and p.is_multiaffine()
        assert len(p) == len(B.minors) and p.degree() == B.m
        assert p.evaluate({v: 1 for v in p.vars}) == len(B.minors)


def test_basis_and_independent_polys():
    for M in matroids().values():
        p = basis_generating_poly(M)
        assert len(p) == len(M.bases)
        q = independent_set_poly_homogenized(M)
        assert q.is_homogeneous() and q.degree() == M.n
        assert len(q) == len(independent_sets(M))
    q = independent_set_poly_homogenized(uniform(1, 2, ["z", "a"]))
    assert q.vars[-1] != "w_z" and len(set(q.vars)) == 3


def test_weak_basis_poly_example():
    phi = to_point(uniform(2, 3))
    p = weak_basis_poly(phi, 2)
    # r = 2: C(2,2) w0^2 + C(2,1) w0 Σ w_i + Σ w_i w_j
    assert p.coefficient((2, 0, 0, 0)) == 1
    assert p.coefficient((1, 1, 0, 0)) == 2
    assert p.coefficient((0, 1, 1, 0)) == 1
    assert p.is_homogeneous() and p.degree() == 2
    with pytest.raises(PreconditionError):
        weak_basis_poly(phi, 1)


@pytest.mark.parametrize("t", range(20))
def test_morphism_polys(t):
    phi = morphism_corpus()[t].morphism
    r = phi.source.rank
    p = weak_basis_poly(phi, r)
    group = {v: ("x" if v == p.vars[0] else "y") for v in p.vars}
    coll = bivariate_collapse(p, group)
    counts = basis_counts(phi)
    counts += [0] * (r + 1 - len(counts))
    # w0 goes to x, so the y-degree of a term is |T|
    assert coll == [math.comb(r, k) * counts[k] for k in range(r + 1)]
    h = homogeneous_basis_poly(phi)
    assert len(h) == len(bases_of_morphism(phi))
    assert h.is_homogeneous() and h.degree() == phi.source.n
