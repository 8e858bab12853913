import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bimatroids.errors import DimensionError, PreconditionError, SchemaError
from bimatroids.exactnum import (GF, QQ, FieldMatrix, det, format_rational, inertia,
                                 inertia_of_rows, is_prime, parse_rational, rank)

from oracles import det_leibniz, inertia_sympy, rank_by_minors

small = st.integers(-4, 4)


def mat(rows, field=QQ):
    return FieldMatrix.from_rows(rows, field)


def test_det_examples():
    assert det(FieldMatrix.identity(2)) == 1
    assert det(mat([[1, 1], [1, 1]])) == 0
    assert det(mat([[1, 2], [3, 4]])) == -2


def test_det_non_square():
    with pytest.raises(DimensionError):
        det(mat([[1, 2, 3], [4, 5, 6]]))


def test_rank_examples():
    assert rank(FieldMatrix.zeros(3, 3)) == 0
    assert rank(FieldMatrix.identity(3)) == 3
    assert rank(mat([[1, 2], [2, 4]])) == 1


def test_inertia_examples():
    assert inertia(mat([[0, 1], [1, 0]])) == (1, 1, 0)
    assert inertia(FieldMatrix.identity(2)) == (2, 0, 0)
    assert inertia(FieldMatrix.zeros(3, 3)) == (0, 0, 3)


def test_inertia_rejects_asymmetric_and_prime_field():
    with pytest.raises(DimensionError):
        inertia(mat([[0, 1], [2, 0]]))
    with pytest.raises(PreconditionError):
        inertia(mat([[1, 0], [0, 1]], GF(7)))


def test_rationals_canonical():
    assert parse_rational("6/4") == Fraction(3, 2)
    assert parse_rational("-0/5") == 0
    assert format_rational(Fraction(4, 2)) == 2
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    with pytest.raises(PreconditionError):
        parse_rational("x")


def test_prime_field():
    F = GF(7)
    assert F.coerce(-1) == 6
    assert F.coerce("1/3") == 5
    a = F.element(3)
    assert int(a * a.inverse()) == 1
    with pytest.raises(PreconditionError):
        GF(8)
    assert is_prime(65521) and not is_prime(65523)


def test_prime_det_and_rank():
    F = GF(5)
    A = mat([[1, 2], [3, 1]], F)
    assert det(A) == (1 - 6) % 5
    assert rank(mat([[1, 2], [2, 4]], F)) == 1
    assert rank(mat([[1, 3], [2, 1]], F)) == 1  # 1*1 - 3*2 = -5 = 0 mod 5


def test_json_round_trip():
    A = mat([[Fraction(1, 2), -3], [0, 7]])
    assert FieldMatrix.from_json(A.to_json()) == A
    B = mat([[1, 2], [3, 4]], GF(65521))
    assert FieldMatrix.from_json(B.to_json()) == B
    assert B.to_json()["field"] == "Fp" and B.to_json()["p"] == 65521
    with pytest.raises(SchemaError):
        FieldMatrix.from_json({"rows": 1})


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_det_matches_leibniz(rows):
    assert det(mat(rows)) == det_leibniz(rows)
    assert det(mat(rows, GF(101))) == det_leibniz(rows, 101)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_rank_matches_minors(m, n, data):
    rows = data.draw(st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m))
    assert rank(mat(rows)) == rank_by_minors(rows)
    assert rank(mat(rows, GF(7))) == rank_by_minors(rows, 7)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.data())
def test_det_multiplicative(n, data):
    for field in (QQ, GF(65521)):
        a = data.draw(st.lists(small, min_size=n * n, max_size=n * n))
        b = data.draw(st.lists(small, min_size=n * n, max_size=n * n))
        A, B = FieldMatrix(field, n, n, a), FieldMatrix(field, n, n, b)
        lhs, rhs = det(A @ B), field.mul(det(A), det(B))
        assert field.coerce(lhs) == field.coerce(rhs)


def test_det_multiplicative_random_4x4():
    rng = random.Random(3)
    for field in (QQ, GF(65521)):
        for _ in range(20):
            A = FieldMatrix(field, 4, 4, [rng.randint(-9, 9) for _ in range(16)])
            B = FieldMatrix(field, 4, 4, [rng.randint(-9, 9) for _ in range(16)])
            assert det(A @ B) == field.mul(det(A), det(B))


def symmetric(n, vals):
    rows = [[0] * n for _ in range(n)]
    it = iter(vals)
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = next(it)
    return rows


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(small, min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2)
    .map(lambda v: symmetric(n, v))))
def test_inertia_matches_charpoly(rows):
    assert inertia_of_rows(rows) == inertia_sympy(rows)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.tuples(st.lists(small, min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2)
                        .map(lambda v: symmetric(n, v)),
                        st.lists(small, min_size=n * n, max_size=n * n))))
def test_inertia_congruence_invariant(args):
    rows, s = args
    n = len(rows)
    S = FieldMatrix(QQ, n, n, s)
    if det(S) == 0:
        return
    M = mat(rows)
    assert inertia(S.T @ M @ S) == inertia(M)


@given(st.lists(small, min_size=1, max_size=6))
def test_inertia_diagonal(d):
    n = len(d)
    rows = [[d[i] if i == j else 0 for j in range(n)] for i in range(n)]
    assert inertia_of_rows(rows) == (sum(x > 0 for x in d), sum(x < 0 for x in d),
                                     sum(x == 0 for x in d))


@given(small, small, small)
def test_field_distributive(a, b, c):
    a, b, c = Fraction(a, 3), Fraction(b, 5), Fraction(c, 7)
    assert a * (b + c) == a * b + a * c
