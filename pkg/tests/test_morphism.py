import itertools

import pytest

from bimatroids.catalog import matroids
from bimatroids.errors import GroundMismatchError, PreconditionError
from bimatroids.matroid import (Matroid, independent_sets, popcount, uniform,
                                validate_bases)
from bimatroids.morphism import (MatroidMorphism, bases_of_morphism, basis_counts,
                                 identity_morphism, is_morphism_cocircuits, is_morphism_flats,
                                 is_morphism_rank, is_quotient, nullity, pullback,
                                 spans_target, tilde_matroid, to_point)

from corpus import morphism_corpus
from oracles import is_morphism_brute, subsets


def small_matroids():
    out = [uniform(r, n) for n in range(0, 4) for r in range(0, n + 1)]
    out.append(Matroid(["0", "1", "2"], [0b011, 0b101]))  # a loop-free rank-2 with parallel pair
    out.append(Matroid(["0", "1", "2"], [0b001]))          # loops 1, 2
    return out


def test_condition_examples():
    for M in matroids().values():
        ident = tuple(range(M.n))
        assert is_morphism_rank(M, M, ident) and is_morphism_flats(M, M, ident)
        assert is_morphism_cocircuits(M, M, ident)
        assert is_morphism_rank(M, uniform(0, 1), (0,) * M.n)
    assert is_morphism_rank(uniform(1, 2), uniform(1, 1), (0, 0))


def test_three_conditions_agree_exhaustively():
    mats = small_matroids()
    count = 0
    for M in mats:
        for M2 in mats:
            if M2.n == 0 and M.n:
                continue
            for phi in itertools.product(range(M2.n), repeat=M.n):
                a = is_morphism_rank(M, M2, phi)
                b = is_morphism_flats(M, M2, phi)
                c = is_morphism_cocircuits(M, M2, phi)
                assert a == b == c, (M, M2, phi)
                assert is_quotient(M, pullback(phi, M2, M)) == a
                count += 1
    assert count > 1000


def test_rank_condition_matches_nested_pairs():
    mats = [m for m in small_matroids() if m.n <= 3]
    for M in mats:
        for M2 in mats:
            if not M2.n and M.n:
                continue
            for phi in itertools.product(range(M2.n), repeat=M.n):
                sb = [frozenset(i for i in range(M.n) if b >> i & 1) for b in M.bases]
                sb2 = [frozenset(i for i in range(M2.n) if b >> i & 1) for b in M2.bases]
                assert is_morphism_rank(M, M2, phi) == is_morphism_brute(sb, sb2, phi, range(M.n))


def test_pullback_examples():
    for M in matroids().values():
        assert pullback(tuple(range(M.n)), M, M) == M
        P = pullback((0,) * M.n, uniform(0, 1), M)
        assert P.rank == 0 and P.n == M.n
    assert pullback((0, 0, 0), uniform(1, 1), uniform(2, 3)) == uniform(1, 3)


def test_quotient_and_nullity_examples():
    for M in matroids().values():
        assert is_quotient(M, M)
        assert nullity(to_point(M)) == M.rank
    assert is_quotient(uniform(2, 3), uniform(1, 3))
    assert not is_quotient(uniform(1, 3), uniform(2, 3))
    with pytest.raises(GroundMismatchError):
        is_quotient(uniform(1, 2), uniform(1, 3))


def test_bases_examples():
    for M in matroids().values():
        assert bases_of_morphism(to_point(M)) == sorted(independent_sets(M),
                                                        key=lambda t: (popcount(t), t))
        assert set(bases_of_morphism(identity_morphism(M))) == set(M.bases)
    assert basis_counts(to_point(uniform(2, 3))) == [1, 3, 3]


def test_non_spanning_has_no_bases():
    # a single element cannot span a rank-2 target
    phi = MatroidMorphism(uniform(1, 1, ["x"]), uniform(2, 2, ["a", "b"]), (0,))
    assert not spans_target(phi) and bases_of_morphism(phi) == []
    with pytest.raises(PreconditionError):
        tilde_matroid(phi)
    # a rank-0 source cannot reach a rank-1 target
    with pytest.raises(PreconditionError):
        MatroidMorphism(Matroid(["x"], [0]), uniform(1, 1, ["a"]), (0,))


def test_tilde_examples():
    T = tilde_matroid(to_point(uniform(2, 3)))
    assert T.ground[:2] == ("q0", "q1")
    assert T == uniform(2, 5, T.ground)
    for M in matroids().values():
        Tid = tilde_matroid(identity_morphism(M))
        r = M.rank
        assert {b >> r for b in Tid.bases} == set(M.bases)
        assert all(b & ((1 << r) - 1) == 0 for b in Tid.bases)


def test_q_labels_avoid_collisions():
    M = uniform(1, 2, ["q0", "x"])
    T = tilde_matroid(to_point(M))
    assert len(set(T.ground)) == T.n and "q0" in T.ground[1:]


def test_json_round_trip():
    phi = to_point(uniform(2, 3))
    assert MatroidMorphism.from_json(phi.to_json()) == phi
    with pytest.raises(PreconditionError):
        MatroidMorphism.from_json({"source": {}})


@pytest.mark.parametrize("t", range(40))
def test_random_realizable_morphisms(t):
    rm = morphism_corpus()[t]
    phi = rm.morphism
    M, M2 = phi.source, phi.target
    assert is_morphism_flats(M, M2, phi.mapping) and is_morphism_cocircuits(M, M2, phi.mapping)
    P = pullback(phi.mapping, M2, M)
    assert validate_bases(P) and is_quotient(M, P)
    assert nullity(phi) == M.rank - P.rank
    for T in bases_of_morphism(phi):
        assert M.is_independent(T) and P.rank_of(T) == P.rank
    Mt = tilde_matroid(phi)
    assert validate_bases(Mt)
    r = M.rank
    expected = {S | T << r for T in bases_of_morphism(phi)
                for S in range(1 << r) if popcount(S) + popcount(T) == r}
    assert set(Mt.bases) == expected
