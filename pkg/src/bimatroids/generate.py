"""Seeded random instances.

Every trial draws from its own ``random.Random`` seeded with the string
``"<kind>/<seed>/<trial>"``.  String seeds are hashed with SHA-512 by the
standard library, so corpora are identical across platforms and do not
depend on the order in which trials run.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .bimatroid import Bimatroid
from .construct import from_matrix, from_relation
from .errors import InternalConsistencyError, PreconditionError
from .exactnum import DEFAULT_PRIME, QQ, FieldMatrix, GF
from .matroid import Matroid, from_matrix_columns, mask_of
from .morphism import MatroidMorphism, spans_target

ZERO_PROB = 0.35
MAX_RETRIES = 1000


def trial_rng(kind: str, seed: int, trial: int) -> random.Random:
    return random.Random(f"{kind}/{seed}/{trial}")


def field_for(name: str, p: int = DEFAULT_PRIME):
    if name == "Q":
        return QQ
    if name == "Fp":
        return GF(p)
    raise PreconditionError(f"field must be Fp or Q, not {name!r}")


def _entry(rng: random.Random, field) -> int:
    if rng.random() < ZERO_PROB:
        return 0
    if field is QQ:
        return rng.choice((-3, -2, -1, 1, 2, 3))
    return rng.randrange(1, field.p)


def random_matrix(rng: random.Random, rows: int, cols: int, field=None) -> FieldMatrix:
    """Sparse random matrix; entries vanish with probability ``ZERO_PROB``."""
    field = GF() if field is None else field
    return FieldMatrix(field, rows, cols, [_entry(rng, field) for _ in range(rows * cols)])


def random_matrix_bimatroid(rng: random.Random, max_rows: int = 5, max_cols: int = 5,
                            field=None) -> tuple[FieldMatrix, Bimatroid]:
    A = random_matrix(rng, rng.randint(1, max_rows), rng.randint(1, max_cols), field)
    return A, from_matrix(A)


def random_relation(rng: random.Random, rows, cols, density: float = 0.4) -> list[tuple]:
    return [(e, f) for e in rows for f in cols if rng.random() < density]


def random_relation_bimatroid(rng: random.Random, max_rows: int = 4,
                              max_cols: int = 4) -> tuple[list, Bimatroid]:
    rows = [f"e{i}" for i in range(rng.randint(1, max_rows))]
    cols = [f"f{j}" for j in range(rng.randint(1, max_cols))]
    pairs = random_relation(rng, rows, cols)
    return pairs, from_relation(pairs, rows, cols)


def relation_triple(rng: random.Random, max_side: int = 3) -> tuple[Bimatroid, Bimatroid, Bimatroid]:
    """Composable relation bimatroids on ``E x F``, ``F x G``, ``G x H``."""
    sides = [[f"{p}{i}" for i in range(rng.randint(1, max_side))] for p in "efgh"]
    return tuple(from_relation(random_relation(rng, a, b), a, b)
                 for a, b in zip(sides, sides[1:]))


def matrix_triple(rng: random.Random, max_side: int = 3, field=None):
    """Three composable random matrices and their bimatroids."""
    dims = [rng.randint(1, max_side) for _ in range(4)]
    labels = [[f"{p}{i}" for i in range(d)] for p, d in zip("efgh", dims)]
    mats = [random_matrix(rng, a, b, field) for a, b in zip(dims, dims[1:])]
    return mats, tuple(from_matrix(M, r, c) for M, r, c in zip(mats, labels, labels[1:]))


@dataclass
class RealizedMorphism:
    """Morphism induced by a coordinate projection ``K^d -> K^d'``."""

    vectors: FieldMatrix
    target_vectors: FieldMatrix
    morphism: MatroidMorphism


def random_realizable_morphism(rng: random.Random, max_source: int = 6, max_target: int = 3,
                               max_extra: int = 3, field=None) -> RealizedMorphism:
    """Columns ``v_f = (v'_φ(f), k_f)`` over the projection onto the first ``d'`` coordinates.

    Draws are repeated until ``φ(F)`` spans the target matroid, so every
    instance has bases.
    """
    field = GF() if field is None else field
    for _ in range(MAX_RETRIES):
        nt = rng.randint(1, max_target)
        d2 = rng.randint(1, nt)
        ns = rng.randint(1, max_source)
        extra = rng.randint(0, max_extra)
        W = random_matrix(rng, d2, nt, field)
        phi = [rng.randrange(nt) for _ in range(ns)]
        K = random_matrix(rng, extra, ns, field)
        rows = [[W[i, phi[f]] for f in range(ns)] for i in range(d2)] + K.to_rows()
        V = FieldMatrix.from_rows(rows, field, cols=ns)
        src = from_matrix_columns(V, [f"f{i}" for i in range(ns)])
        tgt = from_matrix_columns(W, [f"t{i}" for i in range(nt)])
        if tgt.rank_of(mask_of(phi)) != tgt.rank:
            continue
        try:
            mor = MatroidMorphism(src, tgt, tuple(phi))
        except PreconditionError as exc:
            raise InternalConsistencyError(f"linear projection gave a non-morphism: {exc}") from exc
        assert spans_target(mor)
        return RealizedMorphism(V, W, mor)
    raise InternalConsistencyError("could not draw a spanning morphism")


def random_sequence(rng: random.Random, max_len: int = 8, max_value: int = 20) -> list[int]:
    """Non-negative integers, zero-heavy so internal zeros and failures both show up."""
    n = rng.randint(1, max_len)
    return [0 if rng.random() < 0.2 else rng.randint(0, max_value) for _ in range(n)]


def random_binomial_window(rng: random.Random, max_len: int = 8) -> list[int]:
    """``C(d,k)`` for ``lo <= k <= hi`` and zero elsewhere."""
    d = rng.randint(0, max_len - 1)
    lo = rng.randint(0, d)
    hi = rng.randint(lo, d)
    return [math.comb(d, k) if lo <= k <= hi else 0 for k in range(d + 1)]


def random_matroid(rng: random.Random, max_n: int = 6, field=None) -> Matroid:
    n = rng.randint(1, max_n)
    d = rng.randint(1, n)
    return from_matrix_columns(random_matrix(rng, d, n, field), [str(i) for i in range(n)])
