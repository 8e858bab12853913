"""Small named fixtures used by tests and the CLI."""

from __future__ import annotations

import itertools

from .bimatroid import Bimatroid
from .construct import bond, from_matrix, identity, zero
from .exactnum import FieldMatrix, GF
from .matroid import Matroid, from_matrix_columns, uniform


def fano() -> Matroid:
    """All seven nonzero vectors of ``GF(2)^3``, standard basis first."""
    vecs = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    vecs += [v for v in itertools.product((0, 1), repeat=3) if sum(v) >= 2]
    cols = list(zip(*vecs))
    return from_matrix_columns(FieldMatrix.from_rows(cols, GF(2)), [str(i) for i in range(7)])


def all_ones(m: int, n: int) -> Bimatroid:
    return from_matrix(FieldMatrix.from_rows([[1] * n for _ in range(m)]))


def matroids() -> dict[str, Matroid]:
    return {
        "U0,1": uniform(0, 1),
        "U1,2": uniform(1, 2),
        "U2,3": uniform(2, 3),
        "U2,4": uniform(2, 4),
        "U3,5": uniform(3, 5),
        "U3,3": uniform(3, 3),
        "fano": fano(),
    }


def bimatroids() -> dict[str, Bimatroid]:
    return {
        "identity2": identity(["e0", "e1"]),
        "identity3": identity(["e0", "e1", "e2"]),
        "zero2x3": zero(["e0", "e1"], ["f0", "f1", "f2"]),
        "ones2x2": all_ones(2, 2),
        "ones3x3": all_ones(3, 3),
        "bond_U2,3": bond(uniform(2, 3), ["0", "1"]),
        "bond_fano": bond(fano(), ["0", "1", "2"]),
    }
