"""Products of bimatroids and the laws they satisfy."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .bimatroid import Bimatroid, extended_labels, extended_matroid, transpose
from .construct import from_matrix, identity
from .errors import DimensionError, GroundMismatchError
from .exactnum import FieldMatrix
from .matroid import Matroid, contract, direct_sum, union, zero_matroid


def product(A: Bimatroid, B: Bimatroid) -> Bimatroid:
    """``(I, K)`` is regular in ``A·B`` iff some ``J`` has ``(I,J) ∈ R(A)`` and ``(J,K) ∈ R(B)``."""
    if A.cols != B.rows:
        raise GroundMismatchError(
            f"cannot compose: cols {list(A.cols)!r} != rows {list(B.rows)!r}")
    by_middle = defaultdict(list)
    for J, K in B.minors:
        by_middle[J].append(K)
    minors = {(I, K) for I, J in A.minors for K in by_middle.get(J, ())}
    return Bimatroid(A.rows, B.cols, minors)


def frenk_extended(A: Bimatroid, B: Bimatroid) -> Matroid:
    """Extended matroid of ``A·B`` computed as ``((Â ⊕ 0_G) ∨ (0_E ⊕ B̂)) / F``.

    Built purely from matroid operations, so it serves as an independent
    check on :func:`product`.  Labels match ``extended_matroid(product(A, B))``.
    """
    if A.cols != B.rows:
        raise GroundMismatchError("cannot compose: column and row labels differ")
    m, k, n = A.m, A.n, B.n
    tE = [f"E{i}" for i in range(m)]
    tF = [f"F{i}" for i in range(k)]
    tG = [f"G{i}" for i in range(n)]
    Ahat = extended_matroid(A).relabel(tE + tF)
    Bhat = extended_matroid(B).relabel(tF + tG)
    left = direct_sum(Ahat, zero_matroid(tG))
    right = direct_sum(zero_matroid(tE), Bhat)
    both = union(left, right)
    result = contract(both, tF)
    # contraction keeps ground order E then G
    return result.relabel(extended_labels(A.rows, B.cols))


@dataclass
class LawReport:
    laws: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.laws.values())

    def __bool__(self):
        return self.ok


def check_category_laws(A: Bimatroid, B: Bimatroid, C: Bimatroid) -> LawReport:
    """Associativity, units and the transpose (dagger) laws on a composable triple."""
    rep = LawReport()
    AB = product(A, B)
    BC = product(B, C)
    rep.laws["associative"] = product(AB, C) == product(A, BC)
    rep.laws["left_unit"] = product(identity(A.rows), A) == A
    rep.laws["right_unit"] = product(A, identity(A.cols)) == A
    rep.laws["double_transpose"] = all(transpose(transpose(X)) == X for X in (A, B, C))
    rep.laws["identity_self_transpose"] = transpose(identity(A.rows)) == identity(A.rows)
    rep.laws["transpose_antihomomorphism"] = (
        transpose(AB) == product(transpose(B), transpose(A))
        and transpose(BC) == product(transpose(C), transpose(B)))
    return rep


def cauchy_binet_check(A_mat: FieldMatrix, B_mat: FieldMatrix) -> dict:
    """Compare ``R(A·B)`` (matrix product) with ``R(A)·R(B)`` (bimatroid product).

    Containment always holds; equality can fail when terms cancel in the
    Cauchy-Binet sum, so it is only reported.
    """
    if A_mat.cols != B_mat.rows:
        raise DimensionError(
            f"inner dimensions differ: {A_mat.rows}x{A_mat.cols} vs {B_mat.rows}x{B_mat.cols}")
    E = [f"e{i}" for i in range(A_mat.rows)]
    F = [f"f{i}" for i in range(A_mat.cols)]
    G = [f"g{i}" for i in range(B_mat.cols)]
    realized = from_matrix(A_mat @ B_mat, E, G).minors
    combinatorial = product(from_matrix(A_mat, E, F), from_matrix(B_mat, F, G)).minors
    return {"inclusion": realized <= combinatorial,
            "equality": realized == combinatorial,
            "realized_minors": len(realized),
            "product_minors": len(combinatorial)}
