"""Bimatroids from matrices, relations, maps and matroid bases."""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

from .bimatroid import Bimatroid
from .errors import BudgetExceededError, PreconditionError, SchemaError
from .exactnum import FieldMatrix, det
from .matroid import Matroid, bits, compress, mask_of, popcount

MAX_MINOR_SIDE = 10


def _default_labels(prefix: str, k: int) -> list[str]:
    return [f"{prefix}{i}" for i in range(k)]


def from_matrix(A: FieldMatrix, rows: Sequence | None = None,
                cols: Sequence | None = None) -> Bimatroid:
    """All ``(I, J)`` whose square submatrix has nonzero determinant."""
    if min(A.rows, A.cols) > MAX_MINOR_SIDE:
        raise BudgetExceededError(
            f"minor enumeration capped at min(rows, cols) <= {MAX_MINOR_SIDE}")
    rows = _default_labels("e", A.rows) if rows is None else rows
    cols = _default_labels("f", A.cols) if cols is None else cols
    minors = [(0, 0)]
    for k in range(1, min(A.rows, A.cols) + 1):
        for I in itertools.combinations(range(A.rows), k):
            for J in itertools.combinations(range(A.cols), k):
                if det(A.submatrix(I, J)) != 0:
                    minors.append((mask_of(I), mask_of(J)))
    return Bimatroid(rows, cols, minors)


def has_perfect_matching(adj: Sequence[int], I: int, J: int) -> bool:
    """Kuhn's augmenting paths: does ``adj`` (row -> column mask) match ``I`` onto ``J``?"""
    if popcount(I) != popcount(J):
        return False
    match_col: dict[int, int] = {}

    def augment(i: int, seen: set) -> bool:
        for j in bits(adj[i] & J):
            if j in seen:
                continue
            seen.add(j)
            if j not in match_col or augment(match_col[j], seen):
                match_col[j] = i
                return True
        return False

    return all(augment(i, set()) for i in bits(I))


def from_relation(pairs: Iterable[tuple], rows: Sequence, cols: Sequence) -> Bimatroid:
    """``(I, J)`` is regular iff the relation contains a matching between ``I`` and ``J``."""
    rows, cols = list(rows), list(cols)
    adj = [0] * len(rows)
    for e, f in pairs:
        try:
            adj[rows.index(e)] |= 1 << cols.index(f)
        except ValueError:
            raise PreconditionError(f"pair {(e, f)!r} is not in rows x cols") from None
    minors = [(0, 0)]
    for k in range(1, min(len(rows), len(cols)) + 1):
        for I in itertools.combinations(range(len(rows)), k):
            Im = mask_of(I)
            reach = 0
            for i in I:
                reach |= adj[i]
            if popcount(reach) < k:
                continue
            for J in itertools.combinations(bits(reach), k):
                Jm = mask_of(J)
                if has_perfect_matching(adj, Im, Jm):
                    minors.append((Im, Jm))
    return Bimatroid(rows, cols, minors)


def from_map(phi: Mapping, domain: Sequence, codomain: Sequence) -> Bimatroid:
    """The bimatroid ``[phi]`` on ``codomain x domain`` of the graph of ``phi: F -> E``."""
    missing = [f for f in domain if f not in phi]
    if missing:
        raise PreconditionError(f"map is not total, missing {missing!r}")
    return from_relation([(phi[f], f) for f in domain], codomain, domain)


def identity(E: Sequence) -> Bimatroid:
    E = list(E)
    return Bimatroid(E, E, ((I, I) for I in range(1 << len(E))))


def zero(rows: Sequence, cols: Sequence) -> Bimatroid:
    return Bimatroid(rows, cols, [(0, 0)])


def bond(M: Matroid, B) -> Bimatroid:
    """Bond bimatroid on ``B x F``: ``(I, J)`` regular iff ``(B - I) ∪ J`` is a basis."""
    b = M.mask(B)
    if b not in M.bases:
        raise PreconditionError("bond bimatroid needs a basis of the matroid")
    minors = []
    for I in range(1 << M.n):
        if I & ~b:
            continue
        rest = b & ~I
        for J in range(1 << M.n):
            if popcount(J) == popcount(I) and (rest | J) in M.bases:
                minors.append((compress(I, b), J))
    return Bimatroid(M.labels(b), M.ground, minors)


def relation_matrix(pairs: Iterable[tuple], rows: Sequence, cols: Sequence) -> list[list[int]]:
    """0/1 incidence matrix of a relation."""
    rows, cols = list(rows), list(cols)
    out = [[0] * len(cols) for _ in rows]
    for e, f in pairs:
        out[rows.index(e)][cols.index(f)] = 1
    return out


def relation_to_json(pairs, rows, cols) -> dict:
    return {"rows": list(rows), "cols": list(cols),
            "pairs": sorted([str(e), str(f)] for e, f in pairs)}


def relation_from_json(data: dict) -> tuple[list, list, list]:
    try:
        rows = [str(x) for x in data["rows"]]
        cols = [str(x) for x in data["cols"]]
        pairs = [(str(e), str(f)) for e, f in data["pairs"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed relation JSON: {exc}") from exc
    return pairs, rows, cols


def map_from_json(data: dict) -> tuple[dict, list, list]:
    try:
        domain = [str(x) for x in data["domain"]]
        codomain = [str(x) for x in data["codomain"]]
        phi = {str(k): str(v) for k, v in data["map"].items()}
    except (KeyError, TypeError, AttributeError) as exc:
        raise SchemaError(f"malformed map JSON: {exc}") from exc
    bad = [v for v in phi.values() if v not in codomain]
    if bad:
        raise PreconditionError(f"map values outside the codomain: {bad!r}")
    return phi, domain, codomain
