"""Matroids on small ordered ground sets, stored by their basis family.

Subsets are ``int`` bit masks in ground order: bit ``i`` stands for
``ground[i]``.  All whole-lattice tables (rank, independence, "contains a
basis") are computed once with zeta-transform style dynamic programs over
the ``2**n`` subsets and cached on the instance.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import BudgetExceededError, GroundMismatchError, PreconditionError, SchemaError
from .exactnum import FieldMatrix, rank as matrix_rank

Subset = Union[int, Iterable]


def max_ground() -> int:
    return int(os.environ.get("BIMATROID_MAX_GROUND", "20"))


def popcount(x: int) -> int:
    return x.bit_count()


def bits(mask: int) -> list[int]:
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def compress(mask: int, keep: int) -> int:
    """Re-index ``mask`` onto the positions of ``keep`` (order preserving)."""
    out, j = 0, 0
    for i in bits(keep):
        if mask >> i & 1:
            out |= 1 << j
        j += 1
    return out


def expand(mask: int, keep: int) -> int:
    """Inverse of :func:`compress`."""
    out = 0
    for j, i in enumerate(bits(keep)):
        if mask >> j & 1:
            out |= 1 << i
    return out


_POPCOUNTS: dict[int, np.ndarray] = {}


def popcounts(n: int) -> np.ndarray:
    if n not in _POPCOUNTS:
        a = np.zeros(1 << n, dtype=np.int8)
        for b in range(n):
            a[1 << b:1 << (b + 1)] = a[:1 << b] + 1
        _POPCOUNTS[n] = a
    return _POPCOUNTS[n]


def superset_or(a: np.ndarray, n: int) -> np.ndarray:
    """``out[S] = OR_{T ⊇ S} a[T]``."""
    a = a.copy()
    for b in range(n):
        v = a.reshape(-1, 2, 1 << b)
        v[:, 0, :] |= v[:, 1, :]
    return a


def subset_or(a: np.ndarray, n: int) -> np.ndarray:
    """``out[S] = OR_{T ⊆ S} a[T]``."""
    a = a.copy()
    for b in range(n):
        v = a.reshape(-1, 2, 1 << b)
        v[:, 1, :] |= v[:, 0, :]
    return a


def subset_and(a: np.ndarray, n: int) -> np.ndarray:
    """``out[S] = AND_{T ⊆ S} a[T]``."""
    a = a.copy()
    for b in range(n):
        v = a.reshape(-1, 2, 1 << b)
        v[:, 1, :] &= v[:, 0, :]
    return a


def subset_max(a: np.ndarray, n: int) -> np.ndarray:
    """``out[S] = max_{T ⊆ S} a[T]``."""
    a = a.copy()
    for b in range(n):
        v = a.reshape(-1, 2, 1 << b)
        np.maximum(v[:, 1, :], v[:, 0, :], out=v[:, 1, :])
    return a


@dataclass(frozen=True)
class Verdict:
    """Outcome of an exhaustive axiom check; falsy when a witness was found."""

    ok: bool
    reason: str = ""
    witness: dict | None = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"valid": self.ok, "reason": self.reason, "witness": self.witness}


class Matroid:
    """A set system on an ordered ground set, intended to be a matroid.

    The constructor only checks shape (labels unique, masks in range, size
    cap); use :func:`validate_bases` to check the basis axioms.
    """

    __slots__ = ("ground", "bases", "_cache")

    def __init__(self, ground: Sequence, bases: Iterable[int]):
        ground = tuple(ground)
        if len(set(ground)) != len(ground):
            raise PreconditionError(f"duplicate ground labels in {ground!r}")
        if len(ground) > max_ground():
            raise BudgetExceededError(
                f"ground set of size {len(ground)} exceeds cap {max_ground()}")
        full = (1 << len(ground)) - 1
        bases = frozenset(int(b) for b in bases)
        if any(b & ~full or b < 0 for b in bases):
            raise PreconditionError("basis mask outside the ground set")
        self.ground = ground
        self.bases = bases
        self._cache = {}

    # -- basic accessors ----------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.ground)

    @property
    def full(self) -> int:
        return (1 << len(self.ground)) - 1

    @property
    def rank(self) -> int:
        return max((popcount(b) for b in self.bases), default=0)

    def index(self, label) -> int:
        try:
            return self.ground.index(label)
        except ValueError:
            raise PreconditionError(f"{label!r} is not in the ground set") from None

    def mask(self, S: Subset) -> int:
        if isinstance(S, (int, np.integer)):
            if S & ~self.full:
                raise PreconditionError("subset mask outside the ground set")
            return int(S)
        return mask_of(self.index(x) for x in S)

    def labels(self, mask: int) -> list:
        return [self.ground[i] for i in bits(mask)]

    def sorted_bases(self) -> list[int]:
        return sorted(self.bases, key=lambda b: (popcount(b), b))

    # -- cached subset tables ---------------------------------------------
    def _indicator(self) -> np.ndarray:
        a = np.zeros(1 << self.n, dtype=bool)
        if self.bases:
            a[np.fromiter(self.bases, dtype=np.int64)] = True
        return a

    def independence_table(self) -> np.ndarray:
        if "ind" not in self._cache:
            self._cache["ind"] = superset_or(self._indicator(), self.n)
        return self._cache["ind"]

    def contains_basis_table(self) -> np.ndarray:
        if "cb" not in self._cache:
            self._cache["cb"] = subset_or(self._indicator(), self.n)
        return self._cache["cb"]

    def rank_table(self) -> np.ndarray:
        if "rk" not in self._cache:
            vals = np.where(self.independence_table(), popcounts(self.n), 0).astype(np.int8)
            self._cache["rk"] = subset_max(vals, self.n)
        return self._cache["rk"]

    def rank_of(self, S: Subset) -> int:
        return int(self.rank_table()[self.mask(S)])

    def is_independent(self, S: Subset) -> bool:
        return bool(self.independence_table()[self.mask(S)])

    def is_basis(self, S: Subset) -> bool:
        return self.mask(S) in self.bases

    # -- identity ---------------------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, Matroid) and self.ground == other.ground
                and self.bases == other.bases)

    def __hash__(self):
        return hash((self.ground, self.bases))

    def __repr__(self):
        return f"Matroid(ground={list(self.ground)!r}, rank={self.rank}, bases={len(self.bases)})"

    def relabel(self, labels: Sequence) -> "Matroid":
        if len(labels) != self.n:
            raise PreconditionError("relabeling must preserve the ground size")
        return Matroid(labels, self.bases)

    def to_json(self) -> dict:
        return {"ground": [str(x) for x in self.ground],
                "bases": [bits(b) for b in self.sorted_bases()]}

    @classmethod
    def from_json(cls, data: dict) -> "Matroid":
        try:
            ground = [str(x) for x in data["ground"]]
            bases = [mask_of(int(i) for i in b) for b in data["bases"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"malformed matroid JSON: {exc}") from exc
        if any(b >> len(ground) for b in bases):
            raise PreconditionError("basis index outside the ground set")
        return cls(ground, bases)


# -- validation -----------------------------------------------------------

def validate_bases(M: Matroid) -> Verdict:
    """Exhaustively check the basis axioms.

    For a basis ``B`` and ``x`` in ``B`` let ``P`` be the set of ``y`` with
    ``B - x + y`` a basis.  Exchange fails for ``(B, x)`` exactly when some
    basis avoids ``{x} ∪ P``, which is a single table lookup.
    """
    if not M.bases:
        return Verdict(False, "empty basis family")
    sizes = {popcount(b) for b in M.bases}
    if len(sizes) > 1:
        b1 = min(M.bases, key=lambda b: (popcount(b), b))
        b2 = max(M.bases, key=lambda b: (popcount(b), -b))
        return Verdict(False, "bases of different cardinality",
                       {"B": M.labels(b1), "B2": M.labels(b2)})
    cb = M.contains_basis_table()
    full = M.full
    for B in M.sorted_bases():
        outside = full & ~B
        for x in bits(B):
            Bx = B & ~(1 << x)
            partners = 0
            for y in bits(outside):
                if (Bx | 1 << y) in M.bases:
                    partners |= 1 << y
            avoid = full & ~((1 << x) | partners)
            if cb[avoid]:
                B2 = next(b for b in M.sorted_bases() if b & ~avoid == 0)
                return Verdict(False, "basis exchange fails",
                               {"B": M.labels(B), "B2": M.labels(B2),
                                "x": M.ground[x]})
    return Verdict(True)


# -- derived families ---------------------------------------------------------

def independent_sets(M: Matroid) -> list[int]:
    ind = M.independence_table()
    return [int(s) for s in np.flatnonzero(ind)]


def flats(M: Matroid) -> list[int]:
    rk = M.rank_table()
    out = []
    for S in range(1 << M.n):
        r = rk[S]
        if all(rk[S | 1 << x] > r for x in bits(M.full & ~S)):
            out.append(S)
    return out


def hyperplanes(M: Matroid) -> list[int]:
    rk = M.rank_table()
    return [F for F in flats(M) if rk[F] == M.rank - 1]


def cocircuits(M: Matroid) -> list[int]:
    return sorted(M.full & ~H for H in hyperplanes(M))


def circuits(M: Matroid) -> list[int]:
    ind = M.independence_table()
    return [S for S in range(1 << M.n)
            if not ind[S] and all(ind[S & ~(1 << x)] for x in bits(S))]


def closure(M: Matroid, S: Subset) -> int:
    s = M.mask(S)
    rk = M.rank_table()
    r = rk[s]
    return s | mask_of(x for x in range(M.n) if rk[s | 1 << x] == r)


# -- constructions ------------------------------------------------------------

def uniform(r: int, n: int, labels: Sequence | None = None) -> Matroid:
    if not 0 <= r <= n:
        raise PreconditionError(f"uniform matroid needs 0 <= r <= n, got r={r}, n={n}")
    labels = [str(i) for i in range(n)] if labels is None else labels
    return Matroid(labels, (mask_of(c) for c in itertools.combinations(range(n), r)))


def from_matrix_columns(A: FieldMatrix, labels: Sequence | None = None) -> Matroid:
    """Column matroid: bases are the maximal linearly independent column sets."""
    labels = [str(i) for i in range(A.cols)] if labels is None else labels
    if len(labels) != A.cols:
        raise PreconditionError("one label per column required")
    r = matrix_rank(A)
    rows = list(range(A.rows))
    bases = [mask_of(c) for c in itertools.combinations(range(A.cols), r)
             if matrix_rank(A.submatrix(rows, c)) == r]
    return Matroid(labels, bases)


def dual(M: Matroid) -> Matroid:
    full = M.full
    return Matroid(M.ground, (full & ~b for b in M.bases))


def _minor(M: Matroid, removed: int, keep_best) -> Matroid:
    keep = M.full & ~removed
    scored = [(keep_best(b), b) for b in M.bases]
    best = max(s for s, _ in scored)
    labels = [M.ground[i] for i in bits(keep)]
    return Matroid(labels, {compress(b & keep, keep) for s, b in scored if s == best})


def delete(M: Matroid, S: Subset) -> Matroid:
    """Deletion ``M \\ S``: bases are the ``B - S`` of maximal size."""
    s = M.mask(S)
    return _minor(M, s, lambda b: popcount(b & ~s))


def contract(M: Matroid, S: Subset) -> Matroid:
    """Contraction ``M / S``: bases are ``B - S`` for bases with ``|B ∩ S| = r(S)``."""
    s = M.mask(S)
    return _minor(M, s, lambda b: popcount(b & s))


def restrict(M: Matroid, S: Subset) -> Matroid:
    return delete(M, M.full & ~M.mask(S))


def direct_sum(M: Matroid, N: Matroid) -> Matroid:
    if set(M.ground) & set(N.ground):
        raise GroundMismatchError("direct sum needs disjoint ground sets")
    sh = M.n
    return Matroid(M.ground + N.ground, (b | c << sh for b in M.bases for c in N.bases))


def free_matroid(labels: Sequence) -> Matroid:
    return Matroid(labels, [(1 << len(labels)) - 1])


def zero_matroid(labels: Sequence) -> Matroid:
    """The rank-0 matroid (every element a loop)."""
    return Matroid(labels, [0])


def union(M: Matroid, N: Matroid) -> Matroid:
    """Matroid union on a common ground set.

    A set ``S`` is independent in the union iff ``r_M(T) + r_N(T) >= |T|``
    for every ``T ⊆ S``; this is the rank formula
    ``min_T |S - T| + r_M(T) + r_N(T)`` evaluated at ``r(S) = |S|``.
    """
    if M.ground != N.ground:
        raise GroundMismatchError("union needs identical ordered ground sets")
    n = M.n
    pc = popcounts(n)
    good = (M.rank_table().astype(np.int16) + N.rank_table()) >= pc
    ind = subset_and(good, n)
    r = int(pc[ind].max())
    bases = np.flatnonzero(ind & (pc == r))
    return Matroid(M.ground, (int(b) for b in bases))


def union_rank_bruteforce(M: Matroid, N: Matroid, S: Subset) -> int:
    """Largest ``|I ∪ J|`` inside ``S`` with ``I`` independent in M, ``J`` in N."""
    s = M.mask(S)
    im = [i for i in independent_sets(M) if i & ~s == 0]
    jn = [j for j in independent_sets(N) if j & ~s == 0]
    return max(popcount(i | j) for i in im for j in jn)
