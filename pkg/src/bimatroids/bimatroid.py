"""Bimatroids (linking systems) and their four equivalent descriptions.

A :class:`Bimatroid` on ``E x F`` stores its regular minors as pairs of
bit masks ``(I, J)``, ``I`` over the row labels and ``J`` over the column
labels.  The other descriptions are derived views:

* the extended matroid on ``E ⊔ F`` with bases ``(E - I) ⊔ J``;
* the relative rank table ``r(S, T)``;
* the vertical / horizontal regular rectangles.

Tables over ``2^E x 2^F`` are flattened with index ``S | T << m``, which is
also the extended-matroid mask of ``S ⊔ T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceededError, InternalConsistencyError, PreconditionError, SchemaError
from .matroid import (Matroid, Verdict, bits, compress, mask_of, max_ground,
                      popcount, popcounts, subset_max, validate_bases)


def extended_labels(rows: Sequence[str], cols: Sequence[str]) -> tuple:
    """Ground labels of ``E ⊔ F``; column labels clashing with rows get primes."""
    taken = set(rows)
    out = list(rows)
    for c in cols:
        lab = c
        while lab in taken:
            lab = f"{lab}'"
        taken.add(lab)
        out.append(lab)
    return tuple(out)


def _sos(a: np.ndarray, bit_list: Iterable[int], superset: bool, op) -> np.ndarray:
    a = a.copy()
    for b in bit_list:
        v = a.reshape(-1, 2, 1 << b)
        if superset:
            op(v[:, 0, :], v[:, 1, :], out=v[:, 0, :])
        else:
            op(v[:, 1, :], v[:, 0, :], out=v[:, 1, :])
    return a


class Bimatroid:
    """Regular minors of a (not necessarily realizable) bimatroid on ``rows x cols``."""

    __slots__ = ("rows", "cols", "minors", "_cache")

    def __init__(self, rows: Sequence, cols: Sequence, minors: Iterable[tuple[int, int]]):
        rows, cols = tuple(rows), tuple(cols)
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise PreconditionError("row and column labels must be unique")
        if len(rows) + len(cols) > max_ground():
            raise BudgetExceededError(
                f"{len(rows)}+{len(cols)} ground elements exceed cap {max_ground()}")
        fr, fc = (1 << len(rows)) - 1, (1 << len(cols)) - 1
        minors = frozenset((int(i), int(j)) for i, j in minors)
        for i, j in minors:
            if i & ~fr or j & ~fc:
                raise PreconditionError("minor outside the ground set")
            if popcount(i) != popcount(j):
                raise PreconditionError("regular minors must be square")
        self.rows = rows
        self.cols = cols
        self.minors = minors
        self._cache = {}

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.cols)

    def row_mask(self, S) -> int:
        if isinstance(S, (int, np.integer)):
            return int(S)
        return mask_of(self.rows.index(x) for x in S)

    def col_mask(self, T) -> int:
        if isinstance(T, (int, np.integer)):
            return int(T)
        return mask_of(self.cols.index(x) for x in T)

    def is_minor(self, I, J) -> bool:
        return (self.row_mask(I), self.col_mask(J)) in self.minors

    def sorted_minors(self) -> list[tuple[int, int]]:
        return sorted(self.minors, key=lambda ij: (popcount(ij[0]), ij[0], ij[1]))

    def minor_counts(self) -> list[int]:
        """``R_k`` for ``k = 0 .. min(m, n)``."""
        out = [0] * (min(self.m, self.n) + 1)
        for i, _ in self.minors:
            out[popcount(i)] += 1
        return out

    def __eq__(self, other):
        return (isinstance(other, Bimatroid) and self.rows == other.rows
                and self.cols == other.cols and self.minors == other.minors)

    def __hash__(self):
        return hash((self.rows, self.cols, self.minors))

    def __repr__(self):
        return (f"Bimatroid(rows={list(self.rows)!r}, cols={list(self.cols)!r}, "
                f"minors={len(self.minors)})")

    # -- extended encoding ------------------------------------------------------
    def extended_mask(self, I: int, J: int) -> int:
        return ((1 << self.m) - 1) & ~I | J << self.m

    def _extended_indicator(self) -> np.ndarray:
        a = np.zeros(1 << (self.m + self.n), dtype=bool)
        for i, j in self.minors:
            a[self.extended_mask(i, j)] = True
        return a

    def _exists_table(self) -> np.ndarray:
        """``g[S | T<<m]``: some minor ``(I', J')`` has ``I' ⊇ S`` and ``J' ⊆ T``."""
        if "exists" not in self._cache:
            a = np.zeros(1 << (self.m + self.n), dtype=bool)
            for i, j in self.minors:
                a[i | j << self.m] = True
            a = _sos(a, range(self.m), True, np.logical_or)
            a = _sos(a, range(self.m, self.m + self.n), False, np.logical_or)
            self._cache["exists"] = a
        return self._cache["exists"]

    # -- json -------------------------------------------------------------------
    def to_json(self) -> dict:
        return {"rows": [str(x) for x in self.rows],
                "cols": [str(x) for x in self.cols],
                "regular_minors": [{"I": [self.rows[k] for k in bits(i)],
                                    "J": [self.cols[k] for k in bits(j)]}
                                   for i, j in self.sorted_minors()]}

    @classmethod
    def from_json(cls, data: dict) -> "Bimatroid":
        try:
            rows = [str(x) for x in data["rows"]]
            cols = [str(x) for x in data["cols"]]
            minors = []
            for mn in data["regular_minors"]:
                minors.append((mask_of(_lookup(rows, x) for x in mn["I"]),
                               mask_of(_lookup(cols, x) for x in mn["J"])))
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"malformed bimatroid JSON: {exc}") from exc
        return cls(rows, cols, minors)


def _lookup(labels: list, x) -> int:
    if isinstance(x, int) and not isinstance(x, bool) and str(x) not in labels:
        if 0 <= x < len(labels):
            return x
    try:
        return labels.index(str(x))
    except ValueError:
        raise PreconditionError(f"unknown label {x!r}") from None


@dataclass(frozen=True)
class RelativeRankTable:
    """Values ``r(S, T)`` for all ``S ⊆ E``, ``T ⊆ F``, flattened as ``S | T << m``."""

    m: int
    n: int
    values: np.ndarray

    def __call__(self, S: int, T: int) -> int:
        return int(self.values[S | T << self.m])

    def __eq__(self, other):
        return (isinstance(other, RelativeRankTable) and self.m == other.m
                and self.n == other.n and np.array_equal(self.values, other.values))

    def to_json(self) -> dict:
        v = self.values.reshape(1 << self.n, 1 << self.m).T
        return {"m": self.m, "n": self.n, "table": v.astype(int).tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "RelativeRankTable":
        try:
            m, n = int(data["m"]), int(data["n"])
            v = np.asarray(data["table"], dtype=np.int16)
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"malformed rank table JSON: {exc}") from exc
        if v.shape != (1 << m, 1 << n):
            raise PreconditionError("rank table has the wrong shape")
        return cls(m, n, v.T.reshape(-1).copy())

    @classmethod
    def from_function(cls, m: int, n: int, fn) -> "RelativeRankTable":
        vals = np.zeros(1 << (m + n), dtype=np.int16)
        for S in range(1 << m):
            for T in range(1 << n):
                vals[S | T << m] = fn(S, T)
        return cls(m, n, vals)


# -- the four views -----------------------------------------------------------------

def extended_matroid(B: Bimatroid) -> Matroid:
    """Matroid on ``E ⊔ F`` whose bases are ``(E - I) ⊔ J`` for regular ``(I, J)``."""
    return Matroid(extended_labels(B.rows, B.cols),
                   (B.extended_mask(i, j) for i, j in B.minors))


def from_extended_matroid(M: Matroid, E, labels: tuple[Sequence, Sequence] | None = None
                          ) -> Bimatroid:
    """Inverse of :func:`extended_matroid`; ``E`` must be a basis of ``M``.

    Rows are the elements of ``E`` and columns the rest, both in ground
    order.  ``labels`` optionally overrides the ``(rows, cols)`` labels.
    """
    e = M.mask(E)
    if e not in M.bases:
        raise PreconditionError("E must be a basis of the matroid")
    f = M.full & ~e
    rows = labels[0] if labels else M.labels(e)
    cols = labels[1] if labels else M.labels(f)
    minors = [(compress(e & ~b, e), compress(b & f, f)) for b in M.bases]
    return Bimatroid(rows, cols, minors)


def rank_table(B: Bimatroid) -> RelativeRankTable:
    """Relative rank: the largest regular minor inside each rectangle ``S x T``."""
    if "rank" not in B._cache:
        a = np.zeros(1 << (B.m + B.n), dtype=np.int16)
        for i, j in B.minors:
            a[i | j << B.m] = popcount(i)
        B._cache["rank"] = RelativeRankTable(B.m, B.n, subset_max(a, B.m + B.n))
    return B._cache["rank"]


def rank_table_via_extended(B: Bimatroid) -> RelativeRankTable:
    """Same table through ``r(S, T) = r̂((E - S) ⊔ T) - |E - S|``."""
    rk = extended_matroid(B).rank_table().astype(np.int16)
    m, n = B.m, B.n
    idx = np.arange(1 << (m + n))
    fullE = (1 << m) - 1
    S = idx & fullE
    comp = fullE & ~S
    vals = rk[(idx & ~fullE) | comp] - popcounts(m)[comp]
    return RelativeRankTable(m, n, vals.astype(np.int16))


def relative_rank(B: Bimatroid, S, T) -> int:
    return rank_table(B)(B.row_mask(S), B.col_mask(T))


def rank(B: Bimatroid) -> int:
    return max((popcount(i) for i, _ in B.minors), default=0)


def from_rank_table(table: RelativeRankTable, rows: Sequence | None = None,
                    cols: Sequence | None = None) -> Bimatroid:
    """Regular minors are the square ``(I, J)`` with ``r(I, J) = |I|``."""
    m, n = table.m, table.n
    rows = [f"e{i}" for i in range(m)] if rows is None else rows
    cols = [f"f{j}" for j in range(n)] if cols is None else cols
    minors = [(I, J) for I in range(1 << m) for J in range(1 << n)
              if popcount(I) == popcount(J) and table(I, J) == popcount(I)]
    return Bimatroid(rows, cols, minors)


def regular_rectangles(B: Bimatroid, orientation: str = "vertical") -> list[tuple[int, int]]:
    """Pairs ``(S, T)`` with ``r(S,T) = |T| <= |S|`` (vertical) or ``r(S,T) = |S| <= |T|``."""
    if orientation not in ("vertical", "horizontal"):
        raise PreconditionError(f"orientation must be vertical or horizontal, not {orientation!r}")
    m, n = B.m, B.n
    vals = rank_table(B).values
    idx = np.arange(1 << (m + n))
    s_size = popcounts(m)[idx & ((1 << m) - 1)]
    t_size = popcounts(n)[idx >> m]
    if orientation == "vertical":
        sel = (vals == t_size) & (t_size <= s_size)
    else:
        sel = (vals == s_size) & (s_size <= t_size)
    out = [(int(x) & ((1 << m) - 1), int(x) >> m) for x in np.flatnonzero(sel)]
    return sorted(out, key=lambda st: (popcount(st[1]), st[0], st[1]))


def from_vertical_rectangles(family: Iterable[tuple[int, int]], rows: Sequence,
                             cols: Sequence) -> Bimatroid:
    """Regular minors are the square members of the family."""
    return Bimatroid(rows, cols, [(S, T) for S, T in family if popcount(S) == popcount(T)])


def rectangle_counts(B: Bimatroid, orientation: str = "vertical") -> list[int]:
    """``RR_k`` indexed by the number of columns (vertical) or rows (horizontal)."""
    N = B.m + B.n
    out = [0] * (N + 1)
    for S, T in regular_rectangles(B, orientation):
        out[popcount(T) if orientation == "vertical" else popcount(S)] += 1
    return out


# -- validators -----------------------------------------------------------------

def _validate_axioms(B: Bimatroid) -> Verdict:
    if (0, 0) not in B.minors:
        return Verdict(False, "axiom (1): (∅,∅) is not a regular minor")
    m, n = B.m, B.n
    fullE, fullF = (1 << m) - 1, (1 << n) - 1
    g = B._exists_table()
    R = B.minors

    def find(S, T):
        return next((i, j) for i, j in B.sorted_minors() if S & ~i == 0 and j & ~T == 0)

    for I, J in B.sorted_minors():
        # (2a): for i' outside I, some (I', J') with i' ∈ I' may defeat both options
        for ip in bits(fullE & ~I):
            X = mask_of(i for i in bits(I) if (I & ~(1 << i) | 1 << ip, J) in R)
            Y = mask_of(jp for jp in bits(fullF & ~J) if (I | 1 << ip, J | 1 << jp) in R)
            if g[(X | 1 << ip) | (fullF & ~Y) << m]:
                I2, J2 = find(X | 1 << ip, fullF & ~Y)
                return Verdict(False, "axiom (2a) fails", _witness(B, I, J, I2, J2, row=ip))
        # (2b): for j in J, some (I', J') with j ∉ J' may defeat both options
        for j in bits(J):
            Y = mask_of(jp for jp in bits(fullF & ~J) if (I, J & ~(1 << j) | 1 << jp) in R)
            X = mask_of(i for i in bits(I) if (I & ~(1 << i), J & ~(1 << j)) in R)
            T = fullF & ~Y & ~(1 << j)
            if g[X | T << m]:
                I2, J2 = find(X, T)
                return Verdict(False, "axiom (2b) fails", _witness(B, I, J, I2, J2, col=j))
    return Verdict(True)


def _witness(B, I, J, I2, J2, row=None, col=None) -> dict:
    w = {"I": [B.rows[k] for k in bits(I)], "J": [B.cols[k] for k in bits(J)],
         "I2": [B.rows[k] for k in bits(I2)], "J2": [B.cols[k] for k in bits(J2)]}
    if row is not None:
        w["i"] = B.rows[row]
    if col is not None:
        w["j"] = B.cols[col]
    return w


def validate_bimatroid(B: Bimatroid) -> Verdict:
    """Check the regular-minor axioms exhaustively.

    The axioms are checked directly and, independently, as basis exchange
    for the extended matroid (with ``E`` required to be a basis).  The two
    routes must agree; a disagreement raises ``InternalConsistencyError``.
    """
    direct = _validate_axioms(B)
    ext = extended_matroid(B)
    if (0, 0) not in B.minors:
        via = Verdict(False, "E is not a basis")
    else:
        via = validate_bases(ext)
    if direct.ok != via.ok:
        raise InternalConsistencyError(
            f"axiom check says {direct.ok}, extended matroid check says {via.ok}")
    return direct


def validate_rank_axioms(table: RelativeRankTable, method: str = "local") -> Verdict:
    """Check the three relative-rank axioms over every argument.

    ``method="local"`` checks the bisubmodular inequality only on pairs
    differing in two elements (equivalent to the full inequality for any set
    function); ``method="pairs"`` checks all pairs of rectangles.
    """
    m, n = table.m, table.n
    N = m + n
    fullE = (1 << m) - 1
    v = table.values.astype(np.int32)
    idx = np.arange(1 << N)
    S_size = popcounts(m)[idx & fullE].astype(np.int32)
    T_size = popcounts(n)[idx >> m].astype(np.int32)

    bad = np.flatnonzero((v > np.minimum(S_size, T_size)) | (v < 0))
    if bad.size:
        x = int(bad[0])
        return Verdict(False, "axiom (1): r(S,T) > min(|S|,|T|)",
                       {"S": bits(x & fullE), "T": bits(x >> m), "r": int(v[x])})
    for b in range(N):
        lo = idx[(idx >> b & 1) == 0]
        d = v[lo | 1 << b] - v[lo]
        badd = np.flatnonzero((d < 0) | (d > 1))
        if badd.size:
            x = int(lo[badd[0]])
            return Verdict(False, "axiom (2): unit increment fails",
                           {"S": bits(x & fullE), "T": bits(x >> m), "element": b})

    # phi(X) = r(S,T) + |E - S| with X = (E - S) ⊔ T turns (3) into submodularity
    comp = idx ^ fullE
    phi = v[comp] + popcounts(m)[(idx & fullE)].astype(np.int32)
    if method == "local":
        for a in range(N):
            for b in range(a + 1, N):
                X = idx[((idx >> a & 1) == 0) & ((idx >> b & 1) == 0)]
                lhs = phi[X | 1 << a] + phi[X | 1 << b]
                rhs = phi[X | 1 << a | 1 << b] + phi[X]
                badx = np.flatnonzero(lhs < rhs)
                if badx.size:
                    X0 = int(X[badx[0]])
                    P, Q = X0 | 1 << a, X0 | 1 << b
                    return Verdict(False, "axiom (3): bisubmodularity fails",
                                   _rank_pair_witness(P, Q, m))
    elif method == "pairs":
        for P in range(1 << N):
            lhs = phi[P] + phi
            rhs = phi[P & idx] + phi[P | idx]
            badx = np.flatnonzero(lhs < rhs)
            if badx.size:
                return Verdict(False, "axiom (3): bisubmodularity fails",
                               _rank_pair_witness(P, int(badx[0]), m))
    else:
        raise PreconditionError(f"unknown method {method!r}")
    return Verdict(True)


def _rank_pair_witness(P: int, Q: int, m: int) -> dict:
    fullE = (1 << m) - 1
    return {"S": bits(fullE & ~P), "T": bits(P >> m),
            "S2": bits(fullE & ~Q), "T2": bits(Q >> m)}


def validate_rectangle_axioms(family: Iterable[tuple[int, int]], m: int, n: int) -> Verdict:
    """Check the four vertical-rectangle axioms on ``2^E x 2^F``.

    Pairs are moved to ``X = (E - S) ⊔ T``: axiom (3) becomes closure under
    removing one element and axiom (4) becomes augmentation, checked via
    the largest member inside each complement of an augmentation set.
    """
    fam = {(int(S), int(T)) for S, T in family}
    fullE = (1 << m) - 1
    N = m + n
    if (0, 0) not in fam:
        return Verdict(False, "axiom (1): (∅,∅) missing")
    for S, T in sorted(fam):
        if popcount(T) > popcount(S):
            return Verdict(False, "axiom (2): |T| > |S|", {"S": bits(S), "T": bits(T)})
    X_of = lambda S, T: (fullE & ~S) | T << m
    members = {X_of(S, T) for S, T in fam}
    for X in sorted(members):
        for z in bits(X):
            if X & ~(1 << z) not in members:
                Y = X & ~(1 << z)
                return Verdict(False, "axiom (3): not closed under enlarging S / shrinking T",
                               {"S": bits(fullE & ~X), "T": bits(X >> m),
                                "S2": bits(fullE & ~Y), "T2": bits(Y >> m)})
    a = np.full(1 << N, -1, dtype=np.int16)
    for X in members:
        a[X] = popcount(X)
    best = subset_max(a, N)
    full = (1 << N) - 1
    for Xp in sorted(members):
        aug = mask_of(z for z in bits(full & ~Xp) if Xp | 1 << z in members)
        C = full & ~aug
        if best[C] > popcount(Xp):
            X = next(x for x in sorted(members) if x & ~C == 0 and popcount(x) > popcount(Xp))
            return Verdict(False, "axiom (4): exchange fails",
                           {"S": bits(fullE & ~X), "T": bits(X >> m),
                            "S2": bits(fullE & ~Xp), "T2": bits(Xp >> m)})
    return Verdict(True)


def laplace_property(B: Bimatroid) -> Verdict:
    """Every regular minor shrinks to a regular minor along any row and any column."""
    R = B.minors
    for I, J in B.sorted_minors():
        for j in bits(J):
            if not any((I & ~(1 << i), J & ~(1 << j)) in R for i in bits(I)):
                return Verdict(False, "column expansion fails", _witness(B, I, J, 0, 0, col=j))
        for i in bits(I):
            if not any((I & ~(1 << i), J & ~(1 << j)) in R for j in bits(J)):
                return Verdict(False, "row expansion fails", _witness(B, I, J, 0, 0, row=i))
    return Verdict(True)


# -- transpose and restriction ---------------------------------------------------------

def transpose(B: Bimatroid) -> Bimatroid:
    return Bimatroid(B.cols, B.rows, ((j, i) for i, j in B.minors))


def restrict(B: Bimatroid, E_sub, F_sub) -> Bimatroid:
    """Keep the regular minors that live inside ``E' x F'``."""
    e, f = B.row_mask(E_sub), B.col_mask(F_sub)
    rows = [B.rows[k] for k in bits(e)]
    cols = [B.cols[k] for k in bits(f)]
    return Bimatroid(rows, cols, ((compress(i, e), compress(j, f)) for i, j in B.minors
                                  if i & ~e == 0 and j & ~f == 0))
