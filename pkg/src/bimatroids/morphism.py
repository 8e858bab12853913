"""Morphisms of matroids, pullbacks, quotients and bases of a morphism."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import GroundMismatchError, PreconditionError, SchemaError
from .matroid import (Matroid, bits, cocircuits, flats, mask_of, popcount, popcounts,
                      subset_max, uniform)


def _indices(M: Matroid, M2: Matroid, phi) -> tuple[int, ...]:
    """Normalize a map given as label dict or index sequence to target indices."""
    if isinstance(phi, Mapping):
        try:
            return tuple(M2.index(phi[f]) for f in M.ground)
        except KeyError as exc:
            raise PreconditionError(f"map is not total: {exc}") from None
    phi = tuple(int(x) for x in phi)
    if len(phi) != M.n or any(not 0 <= x < M2.n for x in phi):
        raise PreconditionError("index map has the wrong length or range")
    return phi


def image_table(phi: tuple[int, ...], n_target: int) -> np.ndarray:
    """``img[T]`` = mask of ``phi(T)`` for every ``T ⊆ F``."""
    n = len(phi)
    img = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        v = img.reshape(-1, 2, 1 << b)
        v[:, 1, :] = v[:, 0, :] | (1 << phi[b])
    return img


def _pulled_ranks(M2: Matroid, phi: tuple[int, ...]) -> np.ndarray:
    return M2.rank_table()[image_table(phi, M2.n)].astype(np.int16)


def preimage(phi: tuple[int, ...], target_mask: int) -> int:
    return mask_of(f for f, t in enumerate(phi) if target_mask >> t & 1)


def is_morphism_rank(M: Matroid, M2: Matroid, phi) -> bool:
    """``r'(φT2) - r'(φT1) <= r(T2) - r(T1)`` for every ``T1 ⊆ T2``.

    Equivalently ``D(T) = r(T) - r'(φT)`` is monotone; all pairs are covered
    by comparing ``D`` with its running maximum over subsets.
    """
    p = _indices(M, M2, phi)
    D = M.rank_table().astype(np.int16) - _pulled_ranks(M2, p)
    return bool(np.all(subset_max(D, M.n) <= D))


def is_morphism_flats(M: Matroid, M2: Matroid, phi) -> bool:
    """Preimages of flats of ``M2`` are flats of ``M``."""
    p = _indices(M, M2, phi)
    flats_M = set(flats(M))
    return all(preimage(p, F2) in flats_M for F2 in flats(M2))


def is_morphism_cocircuits(M: Matroid, M2: Matroid, phi) -> bool:
    """Preimages of cocircuits of ``M2`` are unions of cocircuits of ``M``."""
    p = _indices(M, M2, phi)
    cc = cocircuits(M)
    for C2 in cocircuits(M2):
        P = preimage(p, C2)
        cover = 0
        for C in cc:
            if C & ~P == 0:
                cover |= C
        if cover != P:
            return False
    return True


def pullback(phi, M2: Matroid, source: Matroid | None = None, ground=None) -> Matroid:
    """Matroid on the source ground with rank function ``T -> r'(φ(T))``.

    ``phi`` is either a label dict (then ``ground`` or ``source`` gives the
    ordered source ground) or an index tuple.
    """
    if ground is None:
        if source is None:
            if isinstance(phi, Mapping):
                ground = list(phi)
            else:
                ground = [str(i) for i in range(len(phi))]
        else:
            ground = source.ground
    dummy = Matroid(ground, [0])
    p = _indices(dummy, M2, phi)
    rk = _pulled_ranks(M2, p)
    n = len(ground)
    top = int(rk[(1 << n) - 1])
    pc = popcounts(n)
    bases = np.flatnonzero((rk == pc) & (pc == top))
    return Matroid(ground, (int(b) for b in bases))


def is_quotient(M: Matroid, N: Matroid) -> bool:
    """``N`` is a quotient of ``M`` iff the identity is a morphism ``M -> N``."""
    if M.ground != N.ground:
        raise GroundMismatchError("quotients live on the same ground set")
    return is_morphism_rank(M, N, tuple(range(M.n)))


@dataclass(frozen=True)
class MatroidMorphism:
    """A map ``F -> F'`` between matroid ground sets that is a morphism."""

    source: Matroid
    target: Matroid
    mapping: tuple

    def __post_init__(self):
        p = _indices(self.source, self.target, self.mapping)
        object.__setattr__(self, "mapping", p)
        if not is_morphism_rank(self.source, self.target, p):
            raise PreconditionError("map is not a morphism of matroids")

    @classmethod
    def from_labels(cls, source: Matroid, target: Matroid, phi: Mapping) -> "MatroidMorphism":
        return cls(source, target, _indices(source, target, phi))

    @property
    def label_map(self) -> dict:
        return {f: self.target.ground[t] for f, t in zip(self.source.ground, self.mapping)}

    @property
    def rank(self) -> int:
        return self.source.rank

    def to_json(self) -> dict:
        return {"source": self.source.to_json(), "target": self.target.to_json(),
                "map": {str(k): str(v) for k, v in self.label_map.items()}}

    @classmethod
    def from_json(cls, data: dict) -> "MatroidMorphism":
        try:
            src = Matroid.from_json(data["source"])
            tgt = Matroid.from_json(data["target"])
            phi = {str(k): str(v) for k, v in data["map"].items()}
        except (KeyError, TypeError, AttributeError) as exc:
            raise SchemaError(f"malformed morphism JSON: {exc}") from exc
        return cls.from_labels(src, tgt, phi)


def to_point(M: Matroid, label: str = "*") -> MatroidMorphism:
    """The morphism from ``M`` to ``U(0,1)``."""
    return MatroidMorphism(M, uniform(0, 1, [label]), (0,) * M.n)


def identity_morphism(M: Matroid) -> MatroidMorphism:
    return MatroidMorphism(M, M, tuple(range(M.n)))


def nullity(phi: MatroidMorphism) -> int:
    return phi.source.rank - pullback(phi.mapping, phi.target, phi.source).rank


def spans_target(phi: MatroidMorphism) -> bool:
    img = mask_of(phi.mapping)
    return phi.target.rank_of(img) == phi.target.rank


def bases_of_morphism(phi: MatroidMorphism) -> list[int]:
    """Independent sets of the source whose image spans the target."""
    M, M2 = phi.source, phi.target
    ok = M.independence_table() & (_pulled_ranks(M2, phi.mapping) == M2.rank)
    return sorted((int(t) for t in np.flatnonzero(ok)), key=lambda t: (popcount(t), t))


def basis_counts(phi: MatroidMorphism) -> list[int]:
    """``B_k(φ)`` for ``k = 0 .. rk(M)``."""
    out = [0] * (phi.source.rank + 1)
    for T in bases_of_morphism(phi):
        out[popcount(T)] += 1
    return out


def q_labels(r: int, avoid) -> list[str]:
    avoid = set(avoid)
    prefix = "q"
    while any(f"{prefix}{i}" in avoid for i in range(r)):
        prefix += "_"
    return [f"{prefix}{i}" for i in range(r)]


def tilde_matroid(phi: MatroidMorphism) -> Matroid:
    """Matroid on ``Q ⊔ F`` (``|Q| = rk M``) whose bases pad bases of ``φ`` to size ``rk M``.

    Built from the basis description; callers check the exchange axiom.
    """
    if not spans_target(phi):
        raise PreconditionError("φ(F) does not span the target; the morphism has no bases")
    r = phi.source.rank
    Q = q_labels(r, phi.source.ground)
    bases = []
    for T in bases_of_morphism(phi):
        for S in itertools.combinations(range(r), r - popcount(T)):
            bases.append(mask_of(S) | T << r)
    return Matroid(Q + list(phi.source.ground), bases)
