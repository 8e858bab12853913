"""Log-concavity of sequences and Lorentzian polynomials.

A homogeneous polynomial with non-negative coefficients is treated as
Lorentzian when its support is M-convex and every quadratic derivative
``∂^α p`` (``|α| = d - 2``) has a Hessian with at most one positive
eigenvalue.  Strictly Lorentzian polynomials have all coefficients in
degree ``d`` positive and every such Hessian of signature ``(+, -, ..., -)``.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceededError, InternalConsistencyError, PreconditionError
from .exactnum import _inertia_inplace, parse_rational
from .matroid import Verdict, subset_or
from .polynomial import MultiPoly

MAX_VARS = 12
MAX_DEGREE = 8


# -- sequences ----------------------------------------------------------------

def _clean(seq: Iterable) -> list[Fraction]:
    out = [parse_rational(x) for x in seq]
    if any(x < 0 for x in out):
        raise PreconditionError("sequences must be non-negative")
    return out


def no_internal_zeros(seq: Iterable) -> bool:
    a = _clean(seq)
    nz = [k for k, x in enumerate(a) if x]
    return not nz or all(a[k] for k in range(nz[0], nz[-1] + 1))


def is_unimodal(seq: Iterable) -> bool:
    a = _clean(seq)
    k = 0
    while k + 1 < len(a) and a[k] <= a[k + 1]:
        k += 1
    while k + 1 < len(a) and a[k] >= a[k + 1]:
        k += 1
    return k + 1 >= len(a)


def _lc_inequalities(a: Sequence[Fraction]) -> bool:
    return all(a[k] * a[k] >= a[k - 1] * a[k + 1] for k in range(1, len(a) - 1))


def is_log_concave(seq: Iterable) -> bool:
    """No internal zeros and ``a_k^2 >= a_{k-1} a_{k+1}`` at every interior index."""
    a = _clean(seq)
    return no_internal_zeros(a) and _lc_inequalities(a)


def ulc_normalize(seq: Iterable, s: int) -> list[Fraction]:
    a = _clean(seq)
    if s < len(a) - 1:
        raise PreconditionError(f"normalization length {s} is shorter than the sequence")
    return [x / math.comb(s, k) for k, x in enumerate(a)]


def is_ultra_log_concave(seq: Iterable, s: int) -> bool:
    """``a_k / C(s, k)`` is log-concave (with no internal zeros)."""
    return is_log_concave(ulc_normalize(seq, s))


# -- M-convexity --------------------------------------------------------------

def is_m_convex(support: Iterable[Sequence[int]]) -> Verdict:
    """Exhaustive exchange check on a finite set of non-negative integer vectors.

    For each ``α`` and ``i`` with ``α_i > 0`` let ``P`` be the indices ``j``
    with ``α - e_i + e_j`` in the set.  The exchange fails exactly when some
    ``β`` has ``β_i < α_i`` and ``β_j <= α_j`` for all ``j`` in ``P``.
    """
    # largest vectors first, so a witness names the coordinate that must drop
    pts = sorted({tuple(int(x) for x in a) for a in support}, reverse=True)
    if not pts:
        return Verdict(True)
    n = len(pts[0])
    if any(len(a) != n or min(a, default=0) < 0 for a in pts):
        raise PreconditionError("support vectors must be non-negative and of equal length")
    S = set(pts)
    binary = all(max(a, default=0) <= 1 for a in pts)
    if binary and n <= 20:
        return _m_convex_binary(pts, n)
    arr = np.array(pts, dtype=np.int64).reshape(len(pts), n)
    for a in pts:
        av = np.array(a)
        for i in range(n):
            if a[i] == 0:
                continue
            P = [j for j in range(n) if j != i and _shift(a, i, j) in S]
            bad = arr[:, i] < a[i]
            if P:
                bad &= np.all(arr[:, P] <= av[P], axis=1)
            hit = np.flatnonzero(bad)
            if hit.size:
                return Verdict(False, "exchange fails",
                               {"alpha": list(a), "beta": list(pts[int(hit[0])]), "i": i})
    return Verdict(True)


def _shift(a: tuple, i: int, j: int) -> tuple:
    b = list(a)
    b[i] -= 1
    b[j] += 1
    return tuple(b)


def _m_convex_binary(pts: list[tuple], n: int) -> Verdict:
    masks = [sum(x << k for k, x in enumerate(a)) for a in pts]
    members = set(masks)
    ind = np.zeros(1 << n, dtype=bool)
    ind[masks] = True
    inside = subset_or(ind, n)
    full = (1 << n) - 1
    for a, A in zip(pts, masks):
        for i in range(n):
            if not A >> i & 1:
                continue
            base = A & ~(1 << i)
            P = 0
            for j in range(n):
                if not A >> j & 1 and (base | 1 << j) in members:
                    P |= 1 << j
            avoid = full & ~((1 << i) | P)
            # β with β_i = 0 and β_j = 0 on P is a subset of ``avoid``
            if inside[avoid]:
                B = next(m for m in sorted(masks) if m & ~avoid == 0)
                beta = [B >> k & 1 for k in range(n)]
                return Verdict(False, "exchange fails", {"alpha": list(a), "beta": beta, "i": i})
    return Verdict(True)


# -- Hessians -------------------------------------------------------------------

def compositions(n: int, d: int):
    """All ``α ∈ Z_{>=0}^n`` with ``|α| = d``."""
    if n == 0:
        if d == 0:
            yield ()
        return
    for bars in itertools.combinations(range(d + n - 1), n - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(d + n - 1 - prev - 1)
        yield tuple(out)


def _fact(exp: Sequence[int]) -> int:
    return math.prod(math.factorial(e) for e in exp)


def hessian_of_derivative(p: MultiPoly, alpha: Sequence[int]) -> list[list[Fraction]]:
    """Hessian of ``∂^α p`` for ``|α| = deg p - 2``; entry ``(i,j)`` is ``β! a_β``, ``β = α + e_i + e_j``."""
    n = len(p.vars)
    H = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            b = list(alpha)
            b[i] += 1
            b[j] += 1
            c = p.terms.get(tuple(b))
            if c:
                H[i][j] = H[j][i] = c * _fact(b)
    return H


def _relevant_alphas(p: MultiPoly) -> list[tuple]:
    n = len(p.vars)
    out = set()
    for beta in p.terms:
        for i in range(n):
            if beta[i] == 0:
                continue
            for j in range(i, n):
                if beta[j] - (i == j) <= 0:
                    continue
                a = list(beta)
                a[i] -= 1
                a[j] -= 1
                out.add(tuple(a))
    return sorted(out)


def _check_caps(p: MultiPoly):
    if len(p.vars) > MAX_VARS or p.degree() > MAX_DEGREE:
        raise BudgetExceededError(
            f"Lorentzian checks are capped at {MAX_VARS} variables and degree {MAX_DEGREE}")


def _require_homogeneous(p: MultiPoly):
    if not p.is_homogeneous():
        raise PreconditionError("Lorentzian checks need a homogeneous polynomial")


def lorentzian_report(p: MultiPoly) -> dict:
    """Classify ``p``; witnesses explain the first failure of each property."""
    _require_homogeneous(p)
    _check_caps(p)
    n, d = len(p.vars), p.degree()
    witnesses = []

    lor = True
    neg = [e for e, c in p.terms.items() if c < 0]
    if neg:
        lor = False
        witnesses.append({"property": "lorentzian", "reason": "negative coefficient",
                          "exp": list(sorted(neg)[0])})
    if lor:
        mc = is_m_convex(p.terms)
        if not mc:
            lor = False
            witnesses.append({"property": "lorentzian", "reason": "support not M-convex",
                              **(mc.witness or {})})
    if lor and d >= 2:
        for a in _relevant_alphas(p):
            npos, nneg, nzero = _inertia_inplace(hessian_of_derivative(p, a))
            if npos > 1:
                lor = False
                witnesses.append({"property": "lorentzian", "reason": "Hessian has >1 positive eigenvalue",
                                  "alpha": list(a), "inertia": [npos, nneg, nzero]})
                break

    strict = _strict(p, n, d, witnesses)
    if strict and not lor:
        raise InternalConsistencyError("strictly Lorentzian polynomial failed the Lorentzian test")
    return {"strict": strict, "lorentzian": lor, "witnesses": witnesses}


def _strict(p: MultiPoly, n: int, d: int, witnesses: list) -> bool:
    if not p.terms:
        witnesses.append({"property": "strict", "reason": "zero polynomial"})
        return False
    if any(c <= 0 for c in p.terms.values()) or len(p.terms) != math.comb(n + d - 1, d):
        witnesses.append({"property": "strict", "reason": "some coefficient in degree d is not positive"})
        return False
    if d < 2:
        return True
    for a in compositions(n, d - 2):
        sig = _inertia_inplace(hessian_of_derivative(p, a))
        if sig != (1, n - 1, 0):
            witnesses.append({"property": "strict", "reason": "Hessian signature is not (+,-,...,-)",
                              "alpha": list(a), "inertia": list(sig)})
            return False
    return True


def is_lorentzian(p: MultiPoly) -> bool:
    return lorentzian_report(p)["lorentzian"]


def is_strictly_lorentzian(p: MultiPoly) -> bool:
    return lorentzian_report(p)["strict"]


def bivariate(seq: Sequence, d: int, x: str = "x", y: str = "y") -> MultiPoly:
    """``Σ_k a_k x^(d-k) y^k``."""
    return MultiPoly((x, y), {(d - k, k): parse_rational(a) for k, a in enumerate(seq)})


def bivariate_ulc_equivalence(seq: Sequence, d: int) -> bool:
    """Decide Lorentzian-ness of ``Σ a_k x^(d-k) y^k`` two ways and insist they agree.

    One route is the Hessian/M-convexity test, the other is "no internal
    zeros and ultra log-concave with normalization ``d``".
    """
    a = _clean(seq)
    if len(a) != d + 1:
        raise PreconditionError(f"need {d + 1} coefficients, got {len(a)}")
    via_poly = is_lorentzian(bivariate(a, d))
    via_seq = no_internal_zeros(a) and is_ultra_log_concave(a, d)
    if via_poly != via_seq:
        raise InternalConsistencyError(
            f"sequence {a}: polynomial test {via_poly}, sequence test {via_seq}")
    return via_poly
