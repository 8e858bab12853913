"""Executable checks of the log-concavity theorems.

Each check returns a :class:`TheoremReport` with exact ``lhs``/``rhs``
values for every inequality.  Counts are computed twice, once by direct
enumeration and once through a generating polynomial, and any disagreement
or failed inequality is recorded as an alarm.  The theorems are proved, so
an alarm always indicates a bug.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bimatroid import Bimatroid, extended_matroid, rectangle_counts, transpose
from .errors import BudgetExceededError, PreconditionError
from .exactnum import format_rational, rational_str
from .lorentzian import is_lorentzian, lorentzian_report, MAX_DEGREE, MAX_VARS
from .matroid import Matroid, independent_sets, mask_of, popcount, validate_bases
from .morphism import (MatroidMorphism, basis_counts, bases_of_morphism, nullity,
                       tilde_matroid, to_point)
from .polynomial import (basis_generating_poly, bivariate_collapse,
                         independent_set_poly_homogenized, regular_minor_poly,
                         var_names, weak_basis_poly)


@dataclass
class TheoremReport:
    theorem: str
    instance: dict
    seed: int | None = None
    sequences: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    properties: dict = field(default_factory=dict)
    alarms: list = field(default_factory=list)
    skipped: str | None = None

    @property
    def verdict(self) -> bool:
        return (all(c["holds"] for c in self.checks) and all(self.properties.values())
                and not self.alarms)

    def __bool__(self):
        return self.verdict

    def add_inequality(self, k: int, lhs: Fraction, rhs: Fraction, label: str | None = None):
        rec = {"k": k, "lhs": lhs, "rhs": rhs, "holds": lhs >= rhs}
        if label:
            rec["sequence"] = label
        self.checks.append(rec)
        if not rec["holds"]:
            self.alarms.append(f"inequality fails at k={k}" + (f" ({label})" if label else ""))

    def require(self, name: str, ok: bool, detail: str = ""):
        self.properties[name] = bool(ok)
        if not ok:
            self.alarms.append(f"{name} failed" + (f": {detail}" if detail else ""))

    def to_json(self) -> dict:
        checks = []
        for c in self.checks:
            rec = dict(c)
            rec["lhs"] = rational_str(rec["lhs"])
            rec["rhs"] = rational_str(rec["rhs"])
            checks.append(rec)
        out = {"theorem": self.theorem, "instance": self.instance, "seed": self.seed,
               "sequences": {k: [format_rational(Fraction(x)) for x in v]
                             for k, v in self.sequences.items()},
               "checks": checks, "properties": self.properties,
               "alarms": self.alarms, "verdict": self.verdict}
        if self.skipped:
            out["skipped"] = self.skipped
        return out

    def csv_rows(self) -> list[dict]:
        """One row per inequality."""
        return [{"theorem": self.theorem, "seed": self.seed, "trial": self.instance.get("trial"),
                 "sequence": c.get("sequence", ""), "k": c["k"],
                 "lhs": rational_str(c["lhs"]), "rhs": rational_str(c["rhs"]),
                 "holds": c["holds"]} for c in self.checks]


def _ulc_checks(rep: TheoremReport, seq: Sequence, s: int, label: str | None = None):
    """``(a_k/C(s,k))^2 >= a_{k-1}/C(s,k-1) * a_{k+1}/C(s,k+1)`` for ``1 <= k < len-1``."""
    a = [Fraction(x, math.comb(s, k)) for k, x in enumerate(seq)]
    for k in range(1, len(a) - 1):
        rep.add_inequality(k, a[k] * a[k], a[k - 1] * a[k + 1], label)
    _internal_zeros(rep, seq, label)


def _lc_checks(rep: TheoremReport, seq: Sequence, label: str | None = None):
    for k in range(1, len(seq) - 1):
        rep.add_inequality(k, Fraction(seq[k]) ** 2, Fraction(seq[k - 1] * seq[k + 1]), label)
    _internal_zeros(rep, seq, label)


def _internal_zeros(rep: TheoremReport, seq: Sequence, label: str | None):
    nz = [k for k, x in enumerate(seq) if x]
    ok = not nz or all(seq[k] for k in range(nz[0], nz[-1] + 1))
    rep.require("no_internal_zeros" + (f"_{label}" if label else ""), ok, str(list(seq)))


def _agree(rep: TheoremReport, name: str, a: Sequence, b: Sequence):
    ok = [Fraction(x) for x in a] == [Fraction(x) for x in b]
    rep.require(name, ok, f"{list(a)} vs {list(b)}")


# -- check A: regular minors -----------------------------------------------------------

def regular_minor_counts_via_poly(B: Bimatroid) -> list[Fraction]:
    """``R_k`` read off the bivariate collapse ``w_e -> x``, ``w_f -> y``."""
    p = regular_minor_poly(B)
    names = p.vars
    grouping = {v: ("x" if i < B.m else "y") for i, v in enumerate(names)}
    out = bivariate_collapse(p, grouping)
    return out[:min(B.m, B.n) + 1]


def check_theorem_A(B: Bimatroid, instance: dict | None = None, seed=None) -> TheoremReport:
    rep = TheoremReport("A", instance or {"bimatroid": B.to_json()}, seed)
    s = min(B.m, B.n)
    direct = B.minor_counts()[:s + 1]
    direct += [0] * (s + 1 - len(direct))
    via_poly = regular_minor_counts_via_poly(B)
    rep.sequences["R"] = direct
    _agree(rep, "counts_agree", direct, via_poly)
    _ulc_checks(rep, direct, s)
    return rep


# -- check B: regular rectangles -------------------------------------------------------

def rectangle_counts_via_poly(B: Bimatroid) -> list[Fraction]:
    """``RR^vert_k`` from the homogenized independent-set polynomial of the extended matroid.

    Sending every row variable to ``z`` gives ``Σ_k RR_k z^(N-k) y^k``.
    """
    p = independent_set_poly_homogenized(extended_matroid(B))
    grouping = {v: ("y" if B.m <= i < B.m + B.n else "x") for i, v in enumerate(p.vars)}
    return bivariate_collapse(p, grouping)


def check_theorem_B(B: Bimatroid, instance: dict | None = None, seed=None) -> TheoremReport:
    rep = TheoremReport("B", instance or {"bimatroid": B.to_json()}, seed)
    N = B.m + B.n
    vert = rectangle_counts(B, "vertical")
    horiz = rectangle_counts(B, "horizontal")
    rep.sequences["RR_vertical"] = vert
    rep.sequences["RR_horizontal"] = horiz
    _agree(rep, "vertical_counts_agree", vert, rectangle_counts_via_poly(B))
    _agree(rep, "horizontal_counts_agree", horiz, rectangle_counts_via_poly(transpose(B)))
    _ulc_checks(rep, vert, N, "vertical")
    _ulc_checks(rep, horiz, N, "horizontal")
    return rep


# -- check C: bases of a morphism, and Mason -------------------------------------------

def basis_counts_direct(phi: MatroidMorphism) -> list[int]:
    """``B_k`` by scanning subsets and testing the definition one set at a time."""
    M, M2 = phi.source, phi.target
    out = [0] * (M.rank + 1)
    for T in range(1 << M.n):
        if not M.is_independent(T):
            continue
        img = mask_of(phi.mapping[f] for f in range(M.n) if T >> f & 1)
        if M2.rank_of(img) == M2.rank:
            out[popcount(T)] += 1
    return out


def _morphism_instance(phi: MatroidMorphism, instance: dict | None) -> dict:
    return instance or {"morphism": phi.to_json()}


def check_theorem_C(phi: MatroidMorphism, instance: dict | None = None, seed=None,
                    theorem: str = "C") -> TheoremReport:
    rep = TheoremReport(theorem, _morphism_instance(phi, instance), seed)
    counts = basis_counts(phi)
    rep.sequences["B"] = counts
    _agree(rep, "counts_agree", counts, basis_counts_direct(phi))
    _lc_checks(rep, counts)
    return rep


def check_mason(M: Matroid, instance: dict | None = None, seed=None) -> TheoremReport:
    """Check C for ``M -> U(0,1)``, cross-checked against independent-set counts."""
    rep = check_theorem_C(to_point(M), instance or {"matroid": M.to_json()}, seed, "mason")
    indep = [0] * (M.rank + 1)
    for S in independent_sets(M):
        indep[popcount(S)] += 1
    rep.sequences["I"] = indep
    _agree(rep, "independent_sets_agree", rep.sequences["B"], indep)
    return rep


def check_thmC_pipeline(phi: MatroidMorphism, instance: dict | None = None, seed=None,
                        lorentzian: bool = True) -> TheoremReport:
    """Padding to ``M~_φ``, collapsing ``Q`` and checking the weighted sequence."""
    rep = TheoremReport("C-pipeline", _morphism_instance(phi, instance), seed)
    r = phi.source.rank
    Mt = tilde_matroid(phi)
    rep.require("tilde_exchange", validate_bases(Mt).ok)
    p = basis_generating_poly(Mt)
    qvars = set(var_names(Mt.ground[:r]))
    # w_q -> x: each basis T of φ picks up C(r, |T|) from the choice of padding
    collapsed = {}
    for exp, c in p.terms.items():
        key = (sum(exp[:r]),) + exp[r:]
        collapsed[key] = collapsed.get(key, 0) + c
    expected = {(r - popcount(T),) + tuple(T >> f & 1 for f in range(phi.source.n)):
                math.comb(r, popcount(T)) for T in bases_of_morphism(phi)}
    rep.require("q_collapse_coefficients", collapsed == expected)
    counts = basis_counts(phi)
    weighted = [math.comb(r, k) * b for k, b in enumerate(counts)]
    via_poly = bivariate_collapse(p, {v: ("x" if v in qvars else "y") for v in p.vars})
    rep.sequences["B"] = counts
    rep.sequences["weighted"] = weighted
    _agree(rep, "weighted_counts_agree", weighted, via_poly)
    _ulc_checks(rep, weighted, r)
    if lorentzian:
        if len(p.vars) <= MAX_VARS and p.degree() <= MAX_DEGREE:
            rep.require("tilde_poly_lorentzian", is_lorentzian(p))
        else:
            rep.properties["tilde_poly_lorentzian_skipped"] = True
    return rep


# -- weak basis polynomial -------------------------------------------------------------

def check_weak_basis_poly_lorentzian(phi: MatroidMorphism, alpha: int,
                                     instance: dict | None = None, seed=None) -> TheoremReport:
    inst = dict(_morphism_instance(phi, instance))
    inst["alpha"] = alpha
    rep = TheoremReport("E-lorentzian", inst, seed)
    nul = nullity(phi)
    if alpha < nul:
        raise PreconditionError(f"alpha={alpha} is below the nullity {nul}")
    p = weak_basis_poly(phi, alpha)
    w0_degrees = sorted({e[0] for e in p.terms})
    rep.sequences["w0_degrees"] = w0_degrees
    try:
        res = lorentzian_report(p)
    except BudgetExceededError as exc:
        rep.skipped = str(exc)
        return rep
    rep.require("lorentzian", res["lorentzian"], str(res["witnesses"]))
    return rep
