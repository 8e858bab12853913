"""Sparse multivariate polynomials with rational coefficients, plus the
generating polynomials of matroids, bimatroids and morphisms."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .bimatroid import Bimatroid, extended_labels
from .errors import PreconditionError, SchemaError
from .exactnum import parse_rational, rational_str
from .matroid import Matroid, bits, independent_sets, popcount

MAX_VARS = 24


class MultiPoly:
    """Polynomial in an ordered list of named variables.

    ``terms`` maps dense exponent tuples to nonzero ``Fraction`` coefficients.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping | Iterable = ()):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise PreconditionError(f"duplicate variable names in {variables!r}")
        if len(variables) > MAX_VARS:
            raise PreconditionError(f"at most {MAX_VARS} variables supported")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple, Fraction] = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(variables) or any(e < 0 for e in exp):
                raise PreconditionError(f"bad exponent vector {exp!r}")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
        self.vars = variables
        self.terms = {e: c for e, c in clean.items() if c}

    # -- constructors ----------------------------------------------------------
    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls(variables)

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "MultiPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        variables = tuple(variables)
        exp = tuple(int(v == name) for v in variables)
        if sum(exp) != 1:
            raise PreconditionError(f"unknown variable {name!r}")
        return cls(variables, {exp: 1})

    @classmethod
    def from_sets(cls, variables: Sequence[str], masks: Iterable[int], coef=1) -> "MultiPoly":
        """Multiaffine polynomial ``Σ_S coef · Π_{i∈S} w_i`` over bit masks."""
        n = len(variables)
        return cls(variables, ((tuple(m >> i & 1 for i in range(n)), coef) for m in masks))

    # -- structure -----------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, exp) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def support(self) -> set[tuple]:
        return set(self.terms)

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def degree(self) -> int:
        return max(self.degrees(), default=0)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def is_multiaffine(self) -> bool:
        return all(max(e, default=0) <= 1 for e in self.terms)

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self.terms.items(), reverse=True)

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, exp) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    # -- arithmetic ------------------------------------------------------------
    def embed(self, variables: Sequence[str]) -> "MultiPoly":
        """Re-express in a superset of the variables (new ones get exponent 0)."""
        variables = tuple(variables)
        missing = [v for v in self.vars if v not in variables]
        if missing:
            raise PreconditionError(f"variables {missing!r} would be dropped")
        pos = [variables.index(v) for v in self.vars]
        out = {}
        for exp, c in self.terms.items():
            e = [0] * len(variables)
            for p, k in zip(pos, exp):
                e[p] = k
            out[tuple(e)] = c
        return MultiPoly(variables, out)

    def _aligned(self, other: "MultiPoly"):
        if self.vars == other.vars:
            return self, other
        union = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self.embed(union), other.embed(union)

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.vars, other)
        a, b = self._aligned(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiPoly(a.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = parse_rational(other)
            return MultiPoly(self.vars, {e: c * v for e, v in self.terms.items()})
        a, b = self._aligned(other)
        out: dict[tuple, Fraction] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(a.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MultiPoly.constant(self.vars, 1)
        for _ in range(k):
            out = out * self
        return out

    def evaluate(self, point: Mapping) -> Fraction:
        total = Fraction(0)
        vals = [parse_rational(point[v]) for v in self.vars]
        for exp, c in self.terms.items():
            t = c
            for x, e in zip(vals, exp):
                if e:
                    t *= x ** e
            total += t
        return total

    def truncate_le(self, kappa: Sequence[int]) -> "MultiPoly":
        return MultiPoly(self.vars, {e: c for e, c in self.terms.items()
                                     if all(x <= k for x, k in zip(e, kappa))})

    def truncate_ge(self, kappa: Sequence[int]) -> "MultiPoly":
        return MultiPoly(self.vars, {e: c for e, c in self.terms.items()
                                     if all(x >= k for x, k in zip(e, kappa))})

    # -- json ------------------------------------------------------------------
    def to_json(self) -> dict:
        return {"vars": list(self.vars),
                "terms": [{"exp": list(e), "coef": rational_str(c)}
                          for e, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, data: dict) -> "MultiPoly":
        try:
            return cls(data["vars"], [(t["exp"], parse_rational(t["coef"])) for t in data["terms"]])
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"malformed polynomial JSON: {exc}") from exc


def partial_derivative(p: MultiPoly, alpha: Sequence[int]) -> MultiPoly:
    """``∂^alpha p``: differentiate ``alpha[i]`` times in the ``i``-th variable."""
    alpha = tuple(alpha)
    if len(alpha) != len(p.vars) or any(a < 0 for a in alpha):
        raise PreconditionError("derivative multi-index has the wrong shape")
    out = {}
    for exp, c in p.terms.items():
        if any(e < a for e, a in zip(exp, alpha)):
            continue
        f = 1
        for e, a in zip(exp, alpha):
            f *= math.perm(e, a)
        out[tuple(e - a for e, a in zip(exp, alpha))] = c * f
    return MultiPoly(p.vars, out)


def substitute(p: MultiPoly, assignment: Mapping[str, Mapping[str, object]],
               new_vars: Sequence[str] | None = None) -> MultiPoly:
    """Replace each variable by a linear form with non-negative coefficients.

    ``assignment`` maps old variable names to ``{new_var: coefficient}``;
    variables not mentioned are kept as themselves.
    """
    forms = {}
    for v in p.vars:
        form = assignment.get(v, {v: 1})
        form = {w: parse_rational(c) for w, c in form.items()}
        if any(c < 0 for c in form.values()):
            raise PreconditionError(f"negative coefficient in the form substituted for {v!r}")
        forms[v] = form
    if new_vars is None:
        seen = []
        for v in p.vars:
            for w in forms[v]:
                if w not in seen:
                    seen.append(w)
        new_vars = seen
    new_vars = tuple(new_vars)
    idx = {w: i for i, w in enumerate(new_vars)}
    linear = []
    for v in p.vars:
        terms = {}
        for w, c in forms[v].items():
            if w not in idx:
                raise PreconditionError(f"{w!r} is not among the new variables")
            e = [0] * len(new_vars)
            e[idx[w]] = 1
            terms[tuple(e)] = c
        linear.append(MultiPoly(new_vars, terms))
    out = MultiPoly.zero(new_vars)
    power_cache: dict[tuple[int, int], MultiPoly] = {}
    for exp, c in p.terms.items():
        t = MultiPoly.constant(new_vars, c)
        for i, e in enumerate(exp):
            if e:
                if (i, e) not in power_cache:
                    power_cache[(i, e)] = linear[i] ** e
                t = t * power_cache[(i, e)]
        out = out + t
    return out


def bivariate_collapse(p: MultiPoly, grouping: Mapping[str, str]) -> list[Fraction]:
    """Send each variable to ``x`` or ``y``; return ``a_k`` = coefficient of ``x^(d-k) y^k``."""
    if not p.is_homogeneous():
        raise PreconditionError("bivariate collapse needs a homogeneous polynomial")
    bad = [v for v in p.vars if grouping.get(v) not in ("x", "y")]
    if bad:
        raise PreconditionError(f"variables {bad!r} are not assigned to x or y")
    ymask = [grouping[v] == "y" for v in p.vars]
    d = p.degree()
    out = [Fraction(0)] * (d + 1)
    for exp, c in p.terms.items():
        out[sum(e for e, y in zip(exp, ymask) if y)] += c
    return out


def indicator_poly(variables: Sequence[str], support: Iterable[Sequence[int]]) -> MultiPoly:
    """``Σ_{α∈S} w^α / α!``."""
    out = {}
    for a in support:
        a = tuple(a)
        out[a] = Fraction(1, math.prod(math.factorial(x) for x in a))
    return MultiPoly(variables, out)


# -- generating polynomials ------------------------------------------------------

def var_names(labels: Sequence) -> list[str]:
    return [f"w_{lab}" for lab in labels]


def basis_generating_poly(M: Matroid) -> MultiPoly:
    return MultiPoly.from_sets(var_names(M.ground), M.bases)


def regular_minor_poly(B: Bimatroid) -> MultiPoly:
    """``Σ_{(I,J)} Π_{e∉I} w_e Π_{f∈J} w_f``, homogeneous of degree ``|E|``."""
    names = var_names(extended_labels(B.rows, B.cols))
    m, n = B.m, B.n
    fullE = (1 << m) - 1
    terms = []
    for I, J in B.minors:
        comp = fullE & ~I
        exp = tuple(comp >> i & 1 for i in range(m)) + tuple(J >> j & 1 for j in range(n))
        terms.append((exp, 1))
    return MultiPoly(names, terms)


def fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    while base in taken:
        base += "_"
    return base


def independent_set_poly_homogenized(M: Matroid, z: str = "z") -> MultiPoly:
    """``Σ_{S independent} z^(N - |S|) Π_{i∈S} w_i`` with ``N = |ground|``."""
    names = var_names(M.ground)
    z = fresh_name(z, names)
    N = M.n
    terms = []
    for S in independent_sets(M):
        terms.append((tuple(S >> i & 1 for i in range(N)) + (N - popcount(S),), 1))
    return MultiPoly(names + [z], terms)


def weak_basis_poly(phi, alpha: int, w0: str = "w0") -> MultiPoly:
    """``Σ_k Σ_{T∈B_k(φ)} C(α, r-k) w0^(r-k) Π_{f∈T} w_f`` with ``r = rk M``."""
    from .morphism import bases_of_morphism, nullity

    nul = nullity(phi)
    if alpha < nul:
        raise PreconditionError(f"alpha={alpha} is below the nullity {nul}")
    names = var_names(phi.source.ground)
    w0 = fresh_name(w0, names)
    r = phi.source.rank
    n = phi.source.n
    terms = []
    for T in bases_of_morphism(phi):
        k = popcount(T)
        terms.append(((r - k,) + tuple(T >> i & 1 for i in range(n)), math.comb(alpha, r - k)))
    return MultiPoly([w0] + names, terms)


def homogeneous_basis_poly(phi, w0: str = "w0") -> MultiPoly:
    """``Σ_T w0^(|F| - |T|) Π_{f∈T} w_f`` over all bases ``T`` of ``φ``."""
    from .morphism import bases_of_morphism

    names = var_names(phi.source.ground)
    w0 = fresh_name(w0, names)
    n = phi.source.n
    return MultiPoly([w0] + names,
                     [((n - popcount(T),) + tuple(T >> i & 1 for i in range(n)), 1)
                      for T in bases_of_morphism(phi)])
