"""Exact scalars and dense exact linear algebra.

Two coefficient fields are supported: the rationals (backed by
:class:`fractions.Fraction`) and prime fields ``GF(p)`` with ``p < 2**31``.
Matrices are immutable and always carry their field, so entries over a prime
field are stored as plain ``int`` residues in ``[0, p)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DimensionError, PreconditionError, SchemaError

Rational = Fraction

DEFAULT_PRIME = 65521
_MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every ``n < 3_215_031_751``."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def parse_rational(value) -> Fraction:
    """Parse ``int``, ``Fraction`` or an ``"a/b"`` string into a Fraction."""
    if isinstance(value, bool):
        raise PreconditionError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise PreconditionError(f"not a rational: {value!r}") from exc
    raise PreconditionError(f"not a rational: {value!r}")


def format_rational(x: Fraction) -> Union[int, str]:
    """Integers serialize as JSON ints, everything else as ``"a/b"``."""
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


def rational_str(x) -> str:
    """Always a string: ``"3"`` or ``"-3/4"``."""
    return str(Fraction(x))


@dataclass(frozen=True)
class PrimeFieldElement:
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _other(self, other) -> int:
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise PreconditionError("mixing elements of different prime fields")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return PrimeFieldElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return PrimeFieldElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        return PrimeFieldElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        return PrimeFieldElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.p)

    def inverse(self) -> "PrimeFieldElement":
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return PrimeFieldElement(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        return self * PrimeFieldElement(o, self.p).inverse()

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value


class RationalField:
    """The field of rational numbers."""

    name = "Q"
    p = None

    def coerce(self, x) -> Fraction:
        if isinstance(x, PrimeFieldElement):
            raise PreconditionError("prime field element used over Q")
        return parse_rational(x)

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a / b

    def to_json(self, x):
        return format_rational(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """``GF(p)``; elements are represented as residues in ``[0, p)``."""

    name = "Fp"

    def __init__(self, p: int = DEFAULT_PRIME):
        if not isinstance(p, int) or p >= _MAX_PRIME or not is_prime(p):
            raise PreconditionError(f"modulus must be a prime below 2^31, got {p!r}")
        self.p = p

    def coerce(self, x) -> int:
        if isinstance(x, PrimeFieldElement):
            if x.p != self.p:
                raise PreconditionError("element from a different prime field")
            return x.value
        if isinstance(x, bool):
            raise PreconditionError(f"not a field element: {x!r}")
        if isinstance(x, int):
            return x % self.p
        q = parse_rational(x)
        if q.denominator % self.p == 0:
            raise PreconditionError(f"{x!r} has no image in GF({self.p})")
        return q.numerator * pow(q.denominator, self.p - 2, self.p) % self.p

    def element(self, x) -> PrimeFieldElement:
        return PrimeFieldElement(self.coerce(x), self.p)

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return a * pow(b, self.p - 2, self.p) % self.p

    def to_json(self, x):
        return int(x)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    return PrimeField(p)


Field = Union[RationalField, PrimeField]


class FieldMatrix:
    """Immutable dense matrix over ``QQ`` or a prime field."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, rows: int, cols: int, entries: Iterable):
        entries = tuple(field.coerce(x) for x in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise DimensionError(
                f"{len(entries)} entries do not fill a {rows}x{cols} matrix")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field = QQ, cols: int | None = None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionError("ragged rows")
        return cls(field, len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int, field: Field = QQ):
        return cls(field, n, n, [int(i == j) for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ):
        return cls(field, rows, cols, [0] * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "FieldMatrix":
        vals = [self.entries[i * self.cols + j] for i in row_idx for j in col_idx]
        return FieldMatrix(self.field, len(row_idx), len(col_idx), vals)

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(self.field, self.cols, self.rows,
                           [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    @property
    def T(self) -> "FieldMatrix":
        return self.transpose()

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i))

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.field != other.field:
            raise DimensionError("matrices live over different fields")
        if self.cols != other.rows:
            raise DimensionError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        f = self.field
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                acc = f.zero()
                for k in range(self.cols):
                    acc = acc + r[k] * other.entries[k * other.cols + j]
                out.append(acc if f is QQ or f.p is None else acc % f.p)
        return FieldMatrix(f, self.rows, other.cols, out)

    def __eq__(self, other):
        return (isinstance(other, FieldMatrix) and self.field == other.field
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"FieldMatrix({self.field!r}, {self.to_rows()!r})"

    def to_json(self) -> dict:
        data = {"field": self.field.name}
        if self.field.p is not None:
            data["p"] = self.field.p
        data.update(rows=self.rows, cols=self.cols,
                    entries=[[self.field.to_json(x) for x in self.row(i)]
                             for i in range(self.rows)])
        return data

    @classmethod
    def from_json(cls, data: dict) -> "FieldMatrix":
        try:
            kind = data.get("field", "Q")
            if kind == "Q":
                field = QQ
            elif kind == "Fp":
                field = GF(int(data.get("p", DEFAULT_PRIME)))
            else:
                raise PreconditionError(f"unknown field {kind!r}")
            rows = data["entries"]
            m = int(data.get("rows", len(rows)))
            n = int(data.get("cols", len(rows[0]) if rows else 0))
        except (KeyError, TypeError, AttributeError) as exc:
            raise SchemaError(f"malformed matrix JSON: {exc}") from exc
        if len(rows) != m:
            raise DimensionError(f"expected {m} rows, found {len(rows)}")
        return cls.from_rows(rows, field, cols=n)


def _integer_rows(M: FieldMatrix) -> tuple[list[list[int]], Fraction]:
    """Scale each row of a rational matrix to integers; return rows and the product of scales."""
    rows, scale = [], Fraction(1)
    for i in range(M.rows):
        r = M.row(i)
        lcm = 1
        for x in r:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        rows.append([int(x * lcm) for x in r])
        scale *= lcm
    return rows, scale


def _bareiss_det(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri, rk = a[i], a[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _det_mod_p(a: list[list[int]], p: int) -> int:
    n = len(a)
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        akk = a[k][k]
        det = det * akk % p
        inv = pow(akk, p - 2, p)
        rk = a[k]
        for i in range(k + 1, n):
            f = a[i][k] * inv % p
            if f:
                ri = a[i]
                for j in range(k + 1, n):
                    ri[j] = (ri[j] - f * rk[j]) % p
    return det % p


def det(M: FieldMatrix):
    """Exact determinant of a square matrix.

    Rationals go through fraction-free Bareiss elimination on row-scaled
    integer data; prime fields use ordinary Gaussian elimination.
    """
    if not M.is_square():
        raise DimensionError(f"determinant of a non-square {M.rows}x{M.cols} matrix")
    if M.field.p is None:
        rows, scale = _integer_rows(M)
        return Fraction(_bareiss_det(rows)) / scale
    return _det_mod_p([list(M.row(i)) for i in range(M.rows)], M.field.p)


def rank(M: FieldMatrix) -> int:
    """Exact rank by row reduction."""
    if M.field.p is None:
        rows, _ = _integer_rows(M)
        p = None
    else:
        rows = [list(M.row(i)) for i in range(M.rows)]
        p = M.field.p
    r = 0
    for c in range(M.cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        for i in range(r + 1, len(rows)):
            ri = rows[i]
            if ri[c]:
                if p is None:
                    a, b = pr[c], ri[c]
                    g = math.gcd(a, b)
                    a, b = a // g, b // g
                    rows[i] = [a * x - b * y for x, y in zip(ri, pr)]
                else:
                    f = ri[c] * pow(pr[c], p - 2, p) % p
                    rows[i] = [(x - f * y) % p for x, y in zip(ri, pr)]
        r += 1
        if r == len(rows):
            break
    return r


def inertia(M: FieldMatrix) -> tuple[int, int, int]:
    """Return ``(n_plus, n_minus, n_zero)`` of a symmetric rational matrix.

    Uses symmetric Gaussian elimination (congruence), which preserves the
    signature by Sylvester's law of inertia.  When no diagonal pivot is
    available but an off-diagonal entry ``a_ij`` is nonzero, the congruence
    row/col_i += row/col_j creates the diagonal pivot ``2 a_ij``.
    """
    if M.field.p is not None:
        raise PreconditionError("inertia is only defined over the rationals")
    if not M.is_symmetric():
        raise DimensionError("inertia requires a symmetric matrix")
    a = [list(M.row(i)) for i in range(M.rows)]
    return _inertia_inplace(a)


def _inertia_inplace(a: list[list[Fraction]]) -> tuple[int, int, int]:
    n_total = len(a)
    pos = neg = 0
    while a:
        n = len(a)
        piv = next((i for i in range(n) if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # congruence by E = I + e_i e_j^T: row_i += row_j, then col_i += col_j
            for c in range(n):
                a[i][c] += a[j][c]
            for r in range(n):
                a[r][i] += a[r][j]
            piv = i
        if piv != 0:
            a[0], a[piv] = a[piv], a[0]
            for r in a:
                r[0], r[piv] = r[piv], r[0]
        d = a[0][0]
        if d > 0:
            pos += 1
        else:
            neg += 1
        col = [a[r][0] for r in range(1, n)]
        a = [[a[r][c] - col[r - 1] * col[c - 1] / d for c in range(1, n)]
             for r in range(1, n)]
    return pos, neg, n_total - pos - neg


def inertia_of_rows(rows: Sequence[Sequence]) -> tuple[int, int, int]:
    """Convenience wrapper: inertia of a symmetric matrix given as nested lists."""
    return inertia(FieldMatrix.from_rows(rows, QQ))
