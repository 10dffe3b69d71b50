"""Exact matrix arithmetic over Q, Z and Z/pZ.

Rationals are :class:`fractions.Fraction`, which is always kept in lowest
terms with a positive denominator.  Nothing in this module touches floats.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import DimensionMismatch, NotInvertible

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*-?\d+(/\d+)?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"a/b"`` or ``"a"`` (optional leading minus) into a Fraction.

    Plain ints are accepted too, since JSON inputs sometimes carry them.
    """
    if isinstance(text, bool):
        raise ValueError(f"not a rational literal: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class _SquareMatrix:
    """Immutable square matrix; subclasses fix the entry ring."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows):
        rows = tuple(tuple(self._coerce(x) for x in row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise DimensionMismatch("matrix must be square and nonempty")
        self.rows = rows
        self._hash = None

    def _coerce(self, x):
        raise NotImplementedError

    def _new(self, rows):
        return type(self)(rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _key(self):
        return self.rows

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self._key()))
        return self._hash

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.n != self.n:
            raise DimensionMismatch(f"dimensions {self.n} and {other.n} differ")

    def __mul__(self, other):
        self._check(other)
        cols = tuple(zip(*other.rows))
        return self._new(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows]
        )

    def __add__(self, other):
        self._check(other)
        return self._new([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        return self._new([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return self._new([[-a for a in row] for row in self.rows])

    def scale(self, c):
        return self._new([[c * a for a in row] for row in self.rows])

    def apply(self, v):
        """Matrix-vector product ``M @ v``."""
        if len(v) != self.n:
            raise DimensionMismatch("vector length does not match matrix")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.rows)

    def transpose(self):
        return self._new(list(zip(*self.rows)))

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def columns(self):
        return list(zip(*self.rows))

    def is_zero(self) -> bool:
        return all(a == 0 for row in self.rows for a in row)

    def flat(self):
        return tuple(a for row in self.rows for a in row)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(map(str, row)) + "]" for row in self.rows)
        return f"{type(self).__name__}([{body}])"


class QMatrix(_SquareMatrix):
    """Square matrix over the rationals."""

    __slots__ = ()

    def _coerce(self, x):
        if isinstance(x, str):
            return parse_rational(x)
        if isinstance(x, float):
            raise TypeError("floats are not exact; pass a Fraction or string")
        return Fraction(x)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n):
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def unit(cls, n, i, j):
        """Matrix unit with a single 1 at (i, j), zero-based."""
        return cls([[int((r, c) == (i, j)) for c in range(n)] for r in range(n)])

    @classmethod
    def from_columns(cls, columns):
        return cls(list(zip(*columns)))

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for row in self.rows for a in row)

    def to_z(self) -> ZMatrix:
        return ZMatrix(self.rows)

    def det(self) -> Fraction:
        d = lcm(*(a.denominator for row in self.rows for a in row))
        return Fraction(bareiss_det([[int(a * d) for a in row] for row in self.rows]), d**self.n)

    def inverse(self) -> QMatrix:
        n = self.n
        aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(self.rows)]
        red, pivots = rref(aug)
        if pivots[:n] != list(range(n)):
            raise NotInvertible("matrix is singular")
        return QMatrix([row[n:] for row in red[:n]])


class ZMatrix(_SquareMatrix):
    """Square matrix over the integers (arbitrary precision)."""

    __slots__ = ()

    def _coerce(self, x):
        if isinstance(x, int) and not isinstance(x, bool):
            return x
        if isinstance(x, str):
            x = parse_rational(x)
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        raise ValueError(f"non-integer entry {x!r}")

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns):
        return cls(list(zip(*columns)))

    def to_q(self) -> QMatrix:
        return QMatrix(self.rows)

    def det(self) -> int:
        return bareiss_det(self.rows)

    def submatrix(self, r) -> ZMatrix:
        """Top-left ``r x r`` block."""
        return ZMatrix([row[:r] for row in self.rows[:r]])


class FpMatrix(_SquareMatrix):
    """Square matrix over Z/pZ with entries kept in ``[0, p)``."""

    __slots__ = ("p",)

    def __init__(self, rows, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        super().__init__(rows)

    def _coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"non-integer entry {x!r}")
            x = x.numerator
        return x % self.p

    def _new(self, rows):
        return FpMatrix(rows, self.p)

    def _key(self):
        return (self.p, self.rows)

    def _check(self, other):
        super()._check(other)
        if other.p != self.p:
            raise ValueError("moduli differ")

    @classmethod
    def identity(cls, n, p):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], p)


def bareiss_det(rows) -> int:
    """Integer determinant by fraction-free elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def rref(rows):
    """Reduced row echelon form over Q.  Returns ``(rows, pivot_columns)``."""
    m = [[Fraction(a) for a in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [a / piv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols=None):
    """Basis of ``{x : A x = 0}`` for a rational matrix given by rows."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def solve_linear(A, b):
    """Exact solution ``c`` of ``A c = b`` for an m x k rational matrix, or None.

    Free variables are set to zero, so the answer is deterministic.
    """
    A = [list(row) for row in A]
    if len(A) != len(b):
        raise DimensionMismatch("row count of A does not match length of b")
    if not A:
        return []
    k = len(A[0])
    aug = [row + [Fraction(bi)] for row, bi in zip(A, b)]
    red, pivots = rref(aug)
    if k in pivots:
        return None
    c = [Fraction(0)] * k
    for row, pc in zip(red, pivots):
        c[pc] = row[k]
    return c


class EchelonBasis:
    """Incrementally grown subspace of Q^d with exact membership tests."""

    def __init__(self, dim):
        self.dim = dim
        self._rows = {}  # pivot column -> reduced row with 1 at pivot
        self.vectors = []  # the independent vectors as they were added

    def __len__(self):
        return len(self.vectors)

    def reduce(self, v):
        v = [Fraction(a) for a in v]
        for c, row in self._rows.items():
            if v[c] != 0:
                f = v[c]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def __contains__(self, v):
        return not any(self.reduce(v))

    def add(self, v) -> bool:
        """Add ``v``; return True iff it enlarged the span."""
        if len(v) != self.dim:
            raise DimensionMismatch("vector has wrong length")
        w = self.reduce(v)
        c = next((i for i, a in enumerate(w) if a != 0), None)
        if c is None:
            return False
        piv = w[c]
        w = [a / piv for a in w]
        for pc, row in self._rows.items():
            if row[c] != 0:
                f = row[c]
                self._rows[pc] = [a - f * b for a, b in zip(row, w)]
        self._rows[c] = w
        self.vectors.append(tuple(Fraction(a) for a in v))
        return True


def mod_p_reduce(M: ZMatrix, p: int) -> FpMatrix:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return FpMatrix(M.rows, p)


def is_unimodular(U: ZMatrix) -> bool:
    return abs(U.det()) == 1


@dataclass(frozen=True)
class Lattice:
    """Integer lattice in Z^n stored by its column Hermite normal form.

    Each basis column's pivot is its lowest nonzero entry; pivot rows strictly
    increase along the basis, pivots are positive, and every entry to the
    right of a pivot lies in ``[0, pivot)``.
    """

    n: int
    basis: tuple

    @property
    def rank(self) -> int:
        return len(self.basis)

    def pivot_rows(self):
        return [max(i for i, a in enumerate(col) if a != 0) for col in self.basis]

    def coordinates(self, v):
        """Integer coordinates of ``v`` in the basis, or None if ``v`` is not in the lattice."""
        v = list(v)
        coords = [0] * self.rank
        prows = self.pivot_rows()
        for k in reversed(range(self.rank)):
            col = self.basis[k]
            i = prows[k]
            if v[i] % col[i]:
                return None
            q = v[i] // col[i]
            coords[k] = q
            v = [a - q * b for a, b in zip(v, col)]
        if any(v):
            return None
        return coords

    def __contains__(self, v):
        return self.coordinates(v) is not None

    def index(self) -> int:
        """Index in Z^n; only meaningful for full-rank lattices."""
        if self.rank != self.n:
            raise ValueError("lattice is not of full rank")
        out = 1
        for col, i in zip(self.basis, self.pivot_rows()):
            out *= col[i]
        return out


def _xgcd(a, b):
    x, nx, y, ny = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
    if a < 0:
        a, x, y = -a, -x, -y
    return a, x, y


def hnf_column(vectors) -> Lattice:
    """Column Hermite normal form of the integer span of ``vectors``."""
    vectors = [list(map(int, v)) for v in vectors]
    if not vectors:
        raise ValueError("need at least one vector")
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise DimensionMismatch("vectors differ in length")

    active = [v for v in vectors if any(v)]
    pivots = []  # (row, column)
    for i in reversed(range(n)):
        live = [v for v in active if v[i] != 0]
        if not live:
            continue
        rest = [v for v in active if v[i] == 0]
        acc = live[0]
        for v in live[1:]:
            g, x, y = _xgcd(acc[i], v[i])
            a, b = acc[i] // g, v[i] // g
            new_acc = [x * s + y * t for s, t in zip(acc, v)]
            other = [b * s - a * t for s, t in zip(acc, v)]
            acc = new_acc
            if any(other):
                rest.append(other)
        if acc[i] < 0:
            acc = [-a for a in acc]
        pivots.append((i, acc))
        active = [v for v in rest if any(v)]

    pivots.sort(key=lambda t: t[0])
    cols = [c for _, c in pivots]
    rows_ = [i for i, _ in pivots]
    for j in range(len(cols)):
        for k in reversed(range(j)):
            i = rows_[k]
            q = cols[j][i] // cols[k][i]
            if q:
                cols[j] = [a - q * b for a, b in zip(cols[j], cols[k])]
    return Lattice(n=n, basis=tuple(tuple(c) for c in cols))


def common_denominator(matrices) -> int:
    return lcm(1, *(a.denominator for m in matrices for row in m.rows for a in row))


__all__ = [
    "Rational",
    "QMatrix",
    "ZMatrix",
    "FpMatrix",
    "Lattice",
    "EchelonBasis",
    "parse_rational",
    "format_rational",
    "is_prime",
    "bareiss_det",
    "rref",
    "rank",
    "nullspace",
    "solve_linear",
    "mod_p_reduce",
    "is_unimodular",
    "hnf_column",
    "common_denominator",
]
