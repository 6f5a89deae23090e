"""Exact integer matrices: products, determinants, characteristic
polynomials, and Smith normal form with unimodular transforms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotSquareError


class IntegerMatrix:
    """Immutable matrix of arbitrary-precision integers."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(int(x) for x in r) for r in entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        self.rows = len(rows)
        self.cols = width
        self.entries = rows

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r, c):
        return cls([[0] * c for _ in range(r)])

    def is_square(self):
        return self.rows == self.cols

    def __eq__(self, other):
        return isinstance(other, IntegerMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"IntegerMatrix({[list(r) for r in self.entries]})"

    def __add__(self, other):
        self._shape_check(other)
        return IntegerMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other):
        self._shape_check(other)
        return IntegerMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __neg__(self):
        return IntegerMatrix([[-a for a in r] for r in self.entries])

    def scaled(self, c):
        return IntegerMatrix([[a * c for a in r] for r in self.entries])

    def __mul__(self, other):
        if self.cols != other.rows:
            raise ValueError("inner dimensions differ")
        cols = list(zip(*other.entries))
        return IntegerMatrix(
            [
                [sum(a * b for a, b in zip(row, col)) for col in cols]
                for row in self.entries
            ]
        )

    def apply(self, vec):
        """Matrix times a coordinate vector, as a tuple."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.entries)

    def transpose(self):
        return IntegerMatrix(list(zip(*self.entries)))

    def _shape_check(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def det(self):
        """Exact determinant by fraction-free Bareiss elimination."""
        if not self.is_square():
            raise NotSquareError("determinant of a non-square matrix")
        n = self.rows
        a = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


def char_poly(m: IntegerMatrix):
    """det(xI - M) as an integer polynomial, by the Faddeev-LeVerrier
    recurrence; every division it performs is exact."""
    if not m.is_square():
        raise NotSquareError("characteristic polynomial of a non-square matrix")
    n = m.rows
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = IntegerMatrix.identity(n)
    for k in range(1, n + 1):
        am = m * mk
        tr = sum(am.entries[i][i] for i in range(n))
        if tr % k != 0:
            raise AssertionError("Faddeev-LeVerrier trace not divisible")
        ck = -(tr // k)
        coeffs[n - k] = ck
        if k < n:
            mk = am + IntegerMatrix.identity(n).scaled(ck)
    return tuple(coeffs)


@dataclass(frozen=True)
class SNFDecomposition:
    """U * M * V = D with U, V unimodular and D = diag(d1 | d2 | ... )."""

    U: IntegerMatrix
    D: IntegerMatrix
    V: IntegerMatrix

    def diagonal(self):
        return tuple(self.D.entries[i][i] for i in range(self.D.rows))


def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap_cols(a, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]


def _addmul_row(a, dst, src, c):
    a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]


def _addmul_col(a, dst, src, c):
    for row in a:
        row[dst] += c * row[src]


def _negate_row(a, i):
    a[i] = [-x for x in a[i]]


def smith_normal_form(m: IntegerMatrix) -> SNFDecomposition:
    """Smith normal form with tracked unimodular transforms.

    Pivoting is canonical (smallest nonzero absolute value, ties broken by
    lowest row then column index) so the output is deterministic.
    """
    if not m.is_square():
        raise NotSquareError("Smith normal form of a non-square matrix")
    n = m.rows
    a = [list(r) for r in m.entries]
    u = [list(r) for r in IntegerMatrix.identity(n).entries]
    v = [list(r) for r in IntegerMatrix.identity(n).entries]

    for s in range(n):
        while True:
            pivot = None
            best = None
            for i in range(s, n):
                for j in range(s, n):
                    e = abs(a[i][j])
                    if e != 0 and (best is None or e < best):
                        best = e
                        pivot = (i, j)
            if pivot is None:
                break
            pi, pj = pivot
            if pi != s:
                _swap_rows(a, s, pi)
                _swap_rows(u, s, pi)
            if pj != s:
                _swap_cols(a, s, pj)
                _swap_cols(v, s, pj)
            if a[s][s] < 0:
                _negate_row(a, s)
                _negate_row(u, s)
            dirty = False
            for i in range(s + 1, n):
                if a[i][s] != 0:
                    q = a[i][s] // a[s][s]
                    _addmul_row(a, i, s, -q)
                    _addmul_row(u, i, s, -q)
                    if a[i][s] != 0:
                        dirty = True
            for j in range(s + 1, n):
                if a[s][j] != 0:
                    q = a[s][j] // a[s][s]
                    _addmul_col(a, j, s, -q)
                    _addmul_col(v, j, s, -q)
                    if a[s][j] != 0:
                        dirty = True
            if dirty:
                continue
            bad = None
            for i in range(s + 1, n):
                for j in range(s + 1, n):
                    if a[i][j] % a[s][s] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            _addmul_row(a, s, bad, 1)
            _addmul_row(u, s, bad, 1)
        if a[s][s] == 0:
            break
    d = [[a[i][j] if i == j else 0 for j in range(n)] for i in range(n)]
    return SNFDecomposition(IntegerMatrix(u), IntegerMatrix(d), IntegerMatrix(v))


def solve_fraction(m: IntegerMatrix, rhs):
    """Solve M x = rhs exactly over Q; returns a tuple of Fractions or None
    when the system has no solution (singular M included)."""
    if not m.is_square():
        raise NotSquareError("solve expects a square matrix")
    n = m.rows
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(m.entries)]
    pivots = []
    for col in range(n):
        piv = None
        for i in range(len(pivots), n):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        r = len(pivots)
        a[r], a[piv] = a[piv], a[r]
        f = a[r][col]
        a[r] = [x / f for x in a[r]]
        for i in range(n):
            if i != r and a[i][col] != 0:
                g = a[i][col]
                a[i] = [x - g * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
    for i in range(len(pivots), n):
        if a[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        x[col] = a[r][n]
    return tuple(x)


def inverse_unimodular(m: IntegerMatrix) -> IntegerMatrix:
    """Exact integer inverse of a matrix with determinant +-1."""
    n = m.rows
    cols = []
    for j in range(n):
        e = [1 if i == j else 0 for i in range(n)]
        x = solve_fraction(m, e)
        if x is None:
            raise ValueError("matrix is singular")
        if any(f.denominator != 1 for f in x):
            raise ValueError("matrix is not unimodular")
        cols.append([f.numerator for f in x])
    return IntegerMatrix(list(zip(*cols)))
