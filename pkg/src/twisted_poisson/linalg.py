"""Exact rational linear algebra on plain Python lists of Fractions.

Vectors are ``list[Fraction]``; dense matrices are ``list[list[Fraction]]``
in row-major order.  :class:`SparseMatrix` stores generator actions, which
are overwhelmingly sparse.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Q = Fraction
Vector = list
Matrix = list

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def fraction_str(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def zeros(rows: int, cols: int) -> Matrix:
    return [[ZERO] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = ONE
    return out


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)] if m else []


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col) if x and y), ZERO) for col in bt] for row in a]


def matvec(m: Matrix, v: Sequence[Fraction]) -> Vector:
    return [sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in m]


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(u, v) if x and y), ZERO)


def is_zero_vector(v: Iterable[Fraction]) -> bool:
    return not any(v)


def determinant(m: Matrix) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    a = [list(map(Fraction, row)) for row in m]
    n = len(a)
    det = ONE
    for c in range(n):
        pivot = next((r for r in range(c, n) if a[r][c]), None)
        if pivot is None:
            return ZERO
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        det *= a[c][c]
        inv = ONE / a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                factor = a[r][c] * inv
                a[r] = [x - factor * y for x, y in zip(a[r], a[c])]
    return det


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(map(Fraction, row)) + identity(n)[i] for i, row in enumerate(m)]
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in reduced[:n]]


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; zero rows are dropped."""
    a = [list(map(Fraction, row)) for row in m]
    if not a:
        return [], []
    cols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(a)) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = ONE / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                factor = a[i][c]
                a[i] = [x - factor * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix, cols: int | None = None) -> Matrix:
    """Basis (as rows) of {x : m x = 0}."""
    if cols is None:
        cols = len(m[0]) if m else 0
    reduced, pivots = rref(m) if m else ([], [])
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [ZERO] * cols
        x[f] = ONE
        for row, p in zip(reduced, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def solve(a: Matrix, b: Sequence[Fraction]) -> Vector | None:
    """One exact solution x of a x = b, or None when inconsistent."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [list(a[i]) + [Fraction(b[i])] for i in range(rows)]
    reduced, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [ZERO] * cols
    for row, p in zip(reduced, pivots):
        x[p] = row[cols]
    return x


class Echelon:
    """Incrementally grown subspace basis with coordinate recovery.

    ``add`` keeps the original vectors as the basis and records how each
    echelon row decomposes in terms of them, so ``coordinates`` expresses
    any vector of the span in the original basis.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.basis: list[Vector] = []
        self._rows: list[tuple[int, Vector, dict[int, Fraction]]] = []
        self.last_pivot: int | None = None

    def __len__(self) -> int:
        return len(self.basis)

    def _reduce(self, v: Sequence[Fraction]) -> tuple[Vector, dict[int, Fraction]]:
        residual = list(v)
        combo: dict[int, Fraction] = {}
        for pivot, row, row_combo in self._rows:
            c = residual[pivot]
            if not c:
                continue
            residual = [x - c * y if y else x for x, y in zip(residual, row)]
            for k, val in row_combo.items():
                combo[k] = combo.get(k, ZERO) + c * val
        return residual, combo

    def contains(self, v: Sequence[Fraction]) -> bool:
        return not any(self._reduce(v)[0])

    def add(self, v: Sequence[Fraction]) -> bool:
        """Append v to the basis when independent; return whether it was new."""
        residual, combo = self._reduce(v)
        pivot = next((i for i, x in enumerate(residual) if x), None)
        self.last_pivot = pivot
        if pivot is None:
            return False
        k = len(self.basis)
        self.basis.append(list(v))
        inv = ONE / residual[pivot]
        row = [x * inv for x in residual]
        row_combo = {j: -c * inv for j, c in combo.items() if c}
        row_combo[k] = inv
        self._rows.append((pivot, row, row_combo))
        return True

    def coordinates(self, v: Sequence[Fraction]) -> Vector | None:
        """Coefficients of v in ``self.basis``; None when v is outside the span."""
        residual, combo = self._reduce(v)
        if any(residual):
            return None
        out = [ZERO] * len(self.basis)
        for k, c in combo.items():
            out[k] = c
        return out


class SparseMatrix:
    """Square or rectangular matrix stored column-wise as ``[(row, value), ...]``."""

    __slots__ = ("rows", "cols", "columns", "_row_lists")

    def __init__(self, rows: int, cols: int, columns: list[list[tuple[int, Fraction]]] | None = None):
        self.rows = rows
        self.cols = cols
        self.columns = columns if columns is not None else [[] for _ in range(cols)]
        self._row_lists = None

    @property
    def row_lists(self) -> list[list[tuple[int, Fraction]]]:
        """Row-wise view: ``row_lists[i] = [(col, value), ...]``."""
        if self._row_lists is None:
            rows: list[list[tuple[int, Fraction]]] = [[] for _ in range(self.rows)]
            for j, col in enumerate(self.columns):
                for i, val in col:
                    rows[i].append((j, val))
            self._row_lists = rows
        return self._row_lists

    @classmethod
    def from_dense(cls, m: Matrix) -> "SparseMatrix":
        rows = len(m)
        cols = len(m[0]) if rows else 0
        columns = [[(i, Fraction(m[i][j])) for i in range(rows) if m[i][j]] for j in range(cols)]
        return cls(rows, cols, columns)

    @classmethod
    def diagonal(cls, entries: Sequence[Fraction]) -> "SparseMatrix":
        n = len(entries)
        return cls(n, n, [[(j, Fraction(e))] if e else [] for j, e in enumerate(entries)])

    def to_dense(self) -> Matrix:
        out = zeros(self.rows, self.cols)
        for j, col in enumerate(self.columns):
            for i, val in col:
                out[i][j] = val
        return out

    def entry(self, i: int, j: int) -> Fraction:
        for r, val in self.columns[j]:
            if r == i:
                return val
        return ZERO

    def apply(self, v: Sequence[Fraction]) -> Vector:
        out = [ZERO] * self.rows
        for j, x in enumerate(v):
            if x:
                for i, val in self.columns[j]:
                    out[i] += val * x
        return out

    def apply_transpose(self, f: Sequence[Fraction]) -> Vector:
        """Row vector f times the matrix, i.e. the functional y -> f(M y)."""
        return [sum((val * f[i] for i, val in col if f[i]), ZERO) for col in self.columns]

    def is_zero(self) -> bool:
        return not any(self.columns)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.to_dense() == other.to_dense()

    def __hash__(self):
        raise TypeError("SparseMatrix is unhashable")
