"""Exact dense matrices over Q(i) with Gaussian elimination."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import GaussianRational, parse_scalar, scalar_to_json, simplify

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _coerce(x):
    if isinstance(x, GaussianRational):
        return simplify(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"unsupported matrix entry {x!r}")


class ExactMatrix:
    """Immutable rows x cols matrix with Fraction / GaussianRational entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, entries: Iterable[Sequence], cols: int | None = None):
        data = tuple(tuple(_coerce(x) for x in row) for row in entries)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged matrix rows")
            if cols is not None and cols != width:
                raise ValueError("column count mismatch")
        else:
            width = cols or 0
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "_data", data)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int) -> ExactMatrix:
        return cls([[_ZERO] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls([[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def diag(cls, values: Sequence) -> ExactMatrix:
        n = len(values)
        return cls([[values[i] if i == j else _ZERO for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> ExactMatrix:
        if not columns:
            return cls.zeros(rows, 0)
        return cls([[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    @classmethod
    def blocks(cls, grid: Sequence[Sequence[ExactMatrix]]) -> ExactMatrix:
        """Assemble a block matrix from a grid of equally aligned blocks."""
        out = []
        for brow in grid:
            h = brow[0].rows
            for i in range(h):
                line = []
                for b in brow:
                    if b.rows != h:
                        raise ValueError("block rows misaligned")
                    line.extend(b._data[i])
                out.append(line)
        width = sum(b.cols for b in grid[0]) if grid else 0
        return cls(out, cols=width)

    # -- access -----------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(not x for r in self._data for x in r)

    def is_real(self) -> bool:
        return not any(isinstance(x, GaussianRational) for r in self._data for x in r)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> ExactMatrix:
        return ExactMatrix([[self._data[i][j] for j in cols] for i in rows], cols=len(cols))

    # -- arithmetic -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return ExactMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            cols=self.cols,
        )

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix([[-a for a in r] for r in self._data], cols=self.cols)

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return self + (-other)

    def scale(self, c) -> ExactMatrix:
        c = _coerce(c)
        return ExactMatrix([[c * a for a in r] for r in self._data], cols=self.cols)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols_b = [other.column(j) for j in range(other.cols)]
        out = []
        for r in self._data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum((a * cb[k] for k, a in nz), _ZERO) for cb in cols_b])
        return ExactMatrix(out, cols=other.cols)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), _ZERO) for r in self._data)

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(
            [list(self.column(j)) for j in range(self.cols)], cols=self.rows
        )

    T = property(transpose)

    def __repr__(self):
        return f"ExactMatrix({[[str(x) for x in r] for r in self._data]})"

    # -- serialisation ----------------------------------------------------
    def to_json(self) -> list:
        return [[scalar_to_json(x) for x in r] for r in self._data]

    @classmethod
    def from_json(cls, obj) -> ExactMatrix:
        if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
            raise ValueError("matrix must be a list of rows")
        return cls([[parse_scalar(x) for x in r] for r in obj])


def _rref(m: ExactMatrix):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    a = [list(r) for r in m.tolist()]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        p = next((i for i in range(r, m.rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c] if isinstance(a[r][c], GaussianRational) else _ONE / a[r][c]
        a[r] = [simplify(x * inv) if x else _ZERO for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c]:
                f = a[i][c]
                ar = a[r]
                a[i] = [simplify(x - f * y) if y else x for x, y in zip(a[i], ar)]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a, pivots


def mat_rank(m: ExactMatrix) -> int:
    """Rank over Q(i)."""
    return len(_rref(m)[1])


def pivot_columns(m: ExactMatrix) -> list[int]:
    """Greedy pivot columns in basis order: the first maximal independent set of columns."""
    return _rref(m)[1]


def mat_kernel(m: ExactMatrix) -> list[tuple]:
    """Basis of the null space, one vector per free column (empty iff injective)."""
    a, pivots = _rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [_ZERO] * m.cols
        v[f] = _ONE
        for i, pc in enumerate(pivots):
            v[pc] = simplify(-a[i][f])
        basis.append(tuple(v))
    return basis


def mat_det(m: ExactMatrix):
    """Exact determinant by fraction-preserving elimination."""
    if not m.is_square():
        raise ValueError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    a = [list(r) for r in m.tolist()]
    det = _ONE
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return _ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        piv = a[c][c]
        det = simplify(det * piv)
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / piv
                a[i] = [simplify(x - f * y) if y else x for x, y in zip(a[i], a[c])]
    return det


def mat_inverse(m: ExactMatrix) -> ExactMatrix:
    if not m.is_square():
        raise ValueError("inverse of non-square matrix")
    n = m.rows
    aug = ExactMatrix([list(r) + [(_ONE if i == j else _ZERO) for j in range(n)]
                       for i, r in enumerate(m.tolist())], cols=2 * n)
    a, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return ExactMatrix([row[n:] for row in a], cols=n)


def solve(m: ExactMatrix, b: Sequence):
    """One solution x of m x = b, or None if inconsistent."""
    aug = ExactMatrix([list(r) + [bi] for r, bi in zip(m.tolist(), b)], cols=m.cols + 1)
    a, pivots = _rref(aug)
    if m.cols in pivots:
        return None
    x = [_ZERO] * m.cols
    for i, pc in enumerate(pivots):
        x[pc] = a[i][m.cols]
    return tuple(x)


def charpoly_coeffs(m: ExactMatrix) -> list:
    """Coefficients e_0..e_n with det(I + t m) = sum e_k t^k (Faddeev-LeVerrier)."""
    if not m.is_square():
        raise ValueError("characteristic polynomial of non-square matrix")
    n = m.rows
    # det(x I - m) = x^n + c_1 x^{n-1} + ... + c_n ;  e_k = (-1)^k c_k
    c = [_ONE]
    mk = ExactMatrix.zeros(n, n)
    ident = ExactMatrix.identity(n)
    for k in range(1, n + 1):
        mk = m @ (mk + ident.scale(c[-1]))
        tr = sum((mk[i, i] for i in range(n)), _ZERO)
        c.append(simplify(-tr / k))
    return [simplify(((-1) ** k) * ck) for k, ck in enumerate(c)]
