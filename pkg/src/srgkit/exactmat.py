"""Exact dense linear algebra over the integers and rationals.

Every quantity here is an arbitrary-precision ``int`` or a
:class:`fractions.Fraction`; nothing is ever rounded.  Integer matrix
products fall back on numpy ``int64`` only when a bound on the result
proves the computation cannot overflow.

Two matrix types are provided:

* :class:`ExactMatrix` -- immutable rational matrix.
* :class:`BitMatrix` -- immutable 0/1 matrix backed by a ``uint8`` array,
  used for adjacency matrices and the B blocks of star-complement searches.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from .errors import Singular

__all__ = [
    "ExactMatrix",
    "BitMatrix",
    "det",
    "inverse",
    "gram",
    "psd_check",
    "cofactor_det",
]

# products of int64 blocks are only trusted below this magnitude
_INT64_SAFE = 1 << 62


def _norm(x):
    """Return ``x`` as an int when integral, otherwise as a reduced Fraction."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, Rational):
        f = Fraction(x)
        return f.numerator if f.denominator == 1 else f
    raise TypeError(f"exact entries must be rational, got {type(x).__name__}")


class ExactMatrix:
    """Immutable dense matrix of exact rationals.

    Entries are stored row-major as ``int`` (when integral) or ``Fraction``;
    fractions are always in lowest terms with positive denominator.
    """

    __slots__ = ("_rows", "_shape", "_hash")

    def __init__(self, rows: Iterable[Iterable], shape: tuple[int, int] | None = None):
        data = tuple(tuple(_norm(x) for x in row) for row in rows)
        if shape is None:
            ncols = len(data[0]) if data else 0
            shape = (len(data), ncols)
        if len(data) != shape[0] or any(len(r) != shape[1] for r in data):
            raise ValueError("ragged or mis-shaped matrix rows")
        self._rows = data
        self._shape = (int(shape[0]), int(shape[1]))
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> ExactMatrix:
        cols = rows if cols is None else cols
        return cls(((0,) * cols for _ in range(rows)), (rows, cols))

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls(((1 if i == j else 0 for j in range(n)) for i in range(n)), (n, n))

    @classmethod
    def ones(cls, rows: int, cols: int | None = None) -> ExactMatrix:
        cols = rows if cols is None else cols
        return cls(((1,) * cols for _ in range(rows)), (rows, cols))

    @classmethod
    def from_numpy(cls, arr) -> ExactMatrix:
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        if arr.dtype.kind not in "iub":
            raise TypeError("only integer arrays convert exactly")
        return cls(arr.tolist(), arr.shape)

    @classmethod
    def block(cls, blocks: Sequence[Sequence[ExactMatrix]]) -> ExactMatrix:
        """Assemble a matrix from a grid of blocks with conforming shapes."""
        rows = []
        for brow in blocks:
            h = brow[0].shape[0]
            if any(b.shape[0] != h for b in brow):
                raise ValueError("blocks in one block-row differ in height")
            for i in range(h):
                rows.append(tuple(x for b in brow for x in b._rows[i]))
        return cls(rows)

    # -- basic protocol ---------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self._shape

    @property
    def rows(self) -> tuple[tuple, ...]:
        return self._rows

    @property
    def is_square(self) -> bool:
        return self._shape[0] == self._shape[1]

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other):
        if isinstance(other, BitMatrix):
            other = other.to_exact()
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._shape == other._shape and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._shape, self._rows))
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._rows)
        return f"ExactMatrix([{body}])"

    def tolist(self) -> list[list]:
        return [list(r) for r in self._rows]

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for r in self._rows for x in r)

    def is_symmetric(self) -> bool:
        n, m = self._shape
        if n != m:
            return False
        rows = self._rows
        return all(rows[i][j] == rows[j][i] for i in range(n) for j in range(i + 1, n))

    def max_abs(self):
        return max((abs(x) for r in self._rows for x in r), default=0)

    def to_numpy(self) -> np.ndarray:
        """Return an ``int64`` array; only integral, in-range matrices convert."""
        if not self.is_integral():
            raise TypeError("matrix has non-integral entries")
        if self.max_abs() >= _INT64_SAFE:
            raise OverflowError("entries exceed the int64 range")
        return np.array(self._rows, dtype=np.int64).reshape(self._shape)

    # -- arithmetic -------------------------------------------------------

    def _check_same(self, other):
        if self._shape != other._shape:
            raise ValueError(f"shape mismatch {self._shape} vs {other._shape}")

    def __add__(self, other):
        other = _as_exact(other)
        if other is None:
            return NotImplemented
        self._check_same(other)
        return ExactMatrix(
            (a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)
        )

    def __sub__(self, other):
        other = _as_exact(other)
        if other is None:
            return NotImplemented
        self._check_same(other)
        return ExactMatrix(
            (a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)
        )

    def __neg__(self):
        return ExactMatrix(((-a for a in r) for r in self._rows), self._shape)

    def __mul__(self, scalar):
        if isinstance(scalar, (ExactMatrix, BitMatrix)):
            return NotImplemented
        s = _norm(scalar)
        return ExactMatrix(((a * s for a in r) for r in self._rows), self._shape)

    __rmul__ = __mul__

    def __matmul__(self, other):
        other = _as_exact(other)
        if other is None:
            return NotImplemented
        n, k = self._shape
        k2, m = other._shape
        if k != k2:
            raise ValueError(f"cannot multiply {self._shape} by {other._shape}")
        if self.is_integral() and other.is_integral():
            bound = self.max_abs() * other.max_abs() * max(k, 1)
            if bound < _INT64_SAFE:
                return ExactMatrix.from_numpy(self.to_numpy() @ other.to_numpy())
        cols = list(zip(*other._rows)) if m else []
        return ExactMatrix(
            ((sum(a * b for a, b in zip(r, c)) for c in cols) for r in self._rows),
            (n, m),
        )

    @property
    def T(self) -> ExactMatrix:
        n, m = self._shape
        return ExactMatrix(zip(*self._rows) if n else [], (m, n))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> ExactMatrix:
        return ExactMatrix(
            ((self._rows[i][j] for j in cols) for i in rows), (len(rows), len(cols))
        )

    def delete(self, index: int) -> ExactMatrix:
        """Drop row ``index`` and column ``index`` of a square matrix."""
        keep = [i for i in range(self._shape[0]) if i != index]
        return self.submatrix(keep, keep)


def _as_exact(x):
    if isinstance(x, ExactMatrix):
        return x
    if isinstance(x, BitMatrix):
        return x.to_exact()
    return None


class BitMatrix:
    """Immutable 0/1 matrix.

    Backed by a read-only ``uint8`` numpy array.  Rows are also available as
    Python ints (bit ``j`` of ``row_bits[i]`` is entry ``(i, j)``), which makes
    popcount-style dot products cheap.
    """

    __slots__ = ("_arr", "_row_bits")

    def __init__(self, data):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d 0/1 array")
        if arr.size and (arr.min() < 0 or arr.max() > 1):
            raise ValueError("BitMatrix entries must be 0 or 1")
        arr = arr.astype(np.uint8)
        arr.flags.writeable = False
        self._arr = arr
        self._row_bits = None

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> BitMatrix:
        """Build from rows written as bit strings, e.g. ``["101", "010"]``."""
        cleaned = [r.replace(" ", "") for r in rows]
        if any(set(r) - {"0", "1"} for r in cleaned):
            raise ValueError("bit strings may only contain 0 and 1")
        width = len(cleaned[0]) if cleaned else 0
        return cls(np.array([[int(ch) for ch in r] for r in cleaned], dtype=np.uint8).reshape(len(cleaned), width))

    @classmethod
    def from_exact(cls, m: ExactMatrix) -> BitMatrix:
        for i, row in enumerate(m.rows):
            for j, x in enumerate(row):
                if x != 0 and x != 1:
                    raise ValueError(f"entry ({i}, {j}) = {x} is not 0 or 1")
        return cls(np.array(m.rows, dtype=np.uint8).reshape(m.shape))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @property
    def shape(self) -> tuple[int, int]:
        return self._arr.shape

    @property
    def array(self) -> np.ndarray:
        return self._arr

    @property
    def row_bits(self) -> tuple[int, ...]:
        if self._row_bits is None:
            weights = [1 << j for j in range(self._arr.shape[1])]
            self._row_bits = tuple(
                sum(w for w, b in zip(weights, row) if b) for row in self._arr.tolist()
            )
        return self._row_bits

    def __getitem__(self, idx):
        return int(self._arr[idx])

    def __eq__(self, other):
        if isinstance(other, ExactMatrix):
            return self.to_exact() == other
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._arr, other._arr))

    def __hash__(self):
        return hash((self.shape, self._arr.tobytes()))

    def __repr__(self):
        return "BitMatrix(" + repr(self.to_strings()) + ")"

    @property
    def T(self) -> BitMatrix:
        return BitMatrix(self._arr.T)

    def to_exact(self) -> ExactMatrix:
        return ExactMatrix(self._arr.tolist(), self.shape)

    def to_strings(self) -> list[str]:
        return ["".join(str(b) for b in row) for row in self._arr.tolist()]

    def row_sums(self) -> list[int]:
        return [int(x) for x in self._arr.sum(axis=1)]

    def col_sums(self) -> list[int]:
        return [int(x) for x in self._arr.sum(axis=0)]

    def sort_columns(self) -> BitMatrix:
        """Columns rearranged into nonincreasing lexicographic order (top row most significant)."""
        cols = sorted((tuple(c) for c in self._arr.T.tolist()), reverse=True)
        if not cols:
            return self
        return BitMatrix(np.array(cols, dtype=np.uint8).T)


# -- kernels --------------------------------------------------------------


def _integer_rows(M: ExactMatrix) -> tuple[list[list[int]], int]:
    """Scale each row to integers; return (rows, product of scale factors)."""
    rows = []
    scale = 1
    for r in M.rows:
        d = lcm(*(x.denominator for x in r if isinstance(x, Fraction))) if any(
            isinstance(x, Fraction) for x in r
        ) else 1
        rows.append([int(x * d) for x in r])
        scale *= d
    return rows, scale


def det(M: ExactMatrix):
    """Exact determinant by fraction-free (Bareiss) elimination.

    Rational matrices are first scaled row-wise to integers; the result is
    returned as an ``int`` when integral, otherwise as a ``Fraction``.

    >>> det(ExactMatrix.identity(5))
    1
    """
    if not M.is_square:
        raise ValueError(f"determinant of non-square {M.shape} matrix")
    n = M.shape[0]
    if n == 0:
        return 1
    a, scale = _integer_rows(M)
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
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (akk * rowi[j] - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return _norm(Fraction(sign * a[n - 1][n - 1], scale))


def inverse(M: ExactMatrix) -> ExactMatrix:
    """Exact inverse via Gauss-Jordan elimination on ``[M | I]``.

    Raises :class:`~srgkit.errors.Singular` if ``M`` has no inverse.
    """
    if not M.is_square:
        raise ValueError(f"inverse of non-square {M.shape} matrix")
    n = M.shape[0]
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(M.rows)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise Singular(f"matrix is singular (no pivot in column {col})")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        prow = aug[col]
        inv_p = 1 / prow[col]
        if inv_p != 1:
            prow[:] = [x * inv_p for x in prow]
        for r in range(n):
            if r != col:
                f = aug[r][col]
                if f:
                    row = aug[r]
                    row[:] = [x - f * y for x, y in zip(row, prow)]
    return ExactMatrix((row[n:] for row in aug), (n, n))


def gram(B: BitMatrix) -> ExactMatrix:
    """Return ``B @ B.T`` as an exact integer matrix."""
    arr = B.array.astype(np.int64)
    return ExactMatrix.from_numpy(arr @ arr.T)


def psd_check(M: ExactMatrix) -> bool:
    """Decide positive semi-definiteness exactly.

    Symmetric elimination without pivoting: a negative pivot, or a zero pivot
    whose remaining row is nonzero, certifies an indefinite matrix.
    """
    if not M.is_symmetric():
        raise ValueError("psd_check requires a symmetric matrix")
    n = M.shape[0]
    a = [[Fraction(x) for x in row] for row in M.rows]
    for k in range(n):
        p = a[k][k]
        if p < 0:
            return False
        if p == 0:
            if any(a[k][j] != 0 for j in range(k + 1, n)):
                return False
            continue
        rowk = a[k]
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                rowi = a[i]
                for j in range(k + 1, n):
                    rowi[j] -= f * rowk[j]
    return True


def cofactor_det(M: ExactMatrix):
    """Determinant by Laplace expansion along the first row.

    Exponential time; kept as an independent check on :func:`det` for
    small matrices.
    """
    if not M.is_square:
        raise ValueError("determinant of non-square matrix")

    def rec(rows):
        if not rows:
            return 1
        if len(rows) == 1:
            return rows[0][0]
        total = 0
        for j, x in enumerate(rows[0]):
            if x:
                minor = [r[:j] + r[j + 1:] for r in rows[1:]]
                total += (-1) ** j * x * rec(minor)
        return total

    return _norm(rec([list(r) for r in M.rows]))
