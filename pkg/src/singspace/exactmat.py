"""Dense matrices over a prime field and exact elimination.

Operators act on column vectors: an n x p matrix maps F^p to F^n.  The
canonical vectorization of a matrix is row-major (rows concatenated), and
every subspace canonical form in :mod:`singspace.spaces` is built on it.

Row indices and column indices are 0-based in code.  ``matrix_unit`` keeps
the 1-based ``E_{i,j}`` convention because that is how it is read.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .gf import as_field



class Matrix:
    """Immutable dense matrix with entries reduced modulo ``field.q``."""

    __slots__ = ("_a", "field")

    def __init__(self, entries, field, shape=None):
        field = as_field(field)
        a = np.array(entries, dtype=np.int64)
        if shape is not None:
            a = a.reshape(shape)
        if a.ndim != 2:
            raise ValueError(f"matrix entries must be 2-dimensional, got ndim={a.ndim}")
        a %= field.q
        a.setflags(write=False)
        self._a = a
        self.field = field

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field) -> "Matrix":
        return cls(np.zeros((nrows, ncols), dtype=np.int64), field)

    @classmethod
    def identity(cls, n: int, field) -> "Matrix":
        return cls(np.eye(n, dtype=np.int64), field)

    @classmethod
    def from_vec(cls, vec: Sequence[int], nrows: int, ncols: int, field) -> "Matrix":
        return cls(np.asarray(vec, dtype=np.int64).reshape(nrows, ncols), field)

    @property
    def nrows(self) -> int:
        return self._a.shape[0]

    @property
    def ncols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._a

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self._a.ravel())

    def vec(self) -> tuple[int, ...]:
        return self.entries

    def rows(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in r) for r in self._a]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self._a[:, j])

    def is_zero(self) -> bool:
        return not self._a.any()

    @property
    def T(self) -> "Matrix":
        return Matrix(self._a.T, self.field)

    def __getitem__(self, idx):
        return int(self._a[idx])

    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        if other.shape != self.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        return Matrix(self._a + other._a, self.field)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        if other.shape != self.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        return Matrix(self._a - other._a, self.field)

    def __neg__(self):
        return Matrix(-self._a, self.field)

    def __rmul__(self, scalar: int):
        if not isinstance(scalar, (int, np.integer)):
            return NotImplemented
        return Matrix(self._a * (int(scalar) % self.q), self.field)

    __mul__ = __rmul__

    def __matmul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix((self._a @ other._a) % self.q, self.field)

    def apply(self, x: Sequence[int]) -> tuple[int, ...]:
        """Image of the column vector ``x``."""
        x = np.asarray(x, dtype=np.int64)
        if x.shape != (self.ncols,):
            raise ValueError(f"vector of length {self.ncols} expected, got {x.shape}")
        return tuple(int(v) for v in (self._a @ x) % self.q)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self._a, other._a))
        )

    def __hash__(self):
        return hash((self.q, self.shape, self._a.tobytes()))

    def __str__(self):
        return format_matrix(self)

    def __repr__(self):
        return f"Matrix('{format_matrix(self)}', q={self.q}, shape={self.shape})"


# --- elimination ---------------------------------------------------------


def pack_rows(a: np.ndarray) -> list[int]:
    """Pack 0/1 rows into ints; column 0 is the most significant bit."""
    ncols = a.shape[1]
    weights = [1 << (ncols - 1 - j) for j in range(ncols)]
    return [sum(w for w, x in zip(weights, row) if x) for row in a.tolist()]


def gf2_rank_packed(rows: Iterable[int]) -> int:
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
    return len(basis)


def _rref_gf2(a: np.ndarray) -> tuple[np.ndarray, tuple[int, ...]]:
    nrows, ncols = a.shape
    rows = pack_rows(a)
    pivots = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        bit = 1 << (ncols - 1 - col)
        for i in range(r, nrows):
            if rows[i] & bit:
                break
        else:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        for k in range(nrows):
            if k != r and rows[k] & bit:
                rows[k] ^= rows[r]
        pivots.append(col)
        r += 1
    out = np.zeros((nrows, ncols), dtype=np.int64)
    for i, row in enumerate(rows[:r]):
        for col in range(ncols):
            if row >> (ncols - 1 - col) & 1:
                out[i, col] = 1
    return out, tuple(pivots)


def rref_array(a: np.ndarray, q: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form of an integer array over F_q.

    Returns the reduced array (same shape, zero rows last) and the pivot
    columns.
    """
    a = np.array(a, dtype=np.int64) % q
    if a.size == 0:
        return a, ()
    if q == 2:
        return _rref_gf2(a)
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, col])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * pow(int(a[r, col]), -1, q)) % q
        factors = a[:, col].copy()
        factors[r] = 0
        a = (a - np.outer(factors, a[r])) % q
        pivots.append(col)
        r += 1
    return a, tuple(pivots)


def rank_array(a: np.ndarray, q: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    if q == 2:
        return gf2_rank_packed(pack_rows(a % 2))
    return len(rref_array(a, q)[1])


def kernel_array(a: np.ndarray, q: int) -> list[tuple[int, ...]]:
    """Basis of {x : a x = 0}, one vector per free column, in column order."""
    a = np.asarray(a, dtype=np.int64)
    ncols = a.shape[1]
    if a.shape[0] == 0:
        return [tuple(int(i == j) for i in range(ncols)) for j in range(ncols)]
    r, pivots = rref_array(a, q)
    basis = []
    for free in (j for j in range(ncols) if j not in pivots):
        x = [0] * ncols
        x[free] = 1
        for row, pc in enumerate(pivots):
            x[pc] = int(-r[row, free] % q)
        basis.append(tuple(x))
    return basis


def rank(M: Matrix) -> int:
    return rank_array(M.array, M.q)


def rref(M: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    r, pivots = rref_array(M.array, M.q)
    return Matrix(r, M.field), pivots


def right_kernel(M: Matrix) -> list[tuple[int, ...]]:
    """Basis of {x : M x = 0}; its length is ``ncols - rank(M)``."""
    return kernel_array(M.array, M.q)


def left_kernel(M: Matrix) -> list[tuple[int, ...]]:
    """Basis of {Y : Y^T M = 0}; its length is ``nrows - rank(M)``."""
    return kernel_array(M.array.T, M.q)


def solve(A: Matrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """One solution of ``A x = b``, or None when the system is inconsistent."""
    q = A.q
    b = np.asarray(b, dtype=np.int64).reshape(A.nrows, 1)
    r, pivots = rref_array(np.hstack([A.array, b]), q)
    if A.ncols in pivots:
        return None
    x = [0] * A.ncols
    for row, pc in enumerate(pivots):
        x[pc] = int(r[row, -1])
    return tuple(x)


def is_invertible(M: Matrix) -> bool:
    return M.nrows == M.ncols and rank(M) == M.nrows


def inverse(M: Matrix) -> Matrix:
    n = M.nrows
    if M.ncols != n:
        raise ValueError(f"only square matrices are invertible, got {M.shape}")
    r, pivots = rref_array(np.hstack([M.array, np.eye(n, dtype=np.int64)]), M.q)
    if pivots[:n] != tuple(range(n)):
        raise ValueError("matrix is singular")
    return Matrix(r[:, n:], M.field)


def extend_to_basis(v: Sequence[int], field) -> Matrix:
    """Invertible matrix whose first column is the nonzero vector ``v``."""
    field = as_field(field)
    v = np.asarray(v, dtype=np.int64) % field.q
    if not v.any():
        raise ValueError("cannot extend the zero vector to a basis")
    cols = [v]
    for j in range(len(v)):
        e = np.zeros(len(v), dtype=np.int64)
        e[j] = 1
        if rank_array(np.array(cols + [e]), field.q) == len(cols) + 1:
            cols.append(e)
    return Matrix(np.array(cols).T, field)


def normalize_vector(v: Sequence[int], q: int) -> tuple[int, ...]:
    """Scale so that the first nonzero coordinate is 1 (projective representative)."""
    v = [int(x) % q for x in v]
    for x in v:
        if x:
            s = pow(x, -1, q)
            return tuple(y * s % q for y in v)
    return tuple(v)


# --- constructors ----------------------------------------------------------


def rank_one(f: Sequence[int], y: Sequence[int], field) -> Matrix:
    """Matrix of the operator x -> f(x) y, i.e. the outer product y f."""
    field = as_field(field)
    return Matrix(np.outer(np.asarray(y, dtype=np.int64), np.asarray(f, dtype=np.int64)), field)


def matrix_unit(n: int, p: int, i: int, j: int, field) -> Matrix:
    """E_{i,j} in Mat_{n,p}; ``i`` and ``j`` are 1-based."""
    if not (1 <= i <= n and 1 <= j <= p):
        raise IndexError(f"E_({i},{j}) is outside a {n}x{p} matrix")
    a = np.zeros((n, p), dtype=np.int64)
    a[i - 1, j - 1] = 1
    return Matrix(a, field)


def trace_pair(u: Matrix, v: Matrix) -> int:
    """tr(v u) for u of shape (n, p) and v of shape (p, n)."""
    if v.shape != (u.ncols, u.nrows):
        raise ValueError(f"cannot pair {u.shape} with {v.shape}")
    if u.field != v.field:
        raise ValueError("field mismatch")
    return int((u.array * v.array.T).sum() % u.q)


def block(M: Matrix, rows: range | tuple[int, int], cols: range | tuple[int, int]) -> Matrix:
    """Submatrix on half-open 0-based row and column ranges."""
    rows = range(*rows) if isinstance(rows, tuple) else rows
    cols = range(*cols) if isinstance(cols, tuple) else cols
    for rng, bound, what in ((rows, M.nrows, "row"), (cols, M.ncols, "column")):
        if rng.step != 1 or rng.start < 0 or rng.stop > bound or rng.start > rng.stop:
            raise IndexError(f"{what} range {rng} out of bounds for {M.shape}")
    return Matrix(M.array[rows.start:rows.stop, cols.start:cols.stop], M.field)


def K(M: Matrix) -> Matrix:
    """Top-left (n-1) x (p-1) block."""
    return block(M, (0, M.nrows - 1), (0, M.ncols - 1))


def C(M: Matrix) -> Matrix:
    """Last column without its bottom entry."""
    return block(M, (0, M.nrows - 1), (M.ncols - 1, M.ncols))


def H(M: Matrix) -> Matrix:
    """First n-1 rows."""
    return block(M, (0, M.nrows - 1), (0, M.ncols))


def R(M: Matrix) -> Matrix:
    """Last row."""
    return block(M, (M.nrows - 1, M.nrows), (0, M.ncols))


# --- text format ---------------------------------------------------------


def parse_matrix(text: str, field, shape: tuple[int, int] | None = None) -> Matrix:
    """Parse ``"1 0; 0 1"``: rows separated by ';', entries by whitespace."""
    field = as_field(field)
    rows = [r.split() for r in text.strip().split(";")]
    if rows == [[]]:
        rows = []
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise ValueError(f"ragged matrix text: {text!r}")
    try:
        data = [[int(x) for x in r] for r in rows]
    except ValueError:
        raise ValueError(f"non-integer entry in matrix text: {text!r}") from None
    if shape is not None:
        a = np.array(data, dtype=np.int64).reshape(shape)
    else:
        a = np.array(data, dtype=np.int64).reshape(len(rows), widths.pop() if widths else 0)
    return Matrix(a, field)


def format_matrix(M: Matrix) -> str:
    return "; ".join(" ".join(str(int(x)) for x in row) for row in M.array)


def parse_vector(text: str, field) -> tuple[int, ...]:
    q = as_field(field).q
    return tuple(int(x) % q for x in text.replace(",", " ").replace(";", " ").split())
