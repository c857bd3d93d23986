"""Linear and affine subspaces of Mat_{n,p}(F_q) in canonical form.

A linear space is stored as the RREF of its vectorized basis, so two
spaces are equal exactly when their (shape, q, RREF) agree.  An affine
space stores a representative whose coordinates vanish on the pivot
columns of its direction, which makes that representative unique too.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

import numpy as np

from .errors import CapExceeded, ShapeError, SingularTransform, ZeroVector
from .exactmat import (
    Matrix,
    format_matrix,
    is_invertible,
    kernel_array,
    parse_matrix,
    rank_array,
    rref_array,
)
from .gf import FieldCtx, as_field

DEFAULT_CAP = 1 << 24


class LinearMatrixSpace:
    """A linear subspace of Mat_{n,p}(F_q).  Build with :func:`span`."""

    __slots__ = ("shape", "field", "_rref", "pivots", "_basis")

    def __init__(self, shape, field, rref, pivots):
        self.shape = (int(shape[0]), int(shape[1]))
        self.field = as_field(field)
        rref = np.asarray(rref, dtype=np.int64).reshape(len(pivots), self.shape[0] * self.shape[1])
        rref.setflags(write=False)
        self._rref = rref
        self.pivots = tuple(int(c) for c in pivots)
        self._basis = None

    @property
    def n(self) -> int:
        return self.shape[0]

    @property
    def p(self) -> int:
        return self.shape[1]

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def rref(self) -> np.ndarray:
        """Read-only (dim, n*p) array of canonical basis vectors."""
        return self._rref

    @property
    def basis(self) -> tuple[Matrix, ...]:
        if self._basis is None:
            self._basis = tuple(Matrix(row.reshape(self.shape), self.field) for row in self._rref)
        return self._basis

    def _check_matrix(self, M: Matrix):
        if M.shape != self.shape or M.field != self.field:
            raise ShapeError(f"expected a {self.shape} matrix over {self.field}, got {M.shape} over {M.field}")

    def reduce(self, vec) -> np.ndarray:
        """Subtract the combination of basis vectors that clears the pivot columns."""
        v = np.array(vec, dtype=np.int64) % self.q
        if self.dim:
            v = (v - v[list(self.pivots)] @ self._rref) % self.q
        return v

    def coordinates(self, M: Matrix) -> tuple[int, ...] | None:
        """Coefficients of ``M`` in the canonical basis, or None if ``M`` is not a member."""
        self._check_matrix(M)
        v = np.asarray(M.vec(), dtype=np.int64)
        if self.reduce(v).any():
            return None
        return tuple(int(v[c]) for c in self.pivots)

    def contains(self, M: Matrix) -> bool:
        return self.coordinates(M) is not None

    def zero(self) -> Matrix:
        return Matrix.zeros(self.n, self.p, self.field)

    def as_affine(self) -> "AffineMatrixSpace":
        return AffineMatrixSpace(self.zero(), self)

    def key(self) -> tuple:
        return (self.shape, self.q, self._rref.tobytes())

    def __eq__(self, other):
        if not isinstance(other, LinearMatrixSpace):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"LinearMatrixSpace(shape={self.shape}, q={self.q}, dim={self.dim})"


class AffineMatrixSpace:
    """``point + direction``; build with :func:`affine`."""

    __slots__ = ("point", "direction")

    def __init__(self, point: Matrix, direction: LinearMatrixSpace):
        direction._check_matrix(point)
        reduced = direction.reduce(point.vec())
        self.point = Matrix(reduced.reshape(direction.shape), direction.field)
        self.direction = direction

    @property
    def shape(self) -> tuple[int, int]:
        return self.direction.shape

    @property
    def field(self) -> FieldCtx:
        return self.direction.field

    @property
    def q(self) -> int:
        return self.direction.q

    @property
    def n(self) -> int:
        return self.direction.n

    @property
    def p(self) -> int:
        return self.direction.p

    @property
    def dim(self) -> int:
        return self.direction.dim

    @property
    def basis(self) -> tuple[Matrix, ...]:
        return self.direction.basis

    @property
    def is_linear(self) -> bool:
        return self.point.is_zero()

    def contains(self, M: Matrix) -> bool:
        self.direction._check_matrix(M)
        return self.direction.contains(M - self.point)

    def key(self) -> tuple:
        return self.direction.key() + (self.point.array.tobytes(),)

    def __eq__(self, other):
        if not isinstance(other, AffineMatrixSpace):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (
            f"AffineMatrixSpace(shape={self.shape}, q={self.q}, dim={self.dim}, "
            f"point='{format_matrix(self.point)}')"
        )


def _from_vectors(vectors, shape, field) -> LinearMatrixSpace:
    field = as_field(field)
    m = shape[0] * shape[1]
    a = np.asarray(vectors, dtype=np.int64).reshape(-1, m)
    r, pivots = rref_array(a, field.q) if len(a) else (a, ())
    return LinearMatrixSpace(shape, field, r[: len(pivots)], pivots)


def span(generators: Sequence[Matrix], shape=None, field=None) -> LinearMatrixSpace:
    """Canonical linear span of ``generators``.

    ``shape`` and ``field`` are required only when ``generators`` is empty.
    """
    generators = list(generators)
    if generators:
        shape = shape or generators[0].shape
        field = field or generators[0].field
        for g in generators:
            if g.shape != tuple(shape) or g.field != as_field(field):
                raise ShapeError(f"generator of shape {g.shape} over {g.field} in a {tuple(shape)} span over {field}")
    elif shape is None or field is None:
        raise ValueError("span of no generators needs explicit shape and field")
    return _from_vectors([g.vec() for g in generators], tuple(shape), field)


def full_space(n: int, p: int, field) -> LinearMatrixSpace:
    return _from_vectors(np.eye(n * p, dtype=np.int64), (n, p), field)


def zero_space(n: int, p: int, field) -> LinearMatrixSpace:
    return _from_vectors(np.zeros((0, n * p), dtype=np.int64), (n, p), field)


def affine(point: Matrix, direction: LinearMatrixSpace) -> AffineMatrixSpace:
    return AffineMatrixSpace(point, direction)


def contains(space, M: Matrix) -> bool:
    return space.contains(M)


def dim(space) -> int:
    return space.dim


def is_linear(space: AffineMatrixSpace) -> bool:
    return space.is_linear


def _parts(space) -> tuple[np.ndarray, LinearMatrixSpace]:
    if isinstance(space, LinearMatrixSpace):
        return np.zeros(space.n * space.p, dtype=np.int64), space
    return np.asarray(space.point.vec(), dtype=np.int64), space.direction


def _check_cap(space, cap: int):
    if space.q ** space.dim > cap:
        raise CapExceeded(f"{space.q}^{space.dim} elements exceed the enumeration cap {cap}")


def element_vectors(space, cap: int = DEFAULT_CAP, chunk: int = 4096) -> Iterator[np.ndarray]:
    """Yield arrays of vectorized elements, at most ``chunk`` rows each."""
    _check_cap(space, cap)
    point, direction = _parts(space)
    q, d = space.q, space.dim
    coeffs = itertools.product(range(q), repeat=d)
    while True:
        block = list(itertools.islice(coeffs, chunk))
        if not block:
            return
        c = np.asarray(block, dtype=np.int64).reshape(len(block), d)
        yield (point + c @ direction.rref) % q


def elements(space, cap: int = DEFAULT_CAP) -> Iterator[Matrix]:
    """Every element of ``space`` exactly once."""
    for vecs in element_vectors(space, cap):
        for v in vecs:
            yield Matrix(v.reshape(space.shape), space.field)


def max_rank(space, cap: int = DEFAULT_CAP) -> int:
    """Largest rank over all elements, by elimination on each element."""
    n, p = space.shape
    best = 0
    full = min(n, p)
    for vecs in element_vectors(space, cap):
        for v in vecs:
            best = max(best, rank_array(v.reshape(n, p), space.q))
            if best == full:
                return best
    return best


def transform(space, P: Matrix, Q: Matrix):
    """Image ``{P M Q : M in space}``."""
    n, p = space.shape
    if P.shape != (n, n) or Q.shape != (p, p):
        raise ShapeError(f"transform of {space.shape} space needs {n}x{n} and {p}x{p} matrices")
    if not is_invertible(P) or not is_invertible(Q):
        raise SingularTransform("P and Q must be invertible")
    if isinstance(space, LinearMatrixSpace):
        return span([P @ B @ Q for B in space.basis], space.shape, space.field)
    direction = transform(space.direction, P, Q)
    return AffineMatrixSpace(P @ space.point @ Q, direction)


def s_sub_y(S: LinearMatrixSpace, y: Sequence[int]) -> LinearMatrixSpace:
    """Elements of ``S`` whose range lies in the line spanned by ``y``.

    Solved on basis coordinates: ``M`` has range in span{y} iff ``W M = 0``
    where the rows of ``W`` span the annihilator of ``y``.
    """
    n, p = S.shape
    q = S.q
    y = np.asarray(y, dtype=np.int64) % q
    if y.shape != (n,):
        raise ShapeError(f"vector of length {n} expected, got {y.shape}")
    if not y.any():
        raise ZeroVector("S_(y) needs a nonzero y")
    if S.dim == 0:
        return S
    W = np.asarray(kernel_array(y.reshape(1, n), q), dtype=np.int64).reshape(n - 1, n)
    # column i of the system holds W @ B_i, vectorized
    system = np.stack([(W @ B.reshape(n, p) % q).ravel() for B in S.rref], axis=1)
    coeffs = kernel_array(system, q)
    if not coeffs:
        return zero_space(n, p, S.field)
    return _from_vectors(np.asarray(coeffs, dtype=np.int64) @ S.rref % q, S.shape, S.field)


def random_subspace(n: int, p: int, d: int, field, rng: np.random.Generator) -> LinearMatrixSpace:
    """Uniformly random generators, redrawn until they are independent."""
    field = as_field(field)
    if not 0 <= d <= n * p:
        raise ValueError(f"dimension {d} out of range for Mat_{n},{p}")
    while True:
        gens = rng.integers(0, field.q, size=(d, n * p))
        if rank_array(gens, field.q) == d:
            return _from_vectors(gens, (n, p), field)


def random_affine_subspace(n: int, p: int, d: int, field, rng: np.random.Generator) -> AffineMatrixSpace:
    direction = random_subspace(n, p, d, field, rng)
    point = Matrix(rng.integers(0, direction.q, size=(n, p)), direction.field)
    return AffineMatrixSpace(point, direction)


# --- file format ---------------------------------------------------------


def format_space(space) -> str:
    """Header ``n p q dim``, then the point, then one basis matrix per line."""
    if isinstance(space, LinearMatrixSpace):
        space = space.as_affine()
    lines = [f"{space.n} {space.p} {space.q} {space.dim}", format_matrix(space.point)]
    lines += [format_matrix(B) for B in space.basis]
    return "\n".join(lines) + "\n"


def parse_space(text: str) -> AffineMatrixSpace:
    """Parse the space file format; blank lines and ``#`` comments are skipped."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty space file")
    try:
        n, p, q, d = (int(x) for x in lines[0].split())
    except ValueError:
        raise ValueError(f"bad space header {lines[0]!r}; expected 'n p q dim'") from None
    field = FieldCtx(q)
    if len(lines) != d + 2:
        raise ValueError(f"space file declares dim {d} but has {len(lines) - 1} matrix lines")
    point = parse_matrix(lines[1], field, (n, p))
    gens = [parse_matrix(ln, field, (n, p)) for ln in lines[2:]]
    direction = span(gens, (n, p), field)
    if direction.dim != d:
        raise ValueError(f"direction generators span dimension {direction.dim}, header says {d}")
    return AffineMatrixSpace(point, direction)


def read_space(path) -> AffineMatrixSpace:
    with open(path) as fh:
        return parse_space(fh.read())
