"""Pure-Python enumeration of subspaces by RREF pivot profile."""

from __future__ import annotations

import itertools
from typing import Iterator

import numpy as np

from ..gf import as_field
from ..spaces import AffineMatrixSpace, LinearMatrixSpace

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def gaussian_binomial(m: int, d: int, q: int) -> int:
    """Number of d-dimensional subspaces of F_q^m."""
    if not 0 <= d <= m:
        return 0
    num = den = 1
    for i in range(d):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def pivot_profiles(m: int, d: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(m), d))


def free_slots(pivots: tuple[int, ...], m: int) -> list[tuple[int, int]]:
    """(row, column) entries of an RREF basis with these pivots that are not forced."""
    pset = set(pivots)
    return [(i, j) for i, c in enumerate(pivots) for j in range(c + 1, m) if j not in pset]


def profile_spaces(shape, pivots: tuple[int, ...], field) -> Iterator[LinearMatrixSpace]:
    field = as_field(field)
    m = shape[0] * shape[1]
    d = len(pivots)
    slots = free_slots(pivots, m)
    for values in itertools.product(range(field.q), repeat=len(slots)):
        r = np.zeros((d, m), dtype=np.int64)
        for i, c in enumerate(pivots):
            r[i, c] = 1
        for (i, j), v in zip(slots, values):
            r[i, j] = v
        yield LinearMatrixSpace(shape, field, r, pivots)


def enumerate_linear_subspaces(shape, d: int, field) -> Iterator[LinearMatrixSpace]:
    """Every d-dimensional linear subspace of Mat_{n,p}(F_q), each once."""
    m = shape[0] * shape[1]
    if not 0 <= d <= m:
        raise ValueError(f"dimension {d} out of range for ambient dimension {m}")
    for pivots in pivot_profiles(m, d):
        yield from profile_spaces(tuple(shape), pivots, field)


def coset_points(direction: LinearMatrixSpace) -> Iterator[np.ndarray]:
    """Canonical representatives: vectors supported off the pivot columns."""
    m = direction.n * direction.p
    free = [j for j in range(m) if j not in set(direction.pivots)]
    for values in itertools.product(range(direction.q), repeat=len(free)):
        v = np.zeros(m, dtype=np.int64)
        v[free] = values
        yield v


def enumerate_affine_spaces(n: int, p: int, q, d: int) -> Iterator[AffineMatrixSpace]:
    """Every d-dimensional affine subspace of Mat_{n,p}(F_q), each once."""
    from ..exactmat import Matrix

    field = as_field(q)
    for direction in enumerate_linear_subspaces((n, p), d, field):
        for v in coset_points(direction):
            yield AffineMatrixSpace(Matrix(v.reshape(n, p), field), direction)


def vector_index(vec, q: int) -> int:
    """Base-q integer with coordinate 0 most significant."""
    s = 0
    for x in vec:
        s = s * q + int(x)
    return s


def index_vector(idx: int, m: int, q: int) -> list[int]:
    out = [0] * m
    for k in range(m - 1, -1, -1):
        idx, out[k] = divmod(idx, q)
    return out


def _mix(x: int) -> int:
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def space_fingerprint(space: AffineMatrixSpace) -> int:
    """64-bit hash of a canonical affine space; summed into scan checksums."""
    q = space.q
    h = _GOLDEN
    for row in space.direction.rref:
        h = _mix(h ^ vector_index(row, q))
    return _mix(h ^ vector_index(space.point.vec(), q))
