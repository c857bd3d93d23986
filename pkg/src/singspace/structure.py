"""Rank-one space classification, the two border lemmas, and the
classifier for maximal singular affine spaces."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .duality import projective_points
from .errors import NoCompletion, ShapeError
from .exactmat import (
    K,
    Matrix,
    extend_to_basis,
    kernel_array,
    matrix_unit,
    normalize_vector,
    rank,
    rank_array,
)
from .gf import as_field
from .spaces import DEFAULT_CAP, AffineMatrixSpace, LinearMatrixSpace, max_rank, span


# --- rank-one spaces -------------------------------------------------------


class SchurKind(str, enum.Enum):
    FIXED_FORM = "FixedForm"
    FIXED_VECTOR = "FixedVector"
    BOTH = "Both"
    ZERO = "Zero"
    NOT_RANK_ONE = "NotRankOne"


@dataclass(frozen=True)
class SchurClassification:
    """How a space of rank <= 1 operators factors.

    ``FIXED_FORM``: every element is ``z f`` for the fixed row ``witness_f``
    and ``z`` ranging over ``complement_space`` (n x 1 matrices).
    ``FIXED_VECTOR``: every element is ``y g`` for the fixed column
    ``witness_y`` and ``g`` ranging over ``complement_space`` (1 x p).
    ``BOTH``: the space is spanned by ``witness_y witness_f``.
    """

    kind: SchurKind
    witness_f: tuple[int, ...] | None = None
    witness_y: tuple[int, ...] | None = None
    complement_space: LinearMatrixSpace | None = None
    rank2_certificate: Matrix | None = None

    def reconstruct(self, shape, field) -> LinearMatrixSpace | None:
        """Re-span the space from the witnesses (None for NOT_RANK_ONE)."""
        field = as_field(field)
        if self.kind is SchurKind.ZERO:
            return span([], shape, field)
        if self.kind is SchurKind.BOTH:
            return span([Matrix(np.outer(self.witness_y, self.witness_f), field)])
        if self.kind is SchurKind.FIXED_FORM:
            gens = [Matrix(np.outer(z.array[:, 0], self.witness_f), field) for z in self.complement_space.basis]
            return span(gens, shape, field)
        if self.kind is SchurKind.FIXED_VECTOR:
            gens = [Matrix(np.outer(self.witness_y, g.array[0]), field) for g in self.complement_space.basis]
            return span(gens, shape, field)
        return None


def _first_nonzero(a: np.ndarray) -> int:
    return int(np.flatnonzero(a)[0])


def classify_rank_one_space(S: LinearMatrixSpace) -> SchurClassification:
    """Decide whether every element of ``S`` has rank <= 1, and if so how it factors.

    Works on the basis only: a nonzero basis element fixes the candidate
    column ``y`` and row ``f``; the space is tested against both.  When both
    tests fail a rank-2 element is found among pairwise sums of the basis.
    """
    if S.dim == 0:
        return SchurClassification(SchurKind.ZERO)
    q = S.q
    basis = [B.array for B in S.basis]
    for B in basis:
        if rank_array(B, q) >= 2:
            return SchurClassification(SchurKind.NOT_RANK_ONE, rank2_certificate=Matrix(B, S.field))

    u0 = basis[0]
    y = np.asarray(normalize_vector(u0[:, _first_nonzero(u0.any(axis=0))], q))
    f = np.asarray(normalize_vector(u0[_first_nonzero(u0.any(axis=1))], q))
    fixed_vector = all(rank_array(np.hstack([y[:, None], B]), q) <= 1 for B in basis)
    fixed_form = all(rank_array(np.vstack([f[None, :], B]), q) <= 1 for B in basis)
    y_t = tuple(int(v) for v in y)
    f_t = tuple(int(v) for v in f)

    if fixed_vector and fixed_form:
        return SchurClassification(SchurKind.BOTH, witness_f=f_t, witness_y=y_t)
    if fixed_vector:
        k = _first_nonzero(y)  # y[k] == 1, so row k of B is its form
        forms = [Matrix(B[k][None, :], S.field) for B in basis]
        return SchurClassification(
            SchurKind.FIXED_VECTOR, witness_y=y_t, complement_space=span(forms, (1, S.p), S.field)
        )
    if fixed_form:
        j = _first_nonzero(f)
        vectors = [Matrix(B[:, j][:, None], S.field) for B in basis]
        return SchurClassification(
            SchurKind.FIXED_FORM, witness_f=f_t, complement_space=span(vectors, (S.n, 1), S.field)
        )

    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            M = (basis[i] + basis[j]) % q
            if rank_array(M, q) >= 2:
                return SchurClassification(SchurKind.NOT_RANK_ONE, rank2_certificate=Matrix(M, S.field))
    raise AssertionError("rank-one basis fits neither a fixed vector nor a fixed form, yet no rank-2 sum exists")


# --- border lemmas -------------------------------------------------------


def complete_to_full_rank(first_row: Sequence[int], first_col: Sequence[int], n: int, p: int, field) -> Matrix:
    """Fill in everything but the first row and column to reach rank ``n``.

    Raises :class:`NoCompletion` exactly when no completion exists: for
    ``n == p`` both borders must be nonzero, for ``n < p`` the first row
    must be nonzero.
    """
    field = as_field(field)
    q = field.q
    row = np.asarray(first_row, dtype=np.int64) % q
    col = np.asarray(first_col, dtype=np.int64) % q
    if not 0 < n <= p:
        raise ShapeError(f"need 0 < n <= p, got n={n}, p={p}")
    if row.shape != (p,) or col.shape != (n,):
        raise ShapeError(f"border lengths must be p={p} and n={n}, got {row.shape[0]} and {col.shape[0]}")
    if row[0] != col[0]:
        raise ValueError("first row and first column disagree on the corner entry")
    if not row.any():
        raise NoCompletion("first row is zero")
    if n == p and not col.any():
        raise NoCompletion("first column is zero and n == p")
    if n == 1:
        return Matrix(row[None, :], field)

    a, L0, C0 = int(row[0]), row[1:], col[1:]
    # Change bases so that L0 and C0 have at most their first entry nonzero:
    # A = diag(1, G) A' diag(1, Hm) with A' in that reduced shape.
    G = extend_to_basis(C0, field).array if C0.any() else np.eye(n - 1, dtype=np.int64)
    Hm = extend_to_basis(L0, field).array.T if L0.any() else np.eye(p - 1, dtype=np.int64)
    L0r = np.zeros(p - 1, dtype=np.int64)
    C0r = np.zeros(n - 1, dtype=np.int64)
    if L0.any():
        L0r[0] = 1
    if C0.any():
        C0r[0] = 1

    lower = np.zeros((n - 1, p - 1), dtype=np.int64)
    if a != 0 and (not C0.any() or not L0.any()):
        lower[:, : n - 1] = np.eye(n - 1, dtype=np.int64)
    elif C0.any() and L0.any():
        lower[1:, 1 : n - 1] = np.eye(n - 2, dtype=np.int64)
    else:
        # n < p, first column zero, first row nonzero
        lower[:, 1:n] = np.eye(n - 1, dtype=np.int64)

    reduced = np.zeros((n, p), dtype=np.int64)
    reduced[0, 0] = a
    reduced[0, 1:] = L0r
    reduced[1:, 0] = C0r
    reduced[1:, 1:] = lower
    left = np.eye(n, dtype=np.int64)
    left[1:, 1:] = G
    right = np.eye(p, dtype=np.int64)
    right[1:, 1:] = Hm
    M = Matrix(left @ reduced @ right % q, field)
    assert rank(M) == n and M.array[0].tolist() == row.tolist() and M.array[:, 0].tolist() == col.tolist()
    return M


@dataclass(frozen=True)
class ExtractionResult:
    hypothesis_holds: bool
    conclusion_holds: bool

    @property
    def holds(self) -> bool:
        return self.conclusion_holds or not self.hypothesis_holds


def extraction_check(A: Matrix) -> ExtractionResult:
    """Test: rank A < n and rank(A + E_{n,p}) < n imply rank K(A) < n - 1."""
    n, p = A.shape
    if not 0 < n <= p:
        raise ShapeError(f"need 0 < n <= p, got {A.shape}")
    E = matrix_unit(n, p, n, p, A.field)
    hyp = rank(A) < n and rank(A + E) < n
    return ExtractionResult(hyp, rank(K(A)) < n - 1)


# --- maximal singular affine spaces --------------------------------------


class Status(str, enum.Enum):
    HAS_FULL_RANK = "HasFullRank"
    BELOW_MAX_DIM = "BelowMaxDim"
    CLASSIFIED = "Classified"
    THEOREM_VIOLATION = "TheoremViolation"


class WitnessKind(str, enum.Enum):
    LEFT_KERNEL = "LeftKernelVector"
    RIGHT_KERNEL = "RightKernelVector"
    EXCEPTIONAL_F2 = "ExceptionalF2"


_KIND_ORDER = {k: i for i, k in enumerate(WitnessKind)}


@dataclass(frozen=True)
class Witness:
    kind: WitnessKind
    vector: tuple[int, ...] | None = None

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.vector or ())

    def hyperplane(self, q: int) -> list[tuple[int, ...]]:
        """For a left-kernel witness ``Y``: a basis of {v : Y^T v = 0}."""
        if self.kind is not WitnessKind.LEFT_KERNEL:
            raise ValueError("only left-kernel witnesses define a range hyperplane")
        return kernel_array(np.asarray(self.vector, dtype=np.int64)[None, :], q)

    def to_dict(self) -> dict:
        d = {"kind": self.kind.value}
        if self.vector is not None:
            d["vector"] = list(self.vector)
        return d


@dataclass(frozen=True)
class DieudonneOutcome:
    status: Status
    dim: int
    max_rank_found: int
    witnesses: tuple[Witness, ...] = dc_field(default_factory=tuple)

    @property
    def witness_kinds(self) -> tuple[str, ...]:
        return tuple(sorted({w.kind.value for w in self.witnesses}, key=lambda k: _KIND_ORDER[WitnessKind(k)]))

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "dim": self.dim,
            "max_rank": self.max_rank_found,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


def projective_span(basis: Sequence[Sequence[int]], q: int) -> list[tuple[int, ...]]:
    """All normalized nonzero vectors of span(basis), sorted."""
    if not basis:
        return []
    b = np.asarray(basis, dtype=np.int64)
    return sorted(normalize_vector((np.asarray(c) @ b) % q, q) for c in projective_points(len(basis), q))


def common_left_kernel(space: AffineMatrixSpace) -> list[tuple[int, ...]]:
    """Projective ``Y`` with ``Y^T M = 0`` for the point and every direction basis element."""
    mats = [space.point.array] + [B.array for B in space.basis]
    return projective_span(kernel_array(np.hstack(mats).T, space.q), space.q)


def common_right_kernel(space: AffineMatrixSpace) -> list[tuple[int, ...]]:
    mats = [space.point.array] + [B.array for B in space.basis]
    return projective_span(kernel_array(np.vstack(mats), space.q), space.q)


def classify_singular_space(calS: AffineMatrixSpace, cap: int = DEFAULT_CAP) -> DieudonneOutcome:
    """Classify an affine space of n x p matrices (n <= p) by its maximal rank.

    For a singular space of the critical dimension p(n-1), every kernel-type
    witness is reported; the exceptional flag is only considered for
    n = p = q = 2.  A singular critical space with no witness, or a singular
    space above the critical dimension, is reported as a theorem violation.
    """
    n, p = calS.shape
    if n > p:
        raise ShapeError(f"classification needs n <= p, got {calS.shape}")
    mr = max_rank(calS, cap)
    d = calS.dim
    critical = p * (n - 1)
    if mr == n:
        return DieudonneOutcome(Status.HAS_FULL_RANK, d, mr)
    if d < critical:
        return DieudonneOutcome(Status.BELOW_MAX_DIM, d, mr)
    if d > critical:
        return DieudonneOutcome(Status.THEOREM_VIOLATION, d, mr)

    witnesses = [Witness(WitnessKind.LEFT_KERNEL, Y) for Y in common_left_kernel(calS)]
    if n == p:
        witnesses += [Witness(WitnessKind.RIGHT_KERNEL, x) for x in common_right_kernel(calS)]
        if n == 2 and calS.q == 2 and not calS.is_linear:
            witnesses.append(Witness(WitnessKind.EXCEPTIONAL_F2))
    witnesses.sort(key=Witness.sort_key)
    status = Status.CLASSIFIED if witnesses else Status.THEOREM_VIOLATION
    return DieudonneOutcome(status, d, mr, tuple(witnesses))


def exceptional_space() -> AffineMatrixSpace:
    """Upper-triangular 2 x 2 matrices over F_2 with trace 1."""
    from .spaces import affine

    F2 = as_field(2)
    direction = span([Matrix([[0, 1], [0, 0]], F2), Matrix([[1, 0], [0, 1]], F2)])
    return affine(Matrix([[1, 0], [0, 0]], F2), direction)
