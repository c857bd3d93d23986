"""Trace duality for matrix spaces.

For ``S`` in Mat_{n,p}, the trace-orthogonal complement ``S^perp`` lives in
Mat_{p,n}.  Each vector ``y`` of F^n gives an evaluation operator
``v -> v y`` on ``S^perp``; its rank determines ``dim S_(y)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import CapExceeded, ShapeError, ZeroVector
from .exactmat import Matrix, kernel_array, rank
from .spaces import DEFAULT_CAP, LinearMatrixSpace, _from_vectors, s_sub_y, span, zero_space


def orthogonal(S: LinearMatrixSpace) -> LinearMatrixSpace:
    """All p x n matrices ``v`` with ``tr(v u) = 0`` for every ``u`` in ``S``.

    In row-major coordinates of ``v`` the pairing with ``u`` is the dot
    product with ``vec(u^T)``, so the complement is a null space.
    """
    n, p = S.shape
    if S.dim == 0:
        constraints = np.zeros((0, n * p), dtype=np.int64)
    else:
        constraints = np.stack([B.reshape(n, p).T.ravel() for B in S.rref])
    return _from_vectors(kernel_array(constraints, S.q), (p, n), S.field)


@dataclass(frozen=True)
class EvaluationOperator:
    """``v -> v y`` on a dual space, as a p x d matrix (column j = B_j y)."""

    y: tuple[int, ...]
    matrix: Matrix

    @property
    def rank(self) -> int:
        return rank(self.matrix)


def evaluation_operator(Sperp: LinearMatrixSpace, y: Sequence[int]) -> EvaluationOperator:
    p, n = Sperp.shape
    y = tuple(int(v) % Sperp.q for v in y)
    if len(y) != n:
        raise ShapeError(f"vector of length {n} expected, got {len(y)}")
    yv = np.asarray(y, dtype=np.int64)
    cols = [B.reshape(p, n) @ yv % Sperp.q for B in Sperp.rref]
    a = np.stack(cols, axis=1) if cols else np.zeros((p, 0), dtype=np.int64)
    return EvaluationOperator(y, Matrix(a, Sperp.field))


@dataclass(frozen=True)
class RankIdentity:
    rk_yhat: int
    dim_s_sub_y: int


def rank_identity_report(S: LinearMatrixSpace, y: Sequence[int], Sperp: LinearMatrixSpace | None = None) -> RankIdentity:
    """Both sides of ``rank(y_hat) = p - dim S_(y)``, computed independently."""
    if not any(v % S.q for v in y):
        raise ZeroVector("the rank identity needs a nonzero y")
    if Sperp is None:
        Sperp = orthogonal(S)
    return RankIdentity(evaluation_operator(Sperp, y).rank, s_sub_y(S, y).dim)


def s_sub_y_via_duality(S: LinearMatrixSpace, y: Sequence[int], Sperp: LinearMatrixSpace | None = None) -> LinearMatrixSpace:
    """``(im y_hat)^o (x) y``: forms killing the image of y_hat, tensored with ``y``."""
    if not any(v % S.q for v in y):
        raise ZeroVector("S_(y) needs a nonzero y")
    if Sperp is None:
        Sperp = orthogonal(S)
    yhat = evaluation_operator(Sperp, y).matrix
    forms = kernel_array(yhat.array.T, S.q)
    n, p = S.shape
    if not forms:
        return zero_space(n, p, S.field)
    yv = np.asarray(y, dtype=np.int64)
    return span([Matrix(np.outer(yv, f), S.field) for f in forms], S.shape, S.field)


def projective_points(n: int, q: int) -> Iterator[tuple[int, ...]]:
    """Nonzero vectors of F_q^n whose first nonzero coordinate is 1, in lex order."""
    for lead in range(n - 1, -1, -1):
        for tail in itertools.product(range(q), repeat=n - lead - 1):
            yield (0,) * lead + (1,) + tail


def spectrum_table(S: LinearMatrixSpace, cap: int = DEFAULT_CAP) -> list[tuple[tuple[int, ...], int, int]]:
    """``(y, dim S_(y), rank y_hat)`` for every projective ``y``."""
    n = S.n
    if S.q ** n > cap:
        raise CapExceeded(f"{S.q}^{n} vectors exceed the enumeration cap {cap}")
    Sperp = orthogonal(S)
    out = []
    for y in projective_points(n, S.q):
        rep = rank_identity_report(S, y, Sperp)
        out.append((y, rep.dim_s_sub_y, rep.rk_yhat))
    return out


def dual_rank_spectrum(S: LinearMatrixSpace, cap: int = DEFAULT_CAP) -> list[int]:
    """Sorted ranks of the evaluation operators, one per projective ``y``."""
    n = S.n
    if S.q ** n > cap:
        raise CapExceeded(f"{S.q}^{n} vectors exceed the enumeration cap {cap}")
    Sperp = orthogonal(S)
    return sorted(evaluation_operator(Sperp, y).rank for y in projective_points(n, S.q))
