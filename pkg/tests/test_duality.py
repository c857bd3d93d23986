import itertools

import numpy as np
import pytest

from oracles import all_matrices, all_subspaces
from singspace.duality import (
    dual_rank_spectrum,
    evaluation_operator,
    orthogonal,
    projective_points,
    rank_identity_report,
    s_sub_y_via_duality,
    spectrum_table,
)
from singspace.errors import CapExceeded, ZeroVector
from singspace.exactmat import Matrix, matrix_unit, trace_pair
from singspace.gf import FieldCtx
from singspace.spaces import full_space, random_subspace, s_sub_y, span, zero_space
from singspace.structure import exceptional_space

F2, F3 = FieldCtx(2), FieldCtx(3)


def _span_from_vectors(vectors, n, p, q):
    return span([Matrix(np.asarray(v).reshape(n, p), q) for v in vectors], (n, p), q)


def test_orthogonal_trivial_cases():
    assert orthogonal(full_space(2, 3, F3)) == zero_space(3, 2, F3)
    assert orthogonal(zero_space(2, 3, F3)) == full_space(3, 2, F3)


def test_orthogonal_first_row_zero_brute_force():
    S = span([matrix_unit(2, 2, 2, 1, F2), matrix_unit(2, 2, 2, 2, F2)])
    brute = [Matrix(a, F2) for a in all_matrices(2, 2, 2) if all(trace_pair(u, Matrix(a, F2)) == 0 for u in S.basis)]
    second_col_zero = span([matrix_unit(2, 2, 1, 1, F2), matrix_unit(2, 2, 2, 1, F2)])
    assert len(brute) == 4
    assert orthogonal(S) == second_col_zero == span(brute)


def test_orthogonal_pairs_to_zero(rng):
    for n, p, q in [(2, 3, 3), (3, 3, 2), (3, 2, 5)]:
        S = random_subspace(n, p, 4, q, rng)
        Sp = orthogonal(S)
        assert Sp.shape == (p, n)
        assert S.dim + Sp.dim == n * p
        for u, v in itertools.product(S.basis, Sp.basis):
            assert trace_pair(u, v) == 0


@pytest.fixture(scope="module")
def all_mat2_f2_subspaces():
    return [_span_from_vectors(sorted(s), 2, 2, 2) for s in all_subspaces(4, 2)]


def test_double_orthogonality_exhaustive(all_mat2_f2_subspaces):
    assert len(all_mat2_f2_subspaces) == 67
    for S in all_mat2_f2_subspaces:
        assert orthogonal(orthogonal(S)) == S


def test_evaluation_operator_basics(rng):
    Sp = orthogonal(random_subspace(2, 3, 2, F3, rng))
    assert evaluation_operator(Sp, (0, 0)).rank == 0
    empty = evaluation_operator(zero_space(3, 2, F3), (1, 2))
    assert empty.matrix.shape == (3, 0) and empty.rank == 0
    for _ in range(100):
        Sp = orthogonal(random_subspace(2, 3, int(rng.integers(0, 7)), F3, rng))
        y1, y2 = (tuple(int(v) for v in rng.integers(0, 3, 2)) for _ in range(2))
        ysum = tuple((a + b) % 3 for a, b in zip(y1, y2))
        lhs = evaluation_operator(Sp, y1).matrix + evaluation_operator(Sp, y2).matrix
        assert lhs == evaluation_operator(Sp, ysum).matrix


def test_rank_identity_examples():
    full = full_space(2, 2, F3)
    rep = rank_identity_report(full, (1, 0))
    assert (rep.rk_yhat, rep.dim_s_sub_y) == (0, 2)
    rep = rank_identity_report(zero_space(2, 3, F3), (1, 1))
    assert (rep.rk_yhat, rep.dim_s_sub_y) == (3, 0)
    rep = rank_identity_report(exceptional_space().direction, (1, 0))
    assert (rep.rk_yhat, rep.dim_s_sub_y) == (1, 1)
    with pytest.raises(ZeroVector):
        rank_identity_report(full, (0, 0))


def test_projective_points():
    pts = list(projective_points(3, 3))
    assert len(pts) == (27 - 1) // 2
    assert pts == sorted(pts)
    assert all(next(v for v in y if v) == 1 for y in pts)


def test_spectrum_examples():
    assert dual_rank_spectrum(full_space(2, 2, F2)) == [0, 0, 0]
    spec = dual_rank_spectrum(exceptional_space().direction)
    assert len(spec) == 3 and set(spec) <= {0, 1, 2}
    with pytest.raises(CapExceeded):
        dual_rank_spectrum(full_space(3, 3, F2), cap=4)


def test_duality_route_equals_direct_route(all_mat2_f2_subspaces, rng):
    spaces = list(all_mat2_f2_subspaces)
    spaces += [random_subspace(2, 3, int(rng.integers(0, 7)), F3, rng) for _ in range(40)]
    for S in spaces:
        for y in projective_points(S.n, S.q):
            assert s_sub_y_via_duality(S, y) == s_sub_y(S, y)


def test_spectrum_table_consistent(rng):
    for _ in range(20):
        S = random_subspace(3, 3, 6, F2, rng)
        for y, dim_sy, rk in spectrum_table(S):
            assert rk == 3 - dim_sy
