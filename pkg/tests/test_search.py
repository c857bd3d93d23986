import itertools
import json
from pathlib import Path

import pytest

from oracles import all_subspaces, gaussian_binomial_by_formula
from singspace.errors import BudgetExceeded, ShapeError
from singspace.exactmat import Matrix, rank
from singspace.gf import FieldCtx
from singspace.search import (
    enumerate_affine_spaces,
    enumerate_linear_subspaces,
    find_counterexample,
    gaussian_binomial,
    scan,
    space_fingerprint,
    verify_dimension_bound,
    verify_equality_classification,
)
from singspace.spaces import format_space, max_rank, transform
from singspace.structure import exceptional_space

EXPECTED = json.loads((Path(__file__).parent / "data" / "expected_reports.json").read_text())


@pytest.mark.parametrize("m, d, q", [(4, 2, 2), (9, 6, 2), (4, 2, 5), (6, 3, 3), (5, 0, 7), (5, 5, 7)])
def test_gaussian_binomial(m, d, q):
    assert gaussian_binomial(m, d, q) == gaussian_binomial_by_formula(m, d, q)


@pytest.mark.parametrize("m, q", [(4, 2), (3, 3)])
def test_gaussian_binomial_counts_subspaces(m, q):
    sizes = [len(s) for s in all_subspaces(m, q)]
    for d in range(m + 1):
        assert sizes.count(q**d) == gaussian_binomial(m, d, q)


def test_linear_stream_examples():
    F2 = FieldCtx(2)
    assert len(list(enumerate_linear_subspaces((2, 2), 0, F2))) == 1
    assert len(list(enumerate_linear_subspaces((2, 2), 4, F2))) == 1
    spaces = list(enumerate_linear_subspaces((2, 2), 2, F2))
    assert len(spaces) == 35 == (2**4 - 1) * (2**3 - 1) // ((2**2 - 1) * (2 - 1))
    assert len(set(spaces)) == 35


@pytest.mark.parametrize("n, p, q", [(2, 2, 2), (2, 2, 3), (2, 3, 2)])
def test_linear_stream_cardinalities(n, p, q):
    for d in range(n * p + 1):
        spaces = list(enumerate_linear_subspaces((n, p), d, q))
        assert len(spaces) == gaussian_binomial_by_formula(n * p, d, q)
        assert len(set(spaces)) == len(spaces)
        assert all(s.dim == d for s in spaces)


def test_affine_stream():
    assert len(list(enumerate_affine_spaces(2, 2, 2, 3))) == 15 * 2
    for d in range(5):
        spaces = list(enumerate_affine_spaces(2, 2, 2, d))
        assert len(spaces) == gaussian_binomial(4, d, 2) * 2 ** (4 - d)
        assert len(set(spaces)) == len(spaces)
        assert all(s.dim == d for s in spaces)


@pytest.mark.parametrize("n, p, q, d", [(2, 2, 2, 2), (2, 2, 3, 2), (2, 3, 2, 3), (2, 3, 2, 4), (2, 2, 5, 3)])
def test_compiled_scan_matches_python_enumeration(n, p, q, d):
    total, singular = scan(n, p, q, d)
    spaces = list(enumerate_affine_spaces(n, p, q, d))
    assert total.spaces == len(spaces)
    assert total.checksum == sum(space_fingerprint(s) for s in spaces) % 2**64
    expected = sorted((s for s in spaces if max_rank(s) < n), key=lambda s: s.key())
    assert singular == expected


def test_scan_checks_every_element_of_singular_spaces():
    # only singular spaces are walked to the end: 2^2 elements each
    total, singular = scan(2, 2, 2, 2)
    assert len(singular) == 15
    assert total.elements_checked >= 4 * len(singular) + (total.spaces - len(singular))


@pytest.mark.parametrize("n, p, q", [(2, 2, 2), (2, 2, 3), (2, 3, 2), (2, 2, 5)])
def test_equality_counts_match_theory(n, p, q):
    report = verify_equality_classification(n, p, q)
    hist = report.outcome_histogram
    # each witness line determines exactly one linear space of dimension p(n-1)
    assert hist.get("LeftKernelVector", 0) == (q**n - 1) // (q - 1)
    assert hist.get("RightKernelVector", 0) == ((q**p - 1) // (q - 1) if n == p else 0)
    assert report.confirmed


def test_exceptional_bucket_is_one_orbit():
    GL2 = [Matrix(list(m), 2, shape=(2, 2)) for m in itertools.product(range(2), repeat=4)]
    GL2 = [g for g in GL2 if rank(g) == 2]
    X = exceptional_space()
    orbit = {format_space(transform(X, P, Q)) for P in GL2 for Q in GL2}
    report = verify_equality_classification(2, 2, 2)
    assert set(report.buckets["ExceptionalF2"]) == orbit
    assert len(orbit) == 9


def test_find_counterexample():
    assert find_counterexample(2, 2, 2, 3) is None
    assert find_counterexample(2, 2, 2, 2) is None
    found = find_counterexample(2, 2, 2, 2, claim="kernel")
    assert found is not None and not found.is_linear and max_rank(found) == 1
    assert find_counterexample(2, 3, 2, 3) is None
    assert find_counterexample(2, 2, 3, 1) is None


def test_budget_enforced():
    with pytest.raises(BudgetExceeded):
        verify_dimension_bound(3, 3, 3)
    with pytest.raises(BudgetExceeded):
        verify_equality_classification(2, 4, 2)
    with pytest.raises(ShapeError):
        verify_dimension_bound(3, 2, 2)


@pytest.mark.parametrize("params", ["2,2,2", "2,2,3", "2,3,2", "2,2,5"])
def test_reports_match_frozen_baseline(params):
    n, p, q = (int(x) for x in params.split(","))
    assert verify_dimension_bound(n, p, q).to_dict() == EXPECTED[params]["bound"]
    assert verify_equality_classification(n, p, q).to_dict() == EXPECTED[params]["equality"]


def test_parallel_scan_is_deterministic():
    one = verify_equality_classification(2, 3, 2, jobs=1).to_dict()
    assert verify_equality_classification(2, 3, 2, jobs=3).to_dict() == one
