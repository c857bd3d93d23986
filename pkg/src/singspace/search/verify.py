"""Exhaustive verification of the singular-space dimension bound and of the
classification of singular spaces of maximal dimension."""

from __future__ import annotations

import functools
import logging
import multiprocessing
import time
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from ..duality import spectrum_table
from ..errors import BudgetExceeded, ShapeError
from ..exactmat import Matrix, rank_array
from ..gf import as_field
from ..spaces import AffineMatrixSpace, LinearMatrixSpace, format_space
from ..structure import Status, classify_singular_space
from . import _kernels
from .enumerate import (
    free_slots,
    gaussian_binomial,
    index_vector,
    pivot_profiles,
)

log = logging.getLogger(__name__)

SUPPORTED = frozenset({(2, 2, 2), (2, 2, 3), (2, 3, 2), (2, 2, 5), (3, 3, 2)})
MAX_TABLE = 1 << 20
UNIT_BUFFER = 1 << 16
_MASK = (1 << 64) - 1


@functools.lru_cache(maxsize=None)
def full_rank_table(n: int, p: int, q: int) -> np.ndarray:
    """uint8 flags, indexed by base-q matrix index, marking rank-n matrices."""
    m = n * p
    if q**m > MAX_TABLE:
        raise BudgetExceeded(f"rank table for Mat_{n},{p}(F_{q}) has {q**m} entries (limit {MAX_TABLE})")
    table = np.zeros(q**m, dtype=np.uint8)
    for idx in range(q**m):
        a = np.asarray(index_vector(idx, m, q), dtype=np.int64).reshape(n, p)
        table[idx] = rank_array(a, q) == n
    table.setflags(write=False)
    return table


@dataclass
class ScanResult:
    spaces: int = 0
    singular: list = field(default_factory=list)
    checksum: int = 0
    elements_checked: int = 0

    def merge(self, other: "ScanResult") -> "ScanResult":
        return ScanResult(
            self.spaces + other.spaces,
            self.singular + other.singular,
            (self.checksum + other.checksum) & _MASK,
            self.elements_checked + other.elements_checked,
        )


def _scan_unit(args) -> ScanResult:
    n, p, q, pivots = args
    m = n * p
    d = len(pivots)
    table = full_rank_table(n, p, q)
    piv = np.asarray(pivots, dtype=np.int64)
    out_rows = np.zeros((UNIT_BUFFER, max(d, 1)), dtype=np.int64)
    out_point = np.zeros(UNIT_BUFFER, dtype=np.int64)
    if q == 2:
        spaces, nsing, checksum, checked = _kernels.scan_profile_gf2(m, d, piv, table, out_rows, out_point)
    else:
        spaces, nsing, checksum, checked = _kernels.scan_profile_generic(m, d, q, piv, table, out_rows, out_point)
    if nsing > UNIT_BUFFER:
        raise RuntimeError(f"profile {pivots}: {nsing} singular spaces overflow the unit buffer")
    found = [(tuple(int(x) for x in out_rows[i, :d]), int(out_point[i])) for i in range(nsing)]
    return ScanResult(int(spaces), found, int(checksum), int(checked))


def _decode(n: int, p: int, q: int, pivots, rows, point) -> AffineMatrixSpace:
    m = n * p
    field_ = as_field(q)
    r = np.asarray([index_vector(x, m, q) for x in rows], dtype=np.int64).reshape(len(rows), m)
    direction = LinearMatrixSpace((n, p), field_, r, pivots)
    pt = Matrix(np.asarray(index_vector(point, m, q), dtype=np.int64).reshape(n, p), field_)
    return AffineMatrixSpace(pt, direction)


def _units(n: int, p: int, q: int, d: int) -> list[tuple]:
    m = n * p
    units = [(n, p, q, piv) for piv in pivot_profiles(m, d)]
    # biggest units first so workers finish together
    units.sort(key=lambda u: -len(free_slots(u[3], m)))
    return units


def scan(n: int, p: int, q: int, d: int, jobs: int = 1) -> tuple[ScanResult, list[AffineMatrixSpace]]:
    """Scan every d-dimensional affine space of Mat_{n,p}(F_q) for a rank-n element.

    Returns the merged counts and the spaces without one, sorted by
    canonical form.  Results do not depend on ``jobs``.
    """
    full_rank_table(n, p, q)
    units = _units(n, p, q, d)
    total = ScanResult()
    if jobs <= 1 or len(units) == 1:
        results: Iterable[ScanResult] = map(_scan_unit, units)
    else:
        # compile in the parent so forked workers inherit the machine code
        _scan_unit(units[-1])
        ctx = multiprocessing.get_context("fork")
        pool = ctx.Pool(jobs)
        results = pool.imap_unordered(_scan_unit, units)
    try:
        for r in results:
            total = total.merge(r)
    finally:
        if jobs > 1 and len(units) > 1:
            pool.close()
            pool.join()
    spaces = []
    for rows, point in total.singular:
        # a row's pivot is its leading nonzero coordinate
        piv = tuple(_lead(x, n * p, q) for x in rows)
        spaces.append(_decode(n, p, q, piv, rows, point))
    spaces.sort(key=lambda s: s.key())
    return total, spaces


def _lead(idx: int, m: int, q: int) -> int:
    v = index_vector(idx, m, q)
    return next(k for k, x in enumerate(v) if x)


@dataclass
class VerificationReport:
    mode: str
    n: int
    p: int
    q: int
    target_dim: int
    spaces_scanned: int
    expected_spaces: int
    singular_spaces_found: int
    elements_checked: int
    outcome_histogram: dict[str, int]
    violations: list[dict]
    checksum: str
    buckets: dict[str, list[str]] = field(default_factory=dict)
    spectrum_exceptions: list[dict] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def confirmed(self) -> bool:
        return not self.violations and not self.spectrum_exceptions

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "mode": self.mode,
            "params": {"n": self.n, "p": self.p, "q": self.q, "target_dim": self.target_dim},
            "spaces_scanned": self.spaces_scanned,
            "expected_spaces": self.expected_spaces,
            "singular_spaces_found": self.singular_spaces_found,
            "elements_checked": self.elements_checked,
            "outcome_histogram": dict(sorted(self.outcome_histogram.items())),
            "violations": self.violations,
            "spectrum_exceptions": self.spectrum_exceptions,
            "buckets": {k: v for k, v in sorted(self.buckets.items())},
            "checksum": self.checksum,
            "confirmed": self.confirmed,
        }
        if timing:
            d["wall_time"] = self.wall_time
        return d

    def summary(self) -> str:
        lines = [
            f"mode: {self.mode}",
            f"params: n={self.n} p={self.p} q={self.q} target_dim={self.target_dim}",
            f"spaces_scanned: {self.spaces_scanned} (expected {self.expected_spaces})",
            f"singular_spaces_found: {self.singular_spaces_found}",
            f"elements_checked: {self.elements_checked}",
            "outcome_histogram:",
        ]
        lines += [f"  {k}: {v}" for k, v in sorted(self.outcome_histogram.items())]
        lines.append(f"violations: {len(self.violations)}")
        for v in self.violations:
            lines.append(f"  {v['reason']}: {v['space'].strip().replace(chr(10), ' | ')}")
        if self.mode == "equality":
            lines.append(f"spectrum_exceptions: {len(self.spectrum_exceptions)}")
        lines.append(f"checksum: {self.checksum}")
        lines.append(f"confirmed: {'yes' if self.confirmed else 'NO'}")
        return "\n".join(lines)


def check_budget(n: int, p: int, q: int):
    if n > p:
        raise ShapeError(f"need n <= p, got n={n}, p={p}")
    if (n, p, q) not in SUPPORTED:
        supported = ", ".join(str(t) for t in sorted(SUPPORTED))
        raise BudgetExceeded(f"(n, p, q) = {(n, p, q)} is outside the supported table: {supported}")


def _expected(n, p, q, d) -> int:
    return gaussian_binomial(n * p, d, q) * q ** (n * p - d)


def verify_dimension_bound(n: int, p: int, q: int, jobs: int = 1) -> VerificationReport:
    """Check that every affine space of dimension p(n-1)+1 contains a rank-n matrix."""
    check_budget(n, p, q)
    start = time.perf_counter()
    d = p * (n - 1) + 1
    total, singular = scan(n, p, q, d, jobs)
    violations = [{"reason": "singular space above the bound", "space": format_space(s)} for s in singular]
    hist = {"HasFullRank": total.spaces - len(singular)}
    if singular:
        hist["Singular"] = len(singular)
    return VerificationReport(
        mode="bound",
        n=n, p=p, q=q, target_dim=d,
        spaces_scanned=total.spaces,
        expected_spaces=_expected(n, p, q, d),
        singular_spaces_found=len(singular),
        elements_checked=total.elements_checked,
        outcome_histogram=hist,
        violations=violations,
        checksum=f"{total.checksum:016x}",
        wall_time=time.perf_counter() - start,
    )


def spectrum_check(space: AffineMatrixSpace) -> list[dict]:
    """Rank-spectrum facts for a singular space of maximal dimension."""
    S = space.direction
    p = S.p
    bad = []
    for y, dim_sy, rk in spectrum_table(S):
        if dim_sy not in (0, p - 1, p) or rk not in (0, 1, p) or rk != p - dim_sy:
            bad.append({"y": list(y), "dim_s_sub_y": dim_sy, "rank_yhat": rk, "space": format_space(space)})
    return bad


def outcome_key(outcome) -> str:
    if outcome.status is Status.CLASSIFIED:
        return "+".join(outcome.witness_kinds)
    return outcome.status.value


def verify_equality_classification(n: int, p: int, q: int, jobs: int = 1) -> VerificationReport:
    """Classify every singular affine space of dimension p(n-1)."""
    check_budget(n, p, q)
    start = time.perf_counter()
    d = p * (n - 1)
    total, singular = scan(n, p, q, d, jobs)
    hist = {"HasFullRank": total.spaces - len(singular)}
    buckets: dict[str, list[str]] = {}
    violations = []
    spectrum_bad = []
    for space in singular:
        outcome = classify_singular_space(space)
        key = outcome_key(outcome)
        hist[key] = hist.get(key, 0) + 1
        buckets.setdefault(key, []).append(format_space(space))
        if outcome.status is not Status.CLASSIFIED:
            violations.append({"reason": key, "space": format_space(space)})
        else:
            spectrum_bad += spectrum_check(space)
    log.info("classified %d singular spaces at %s", len(singular), (n, p, q))
    return VerificationReport(
        mode="equality",
        n=n, p=p, q=q, target_dim=d,
        spaces_scanned=total.spaces,
        expected_spaces=_expected(n, p, q, d),
        singular_spaces_found=len(singular),
        elements_checked=total.elements_checked,
        outcome_histogram=hist,
        violations=violations,
        checksum=f"{total.checksum:016x}",
        buckets=buckets,
        spectrum_exceptions=spectrum_bad,
        wall_time=time.perf_counter() - start,
    )


def find_counterexample(n: int, p: int, q: int, d: int, claim: str = "theorem", jobs: int = 1) -> AffineMatrixSpace | None:
    """First space (in canonical order) of dimension ``d`` refuting ``claim``.

    ``claim="theorem"``: no singular space above dimension p(n-1), and every
    singular space at p(n-1) is classified.  ``claim="kernel"``: as above,
    but the exceptional F_2 case counts as a refutation.
    """
    if claim not in ("theorem", "kernel"):
        raise ValueError(f"unknown claim {claim!r}")
    if n > p:
        raise ShapeError(f"need n <= p, got n={n}, p={p}")
    critical = p * (n - 1)
    if d < critical:
        return None
    _, singular = scan(n, p, q, d, jobs)
    for space in singular:
        if d > critical:
            return space
        outcome = classify_singular_space(space)
        if outcome.status is not Status.CLASSIFIED:
            return space
        if claim == "kernel" and outcome.witness_kinds == ("ExceptionalF2",):
            return space
    return None
