"""Compiled scan loops over one RREF pivot profile.

A matrix of Mat_{n,p}(F_q) is addressed by the integer
``sum(v[k] * q**(m-1-k))`` of its row-major vector ``v`` (m = n*p); over F_2
that integer is the bit-packed matrix itself, and elements of a space are
walked in Gray-code order with one XOR per step.  ``full`` is a lookup
table, indexed that way, flagging matrices of rank n.

Every space in the profile is scanned until a full-rank element turns up;
the ones without such an element are written to the output buffers as
(basis row indices, point index).  The checksum is an order-independent
sum of per-space hashes of the same indices.
"""

import numpy as np
from numba import njit

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)


@njit(cache=True)
def _mix(x):
    x = (x ^ (x >> _S30)) * _M1
    x = (x ^ (x >> _S27)) * _M2
    return x ^ (x >> _S31)


@njit(cache=True)
def _space_hash(rows, d, point):
    h = _GOLDEN
    for i in range(d):
        h = _mix(h ^ np.uint64(rows[i]))
    return _mix(h ^ np.uint64(point))


@njit(cache=True)
def _free_slots(m, d, pivots):
    is_pivot = np.zeros(m, np.bool_)
    for i in range(d):
        is_pivot[pivots[i]] = True
    nfree = 0
    for i in range(d):
        for j in range(pivots[i] + 1, m):
            if not is_pivot[j]:
                nfree += 1
    slot_row = np.empty(nfree, np.int64)
    slot_col = np.empty(nfree, np.int64)
    k = 0
    for i in range(d):
        for j in range(pivots[i] + 1, m):
            if not is_pivot[j]:
                slot_row[k] = i
                slot_col[k] = j
                k += 1
    nonpivot = np.empty(m - d, np.int64)
    k = 0
    for j in range(m):
        if not is_pivot[j]:
            nonpivot[k] = j
            k += 1
    return slot_row, slot_col, nonpivot


@njit(cache=True)
def _ctz(t):
    k = 0
    while (t & 1) == 0:
        t >>= 1
        k += 1
    return k


@njit(cache=True)
def scan_profile_gf2(m, d, pivots, full, out_rows, out_point):
    """F_2 scan. Returns (spaces, singular, checksum, elements_checked)."""
    slot_row, slot_col, nonpivot = _free_slots(m, d, pivots)
    nfree = slot_row.shape[0]
    ncos = m - d
    rows = np.empty(max(d, 1), np.int64)
    for i in range(d):
        rows[i] = np.int64(1) << (m - 1 - pivots[i])
    cap = out_point.shape[0]
    spaces = 0
    singular = 0
    checked = 0
    checksum = np.uint64(0)
    nelem = np.int64(1) << d
    for cfg in range(np.int64(1) << nfree):
        if cfg:
            s = _ctz(cfg)
            rows[slot_row[s]] ^= np.int64(1) << (m - 1 - slot_col[s])
        point = np.int64(0)
        for c in range(np.int64(1) << ncos):
            if c:
                point ^= np.int64(1) << (m - 1 - nonpivot[_ctz(c)])
            spaces += 1
            checksum += _space_hash(rows, d, point)
            cur = point
            found = full[cur] != 0
            checked += 1
            t = np.int64(1)
            while not found and t < nelem:
                cur ^= rows[_ctz(t)]
                checked += 1
                found = full[cur] != 0
                t += 1
            if not found:
                if singular < cap:
                    for i in range(d):
                        out_rows[singular, i] = rows[i]
                    out_point[singular] = point
                singular += 1
    return spaces, singular, checksum, checked


@njit(cache=True)
def _index(v, weights):
    s = np.int64(0)
    for k in range(v.shape[0]):
        s += v[k] * weights[k]
    return s


@njit(cache=True)
def scan_profile_generic(m, d, q, pivots, full, out_rows, out_point):
    """Any prime q; vectors are kept as coordinate arrays."""
    slot_row, slot_col, nonpivot = _free_slots(m, d, pivots)
    nfree = slot_row.shape[0]
    ncos = m - d
    weights = np.empty(m, np.int64)
    w = np.int64(1)
    for k in range(m - 1, -1, -1):
        weights[k] = w
        w *= q
    basis = np.zeros((max(d, 1), m), np.int64)
    for i in range(d):
        basis[i, pivots[i]] = 1
    cfg = np.zeros(nfree, np.int64)
    pt = np.zeros(ncos, np.int64)
    coeff = np.zeros(max(d, 1), np.int64)
    point = np.zeros(m, np.int64)
    cur = np.zeros(m, np.int64)
    row_idx = np.empty(max(d, 1), np.int64)
    cap = out_point.shape[0]
    spaces = 0
    singular = 0
    checked = 0
    checksum = np.uint64(0)
    while True:
        for i in range(d):
            row_idx[i] = _index(basis[i], weights)
        for k in range(ncos):
            pt[k] = 0
        point[:] = 0
        while True:
            spaces += 1
            pidx = _index(point, weights)
            checksum += _space_hash(row_idx, d, pidx)
            cur[:] = point
            for i in range(d):
                coeff[i] = 0
            found = full[pidx] != 0
            checked += 1
            while not found:
                # odometer step on coefficients; each digit bump adds one basis row
                k = 0
                while k < d:
                    for j in range(m):
                        cur[j] = (cur[j] + basis[k, j]) % q
                    coeff[k] += 1
                    if coeff[k] < q:
                        break
                    coeff[k] = 0
                    k += 1
                if k == d:
                    break
                checked += 1
                found = full[_index(cur, weights)] != 0
            if not found:
                if singular < cap:
                    for i in range(d):
                        out_rows[singular, i] = row_idx[i]
                    out_point[singular] = pidx
                singular += 1
            k = 0
            while k < ncos:
                pt[k] += 1
                if pt[k] < q:
                    point[nonpivot[k]] = pt[k]
                    break
                pt[k] = 0
                point[nonpivot[k]] = 0
                k += 1
            if k == ncos:
                break
        k = 0
        while k < nfree:
            cfg[k] += 1
            if cfg[k] < q:
                basis[slot_row[k], slot_col[k]] = cfg[k]
                break
            cfg[k] = 0
            basis[slot_row[k], slot_col[k]] = 0
            k += 1
        if k == nfree:
            break
    return spaces, singular, checksum, checked
