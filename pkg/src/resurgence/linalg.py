"""Dense linear algebra over F_p on int64 numpy arrays.

Entries are kept in [0, p); products of two entries must fit in int64, so
p is limited to below 2**31.
"""

from __future__ import annotations

import numpy as np

MAX_PRIME = 2**31


def _as_mod(A, p: int) -> np.ndarray:
    if p >= MAX_PRIME:
        raise ValueError(f"prime {p} too large for int64 elimination")
    A = np.array(A, dtype=np.int64, copy=True)
    if A.ndim != 2:
        A = A.reshape(-1, A.shape[-1] if A.ndim else 1)
    A %= p
    return A


def row_reduce(A, p: int) -> tuple[np.ndarray, list]:
    """Reduced row echelon form of ``A`` mod ``p`` and its pivot columns."""
    A = _as_mod(A, p)
    rows, cols = A.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_mod_p(A, p: int) -> int:
    A = _as_mod(A, p)
    rows, cols = A.shape
    if rows == 0 or cols == 0:
        return 0
    # eliminate below the pivot only; transpose so the short side drives the loop
    if rows > cols:
        A = np.ascontiguousarray(A.T)
        rows, cols = cols, rows
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = A[r, c:] * inv % p
        below = A[r + 1:, c]
        hit = np.flatnonzero(below) + r + 1
        if hit.size:
            A[hit, c:] = (A[hit, c:] - np.outer(A[hit, c], A[r, c:])) % p
        r += 1
    return r


def nullspace_mod_p(A, p: int) -> np.ndarray:
    """Basis of {v : A v = 0} as the rows of the returned array."""
    A = _as_mod(A, p)
    ncols = A.shape[1]
    R, pivots = row_reduce(A, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-R[i, f]) % p
    return basis


def independent_rows(A, p: int) -> list:
    """Indices of a maximal independent set of rows, chosen greedily in order."""
    A = _as_mod(A, p)
    if A.shape[0] == 0:
        return []
    _, pivots = row_reduce(A.T, p)
    return pivots


def inverse_mod_p(A, p: int) -> np.ndarray:
    A = _as_mod(A, p)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix is not square")
    R, pivots = row_reduce(np.hstack([A, np.eye(n, dtype=np.int64)]), p)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular mod p")
    return R[:, n:]


def complete_basis(rows, p: int) -> np.ndarray:
    """Extend independent ``rows`` to a basis of F_p^n with unit vectors."""
    A = _as_mod(rows, p)
    n = A.shape[1]
    current = A
    for i in range(n):
        if current.shape[0] == n:
            break
        e = np.zeros((1, n), dtype=np.int64)
        e[0, i] = 1
        trial = np.vstack([current, e])
        if rank_mod_p(trial, p) == trial.shape[0]:
            current = trial
    return current
