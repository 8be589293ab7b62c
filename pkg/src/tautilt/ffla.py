"""Dense linear algebra over prime fields F_p.

Matrices are numpy int64 arrays with entries in ``range(p)``.  Vectors are
rows: a subspace is stored as the row space of a matrix, and linear maps act
by right multiplication (``v @ M``).
"""

from __future__ import annotations

import numpy as np


def as_field(M, p: int) -> np.ndarray:
    return np.asarray(M, dtype=np.int64) % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def inverse_mod(a: int, p: int) -> int:
    return pow(int(a) % p, p - 2, p)


def rref(M, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p.

    Pivots are searched left to right, so callers control pivot preference by
    ordering columns.

    Returns:
        (R, pivots): R has the same shape as M; pivots lists pivot columns.
    """
    R = as_field(M, p).copy()
    if R.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    m, n = R.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(R[row:, col])[0]
        if nz.size == 0:
            continue
        r = row + int(nz[0])
        if r != row:
            R[[row, r]] = R[[r, row]]
        R[row] = (R[row] * inverse_mod(R[row, col], p)) % p
        others = np.nonzero(R[:, col])[0]
        for o in others:
            if o != row:
                R[o] = (R[o] - R[o, col] * R[row]) % p
        pivots.append(col)
        row += 1
    return R, pivots


def rank(M, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def row_basis(M, p: int) -> np.ndarray:
    """A basis (in RREF) of the row space of M."""
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return zeros(0, M.shape[1] if M.ndim == 2 else 0)
    R, piv = rref(M, p)
    return R[: len(piv)]


def nullspace(M, p: int) -> np.ndarray:
    """Rows spanning ``{x : M @ x = 0}``, one per free column in order."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[1]
    if M.shape[0] == 0:
        return identity(n)
    R, piv = rref(M, p)
    free = [c for c in range(n) if c not in set(piv)]
    N = zeros(len(free), n)
    for k, f in enumerate(free):
        N[k, f] = 1
        for r, pc in enumerate(piv):
            N[k, pc] = (-R[r, f]) % p
    return N


def left_nullspace(M, p: int) -> np.ndarray:
    """Rows spanning ``{v : v @ M = 0}``."""
    M = np.asarray(M, dtype=np.int64)
    return nullspace(M.T, p)


def inverse(M, p: int) -> np.ndarray:
    M = as_field(M, p)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    R, piv = rref(np.hstack([M, identity(n)]), p)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular mod p")
    return R[:, n:]


def solve_left(A, B, p: int) -> np.ndarray:
    """Find X with ``X @ A = B`` where the rows of A are independent.

    Raises ValueError if some row of B is outside the row space of A.
    """
    A = as_field(A, p)
    B = as_field(B, p)
    k = A.shape[0]
    if B.shape[0] == 0:
        return zeros(0, k)
    if k == 0:
        if np.any(B):
            raise ValueError("vector outside row space")
        return zeros(B.shape[0], 0)
    # Solve A^T X^T = B^T via RREF of the augmented system.
    aug = np.hstack([A.T, B.T])
    R, piv = rref(aug, p)
    if any(c >= k for c in piv):
        raise ValueError("vector outside row space")
    if len(piv) != k:
        raise ValueError("rows of A are dependent")
    return R[:k, k:].T.copy()


def complement_indices(U, n: int, p: int) -> list[int]:
    """Standard basis indices extending the row space of U to F_p^n.

    Chosen greedily in index order, so the first standard vector outside the
    running span is always taken.
    """
    if n == 0:
        return []
    U = np.asarray(U, dtype=np.int64).reshape(-1, n)
    basis = row_basis(U, p) if U.shape[0] else zeros(0, n)
    chosen: list[int] = []
    r = basis.shape[0]
    for i in range(n):
        if r == n:
            break
        e = zeros(1, n)
        e[0, i] = 1
        trial = np.vstack([basis, e])
        if rank(trial, p) > r:
            basis = trial
            chosen.append(i)
            r += 1
    return chosen


def quotient_projection(U, n: int, p: int) -> tuple[list[int], np.ndarray]:
    """Coordinates on F_p^n / rowspace(U) relative to a standard complement.

    Returns:
        (indices, Pi): indices of the complement standard vectors and an
        ``n x q`` matrix with ``v @ Pi`` the quotient coordinates of v.
    """
    if n == 0:
        return [], zeros(0, 0)
    U = np.asarray(U, dtype=np.int64).reshape(-1, n)
    Ub = row_basis(U, p) if U.shape[0] else zeros(0, n)
    comp = complement_indices(Ub, n, p)
    C = zeros(len(comp), n)
    for k, i in enumerate(comp):
        C[k, i] = 1
    full = np.vstack([Ub, C])
    Binv = inverse(full, p)
    return comp, Binv[:, Ub.shape[0]:].copy()


def batch_rank(stack: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a stack of matrices, shape (N, m, n) -> (N,)."""
    R = np.asarray(stack, dtype=np.int64) % p
    N, m, n = R.shape
    R = R.copy()
    ranks = np.zeros(N, dtype=np.int64)
    if N == 0 or m == 0 or n == 0:
        return ranks
    inv = np.array([0] + [inverse_mod(a, p) for a in range(1, p)], dtype=np.int64)
    idx = np.arange(N)
    for col in range(n):
        rows = np.arange(m)[None, :]
        eligible = (rows >= ranks[:, None]) & (R[:, :, col] != 0)
        has = eligible.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(eligible, axis=1)
        tgt = np.minimum(ranks, m - 1)
        b = idx[has]
        pr, tr = piv[has], tgt[has]
        rows_p = R[b, pr].copy()
        R[b, pr] = R[b, tr]
        R[b, tr] = (rows_p * inv[rows_p[:, col]][:, None]) % p
        pivot_rows = R[b, tr]
        factors = R[b, :, col].copy()
        factors[np.arange(b.size), tr] = 0
        R[b] = (R[b] - factors[:, :, None] * pivot_rows[:, None, :]) % p
        ranks[b] += 1
        if np.all(ranks >= m):
            break
    return ranks
