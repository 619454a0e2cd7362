"""Dense exact linear algebra over a :class:`~quiveralg.field.Field`.

Gaussian elimination with whole-row numpy updates; every result is exact.
"""

from __future__ import annotations

import numpy as np

from .field import Field


def rref(F: Field, M: np.ndarray, ncols: int | None = None):
    """Reduced row echelon form.

    Pivots are searched only among the first ``ncols`` columns (all by
    default) so augmented systems can be reduced in one pass.

    Returns ``(R, pivots)`` where ``R`` is a new array and ``pivots`` lists
    the pivot column of each nonzero row, in order.
    """
    R = F.reduce(np.array(M, dtype=F.dtype, copy=True))
    m = R.shape[0]
    n = R.shape[1] if ncols is None else ncols
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(R[row:, col] != 0)[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            R[[row, piv]] = R[[piv, row]]
        R[row] = F.reduce(R[row] * F.inv(R[row, col]))
        others = np.nonzero(R[:, col] != 0)[0]
        others = others[others != row]
        if others.size:
            R[others] = F.reduce(R[others] - np.outer(R[others, col], R[row]))
        pivots.append(col)
        row += 1
    return R, pivots


def rank(F: Field, M: np.ndarray) -> int:
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def nullspace(F: Field, M: np.ndarray) -> np.ndarray:
    """Columns spanning ``{v : M v = 0}``, one per free column of ``M``."""
    n = M.shape[1]
    if M.shape[0] == 0:
        return F.eye(n)
    R, pivots = rref(F, M)
    free = [c for c in range(n) if c not in set(pivots)]
    K = F.zeros((n, len(free)))
    for k, c in enumerate(free):
        K[c, k] = F(1)
        for r, pc in enumerate(pivots):
            K[pc, k] = F.neg(R[r, c])
    return K


def row_space_basis(F: Field, M: np.ndarray) -> np.ndarray:
    if M.shape[0] == 0:
        return M.copy()
    R, pivots = rref(F, M)
    return R[: len(pivots)]


def solve(F: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray | None:
    """Some ``X`` with ``A X = B``, or ``None`` if the system is inconsistent."""
    m, n = A.shape
    k = B.shape[1]
    aug = np.concatenate([np.asarray(A, dtype=F.dtype), np.asarray(B, dtype=F.dtype)], axis=1)
    R, pivots = rref(F, aug, ncols=n)
    r = len(pivots)
    if r < m and np.any(R[r:, n:] != 0):
        return None
    X = F.zeros((n, k))
    for row, pc in enumerate(pivots):
        X[pc] = R[row, n:]
    return X


def inverse(F: Field, A: np.ndarray) -> np.ndarray | None:
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    R, pivots = rref(F, np.concatenate([np.asarray(A, dtype=F.dtype), F.eye(n)], axis=1), ncols=n)
    if len(pivots) < n:
        return None
    return R[:, n:]


def is_invertible(F: Field, A: np.ndarray) -> bool:
    return A.shape[0] == A.shape[1] and rank(F, A) == A.shape[0]


def in_span(F: Field, rows: np.ndarray, v: np.ndarray) -> bool:
    """Whether the row vector ``v`` lies in the row span of ``rows``."""
    if rows.shape[0] == 0:
        return not np.any(v != 0)
    return rank(F, np.vstack([rows, v[None, :]])) == rank(F, rows)
