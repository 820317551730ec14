"""Exact linear algebra over the rationals on numpy object arrays of Fractions."""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def qmatrix(rows, shape=None) -> np.ndarray:
    """An object array of Fractions from nested sequences (or zeros of ``shape``)."""
    if shape is not None:
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out
    arr = np.array(rows, dtype=object)
    if arr.ndim == 1 and arr.size == 0:
        return arr
    flat = arr.reshape(-1)
    for k in range(flat.size):
        flat[k] = Fraction(flat[k])
    return arr


def zeros(r, c) -> np.ndarray:
    return qmatrix(None, (r, c))


def identity(n) -> np.ndarray:
    out = zeros(n, n)
    for k in range(n):
        out[k, k] = Fraction(1)
    return out


def _sparse_rows(M: np.ndarray) -> list[dict]:
    rows = []
    for r in range(M.shape[0]):
        row = M[r]
        rows.append({c: Fraction(row[c]) for c in np.flatnonzero(row != 0)})
    return rows


def rref(M: np.ndarray):
    """Reduced row echelon form; returns ``(R, pivot_columns)``.

    Elimination runs on sparse row dictionaries with a column index, taking the
    sparsest available row as pivot; the result is the unique reduced form.
    """
    M = np.asarray(M, dtype=object)
    if M.size == 0:
        return np.array(M, dtype=object, copy=True), []
    nrows, ncols = M.shape
    rows = _sparse_rows(M)
    by_col: dict[int, set] = {}
    for r, row in enumerate(rows):
        for c in row:
            by_col.setdefault(c, set()).add(r)
    used = set()
    pivots = []
    pivot_row = {}
    for c in range(ncols):
        cands = [r for r in by_col.get(c, ()) if r not in used]
        if not cands:
            continue
        p = min(cands, key=lambda r: (len(rows[r]), r))
        used.add(p)
        prow = rows[p]
        inv = 1 / prow[c]
        if inv != 1:
            for k in prow:
                prow[k] *= inv
        for r in list(by_col[c]):
            if r == p:
                continue
            row = rows[r]
            f = row[c]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    if k not in row:
                        by_col.setdefault(k, set()).add(r)
                    row[k] = nv
                elif k in row:
                    del row[k]
                    by_col[k].discard(r)
        pivots.append(c)
        pivot_row[c] = p
        if len(pivots) == nrows:
            break
    R = zeros(nrows, ncols)
    for i, c in enumerate(pivots):
        for k, v in rows[pivot_row[c]].items():
            R[i, k] = v
    return R, pivots


def rank(M: np.ndarray) -> int:
    if M.size == 0:
        return 0
    return len(rref(M)[1])


def nullspace(M: np.ndarray) -> np.ndarray:
    """Columns spanning ``{x : M x = 0}``."""
    rows, cols = M.shape
    if rows == 0:
        return identity(cols)
    R, piv = rref(M)
    free = [c for c in range(cols) if c not in piv]
    out = zeros(cols, len(free))
    for j, f in enumerate(free):
        out[f, j] = Fraction(1)
        for r, p in enumerate(piv):
            out[p, j] = -R[r, f]
    return out


def column_basis(M: np.ndarray) -> np.ndarray:
    """Linearly independent columns of M spanning its column space."""
    if M.size == 0:
        return zeros(M.shape[0], 0)
    _, piv = rref(M)
    return M[:, piv]


def solve(B: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Coordinates X with ``B X = V`` for B of full column rank; raises if V is not in the span."""
    n = B.shape[1]
    aug = np.concatenate([B, V], axis=1)
    R, piv = rref(aug)
    if any(p >= n for p in piv):
        raise ValueError("vector not in the column span")
    X = zeros(n, V.shape[1])
    for r, p in enumerate(piv):
        X[p] = R[r, n:]
    return X


def det(M: np.ndarray) -> Fraction:
    n = M.shape[0]
    if n == 0:
        return Fraction(1)
    R = np.array(M, dtype=object, copy=True)
    out = Fraction(1)
    for c in range(n):
        nz = [k for k in range(c, n) if R[k, c] != 0]
        if not nz:
            return Fraction(0)
        p = nz[0]
        if p != c:
            R[[c, p]] = R[[p, c]]
            out = -out
        out *= R[c, c]
        for k in range(c + 1, n):
            if R[k, c] != 0:
                R[k] = R[k] - (R[k, c] / R[c, c]) * R[c]
    return out


def kron(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    ra, ca = A.shape
    rb, cb = B.shape
    out = zeros(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            if A[i, j] != 0:
                out[i * rb:(i + 1) * rb, j * cb:(j + 1) * cb] = A[i, j] * B
    return out


_to_fraction = np.frompyfunc(Fraction, 1, 1)
_INT_BOUND = 1 << 20


def _integral(M: np.ndarray):
    """``M`` as int64 when every entry is an integer of modest size, else None."""
    flat = M.reshape(-1)
    out = np.empty(flat.size, dtype=np.int64)
    for k, x in enumerate(flat):
        if x == 0:
            out[k] = 0
            continue
        if x.denominator != 1 or not -_INT_BOUND < x.numerator < _INT_BOUND:
            return None
        out[k] = x.numerator
    return out.reshape(M.shape)


def matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Exact product; integral operands go through int64 (bounded so no overflow occurs)."""
    if A.shape[1] == 0 or A.shape[0] == 0 or B.shape[1] == 0:
        return zeros(A.shape[0], B.shape[1])
    if A.shape[1] < (1 << 20):
        Ai = _integral(A)
        if Ai is not None:
            Bi = _integral(B)
            if Bi is not None:
                return _to_fraction(Ai @ Bi).astype(object)
    return A.dot(B)


def is_zero(M: np.ndarray) -> bool:
    return all(x == 0 for x in M.reshape(-1))
