"""Pure numpy implementations of the hot kernels (reference backend)."""

import numpy as np


def laurent_matmul(a, b):
    """Product of Laurent matrices given as int64 coefficient stacks.

    ``a`` has shape ``(na, r, k)``, ``b`` has shape ``(nb, k, c)``; the result
    has shape ``(na + nb - 1, r, c)`` with ``out[d] = sum_{i+j=d} a[i] @ b[j]``.
    """
    na, nb = a.shape[0], b.shape[0]
    out = np.zeros((na + nb - 1, a.shape[1], b.shape[2]), dtype=np.int64)
    for i in range(na):
        ai = a[i]
        if not ai.any():
            continue
        for j in range(nb):
            out[i + j] += ai @ b[j]
    return out


def kl_table(lengths, left_mul, left_desc, bruhat, maxdeg):
    """Kazhdan–Lusztig polynomials by the left-descent recursion.

    Elements are indexed ``0..N-1`` in weakly increasing length.
    ``left_mul[s, w]`` is the index of ``s w``; ``left_desc[w]`` is some ``s``
    with ``s w < w`` (``-1`` for the identity); ``bruhat[x, w]`` is nonzero iff
    ``x <= w``.  Returns ``P`` with ``P[x, w, d]`` the coefficient of ``q^d``.
    """
    lengths = np.asarray(lengths, dtype=np.int64)
    N = lengths.shape[0]
    P = np.zeros((N, N, maxdeg + 1), dtype=np.int64)
    P[np.arange(N), np.arange(N), 0] = 1
    below = np.asarray(bruhat, dtype=bool)
    for w in range(N):
        s = int(left_desc[w])
        if s < 0:
            continue
        v = int(left_mul[s, w])
        sx = left_mul[s]
        c = lengths[sx] < lengths
        a = P[sx, v]
        b = P[:, v]
        out = np.where(c[:, None], a, _qshift(a)) + np.where(c[:, None], _qshift(b), b)
        lv = lengths[v]
        for z in np.flatnonzero(below[:, v]):
            gap = lv - lengths[z]
            if gap <= 0 or gap % 2 == 0 or lengths[left_mul[s, z]] > lengths[z]:
                continue
            mu = P[z, v, (gap - 1) // 2]
            if mu:
                out -= mu * _qshift(P[:, z], (gap + 1) // 2)
        out[~below[:, w]] = 0
        P[:, w] = out
    return P


def _qshift(a, k=1):
    out = np.zeros_like(a)
    if k < a.shape[-1]:
        out[..., k:] = a[..., : a.shape[-1] - k]
    return out
