# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; semantics match ``qcactus._fallback``."""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


def laurent_matmul(a, b):
    """``out[i + j] += a[i] @ b[j]`` over int64 coefficient stacks."""
    cdef i64[:, :, :] A = np.ascontiguousarray(a, dtype=np.int64)
    cdef i64[:, :, :] B = np.ascontiguousarray(b, dtype=np.int64)
    cdef Py_ssize_t na = A.shape[0], nb = B.shape[0]
    cdef Py_ssize_t r = A.shape[1], k = A.shape[2], c = B.shape[2]
    out_arr = np.zeros((na + nb - 1, r, c), dtype=np.int64)
    cdef i64[:, :, :] out = out_arr
    cdef Py_ssize_t i, j, x, y, z
    cdef i64 v
    for i in range(na):
        for x in range(r):
            for y in range(k):
                v = A[i, x, y]
                if v == 0:
                    continue
                for j in range(nb):
                    for z in range(c):
                        out[i + j, x, z] += v * B[j, y, z]
    return out_arr


def kl_table(lengths, left_mul, left_desc, bruhat, int maxdeg):
    """Kazhdan–Lusztig polynomials by the left-descent recursion (see the fallback)."""
    cdef i64[:] L = np.ascontiguousarray(lengths, dtype=np.int64)
    cdef i64[:, :] M = np.ascontiguousarray(left_mul, dtype=np.int64)
    cdef i64[:] D = np.ascontiguousarray(left_desc, dtype=np.int64)
    cdef cnp.uint8_t[:, :] BR = np.ascontiguousarray(np.asarray(bruhat, dtype=bool).view(np.uint8))
    cdef Py_ssize_t N = L.shape[0]
    cdef int nd = maxdeg + 1
    P_arr = np.zeros((N, N, nd), dtype=np.int64)
    cdef i64[:, :, :] P = P_arr
    zs_arr = np.zeros(N, dtype=np.int64)
    mus_arr = np.zeros(N, dtype=np.int64)
    sh_arr = np.zeros(N, dtype=np.int64)
    cdef i64[:] zs = zs_arr
    cdef i64[:] mus = mus_arr
    cdef i64[:] sh = sh_arr
    cdef Py_ssize_t w, x, z, s, v, sx, t, nz, d
    cdef i64 gap, mu, lv
    cdef bint down
    for x in range(N):
        P[x, x, 0] = 1
    for w in range(N):
        s = D[w]
        if s < 0:
            continue
        v = M[s, w]
        lv = L[v]
        nz = 0
        for z in range(N):
            if not BR[z, v]:
                continue
            gap = lv - L[z]
            if gap <= 0 or gap % 2 == 0 or L[M[s, z]] > L[z]:
                continue
            mu = P[z, v, (gap - 1) // 2]
            if mu != 0:
                zs[nz] = z
                mus[nz] = mu
                sh[nz] = (gap + 1) // 2
                nz += 1
        for x in range(N):
            if not BR[x, w]:
                continue
            sx = M[s, x]
            down = L[sx] < L[x]
            for d in range(nd):
                if down:
                    P[x, w, d] = P[sx, v, d]
                    if d > 0:
                        P[x, w, d] += P[x, v, d - 1]
                else:
                    P[x, w, d] = P[x, v, d]
                    if d > 0:
                        P[x, w, d] += P[sx, v, d - 1]
            for t in range(nz):
                z = zs[t]
                if not BR[x, z]:
                    continue
                for d in range(sh[t], nd):
                    P[x, w, d] -= mus[t] * P[x, z, d - sh[t]]
    return P_arr
