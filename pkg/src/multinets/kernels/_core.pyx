# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels over Z[zeta_N]; see _pycore for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.string cimport memset

cnp.import_array()

BACKEND = "compiled"

ctypedef long long i64

cdef enum:
    MAXPHI = 32
    MAXN = 256


cdef inline void zmul(const i64* a, const i64* b, const i64* poly, int phi, i64* out) noexcept nogil:
    cdef i64 prod[2 * MAXPHI]
    cdef int i, j, k, base
    cdef i64 c
    for i in range(2 * phi - 1):
        prod[i] = 0
    for i in range(phi):
        if a[i] != 0:
            for j in range(phi):
                prod[i + j] += a[i] * b[j]
    for k in range(2 * phi - 2, phi - 1, -1):
        c = prod[k]
        if c != 0:
            base = k - phi
            for i in range(phi):
                prod[base + i] -= c * poly[i]
    for i in range(phi):
        out[i] = prod[i]


cdef inline void cross(const i64* u, const i64* v, const i64* poly, int phi, i64* out) noexcept nogil:
    # u, v, out are 3 x phi row-major
    cdef i64 t1[MAXPHI]
    cdef i64 t2[MAXPHI]
    cdef int q
    zmul(u + phi, v + 2 * phi, poly, phi, t1)
    zmul(u + 2 * phi, v + phi, poly, phi, t2)
    for q in range(phi):
        out[q] = t1[q] - t2[q]
    zmul(u + 2 * phi, v, poly, phi, t1)
    zmul(u, v + 2 * phi, poly, phi, t2)
    for q in range(phi):
        out[phi + q] = t1[q] - t2[q]
    zmul(u, v + phi, poly, phi, t1)
    zmul(u + phi, v, poly, phi, t2)
    for q in range(phi):
        out[2 * phi + q] = t1[q] - t2[q]


cdef inline bint dot_is_zero(const i64* l, const i64* p, const i64* poly, int phi) noexcept nogil:
    cdef i64 acc[MAXPHI]
    cdef i64 t[MAXPHI]
    cdef int c, q
    for q in range(phi):
        acc[q] = 0
    for c in range(3):
        zmul(l + c * phi, p + c * phi, poly, phi, t)
        for q in range(phi):
            acc[q] += t[q]
    for q in range(phi):
        if acc[q] != 0:
            return False
    return True


cdef list _unit_hits(const i64[:, :, ::1] t):
    cdef int n = t.shape[1]
    cdef int phi = t.shape[2]
    cdef int a, b, c, q
    cdef i64 ra[MAXPHI]
    cdef i64 rab[MAXPHI]
    cdef bint ok
    hits = []
    for a in range(n):
        for q in range(phi):
            ra[q] = t[0, a, q] + t[3, 0, q]
        for b in range(n):
            for q in range(phi):
                rab[q] = ra[q] + t[1, b, q]
            for c in range(n):
                ok = True
                for q in range(phi):
                    if rab[q] + t[2, c, q] != 0:
                        ok = False
                        break
                if ok:
                    hits.append((a, b, c))
    return hits


def unit_hits(table):
    cdef cnp.ndarray arr = np.ascontiguousarray(table, dtype=np.int64)
    if arr.shape[2] > MAXPHI:
        raise ValueError("phi too large for compiled kernel")
    return _unit_hits(arr)


def meet_incidence(lines, poly):
    cdef cnp.ndarray larr = np.ascontiguousarray(lines, dtype=np.int64)
    cdef cnp.ndarray parr = np.ascontiguousarray(poly, dtype=np.int64)
    cdef int L = larr.shape[0]
    cdef int phi = parr.shape[0] - 1
    if phi > MAXPHI:
        raise ValueError("phi too large for compiled kernel")
    cdef Py_ssize_t P = L * (L - 1) // 2
    pairs_np = np.zeros((P, 2), dtype=np.int64)
    valid_np = np.zeros(P, dtype=np.uint8)
    inc_np = np.zeros((P, L), dtype=np.uint8)
    cdef i64[:, ::1] pairs = pairs_np
    cdef unsigned char[::1] valid = valid_np
    cdef unsigned char[:, ::1] inc = inc_np
    cdef const i64* lp = <const i64*> cnp.PyArray_DATA(larr)
    cdef const i64* pp = <const i64*> cnp.PyArray_DATA(parr)
    cdef i64 pt[3 * MAXPHI]
    cdef int i, j, l, q
    cdef Py_ssize_t p = 0
    cdef bint nz
    cdef int stride = 3 * phi
    with nogil:
        for i in range(L):
            for j in range(i + 1, L):
                pairs[p, 0] = i
                pairs[p, 1] = j
                cross(lp + i * stride, lp + j * stride, pp, phi, pt)
                nz = False
                for q in range(3 * phi):
                    if pt[q] != 0:
                        nz = True
                        break
                if nz:
                    valid[p] = 1
                    for l in range(L):
                        if l == i or l == j or dot_is_zero(lp + l * stride, pt, pp, phi):
                            inc[p, l] = 1
                p += 1
    return pairs_np, valid_np, inc_np


cdef void det3(const int* r0, const int* r1, const int* r2, int c0, int c1, int c2,
               int N, i64* g, int sign) noexcept nogil:
    g[(r0[c0] + r1[c1] + r2[c2]) % N] += sign
    g[(r0[c1] + r1[c2] + r2[c0]) % N] += sign
    g[(r0[c2] + r1[c0] + r2[c1]) % N] += sign
    g[(r0[c0] + r1[c2] + r2[c1]) % N] -= sign
    g[(r0[c1] + r1[c0] + r2[c2]) % N] -= sign
    g[(r0[c2] + r1[c1] + r2[c0]) % N] -= sign


def triple_scan(int n, int N, poly, power_table, Py_ssize_t budget):
    cdef cnp.ndarray parr = np.ascontiguousarray(poly, dtype=np.int64)
    cdef cnp.ndarray tarr = np.ascontiguousarray(power_table, dtype=np.int64)
    cdef int phi = parr.shape[0] - 1
    if phi > MAXPHI or N > MAXN:
        raise ValueError("field too large for compiled kernel")
    cdef const i64* pt = <const i64*> cnp.PyArray_DATA(tarr)
    cdef int s = N // n
    cdef Py_ssize_t m = n * n * n
    cdef Py_ssize_t total = (m - 1) * (m - 2) // 2
    cdef Py_ssize_t P = total if total < budget else budget
    pairs_np = np.zeros((P, 2), dtype=np.int64)
    counts_np = np.zeros(P, dtype=np.int64)
    cdef i64[:, ::1] pairs = pairs_np
    cdef i64[::1] counts = counts_np
    # T[i][e][q] for i < 4, e < n, q < phi
    table_np = np.zeros((4, n, phi), dtype=np.int64)
    cdef i64[:, :, ::1] T = table_np
    cdef i64 g[4][MAXN]
    cdef int rows[3][4]
    cdef int cols[4][3]
    cdef int i, e, t, q, a, b, c, shift, idx, r, col
    cdef Py_ssize_t j, k, p = 0
    cdef i64 cnt, coef
    cdef i64 ra[MAXPHI]
    cdef i64 rab[MAXPHI]
    cdef bint nz, ok
    for i in range(4):
        col = 0
        for t in range(4):
            if t != i:
                cols[i][col] = t
                col += 1
    for t in range(4):
        rows[0][t] = 0
    with nogil:
        j = 1
        while j < m and p < P:
            idx = <int> j
            rows[1][0] = ((idx // (n * n)) * s) % N
            rows[1][1] = (((idx // n) % n) * s) % N
            rows[1][2] = ((idx % n) * s) % N
            rows[1][3] = 0
            k = j + 1
            while k < m and p < P:
                idx = <int> k
                rows[2][0] = ((idx // (n * n)) * s) % N
                rows[2][1] = (((idx // n) % n) * s) % N
                rows[2][2] = ((idx % n) * s) % N
                rows[2][3] = 0
                pairs[p, 0] = j
                pairs[p, 1] = k
                for i in range(4):
                    memset(g[i], 0, N * sizeof(i64))
                    det3(rows[0], rows[1], rows[2], cols[i][0], cols[i][1], cols[i][2],
                         N, g[i], -1 if i % 2 else 1)
                nz = False
                for i in range(4):
                    for e in range(n):
                        shift = s * e
                        for q in range(phi):
                            T[i, e, q] = 0
                        for t in range(N):
                            coef = g[i][t]
                            if coef != 0:
                                r = (t + shift) % N
                                for q in range(phi):
                                    T[i, e, q] += coef * pt[r * phi + q]
                    for q in range(phi):
                        if T[i, 0, q] != 0:
                            nz = True
                if not nz:
                    counts[p] = -1
                    p += 1
                    k += 1
                    continue
                cnt = 0
                for a in range(n):
                    for q in range(phi):
                        ra[q] = T[0, a, q] + T[3, 0, q]
                    for b in range(n):
                        for q in range(phi):
                            rab[q] = ra[q] + T[1, b, q]
                        for c in range(n):
                            ok = True
                            for q in range(phi):
                                if rab[q] + T[2, c, q] != 0:
                                    ok = False
                                    break
                            if ok:
                                cnt += 1
                counts[p] = cnt
                p += 1
                k += 1
            j += 1
    return pairs_np, counts_np
