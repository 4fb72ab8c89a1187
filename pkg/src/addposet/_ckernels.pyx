# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_pykernels`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t

cnp.import_array()

cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil
    int ctz64 "__builtin_ctzll"(unsigned long long) nogil


cdef inline int words_of(Py_ssize_t n) nogil:
    return 1 if n <= 64 else <int>((n + 63) // 64)


cdef inline bint testbit(const uint64_t[:, ::1] t, Py_ssize_t row, Py_ssize_t b) nogil:
    return (t[row, b >> 6] >> (b & 63)) & 1


def words_for(Py_ssize_t n_elements):
    return words_of(n_elements)


def subset_table(phi_in):
    cdef const uint64_t[:, ::1] phi = np.ascontiguousarray(phi_in, dtype=np.uint64)
    cdef Py_ssize_t n = phi.shape[0], k = phi.shape[1]
    cdef int w = words_of(n)
    out = np.zeros((n, w), dtype=np.uint64)
    cdef uint64_t[:, ::1] o = out
    cdef Py_ssize_t a, b, j
    cdef bint sub
    with nogil:
        for b in range(n):
            for a in range(n):
                sub = True
                for j in range(k):
                    if phi[a, j] & ~phi[b, j]:
                        sub = False
                        break
                if sub:
                    o[b, a >> 6] |= (<uint64_t>1) << (a & 63)
    return out


def transpose_table(table_in, Py_ssize_t n):
    cdef const uint64_t[:, ::1] t = np.ascontiguousarray(table_in, dtype=np.uint64)
    cdef int w = words_of(n)
    out = np.zeros((n, w), dtype=np.uint64)
    cdef uint64_t[:, ::1] o = out
    cdef Py_ssize_t a, b
    with nogil:
        for a in range(n):
            for b in range(n):
                if testbit(t, a, b):
                    o[b, a >> 6] |= (<uint64_t>1) << (a & 63)
    return out


cdef Py_ssize_t collect(const uint64_t[:, ::1] t, Py_ssize_t row, int w,
                        int64_t[::1] buf) nogil:
    cdef Py_ssize_t cnt = 0
    cdef int j
    cdef uint64_t word
    for j in range(w):
        word = t[row, j]
        while word:
            buf[cnt] = (<int64_t>j << 6) + ctz64(word)
            cnt += 1
            word &= word - 1
    return cnt


def axiom_scan(down_in, up_in, Py_ssize_t n):
    cdef const uint64_t[:, ::1] d = np.ascontiguousarray(down_in, dtype=np.uint64)
    cdef const uint64_t[:, ::1] u = np.ascontiguousarray(up_in, dtype=np.uint64)
    cdef int w = words_of(n)
    res_arr = np.zeros((6, 4), dtype=np.int64)
    cdef int64_t[:, ::1] res = res_arr
    buf_arr = np.zeros(max(n, 1), dtype=np.int64)
    cdef int64_t[::1] buf = buf_arr
    cdef Py_ssize_t a, b, c, i, j, cnt, x
    cdef int k
    with nogil:
        for a in range(n):
            if not res[0, 0] and not testbit(d, a, a):
                res[0, 0] = 1; res[0, 1] = a
            if not res[3, 0] and not testbit(d, a, 0):
                res[3, 0] = 1; res[3, 1] = a
        for a in range(n):
            cnt = collect(d, a, w, buf)
            if not res[1, 0]:
                for i in range(cnt):
                    b = buf[i]
                    if b != a and testbit(d, b, a):
                        res[1, 0] = 1; res[1, 1] = a; res[1, 2] = b
                        break
            if not res[2, 0]:
                for i in range(cnt):
                    b = buf[i]
                    for k in range(w):
                        if d[b, k] & ~d[a, k]:
                            res[2, 0] = 1; res[2, 1] = a; res[2, 2] = b
                            res[2, 3] = (<int64_t>k << 6) + ctz64(d[b, k] & ~d[a, k])
                            break
                    if res[2, 0]:
                        break
            if not res[4, 0]:
                for i in range(cnt):
                    for j in range(cnt):
                        x = buf[i] ^ buf[j]
                        if not testbit(d, a, x):
                            res[4, 0] = 1; res[4, 1] = a; res[4, 2] = buf[i]; res[4, 3] = buf[j]
                            break
                    if res[4, 0]:
                        break
            if not res[5, 0]:
                cnt = collect(u, a, w, buf)
                for i in range(cnt):
                    for j in range(cnt):
                        x = a ^ buf[i] ^ buf[j]
                        if not testbit(u, a, x):
                            res[5, 0] = 1; res[5, 1] = a; res[5, 2] = buf[i]; res[5, 3] = buf[j]
                            break
                    if res[5, 0]:
                        break
            if res[1, 0] and res[2, 0] and res[4, 0] and res[5, 0]:
                break
    return res_arr


def order_preserving(tail_basis_in, int dim):
    cdef const uint64_t[:, ::1] tb = np.ascontiguousarray(tail_basis_in, dtype=np.uint64)
    cdef Py_ssize_t n = (<Py_ssize_t>1) << dim
    cdef Py_ssize_t m = tb.shape[1]
    out = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] o = out
    cdef Py_ssize_t s, a, j
    cdef bint ok
    with nogil:
        for s in range(n):
            ok = True
            for a in range(n):
                if popcount64(<uint64_t>(a & s)) & 1:
                    continue
                for j in range(m):
                    if popcount64(tb[a, j] & <uint64_t>s) & 1:
                        ok = False
                        break
                if not ok:
                    break
            o[s] = ok
    return out


def incidence_inverse(table_in, members_in):
    cdef const uint64_t[:, ::1] t = np.ascontiguousarray(table_in, dtype=np.uint64)
    cdef const int64_t[::1] mem = np.ascontiguousarray(members_in, dtype=np.int64)
    cdef Py_ssize_t k = mem.shape[0]
    out = np.zeros(k, dtype=np.int64)
    cdef int64_t[::1] o = out
    cdef Py_ssize_t i, j
    cdef int64_t acc
    cdef int64_t limit = (<int64_t>1) << 62
    cdef bint overflow = False
    if k == 0:
        return out
    with nogil:
        o[0] = 1
        for j in range(1, k):
            acc = 0
            for i in range(j):
                if testbit(t, mem[j], mem[i]):
                    acc += o[i]
            if acc > limit or acc < -limit:
                overflow = True
                break
            o[j] = -acc
    if overflow:
        raise OverflowError("incidence inverse exceeds 62-bit range")
    return out
