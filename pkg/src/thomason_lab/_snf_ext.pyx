# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""int64 elimination kernel; raises OverflowError so the caller can redo it exactly."""

from libc.stdint cimport int64_t

cdef extern from *:
    """
    static inline int mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    bint mul_ovf(long long a, long long b, long long *r) nogil
    bint sub_ovf(long long a, long long b, long long *r) nogil


cdef inline int64_t iabs(int64_t v) nogil:
    return -v if v < 0 else v


cdef inline int64_t floordiv(int64_t a, int64_t b) nogil:
    cdef int64_t q = a // b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef int axpy_row(int64_t[:, ::1] A, Py_ssize_t dst, Py_ssize_t src, int64_t q, Py_ssize_t start) nogil:
    cdef Py_ssize_t j, n = A.shape[1]
    cdef long long prod, out
    for j in range(start, n):
        if A[src, j] != 0:
            if mul_ovf(q, A[src, j], &prod) or sub_ovf(A[dst, j], prod, &out):
                return 1
            A[dst, j] = out
    return 0


cdef int axpy_col(int64_t[:, ::1] A, Py_ssize_t dst, Py_ssize_t src, int64_t q, Py_ssize_t start) nogil:
    cdef Py_ssize_t i, m = A.shape[0]
    cdef long long prod, out
    for i in range(start, m):
        if A[i, src] != 0:
            if mul_ovf(q, A[i, src], &prod) or sub_ovf(A[i, dst], prod, &out):
                return 1
            A[i, dst] = out
    return 0


cdef void swap_rows(int64_t[:, ::1] A, Py_ssize_t a, Py_ssize_t b) nogil:
    cdef Py_ssize_t j
    cdef int64_t tmp
    if a == b:
        return
    for j in range(A.shape[1]):
        tmp = A[a, j]
        A[a, j] = A[b, j]
        A[b, j] = tmp


cdef void swap_cols(int64_t[:, ::1] A, Py_ssize_t a, Py_ssize_t b) nogil:
    cdef Py_ssize_t i
    cdef int64_t tmp
    if a == b:
        return
    for i in range(A.shape[0]):
        tmp = A[i, a]
        A[i, a] = A[i, b]
        A[i, b] = tmp


def diagonal_entries(int64_t[:, ::1] A):
    """Same contract as the pure-Python kernel; ``A`` is modified in place."""
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t t = 0, i, j, bi, bj
    cdef int64_t best, v, p, q
    cdef bint clean
    cdef int bad = 0
    out = []
    while t < m and t < n:
        best = 0
        bi = bj = -1
        for i in range(t, m):
            for j in range(t, n):
                v = iabs(A[i, j])
                if v != 0 and (best == 0 or v < best):
                    best, bi, bj = v, i, j
                    if best == 1:
                        break
            if best == 1:
                break
        if best == 0:
            break
        if A[bi, bj] == -9223372036854775807 - 1:
            raise OverflowError("pivot at int64 minimum")
        swap_rows(A, t, bi)
        swap_cols(A, t, bj)
        while True:
            p = A[t, t]
            clean = True
            for i in range(t + 1, m):
                if A[i, t] != 0:
                    q = floordiv(A[i, t], p)
                    if q != 0 and axpy_row(A, i, t, q, t):
                        raise OverflowError("int64 overflow in row operation")
                    if A[i, t] != 0:
                        clean = False
            for j in range(t + 1, n):
                if A[t, j] != 0:
                    q = floordiv(A[t, j], p)
                    if q != 0 and axpy_col(A, j, t, q, t):
                        raise OverflowError("int64 overflow in column operation")
                    if A[t, j] != 0:
                        clean = False
            if clean:
                break
            best, bi, bj = iabs(p), t, t
            for i in range(t + 1, m):
                v = iabs(A[i, t])
                if v != 0 and v < best:
                    best, bi, bj = v, i, t
            for j in range(t + 1, n):
                v = iabs(A[t, j])
                if v != 0 and v < best:
                    best, bi, bj = v, t, j
            swap_rows(A, t, bi)
            swap_cols(A, t, bj)
        out.append(A[t, t])
        t += 1
    return out
