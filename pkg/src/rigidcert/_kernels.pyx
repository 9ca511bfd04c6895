# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled int64 kernels.

Every routine mirrors a function of the same name in :mod:`rigidcert._pykernels`.
Arithmetic is checked; any int64 overflow raises :class:`OverflowError` so the
caller can retry on the arbitrary-precision path.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()

cdef extern from *:
    bint __builtin_mul_overflow(int64_t a, int64_t b, int64_t *res) nogil
    bint __builtin_add_overflow(int64_t a, int64_t b, int64_t *res) nogil
    bint __builtin_sub_overflow(int64_t a, int64_t b, int64_t *res) nogil


cdef inline int64_t _gcd(int64_t a, int64_t b) nogil:
    cdef int64_t t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


def matmul(const int64_t[:, :] a, const int64_t[:, :] b):
    cdef Py_ssize_t m = a.shape[0], k = a.shape[1], n = b.shape[1]
    cdef Py_ssize_t i, j, l
    cdef int64_t x, prod
    cdef bint bad = False
    if b.shape[0] != k:
        raise ValueError("inner dimensions differ")
    out_arr = np.zeros((m, n), dtype=np.int64)
    cdef int64_t[:, :] out = out_arr
    with nogil:
        for i in range(m):
            for l in range(k):
                x = a[i, l]
                if x == 0:
                    continue
                for j in range(n):
                    if b[l, j] == 0:
                        continue
                    if __builtin_mul_overflow(x, b[l, j], &prod):
                        bad = True
                        break
                    if __builtin_add_overflow(out[i, j], prod, &out[i, j]):
                        bad = True
                        break
                if bad:
                    break
            if bad:
                break
    if bad:
        raise OverflowError("int64 overflow in matmul")
    return out_arr


cdef bint _make_primitive(int64_t[:, :] m, Py_ssize_t r) nogil:
    cdef Py_ssize_t j, n = m.shape[1]
    cdef int64_t g = 0
    for j in range(n):
        if m[r, j] != 0:
            g = _gcd(g, m[r, j])
            if g == 1:
                return True
    if g > 1:
        for j in range(n):
            m[r, j] = m[r, j] // g
    return True


def rref(const int64_t[:, :] a):
    """Fraction-free Gauss-Jordan elimination with first-nonzero pivoting.

    Returns ``(rows, pivots)``: ``rows`` holds one primitive integer row per
    pivot, and dividing row ``k`` by ``rows[k, pivots[k]]`` gives the k-th
    row of the reduced row echelon form.
    """
    cdef Py_ssize_t nrows = a.shape[0], ncols = a.shape[1]
    work = np.array(a, dtype=np.int64, copy=True)
    cdef int64_t[:, :] m = work
    cdef Py_ssize_t row = 0, c, r, i, j
    cdef int64_t p, q, g, u, v, t
    cdef bint bad = False
    pivots = []
    for c in range(ncols):
        if row >= nrows:
            break
        r = row
        while r < nrows and m[r, c] == 0:
            r += 1
        if r == nrows:
            continue
        if r != row:
            for j in range(ncols):
                t = m[r, j]
                m[r, j] = m[row, j]
                m[row, j] = t
        with nogil:
            for i in range(nrows):
                if i == row or m[i, c] == 0:
                    continue
                p = m[row, c]
                q = m[i, c]
                g = _gcd(p, q)
                p = p // g
                q = q // g
                for j in range(ncols):
                    if __builtin_mul_overflow(p, m[i, j], &u) or \
                            __builtin_mul_overflow(q, m[row, j], &v) or \
                            __builtin_sub_overflow(u, v, &m[i, j]):
                        bad = True
                        break
                if bad:
                    break
                _make_primitive(m, i)
            if not bad:
                _make_primitive(m, row)
                if m[row, c] < 0:
                    for j in range(ncols):
                        m[row, j] = -m[row, j]
        if bad:
            raise OverflowError("int64 overflow in rref")
        pivots.append(c)
        row += 1
    return work[:row].copy(), pivots


def convolve(const int64_t[:, :] a_perms, const int64_t[:] a_coef,
             const int64_t[:, :] b_perms, const int64_t[:] b_coef,
             Py_ssize_t size):
    """Dense product in the group algebra, indexed by lexicographic rank.

    Row ``p`` of ``a_perms`` paired with row ``q`` of ``b_perms`` contributes
    ``a_coef[p] * b_coef[q]`` at the rank of ``i -> p[q[i]]``.
    """
    cdef Py_ssize_t n = a_perms.shape[1]
    cdef Py_ssize_t na = a_perms.shape[0], nb = b_perms.shape[0]
    cdef Py_ssize_t x, y, i, j
    cdef int64_t prod, rank, less
    cdef int64_t comp[32]
    cdef int64_t fact[32]
    cdef bint bad = False
    if n > 20:
        raise ValueError("degree too large for the compiled kernel")
    if b_perms.shape[1] != n:
        raise ValueError("degree mismatch")
    fact[0] = 1
    for i in range(1, n + 1):
        fact[i] = fact[i - 1] * i
    out_arr = np.zeros(size, dtype=np.int64)
    cdef int64_t[:] out = out_arr
    with nogil:
        for x in range(na):
            if a_coef[x] == 0:
                continue
            for y in range(nb):
                if b_coef[y] == 0:
                    continue
                for i in range(n):
                    comp[i] = a_perms[x, b_perms[y, i]]
                rank = 0
                for i in range(n):
                    less = 0
                    for j in range(i + 1, n):
                        if comp[j] < comp[i]:
                            less += 1
                    rank += less * fact[n - 1 - i]
                if __builtin_mul_overflow(a_coef[x], b_coef[y], &prod) or \
                        __builtin_add_overflow(out[rank], prod, &out[rank]):
                    bad = True
                    break
            if bad:
                break
    if bad:
        raise OverflowError("int64 overflow in convolve")
    return out_arr
