# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled convolution kernel for small-modulus coefficient arithmetic.

Only safe when mod**2 * len fits in int64; the dispatcher in
kernels/__init__.py checks that before calling in here.
"""

from libc.stdlib cimport free, malloc


def poly_mul_trunc(a, b, long long mod, Py_ssize_t out_len):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t m = len(b)
    cdef Py_ssize_t i, j, top
    cdef long long ai
    cdef long long *ca = <long long *> malloc(n * sizeof(long long))
    cdef long long *cb = <long long *> malloc(m * sizeof(long long))
    cdef long long *out = <long long *> malloc(out_len * sizeof(long long))
    if ca == NULL or cb == NULL or out == NULL:
        free(ca); free(cb); free(out)
        raise MemoryError
    try:
        for i in range(n):
            ca[i] = a[i]
        for j in range(m):
            cb[j] = b[j]
        for i in range(out_len):
            out[i] = 0
        for i in range(n):
            ai = ca[i]
            if ai == 0 or i >= out_len:
                continue
            top = m if m < out_len - i else out_len - i
            for j in range(top):
                out[i + j] += ai * cb[j]
        return [out[i] % mod for i in range(out_len)]
    finally:
        free(ca); free(cb); free(out)
