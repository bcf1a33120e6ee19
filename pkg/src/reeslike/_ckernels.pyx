# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dense coefficient kernels over Z/n for moduli below 2**31."""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64


cdef u64* _load(list src, Py_ssize_t size) except NULL:
    cdef u64* buf = <u64*> malloc((size if size > 0 else 1) * sizeof(u64))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(size):
        buf[i] = src[i]
    return buf


def mul_mod(list a, list b, u64 n):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, lo
    if la == 0 or lb == 0:
        return []
    cdef u64* x = _load(a, la)
    cdef u64* y = _load(b, lb)
    cdef u64* out = <u64*> malloc((la + lb - 1) * sizeof(u64))
    cdef u64 xi
    cdef list res
    try:
        for i in range(la + lb - 1):
            out[i] = 0
        # products stay below 2**62, so one reduction per product suffices
        for i in range(la):
            xi = x[i]
            if xi == 0:
                continue
            for j in range(lb):
                out[i + j] = (out[i + j] + xi * y[j]) % n
        res = [out[i] for i in range(la + lb - 1)]
    finally:
        free(x)
        free(y)
        free(out)
    return res


def add_mod(list a, list b, u64 n):
    if len(a) < len(b):
        a, b = b, a
    cdef Py_ssize_t i, lb = len(b)
    cdef list out = list(a)
    for i in range(lb):
        out[i] = (<u64> out[i] + <u64> b[i]) % n
    return out


def sub_mod(list a, list b, u64 n):
    cdef Py_ssize_t i, la = len(a), lb = len(b)
    cdef list out = list(a)
    if lb > la:
        out.extend([0] * (lb - la))
    for i in range(lb):
        out[i] = (<u64> out[i] + n - <u64> b[i]) % n
    return out


def scale_mod(list a, u64 c, u64 n):
    cdef Py_ssize_t i, la = len(a)
    cdef list out = [0] * la
    for i in range(la):
        out[i] = (<u64> a[i] * c) % n
    return out
