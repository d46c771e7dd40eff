"""Compiled matrix kernels over the max-plus semiring.

Drop-in replacement for ``_kernel_py``: same functions, same flat row-major
list convention, same results.  ``mat_mul`` takes an int64 fast path when
every entry is a plain Python int with ``|x| < 2**62`` — that bound keeps
every pairwise sum inside int64 and keeps the internal minus-infinity
sentinel (INT64_MIN) unreachable.  Anything else (floats, fractions, huge
ints) falls back to compiled object loops with identical semantics.
"""

from libc.stdint cimport int64_t
from libc.stdlib cimport free, malloc

from .values import EPS

cdef object _EPS = EPS
cdef int64_t _SENTINEL = <int64_t>(-9223372036854775807LL - 1)
cdef int64_t _BOUND = (<int64_t>1) << 62


cdef int _fill_i64(list src, int64_t* dst, Py_ssize_t n) except -1:
    """Copy a flat list into an int64 buffer; 0 if any entry does not fit."""
    cdef Py_ssize_t i
    cdef object x
    cdef int64_t v
    for i in range(n):
        x = src[i]
        if x is _EPS:
            dst[i] = _SENTINEL
            continue
        if type(x) is not int:
            return 0
        try:
            v = x
        except OverflowError:
            return 0
        if v <= -_BOUND or v >= _BOUND:
            return 0
        dst[i] = v
    return 1


def mat_add(list a, list b, Py_ssize_t size):
    """Entrywise oplus of two flat buffers of the given length."""
    cdef list out = [_EPS] * size
    cdef Py_ssize_t i
    cdef object x, y
    for i in range(size):
        x = a[i]
        y = b[i]
        if x is _EPS:
            out[i] = y
        elif y is _EPS:
            out[i] = x
        else:
            out[i] = x if x >= y else y
    return out


def mat_mul(list a, list b, Py_ssize_t ra, Py_ssize_t ca, Py_ssize_t cb):
    """Max-plus product of an (ra x ca) and a (ca x cb) flat buffer."""
    cdef Py_ssize_t na = ra * ca
    cdef Py_ssize_t nb = ca * cb
    cdef Py_ssize_t nc = ra * cb
    cdef int64_t* A = NULL
    cdef int64_t* B = NULL
    cdef int64_t* C = NULL
    cdef bint fast = False
    cdef Py_ssize_t i, j, k, arow, brow, orow
    cdef int64_t x, s, cur
    cdef list out

    if na > 0 and nb > 0:
        A = <int64_t*> malloc(na * sizeof(int64_t))
        B = <int64_t*> malloc(nb * sizeof(int64_t))
        C = <int64_t*> malloc(nc * sizeof(int64_t))
        if A != NULL and B != NULL and C != NULL:
            fast = _fill_i64(a, A, na) == 1 and _fill_i64(b, B, nb) == 1
    try:
        if not fast:
            return _mat_mul_obj(a, b, ra, ca, cb)
        for i in range(nc):
            C[i] = _SENTINEL
        for i in range(ra):
            arow = i * ca
            orow = i * cb
            for k in range(ca):
                x = A[arow + k]
                if x == _SENTINEL:
                    continue
                brow = k * cb
                for j in range(cb):
                    if B[brow + j] == _SENTINEL:
                        continue
                    s = x + B[brow + j]
                    cur = C[orow + j]
                    if cur == _SENTINEL or s > cur:
                        C[orow + j] = s
        out = [_EPS] * nc
        for i in range(nc):
            if C[i] != _SENTINEL:
                out[i] = C[i]
        return out
    finally:
        if A != NULL:
            free(A)
        if B != NULL:
            free(B)
        if C != NULL:
            free(C)


cdef list _mat_mul_obj(list a, list b, Py_ssize_t ra, Py_ssize_t ca, Py_ssize_t cb):
    cdef list out = [_EPS] * (ra * cb)
    cdef Py_ssize_t i, j, k, arow, brow, orow
    cdef object x, y, s, cur
    for i in range(ra):
        arow = i * ca
        orow = i * cb
        for k in range(ca):
            x = a[arow + k]
            if x is _EPS:
                continue
            brow = k * cb
            for j in range(cb):
                y = b[brow + j]
                if y is _EPS:
                    continue
                s = x + y
                cur = out[orow + j]
                if cur is _EPS or s > cur:
                    out[orow + j] = s
    return out


def diag_mul(list d, list x, Py_ssize_t rows, Py_ssize_t cols):
    """Left-multiply a flat (rows x cols) buffer by diag(d): row i gains d[i]."""
    cdef list out = [_EPS] * (rows * cols)
    cdef Py_ssize_t i, j, base
    cdef object di, v
    for i in range(rows):
        di = d[i]
        if di is _EPS:
            continue
        base = i * cols
        for j in range(cols):
            v = x[base + j]
            if v is not _EPS:
                out[base + j] = di + v
    return out
