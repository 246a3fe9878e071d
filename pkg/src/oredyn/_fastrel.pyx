# cython: boundscheck=False, wraparound=False, cdivision=True
"""Packed-bitset relation kernel, compiled twin of _purerel.

Same contract as _purerel for relations of width and height <= 64;
wider inputs raise ValueError and the dispatcher falls back to the
pure implementation.
"""

from libc.stdint cimport uint64_t

DEF MAXN = 64


cdef int _load(object rows, uint64_t* buf) except -1:
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t i
    if n > MAXN:
        raise ValueError("kernel width exceeded")
    for i in range(n):
        buf[i] = <uint64_t> rows[i]
    return <int> n


cdef tuple _dump(uint64_t* buf, int n):
    cdef int i
    return tuple(buf[i] for i in range(n))


def identity(int n):
    if n > MAXN:
        raise ValueError("kernel width exceeded")
    cdef uint64_t buf[MAXN]
    cdef int i
    for i in range(n):
        buf[i] = (<uint64_t> 1) << i
    return _dump(buf, n)


cdef void _compose_raw(uint64_t* g, int ng, uint64_t* f, int nf, uint64_t* out):
    cdef int i, j
    cdef uint64_t mask, acc
    for i in range(nf):
        mask = f[i]
        acc = 0
        j = 0
        while mask:
            if mask & 1:
                acc |= g[j]
            mask >>= 1
            j += 1
        out[i] = acc


def compose(object g_rows, object f_rows):
    cdef uint64_t g[MAXN]
    cdef uint64_t f[MAXN]
    cdef uint64_t out[MAXN]
    cdef int ng = _load(g_rows, g)
    cdef int nf = _load(f_rows, f)
    _compose_raw(g, ng, f, nf, out)
    return _dump(out, nf)


def inverse(object rows, int n_targets):
    if n_targets > MAXN:
        raise ValueError("kernel width exceeded")
    cdef uint64_t buf[MAXN]
    cdef uint64_t out[MAXN]
    cdef int n = _load(rows, buf)
    cdef int i, j
    cdef uint64_t mask
    for j in range(n_targets):
        out[j] = 0
    for i in range(n):
        mask = buf[i]
        j = 0
        while mask:
            if mask & 1:
                out[j] |= (<uint64_t> 1) << i
            mask >>= 1
            j += 1
    return _dump(out, n_targets)


def iterate(object rows, long n):
    if n < 0:
        raise ValueError("iteration count must be >= 0")
    cdef uint64_t buf[MAXN]
    cdef uint64_t acc[MAXN]
    cdef uint64_t nxt[MAXN]
    cdef int size = _load(rows, buf)
    cdef int i
    cdef long k
    for i in range(size):
        acc[i] = (<uint64_t> 1) << i
    for k in range(n):
        _compose_raw(buf, size, acc, size, nxt)
        for i in range(size):
            acc[i] = nxt[i]
    return _dump(acc, size)


def image_mask(object rows):
    cdef uint64_t buf[MAXN]
    cdef int n = _load(rows, buf)
    cdef uint64_t acc = 0
    cdef int i
    for i in range(n):
        acc |= buf[i]
    return acc


def preimage_mask(object rows, object target_mask):
    cdef uint64_t buf[MAXN]
    cdef int n = _load(rows, buf)
    cdef uint64_t target = <uint64_t> target_mask
    cdef uint64_t acc = 0
    cdef int i
    for i in range(n):
        if buf[i] & target:
            acc |= (<uint64_t> 1) << i
    return acc


def diagonal_mask(object rows):
    cdef uint64_t buf[MAXN]
    cdef int n = _load(rows, buf)
    return _diag(buf, n)


cdef uint64_t _diag(uint64_t* buf, int n):
    cdef uint64_t acc = 0
    cdef int i
    for i in range(n):
        if buf[i] & ((<uint64_t> 1) << i):
            acc |= (<uint64_t> 1) << i
    return acc


def periodic_mask(object rows, long n):
    if n < 1:
        raise ValueError("period must be >= 1")
    return diagonal_mask(iterate(rows, n))


def cyclic_mask(object rows, long nmax):
    cdef uint64_t buf[MAXN]
    cdef uint64_t power[MAXN]
    cdef uint64_t nxt[MAXN]
    cdef int size = _load(rows, buf)
    cdef uint64_t acc = 0
    cdef int i
    cdef long k
    for i in range(size):
        power[i] = (<uint64_t> 1) << i
    for k in range(nmax):
        _compose_raw(buf, size, power, size, nxt)
        for i in range(size):
            power[i] = nxt[i]
        acc |= _diag(power, size)
    return acc
