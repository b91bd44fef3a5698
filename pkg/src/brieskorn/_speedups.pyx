# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled arithmetic kernel: per-tuple divisibility invariants.

64-bit fast path only: raises OverflowError whenever an entry or an
intermediate lcm does not fit in an unsigned 64-bit word (or the tuple
is longer than 64), in which case the dispatcher retries with the exact
pure-Python kernel.
"""

from libc.stdint cimport uint64_t

DEF MAX_N = 64

cdef uint64_t U64_MAX = <uint64_t>0xFFFFFFFFFFFFFFFF


cdef inline uint64_t ugcd(uint64_t a, uint64_t b) noexcept nogil:
    cdef uint64_t t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline int ulcm(uint64_t a, uint64_t b, uint64_t *out) noexcept nogil:
    # 0 on success, 1 on overflow; requires a, b >= 1
    cdef uint64_t q = a // ugcd(a, b)
    if q > U64_MAX // b:
        return 1
    out[0] = q * b
    return 0


def invariant_core(entries):
    """Same contract as the pure kernel; OverflowError outside the fast path."""
    cdef Py_ssize_t n = len(entries)
    if n < 2 or n > MAX_N:
        raise OverflowError("tuple length outside compiled fast path")
    cdef uint64_t[MAX_N] vals
    cdef uint64_t[MAX_N + 1] pre_l
    cdef uint64_t[MAX_N + 1] suf_l
    cdef uint64_t[MAX_N + 1] pre_g
    cdef uint64_t[MAX_N + 1] suf_g
    cdef uint64_t[MAX_N] om_l
    cdef uint64_t[MAX_N] om_g
    cdef uint64_t[MAX_N] cg
    cdef uint64_t lmask = 0, gmask = 0, ol = 0, v = 0
    cdef Py_ssize_t i
    for i in range(n):
        v = entries[i]  # raises OverflowError when entry >= 2**64
        if v == 0:
            raise ValueError("entries must be positive")
        vals[i] = v
    pre_l[0] = 1
    pre_g[0] = 0
    for i in range(n):
        if ulcm(pre_l[i], vals[i], &pre_l[i + 1]):
            raise OverflowError("lcm exceeds 64 bits")
        pre_g[i + 1] = ugcd(pre_g[i], vals[i])
    suf_l[n] = 1
    suf_g[n] = 0
    for i in range(n - 1, -1, -1):
        if ulcm(vals[i], suf_l[i + 1], &suf_l[i]):
            raise OverflowError("lcm exceeds 64 bits")
        suf_g[i] = ugcd(vals[i], suf_g[i + 1])
    for i in range(n):
        if ulcm(pre_l[i], suf_l[i + 1], &ol):
            raise OverflowError("lcm exceeds 64 bits")
        om_l[i] = ol
        om_g[i] = ugcd(pre_g[i], suf_g[i + 1])
        cg[i] = ugcd(vals[i], ol)
        if ol % vals[i]:
            lmask |= (<uint64_t>1) << i
        if vals[i] % om_g[i]:
            gmask |= (<uint64_t>1) << i
    return (
        pre_l[n],
        pre_g[n],
        tuple([om_l[i] for i in range(n)]),
        tuple([om_g[i] for i in range(n)]),
        tuple([cg[i] for i in range(n)]),
        lmask,
        gmask,
    )
