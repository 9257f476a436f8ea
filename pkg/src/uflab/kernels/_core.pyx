# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled family-classification kernel.

Same contract as ``uflab.kernels._fallback.classify_families`` (that module
is the reference); tight C loops instead of numpy vectorization.
"""

import numpy as np

BACKEND = "cython"

FLAG_C1 = 1
FLAG_C2 = 2
FLAG_C3 = 4
FLAG_U1 = 8
FLAG_U2 = 16
FLAG_PROPER = 32


def classify_families(int n):
    """Classify every coalition family on an n-member assembly.

    See the fallback implementation for the encoding and flag meanings.
    """
    if not 1 <= n <= 4:
        raise ValueError("classify_families supports 1 <= n <= 4")
    cdef int m = 1 << n
    cdef unsigned int full = m - 1
    cdef Py_ssize_t count = (<Py_ssize_t>1) << m

    out = np.zeros(count, dtype=np.uint8)
    cdef unsigned char[::1] flags = out

    cdef Py_ssize_t f
    cdef unsigned int fam
    cdef int k, l, j
    cdef bint c1, c2, c3, u1, u2
    cdef bint mk, ml
    cdef unsigned char bits

    for f in range(count):
        fam = <unsigned int>f
        c1 = True
        for k in range(m):
            if ((fam >> k) & 1) == ((fam >> (full ^ k)) & 1):
                c1 = False
                break

        c2 = True
        for k in range(m):
            if not (fam >> k) & 1:
                continue
            for j in range(n):
                if not (k >> j) & 1:
                    if not (fam >> (k | (1 << j))) & 1:
                        c2 = False
                        break
            if not c2:
                break

        c3 = True
        u1 = True
        u2 = True
        for k in range(m):
            mk = (fam >> k) & 1
            for l in range(k, m):
                ml = (fam >> l) & 1
                if mk and ml and not (fam >> (k & l)) & 1:
                    c3 = False
                if ((fam >> (k & l)) & 1) != (mk and ml):
                    u1 = False
                if ((fam >> (k | l)) & 1) != (mk or ml):
                    u2 = False
            if not (c3 or u1 or u2):
                break

        bits = 0
        if c1:
            bits |= FLAG_C1
        if c2:
            bits |= FLAG_C2
        if c3:
            bits |= FLAG_C3
        if u1:
            bits |= FLAG_U1
        if u2:
            bits |= FLAG_U2
        if fam != 0 and not fam & 1:
            bits |= FLAG_PROPER
        flags[f] = bits

    return out
