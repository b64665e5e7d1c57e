# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Gaussian-elimination kernel over a prime field.

Mirrors the pure implementation in ``_gfpure``; one of the two is picked
at import time by ``_kernels``.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def rref(a_in, int p):
    """Reduced row echelon form mod p.  Returns (array, pivot column tuple)."""
    cdef cnp.ndarray[cnp.uint8_t, ndim=2, mode="c"] a = np.array(
        a_in, dtype=np.uint8, order="C", copy=True
    )
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t n = a.shape[1]
    cdef Py_ssize_t row = 0, col, i, j, piv
    cdef unsigned int inv, f, fm, tmp
    cdef list pivots = []
    cdef cnp.ndarray[cnp.uint32_t, ndim=1] inv_tab = np.zeros(p, dtype=np.uint32)

    for i in range(1, p):
        inv_tab[i] = pow(i, p - 2, p)

    if m == 0 or n == 0:
        return a, ()

    for col in range(n):
        piv = -1
        for i in range(row, m):
            if a[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != row:
            for j in range(col, n):
                tmp = a[row, j]
                a[row, j] = a[piv, j]
                a[piv, j] = <cnp.uint8_t> tmp
        inv = inv_tab[a[row, col]]
        if inv != 1:
            for j in range(col, n):
                a[row, j] = <cnp.uint8_t> ((a[row, j] * inv) % p)
        for i in range(m):
            if i != row:
                f = a[i, col]
                if f != 0:
                    fm = p - f
                    for j in range(col, n):
                        tmp = a[i, j] + fm * a[row, j]
                        a[i, j] = <cnp.uint8_t> (tmp % p)
        pivots.append(col)
        row += 1
        if row == m:
            break
    return a, tuple(pivots)
