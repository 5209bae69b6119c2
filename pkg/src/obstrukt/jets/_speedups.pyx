# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel for truncated dense polynomial multiplication."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND_NAME = "cython"


def mul(double[::1] a, double[::1] b, int[::1] I, int[::1] J, int[::1] K,
        Py_ssize_t out_size):
    out = np.zeros(out_size, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t t, n = I.shape[0]
    for t in range(n):
        o[K[t]] += a[I[t]] * b[J[t]]
    return out
