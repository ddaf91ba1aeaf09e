# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Signatures mirror ``_kernels_py`` exactly."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline int _popcount(unsigned long long x) nogil:
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


def hadamard_masks(int d):
    """Return every d x d sign pattern (as a bitmask) with orthogonal rows.

    Bit ``d*d - 1 - (r*d + c)`` set means entry (r, c) is -1, so increasing
    mask order is lexicographic order over row-major sign patterns with
    ``+`` before ``-``.
    """
    if d < 1 or d * d > 40:
        raise ValueError(f"hadamard_masks: unsupported order {d}")
    cdef unsigned long long total = 1ULL << (d * d)
    cdef unsigned long long rowmask = (1ULL << d) - 1
    cdef unsigned long long mask
    cdef unsigned long long rows[8]
    cdef int r, s, half = d // 2
    cdef bint ok
    out = []
    if d % 2 == 1 and d > 1:
        return np.zeros(0, dtype=np.uint64)
    mask = 0
    while mask < total:
        for r in range(d):
            rows[r] = (mask >> (d * (d - r - 1))) & rowmask
        ok = True
        for r in range(d):
            if not ok:
                break
            for s in range(r + 1, d):
                if _popcount(rows[r] ^ rows[s]) != half:
                    ok = False
                    break
        if ok:
            out.append(mask)
        mask += 1
    return np.asarray(out, dtype=np.uint64)


def overlap_max_deviation(const double complex[:, ::1] A, const double complex[:, ::1] B,
                          double target):
    """Max over (i, j) of ||<A[:, i], B[:, j]>| - target|, first index on ties."""
    cdef Py_ssize_t n = A.shape[0], na = A.shape[1], nb = B.shape[1]
    cdef Py_ssize_t i, j, k, bi = 0, bj = 0
    cdef double complex acc
    cdef double dev, worst = -1.0
    if B.shape[0] != n:
        raise ValueError(f"overlap_max_deviation: shapes ({A.shape[0]}, {A.shape[1]}) and ({B.shape[0]}, {B.shape[1]})")
    with nogil:
        for i in range(na):
            for j in range(nb):
                acc = 0
                for k in range(n):
                    acc = acc + A[k, i].conjugate() * B[k, j]
                dev = abs(abs(acc) - target)
                if dev > worst:
                    worst = dev
                    bi = i
                    bj = j
    return worst, int(bi), int(bj)


def gram_det_batch(const double complex[:, ::1] V, int d):
    """det(M M^dagger) for each row of V read as a 2 x d coefficient matrix."""
    cdef Py_ssize_t m = V.shape[0], t, k
    cdef double n0, n1
    cdef double complex c
    if V.shape[1] != 2 * d:
        raise ValueError(f"gram_det_batch: rows have length {V.shape[1]}, expected {2 * d}")
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] res = out
    with nogil:
        for t in range(m):
            n0 = 0.0
            n1 = 0.0
            c = 0
            for k in range(d):
                n0 += V[t, k].real * V[t, k].real + V[t, k].imag * V[t, k].imag
                n1 += V[t, d + k].real * V[t, d + k].real + V[t, d + k].imag * V[t, d + k].imag
                c = c + V[t, k].conjugate() * V[t, d + k]
            res[t] = n0 * n1 - (c.real * c.real + c.imag * c.imag)
    return out
