# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled inner loops over dense multiplication / conjugation tables."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def close_subgroup(const int[:, ::1] mul, const unsigned char[::1] seed, const cnp.intp_t[::1] gens):
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t ngens = gens.shape[0]
    out = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] mask = out
    cdef cnp.intp_t[::1] queue = np.empty(n, dtype=np.intp)
    cdef Py_ssize_t head = 0, tail = 0, i, k
    cdef int x, y
    for i in range(n):
        if seed[i]:
            mask[i] = 1
            queue[tail] = i
            tail += 1
    if not mask[0]:
        mask[0] = 1
        queue[tail] = 0
        tail += 1
    while head < tail:
        x = <int>queue[head]
        head += 1
        for k in range(ngens):
            y = mul[x, gens[k]]
            if not mask[y]:
                mask[y] = 1
                queue[tail] = y
                tail += 1
    return out


def transporter_count(const int[:, ::1] conj, const cnp.intp_t[::1] h_members, const unsigned char[::1] k_mask):
    cdef Py_ssize_t n = conj.shape[0]
    cdef Py_ssize_t m = h_members.shape[0]
    cdef Py_ssize_t g, j
    cdef long count = 0
    cdef bint ok
    for g in range(n):
        ok = True
        for j in range(m):
            if not k_mask[conj[g, h_members[j]]]:
                ok = False
                break
        if ok:
            count += 1
    return count


def is_normalized_by(const int[:, ::1] conj, const cnp.intp_t[::1] members, const unsigned char[::1] mask,
                     const cnp.intp_t[::1] by):
    """True when every element of ``by`` conjugates ``members`` into ``mask``."""
    cdef Py_ssize_t a, j
    for a in range(by.shape[0]):
        for j in range(members.shape[0]):
            if not mask[conj[by[a], members[j]]]:
                return False
    return True
