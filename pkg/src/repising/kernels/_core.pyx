# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled frontier-sweep and enumeration kernels.

Contracts match `_fallback`; see that module's docstring. Enumeration walks
configurations in Gray-code order so each step is an O(degree) incremental
energy update.
"""

import numpy as np

BACKEND = "compiled"


def attach(double[::1] table, int[::1] slots, double[::1] weights, double h):
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t ne = slots.shape[0]
    out_arr = np.empty(2 * n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, e
    cdef double g
    with nogil:
        for i in range(n):
            g = h
            for e in range(ne):
                if (i >> slots[e]) & 1:
                    g -= weights[e]
                else:
                    g += weights[e]
            out[i] = table[i] + g
            out[n + i] = table[i] - g
    return out_arr


def release(double[::1] table, int j):
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t half = n >> 1
    red_arr = np.empty(half, dtype=np.float64)
    ch_arr = np.zeros(half, dtype=np.uint8)
    cdef double[::1] red = red_arr
    cdef unsigned char[::1] ch = ch_arr
    cdef Py_ssize_t lo = (<Py_ssize_t> 1) << j
    cdef Py_ssize_t mask = lo - 1
    cdef Py_ssize_t i, i0
    cdef double a, b
    with nogil:
        for i in range(half):
            i0 = ((i >> j) << (j + 1)) | (i & mask)
            a = table[i0]
            b = table[i0 | lo]
            if b < a:
                red[i] = b
                ch[i] = 1
            else:
                red[i] = a
    return red_arr, ch_arr


cdef double _initial_energy(double[::1] ew, double[::1] h) nogil:
    # all spins +1
    cdef double e = 0.0
    cdef Py_ssize_t i
    for i in range(ew.shape[0]):
        e += ew[i]
    for i in range(h.shape[0]):
        e += h[i]
    return e


def brute(int n, int[::1] eu, int[::1] ev, double[::1] ew, double[::1] h, double tol):
    cdef Py_ssize_t m = eu.shape[0]
    # CSR adjacency
    indptr_arr = np.zeros(n + 1, dtype=np.int64)
    cdef long long[::1] indptr = indptr_arr
    cdef Py_ssize_t e
    for e in range(m):
        indptr[eu[e] + 1] += 1
        indptr[ev[e] + 1] += 1
    cdef Py_ssize_t i
    for i in range(n):
        indptr[i + 1] += indptr[i]
    nbr_arr = np.zeros(2 * m, dtype=np.int32)
    wn_arr = np.zeros(2 * m, dtype=np.float64)
    fill_arr = indptr_arr[:-1].copy()
    cdef int[::1] nbr = nbr_arr
    cdef double[::1] wn = wn_arr
    cdef long long[::1] fill = fill_arr
    for e in range(m):
        nbr[fill[eu[e]]] = ev[e]
        wn[fill[eu[e]]] = ew[e]
        fill[eu[e]] += 1
        nbr[fill[ev[e]]] = eu[e]
        wn[fill[ev[e]]] = ew[e]
        fill[ev[e]] += 1

    spins_arr = np.ones(n, dtype=np.int8)
    cdef signed char[::1] spins = spins_arr
    cdef Py_ssize_t total = (<Py_ssize_t> 1) << n
    cdef Py_ssize_t idx, b, p, pattern
    cdef Py_ssize_t t
    cdef double energy, best, second, local
    cdef Py_ssize_t best_pattern = 0
    cdef Py_ssize_t count = 0
    cdef int found

    # pass 1: minimum
    energy = _initial_energy(ew, h)
    best = energy
    with nogil:
        for idx in range(1, total):
            t = idx
            b = 0
            while not (t & 1):
                t >>= 1
                b += 1
            local = h[b]
            for p in range(indptr[b], indptr[b + 1]):
                local += wn[p] * spins[nbr[p]]
            energy -= 2.0 * spins[b] * local
            spins[b] = -spins[b]
            if energy < best:
                best = energy

    # pass 2: degeneracy count, first minimizing pattern, second level
    for i in range(n):
        spins[i] = 1
    energy = _initial_energy(ew, h)
    second = np.inf
    pattern = 0
    found = 0
    if energy <= best + tol:
        count += 1
    if energy == best:
        best_pattern = 0
        found = 1
    elif energy - best < second:
        second = energy - best
    with nogil:
        for idx in range(1, total):
            t = idx
            b = 0
            while not (t & 1):
                t >>= 1
                b += 1
            local = h[b]
            for p in range(indptr[b], indptr[b + 1]):
                local += wn[p] * spins[nbr[p]]
            energy -= 2.0 * spins[b] * local
            spins[b] = -spins[b]
            if energy <= best + tol:
                count += 1
                if energy == best and not found:
                    best_pattern = idx ^ (idx >> 1)
                    found = 1
            elif energy - best < second:
                second = energy - best
    return best, int(best_pattern), int(count), float(second)
