# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled sweep kernel.

Same entry point and semantics as _sweep_py.sweep_chunk; see that module
for the documented contract.  Tables arrive as Python sequences and are
copied into C arrays once per chunk, which is negligible next to the
pattern loop.
"""

from libc.stdlib cimport free, malloc


def sweep_chunk(full_o, full_i, inv_flip_o, inv_flip_i, dtab,
                int m, int k, int e, c0, object count_obj,
                int hi, int mirror, unsigned int diff_field, int profile):
    cdef unsigned long long count = count_obj
    cdef unsigned long long corrected = 0, detected = 0, remaining
    cdef int n = len(full_o)
    cdef Py_ssize_t top = len(inv_flip_o)
    cdef Py_ssize_t dlen = len(dtab)
    cdef int i, j, t, p
    cdef unsigned int acc_o = 0, acc_i = 0, o, s_i, ear_o, ear_i
    cdef unsigned int mask = 0, flips, hit, kill, lsb
    cdef unsigned int one = 1
    cdef unsigned int dmask = (one << m) - 1
    cdef unsigned int km = (one << k) - 1
    cdef int ci_shift = m + k + 1
    cdef int c[40]
    cdef unsigned int fo[64]
    cdef unsigned int fi[64]
    cdef unsigned int *inv_o
    cdef unsigned int *inv_i
    cdef unsigned int *dt

    if count == 0:
        return 0, 0
    if e == 0:
        return 1, 0
    if n > 64 or e > 40:
        raise ValueError("geometry exceeds compiled kernel limits")

    for i in range(n):
        fo[i] = full_o[i]
        fi[i] = full_i[i]
    inv_o = <unsigned int *> malloc(top * sizeof(unsigned int))
    inv_i = <unsigned int *> malloc(top * sizeof(unsigned int))
    dt = <unsigned int *> malloc(dlen * sizeof(unsigned int))
    if inv_o == NULL or inv_i == NULL or dt == NULL:
        free(inv_o); free(inv_i); free(dt)
        raise MemoryError()
    try:
        for i in range(top):
            inv_o[i] = inv_flip_o[i]
            inv_i[i] = inv_flip_i[i]
        for i in range(dlen):
            dt[i] = dtab[i]

        for i in range(e):
            c[i] = c0[i]
            p = c[i]
            acc_o ^= fo[p]
            acc_i ^= fi[p]
            mask |= one << p

        remaining = count
        while True:
            o = acc_o
            s_i = acc_i
            if mirror and (mask >> m):
                kill = ((mask >> ci_shift) & ((mask >> m) ^ diff_field)) & km
                while kill:
                    lsb = kill & (0 - kill)
                    kill ^= lsb
                    j = 0
                    while not (lsb & 1):
                        lsb >>= 1
                        j += 1
                    s_i ^= fi[ci_shift + j]
            if o or s_i:
                detected += 1
            ear_o = o >> 1
            ear_i = s_i >> 1
            if ear_o == 0 or ear_i == 0:
                flips = 0
            else:
                hit = 0
                if profile and not (s_i & 1):
                    hit = dt[(ear_o << k) | ear_i]
                if hit:
                    flips = hit
                elif o & 1:
                    flips = inv_o[ear_o]
                elif s_i & 1:
                    flips = inv_i[ear_i]
                else:
                    flips = dt[(ear_o << k) | ear_i]
            if ((mask & dmask) ^ flips) == 0:
                corrected += 1

            remaining -= 1
            if remaining == 0:
                break

            j = e - 1
            while c[j] == hi - e + j:
                j -= 1
            for t in range(j, e):
                p = c[t]
                acc_o ^= fo[p]
                acc_i ^= fi[p]
                mask ^= one << p
            c[j] += 1
            for t in range(j + 1, e):
                c[t] = c[t - 1] + 1
            for t in range(j, e):
                p = c[t]
                acc_o ^= fo[p]
                acc_i ^= fi[p]
                mask ^= one << p

        return corrected, detected
    finally:
        free(inv_o)
        free(inv_i)
        free(dt)
