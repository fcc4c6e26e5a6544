# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``_kernels_py.py`` for the reference semantics."""
from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef int64_t* _carray(seq, Py_ssize_t n) except NULL:
    cdef int64_t* buf = <int64_t*> malloc(max(n, 1) * sizeof(int64_t))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = seq[i]
    return buf


def apply_table(table, inp, out):
    cdef Py_ssize_t N = len(inp), i
    cdef int64_t* t = _carray(table, len(table))
    cdef int64_t* ip = _carray(inp, N)
    cdef int64_t* op = _carray(out, len(out))
    try:
        return [op[t[ip[i]]] for i in range(N)]
    finally:
        free(t); free(ip); free(op)


def count_fixed_tables(inp, out, Py_ssize_t N, int64_t qm):
    cdef int64_t* ip = _carray(inp, N)
    cdef int64_t* op = _carray(out, qm)
    cdef int64_t* T = <int64_t*> malloc(N * sizeof(int64_t))
    cdef Py_ssize_t x, k
    cdef long long count = 0
    cdef bint ok
    if T == NULL:
        free(ip); free(op)
        raise MemoryError()
    try:
        for x in range(N):
            T[x] = 0
        while True:
            ok = True
            for x in range(N):
                if op[T[ip[x]]] != T[x]:
                    ok = False
                    break
            if ok:
                count += 1
            # odometer, last cell most significant to match itertools.product order
            k = N - 1
            while k >= 0:
                T[k] += 1
                if T[k] < qm:
                    break
                T[k] = 0
                k -= 1
            if k < 0:
                break
        return count
    finally:
        free(ip); free(op); free(T)


def induced_map(u, v, int64_t qm):
    cdef Py_ssize_t n = len(u), i
    cdef int64_t* uu = _carray(u, n)
    cdef int64_t* vv = _carray(v, n)
    cdef int64_t* M = <int64_t*> malloc(qm * sizeof(int64_t))
    cdef int64_t a, b
    try:
        for i in range(qm):
            M[i] = -1
        for i in range(n):
            a = uu[i]
            b = vv[i]
            if M[a] < 0:
                M[a] = b
            elif M[a] != b:
                return None
        return [M[i] for i in range(qm)]
    finally:
        free(uu); free(vv); free(M)


def orbit_labels(gens_inp, gens_out, Py_ssize_t N, int64_t qm):
    cdef Py_ssize_t G = len(gens_inp), gi, x, head, tail
    cdef int64_t total = 1
    for x in range(N):
        total *= qm
    cdef cnp.ndarray[cnp.int64_t, ndim=1] labels = np.full(total, -1, dtype=np.int64)
    cdef int64_t* lab = <int64_t*> labels.data
    cdef int64_t* ins = <int64_t*> malloc(max(G * N, 1) * sizeof(int64_t))
    cdef int64_t* outs = <int64_t*> malloc(max(G * qm, 1) * sizeof(int64_t))
    cdef int64_t* queue = <int64_t*> malloc(total * sizeof(int64_t))
    cdef int64_t* powers = <int64_t*> malloc(N * sizeof(int64_t))
    cdef int64_t* digits = <int64_t*> malloc(N * sizeof(int64_t))
    cdef int64_t start, idx, r, img, n_orbits = 0
    cdef Py_ssize_t level_end
    if ins == NULL or outs == NULL or queue == NULL or powers == NULL or digits == NULL:
        free(ins); free(outs); free(queue); free(powers); free(digits)
        raise MemoryError()
    try:
        for gi in range(G):
            for x in range(N):
                ins[gi * N + x] = gens_inp[gi][x]
            for x in range(qm):
                outs[gi * qm + x] = gens_out[gi][x]
        powers[0] = 1
        for x in range(1, N):
            powers[x] = powers[x - 1] * qm
        for start in range(total):
            if lab[start] >= 0:
                continue
            lab[start] = n_orbits
            head = 0
            tail = 1
            queue[0] = start
            # level-synchronous: each pass expands exactly the previous level
            while head < tail:
                level_end = tail
                while head < level_end:
                    idx = queue[head]
                    head += 1
                    r = idx
                    for x in range(N):
                        digits[x] = r % qm
                        r = r // qm
                    for gi in range(G):
                        img = 0
                        for x in range(N):
                            img += outs[gi * qm + digits[ins[gi * N + x]]] * powers[x]
                        if lab[img] < 0:
                            lab[img] = n_orbits
                            queue[tail] = img
                            tail += 1
            n_orbits += 1
        return labels, n_orbits
    finally:
        free(ins); free(outs); free(queue); free(powers); free(digits)
