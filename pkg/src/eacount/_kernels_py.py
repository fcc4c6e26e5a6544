"""Pure-Python kernels; same signatures and results as ``_kernels.pyx``.

Group elements reach the kernels as two code maps: ``inp[x]`` is the code of
``P x + a`` and ``out[y]`` the code of ``Q y + b``.  A function is either a
table of codes or its index ``sum(table[x] * qm**x)``.
"""
import itertools

import numpy as np


def apply_table(table, inp, out):
    return [out[table[i]] for i in inp]


def count_fixed_tables(inp, out, N, qm):
    """Brute-force count of tables T with out[T[inp[x]]] == T[x] for all x."""
    count = 0
    rng = range(N)
    for T in itertools.product(range(qm), repeat=N):
        for x in rng:
            if out[T[inp[x]]] != T[x]:
                break
        else:
            count += 1
    return count


def induced_map(u, v, qm):
    """The map u[x] -> v[x] as an array (-1 where undefined), or None if
    some u value is sent to two different v values."""
    M = [-1] * qm
    for a, b in zip(u, v):
        c = M[a]
        if c < 0:
            M[a] = b
        elif c != b:
            return None
    return M


def orbit_labels(gens_inp, gens_out, N, qm):
    """Label every function index by its orbit under the generated group.

    Orbits are numbered by their smallest index; each orbit is closed by a
    level-synchronous BFS from that index.
    """
    total = qm**N
    labels = np.full(total, -1, dtype=np.int64)
    gens = list(zip(gens_inp, gens_out))
    powers = [qm**x for x in range(N)]
    n_orbits = 0
    for start in range(total):
        if labels[start] >= 0:
            continue
        labels[start] = n_orbits
        frontier = [start]
        while frontier:
            nxt = []
            for idx in frontier:
                digits = []
                r = idx
                for _ in range(N):
                    r, d = divmod(r, qm)
                    digits.append(d)
                for inp, out in gens:
                    img = 0
                    for x in range(N):
                        img += out[digits[inp[x]]] * powers[x]
                    if labels[img] < 0:
                        labels[img] = n_orbits
                        nxt.append(img)
            frontier = nxt
        n_orbits += 1
    return labels, n_orbits
