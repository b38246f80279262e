# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled configuration-analysis kernel.

Same contract as switchgraph._kernel_py.analyze_configuration; the per-instance
scans run as C loops, the pair sort stays on numpy's C qsort.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND_NAME = "compiled"


def analyze_configuration(mate_arr, vertex_of_arr, n_in):
    cdef cnp.int64_t[::1] mate = np.ascontiguousarray(mate_arr, dtype=np.int64)
    cdef cnp.int64_t[::1] vertex_of = np.ascontiguousarray(vertex_of_arr, dtype=np.int64)
    cdef Py_ssize_t N = mate.shape[0]
    cdef Py_ssize_t E = N // 2
    cdef cnp.int64_t n = n_in

    h1_arr = np.empty(E, dtype=np.int64)
    h2_arr = np.empty(E, dtype=np.int64)
    u_arr = np.empty(E, dtype=np.int64)
    v_arr = np.empty(E, dtype=np.int64)
    codes_arr = np.empty(E, dtype=np.int64)
    cdef cnp.int64_t[::1] h1 = h1_arr
    cdef cnp.int64_t[::1] h2 = h2_arr
    cdef cnp.int64_t[::1] u = u_arr
    cdef cnp.int64_t[::1] v = v_arr
    cdef cnp.int64_t[::1] codes = codes_arr

    cdef Py_ssize_t i, j = 0
    cdef cnp.int64_t m
    for i in range(N):
        m = mate[i]
        if m > i:
            h1[j] = i
            h2[j] = m
            u[j] = vertex_of[i]
            v[j] = vertex_of[m]
            codes[j] = u[j] * n + v[j]
            j += 1

    order_arr = np.argsort(codes_arr, kind="stable")
    sorted_codes_arr = codes_arr[order_arr]
    cdef cnp.int64_t[::1] order = order_arr
    cdef cnp.int64_t[::1] sorted_codes = sorted_codes_arr

    mult_arr = np.empty(E, dtype=np.int64)
    cdef cnp.int64_t[::1] mult = mult_arr

    # run lengths over sorted codes -> per-instance multiplicity,
    # loop count, M_m tallies, parallel-pair count, structure vertices
    cdef Py_ssize_t start = 0, pos, k
    cdef cnp.int64_t code, cu, cv
    cdef cnp.int64_t l = 0, m_pairs = 0, sum_red = 0
    cdef bint g1 = True
    mm = {}
    struct_verts = []
    cdef Py_ssize_t run
    pos = 0
    while pos < E:
        start = pos
        code = sorted_codes[pos]
        while pos < E and sorted_codes[pos] == code:
            pos += 1
        run = pos - start
        for k in range(start, pos):
            mult[order[k]] = run
        cu = code // n
        cv = code % n
        if cu == cv:
            l += run
            for k in range(run):
                struct_verts.append(cu)
        elif run >= 2:
            mm[run] = mm.get(run, 0) + 1
            m_pairs += run * (run - 1) // 2
            sum_red += run - 1
            if run >= 3:
                g1 = False
            struct_verts.append(cu)
            struct_verts.append(cv)
    sum_red += l

    bad = []
    b0 = set()
    for i in range(E):
        if u[i] == v[i] or mult[i] >= 2:
            bad.append((h1[i], h2[i]))
            b0.add(u[i])
            b0.add(v[i])

    g2 = len(struct_verts) == len(set(struct_verts))

    return {
        "h1": h1_arr,
        "h2": h2_arr,
        "u": u_arr,
        "v": v_arr,
        "sorted_codes": sorted_codes_arr,
        "order": order_arr,
        "bad": bad,
        "l": int(l),
        "mm": mm,
        "m": int(m_pairs),
        "sum_red": int(sum_red),
        "b0": b0,
        "g1": bool(g1),
        "g2": bool(g2),
    }
