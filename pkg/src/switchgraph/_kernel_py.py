"""Pure-numpy configuration analysis kernel (fallback backend).

Mirrors the compiled kernel in switchgraph._kernel; switchgraph._core selects
between them at import. Both return the same structure for the same input.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def analyze_configuration(mate: np.ndarray, vertex_of: np.ndarray, n: int) -> dict:
    """One pass over a matching: edge instances, multiplicities, bad edges.

    Returns a dict with, in canonical (ascending lower half-edge) order:
      h1, h2           int64 arrays, the instance half-edge pairs
      u, v             endpoint vertices (u <= v because ids are vertex-major)
      sorted_codes     pair codes u*n+v sorted ascending
      order            argsort of codes (instance index per sorted position)
      bad              list of bad instances (h1, h2), ascending h1
      l, mm, m, sum_red  loop count, {m: M_m}, sum C(m,2)M_m, L + sum (m-1)M_m
      b0               set of endpoint vertices of bad instances
      g1               True iff no m-edge with m >= 3
      g2               True iff loops and m-edges are pairwise vertex-disjoint
    """
    N = mate.shape[0]
    h1 = np.nonzero(mate > np.arange(N))[0]
    h2 = mate[h1]
    u = vertex_of[h1]
    v = vertex_of[h2]
    codes = u * n + v
    order = np.argsort(codes, kind="stable")
    sorted_codes = codes[order]

    # multiplicity of each instance's vertex pair
    boundary = np.empty(len(sorted_codes), dtype=bool)
    if len(sorted_codes):
        boundary[0] = True
        np.not_equal(sorted_codes[1:], sorted_codes[:-1], out=boundary[1:])
    starts = np.nonzero(boundary)[0]
    run_lengths = np.diff(np.append(starts, len(sorted_codes)))
    mult_sorted = np.repeat(run_lengths, run_lengths)
    mult = np.empty(len(codes), dtype=np.int64)
    mult[order] = mult_sorted

    is_loop = u == v
    bad_mask = is_loop | (mult >= 2)
    bad = [(int(a), int(b)) for a, b in zip(h1[bad_mask], h2[bad_mask])]

    l = int(np.count_nonzero(is_loop))
    start_codes = sorted_codes[starts] if len(starts) else sorted_codes[:0]
    start_u = start_codes // n
    start_v = start_codes % n
    multi_mask = (start_u != start_v) & (run_lengths >= 2)
    multi_lengths = run_lengths[multi_mask]
    if multi_lengths.size:
        ks, cs = np.unique(multi_lengths, return_counts=True)
        mm = {int(k): int(c) for k, c in zip(ks, cs)}
    else:
        mm = {}
    g1 = not bool(np.any(multi_lengths >= 3))
    m = sum(k * (k - 1) // 2 * c for k, c in mm.items())
    sum_red = l + sum((k - 1) * c for k, c in mm.items())
    # bad structures: every loop instance ({v}) and every m-edge ({u, v});
    # disjoint iff no vertex appears twice across them
    struct_vertices = np.concatenate([u[is_loop], start_u[multi_mask], start_v[multi_mask]])
    g2 = bool(np.unique(struct_vertices).size == struct_vertices.size)
    b0 = {int(x) for a, b in bad for x in (vertex_of[a], vertex_of[b])}
    return {
        "h1": h1,
        "h2": h2,
        "u": u,
        "v": v,
        "sorted_codes": sorted_codes,
        "order": order,
        "bad": bad,
        "l": l,
        "mm": mm,
        "m": m,
        "sum_red": sum_red,
        "b0": b0,
        "g1": g1,
        "g2": g2,
    }
