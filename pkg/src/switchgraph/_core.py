"""Kernel backend selection plus the switching-run driver shared by both.

Draw protocol (all randomness comes from a numpy Generator, in this order):

* configuration draw: one ``rng.permutation(N)``; consecutive entries are
  matched, i.e. mate[perm[2t]] = perm[2t+1]. Exactly uniform over the
  (N-1)!! perfect matchings.
* each switching step:
    1. rule == random only: one ``rng.integers(0, #bad)`` indexing the bad
       instances sorted ascending by half-edge pair;
    2. one ``rng.integers(0, pool)`` indexing the eligible partner instances
       ascending by lower half-edge id (pool excludes the bad instance; the
       vertex-disjoint variant also excludes edges sharing a vertex with it);
    3. one ``rng.integers(0, 2)`` orientation bit: 0 keeps the partner's
       half-edges in (lower, higher) order, 1 swaps them.
* restart (step cap exceeded): one fresh configuration draw as above.

Given the bad edge (b1, b2) with b1 < b2 and the oriented partner (k, l), the
switch replaces the two pairs with (b1, l) and (k, b2).

The compiled kernel and the pure-numpy fallback implement the same
``analyze_configuration`` contract, so a run is bit-for-bit reproducible from
(seed, degree sequence) on either backend. Set SWITCHGRAPH_PURE_PYTHON=1 to
force the fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernel_py

BACKEND = "python"
_IMPL = _kernel_py
if os.environ.get("SWITCHGRAPH_PURE_PYTHON") != "1":
    try:
        from . import _kernel as _compiled

        _IMPL = _compiled
        BACKEND = "compiled"
    except ImportError:
        pass

analyze_configuration = _IMPL.analyze_configuration


def backend_name() -> str:
    return BACKEND


RULE_LEX = 0
RULE_RANDOM = 1
RULE_EDGE_ORDER = 2
RULE_LEX_PARALLEL_FIRST = 3
VARIANT_ANY = 0
VARIANT_DISJOINT = 1


class PartnerPoolError(RuntimeError):
    """No eligible partner edge for a switching (degenerate pool)."""


class SimpleConfigurationError(ValueError):
    """A bad edge was requested from a configuration without one."""


def draw_mate(rng: np.random.Generator, N: int, out: np.ndarray | None = None) -> np.ndarray:
    """Uniform matching on half-edges 0..N-1 from a single permutation draw."""
    perm = rng.permutation(N)
    mate = out if out is not None else np.empty(N, dtype=np.int64)
    mate[perm[0::2]] = perm[1::2]
    mate[perm[1::2]] = perm[0::2]
    return mate


def draw_mate_batch(rng: np.random.Generator, N: int, count: int) -> np.ndarray:
    """(count, N) matchings from one ``rng.permuted`` call (bulk draw order)."""
    perm = rng.permuted(np.tile(np.arange(N, dtype=np.int64), (count, 1)), axis=1)
    mate = np.empty((count, N), dtype=np.int64)
    rows = np.arange(count)[:, None]
    mate[rows, perm[:, 0::2]] = perm[:, 1::2]
    mate[rows, perm[:, 1::2]] = perm[:, 0::2]
    return mate


def select_bad(bad_set, vertex_of, rule: int, rng: np.random.Generator) -> tuple[int, int]:
    """Pick the bad instance to switch, drawing only for the random rule."""
    items = sorted(bad_set)
    if not items:
        raise SimpleConfigurationError("configuration is simple, no bad edge to pick")
    if rule == RULE_EDGE_ORDER:
        return items[0]
    if rule == RULE_RANDOM:
        return items[int(rng.integers(0, len(items)))]
    loops = []
    multis = []
    for a, b in items:
        u, v = int(vertex_of[a]), int(vertex_of[b])
        if u == v:
            loops.append((a, b))
        else:
            multis.append((u, v, a, b))
    multis.sort()
    if rule == RULE_LEX:
        if loops:
            return loops[0]
        _, _, a, b = multis[0]
        return (a, b)
    if rule == RULE_LEX_PARALLEL_FIRST:
        if multis:
            _, _, a, b = multis[0]
            return (a, b)
        return loops[0]
    raise ValueError(f"unknown bad-edge rule code {rule}")


def draw_partner(
    mate: np.ndarray,
    vertex_of: np.ndarray,
    harange: np.ndarray,
    b1: int,
    bu: int,
    bv: int,
    variant: int,
    rng: np.random.Generator,
) -> tuple[int, int, int]:
    """Partner instance and orientation bit for switching (b1, mate[b1])."""
    lower = np.nonzero(mate > harange)[0]
    if variant == VARIANT_ANY:
        pool_size = len(lower) - 1
        if pool_size <= 0:
            raise PartnerPoolError("configuration has no other edge to switch with")
        k = int(rng.integers(0, pool_size))
        pos_b = int(np.searchsorted(lower, b1))
        idx = k if k < pos_b else k + 1
        e1 = int(lower[idx])
    elif variant == VARIANT_DISJOINT:
        lu = vertex_of[lower]
        lv = vertex_of[mate[lower]]
        mask = (lu != bu) & (lu != bv) & (lv != bu) & (lv != bv)
        pool = lower[mask]
        if len(pool) == 0:
            raise PartnerPoolError(
                "no partner vertex-disjoint from the bad edge exists "
                "(maximum degree too large relative to N)"
            )
        k = int(rng.integers(0, len(pool)))
        e1 = int(pool[k])
    else:
        raise ValueError(f"unknown switch variant code {variant}")
    e2 = int(mate[e1])
    o = int(rng.integers(0, 2))
    return e1, e2, o


def run_switched(
    mate: np.ndarray,
    vertex_of: np.ndarray,
    n: int,
    rule: int,
    variant: int,
    rng: np.random.Generator,
    max_switches: int | None = None,
    analyze=None,
) -> dict:
    """Switch bad edges in place until the projection is simple.

    Returns a summary dict: s (switch count since the last restart), restarted,
    silver/golden flags with their ingredients, and the final segment's initial
    bad-edge statistics (l0, mm0, m0, sum_red0, b0).
    """
    if analyze is None:
        analyze = analyze_configuration
    N = mate.shape[0]
    harange = np.arange(N, dtype=np.int64)
    restarted = 0
    new_bad_ever = False

    while True:
        info = analyze(mate, vertex_of, n)
        bad = set(info["bad"])
        cap = max_switches if max_switches is not None else 50 * (info["l"] + info["m"] + 1)
        b0 = info["b0"]
        sorted_codes = info["sorted_codes"]
        order = info["order"]
        h1s = info["h1"]
        h2s = info["h2"]

        delta: dict[int, int] = {}
        removed: set[tuple[int, int]] = set()
        created: dict[int, list[tuple[int, int]]] = {}

        def base_span(code):
            i0 = int(np.searchsorted(sorted_codes, code, "left"))
            i1 = int(np.searchsorted(sorted_codes, code, "right"))
            return i0, i1

        def mult_of(code):
            i0, i1 = base_span(code)
            return i1 - i0 + delta.get(code, 0)

        def instances_on(code):
            i0, i1 = base_span(code)
            out = [
                (int(h1s[i]), int(h2s[i]))
                for i in order[i0:i1]
                if (int(h1s[i]), int(h2s[i])) not in removed
            ]
            out.extend(created.get(code, ()))
            return out

        def code_of(x, y):
            cu, cv = int(vertex_of[x]), int(vertex_of[y])
            return cu * n + cv if cu <= cv else cv * n + cu

        s = 0
        s1_ok = True
        s2_ok = True
        g3_ok = True
        partner_vertices: set[int] = set()
        aborted = False

        while bad:
            if s >= cap:
                aborted = True
                break
            b = select_bad(bad, vertex_of, rule, rng)
            b1, b2 = b
            bu, bv = int(vertex_of[b1]), int(vertex_of[b2])
            e1, e2, o = draw_partner(mate, vertex_of, harange, b1, bu, bv, variant, rng)
            kk, ll = (e1, e2) if o == 0 else (e2, e1)

            pu, pv = int(vertex_of[e1]), int(vertex_of[e2])
            if pu in b0 or pv in b0:
                s2_ok = False
            if pu in partner_vertices or pv in partner_vertices:
                g3_ok = False
            partner_vertices.add(pu)
            partner_vertices.add(pv)

            cb = code_of(b1, b2)
            ce = code_of(e1, e2)
            einst = (e1, e2) if e1 < e2 else (e2, e1)
            n1 = (b1, ll) if b1 < ll else (ll, b1)
            n2 = (kk, b2) if kk < b2 else (b2, kk)
            c1 = code_of(*n1)
            c2 = code_of(*n2)

            for inst, c in ((b, cb), (einst, ce)):
                lst = created.get(c)
                if lst and inst in lst:
                    lst.remove(inst)
                else:
                    removed.add(inst)
                delta[c] = delta.get(c, 0) - 1
                bad.discard(inst)
            for inst, c in ((n1, c1), (n2, c2)):
                created.setdefault(c, []).append(inst)
                delta[c] = delta.get(c, 0) + 1

            mate[b1] = ll
            mate[ll] = b1
            mate[kk] = b2
            mate[b2] = kk

            for c in {cb, ce, c1, c2}:
                m_after = mult_of(c)
                should_bad = (c // n == c % n) or m_after >= 2
                for inst in instances_on(c):
                    if should_bad:
                        if inst not in bad:
                            bad.add(inst)
                            s1_ok = False
                            new_bad_ever = True
                    else:
                        bad.discard(inst)
            s += 1

        if aborted:
            restarted += 1
            draw_mate(rng, N, out=mate)
            continue

        silver = s1_ok and s2_ok and restarted == 0
        golden = silver and info["g1"] and info["g2"] and g3_ok
        return {
            "s": s,
            "restarted": restarted,
            "silver": silver,
            "golden": golden,
            "new_bad": new_bad_ever,
            "s1_ok": s1_ok,
            "s2_ok": s2_ok,
            "g1": info["g1"],
            "g2": info["g2"],
            "g3": g3_ok,
            "l0": info["l"],
            "mm0": info["mm"],
            "m0": info["m"],
            "sum_red0": info["sum_red"],
            "b0": frozenset(b0),
        }
