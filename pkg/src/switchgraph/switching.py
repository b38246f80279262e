"""The switching engine: bad-edge selection, single switches, full runs,
silver/golden classification, and red-path extraction.

A switch replaces the bad edge b = i_a j_b (taken with its lower half-edge
first) and a partner edge e = k_c l_d (half-edges ordered by a random bit)
with i_a l_d and k_c j_b, preserving all degrees.

A run is *silver* when no new bad edge is ever created (S1) and no partner
has an endpoint among the initial bad-edge endpoints (S2); it is *golden*
when additionally the initial configuration has no triple-or-worse edges (G1),
its loops and double edges are vertex-disjoint (G2), and the partners are
pairwise vertex-disjoint (G3). On a silver run every m-fold edge is reduced
to a single good edge, so S = L + sum_m (m-1) M_m; golden runs have S = L + M.

This module is the readable reference: it recomputes the bad-edge set from
scratch at every step. The experiment hot path lives in _core/_kernel and is
asserted bit-for-bit equal to this engine in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from . import _core
from ._core import PartnerPoolError, SimpleConfigurationError
from .degseq import DegreeSequence, require_graphical
from .multigraph import Configuration, Multigraph

__all__ = [
    "BadEdgeRule",
    "SwitchVariant",
    "SwitchStep",
    "SwitchTrace",
    "RedPath",
    "PartnerPoolError",
    "SimpleConfigurationError",
    "pick_bad_edge",
    "switch_step",
    "run_to_simple",
    "classify",
    "red_paths",
    "plast_holds",
]


class BadEdgeRule(IntEnum):
    """Which bad edge to switch next when several exist."""

    LEX = _core.RULE_LEX
    RANDOM = _core.RULE_RANDOM
    EDGE_ORDER = _core.RULE_EDGE_ORDER
    LEX_PARALLEL_FIRST = _core.RULE_LEX_PARALLEL_FIRST


class SwitchVariant(IntEnum):
    """Partner pool: every other edge, or only vertex-disjoint ones."""

    ANY = _core.VARIANT_ANY
    DISJOINT = _core.VARIANT_DISJOINT


@dataclass(frozen=True)
class SwitchStep:
    bad: tuple[int, int]
    partner: tuple[int, int]
    orientation: int


@dataclass
class SwitchTrace:
    """Record of one run to simplicity (final segment when restarts occurred)."""

    seq: DegreeSequence
    s: int
    steps: list[SwitchStep]
    restarted: int
    l0: int
    mm0: dict[int, int]
    m0: int
    b0: frozenset[int]
    silver: bool
    golden: bool
    s1_ok: bool
    s2_ok: bool
    g1: bool
    g2: bool
    g3: bool
    new_bad: bool
    initial_mate: np.ndarray
    final_mate: np.ndarray

    @property
    def sum_red0(self) -> int:
        return self.l0 + sum((m - 1) * c for m, c in self.mm0.items())

    def to_json_dict(self, red: "list[RedPath] | None" = None) -> dict:
        label = self.seq.half_edge_label
        out = {
            "S": self.s,
            "silver": self.silver,
            "golden": self.golden,
            "restarted": self.restarted,
            "L": self.l0,
            "M_m": {str(m): c for m, c in sorted(self.mm0.items())},
            "M": self.m0,
            "steps": [
                {
                    "bad": [list(label(h)) for h in st.bad],
                    "partner": [list(label(h)) for h in st.partner],
                    "orientation": st.orientation,
                }
                for st in self.steps
            ],
        }
        if red is not None:
            out["red_paths"] = [
                {
                    "kind": f"P{p.kind}",
                    "vertices": [v + 1 for v in p.vertices],
                    "gap": [p.gap[0] + 1, p.gap[1] + 1],
                }
                for p in red
            ]
        return out


@dataclass(frozen=True)
class RedPath:
    """Path left behind by switching a loop (P2) or an m-edge copy (P3)."""

    kind: int  # 2 or 3
    vertices: tuple[int, ...]  # path order; middle vertices are bad endpoints
    edges: tuple[tuple[int, int], ...]  # half-edge pairs in path order
    gap: tuple[int, int]  # the leaf pair == old partner endpoints

    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)


def _initial_stats(config: Configuration) -> dict:
    g = config.project()
    bad = config.bad_instances()
    vo = config.seq.vertex_of_half_edge()
    b0 = frozenset(int(vo[h]) for inst in bad for h in inst)
    mm = g.m_edge_counts()
    # bad structures: loop instances ({v}) and m-edges ({u,v}); disjoint check
    struct: list[int] = []
    for u, v in g.edges:
        if u == v:
            struct.append(u)
    for (u, v), m in g._mult.items():
        if u != v and m >= 2:
            struct.extend((u, v))
    return {
        "l": g.loop_count,
        "mm": mm,
        "m": g.parallel_pair_count,
        "b0": b0,
        "g1": all(m < 3 for m in mm),
        "g2": len(struct) == len(set(struct)),
    }


def pick_bad_edge(
    config: Configuration, rule: BadEdgeRule, rng: np.random.Generator | None = None
) -> tuple[int, int]:
    """The bad instance the rule switches next (half-edge pair, lower first)."""
    bad = config.bad_instances()
    if not bad:
        raise SimpleConfigurationError("configuration is simple, no bad edge to pick")
    if rule == BadEdgeRule.RANDOM and rng is None:
        raise ValueError("random rule needs a generator")
    return _core.select_bad(set(bad), config.seq.vertex_of_half_edge(), int(rule), rng)


def switch_step(
    config: Configuration,
    bad: tuple[int, int],
    variant: SwitchVariant,
    rng: np.random.Generator | None = None,
    partner: tuple[int, int] | None = None,
    orientation: int | None = None,
) -> Configuration:
    """One switching applied to a copy of the configuration.

    partner/orientation may be forced for deterministic replay; otherwise the
    partner is drawn uniformly from the variant's pool and the orientation bit
    uniformly from {0, 1}.
    """
    b1, b2 = (bad[0], bad[1]) if bad[0] < bad[1] else (bad[1], bad[0])
    mate = config.mate
    if mate[b1] != b2:
        raise ValueError(f"({b1},{b2}) is not an edge of the configuration")
    vo = config.seq.vertex_of_half_edge()
    bu, bv = int(vo[b1]), int(vo[b2])
    if partner is None:
        harange = np.arange(config.seq.N, dtype=np.int64)
        e1, e2, o = _core.draw_partner(mate, vo, harange, b1, bu, bv, int(variant), rng)
    else:
        e1, e2 = (partner[0], partner[1]) if partner[0] < partner[1] else (partner[1], partner[0])
        if mate[e1] != e2:
            raise ValueError(f"partner ({e1},{e2}) is not an edge of the configuration")
        if e1 == b1:
            raise ValueError("partner must differ from the bad edge")
        o = int(orientation) if orientation is not None else int(rng.integers(0, 2))
    kk, ll = (e1, e2) if o == 0 else (e2, e1)
    new = config.copy()
    new.mate[b1] = ll
    new.mate[ll] = b1
    new.mate[kk] = b2
    new.mate[b2] = kk
    return new


def run_to_simple(
    config: Configuration,
    rule: BadEdgeRule,
    variant: SwitchVariant,
    rng: np.random.Generator,
    max_switches: int | None = None,
) -> tuple[Multigraph, SwitchTrace]:
    """Switch bad edges until the projection is simple.

    If the step cap (default 50*(L+M+1)) is exceeded, a fresh uniform
    configuration is drawn and the run restarts; S counts switches since the
    last restart and restarted runs are never silver.
    """
    require_graphical(config.seq)
    seq = config.seq
    vo = seq.vertex_of_half_edge()
    harange = np.arange(seq.N, dtype=np.int64)
    working = config.copy()
    restarted = 0
    new_bad_ever = False

    while True:
        stats = _initial_stats(working)
        initial_mate = working.mate.copy()
        cap = max_switches if max_switches is not None else 50 * (stats["l"] + stats["m"] + 1)
        steps: list[SwitchStep] = []
        s1_ok = s2_ok = g3_ok = True
        partner_vertices: set[int] = set()
        aborted = False

        while True:
            bad_now = working.bad_instances()
            if not bad_now:
                break
            if len(steps) >= cap:
                aborted = True
                break
            b = _core.select_bad(set(bad_now), vo, int(rule), rng)
            bu, bv = int(vo[b[0]]), int(vo[b[1]])
            e1, e2, o = _core.draw_partner(working.mate, vo, harange, b[0], bu, bv, int(variant), rng)
            pu, pv = int(vo[e1]), int(vo[e2])
            if pu in stats["b0"] or pv in stats["b0"]:
                s2_ok = False
            if pu in partner_vertices or pv in partner_vertices:
                g3_ok = False
            partner_vertices.update((pu, pv))
            before = set(bad_now)
            working = switch_step(working, b, variant, partner=(e1, e2), orientation=o)
            after = set(working.bad_instances())
            if after - before:
                s1_ok = False
                new_bad_ever = True
            steps.append(SwitchStep(bad=b, partner=(e1, e2), orientation=o))

        if aborted:
            restarted += 1
            working = Configuration(seq, _core.draw_mate(rng, seq.N), check=False)
            continue

        silver = s1_ok and s2_ok and restarted == 0
        golden = silver and stats["g1"] and stats["g2"] and g3_ok
        trace = SwitchTrace(
            seq=seq,
            s=len(steps),
            steps=steps,
            restarted=restarted,
            l0=stats["l"],
            mm0=stats["mm"],
            m0=stats["m"],
            b0=stats["b0"],
            silver=silver,
            golden=golden,
            s1_ok=s1_ok,
            s2_ok=s2_ok,
            g1=stats["g1"],
            g2=stats["g2"],
            g3=g3_ok,
            new_bad=new_bad_ever,
            initial_mate=initial_mate,
            final_mate=working.mate.copy(),
        )
        return working.project(), trace


def classify(trace: SwitchTrace) -> dict:
    """Recompute the silver/golden flags by replaying the recorded steps.

    Independent of the bookkeeping done during the run; used to cross-check it.
    Restarted runs come out not-silver regardless of the replayed segment.
    """
    seq = trace.seq
    vo = seq.vertex_of_half_edge()
    working = Configuration(seq, trace.initial_mate.copy(), check=False)
    stats = _initial_stats(working)
    s1_ok = s2_ok = g3_ok = True
    partner_vertices: set[int] = set()
    for st in trace.steps:
        pu, pv = int(vo[st.partner[0]]), int(vo[st.partner[1]])
        if pu in stats["b0"] or pv in stats["b0"]:
            s2_ok = False
        if pu in partner_vertices or pv in partner_vertices:
            g3_ok = False
        partner_vertices.update((pu, pv))
        before = set(working.bad_instances())
        if st.bad not in before:
            raise ValueError(f"replay: {st.bad} is not a bad edge at its step")
        working = switch_step(
            working, st.bad, SwitchVariant.ANY, partner=st.partner, orientation=st.orientation
        )
        if set(working.bad_instances()) - before:
            s1_ok = False
    if working.bad_instances():
        raise ValueError("replay did not end at a simple configuration")
    silver = s1_ok and s2_ok and trace.restarted == 0
    golden = silver and stats["g1"] and stats["g2"] and g3_ok
    return {
        "silver": silver,
        "golden": golden,
        "s1_ok": s1_ok,
        "s2_ok": s2_ok,
        "g1": stats["g1"],
        "g2": stats["g2"],
        "g3": g3_ok,
    }


def _find_instance(config: Configuration, u: int, v: int) -> list[tuple[int, int]]:
    """All instances between vertices u and v in the configuration."""
    off = config.seq.half_edge_offsets()
    vo = config.seq.vertex_of_half_edge()
    out = []
    for h in range(int(off[u]), int(off[u + 1])):
        m = int(config.mate[h])
        if int(vo[m]) == v:
            pair = (h, m) if h < m else (m, h)
            if pair not in out:
                out.append(pair)
    return out


def red_paths(trace: SwitchTrace, final_config: Configuration | None = None) -> list[RedPath]:
    """The red P2/P3 paths a silver run leaves in the final graph.

    Each loop switching contributes one P2 centered at the loop vertex; the
    m-1 switchings of an m-edge contribute m-1 P3 copies sharing the surviving
    copy as their middle edge. Gaps (the leaf pairs) are the old partner
    endpoints and are non-edges of the final graph.
    """
    if not trace.silver:
        raise ValueError("red paths are only defined for silver runs")
    if final_config is None:
        final_config = Configuration(trace.seq, trace.final_mate.copy(), check=False)
    vo = trace.seq.vertex_of_half_edge()
    out: list[RedPath] = []
    final_graph = final_config.project()
    for st in trace.steps:
        b1, b2 = st.bad
        e1, e2 = st.partner
        kk, ll = (e1, e2) if st.orientation == 0 else (e2, e1)
        bu, bv = int(vo[b1]), int(vo[b2])
        vk, vl = int(vo[kk]), int(vo[ll])
        if bu == bv:
            # loop switch: path vl - bu - vk
            n1 = (b1, ll) if b1 < ll else (ll, b1)
            n2 = (kk, b2) if kk < b2 else (b2, kk)
            path = RedPath(
                kind=2,
                vertices=(vl, bu, vk),
                edges=(n1, n2),
                gap=(min(vk, vl), max(vk, vl)),
            )
        else:
            # m-edge copy switch: path vl - bu - bv - vk, middle = surviving copy
            middles = _find_instance(final_config, bu, bv)
            if len(middles) != 1:
                raise ValueError(
                    f"silver run should leave exactly one {bu}-{bv} edge, found {len(middles)}"
                )
            n1 = (b1, ll) if b1 < ll else (ll, b1)
            n2 = (kk, b2) if kk < b2 else (b2, kk)
            path = RedPath(
                kind=3,
                vertices=(vl, bu, bv, vk),
                edges=(n1, middles[0], n2),
                gap=(min(vk, vl), max(vk, vl)),
            )
        if final_graph.multiplicity(*path.gap) != 0:
            raise ValueError(f"red-path gap {path.gap} is an edge of the final graph")
        out.append(path)
    return out


def plast_holds(path: RedPath, seq: DegreeSequence) -> bool:
    """Lex condition on a red P3: the middle copy comes after the pair formed
    by the outer edges' half-edges at the two middle vertices."""
    if path.kind != 3:
        return True
    vo = seq.vertex_of_half_edge()
    first, middle, last = path.edges
    _, ju, jv, _ = path.vertices
    s, t = (ju, jv) if ju < jv else (jv, ju)

    def half_at(edge, vertex):
        a, b = edge
        return a if int(vo[a]) == vertex else b

    mid_pair = (half_at(middle, s), half_at(middle, t))
    outer_s = first if s == ju else last
    outer_t = last if t == jv else first
    switched_pair = (half_at(outer_s, s), half_at(outer_t, t))
    return mid_pair > switched_pair
