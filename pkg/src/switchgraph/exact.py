"""Exhaustive small-instance oracles.

Everything here works at desk scale (N <= 14 half-edges, (N-1)!! <= 135135
configurations) and in exact rational arithmetic, so reference values like
24/35 are matched exactly rather than approximately.

The switched-construction law is solved as a finite absorbing Markov chain.
For the lex and random rules the chain on configurations lumps exactly to a
chain on labeled multigraphs (the projected outcome distribution of a step is
the same from every configuration lifting a multigraph), which keeps rational
linear solves small; a configuration-space solver is retained for cross-checks.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from fractions import Fraction

import numpy as np

from . import _core
from .degseq import DegreeSequence, require_graphical
from .multigraph import Configuration, EnumerationCapError, Multigraph
from .switching import BadEdgeRule, SwitchVariant, switch_step

ENUMERATION_CAP_N = 14
_RATIONAL_STATE_CAP = 4000

GraphKey = tuple  # canonical labeled multigraph key: sorted edge tuple


class ChainNotAbsorbingError(RuntimeError):
    """Some transient state cannot reach any absorbing state."""


class PathFamilyError(ValueError):
    """A path family violates one of the red-path properties."""

    def __init__(self, prop: str, message: str):
        self.prop = prop
        super().__init__(f"{prop}: {message}")


def double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


# -- enumeration ----------------------------------------------------------------


def enumerate_configurations(seq: DegreeSequence) -> list[Configuration]:
    """All (N-1)!! perfect matchings of the half-edges, desk-scale capped."""
    N = seq.N
    if N % 2 != 0:
        raise ValueError(f"degree sum N={N} must be even")
    if N > ENUMERATION_CAP_N:
        raise EnumerationCapError(
            f"N={N} exceeds the enumeration cap {ENUMERATION_CAP_N} "
            f"((N-1)!! would be {double_factorial(N - 1)})"
        )
    out: list[Configuration] = []
    pairs: list[tuple[int, int]] = []

    def rec(free: list[int]):
        if not free:
            out.append(Configuration.from_pairs(seq, pairs))
            return
        a = free[0]
        rest = free[1:]
        for i, b in enumerate(rest):
            pairs.append((a, b))
            rec(rest[:i] + rest[i + 1 :])
            pairs.pop()

    rec(list(range(N)))
    return out


def configuration_census(seq: DegreeSequence) -> dict[str, int]:
    """Configuration counts by isomorphism type of the projected multigraph."""
    census: Counter[str] = Counter()
    for c in enumerate_configurations(seq):
        census[c.project().iso_type_name()] += 1
    return dict(census)


# -- distributions ----------------------------------------------------------------


class DiscreteDistribution:
    """Probability map over canonically-keyed labeled multigraphs."""

    def __init__(self, n: int, probs: dict[GraphKey, Fraction | float]):
        self.n = n
        self.probs = dict(probs)
        total = sum(self.probs.values())
        if self.is_rational:
            if total != 1:
                raise ValueError(f"rational masses sum to {total}, not 1")
        elif abs(float(total) - 1.0) > 1e-12:
            raise ValueError(f"masses sum to {float(total)}, not 1 within 1e-12")
        if any(p < 0 for p in self.probs.values()):
            raise ValueError("negative probability")

    @property
    def is_rational(self) -> bool:
        return all(isinstance(p, Fraction) for p in self.probs.values())

    def prob(self, key: GraphKey):
        return self.probs.get(tuple(key), Fraction(0) if self.is_rational else 0.0)

    def support(self):
        return set(self.probs)

    def tv_distance(self, other: "DiscreteDistribution"):
        return tv_distance(self, other)

    def marginal(self, fn) -> dict:
        out: dict = {}
        for key, p in self.probs.items():
            label = fn(key)
            out[label] = out.get(label, Fraction(0) if self.is_rational else 0.0) + p
        return out

    def type_marginal(self) -> dict[str, Fraction | float]:
        return self.marginal(lambda key: Multigraph(self.n, key).iso_type_name())

    def to_json_dict(self) -> dict:
        entries = []
        for key in sorted(self.probs):
            p = self.probs[key]
            entries.append(
                {
                    "edges": [[u + 1, v + 1] for u, v in key],
                    "probability": str(p) if isinstance(p, Fraction) else p,
                }
            )
        summary = {
            name: (str(p) if isinstance(p, Fraction) else p)
            for name, p in sorted(self.type_marginal().items())
        }
        return {"n": self.n, "entries": entries, "type_marginals": summary}


def tv_distance(p: DiscreteDistribution, q: DiscreteDistribution):
    """Total variation distance: half the L1 distance over the joint support."""
    if p.n != q.n:
        raise ValueError("distributions live on different vertex counts")
    rational = p.is_rational and q.is_rational
    zero = Fraction(0) if rational else 0.0
    total = zero
    for key in p.support() | q.support():
        a = p.probs.get(key, zero)
        b = q.probs.get(key, zero)
        d = a - b
        total += d if d >= 0 else -d
    return total / 2 if rational else total / 2.0


def uniform_simple_distribution(seq: DegreeSequence) -> DiscreteDistribution:
    """Uniform law over all simple labeled graphs with the degree sequence."""
    require_graphical(seq)
    counts: Counter[GraphKey] = Counter()
    total_simple = 0
    for c in enumerate_configurations(seq):
        g = c.project()
        if g.is_simple():
            counts[g.key()] += 1
            total_simple += 1
    lifts = math.prod(math.factorial(d) for d in seq.degrees)
    for key, c in counts.items():
        if c != lifts:
            raise AssertionError(
                f"simple graph {key} lifted by {c} configurations, expected {lifts}"
            )
    return DiscreteDistribution(
        seq.n, {key: Fraction(c, total_simple) for key, c in counts.items()}
    )


# -- the switched construction as an absorbing chain ------------------------------


def _normalize_pair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a <= b else (b, a)


def _multigraph_transitions(
    key: GraphKey, rule: BadEdgeRule, variant: SwitchVariant
) -> dict[GraphKey, Fraction]:
    """One-step law of the switching chain from a non-simple labeled multigraph."""
    edges = list(key)
    mult = Counter(edges)
    loop_pairs = sorted(p for p, c in mult.items() if p[0] == p[1])
    multi_pairs = sorted(p for p, c in mult.items() if p[0] != p[1] and c >= 2)
    if not loop_pairs and not multi_pairs:
        raise ValueError("state is simple, no transitions")

    if rule == BadEdgeRule.LEX:
        chosen = [(loop_pairs[0], Fraction(1))] if loop_pairs else [(multi_pairs[0], Fraction(1))]
    elif rule == BadEdgeRule.LEX_PARALLEL_FIRST:
        chosen = [(multi_pairs[0], Fraction(1))] if multi_pairs else [(loop_pairs[0], Fraction(1))]
    elif rule == BadEdgeRule.RANDOM:
        weights = [(p, mult[p]) for p in loop_pairs] + [(p, mult[p]) for p in multi_pairs]
        n_bad = sum(w for _, w in weights)
        chosen = [(p, Fraction(w, n_bad)) for p, w in weights]
    else:
        raise ValueError(
            "exact solver supports lex, lex-parallel-first and random rules only"
        )

    out: dict[GraphKey, Fraction] = {}
    for bad_pair, p_bad in chosen:
        i, j = bad_pair
        pool: list[tuple[tuple[int, int], int]] = []
        for q, c in mult.items():
            avail = c - (1 if q == bad_pair else 0)
            if avail <= 0:
                continue
            if variant == SwitchVariant.DISJOINT and (
                q[0] in (i, j) or q[1] in (i, j)
            ):
                continue
            pool.append((q, avail))
        pool_size = sum(a for _, a in pool)
        if pool_size == 0:
            raise _core.PartnerPoolError(
                f"state {key}: empty partner pool for bad edge {bad_pair}"
            )
        for (k, l), avail in pool:
            for orient in (0, 1):
                kk, ll = (k, l) if orient == 0 else (l, k)
                new1 = _normalize_pair(i, ll)
                new2 = _normalize_pair(kk, j)
                nxt = Counter(edges)
                nxt[bad_pair] -= 1
                nxt[(k, l)] -= 1
                nxt[new1] += 1
                nxt[new2] += 1
                nxt_key = tuple(sorted(nxt.elements()))
                p = p_bad * Fraction(avail, pool_size) / 2
                out[nxt_key] = out.get(nxt_key, Fraction(0)) + p
    return out


def _configuration_transitions(
    config: Configuration, rule: BadEdgeRule, variant: SwitchVariant
) -> dict[bytes, tuple[Configuration, Fraction]]:
    """Configuration-space one-step law; used to cross-check the lumped solver."""
    bad = config.bad_instances()
    if not bad:
        raise ValueError("configuration is simple")
    vo = config.seq.vertex_of_half_edge()
    if rule == BadEdgeRule.RANDOM:
        chosen = [(b, Fraction(1, len(bad))) for b in sorted(bad)]
    elif rule in (BadEdgeRule.LEX, BadEdgeRule.LEX_PARALLEL_FIRST):
        pick = _core.select_bad(set(bad), vo, int(rule), None)
        chosen = [(pick, Fraction(1))]
    else:
        raise ValueError("exact solver supports lex, lex-parallel-first and random rules")

    out: dict[bytes, tuple[Configuration, Fraction]] = {}
    for b, p_bad in chosen:
        bu, bv = int(vo[b[0]]), int(vo[b[1]])
        instances = config.edge_instances()
        if variant == SwitchVariant.ANY:
            pool = [e for e in instances if e != b]
        else:
            pool = [
                e
                for e in instances
                if e != b
                and int(vo[e[0]]) not in (bu, bv)
                and int(vo[e[1]]) not in (bu, bv)
            ]
        if not pool:
            raise _core.PartnerPoolError("empty partner pool")
        for e in pool:
            for orient in (0, 1):
                nxt = switch_step(config, b, variant, partner=e, orientation=orient)
                kb = nxt.mate.tobytes()
                p = p_bad * Fraction(1, len(pool)) / 2
                if kb in out:
                    out[kb] = (out[kb][0], out[kb][1] + p)
                else:
                    out[kb] = (nxt, p)
    return out


def _is_simple_key(key: GraphKey) -> bool:
    mult = Counter(key)
    return all(u != v and c == 1 for (u, v), c in mult.items())


def _solve_absorption(
    transient: list,
    transitions: dict,
    pi_transient: dict,
    pi_absorbing: dict,
    exact: bool,
) -> dict:
    """Absorbed-mass distribution of an absorbing chain.

    transient: ordered transient states; transitions[state] -> {next: prob};
    pi_*: initial masses. Verifies absorbability, then solves the adjoint
    system (I - Q)^T z = pi_T and accumulates z^T R onto the absorbing states.
    """
    index = {t: i for i, t in enumerate(transient)}
    T = len(transient)

    # reverse reachability from the absorbing set
    reach = [False] * T
    preds: dict[int, list[int]] = {i: [] for i in range(T)}
    frontier = []
    for t, row in transitions.items():
        ti = index[t]
        for nxt, p in row.items():
            if p == 0:
                continue
            if nxt in index:
                preds[index[nxt]].append(ti)
            elif not reach[ti]:
                reach[ti] = True
                frontier.append(ti)
    while frontier:
        cur = frontier.pop()
        for prv in preds[cur]:
            if not reach[prv]:
                reach[prv] = True
                frontier.append(prv)
    if not all(reach):
        stuck = [transient[i] for i, r in enumerate(reach) if not r][:3]
        raise ChainNotAbsorbingError(
            f"{reach.count(False)} transient states cannot reach an absorbing state, "
            f"e.g. {stuck}"
        )

    if exact and T > _RATIONAL_STATE_CAP:
        raise EnumerationCapError(
            f"{T} transient states exceed the rational solve cap {_RATIONAL_STATE_CAP}"
        )

    if exact:
        zero = Fraction(0)
        m = [[zero] * T for _ in range(T)]
        for i in range(T):
            m[i][i] = Fraction(1)
        for t, row in transitions.items():
            j = index[t]
            for nxt, p in row.items():
                if nxt in index:
                    m[index[nxt]][j] -= p  # (I - Q)^T
        rhs = [pi_transient.get(t, zero) for t in transient]
        z = _solve_rational(m, rhs)
        absorbed: dict = dict(pi_absorbing)
        for t, row in transitions.items():
            j = index[t]
            if z[j] == 0:
                continue
            for nxt, p in row.items():
                if nxt not in index:
                    absorbed[nxt] = absorbed.get(nxt, zero) + z[j] * p
        return absorbed

    m = np.eye(T)
    for t, row in transitions.items():
        j = index[t]
        for nxt, p in row.items():
            if nxt in index:
                m[index[nxt], j] -= float(p)
    rhs = np.array([float(pi_transient.get(t, 0)) for t in transient])
    z = np.linalg.solve(m, rhs)
    absorbed = {k: float(v) for k, v in pi_absorbing.items()}
    for t, row in transitions.items():
        j = index[t]
        if z[j] == 0:
            continue
        for nxt, p in row.items():
            if nxt not in index:
                absorbed[nxt] = absorbed.get(nxt, 0.0) + z[j] * float(p)
    return absorbed


def _solve_rational(m: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Dense Gaussian elimination over exact rationals."""
    T = len(m)
    a = [row[:] + [rhs[i]] for i, row in enumerate(m)]
    for col in range(T):
        pivot = next((r for r in range(col, T) if a[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular absorption system")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(T):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][T] for i in range(T)]


def switched_distribution_exact(
    seq: DegreeSequence,
    rule: BadEdgeRule = BadEdgeRule.LEX,
    variant: SwitchVariant = SwitchVariant.ANY,
    start: Multigraph | GraphKey | None = None,
    state_space: str = "multigraph",
    exact: bool = True,
) -> DiscreteDistribution:
    """Exact law of the switched construction's final simple graph.

    start=None averages over a uniform initial configuration; a Multigraph (or
    key) start conditions on that initial realization. state_space selects the
    lumped labeled-multigraph chain (default) or the raw configuration chain
    (cross-check; N <= 10).
    """
    require_graphical(seq)
    if seq.N > ENUMERATION_CAP_N:
        raise EnumerationCapError(f"N={seq.N} exceeds cap {ENUMERATION_CAP_N}")

    if state_space == "configuration":
        return _switched_distribution_configuration(seq, rule, variant, start, exact)
    if state_space != "multigraph":
        raise ValueError("state_space must be 'multigraph' or 'configuration'")

    one = Fraction(1)
    if start is None:
        configs = enumerate_configurations(seq)
        total = len(configs)
        pi: Counter[GraphKey] = Counter(c.project().key() for c in configs)
        pi_mass = {k: Fraction(c, total) for k, c in pi.items()}
    else:
        key = start.key() if isinstance(start, Multigraph) else tuple(sorted(start))
        pi_mass = {key: one}

    # discover reachable states
    transitions: dict[GraphKey, dict[GraphKey, Fraction]] = {}
    pi_transient: dict[GraphKey, Fraction] = {}
    pi_absorbing: dict[GraphKey, Fraction] = {}
    stack = []
    seen = set()
    for k, p in pi_mass.items():
        if _is_simple_key(k):
            pi_absorbing[k] = p
        else:
            pi_transient[k] = p
        if k not in seen:
            seen.add(k)
            stack.append(k)
    while stack:
        k = stack.pop()
        if _is_simple_key(k):
            continue
        row = _multigraph_transitions(k, rule, variant)
        transitions[k] = row
        for nxt in row:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)

    transient = sorted(transitions)
    absorbed = _solve_absorption(transient, transitions, pi_transient, pi_absorbing, exact)
    return DiscreteDistribution(seq.n, absorbed)


def _switched_distribution_configuration(seq, rule, variant, start, exact):
    if seq.N > 10:
        raise EnumerationCapError("configuration-space solver capped at N <= 10")
    if start is not None:
        starts = [
            c for c in enumerate_configurations(seq)
            if c.project().key()
            == (start.key() if isinstance(start, Multigraph) else tuple(sorted(start)))
        ]
        if not starts:
            raise ValueError("start multigraph is not realizable by any configuration")
        pi_mass = {c.mate.tobytes(): Fraction(1, len(starts)) for c in starts}
        by_key = {c.mate.tobytes(): c for c in starts}
    else:
        configs = enumerate_configurations(seq)
        pi_mass = {c.mate.tobytes(): Fraction(1, len(configs)) for c in configs}
        by_key = {c.mate.tobytes(): c for c in configs}

    transitions: dict[bytes, dict[bytes, Fraction]] = {}
    pi_absorbing_graph: dict[GraphKey, Fraction] = {}
    pi_transient_cfg: dict[bytes, Fraction] = {}
    stack = []
    seen = set()
    simple_cache: dict[bytes, bool] = {}

    def is_simple_cfg(kb, cfg):
        if kb not in simple_cache:
            simple_cache[kb] = cfg.is_simple()
        return simple_cache[kb]

    for kb, p in pi_mass.items():
        cfg = by_key[kb]
        if is_simple_cfg(kb, cfg):
            gk = cfg.project().key()
            pi_absorbing_graph[gk] = pi_absorbing_graph.get(gk, Fraction(0)) + p
        else:
            pi_transient_cfg[kb] = p
        if kb not in seen:
            seen.add(kb)
            stack.append(kb)
    while stack:
        kb = stack.pop()
        cfg = by_key[kb]
        if is_simple_cfg(kb, cfg):
            continue
        row_cfg = _configuration_transitions(cfg, rule, variant)
        row = {}
        for nkb, (ncfg, p) in row_cfg.items():
            row[nkb] = row.get(nkb, Fraction(0)) + p
            if nkb not in by_key:
                by_key[nkb] = ncfg
            if nkb not in seen:
                seen.add(nkb)
                stack.append(nkb)
        transitions[kb] = row

    transient = sorted(transitions)
    # absorb at configuration level, then project
    absorbed_cfg = _solve_absorption(
        transient, transitions, pi_transient_cfg, {}, exact
    )
    out: dict[GraphKey, Fraction] = dict(pi_absorbing_graph)
    for kb, p in absorbed_cfg.items():
        gk = by_key[kb].project().key()
        out[gk] = out.get(gk, Fraction(0)) + p
    return DiscreteDistribution(seq.n, out)


# -- red-path weights and zeta counts ---------------------------------------------


def _validate_family(g: Multigraph, family) -> list[tuple[int, ...]]:
    paths = [tuple(int(v) for v in p) for p in family]
    for p in paths:
        if len(p) not in (3, 4):
            raise PathFamilyError("P23", f"path {p} must have 2 or 3 edges")
        if len(set(p)) != len(p):
            raise PathFamilyError("P23", f"path {p} repeats a vertex")
        for a, b in zip(p, p[1:]):
            if g.multiplicity(a, b) == 0:
                raise PathFamilyError("P23", f"path {p} uses non-edge {a}-{b}")
    middle_pairs = [
        _normalize_pair(p[1], p[2]) for p in paths if len(p) == 4
    ]
    outer_pairs: list[tuple[int, int]] = []
    for p in paths:
        if len(p) == 3:
            outer_pairs.extend([_normalize_pair(p[0], p[1]), _normalize_pair(p[1], p[2])])
        else:
            outer_pairs.extend([_normalize_pair(p[0], p[1]), _normalize_pair(p[2], p[3])])
    outer_counts = Counter(outer_pairs)
    if any(c > 1 for c in outer_counts.values()):
        raise PathFamilyError("Pe", "a non-middle edge is used by two paths")
    if set(outer_pairs) & set(middle_pairs):
        raise PathFamilyError("Pe", "an edge is used both as a middle and a non-middle")
    leaves = {p[0] for p in paths} | {p[-1] for p in paths}
    internals = set()
    for p in paths:
        internals.update(p[1:-1])
    if leaves & internals:
        raise PathFamilyError("Pv", "a leaf of one path is internal to another")
    gaps = [_normalize_pair(p[0], p[-1]) for p in paths]
    if len(set(gaps)) != len(gaps):
        raise PathFamilyError("Pgap1", "two paths share the same gap")
    for gp in gaps:
        if g.multiplicity(*gp) != 0:
            raise PathFamilyError("Pgap2", f"gap {gp} is an edge of the graph")
    return paths


def path_family_weight(g: Multigraph, family, method: str = "auto") -> Fraction:
    """Probability that a uniform half-edge labeling satisfies the middle-edge
    lex condition for every 3-edge path of the family.

    Vertex-disjoint families have the closed form 2^-m (m = number of 3-edge
    paths); general families are evaluated by enumerating labelings at the
    involved middle vertices.
    """
    if not g.is_simple():
        raise ValueError("path-family weights are defined on simple graphs")
    paths = _validate_family(g, family)
    p3s = [p for p in paths if len(p) == 4]
    disjoint = True
    seen_vertices: set[int] = set()
    for p in paths:
        if seen_vertices & set(p):
            disjoint = False
            break
        seen_vertices.update(p)

    if method not in ("auto", "closed", "lift"):
        raise ValueError("method must be auto, closed, or lift")
    if method == "closed" or (method == "auto" and disjoint):
        if not disjoint:
            raise PathFamilyError("Pe", "closed form needs vertex-disjoint paths")
        return Fraction(1, 2 ** len(p3s))

    if not p3s:
        return Fraction(1)

    degrees = g.degrees()
    involved = sorted({p[1] for p in p3s} | {p[2] for p in p3s})
    lifts = math.prod(math.factorial(degrees[x]) for x in involved)
    if lifts > 100_000:
        raise EnumerationCapError(f"{lifts} labelings exceed the lift-enumeration cap")

    incident: dict[int, list[int]] = {x: [] for x in involved}
    for idx, (u, v) in enumerate(g.edges):
        if u in incident:
            incident[u].append(idx)
        if v in incident:
            incident[v].append(idx)

    edge_index = {}
    for idx, e in enumerate(g.edges):
        edge_index.setdefault(e, idx)

    def eidx(a, b):
        return edge_index[_normalize_pair(a, b)]

    constraints = []
    for a, b, c, d in p3s:
        s, t = (b, c) if b < c else (c, b)
        mid = eidx(b, c)
        outer_s = eidx(a, b) if s == b else eidx(c, d)
        outer_t = eidx(c, d) if t == c else eidx(a, b)
        constraints.append((s, t, mid, outer_s, outer_t))

    good = 0
    perms = [itertools.permutations(range(len(incident[x]))) for x in involved]
    for combo in itertools.product(*perms):
        rank = {}
        for x, perm in zip(involved, combo):
            for local_pos, e in enumerate(incident[x]):
                rank[(x, e)] = perm[local_pos]
        ok = True
        for s, t, mid, outer_s, outer_t in constraints:
            if (rank[(s, mid)], rank[(t, mid)]) <= (rank[(s, outer_s)], rank[(t, outer_t)]):
                ok = False
                break
        if ok:
            good += 1
    return Fraction(good, lifts)


def _candidate_paths(g: Multigraph):
    """Instance-level 2- and 3-edge path candidates whose gap is a non-edge."""
    n = g.n
    inst = list(g.edges)
    at: dict[int, list[tuple[int, int]]] = {v: [] for v in range(n)}
    for idx, (u, v) in enumerate(inst):
        if u != v:
            at[u].append((idx, v))
            at[v].append((idx, u))
    p2s = []
    for c in range(n):
        arr = at[c]
        for i in range(len(arr)):
            for j in range(i + 1, len(arr)):
                (ia, x), (ib, y) = arr[i], arr[j]
                if x == y:
                    continue
                if g.multiplicity(x, y) != 0:
                    continue
                p2s.append((frozenset((x, c, y)), (min(x, y), max(x, y))))
    p3s = []
    for idx, (u, v) in enumerate(inst):
        if u == v:
            continue
        # the middle instance determines the path, so each instance set arises once
        for ia, x in at[u]:
            if ia == idx or x == v:
                continue
            for ib, y in at[v]:
                if ib == idx or ib == ia or y == u or y == x:
                    continue
                if g.multiplicity(x, y) != 0:
                    continue
                p3s.append((frozenset((x, u, v, y)), (min(x, y), max(x, y))))
    return p2s, p3s


def zeta_lm(g: Multigraph, l: int, m: int) -> int:
    """Number of sets of l+m vertex-disjoint paths (l two-edge, m three-edge)
    whose gaps are all non-edges of g."""
    if l < 0 or m < 0:
        raise ValueError("l and m must be non-negative")
    if l == 0 and m == 0:
        return 1
    p2s, p3s = _candidate_paths(g)

    def count(cands, need, used, rest_fn):
        if need == 0:
            return rest_fn(used)
        total = 0
        for i, (verts, _gap) in enumerate(cands):
            if verts & used:
                continue
            total += count(cands[i + 1 :], need - 1, used | verts, rest_fn)
        return total

    def count_p3(used):
        return count(p3s, m, used, lambda _u: 1)

    return count(p2s, l, frozenset(), count_p3)


def zeta_golden(g: Multigraph, s: int) -> Fraction:
    """Total weight sum over l+m = s: 2^-m * zeta_{l,m}(g)."""
    out = Fraction(0)
    for m in range(s + 1):
        c = zeta_lm(g, s - m, m)
        if c:
            out += Fraction(c, 2**m)
    return out


# -- golden-conditional law and the reweighting identity ---------------------------


def golden_conditional_exact(
    seq: DegreeSequence,
    rule: BadEdgeRule = BadEdgeRule.LEX,
    variant: SwitchVariant = SwitchVariant.ANY,
) -> dict[int, tuple[Fraction, DiscreteDistribution]]:
    """P(golden, S=s) and the conditional final-graph law for each s.

    Enumerates the switching chain's trajectories from every initial
    configuration, pruning a branch at its first silver/golden violation, so
    each retained trajectory is golden and terminates within L+M steps.
    """
    require_graphical(seq)
    configs = enumerate_configurations(seq)
    total = len(configs)
    vo = seq.vertex_of_half_edge()
    acc: dict[int, dict[GraphKey, Fraction]] = {}

    def record(s, key, p):
        acc.setdefault(s, {})
        acc[s][key] = acc[s].get(key, Fraction(0)) + p

    def dfs(cfg: Configuration, prob: Fraction, depth: int, b0, partner_vertices):
        bad = cfg.bad_instances()
        if not bad:
            record(depth, cfg.project().key(), prob)
            return
        if rule == BadEdgeRule.RANDOM:
            chosen = [(b, Fraction(1, len(bad))) for b in sorted(bad)]
        else:
            chosen = [(_core.select_bad(set(bad), vo, int(rule), None), Fraction(1))]
        instances = cfg.edge_instances()
        for b, p_sel in chosen:
            bu, bv = int(vo[b[0]]), int(vo[b[1]])
            if variant == SwitchVariant.ANY:
                pool = [e for e in instances if e != b]
            else:
                pool = [
                    e
                    for e in instances
                    if e != b
                    and int(vo[e[0]]) not in (bu, bv)
                    and int(vo[e[1]]) not in (bu, bv)
                ]
            if not pool:
                continue
            bad_before = set(bad)
            for e in pool:
                pu, pv = int(vo[e[0]]), int(vo[e[1]])
                if pu in b0 or pv in b0:
                    continue  # S2 violated
                if pu in partner_vertices or pv in partner_vertices:
                    continue  # G3 violated
                for orient in (0, 1):
                    p = prob * p_sel / (len(pool) * 2)
                    nxt = switch_step(cfg, b, variant, partner=e, orientation=orient)
                    if set(nxt.bad_instances()) - bad_before:
                        continue  # S1 violated
                    dfs(nxt, p, depth + 1, b0, partner_vertices | {pu, pv})

    for cfg in configs:
        p0 = Fraction(1, total)
        bad = cfg.bad_instances()
        if not bad:
            record(0, cfg.project().key(), p0)
            continue
        g = cfg.project()
        mm = g.m_edge_counts()
        if any(m >= 3 for m in mm):
            continue  # G1 violated
        struct: list[int] = []
        for u, v in g.edges:
            if u == v:
                struct.append(u)
        for (u, v), c in g._mult.items():
            if u != v and c >= 2:
                struct.extend((u, v))
        if len(struct) != len(set(struct)):
            continue  # G2 violated
        b0 = frozenset(int(vo[h]) for inst in bad for h in inst)
        dfs(cfg, p0, 0, b0, frozenset())

    out: dict[int, tuple[Fraction, DiscreteDistribution]] = {}
    for s, masses in sorted(acc.items()):
        p_s = sum(masses.values())
        conditional = DiscreteDistribution(
            seq.n, {k: v / p_s for k, v in masses.items()}
        )
        out[s] = (p_s, conditional)
    return out


def reweighted_uniform(seq: DegreeSequence, s: int) -> DiscreteDistribution:
    """The uniform simple-graph law reweighted by the golden path-weight sum
    zeta^G_s; the golden-conditional law of the switched construction."""
    uniform = uniform_simple_distribution(seq)
    weights = {
        key: zeta_golden(Multigraph(seq.n, key), s) * p for key, p in uniform.probs.items()
    }
    total = sum(weights.values())
    if total == 0:
        raise ValueError(f"zeta^G_{s} vanishes on every graph with this degree sequence")
    return DiscreteDistribution(seq.n, {k: w / total for k, w in weights.items() if w != 0})
