"""Half-edge configurations, multigraph projection, and exact subgraph statistics.

Half-edges are numbered 0..N-1 vertex-major: vertex v owns the contiguous id
range offsets[v]..offsets[v+1). A configuration is a perfect matching (an
involution without fixed points) on those ids and projects to a labeled
multigraph by turning every matched pair into an edge.

Edge instances keep stable identities: in a configuration an instance *is* its
half-edge pair; in a standalone Multigraph it is the index into the edge list.
Parallel copies therefore count separately in all subgraph statistics, path
patterns require pairwise-distinct vertices and never contain loops, and C2
counts unordered pairs of parallel instances (so count_subgraphs("C2") == M).
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .degseq import DegreeSequence

PATTERNS = ("P1", "P2", "P3", "C1", "C2", "C3", "C4")

_CERT_VERTEX_CAP = 10


class EnumerationCapError(ValueError):
    """Raised when an exhaustive operation is asked beyond desk scale."""


class Configuration:
    """A perfect matching on the labeled half-edges of a degree sequence."""

    __slots__ = ("seq", "mate")

    def __init__(self, seq: DegreeSequence, mate: np.ndarray, check: bool = True):
        self.seq = seq
        self.mate = np.asarray(mate, dtype=np.int64)
        if check:
            self._check()

    def _check(self):
        N = self.seq.N
        if self.mate.shape != (N,):
            raise ValueError(f"mate must have length N={N}")
        h = np.arange(N, dtype=np.int64)
        if np.any(self.mate == h):
            raise ValueError("mate has a fixed point (unmatched half-edge)")
        if not np.array_equal(self.mate[self.mate], h):
            raise ValueError("mate is not an involution")

    @classmethod
    def from_pairs(cls, seq: DegreeSequence, pairs: Iterable[tuple[int, int]]) -> "Configuration":
        mate = np.full(seq.N, -1, dtype=np.int64)
        for a, b in pairs:
            mate[a] = b
            mate[b] = a
        return cls(seq, mate)

    def copy(self) -> "Configuration":
        return Configuration(self.seq, self.mate.copy(), check=False)

    def edge_instances(self) -> list[tuple[int, int]]:
        """All matched pairs (h1, h2), h1 < h2, ascending in h1 (canonical order)."""
        lower = np.nonzero(self.mate > np.arange(self.seq.N))[0]
        return [(int(h), int(self.mate[h])) for h in lower]

    def project(self) -> "Multigraph":
        vo = self.seq.vertex_of_half_edge()
        lower = np.nonzero(self.mate > np.arange(self.seq.N))[0]
        edges = [(int(vo[h]), int(vo[self.mate[h]])) for h in lower]
        return Multigraph(self.seq.n, edges)

    def bad_instances(self) -> list[tuple[int, int]]:
        """Loop or parallel edge instances, ascending in lower half-edge id."""
        vo = self.seq.vertex_of_half_edge()
        inst = self.edge_instances()
        mult = Counter((vo[a], vo[b]) for a, b in inst)
        out = []
        for a, b in inst:
            u, v = int(vo[a]), int(vo[b])
            if u == v or mult[(u, v)] >= 2:
                out.append((a, b))
        return out

    def is_simple(self) -> bool:
        return not self.bad_instances()

    def __eq__(self, other):
        return (
            isinstance(other, Configuration)
            and self.seq == other.seq
            and np.array_equal(self.mate, other.mate)
        )

    def __hash__(self):
        return hash((self.seq, self.mate.tobytes()))


def project(config: Configuration) -> "Multigraph":
    """Project a configuration to its labeled multigraph."""
    return config.project()


class Multigraph:
    """Labeled multigraph: vertices 0..n-1 plus a list of edge instances.

    Edges are stored with endpoints normalized to u <= v; the list index is the
    stable instance id. Loops count twice toward their vertex degree.
    """

    __slots__ = ("n", "edges", "_mult")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        self.n = int(n)
        norm = []
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")
            norm.append((u, v) if u <= v else (v, u))
        self.edges = tuple(norm)
        self._mult = Counter(self.edges)

    # -- basic statistics ---------------------------------------------------

    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    def degree_sequence(self) -> DegreeSequence:
        return DegreeSequence(self.degrees())

    @property
    def loop_count(self) -> int:
        """L: number of loop instances."""
        return sum(1 for u, v in self.edges if u == v)

    def m_edge_counts(self) -> dict[int, int]:
        """M_m: number of maximal sets of exactly m parallel non-loop edges, m >= 2."""
        out: dict[int, int] = {}
        for (u, v), m in self._mult.items():
            if u != v and m >= 2:
                out[m] = out.get(m, 0) + 1
        return out

    @property
    def parallel_pair_count(self) -> int:
        """M = sum_m C(m,2) M_m: unordered pairs of parallel instances."""
        return sum(m * (m - 1) // 2 for (u, v), m in self._mult.items() if u != v and m >= 2)

    def multiplicity(self, u: int, v: int) -> int:
        return self._mult.get((min(u, v), max(u, v)), 0)

    def is_simple(self) -> bool:
        return self.loop_count == 0 and self.parallel_pair_count == 0

    def bad_edges(self) -> list[tuple[int, tuple[int, int]]]:
        """Every loop instance and parallel instance as (instance id, (u, v))."""
        out = []
        for i, (u, v) in enumerate(self.edges):
            if u == v or self._mult[(u, v)] >= 2:
                out.append((i, (u, v)))
        return out

    # -- subgraph counting ----------------------------------------------------

    def _adjacency(self) -> list[dict[int, int]]:
        """Non-loop multiplicity maps, adj[u][x] = multiplicity of u-x."""
        adj: list[dict[int, int]] = [dict() for _ in range(self.n)]
        for u, v in self.edges:
            if u != v:
                adj[u][v] = adj[u].get(v, 0) + 1
                adj[v][u] = adj[v].get(u, 0) + 1
        return adj

    def count_subgraphs(self, pattern: str) -> int:
        """Sets of edge instances forming the pattern (paths Pk, cycles Ck).

        Path patterns have pairwise-distinct vertices and no loops; C1 counts
        loop instances, C2 parallel instance pairs, C3/C4 instance triangles
        and quadrilaterals on distinct vertices.
        """
        if pattern not in PATTERNS:
            raise ValueError(f"unknown pattern {pattern!r}, expected one of {PATTERNS}")
        if pattern == "C1":
            return self.loop_count
        if pattern == "C2":
            return self.parallel_pair_count
        if pattern == "P1":
            return sum(1 for u, v in self.edges if u != v)

        adj = self._adjacency()
        s = [sum(a.values()) for a in adj]  # non-loop instance degree

        if pattern == "P2":
            total = 0
            for c in range(self.n):
                total += s[c] * (s[c] - 1) // 2
                total -= sum(m * (m - 1) // 2 for m in adj[c].values())
            return total

        if pattern == "P3":
            total = 0
            for (u, v), m in self._mult.items():
                if u == v:
                    continue
                shared = sum(mu * adj[v].get(x, 0) for x, mu in adj[u].items() if x != v)
                total += m * ((s[u] - m) * (s[v] - m) - shared)
            return total

        if pattern == "C3":
            # each triangle {u,v,x} with u < v < x counted once via its lowest edge pair
            total = 0
            for (u, v), m in self._mult.items():
                if u == v:
                    continue
                for x, mu in adj[u].items():
                    if x > v:
                        total += m * mu * adj[v].get(x, 0)
            return total

        # C4: pairs of instance-wedges between opposite vertices; each cycle has
        # two opposite pairs, so halve at the end.
        twice = 0
        for u in range(self.n):
            for v in range(u + 1, self.n):
                w = sum(mu * adj[x].get(v, 0) for x, mu in adj[u].items() if x != v)
                if w >= 2:
                    twice += w * (w - 1) // 2
                twice -= sum(
                    (mu * adj[x][v]) * (mu * adj[x][v] - 1) // 2
                    for x, mu in adj[u].items()
                    if x != v and v in adj[x]
                )
        return twice // 2

    # -- components -----------------------------------------------------------

    def component_labels(self) -> list[int]:
        parent = list(range(self.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v in self.edges:
            ra, rb = find(u), find(v)
            if ra != rb:
                parent[ra] = rb
        return [find(v) for v in range(self.n)]

    def components(self, tree: "Multigraph | None" = None) -> tuple[list[int], int | None]:
        """Component orders sorted descending; optionally the count of components
        isomorphic to the given tree."""
        labels = self.component_labels()
        sizes = Counter(labels)
        ordered = sorted(sizes.values(), reverse=True)
        if tree is None:
            return ordered, None
        n_t = self.tree_component_count(tree)
        return ordered, n_t

    def component_edge_lists(self) -> dict[int, list[tuple[int, int]]]:
        labels = self.component_labels()
        out: dict[int, list[tuple[int, int]]] = {}
        for v in range(self.n):
            out.setdefault(labels[v], [])
        for u, v in self.edges:
            out[labels[u]].append((u, v))
        return out

    def tree_component_count(self, tree: "Multigraph") -> int:
        """Number of components isomorphic to the given tree (exact isomorphism)."""
        t_order = tree.n
        t_edges = len(tree.edges)
        if t_edges != t_order - 1:
            raise ValueError("pattern is not a tree (needs order-1 edges)")
        t_cert = component_certificate(list(range(tree.n)), list(tree.edges))
        labels = self.component_labels()
        members: dict[int, list[int]] = {}
        for v in range(self.n):
            members.setdefault(labels[v], []).append(v)
        edges_by_label = self.component_edge_lists()
        count = 0
        for lab, verts in members.items():
            if len(verts) != t_order:
                continue
            es = edges_by_label[lab]
            if len(es) != t_edges or any(u == v for u, v in es):
                continue
            if component_certificate(verts, es) == t_cert:
                count += 1
        return count

    # -- canonical keys and serialization --------------------------------------

    def key(self) -> tuple[tuple[int, int], ...]:
        """Canonical labeled-multigraph key: the sorted edge multiset."""
        return tuple(sorted(self.edges))

    def key_bytes(self) -> bytes:
        return json.dumps([self.n, sorted(self.edges)]).encode()

    def to_edgelist_text(self) -> str:
        lines = [f"# n={self.n}"]
        lines.extend(f"{u + 1} {v + 1}" for u, v in sorted(self.edges))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edgelist_text(cls, text: str) -> "Multigraph":
        n = None
        edges = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                if "n=" in line:
                    n = int(line.split("n=")[1].split()[0])
                continue
            u, v = line.split()
            edges.append((int(u) - 1, int(v) - 1))
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls(n, edges)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "edges": [[u + 1, v + 1] for u, v in sorted(self.edges)],
            "L": self.loop_count,
            "M_m": {str(m): c for m, c in sorted(self.m_edge_counts().items())},
            "M": self.parallel_pair_count,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Multigraph":
        return cls(data["n"], [(u - 1, v - 1) for u, v in data["edges"]])

    def __eq__(self, other):
        return isinstance(other, Multigraph) and self.n == other.n and self.key() == other.key()

    def __hash__(self):
        return hash((self.n, self.key()))

    def __repr__(self):
        return f"Multigraph(n={self.n}, edges={list(self.edges)!r})"

    def iso_type_name(self) -> str:
        return iso_type_name(self)

    def iso_type_key(self) -> tuple:
        return iso_type_key(self)


# -- expected bad-edge statistics ---------------------------------------------


def expected_loops(seq: DegreeSequence) -> Fraction:
    """Mean loop count of a uniform configuration: sum_i d_i(d_i-1) / (2(N-1))."""
    if seq.N < 2:
        raise ValueError("need at least one edge (N >= 2)")
    num = sum(d * (d - 1) for d in seq.degrees)
    return Fraction(num, 2 * (seq.N - 1))


def expected_pairs(seq: DegreeSequence) -> Fraction:
    """Mean parallel-pair count of a uniform configuration:
    sum_{i<j} d_i(d_i-1) d_j(d_j-1) / (2(N-1)(N-3))."""
    if seq.N < 4:
        raise ValueError("need at least two edges (N >= 4)")
    a = [d * (d - 1) for d in seq.degrees]
    s1 = sum(a)
    s2 = sum(x * x for x in a)
    return Fraction(s1 * s1 - s2, 4 * (seq.N - 1) * (seq.N - 3))


# -- canonical component certificates and isomorphism-type names ---------------


def component_certificate(vertices: Sequence[int], edges: Sequence[tuple[int, int]]) -> tuple:
    """Canonical form of a small component: lexicographically minimal sorted
    edge multiset over all relabelings. Exhaustive; capped at 10 vertices."""
    verts = sorted(set(vertices))
    if len(verts) > _CERT_VERTEX_CAP:
        raise EnumerationCapError(
            f"certificate requested for component with {len(verts)} > {_CERT_VERTEX_CAP} vertices"
        )
    index = {v: i for i, v in enumerate(verts)}
    local = [(index[u], index[v]) for u, v in edges]
    k = len(verts)
    best = None
    for perm in itertools.permutations(range(k)):
        cand = tuple(
            sorted(
                (perm[u], perm[v]) if perm[u] <= perm[v] else (perm[v], perm[u])
                for u, v in local
            )
        )
        if best is None or cand < best:
            best = cand
    return (k, best if best is not None else ())


def _component_name(order: int, edges: list[tuple[int, int]]) -> str:
    e = len(edges)
    if order == 1 and e == 0:
        return "K1"
    deg = Counter()
    mult = Counter()
    loops = 0
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
        if u == v:
            loops += 1
        else:
            mult[(min(u, v), max(u, v))] += 1
    if order == 1 and loops == 1 and e == 1:
        return "C1"
    if order == 2 and e == 2 and loops == 0 and len(mult) == 1:
        return "C2"
    simple = loops == 0 and all(m == 1 for m in mult.values())
    if simple and e == order and all(deg[v] == 2 for v in deg) and len(deg) == order:
        return f"C{order}"
    if simple and e == order - 1:
        ones = sum(1 for v in deg if deg[v] == 1)
        if ones == 2 and all(deg[v] <= 2 for v in deg):
            return f"P{e}"
    return f"G{order}v{e}e"


def iso_type_key(g: Multigraph) -> tuple:
    """Sorted multiset of component certificates: equal iff isomorphic."""
    labels = g.component_labels()
    members: dict[int, list[int]] = {}
    for v in range(g.n):
        members.setdefault(labels[v], []).append(v)
    edges_by_label = g.component_edge_lists()
    certs = [component_certificate(members[lab], edges_by_label[lab]) for lab in members]
    return tuple(sorted(certs))


def iso_type_name(g: Multigraph) -> str:
    """Readable isomorphism-type string, e.g. 'C1+P2+P1' or '2P2'.

    Cycles first (ascending order), then paths (descending edge count), then
    anything else; repeated components get a count prefix.
    """
    labels = g.component_labels()
    members: dict[int, list[int]] = {}
    for v in range(g.n):
        members.setdefault(labels[v], []).append(v)
    edges_by_label = g.component_edge_lists()
    names = [
        _component_name(len(members[lab]), edges_by_label[lab]) for lab in members
    ]

    def sort_key(name: str):
        if name.startswith("C"):
            return (0, int(name[1:]))
        if name.startswith("P") and name[1:].isdigit():
            return (1, -int(name[1:]))
        return (2, name)

    counted = Counter(names)
    parts = []
    for name in sorted(counted, key=sort_key):
        c = counted[name]
        parts.append(name if c == 1 else f"{c}{name}")
    return "+".join(parts) if parts else "empty"


# -- array-based counts for the experiment hot path ----------------------------


def subgraph_counts_arrays(n: int, eu: np.ndarray, ev: np.ndarray) -> dict[str, int]:
    """Counts of P2, P3, C3, C4 (plus L and M) from edge endpoint arrays.

    Vectorized equivalent of Multigraph.count_subgraphs for the patterns the
    experiments track; agreement is asserted in the test suite.
    """
    from scipy import sparse

    eu = np.asarray(eu, dtype=np.int64)
    ev = np.asarray(ev, dtype=np.int64)
    loops = eu == ev
    L = int(np.count_nonzero(loops))
    u = eu[~loops]
    v = ev[~loops]
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    codes = lo * n + hi
    uniq, counts = np.unique(codes, return_counts=True)
    M = int(np.sum(counts * (counts - 1) // 2))

    s = np.bincount(lo, minlength=n) + np.bincount(hi, minlength=n)  # non-loop degree
    p2 = int(np.sum(s * (s - 1) // 2)) - 2 * int(np.sum(counts * (counts - 1) // 2))

    if len(uniq) == 0:
        return {"L": L, "M": M, "P2": 0, "P3": 0, "C3": 0, "C4": 0}

    cu = uniq // n
    cv = uniq % n
    A = sparse.coo_matrix(
        (
            np.concatenate([counts, counts]).astype(np.int64),
            (np.concatenate([cu, cv]), np.concatenate([cv, cu])),
        ),
        shape=(n, n),
    ).tocsr()
    A2 = (A @ A).tocsr()
    w_uv = np.asarray(A2[cu, cv]).ravel()
    p3 = int(np.sum(counts * ((s[cu] - counts) * (s[cv] - counts) - w_uv)))

    c3 = int((A2.multiply(A)).sum() // 6)

    # C4: wedge pairs per opposite vertex pair, minus same-midpoint pairs, halved.
    A2u = sparse.triu(A2, k=1).tocoo()
    A2u.eliminate_zeros()
    w = A2u.data
    pair_terms = int(np.sum(w * (w - 1) // 2))
    # same-midpoint correction sum_x sum_{u<v in N(x)} C(m_xu*m_xv, 2) is nonzero
    # only when a wedge uses a parallel edge, so scan midpoints touching one.
    same_mid = 0
    multi_mask = counts >= 2
    if np.any(multi_mask):
        indptr, indices, data = A.indptr, A.indices, A.data
        midpoints = set(cu[multi_mask].tolist()) | set(cv[multi_mask].tolist())
        for x in midpoints:
            nbrs = indices[indptr[x] : indptr[x + 1]]
            mults = data[indptr[x] : indptr[x + 1]]
            for i in range(len(nbrs)):
                for j in range(i + 1, len(nbrs)):
                    t = int(mults[i]) * int(mults[j])
                    same_mid += t * (t - 1) // 2
    c4 = (pair_terms - same_mid) // 2

    return {"L": L, "M": M, "P2": p2, "P3": int(p3), "C3": c3, "C4": int(c4)}
