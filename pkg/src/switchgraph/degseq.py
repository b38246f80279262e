"""Degree sequences: validation, moment statistics, and parsing.

A degree sequence d_1..d_n prescribes the degree of every vertex; N = sum d_i
is the number of half-edges and must be even for any pairing to exist.
Instances are immutable and safe to share between threads.
"""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

INT64_MAX = 2**63 - 1


class EmptySequenceError(ValueError):
    """Raised when an operation needs at least one vertex."""


class MomentOverflowError(OverflowError):
    """Raised when a moment sum does not fit a 64-bit integer."""


class NotGraphicalError(ValueError):
    """Raised when a simple-graph construction is asked for a non-graphical sequence."""


@dataclass(frozen=True)
class ValidationReport:
    even_sum: bool
    graphical: bool


@dataclass(frozen=True)
class MomentSummary:
    """Moment statistics of a degree sequence.

    delta maps r to sum_i d_i^r for r = 1..4; mu_hat = N/n, mu2_hat = delta[2]/n
    and nu_hat = sum_i d_i(d_i-1)/n are exact rationals.
    """

    n: int
    N: int
    d_max: int
    delta: dict[int, int]
    mu_hat: Fraction
    mu2_hat: Fraction
    nu_hat: Fraction


class DegreeSequence:
    """Immutable vector of non-negative vertex degrees."""

    __slots__ = ("degrees", "_offsets", "_vertex_of", "_validation")

    def __init__(self, degrees: Iterable[int]):
        degs = tuple(int(d) for d in degrees)
        for d in degs:
            if d < 0:
                raise ValueError(f"degrees must be non-negative, got {d}")
        object.__setattr__(self, "degrees", degs)
        object.__setattr__(self, "_offsets", None)
        object.__setattr__(self, "_vertex_of", None)
        object.__setattr__(self, "_validation", None)

    def __setattr__(self, name, value):
        raise AttributeError("DegreeSequence is immutable")

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def N(self) -> int:
        return sum(self.degrees)

    @property
    def d_max(self) -> int:
        return max(self.degrees) if self.degrees else 0

    def half_edge_offsets(self) -> np.ndarray:
        """offsets[v]..offsets[v+1] is the half-edge id range of vertex v (0-based)."""
        if self._offsets is None:
            off = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(np.asarray(self.degrees, dtype=np.int64), out=off[1:])
            object.__setattr__(self, "_offsets", off)
        return self._offsets

    def vertex_of_half_edge(self) -> np.ndarray:
        """Array of length N mapping half-edge id to its 0-based vertex."""
        if self._vertex_of is None:
            vo = np.repeat(
                np.arange(self.n, dtype=np.int64),
                np.asarray(self.degrees, dtype=np.int64),
            )
            object.__setattr__(self, "_vertex_of", vo)
        return self._vertex_of

    def half_edge_label(self, h: int) -> tuple[int, int]:
        """(vertex, slot) of half-edge id h, both 1-based for display."""
        v = int(self.vertex_of_half_edge()[h])
        slot = h - int(self.half_edge_offsets()[v]) + 1
        return (v + 1, slot)

    @classmethod
    def from_text(cls, text: str) -> "DegreeSequence":
        """Parse whitespace- or comma-separated degrees."""
        tokens = [t for t in re.split(r"[\s,]+", text.strip()) if t]
        if not tokens:
            raise EmptySequenceError("no degrees found in input")
        return cls(int(t) for t in tokens)

    @classmethod
    def from_file(cls, path) -> "DegreeSequence":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_text(fh.read())

    def __eq__(self, other):
        return isinstance(other, DegreeSequence) and self.degrees == other.degrees

    def __hash__(self):
        return hash(self.degrees)

    def __repr__(self):
        return f"DegreeSequence({list(self.degrees)!r})"

    def __len__(self):
        return len(self.degrees)

    def __iter__(self):
        return iter(self.degrees)


def erdos_gallai(degrees: Iterable[int]) -> bool:
    """True iff some simple graph realizes the degree multiset."""
    d = sorted((int(x) for x in degrees), reverse=True)
    n = len(d)
    if n == 0:
        return True
    if any(x < 0 for x in d) or d[0] > n - 1:
        return False
    if sum(d) % 2 != 0:
        return False
    # tail(k) = sum_{i>k} min(d_i, k); with d descending, entries >= k
    # contribute k each up to the crossing index found by bisection
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + d[i]
    asc = d[::-1]
    prefix = 0
    for k in range(1, n + 1):
        prefix += d[k - 1]
        # first index j >= k (0-based, descending order) with d[j] < k
        j = n - bisect.bisect_left(asc, k)
        j = max(j, k)
        tail = k * (j - k) + suffix[j]
        if prefix > k * (k - 1) + tail:
            return False
    return True


def validate(seq: DegreeSequence) -> ValidationReport:
    """Report whether the sum is even and whether the sequence is graphical.

    Cached on the sequence, so repeated feasibility checks are free.
    """
    if seq._validation is None:
        even = seq.N % 2 == 0
        report = ValidationReport(even_sum=even, graphical=even and erdos_gallai(seq.degrees))
        object.__setattr__(seq, "_validation", report)
    return seq._validation


def require_graphical(seq: DegreeSequence) -> None:
    rep = validate(seq)
    if not rep.graphical:
        reason = "odd degree sum" if not rep.even_sum else "fails the Erdos-Gallai inequalities"
        raise NotGraphicalError(f"degree sequence {list(seq.degrees)} is not graphical ({reason})")


def moments(seq: DegreeSequence) -> MomentSummary:
    """Exact moment sums delta_r = sum d_i^r (r=1..4) plus per-vertex averages."""
    if seq.n == 0:
        raise EmptySequenceError("moments of an empty degree sequence are undefined")
    delta = {r: sum(d**r for d in seq.degrees) for r in (1, 2, 3, 4)}
    if delta[4] > INT64_MAX or delta[1] >= 2**32:
        raise MomentOverflowError(
            "moment sums exceed the supported 64-bit range (N >= 2^32 is out of scale)"
        )
    n = seq.n
    mu = Fraction(delta[1], n)
    mu2 = Fraction(delta[2], n)
    return MomentSummary(
        n=n,
        N=delta[1],
        d_max=seq.d_max,
        delta=delta,
        mu_hat=mu,
        mu2_hat=mu2,
        nu_hat=mu2 - mu,
    )
