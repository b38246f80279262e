"""Top-level samplers over a degree sequence.

All samplers take an explicit seed (or a numpy Generator) and consume
randomness in the documented order (see switchgraph._core), so every draw is
reproducible bit-for-bit. Samplers are pure functions of (sequence, seed);
batches over independent seeds parallelize with no shared state.
"""

from __future__ import annotations

import numpy as np

from . import _core
from .degseq import DegreeSequence, require_graphical
from .multigraph import Configuration, Multigraph
from .switching import BadEdgeRule, SwitchTrace, SwitchVariant, run_to_simple

DEFAULT_MAX_ATTEMPTS = 10_000


class RejectionCapError(RuntimeError):
    """Rejection sampling did not find a simple graph within the attempt cap."""

    def __init__(self, attempts: int):
        self.attempts = attempts
        self.simple_rate = 0.0
        super().__init__(
            f"no simple graph found in {attempts} attempts "
            f"(empirical simplicity rate {self.simple_rate:.2e} < 1/{attempts})"
        )


def as_generator(seed_or_rng) -> np.random.Generator:
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


def sample_configuration(seq: DegreeSequence, rng) -> Configuration:
    """Uniform configuration: one permutation draw, consecutive entries matched."""
    if seq.N % 2 != 0:
        raise ValueError(f"degree sum N={seq.N} must be even")
    rng = as_generator(rng)
    return Configuration(seq, _core.draw_mate(rng, seq.N), check=False)


def sample_configuration_batch(seq: DegreeSequence, rng, count: int) -> np.ndarray:
    """(count, N) mate rows from one bulk permutation draw (separate draw order)."""
    if seq.N % 2 != 0:
        raise ValueError(f"degree sum N={seq.N} must be even")
    rng = as_generator(rng)
    return _core.draw_mate_batch(rng, seq.N, count)


def sample_multigraph(seq: DegreeSequence, rng) -> Multigraph:
    """The configuration-model multigraph: projection of a uniform configuration."""
    return sample_configuration(seq, rng).project()


def sample_uniform_simple(
    seq: DegreeSequence, rng, max_attempts: int = DEFAULT_MAX_ATTEMPTS
) -> Multigraph:
    """Exactly uniform simple graph by whole-configuration rejection."""
    require_graphical(seq)
    rng = as_generator(rng)
    for _ in range(max_attempts):
        g = sample_configuration(seq, rng).project()
        if g.is_simple():
            return g
    raise RejectionCapError(max_attempts)


def sample_switched(
    seq: DegreeSequence,
    rng,
    rule: BadEdgeRule = BadEdgeRule.LEX,
    variant: SwitchVariant = SwitchVariant.ANY,
    max_switches: int | None = None,
) -> tuple[Multigraph, SwitchTrace]:
    """Simple graph via switching the bad edges of a fresh configuration."""
    require_graphical(seq)
    rng = as_generator(rng)
    config = sample_configuration(seq, rng)
    return run_to_simple(config, rule, variant, rng, max_switches=max_switches)


def sample_switched_summary(
    seq: DegreeSequence,
    rng,
    rule: BadEdgeRule = BadEdgeRule.LEX,
    variant: SwitchVariant = SwitchVariant.ANY,
    max_switches: int | None = None,
    mate_out: np.ndarray | None = None,
):
    """Hot-path variant of sample_switched for experiments.

    Uses the selected kernel backend, draws the identical random stream as
    sample_switched, and returns (summary dict, initial (u, v) edge arrays,
    final (u, v) edge arrays) without building graph objects.
    """
    require_graphical(seq)
    rng = as_generator(rng)
    vo = seq.vertex_of_half_edge()
    mate = _core.draw_mate(rng, seq.N, out=mate_out)
    lower = np.nonzero(mate > np.arange(seq.N))[0]
    eu0 = vo[lower].copy()
    ev0 = vo[mate[lower]].copy()
    res = _core.run_switched(
        mate, vo, seq.n, int(rule), int(variant), rng, max_switches=max_switches
    )
    lower = np.nonzero(mate > np.arange(seq.N))[0]
    eu1 = vo[lower]
    ev1 = vo[mate[lower]]
    return res, (eu0, ev0), (eu1, ev1)
