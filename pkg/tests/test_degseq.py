import numpy as np
import pytest

from switchgraph.degseq import (
    DegreeSequence,
    EmptySequenceError,
    MomentOverflowError,
    erdos_gallai,
    moments,
    validate,
)


def test_validate_examples():
    assert validate(DegreeSequence([2, 2, 1, 1, 1, 1])) == validate(
        DegreeSequence([1, 1, 1, 1, 2, 2])
    )
    rep = validate(DegreeSequence([2, 2, 1, 1, 1, 1]))
    assert rep.even_sum and rep.graphical
    rep = validate(DegreeSequence([1, 1, 1]))
    assert not rep.even_sum and not rep.graphical
    rep = validate(DegreeSequence([3, 1]))
    assert rep.even_sum and not rep.graphical


def test_moments_examples():
    m = moments(DegreeSequence([2, 2, 1, 1, 1, 1]))
    assert m.N == 8
    assert m.d_max == 2
    assert m.delta[2] == 12
    assert m.nu_hat == pytest.approx(4 / 6)
    assert m.nu_hat == m.mu2_hat - m.mu_hat

    m = moments(DegreeSequence([3, 3, 3, 3]))
    assert m.N == 12
    assert m.nu_hat == 6

    with pytest.raises(EmptySequenceError):
        moments(DegreeSequence([]))


def test_moment_overflow_reported():
    with pytest.raises(MomentOverflowError):
        moments(DegreeSequence([2**31, 2**31]))


def test_negative_degree_rejected():
    with pytest.raises(ValueError):
        DegreeSequence([1, -1])


def test_parity_matches_even_sum():
    rng = np.random.default_rng(0)
    for _ in range(200):
        degs = rng.integers(0, 6, rng.integers(1, 10)).tolist()
        seq = DegreeSequence(degs)
        assert (moments(seq).N % 2 == 0) == validate(seq).even_sum


def _realizable_degree_multisets(n):
    """Degree multisets of all labeled simple graphs on n vertices, by brute force."""
    import itertools

    pairs = list(itertools.combinations(range(n), 2))
    found = set()
    for mask in range(1 << len(pairs)):
        deg = [0] * n
        m = mask
        idx = 0
        while m:
            if m & 1:
                u, v = pairs[idx]
                deg[u] += 1
                deg[v] += 1
            m >>= 1
            idx += 1
        found.add(tuple(sorted(deg, reverse=True)))
    return found


@pytest.mark.slow
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_erdos_gallai_vs_bruteforce(n):
    import itertools

    realizable = _realizable_degree_multisets(n)
    for degs in itertools.combinations_with_replacement(range(n), n):
        seq = tuple(sorted(degs, reverse=True))
        assert erdos_gallai(seq) == (seq in realizable), seq


@pytest.mark.slow
def test_erdos_gallai_vs_bruteforce_n7():
    # vectorized graph enumeration (2^21 graphs)
    import itertools

    n = 7
    pairs = list(itertools.combinations(range(n), 2))
    e = len(pairs)
    found = set()
    chunk = 1 << 16
    incidence = np.zeros((e, n), dtype=np.int8)
    for i, (u, v) in enumerate(pairs):
        incidence[i, u] = 1
        incidence[i, v] = 1
    for start in range(0, 1 << e, chunk):
        masks = np.arange(start, start + chunk, dtype=np.int64)
        bits = (masks[:, None] >> np.arange(e)) & 1
        degs = bits @ incidence
        degs.sort(axis=1)
        for row in np.unique(degs, axis=0):
            found.add(tuple(row[::-1].tolist()))
    for degs in itertools.combinations_with_replacement(range(n), n):
        seq = tuple(sorted(degs, reverse=True))
        assert erdos_gallai(seq) == (seq in found), seq


def test_parsing_roundtrip(tmp_path):
    seq = DegreeSequence.from_text("2, 2 1,1  1 1")
    assert seq.degrees == (2, 2, 1, 1, 1, 1)
    f = tmp_path / "degs.txt"
    f.write_text("3 3\n3,3\n")
    assert DegreeSequence.from_file(f).degrees == (3, 3, 3, 3)
    with pytest.raises(EmptySequenceError):
        DegreeSequence.from_text("   ")


def test_half_edge_layout():
    seq = DegreeSequence([2, 0, 3])
    assert seq.half_edge_offsets().tolist() == [0, 2, 2, 5]
    assert seq.vertex_of_half_edge().tolist() == [0, 0, 2, 2, 2]
    assert seq.half_edge_label(0) == (1, 1)
    assert seq.half_edge_label(4) == (3, 3)
