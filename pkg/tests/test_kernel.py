"""Backend equivalence: compiled kernel vs numpy fallback vs reference engine."""

import numpy as np
import pytest

import switchgraph as sg
from switchgraph import _core, _kernel_py
from switchgraph.degseq import DegreeSequence
from switchgraph.samplers import sample_configuration
from switchgraph.switching import BadEdgeRule, SwitchVariant, run_to_simple

try:
    from switchgraph import _kernel as _compiled
except ImportError:
    _compiled = None

BACKENDS = [("python", _kernel_py)] + ([("compiled", _compiled)] if _compiled else [])


def random_sequences(seed, count, n_lo=2, n_hi=14, d_hi=5):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        degs = rng.integers(0, d_hi, rng.integers(n_lo, n_hi)).tolist()
        if sum(degs) % 2:
            degs[int(np.argmax(degs))] += 1
        seq = DegreeSequence(degs)
        if seq.N >= 2:
            out.append((seq, int(rng.integers(0, 2**32))))
    return out


@pytest.mark.skipif(_compiled is None, reason="compiled kernel not built")
def test_analyze_backends_agree():
    for seq, seed in random_sequences(0, 150):
        vo = seq.vertex_of_half_edge()
        mate = _core.draw_mate(np.random.default_rng(seed), seq.N)
        a = _compiled.analyze_configuration(mate, vo, seq.n)
        b = _kernel_py.analyze_configuration(mate, vo, seq.n)
        for key in ("h1", "h2", "u", "v", "sorted_codes", "order"):
            assert np.array_equal(a[key], b[key]), key
        for key in ("bad", "l", "mm", "m", "sum_red", "b0", "g1", "g2"):
            assert a[key] == b[key], key


def test_analyze_summary_matches_multigraph():
    for seq, seed in random_sequences(1, 100):
        vo = seq.vertex_of_half_edge()
        mate = _core.draw_mate(np.random.default_rng(seed), seq.N)
        info = _core.analyze_configuration(mate, vo, seq.n)
        g = sg.Configuration(seq, mate, check=False).project()
        assert info["l"] == g.loop_count
        assert info["mm"] == g.m_edge_counts()
        assert info["m"] == g.parallel_pair_count
        assert len(info["bad"]) == len(g.bad_edges())


@pytest.mark.parametrize("backend_name,backend", BACKENDS)
def test_driver_matches_engine_bit_for_bit(backend_name, backend):
    rules = [BadEdgeRule.LEX, BadEdgeRule.RANDOM, BadEdgeRule.EDGE_ORDER,
             BadEdgeRule.LEX_PARALLEL_FIRST]
    variants = [SwitchVariant.ANY, SwitchVariant.DISJOINT]
    i = 0
    for seq, seed in random_sequences(2, 200, n_lo=4, n_hi=11, d_hi=4):
        if not sg.validate(seq).graphical:
            continue
        rule = rules[i % 4]
        variant = variants[i % 2]
        i += 1
        r1 = np.random.default_rng(seed)
        cfg = sample_configuration(seq, r1)
        try:
            g1, tr = run_to_simple(cfg, rule, variant, r1)
        except sg.PartnerPoolError:
            continue
        r2 = np.random.default_rng(seed)
        vo = seq.vertex_of_half_edge()
        mate = _core.draw_mate(r2, seq.N)
        res = _core.run_switched(
            mate, vo, seq.n, int(rule), int(variant), r2,
            analyze=backend.analyze_configuration,
        )
        assert res["s"] == tr.s
        assert res["restarted"] == tr.restarted
        assert res["silver"] == tr.silver
        assert res["golden"] == tr.golden
        assert res["new_bad"] == tr.new_bad
        assert res["l0"] == tr.l0
        assert res["mm0"] == tr.mm0
        assert res["m0"] == tr.m0
        assert res["b0"] == tr.b0
        lower = np.nonzero(mate > np.arange(seq.N))[0]
        edges = sorted(
            (min(int(vo[h]), int(vo[mate[h]])), max(int(vo[h]), int(vo[mate[h]])))
            for h in lower
        )
        assert tuple(edges) == g1.key()


def test_backend_selector_env(monkeypatch):
    import importlib
    import switchgraph._core as core

    assert core.backend_name() in ("compiled", "python")
    # the fallback is always importable and callable
    seq = DegreeSequence([2, 2, 1, 1])
    vo = seq.vertex_of_half_edge()
    mate = _core.draw_mate(np.random.default_rng(0), seq.N)
    info = _kernel_py.analyze_configuration(mate, vo, seq.n)
    assert info["l"] + info["m"] >= 0


def test_restart_path_consistency():
    # force restarts with max_switches=0 on a non-simple start: both engine and
    # driver must restart identically and report restarted runs as not silver
    seq = DegreeSequence([2, 2, 1, 1, 1, 1])
    for seed in range(40):
        cfg = sample_configuration(seq, np.random.default_rng(seed))
        if cfg.is_simple():
            continue
        r1 = np.random.default_rng(1000 + seed)
        g1, tr = run_to_simple(cfg, BadEdgeRule.LEX, SwitchVariant.ANY, r1, max_switches=0)
        assert tr.restarted >= 1
        assert not tr.silver
        r2 = np.random.default_rng(1000 + seed)
        vo = seq.vertex_of_half_edge()
        mate = cfg.mate.copy()
        res = _core.run_switched(mate, vo, seq.n, 0, 0, r2, max_switches=0)
        assert res["restarted"] == tr.restarted
        assert res["s"] == tr.s
        return
    raise AssertionError("no non-simple start found")
