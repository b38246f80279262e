#!/usr/bin/env python3
"""Benchmark: compiled configuration-analysis kernel vs pure-numpy fallback.

Times (a) analyze_configuration alone and (b) full switched runs (pair, switch
to simple, classify), per replicate, on r-regular sequences across an n grid.

Usage:
    python benchmarks/bench_kernel.py [--n-grid 1000,10000,100000] [--reps 200]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from switchgraph import _core, _kernel_py
from switchgraph.degseq import DegreeSequence

try:
    from switchgraph import _kernel as _compiled
except ImportError:
    _compiled = None


def time_analyze(analyze, seq, reps, seed=1):
    rng = np.random.default_rng(seed)
    vo = seq.vertex_of_half_edge()
    mates = [_core.draw_mate(rng, seq.N) for _ in range(min(reps, 64))]
    t0 = time.perf_counter()
    for i in range(reps):
        analyze(mates[i % len(mates)], vo, seq.n)
    return (time.perf_counter() - t0) / reps


def time_full_run(analyze, seq, reps, seed=1):
    rng = np.random.default_rng(seed)
    vo = seq.vertex_of_half_edge()
    t0 = time.perf_counter()
    for _ in range(reps):
        mate = _core.draw_mate(rng, seq.N)
        _core.run_switched(mate, vo, seq.n, 0, 0, rng, analyze=analyze)
    return (time.perf_counter() - t0) / reps


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-grid", default="1000,10000,100000")
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--reps", type=int, default=200)
    args = p.parse_args()

    backends = [("python", _kernel_py.analyze_configuration)]
    if _compiled is not None:
        backends.append(("compiled", _compiled.analyze_configuration))
    else:
        print("compiled kernel not built; timing the fallback only\n")

    print(f"{args.degree}-regular sequences, {args.reps} replicates per cell")
    print(f"{'n':>8} {'phase':>10} " + " ".join(f"{name:>12}" for name, _ in backends)
          + ("   speedup" if len(backends) == 2 else ""))
    for n in (int(x) for x in args.n_grid.split(",")):
        seq = DegreeSequence([args.degree] * n)
        for phase, timer in (("analyze", time_analyze), ("full run", time_full_run)):
            cells = [timer(fn, seq, args.reps) for _, fn in backends]
            row = f"{n:>8} {phase:>10} " + " ".join(f"{c * 1e3:>10.3f}ms" for c in cells)
            if len(cells) == 2:
                row += f"   {cells[0] / cells[1]:>6.2f}x"
            print(row)


if __name__ == "__main__":
    main()
