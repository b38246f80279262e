"""Command-line frontend: samplers, exact oracles, and experiments.

Exit codes: 0 success (and, for experiments, all declared checks passed),
1 failed experiment checks, 2 usage error, 3 infeasible input (not graphical),
4 enumeration cap exceeded. Seeds are always explicit; identical flag sets
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import _core, exact, experiments
from .degseq import DegreeSequence, NotGraphicalError, validate
from .multigraph import EnumerationCapError
from .samplers import (
    sample_configuration,
    sample_multigraph,
    sample_switched,
    sample_uniform_simple,
)
from .switching import BadEdgeRule, SwitchVariant, red_paths

EXIT_OK = 0
EXIT_CHECKS_FAILED = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_CAP = 4

_RULES = {
    "lex": BadEdgeRule.LEX,
    "random": BadEdgeRule.RANDOM,
    "edge-order": BadEdgeRule.EDGE_ORDER,
    "lex-parallel-first": BadEdgeRule.LEX_PARALLEL_FIRST,
}
_VARIANTS = {"any": SwitchVariant.ANY, "disjoint": SwitchVariant.DISJOINT}


def _degrees_from_args(args) -> DegreeSequence:
    if args.degrees_file:
        return DegreeSequence.from_file(args.degrees_file)
    if args.degrees:
        return DegreeSequence.from_text(args.degrees)
    raise ValueError("a degree sequence is required (--degrees or --degrees-file)")


def _add_degree_flags(p):
    p.add_argument("--degrees", help="inline degrees, comma/whitespace separated")
    p.add_argument("--degrees-file", help="file with whitespace/comma separated degrees")


def cmd_sample(args, out) -> int:
    seq = _degrees_from_args(args)
    rep = validate(seq)
    if args.model in ("switched", "uniform") and not rep.graphical:
        print(f"error: degree sequence is not graphical ({list(seq.degrees)})", file=sys.stderr)
        return EXIT_INFEASIBLE
    if args.model == "config" and not rep.even_sum:
        print("error: degree sum must be even", file=sys.stderr)
        return EXIT_INFEASIBLE
    rng = np.random.default_rng(args.seed)
    rule = _RULES[args.rule]
    variant = _VARIANTS[args.variant]
    for _ in range(args.count):
        trace = None
        if args.model == "config":
            g = sample_configuration(seq, rng).project()
        elif args.model == "uniform":
            g = sample_uniform_simple(seq, rng)
        else:
            g, trace = sample_switched(seq, rng, rule=rule, variant=variant)
        if args.format == "edgelist":
            out.write(g.to_edgelist_text())
            out.write("\n")
        else:
            payload = g.to_json_dict()
            if trace is not None:
                red = red_paths(trace) if trace.silver else None
                payload["trace"] = trace.to_json_dict(red)
            out.write(json.dumps(payload) + "\n")
    return EXIT_OK


def cmd_exact(args, out) -> int:
    seq = _degrees_from_args(args)
    rule = _RULES[args.rule]
    variant = _VARIANTS[args.variant]
    try:
        if args.what == "uniform":
            dist = exact.uniform_simple_distribution(seq)
            out.write(json.dumps(dist.to_json_dict(), indent=2) + "\n")
        elif args.what == "switched":
            dist = exact.switched_distribution_exact(seq, rule=rule, variant=variant)
            out.write(json.dumps(dist.to_json_dict(), indent=2) + "\n")
        else:  # tv
            switched = exact.switched_distribution_exact(seq, rule=rule, variant=variant)
            uniform = exact.uniform_simple_distribution(seq)
            d = exact.tv_distance(switched, uniform)
            out.write(str(d) + "\n")
    except NotGraphicalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    return EXIT_OK


def cmd_experiment(args, out) -> int:
    if args.name not in experiments.EXPERIMENTS:
        print(
            f"error: unknown experiment {args.name!r}; "
            f"choose from {sorted(experiments.EXPERIMENTS)}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    n_grid = [int(x) for x in args.n_grid.split(",") if x]
    rule = _RULES[args.rule]
    variant = _VARIANTS[args.variant]
    common = dict(n_grid=n_grid, replicates=args.replicates, seed=args.seed, raw=args.raw)
    if args.name == "example-eo":
        fam = experiments.parse_family(args.family)
        if not fam.name.startswith("eo:"):
            print("error: example-eo needs an eo:a=<value> family", file=sys.stderr)
            return EXIT_USAGE
        a = float(fam.name.split("=")[1])
        report = experiments.exp_example_eo(a, rule=rule, variant=variant, **common)
    else:
        fam = experiments.parse_family(args.family)
        fn = experiments.EXPERIMENTS[args.name]
        if args.name == "path-limits":
            report = fn(fam, **common)
        elif args.name == "components":
            report = fn(fam, rule=rule, variant=variant, tree=args.tree, **common)
        else:
            report = fn(fam, rule=rule, variant=variant, **common)
    if args.out:
        report.write(args.out)
    out.write(report.to_json() + "\n")
    return EXIT_OK if report.passed else EXIT_CHECKS_FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="switchgraph",
        description="Degree-sequence random graphs via pairing and switchings",
    )
    sub = p.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("sample", help="emit random graphs")
    _add_degree_flags(ps)
    ps.add_argument("--model", choices=("config", "switched", "uniform"), default="switched")
    ps.add_argument("--rule", choices=sorted(_RULES), default="lex")
    ps.add_argument("--variant", choices=sorted(_VARIANTS), default="any")
    ps.add_argument("--seed", type=int, required=True)
    ps.add_argument("--count", type=int, default=1)
    ps.add_argument("--format", choices=("edgelist", "json"), default="edgelist")
    ps.set_defaults(fn=cmd_sample)

    pe = sub.add_parser("exact", help="exact small-instance distributions")
    _add_degree_flags(pe)
    pe.add_argument("--what", choices=("uniform", "switched", "tv"), required=True)
    pe.add_argument("--rule", choices=sorted(_RULES), default="lex")
    pe.add_argument("--variant", choices=sorted(_VARIANTS), default="any")
    pe.set_defaults(fn=cmd_exact)

    px = sub.add_parser("experiment", help="run a Monte Carlo experiment")
    px.add_argument("--name", required=True)
    px.add_argument("--family", required=True)
    px.add_argument("--n-grid", required=True)
    px.add_argument("--replicates", type=int, default=1000)
    px.add_argument("--seed", type=int, required=True)
    px.add_argument("--rule", choices=sorted(_RULES), default="lex")
    px.add_argument("--variant", choices=sorted(_VARIANTS), default="any")
    px.add_argument("--tree", choices=("P1", "P2"), default="P1")
    px.add_argument("--out", help="directory for report.json/csv files")
    px.add_argument("--raw", action="store_true", help="also emit per-replicate rows")
    px.set_defaults(fn=cmd_experiment)
    return p


def main(argv=None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = out if out is not None else sys.stdout
    try:
        return args.fn(args, out)
    except NotGraphicalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
