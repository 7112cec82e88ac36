"""Command-line entry point (``invdepth``).

Exit codes: 0 all checks pass, 1 a theorem check failed or two depth methods
disagreed, 2 a capacity limit was hit, 3 bad input.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any

from .cache import cached_basis
from .coaction import coaction
from .corpus import corpus
from .depth import depth_report
from .errors import CapacityError, InconsistencyError, InvDepthError, PreconditionError, ScenarioError, StructuralError
from .groups import MatrixGroup, Subspace, fixed_subspace, sylow_subgroup
from .invariants import InvariantBasis, dickson_invariants, minimal_generators
from .polynomial import GradingConvention
from .report import depth_json, dumps, envelope, hilbert_json, polynomial_json, verdict_json
from .runner import run_scenario
from .scenario import DEFAULT_CUTOFF, load_scenario
from .theorems import (
    carlson_detection_check,
    comodule_identity_check,
    describe,
    duflot_bound_check,
    es_comparison,
)

EXIT_OK, EXIT_FAIL, EXIT_CAPACITY, EXIT_INPUT = 0, 1, 2, 3


def _group(args) -> MatrixGroup:
    if args.scenario:
        return load_scenario(args.scenario).group()
    if args.group:
        groups = corpus()
        if args.group not in groups:
            raise ScenarioError(f"unknown corpus group {args.group!r}; choose from {', '.join(sorted(groups))}")
        return groups[args.group]
    if args.p is None or args.gens is None:
        raise ScenarioError("give --group, --scenario, or both --p and --gens")
    try:
        gens = json.loads(args.gens)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"--gens is not valid JSON: {exc}") from exc
    if not gens or not isinstance(gens, list):
        raise ScenarioError("--gens must be a non-empty JSON list of square matrices")
    return MatrixGroup(args.p, len(gens[0]), gens)


def _subspace(text: str | None, G: MatrixGroup, default: Subspace) -> Subspace:
    if text is None:
        return default
    try:
        return Subspace.span(json.loads(text), G.p, G.n)
    except (json.JSONDecodeError, TypeError) as exc:
        raise ScenarioError(f"--subspace must be a JSON list of basis vectors: {exc}") from exc


def _cmd_invariants(args, G, grading) -> tuple[dict, bool]:
    M = cached_basis(args.cache_dir, G, args.cutoff)
    pieces = [
        {"degree": grading.display(d), "basis": [polynomial_json(f) for f in M.basis(d)]}
        for d in range(args.cutoff + 1)
    ]
    gens = [{"degree": grading.display(d), "polynomial": repr(f)} for d, f in minimal_generators(G, args.cutoff, M)]
    return {"invariants": pieces, "generators": gens}, True


def _cmd_hilbert(args, G, grading):
    M = cached_basis(args.cache_dir, G, args.cutoff)
    return {"hilbert": hilbert_json(M.hilbert(args.cutoff), grading)}, True


def _cmd_depth(args, G, grading):
    M = cached_basis(args.cache_dir, G, args.cutoff)
    R = depth_report(G, cutoff=args.depth_cutoff, seed=args.seed, hsop=args.hsop, M=M)
    return {"depth": depth_json(R, grading)}, True


def _cmd_duflot(args, G, grading):
    M = cached_basis(args.cache_dir, G, args.cutoff)
    R = depth_report(G, cutoff=args.depth_cutoff, seed=args.seed, hsop=args.hsop, M=M) if G.order % G.p == 0 else None
    verdicts = [duflot_bound_check(G, report=R), es_comparison(G, report=R)]
    return {"verdicts": [verdict_json(v, grading) for v in verdicts]}, not any(v.failed for v in verdicts)


def _cmd_carlson(args, G, grading):
    if not 0 <= args.s <= G.n:
        raise ScenarioError(f"--s={args.s} is outside 0..n={G.n}")
    M = cached_basis(args.cache_dir, G, args.cutoff)
    v = carlson_detection_check(G, args.s, args.cutoff, M=M)
    return {"verdicts": [verdict_json(v, grading)]}, not v.failed


def _cmd_coaction(args, G, grading):
    P = sylow_subgroup(G)
    C = _subspace(args.subspace, G, fixed_subspace(P))
    MP = InvariantBasis(P.as_group())
    expansions = [
        {"element": repr(f), "coaction": repr(coaction(f, C, P))} for f in MP.basis(args.degree)
    ]
    v = comodule_identity_check(G, args.cutoff, [C])
    return {
        "subspace": [list(b) for b in C.basis],
        "degree": grading.display(args.degree),
        "expansions": expansions,
        "verdicts": [verdict_json(v, grading)],
    }, not v.failed


def _cmd_dickson(args, grading):
    polys = dickson_invariants(args.p, args.n)
    return {
        "dickson": [{"degree": grading.display(f.degree), "polynomial": polynomial_json(f)} for f in polys]
    }, True


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cutoff", type=int, default=None, help=f"degree cutoff in algebraic grading (default {DEFAULT_CUTOFF})")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--cache-dir", type=Path, default=None)
    common.add_argument("--report-out", type=Path, default=None, help="write the JSON report here instead of stdout")
    common.add_argument("--grading", choices=["algebraic", "topological"], default=None)
    common.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte-identical reports)")
    common.add_argument("-v", "--verbose", action="store_true")

    grp = argparse.ArgumentParser(add_help=False)
    grp.add_argument("--group", help="name of a built-in corpus group")
    grp.add_argument("--scenario", type=Path, help="take the group from a scenario file")
    grp.add_argument("--p", type=int)
    grp.add_argument("--gens", help="generators as a JSON list of matrices")

    dep = argparse.ArgumentParser(add_help=False)
    dep.add_argument("--depth-cutoff", type=int, default=None, help="cutoff for the depth engine (default: automatic)")
    dep.add_argument("--hsop", choices=["auto", "dickson"], default="auto")

    parser = argparse.ArgumentParser(prog="invdepth", description="Depth of modular invariant rings.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("invariants", parents=[common, grp], help="invariant bases and algebra generators")
    sub.add_parser("hilbert", parents=[common, grp], help="Hilbert coefficients")
    d = sub.add_parser("dickson", parents=[common], help="Dickson invariants of GL_n(F_p)")
    d.add_argument("--p", type=int, required=True)
    d.add_argument("--n", type=int, required=True)
    sub.add_parser("depth", parents=[common, grp, dep], help="depth with certificate and Koszul profile")
    sub.add_parser("duflot", parents=[common, grp, dep], help="depth lower bounds from the Sylow fixed space")
    c = sub.add_parser("carlson", parents=[common, grp], help="detection on pointwise stabilizers")
    c.add_argument("--s", type=int, default=1, help="subspace dimension")
    co = sub.add_parser("coaction", parents=[common, grp], help="coaction of a fixed subspace")
    co.add_argument("--subspace", help="basis of C as JSON (default: the Sylow fixed space)")
    co.add_argument("--degree", type=int, default=2)
    r = sub.add_parser("run", parents=[common], help="run a full scenario file")
    r.add_argument("path", type=Path)
    return parser


COMMANDS = {
    "invariants": _cmd_invariants,
    "hilbert": _cmd_hilbert,
    "depth": _cmd_depth,
    "duflot": _cmd_duflot,
    "carlson": _cmd_carlson,
    "coaction": _cmd_coaction,
}


def _execute(args) -> tuple[dict[str, Any], bool]:
    if args.command == "run":
        # flags given on the command line override the scenario file
        sc = load_scenario(args.path)
        overrides = {k: getattr(args, k) for k in ("cutoff", "seed", "grading") if getattr(args, k) is not None}
        if overrides.get("cutoff", 1) < 1:
            raise ScenarioError("--cutoff must be >= 1")
        sc = dataclasses.replace(sc, **overrides)
        report = run_scenario(sc, cache_dir=args.cache_dir, timings=args.timings)
        return report, report["status"] == "pass"
    args.cutoff = DEFAULT_CUTOFF if args.cutoff is None else args.cutoff
    args.seed = 0 if args.seed is None else args.seed
    args.grading = args.grading or "algebraic"
    if args.cutoff < 0:
        raise ScenarioError("--cutoff must be non-negative")
    grading = GradingConvention(args.grading)
    start = time.perf_counter()
    if args.command == "dickson":
        echo = {"command": "dickson", "p": args.p, "n": args.n}
        results, ok = _cmd_dickson(args, grading)
    else:
        G = _group(args)
        echo = {"command": args.command, "cutoff": args.cutoff, "seed": args.seed, "grading": args.grading, "group": describe(G)}
        results, ok = COMMANDS[args.command](args, G, grading)
    timings = {"total": time.perf_counter() - start} if args.timings else None
    return envelope(echo, results, "pass" if ok else "fail", timings), ok


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        report, ok = _execute(args)
    except CapacityError as exc:
        phase = getattr(exc, "phase", None)
        print(f"capacity exceeded{f' during {phase}' if phase else ''}: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InconsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ScenarioError, StructuralError, PreconditionError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvDepthError as exc:  # pragma: no cover
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = dumps(report)
    if args.report_out:
        args.report_out.write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
