"""Scenario pipeline: enumerate, invariants, depth, theorems."""

from __future__ import annotations

import time
from contextlib import contextmanager
from typing import Any

from .cache import cached_basis
from .depth import depth_report
from .errors import CapacityError
from .groups import fixed_subspace, sylow_subgroup
from .invariants import minimal_generators
from .polynomial import GradingConvention
from .report import depth_json, envelope, hilbert_json, verdict_json
from .scenario import Scenario
from .theorems import (
    carlson_detection_check,
    comodule_identity_check,
    duflot_bound_check,
    duflot_lifting_check,
    es_comparison,
    lifting_search,
    stabilizer_component_check,
)


class _Phases:
    def __init__(self):
        self.timings: dict[str, float] = {}

    @contextmanager
    def __call__(self, name: str):
        start = time.perf_counter()
        try:
            yield
        except CapacityError as exc:
            exc.phase = name
            raise
        finally:
            self.timings[name] = self.timings.get(name, 0.0) + time.perf_counter() - start


def run_scenario(sc: Scenario, cache_dir=None, timings: bool = False) -> dict[str, Any]:
    """Run every computation the scenario asks for and return the report dictionary.

    A :class:`CapacityError` escaping from here has a ``phase`` attribute
    naming the step that hit the limit.
    """
    grading = GradingConvention(sc.grading)
    phase = _Phases()
    results: dict[str, Any] = {}

    with phase("enumerate"):
        G = sc.group()
        P = sylow_subgroup(G)
        VP = fixed_subspace(P)
        results["group"] = {
            "order": G.order,
            "sylow_order": P.order,
            "fixed_dim": VP.dim,
            "modular": G.order % G.p == 0,
        }

    with phase("invariants"):
        M = cached_basis(cache_dir, G, sc.cutoff)
        results["hilbert"] = hilbert_json(M.hilbert(sc.cutoff), grading)
        results["generators"] = [
            {"degree": grading.display(d), "polynomial": repr(f)} for d, f in minimal_generators(G, sc.cutoff, M)
        ]

    with phase("depth"):
        R = depth_report(G, cutoff=sc.depth_cutoff, seed=sc.seed, hsop=sc.hsop, M=M)
        results["depth"] = depth_json(R, grading)

    verdicts = []
    with phase("theorems"):
        for name in sc.theorems:
            if name == "duflot":
                verdicts.append(duflot_bound_check(G, report=R))
            elif name == "es":
                verdicts.append(es_comparison(G, report=R))
            elif name == "lifting":
                for i, spec in enumerate(sc.sequences):
                    C = sc.subspace(spec.subspace) if spec.subspace is not None else VP
                    verdicts.append(duflot_lifting_check(G, C, sc.sequence_polynomials(i), sc.cutoff, P=P, M=M))
                if sc.lifting_trials:
                    verdicts.append(lifting_search(G, sc.lifting_trials, sc.cutoff, seed=sc.seed))
            elif name == "stabilizer":
                for U in [sc.subspace(b) for b in sc.subspaces] or [VP]:
                    verdicts.append(stabilizer_component_check(G, U, sc.cutoff, M=M))
            elif name == "carlson":
                for s in sc.carlson:
                    verdicts.append(carlson_detection_check(G, s, sc.cutoff, M=M, report=R))
            elif name == "comodule":
                chosen = [sc.subspace(b) for b in sc.subspaces if sc.subspace(b).issubspace(VP)] or None
                verdicts.append(comodule_identity_check(G, sc.cutoff, chosen))
    results["verdicts"] = [verdict_json(v, grading) for v in verdicts]
    status = "fail" if any(v.failed for v in verdicts) else "pass"
    return envelope(sc.to_dict(), results, status, phase.timings if timings else None)
