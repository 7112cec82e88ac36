"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines are printed as the tests run and repeated in the terminal summary.
"""

import random
import time
from pathlib import Path

from conftest import ACCEPTANCE
from oracles import series_product_coefficients
from invdepth.cache import cache_load, cache_store
from invdepth.corpus import general_linear_group
from invdepth.depth import depth_report, freeness_test, is_regular_sequence
from invdepth.groups import act_on_polynomial, fixed_subspace, gaussian_binomial, sylow_subgroup
from invdepth.invariants import (
    InvariantBasis,
    averaging_rank,
    dickson_invariants,
    hilbert_coefficients,
    subalgebra_hilbert_coefficients,
)
from invdepth.polynomial import Polynomial
from invdepth.report import dumps
from invdepth.runner import run_scenario
from invdepth.scenario import load_scenario
from invdepth.theorems import carlson_detection_check, comodule_identity_check, duflot_bound_check, subspaces_within

SCENARIOS = sorted((Path(__file__).resolve().parent.parent / "scenarios").glob("*.toml"))


def record(number: int, ok: bool, detail: str, capsys) -> None:
    ACCEPTANCE[number] = (ok, detail)
    with capsys.disabled():
        print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_criterion_1_duflot_corpus(groups, capsys):
    start = time.perf_counter()
    rows = []
    ok = True
    for name, G in groups.items():
        cutoff = 8 if G.n == 6 else 10
        v = duflot_bound_check(G, cutoff=cutoff)
        ok &= not v.failed
        q = v.quantities
        rows.append(f"{name}={v.status}" + (f"({q['depth']}>={q['fixed_dim']})" if q else ""))
    elapsed = time.perf_counter() - start
    ok &= elapsed < 300
    record(1, ok, f"{' '.join(rows)}; {elapsed:.1f}s", capsys)


def test_criterion_2_exact_depths(groups, capsys):
    expected = {"z2_regular_x1": 2, "z2_regular_x2": 4, "z2_regular_x3": 5, "z3_regular_f3": 3}
    rows = []
    ok = True
    for name, want in expected.items():
        # confirm_step=1: the same depth must come out at cutoff c and c + 1
        R = depth_report(groups[name], confirm_step=1)
        good = R.depth == want == R.certificate.length == R.koszul.depth and R.confirmed_at == R.cutoff + 1
        ok &= good
        rows.append(f"{name}={R.depth}@{R.cutoff},{R.confirmed_at}")
    record(2, ok, " ".join(rows), capsys)


def test_criterion_3_nonmodular(groups, capsys):
    G = groups["z3_in_gl2f2"]
    R = depth_report(G)
    hil = hilbert_coefficients(G, 10)
    avg = [averaging_rank(G, d) for d in range(11)]
    ok = R.depth == G.n and hil == avg
    record(3, ok, f"depth={R.depth} n={G.n} hilbert={hil} averaging={avg}", capsys)


def test_criterion_4_freeness_equivalence(groups, capsys):
    rng = random.Random(2024)
    pairs = agree = regular = 0
    names = sorted(groups)
    modules = {}
    while pairs < 240:
        name = names[pairs % len(names)]
        G = groups[name]
        cutoff = 6 if G.n == 6 else 8
        if name not in modules:
            modules[name] = InvariantBasis(G).extend(cutoff)
        M = modules[name]
        degrees = [d for d in range(1, 5) if M.dimension(d)]
        seq = []
        for _ in range(rng.randint(1, G.n)):
            d = rng.choice(degrees)
            y = Polynomial.zero(G.n, G.p)
            while y.is_zero():
                for b in M.basis(d):
                    y = y + b.scale(rng.randrange(G.p))
            seq.append(y)
        a = is_regular_sequence(M, seq, cutoff)
        b = freeness_test(M, seq, cutoff)
        pairs += 1
        agree += a == b
        regular += a
    ok = pairs >= 200 and agree == pairs
    record(4, ok, f"{agree}/{pairs} agree ({regular} regular, {pairs - regular} not)", capsys)


def test_criterion_5_comodule(groups, capsys):
    rows = []
    ok = True
    for name, G in groups.items():
        VP = fixed_subspace(sylow_subgroup(G))
        every = [C for k in range(VP.dim + 1) for C in subspaces_within(VP, k)]
        v = comodule_identity_check(G, 8, every)
        ok &= v.status == "pass"
        rows.append(f"{name}:{len(every)}C/{v.quantities['elements_checked']}el")
    record(5, ok, " ".join(rows), capsys)


def test_criterion_6_carlson(groups, capsys):
    rows = []
    ok = True
    for name, G in groups.items():
        M = InvariantBasis(G)
        done = []
        for s in range(1, G.n + 1):
            if gaussian_binomial(G.n, s, G.p) > 200:
                continue
            v = carlson_detection_check(G, s, 8, M=M)
            ok &= v.status == "pass" and not any(v.quantities["kernel_dimensions"])
            done.append(str(s))
        rows.append(f"{name}:s={','.join(done)}")
    record(6, ok, " ".join(rows), capsys)


def test_criterion_7_dickson(capsys):
    G = general_linear_group(2, 2)
    polys = dickson_invariants(2, 2)
    fixed = all(act_on_polynomial(g, f) == f for g in G.elements for f in polys)
    degrees = sorted(f.degree for f in polys)
    hil = subalgebra_hilbert_coefficients(polys, 10)
    want = series_product_coefficients([2, 3], 10)
    ok = G.order == 6 and fixed and degrees == [2, 3] and hil == want
    record(7, ok, f"fixed_by_{G.order}={fixed} degrees={degrees} hilbert={hil}", capsys)


def test_criterion_8_determinism(groups, capsys, tmp_path):
    identical = []
    for path in SCENARIOS:
        sc = load_scenario(path)
        identical.append(dumps(run_scenario(sc)) == dumps(run_scenario(sc)))
    exact = []
    for name, G in groups.items():
        D = 6 if G.n == 6 else 8
        B = InvariantBasis(G).extend(D)
        first = cache_store(tmp_path, B, D).read_bytes()
        loaded = cache_load(tmp_path, G, D)
        same = loaded == B and all(loaded.basis(d) == B.basis(d) for d in range(D + 1))
        same &= cache_store(tmp_path, loaded, D).read_bytes() == first
        exact.append(same)
    ok = all(identical) and all(exact) and len(identical) >= 1
    record(8, ok, f"reports identical {sum(identical)}/{len(identical)}; cache exact {sum(exact)}/{len(exact)}", capsys)
