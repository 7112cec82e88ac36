"""Executable checks of the depth and detection theorems for invariant rings.

Each check returns a :class:`TheoremVerdict`.  A ``"fail"`` verdict is a
counterexample to a theorem and therefore a bug somewhere in this package; it
always carries a finite witness.  Passing verdicts record the cutoffs under
which they hold.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import linalg
from .coaction import coassociativity_check, counit_check, restrict_to_subspace
from .depth import (
    DepthReport,
    RegularSequenceCertificate,
    depth_report,
    module_regular_sequence_check,
    regular_in_polynomial_ring,
)
from .errors import PreconditionError, StructuralError
from .groups import (
    MatrixGroup,
    SubgroupHandle,
    Subspace,
    fixed_subspace,
    pointwise_stabilizer,
    subspaces_of_dim,
    sylow_subgroup,
)
from .invariants import InvariantBasis
from .polynomial import Polynomial, clear_substitution_cache

PASS = "pass"
FAIL = "fail"
VACUOUS = "vacuous"
HYPOTHESIS_NOT_SATISFIED = "hypothesis-not-satisfied"


@dataclass
class TheoremVerdict:
    theorem: str
    instance: dict[str, Any]
    status: str
    quantities: dict[str, Any] = field(default_factory=dict)
    witness: dict[str, Any] = field(default_factory=dict)
    cutoffs: dict[str, int] = field(default_factory=dict)
    note: str = ""

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_dict(self) -> dict[str, Any]:
        return {
            "theorem": self.theorem,
            "status": self.status,
            "instance": self.instance,
            "quantities": self.quantities,
            "witness": self.witness,
            "cutoffs": self.cutoffs,
            "note": self.note,
        }


def describe(G: MatrixGroup) -> dict[str, Any]:
    return {"p": G.p, "n": G.n, "order": G.order, "generators": [[list(r) for r in g] for g in G.generators]}


def _depth(G: MatrixGroup, report: DepthReport | None, **kw) -> DepthReport:
    return report if report is not None else depth_report(G, **kw)


def _depth_witness(report: DepthReport) -> dict[str, Any]:
    return {
        "regular_sequence": [repr(f) for f in report.certificate.sequence],
        "koszul_nonzero": {f"H{i}[{d}]": v for (i, d), v in report.koszul.nonzero().items()},
        "hsop": [repr(f) for f in report.koszul.hsop],
    }


def duflot_bound_check(G: MatrixGroup, report: DepthReport | None = None, **depth_kw) -> TheoremVerdict:
    """depth F[V]^G >= dim V^P for a Sylow p-subgroup P."""
    if G.order % G.p:
        return TheoremVerdict("duflot_bound", describe(G), VACUOUS, note="p does not divide |G|")
    P = sylow_subgroup(G)
    c = fixed_subspace(P).dim
    report = _depth(G, report, **depth_kw)
    status = PASS if report.depth >= c else FAIL
    return TheoremVerdict(
        "duflot_bound",
        describe(G),
        status,
        quantities={"sylow_order": P.order, "fixed_dim": c, "depth": report.depth},
        witness=_depth_witness(report),
        cutoffs={"depth": report.cutoff, **({"confirm": report.confirmed_at} if report.confirmed_at else {})},
    )


def es_comparison(G: MatrixGroup, report: DepthReport | None = None, **depth_kw) -> TheoremVerdict:
    """depth F[V]^G >= min(dim V^P + 2, n); also records whether equality holds."""
    if G.order % G.p:
        return TheoremVerdict("es_bound", describe(G), VACUOUS, note="p does not divide |G|")
    P = sylow_subgroup(G)
    c = fixed_subspace(P).dim
    bound = min(c + 2, G.n)
    report = _depth(G, report, **depth_kw)
    return TheoremVerdict(
        "es_bound",
        describe(G),
        PASS if report.depth >= bound else FAIL,
        quantities={"fixed_dim": c, "bound": bound, "depth": report.depth, "equality": report.depth == bound},
        witness=_depth_witness(report),
        cutoffs={"depth": report.cutoff, **({"confirm": report.confirmed_at} if report.confirmed_at else {})},
    )


def duflot_lifting_check(
    G: MatrixGroup,
    C: Subspace,
    seq: Sequence[Polynomial],
    cutoff: int,
    P: SubgroupHandle | None = None,
    M: InvariantBasis | None = None,
) -> TheoremVerdict:
    """If the restrictions of ``seq`` to ``C`` are regular in F[C], then ``seq`` is regular in F[V]^G."""
    seq = list(seq)
    P = P or sylow_subgroup(G)
    if not C.issubspace(fixed_subspace(P)):
        raise PreconditionError("C is not contained in V^P")
    M = M or InvariantBasis(G)
    for f in seq:
        if f.n != G.n or f.p != G.p:
            raise StructuralError("sequence element lives in a different ring")
        if not f.is_homogeneous() or f.degree < 1 or not M.is_invariant(f):
            raise PreconditionError(f"{f!r} is not a homogeneous positive-degree invariant")
    restricted = [restrict_to_subspace(f, C) for f in seq]
    quantities = {
        "C": [list(b) for b in C.basis],
        "sequence": [repr(f) for f in seq],
        "restrictions": [repr(f) for f in restricted],
    }
    if not regular_in_polynomial_ring(restricted, C.dim):
        return TheoremVerdict(
            "duflot_lifting", describe(G), HYPOTHESIS_NOT_SATISFIED, quantities,
            note="restrictions are not a regular sequence in F[C]; no claim is made",
        )
    M.extend(cutoff)
    result = module_regular_sequence_check(M, seq, cutoff)
    if isinstance(result, RegularSequenceCertificate):
        return TheoremVerdict("duflot_lifting", describe(G), PASS, quantities, cutoffs={"regular": cutoff})
    return TheoremVerdict(
        "duflot_lifting",
        describe(G),
        FAIL,
        quantities,
        witness={"position": result.position, "degree": result.degree, "element": repr(result.element)},
        cutoffs={"regular": cutoff},
    )


def subspaces_within(W: Subspace, k: int, cap: int = 10_000) -> list[Subspace]:
    """All ``k``-dimensional subspaces of ``W``."""
    out = []
    for S in subspaces_of_dim(W.p, W.dim, k, cap) if W.dim else ([Subspace.zero(W.p, 0)] if k == 0 else []):
        vecs = [tuple(sum(c * b[j] for c, b in zip(row, W.basis)) % W.p for j in range(W.n)) for row in S.basis]
        out.append(Subspace.span(vecs, W.p, W.n))
    return out


def random_lifting_trials(
    G: MatrixGroup,
    trials: int,
    cutoff: int,
    seed: int = 0,
    max_degree: int = 4,
    M: InvariantBasis | None = None,
) -> list[TheoremVerdict]:
    """Random invariant sequences tested against every nonzero ``C`` inside ``V^P`` (first satisfied hypothesis wins)."""
    rng = random.Random(seed)
    P = sylow_subgroup(G)
    VP = fixed_subspace(P)
    M = M or InvariantBasis(G)
    M.extend(max(cutoff, max_degree))
    Cs = [C for k in range(1, VP.dim + 1) for C in subspaces_within(VP, k)]
    degrees = [d for d in range(1, max_degree + 1) if M.dimension(d)]
    verdicts = []
    for _ in range(trials):
        C = rng.choice(Cs)
        length = rng.randint(1, C.dim)
        seq = []
        for _ in range(length):
            d = rng.choice(degrees)
            f = Polynomial.zero(G.n, G.p)
            while f.is_zero():
                for b in M.basis(d):
                    f = f + b.scale(rng.randrange(G.p))
            seq.append(f)
        verdicts.append(duflot_lifting_check(G, C, seq, cutoff, P=P, M=M))
    return verdicts


def lifting_search(G: MatrixGroup, trials: int, cutoff: int, seed: int = 0, max_degree: int = 4) -> TheoremVerdict:
    """Aggregate of :func:`random_lifting_trials`.

    Instances where the hypothesis holds on a proper subspace ``C`` of ``V^P``
    are recorded in the quantities, since those are the interesting ones.
    """
    if G.order % G.p:
        return TheoremVerdict("duflot_lifting_search", describe(G), VACUOUS, note="p does not divide |G|")
    VP = fixed_subspace(sylow_subgroup(G))
    verdicts = random_lifting_trials(G, trials, cutoff, seed=seed, max_degree=max_degree)
    satisfied = [v for v in verdicts if v.status != HYPOTHESIS_NOT_SATISFIED]
    failed = [v for v in verdicts if v.failed]
    proper = [v for v in satisfied if len(v.quantities["C"]) < VP.dim]
    unique = {(repr(v.quantities["C"]), tuple(v.quantities["sequence"])) for v in proper}
    return TheoremVerdict(
        "duflot_lifting_search",
        describe(G),
        FAIL if failed else PASS,
        quantities={
            "trials": trials,
            "seed": seed,
            "hypothesis_satisfied": len(satisfied),
            "proper_subspace_instances": len(proper),
            "distinct_proper_instances": len(unique),
        },
        witness=failed[0].to_dict() if failed else {},
        cutoffs={"regular": cutoff},
    )


def stabilizer_component_check(G: MatrixGroup, U: Subspace, cutoff: int, M: InvariantBasis | None = None) -> TheoremVerdict:
    """Degreewise shadows of F[V]^G -> F[V]^{G_U}: inclusion and Hilbert-coefficient domination."""
    GU = pointwise_stabilizer(G, U)
    M = M or InvariantBasis(G)
    MU = InvariantBasis(GU.as_group())
    hil, hil_u = M.hilbert(cutoff), MU.hilbert(cutoff)
    status = PASS
    witness: dict[str, Any] = {}
    for d in range(cutoff + 1):
        span = linalg.Echelon(G.p, MU.vectors(d))
        for f, v in zip(M.basis(d), M.vectors(d)):
            if not span.contains(v):
                status = FAIL
                witness = {"degree": d, "not_included": repr(f)}
                break
        if status == FAIL:
            break
        if hil_u[d] < hil[d]:
            status = FAIL
            witness = {"degree": d, "dim_G": hil[d], "dim_GU": hil_u[d]}
            break
    return TheoremVerdict(
        "stabilizer_component",
        describe(G),
        status,
        quantities={"U": [list(b) for b in U.basis], "stabilizer_order": GU.order, "hilbert_G": hil, "hilbert_GU": hil_u},
        witness=witness,
        cutoffs={"degree": cutoff},
        note="only the inclusion and dimension shadows are checked, not the full T-functor isomorphism",
    )


def _coordinates(v, rows: list, p: int):
    """Coordinates of ``v`` in a reduced echelon basis, or ``None`` if ``v`` is outside the span."""
    coords = linalg.zero(p)
    residual = v
    for idx, row in enumerate(rows):
        c = linalg.coeff(v, linalg.top(row))
        if c:
            coords = linalg.add_scaled(coords, (1 << idx) if p == 2 else {idx: 1}, c, p)
            residual = linalg.add_scaled(residual, row, p - c if p != 2 else 1, p)
    return coords if linalg.is_zero(residual) else None


def carlson_detection_check(
    G: MatrixGroup,
    s: int,
    cutoff: int,
    subspace_cap: int = 10_000,
    M: InvariantBasis | None = None,
    report: DepthReport | None = None,
) -> TheoremVerdict:
    """Kernel of F[V]^G -> prod_{dim U = s} F[V]^{G_U}, degree by degree."""
    if not 0 <= s <= G.n:
        raise PreconditionError(f"s={s} must lie between 0 and n={G.n}")
    subspaces = subspaces_of_dim(G.p, G.n, s, subspace_cap)
    stabilizers: list[SubgroupHandle] = []
    for U in subspaces:
        GU = pointwise_stabilizer(G, U)
        if GU not in stabilizers:
            stabilizers.append(GU)
    M = M or InvariantBasis(G)
    targets = [InvariantBasis(GU.as_group()) for GU in stabilizers]
    kernels = []
    witness: dict[str, Any] = {}
    for d in range(cutoff + 1):
        stacked = []
        offset = 0
        blocks = []
        for T in targets:
            rows = T.vectors(d)
            blocks.append((rows, offset))
            offset += len(rows)
        for f, v in zip(M.basis(d), M.vectors(d)):
            total = linalg.zero(G.p)
            for rows, off in blocks:
                coords = _coordinates(v, rows, G.p)
                if coords is None:
                    raise AssertionError(f"{f!r} is not invariant under a subgroup")  # pragma: no cover
                total = linalg.add_scaled(total, linalg.shift(coords, off), 1, G.p)
            stacked.append(total)
        ker = linalg.kernel(stacked, G.p)
        kernels.append(len(ker))
        if ker and not witness:
            witness = {"degree": d, "element": repr(M.element(d, ker[0]))}
    quantities: dict[str, Any] = {
        "s": s,
        "subspaces": len(subspaces),
        "distinct_stabilizers": len(stabilizers),
        "stabilizer_orders": sorted(GU.order for GU in stabilizers),
        "kernel_dimensions": kernels,
    }
    if report is not None:
        quantities["depth"] = report.depth
        quantities["depth_at_least_s"] = report.depth >= s
    return TheoremVerdict(
        "carlson_detection",
        describe(G),
        PASS if not any(kernels) else FAIL,
        quantities,
        witness=witness,
        cutoffs={"degree": cutoff},
    )


def comodule_identity_check(G: MatrixGroup, cutoff: int, subspaces: Sequence[Subspace] | None = None) -> TheoremVerdict:
    """Counit and coassociativity of the coaction on every basis element of F[V]^P up to ``cutoff``.

    ``subspaces`` defaults to every nonzero subspace of ``V^P``.
    """
    P = sylow_subgroup(G)
    VP = fixed_subspace(P)
    if subspaces is None:
        subspaces = [C for k in range(1, VP.dim + 1) for C in subspaces_within(VP, k)]
    MP = InvariantBasis(P.as_group())
    try:
        return _comodule_loop(G, P, MP, subspaces, cutoff)
    finally:
        clear_substitution_cache()


def _comodule_loop(G, P, MP, subspaces, cutoff) -> TheoremVerdict:
    checked = 0
    for C in subspaces:
        for d in range(1, cutoff + 1):
            for f in MP.basis(d):
                checked += 1
                if not counit_check(f, C, P):
                    return TheoremVerdict(
                        "comodule_identities", describe(G), FAIL,
                        witness={"identity": "counit", "C": [list(b) for b in C.basis], "element": repr(f)},
                        cutoffs={"degree": cutoff},
                    )
                if not coassociativity_check(f, C, P):
                    return TheoremVerdict(
                        "comodule_identities", describe(G), FAIL,
                        witness={"identity": "coassociativity", "C": [list(b) for b in C.basis], "element": repr(f)},
                        cutoffs={"degree": cutoff},
                    )
    return TheoremVerdict(
        "comodule_identities",
        describe(G),
        PASS,
        quantities={"sylow_order": P.order, "subspaces": len(subspaces), "elements_checked": checked},
        cutoffs={"degree": cutoff},
    )
