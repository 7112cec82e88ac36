"""Depth of graded modules over invariant rings.

Three routes are implemented and cross-checked by :func:`depth_report`:

* degreewise regular-sequence certification (:func:`module_regular_sequence_check`),
* the Hilbert-series freeness criterion (:func:`freeness_test`),
* Koszul homology over a homogeneous system of parameters (:func:`koszul_depth`).

Every claim is bounded by a degree cutoff: a certificate verified up to
``cutoff`` says that all quotient pieces of degree ``<= cutoff`` behave as a
regular sequence requires.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Protocol, Sequence

from . import linalg
from .errors import InconsistencyError, PreconditionError, StructuralError
from .groebner import buchberger, krull_dimension
from .groups import MatrixGroup
from .invariants import InvariantBasis, dickson_invariants, minimal_generators
from .polynomial import Polynomial

log = logging.getLogger(__name__)


class GradedModule(Protocol):
    """What the depth routines need from a module.

    ``vectors(d)`` is a basis of the degree-``d`` piece and ``images(f, d)``
    lists ``f * b`` for that basis, both encoded in a fixed coordinate system
    per degree (ambient monomial coordinates for submodules of F[V]).
    """

    n: int
    p: int

    def dimension(self, d: int) -> int: ...
    def vectors(self, d: int) -> list: ...
    def images(self, f: Polynomial, d: int) -> list: ...
    def width(self, d: int) -> int: ...


class ResidueField:
    """The module F_p concentrated in degree 0, on which every positive-degree element acts by zero."""

    def __init__(self, n: int, p: int):
        self.n = n
        self.p = p

    def dimension(self, d: int) -> int:
        return 1 if d == 0 else 0

    def vectors(self, d: int) -> list:
        if d != 0:
            return []
        return [1] if self.p == 2 else [{0: 1}]

    def images(self, f: Polynomial, d: int) -> list:
        return [linalg.zero(self.p)] * self.dimension(d)

    def width(self, d: int) -> int:
        return self.dimension(d)

    def element(self, d: int, coeffs) -> Polynomial:
        return Polynomial.constant(linalg.coeff(coeffs, 0), self.n, self.p)


# -- result types ------------------------------------------------------------


@dataclass
class RegularSequenceCertificate:
    sequence: list[Polynomial]
    verified_up_to: int
    method: str = "degreewise"

    @property
    def length(self) -> int:
        return len(self.sequence)


@dataclass
class ZeroDivisorWitness:
    """``sequence[position]`` kills ``element`` (degree ``degree``) modulo the earlier elements."""

    sequence: list[Polynomial]
    position: int
    degree: int
    element: Polynomial
    verified_up_to: int


@dataclass
class KoszulProfile:
    hsop: list[Polynomial]
    cutoff: int
    homology: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def top_nonvanishing(self) -> int:
        return max((i for (i, _), dim in self.homology.items() if dim), default=-1)

    @property
    def depth(self) -> int:
        return len(self.hsop) - self.top_nonvanishing

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {k: v for k, v in sorted(self.homology.items()) if v}


@dataclass
class DepthReport:
    depth: int
    certificate: RegularSequenceCertificate
    koszul: KoszulProfile
    agreement: bool
    cutoff: int
    seed: int
    confirmed_at: int | None = None


# -- regular sequences -------------------------------------------------------


def regular_in_polynomial_ring(seq: Sequence[Polynomial], r: int) -> bool:
    """Regularity in F_p[t_1..t_r]: the quotient must have Krull dimension ``r - len(seq)``."""
    seq = list(seq)
    if len(seq) > r:
        return False
    if not seq:
        return True
    for f in seq:
        if f.n != r:
            raise StructuralError(f"element lives in {f.n} variables, expected {r}")
        if f.is_zero() or not f.is_homogeneous() or f.degree < 1:
            return False
    return krull_dimension(buchberger(seq)) == r - len(seq)


def _check_sequence(M, seq: Sequence[Polynomial]) -> None:
    for y in seq:
        if y.n != M.n or y.p != M.p:
            raise StructuralError("sequence element lives in a different ring")
        if y.is_zero() or not y.is_homogeneous() or y.degree < 1:
            raise PreconditionError(f"{y!r} is not homogeneous of positive degree")
        checker = getattr(M, "is_invariant", None)
        if checker is not None and not checker(y):
            raise PreconditionError(f"{y!r} is not invariant, so it does not act on the module")


class QuotientTower:
    """Degreewise spans ``(y_1, ..., y_k) M`` up to a cutoff, extended one element at a time."""

    def __init__(self, M, cutoff: int):
        self.M = M
        self.cutoff = cutoff
        self.sequence: list[Polynomial] = []
        self.spans = [linalg.Echelon(M.p) for _ in range(cutoff + 1)]

    def quotient_dimension(self, d: int) -> int:
        return self.M.dimension(d) - self.spans[d].rank

    def test(self, y: Polynomial) -> ZeroDivisorWitness | None:
        """``None`` if ``y`` is injective on every quotient piece landing in degree ``<= cutoff``."""
        M, p = self.M, self.M.p
        e = y.degree
        for d in range(0, self.cutoff - e + 1):
            dim = M.dimension(d)
            if not dim:
                continue
            target = self.spans[d + e]
            grown = target.copy()
            gained = sum(grown.insert(v) for v in M.images(y, d))
            if gained == dim - self.spans[d].rank:
                continue
            residuals = [target.reduce_fully(v) for v in M.images(y, d)]
            for c in linalg.kernel(residuals, p):
                v = linalg.combine(M.vectors(d), c, p)
                if not self.spans[d].contains(v):
                    return ZeroDivisorWitness(
                        sequence=self.sequence + [y],
                        position=len(self.sequence),
                        degree=d,
                        element=M.element(d, c),
                        verified_up_to=self.cutoff,
                    )
            raise AssertionError("rank deficit without a witness")  # pragma: no cover
        return None

    def push(self, y: Polynomial) -> None:
        e = y.degree
        for d in range(e, self.cutoff + 1):
            span = self.spans[d]
            for v in self.M.images(y, d - e):
                span.insert(v)
        self.sequence.append(y)


def module_regular_sequence_check(M, seq: Sequence[Polynomial], cutoff: int):
    """Certify ``seq`` as M-regular through degree ``cutoff``, or return a zero-divisor witness."""
    seq = list(seq)
    _check_sequence(M, seq)
    tower = QuotientTower(M, cutoff)
    for y in seq:
        witness = tower.test(y)
        if witness is not None:
            return witness
        tower.push(y)
    return RegularSequenceCertificate(seq, cutoff, "degreewise")


def is_regular_sequence(M, seq: Sequence[Polynomial], cutoff: int) -> bool:
    return isinstance(module_regular_sequence_check(M, seq, cutoff), RegularSequenceCertificate)


def quotient_hilbert(M, seq: Sequence[Polynomial], cutoff: int) -> list[int]:
    """Dimensions of (M / (seq) M)_d for d <= cutoff."""
    out = []
    for d in range(cutoff + 1):
        span = linalg.Echelon(M.p)
        for y in seq:
            for v in M.images(y, d - y.degree) if d >= y.degree else ():
                span.insert(v)
        out.append(M.dimension(d) - span.rank)
    return out


def free_series(M, degrees: Sequence[int], cutoff: int) -> list[int]:
    """Coefficients of H_M(t) * prod(1 - t^e) up to ``cutoff``."""
    series = [M.dimension(d) for d in range(cutoff + 1)]
    for e in degrees:
        series = [series[d] - (series[d - e] if d >= e else 0) for d in range(cutoff + 1)]
    return series


def freeness_test(M, seq: Sequence[Polynomial], cutoff: int) -> bool:
    """Series form of the freeness criterion: H_{M/(seq)M} = H_M * prod(1 - t^{deg y}) through ``cutoff``."""
    seq = list(seq)
    _check_sequence(M, seq)
    return quotient_hilbert(M, seq, cutoff) == free_series(M, [y.degree for y in seq], cutoff)


def finite_length_evidence(M, seq: Sequence[Polynomial], cutoff: int) -> bool:
    """Whether M/(seq)M vanishes on the last ``max deg`` degrees before the cutoff."""
    seq = list(seq)
    width = max((y.degree for y in seq), default=1)
    q = quotient_hilbert(M, seq, cutoff)
    return all(v == 0 for v in q[max(0, cutoff - width + 1):])


# -- Koszul homology ---------------------------------------------------------


def koszul_depth(M, hsop: Sequence[Polynomial], cutoff: int) -> KoszulProfile:
    """Koszul homology H_i(hsop; M) in internal degrees ``<= cutoff``; depth = len(hsop) - top index."""
    hsop = list(hsop)
    _check_sequence(M, hsop)
    p = M.p
    k = len(hsop)
    degs = [f.degree for f in hsop]
    subsets = {i: list(itertools.combinations(range(k), i)) for i in range(k + 1)}

    def sdeg(S):
        return sum(degs[j] for j in S)

    profile = KoszulProfile(hsop, cutoff)
    for d in range(cutoff + 1):
        dims = {}
        ranks = {0: 0, k + 1: 0}
        for i in range(k + 1):
            dims[i] = sum(M.dimension(d - sdeg(S)) for S in subsets[i] if d >= sdeg(S))
        for i in range(1, k + 1):
            offsets = {}
            off = 0
            for T in subsets[i - 1]:
                offsets[T] = off
                off += M.width(d - sdeg(T)) if d >= sdeg(T) else 0
            ech = linalg.Echelon(p)
            for S in subsets[i]:
                src = d - sdeg(S)
                if src < 0 or not M.dimension(src):
                    continue
                parts = []
                for pos, j in enumerate(S):
                    T = S[:pos] + S[pos + 1:]
                    sign = 1 if pos % 2 == 0 else p - 1
                    parts.append((M.images(hsop[j], src), offsets[T], sign))
                for b in range(M.dimension(src)):
                    v = linalg.zero(p)
                    for imgs, o, sign in parts:
                        v = linalg.add_scaled(v, linalg.shift(imgs[b], o), sign, p)
                    ech.insert(v)
            ranks[i] = ech.rank
        for i in range(k + 1):
            h = dims[i] - ranks[i] - ranks[i + 1]
            if h:
                profile.homology[(i, d)] = h
    return profile


# -- parameters and orchestration -------------------------------------------


def _quotient_dimension(ideal: Sequence[Polynomial], n: int, p: int) -> int:
    gens = [g for g in ideal if not g.is_zero()]
    if not gens:
        return n
    return krull_dimension(buchberger(gens))


def choose_hsop(M: InvariantBasis, strategy: str = "auto", max_degree: int | None = None) -> list[Polynomial]:
    """A homogeneous system of parameters of F[V]^G.

    ``"dickson"`` returns the Dickson invariants of GL_n(F_p).  ``"auto"``
    picks invariants of increasing degree greedily, keeping each one that
    lowers the Krull dimension of F[V]/(chosen); it falls back to Dickson
    invariants if nothing of degree ``<= max_degree`` completes the system.
    """
    n, p = M.n, M.p
    if strategy == "dickson":
        return dickson_invariants(p, n)
    if strategy != "auto":
        raise StructuralError(f"unknown hsop strategy {strategy!r}")
    if max_degree is None:
        max_degree = max(2, M.group.order)
    chosen: list[Polynomial] = []
    dim = n
    for d in range(1, max_degree + 1):
        basis = list(M.basis(d))
        candidates = basis + [a + b for a, b in itertools.combinations(basis, 2)]
        for f in candidates:
            if dim == 0:
                return chosen
            if _quotient_dimension(chosen + [f], n, p) == dim - 1:
                chosen.append(f)
                dim -= 1
        if dim == 0:
            return chosen
    for f in dickson_invariants(p, n):
        if dim == 0:
            break
        if _quotient_dimension(chosen + [f], n, p) == dim - 1:
            chosen.append(f)
            dim -= 1
    return sorted(chosen, key=lambda f: f.degree)


def default_cutoff(M: InvariantBasis, hsop: Sequence[Polynomial]) -> int:
    """Top minimal-generator degree plus the total hsop degree."""
    total = sum(f.degree for f in hsop)
    gens = minimal_generators(M.group, max(total, 1), basis=M)
    top = max((d for d, _ in gens), default=0)
    return top + total


def search_regular_sequence(
    M, candidates: Sequence[Polynomial], cutoff: int, seed: int = 0, budget: int = 64, max_random_degree: int | None = None
) -> RegularSequenceCertificate:
    """Greedy over ``candidates`` first, then random invariant combinations from a seeded RNG."""
    tower = QuotientTower(M, cutoff)
    target = M.n
    for y in candidates:
        if len(tower.sequence) == target:
            break
        if y.degree <= cutoff and tower.test(y) is None:
            tower.push(y)
    rng = random.Random(seed)
    top = max_random_degree or max(1, min(cutoff, max((c.degree for c in candidates), default=1)))
    degrees = [d for d in range(1, top + 1) if M.dimension(d)]
    attempts = 0
    while len(tower.sequence) < target and attempts < budget and degrees:
        attempts += 1
        d = rng.choice(degrees)
        basis = M.basis(d)
        y = Polynomial.zero(M.n, M.p)
        while y.is_zero():
            for b in basis:
                y = y + b.scale(rng.randrange(M.p))
        if tower.test(y) is None:
            tower.push(y)
    return RegularSequenceCertificate(list(tower.sequence), cutoff, "degreewise")


def _depth_once(M: InvariantBasis, hsop, cutoff: int, seed: int, budget: int):
    koszul = koszul_depth(M, hsop, cutoff)
    cert = search_regular_sequence(M, hsop, cutoff, seed=seed, budget=budget)
    if not freeness_test(M, cert.sequence, cutoff):
        raise InconsistencyError(
            f"certified sequence of length {cert.length} fails the freeness criterion at cutoff {cutoff}"
        )
    return koszul, cert


def depth_report(
    G: MatrixGroup,
    cutoff: int | None = None,
    seed: int = 0,
    hsop: str | Sequence[Polynomial] = "auto",
    confirm_step: int | None = 2,
    budget: int = 64,
    M: InvariantBasis | None = None,
) -> DepthReport:
    """Depth of F[V]^G by Koszul homology and by an independently searched regular sequence.

    With ``confirm_step`` set, the computation is repeated at
    ``cutoff + confirm_step`` and both runs must agree.
    """
    M = M or InvariantBasis(G)
    theta = choose_hsop(M, hsop) if isinstance(hsop, str) else list(hsop)
    if cutoff is None:
        cutoff = default_cutoff(M, theta)
    cutoffs = [cutoff] + ([cutoff + confirm_step] if confirm_step else [])
    results = []
    for c in cutoffs:
        M.extend(c)
        koszul, cert = _depth_once(M, theta, c, seed, budget)
        log.info("cutoff %d: koszul depth %d, certified length %d", c, koszul.depth, cert.length)
        if koszul.depth != cert.length:
            raise InconsistencyError(
                f"Koszul depth {koszul.depth} but certified regular sequence of length {cert.length} at cutoff {c}"
            )
        results.append((koszul, cert))
    depths = {k.depth for k, _ in results}
    if len(depths) != 1:
        raise InconsistencyError(f"depth changed between cutoffs {cutoffs}: {sorted(depths)}")
    koszul, cert = results[0]
    return DepthReport(
        depth=koszul.depth,
        certificate=cert,
        koszul=koszul,
        agreement=True,
        cutoff=cutoff,
        seed=seed,
        confirmed_at=cutoffs[1] if len(cutoffs) > 1 else None,
    )
