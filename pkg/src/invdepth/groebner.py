"""A small Buchberger engine over F_p.

Only what the depth engine needs: reduced Gröbner bases, normal forms,
Krull dimension from the initial ideal, and colon-ideal non-zerodivisor tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import CapacityError, PreconditionError, StructuralError
from .polynomial import Monomial, Polynomial

DEFAULT_PAIR_CAP = 20_000


@dataclass(frozen=True)
class MonomialOrder:
    """A degree-compatible monomial order.

    ``kind`` is ``"grlex"`` or ``"grevlex"``; ``"elim"`` puts the variables in
    ``eliminate`` above everything else (used for ideal intersections).
    """

    kind: str = "grlex"
    priority: tuple[int, ...] | None = None
    eliminate: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("grlex", "grevlex", "elim"):
            raise StructuralError(f"unknown monomial order {self.kind!r}")

    def key(self, n: int) -> Callable[[Monomial], tuple]:
        prio = self.priority or tuple(range(n))
        if self.kind == "grlex":
            return lambda m: (sum(m), tuple(m[i] for i in prio))
        if self.kind == "grevlex":
            rev = tuple(reversed(prio))
            return lambda m: (sum(m), tuple(-m[i] for i in rev))
        elim = self.eliminate
        rest = tuple(i for i in reversed(prio) if i not in elim)
        return lambda m: (
            sum(m[i] for i in elim),
            tuple(m[i] for i in elim),
            sum(m[i] for i in rest),
            tuple(-m[i] for i in rest),
        )


GRLEX = MonomialOrder("grlex")


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple[Polynomial, ...]
    order: MonomialOrder
    n: int
    p: int

    def leading_monomials(self) -> list[Monomial]:
        key = self.order.key(self.n)
        return [max(g.monomials(), key=key) for g in self.generators]

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() and g for g in self.generators)


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lead(terms: dict, key) -> Monomial:
    return max(terms, key=key)


def _reduce(terms: dict, basis: list[tuple[Monomial, int, dict]], key, p: int) -> dict:
    """Full reduction of ``terms`` by ``basis`` entries ``(lm, lc_inverse, terms)``."""
    terms = dict(terms)
    rem: dict = {}
    while terms:
        m = _lead(terms, key)
        c = terms[m]
        for lm, lc_inv, g in basis:
            if _divides(lm, m):
                q = tuple(a - b for a, b in zip(m, lm))
                factor = c * lc_inv % p
                for gm, gc in g.items():
                    mm = tuple(a + b for a, b in zip(gm, q))
                    v = (terms.get(mm, 0) - factor * gc) % p
                    if v:
                        terms[mm] = v
                    else:
                        terms.pop(mm, None)
                break
        else:
            rem[m] = c
            del terms[m]
    return rem


def _monic(terms: dict, key, p: int) -> dict:
    lm = _lead(terms, key)
    inv = pow(terms[lm], -1, p)
    return {m: c * inv % p for m, c in terms.items()}


def buchberger(generators: Sequence[Polynomial], order: MonomialOrder = GRLEX, pair_cap: int = DEFAULT_PAIR_CAP) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``generators``."""
    gens = [g for g in generators if not g.is_zero()]
    if not generators:
        raise StructuralError("need at least one polynomial to fix the ring; pass Polynomial.zero(n, p)")
    n, p = generators[0].n, generators[0].p
    for g in generators:
        if g.n != n or g.p != p:
            raise StructuralError("generators live in different rings")
    key = order.key(n)
    G: list[dict] = [_monic(g.terms, key, p) for g in gens]
    lms: list[Monomial] = [_lead(g, key) for g in G]
    pairs = [(i, j) for i in range(len(G)) for j in range(i)]
    processed = 0
    while pairs:
        pairs.sort(key=lambda ij: key(tuple(max(a, b) for a, b in zip(lms[ij[0]], lms[ij[1]]))))
        i, j = pairs.pop(0)
        processed += 1
        if processed > pair_cap:
            raise CapacityError(f"Buchberger exceeded {pair_cap} critical pairs")
        a, b = lms[i], lms[j]
        if all(x == 0 or y == 0 for x, y in zip(a, b)):
            continue  # coprime leading monomials
        lcm = tuple(max(x, y) for x, y in zip(a, b))
        s: dict = {}
        for src, lm, sign in ((G[i], a, 1), (G[j], b, p - 1)):
            q = tuple(x - y for x, y in zip(lcm, lm))
            for m, c in src.items():
                mm = tuple(x + y for x, y in zip(m, q))
                v = (s.get(mm, 0) + sign * c) % p
                if v:
                    s[mm] = v
                else:
                    s.pop(mm, None)
        basis = [(lms[k], 1, G[k]) for k in range(len(G))]
        r = _reduce(s, basis, key, p)
        if r:
            r = _monic(r, key, p)
            G.append(r)
            lms.append(_lead(r, key))
            k = len(G) - 1
            pairs.extend((k, t) for t in range(k))
    # minimalize then interreduce
    keep = []
    for idx, lm in enumerate(lms):
        if any(_divides(lms[o], lm) and (lms[o] != lm or o < idx) for o in range(len(G)) if o != idx):
            continue
        keep.append(idx)
    reduced = []
    for idx in keep:
        others = [(lms[o], 1, G[o]) for o in keep if o != idx]
        tail = _reduce({m: c for m, c in G[idx].items() if m != lms[idx]}, others, key, p)
        tail[lms[idx]] = 1
        reduced.append(tail)
    reduced.sort(key=lambda t: key(_lead(t, key)))
    return GroebnerBasis(tuple(Polynomial(t, n, p) for t in reduced), order, n, p)


def normal_form(f: Polynomial, B: GroebnerBasis) -> Polynomial:
    if f.n != B.n or f.p != B.p:
        raise StructuralError("polynomial and basis live in different rings")
    key = B.order.key(B.n)
    basis = []
    for g in B.generators:
        lm = _lead(g.terms, key)
        basis.append((lm, pow(g.coefficient(lm), -1, B.p), g.terms))
    return Polynomial(_reduce(f.terms, basis, key, B.p), f.n, f.p)


def krull_dimension(B: GroebnerBasis) -> int:
    """Dimension of F[x]/(B): the largest set of variables carrying no leading monomial."""
    if B.is_unit_ideal():
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in B.leading_monomials()]
    for size in range(B.n, -1, -1):
        for S in itertools.combinations(range(B.n), size):
            s = frozenset(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0  # pragma: no cover


def _embed(f: Polynomial, extra: int) -> Polynomial:
    return Polynomial({m + (0,) * extra: c for m, c in f.items()}, f.n + extra, f.p)


def _restrict(f: Polynomial, n: int) -> Polynomial:
    return Polynomial({m[:n]: c for m, c in f.items()}, n, f.p)


def divide_exact(f: Polynomial, g: Polynomial, order: MonomialOrder = GRLEX) -> Polynomial:
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    key = order.key(f.n)
    glm = _lead(g.terms, key)
    ginv = pow(g.coefficient(glm), -1, f.p)
    rest = dict(f.terms)
    q: dict = {}
    p = f.p
    while rest:
        m = _lead(rest, key)
        if not _divides(glm, m):
            raise ValueError("division is not exact")
        qm = tuple(a - b for a, b in zip(m, glm))
        qc = rest[m] * ginv % p
        q[qm] = (q.get(qm, 0) + qc) % p
        for gm, gc in g.items():
            mm = tuple(a + b for a, b in zip(gm, qm))
            v = (rest.get(mm, 0) - qc * gc) % p
            if v:
                rest[mm] = v
            else:
                rest.pop(mm, None)
    return Polynomial(q, f.n, p)


def colon_ideal(ideal: Sequence[Polynomial], x: Polynomial) -> list[Polynomial]:
    """Generators of (I : x), via I ∩ (x) computed with one auxiliary variable."""
    n, p = x.n, x.p
    gens = [g for g in ideal if not g.is_zero()]
    if not gens:
        return [Polynomial.zero(n, p)]
    t = Polynomial.variable(n, n + 1, p)
    lifted = [t * _embed(g, 1) for g in gens]
    lifted.append((Polynomial.one(n + 1, p) - t) * _embed(x, 1))
    B = buchberger(lifted, MonomialOrder("elim", eliminate=(n,)))
    inter = [_restrict(g, n) for g in B.generators if all(m[n] == 0 for m in g.monomials())]
    return [divide_exact(g, x) for g in inter]


def is_nonzerodivisor(x: Polynomial, ideal: Sequence[Polynomial]) -> bool:
    """True iff ``x`` is a non-zerodivisor on F[x]/I, i.e. (I : x) = I."""
    if x.is_zero():
        raise PreconditionError("0 is a zerodivisor on every non-zero ring")
    gens = [g for g in ideal if not g.is_zero()]
    if not gens:
        return True
    B = buchberger(gens)
    if B.is_unit_ideal():
        return True
    return all(B.contains(q) for q in colon_ideal(gens, x))
