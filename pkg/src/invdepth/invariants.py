"""Degree-by-degree computation of the invariant ring F[V]^G."""

from __future__ import annotations

import itertools
from math import comb
from typing import Sequence

from . import linalg
from .errors import CapacityError, PreconditionError, StructuralError
from .groups import Matrix, MatrixGroup, SubgroupHandle, _inverse_cached, act_on_polynomial
from .polynomial import Polynomial, monomial_basis, substitute

DEFAULT_LINALG_CAP = 400_000
DEFAULT_DICKSON_CAP = 200_000


def _substitution_images(g: Matrix, n: int, p: int) -> list[Polynomial]:
    inv = _inverse_cached(g, p)
    return [Polynomial.linear_form(row, p) for row in inv]


class InvariantBasis:
    """Per-degree bases of (F[V]^G)_d, extended lazily.

    Each degree is stored in reduced echelon form over the monomial basis, so
    the first basis element has the lexicographically largest leading term.
    Also serves as a graded module (over any ring of invariants) for the depth
    engine: see :meth:`images`.
    """

    def __init__(self, group: MatrixGroup, linalg_cap: int = DEFAULT_LINALG_CAP):
        self.group = group
        self.n = group.n
        self.p = group.p
        self.linalg_cap = linalg_cap
        self._vectors: dict[int, list[linalg.Vector]] = {}
        self._polys: dict[int, tuple[Polynomial, ...]] = {}
        self._images: dict[tuple[Polynomial, int], list[linalg.Vector]] = {}
        self._gen_images = [_substitution_images(g, self.n, self.p) for g in group.generators]
        self._mono_images: list[dict] = [{} for _ in group.generators]

    @classmethod
    def from_polynomials(cls, group: MatrixGroup, per_degree: dict[int, Sequence[Polynomial]], **kw) -> "InvariantBasis":
        B = cls(group, **kw)
        for d in sorted(per_degree):
            polys = tuple(per_degree[d])
            B._polys[d] = polys
            B._vectors[d] = [linalg.encode(f, d) for f in polys]
        return B

    @property
    def computed_up_to(self) -> int:
        d = -1
        while d + 1 in self._vectors:
            d += 1
        return d

    def extend(self, D: int) -> "InvariantBasis":
        for d in range(D + 1):
            if d not in self._vectors:
                self._compute(d)
        return self

    def _monomial_image(self, k: int, m: tuple[int, ...]) -> Polynomial:
        cache = self._mono_images[k]
        img = cache.get(m)
        if img is None:
            i = next(j for j, e in enumerate(m) if e)
            rest = m[:i] + (m[i] - 1,) + m[i + 1:]
            img = self._monomial_image(k, rest) * self._gen_images[k][i] if any(rest) else self._gen_images[k][i]
            cache[m] = img
        return img

    def _compute(self, d: int) -> None:
        n, p = self.n, self.p
        if d == 0:
            self._vectors[0] = [linalg.encode(Polynomial.one(n, p), 0)]
            self._polys[0] = (Polynomial.one(n, p),)
            return
        basis = monomial_basis(n, d)
        N = len(basis)
        k = len(self.group.generators)
        if N * max(k, 1) > self.linalg_cap:
            raise CapacityError(
                f"degree {d} needs a {N * k}-column invariance system, cap is {self.linalg_cap}"
            )
        # vector for encoded position pos = N-1-j stacks (g_i - 1) m_j over generators
        columns: list[linalg.Vector] = [None] * N
        for j, m in enumerate(basis):
            mono = Polynomial.monomial(m, p)
            v = linalg.zero(p)
            for gi in range(k):
                diff = self._monomial_image(gi, m) - mono
                v = linalg.add_scaled(v, linalg.shift(linalg.encode(diff, d), gi * N), 1, p) if diff else v
            columns[N - 1 - j] = v
        for cache in self._mono_images:
            # only degree d-1 images are needed to build degree d
            for key in [key for key in cache if sum(key) < d - 1 and sum(key) > 1]:
                del cache[key]
        ker = linalg.kernel(columns, p)
        vecs = linalg.Echelon(p, ker).rref()
        self._vectors[d] = vecs
        self._polys[d] = tuple(linalg.decode(v, n, d, p) for v in vecs)

    # -- queries ----------------------------------------------------------

    def basis(self, d: int) -> tuple[Polynomial, ...]:
        if d < 0:
            return ()
        self.extend(d)
        return self._polys[d]

    def vectors(self, d: int) -> list[linalg.Vector]:
        if d < 0:
            return []
        self.extend(d)
        return self._vectors[d]

    def dimension(self, d: int) -> int:
        return len(self.vectors(d))

    def width(self, d: int) -> int:
        return comb(d + self.n - 1, self.n - 1) if d >= 0 else 0

    def hilbert(self, D: int) -> list[int]:
        return [self.dimension(d) for d in range(D + 1)]

    def images(self, f: Polynomial, d: int) -> list[linalg.Vector]:
        """Encoded ``f * b`` for each basis element ``b`` of degree ``d`` (coordinates of degree ``d + deg f``)."""
        key = (f, d)
        out = self._images.get(key)
        if out is None:
            e = f.degree
            out = [linalg.encode(f * b, d + e) for b in self.basis(d)]
            self._images[key] = out
        return out

    def element(self, d: int, coeffs: linalg.Vector) -> Polynomial:
        """The polynomial ``sum_i coeffs[i] * basis(d)[i]``."""
        v = linalg.combine(self.vectors(d), coeffs, self.p)
        return linalg.decode(v, self.n, d, self.p)

    def is_invariant(self, f: Polynomial) -> bool:
        return all(act_on_polynomial(g, f) == f for g in self.group.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, InvariantBasis):
            return NotImplemented
        return (
            self.p == other.p
            and self.n == other.n
            and self.group.generators == other.group.generators
            and self._polys == other._polys
        )


def invariant_basis(G: MatrixGroup, d: int) -> list[Polynomial]:
    return list(InvariantBasis(G).basis(d))


def hilbert_coefficients(G: MatrixGroup, D: int) -> list[int]:
    return InvariantBasis(G).hilbert(D)


def subalgebra_hilbert_coefficients(generators: Sequence[Polynomial], D: int) -> list[int]:
    """Dimensions of the graded pieces of the subalgebra generated by homogeneous ``generators``."""
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        raise StructuralError("need at least one generator")
    n, p = gens[0].n, gens[0].p
    pieces: dict[int, list[Polynomial]] = {0: [Polynomial.one(n, p)]}
    out = [1]
    for d in range(1, D + 1):
        ech = linalg.Echelon(p)
        basis = []
        for g in gens:
            e = g.degree
            if e <= 0 or e > d:
                continue
            for s in pieces[d - e]:
                prod = g * s
                if ech.insert(linalg.encode(prod, d)):
                    basis.append(prod)
        pieces[d] = basis
        out.append(len(basis))
    return out


def minimal_generators(G: MatrixGroup, D: int, basis: InvariantBasis | None = None) -> list[tuple[int, Polynomial]]:
    """Algebra generators of F[V]^G up to degree ``D``, chosen greedily in echelon order."""
    M = basis or InvariantBasis(G)
    gens: list[tuple[int, Polynomial]] = []
    p = G.p
    for d in range(1, D + 1):
        ech = linalg.Echelon(p)
        for e, g in gens:
            for v in M.images(g, d - e):
                ech.insert(v)
        for f, v in zip(M.basis(d), M.vectors(d)):
            if ech.insert(v):
                gens.append((d, f))
    return gens


def dickson_invariants(p: int, n: int, cap: int = DEFAULT_DICKSON_CAP) -> list[Polynomial]:
    """Dickson invariants of GL_n(F_p), ordered by increasing degree p^n - p^i (i = n-1, ..., 0).

    Read off from the coefficients of prod_{v in V*} (X + v).
    """
    if n < 1:
        raise StructuralError("need n >= 1")
    top = p**n - 1
    if comb(top + n - 1, n - 1) > cap:
        raise CapacityError(f"Dickson invariants for p={p}, n={n} have degree {top}; too large")
    # coefficients of the X-polynomial, index = power of X
    coeffs = [Polynomial.one(n, p)]
    for c in itertools.product(range(p), repeat=n):
        v = Polynomial.linear_form(c, p)
        new = [Polynomial.zero(n, p)] * (len(coeffs) + 1)
        for k, a in enumerate(coeffs):
            if a:
                new[k + 1] = new[k + 1] + a
                if v:
                    new[k] = new[k] + a * v
        coeffs = new
    out = []
    for i in range(n - 1, -1, -1):
        sign = 1 if (n - i) % 2 == 0 else p - 1
        out.append(coeffs[p**i].scale(sign))
    return out


def coset_representatives(G: MatrixGroup, H: SubgroupHandle) -> list[Matrix]:
    """Left coset representatives of ``H`` in ``G``, first in element order."""
    covered = set()
    reps = []
    for g in G.elements:
        if g in covered:
            continue
        reps.append(g)
        covered.update(G.mul(g, h) for h in H.members)
    return reps


def transfer(G: MatrixGroup, H: SubgroupHandle, f: Polynomial) -> Polynomial:
    """Relative transfer: sum of ``g.f`` over left coset representatives of ``H``."""
    if any(act_on_polynomial(h, f) != f for h in H.generators):
        raise PreconditionError("transfer input is not invariant under the subgroup")
    out = Polynomial.zero(f.n, f.p)
    for g in coset_representatives(G, H):
        out = out + act_on_polynomial(g, f)
    if any(act_on_polynomial(g, out) != out for g in G.generators):  # pragma: no cover
        raise AssertionError("transfer produced a non-invariant")
    return out


def averaging_rank(G: MatrixGroup, d: int) -> int:
    """Rank of sum_g g acting on F[V]_d; equals dim (F[V]^G)_d when p does not divide |G|."""
    n, p = G.n, G.p
    ech = linalg.Echelon(p)
    images = [[Polynomial.linear_form(row, p) for row in _inverse_cached(g, p)] for g in G.elements]
    for m in monomial_basis(n, d):
        mono = Polynomial.monomial(m, p)
        total = Polynomial.zero(n, p)
        for img in images:
            total = total + substitute(mono, img)
        if total:
            ech.insert(linalg.encode(total, d))
    return ech.rank
