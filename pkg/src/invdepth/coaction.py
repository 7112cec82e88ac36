"""Restriction to subspaces and the coaction of a fixed subspace on F[V]^P.

For a subspace ``C`` of ``V^P`` the map ``C x V -> V, (c, v) -> c + v`` is
P-equivariant and induces ``F[V]^P -> F[C] (x) F[V]^P``.  Elements of the
tensor product are kept in a normal form indexed by monomials in the ``C``
coordinates ``mu_1, ..., mu_s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import PreconditionError, StructuralError
from .groups import Subspace, SubgroupHandle, act_on_polynomial, fixed_subspace
from .polynomial import Monomial, Polynomial, apply_linear_substitution


@dataclass(frozen=True)
class ElemAbelianModel:
    """Polynomial part of the cohomology of an elementary abelian group of rank ``r``."""

    r: int
    p: int

    def variables(self) -> list[Polynomial]:
        return Polynomial.variables(self.r, self.p)

    def is_regular(self, seq: Sequence[Polynomial]) -> bool:
        from .depth import regular_in_polynomial_ring

        return regular_in_polynomial_ring(seq, self.r)


def restrict_to_subspace(f: Polynomial, U: Subspace) -> Polynomial:
    """``f(l_1 u_1 + ... + l_s u_s)`` as a polynomial in the ``s`` coordinates of ``U``."""
    if U.n != f.n or U.p != f.p:
        raise StructuralError(f"cannot restrict a polynomial in {f.n} variables to a subspace of F_{U.p}^{U.n}")
    if U.dim == 0:
        return Polynomial.constant(f.coefficient((0,) * f.n), 0, f.p)
    return apply_linear_substitution(f, U.column_matrix())


class TensorElement:
    """An element of F[mu_1..mu_s] (x) F[x_1..x_n] in normal form ``{left monomial: right factor}``."""

    __slots__ = ("s", "n", "p", "terms")

    def __init__(self, terms: dict[Monomial, Polynomial], s: int, n: int, p: int):
        self.s, self.n, self.p = s, n, p
        self.terms = {m: g for m, g in terms.items() if not g.is_zero()}

    @classmethod
    def from_polynomial(cls, F: Polynomial, s: int) -> "TensorElement":
        n = F.n - s
        split: dict[Monomial, dict] = {}
        for m, c in F.items():
            split.setdefault(m[:s], {})[m[s:]] = c
        return cls({k: Polynomial(v, n, F.p) for k, v in split.items()}, s, n, F.p)

    def to_polynomial(self) -> Polynomial:
        out = {}
        for left, g in self.terms.items():
            for m, c in g.items():
                out[left + m] = c
        return Polynomial(out, self.s + self.n, self.p)

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        if (self.s, self.n, self.p) != (other.s, other.n, other.p):
            raise StructuralError("tensor factors do not match")
        return TensorElement.from_polynomial(self.to_polynomial() * other.to_polynomial(), self.s)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.s, self.n, self.p) == (other.s, other.n, other.p) and self.terms == other.terms

    def counit(self) -> Polynomial:
        """Set every ``mu_i`` to zero."""
        return self.terms.get((0,) * self.s, Polynomial.zero(self.n, self.p))

    def right_factors(self) -> list[Polynomial]:
        return [self.terms[k] for k in sorted(self.terms, reverse=True)]

    def __repr__(self) -> str:
        parts = []
        for left in sorted(self.terms, key=lambda m: (sum(m), m)):
            mu = "*".join(f"mu{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(left) if e) or "1"
            parts.append(f"{mu} (x) ({self.terms[left]!r})")
        return " + ".join(parts) or "0"


def _translation_matrix(C: Subspace, copies: int) -> list[list[int]]:
    """Rows ``x_j -> sum_k sum_i C_i[j] mu^(k)_i + x_j`` for ``copies`` blocks of mu variables."""
    n, s = C.n, C.dim
    rows = []
    for j in range(n):
        row = []
        for _ in range(copies):
            row.extend(C.basis[i][j] for i in range(s))
        row.extend(int(j == k) for k in range(n))
        rows.append(row)
    return rows


def _check_central(C: Subspace, P: SubgroupHandle | None) -> None:
    if P is None:
        return
    if not C.issubspace(fixed_subspace(P)):
        raise PreconditionError("C is not contained in the fixed subspace V^P")


def coaction(f: Polynomial, C: Subspace, P: SubgroupHandle | None = None) -> TensorElement:
    """``f(c + v)`` split into ``sum_m m(mu) (x) g_m(v)``.

    When ``P`` is given, ``C`` must lie in ``V^P`` and the right factors are
    checked to be P-invariant.
    """
    if C.n != f.n or C.p != f.p:
        raise StructuralError("subspace and polynomial live on different spaces")
    _check_central(C, P)
    F = apply_linear_substitution(f, _translation_matrix(C, 1))
    T = TensorElement.from_polynomial(F, C.dim)
    if P is not None:
        for g in T.terms.values():
            if any(act_on_polynomial(h, g) != g for h in P.generators):
                raise AssertionError("coaction right factor is not invariant")  # pragma: no cover
    return T


def counit_check(f: Polynomial, C: Subspace, P: SubgroupHandle | None = None) -> bool:
    return coaction(f, C, P).counit() == f


def coassociativity_check(f: Polynomial, C: Subspace, P: SubgroupHandle | None = None) -> bool:
    """Compare (Delta (x) 1) Psi with (1 (x) Psi) Psi in F[mu] (x) F[nu] (x) F[V]."""
    T = coaction(f, C, P)
    s, n, p = C.dim, C.n, C.p
    # (Delta (x) 1): each left factor m(mu) becomes m(mu + nu)
    delta = [[int(i == k) for k in range(s)] + [int(i == k) for k in range(s)] for i in range(s)]
    lhs = Polynomial.zero(2 * s + n, p)
    for left, g in T.terms.items():
        m = apply_linear_substitution(Polynomial.monomial(left, p), delta)
        lhs = lhs + _outer(m, g)
    # (1 (x) Psi): each right factor g(v) becomes g(nu.c + v)
    rhs = Polynomial.zero(2 * s + n, p)
    for left, g in T.terms.items():
        m = Polynomial.monomial(left, p)
        inner = apply_linear_substitution(g, _translation_matrix(C, 1))
        rhs = rhs + _outer(m, inner)
    whole = apply_linear_substitution(f, _translation_matrix(C, 2))
    return lhs == rhs == whole


def _outer(a: Polynomial, b: Polynomial) -> Polynomial:
    """Product of polynomials in disjoint variable blocks (a's variables first)."""
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = ma + mb
            out[m] = (out.get(m, 0) + ca * cb) % a.p
    return Polynomial(out, a.n + b.n, a.p)
