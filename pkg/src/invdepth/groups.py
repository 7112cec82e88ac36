"""Finite subgroups of GL_n(F_p) acting on V = F_p^n and on F[V]."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import GroupTooLargeError, StructuralError, TooManySubspacesError
from .polynomial import Polynomial, _check_prime, apply_linear_substitution

Matrix = tuple[tuple[int, ...], ...]
Vec = tuple[int, ...]

DEFAULT_ORDER_CAP = 20736
DEFAULT_SUBSPACE_CAP = 100_000


# -- matrix helpers ----------------------------------------------------------


def as_matrix(rows: Sequence[Sequence[int]], p: int) -> Matrix:
    return tuple(tuple(int(a) % p for a in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix, p: int) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % p for col in cols) for row in a)


def mat_vec(a: Matrix, v: Sequence[int], p: int) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) % p for row in a)


def mat_inv(a: Matrix, p: int) -> Matrix:
    n = len(a)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] % p), None)
        if piv is None:
            raise StructuralError(f"matrix {a} is singular mod {p}")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, p)
        aug[col] = [x * inv % p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def is_invertible(a: Matrix, p: int) -> bool:
    try:
        mat_inv(a, p)
    except StructuralError:
        return False
    return True


def rref(rows: Iterable[Sequence[int]], p: int, ncols: int) -> Matrix:
    """Reduced row echelon form with zero rows removed."""
    m = [[x % p for x in r] for r in rows]
    out = []
    col = 0
    for col in range(ncols):
        piv = next((i for i, r in enumerate(m) if r[col]), None)
        if piv is None:
            continue
        row = m.pop(piv)
        inv = pow(row[col], -1, p)
        row = [x * inv % p for x in row]
        m = [[(x - r[col] * y) % p for x, y in zip(r, row)] if r[col] else r for r in m]
        out = [[(x - o[col] * y) % p for x, y in zip(o, row)] if o[col] else o for o in out]
        out.append(row)
    return tuple(tuple(r) for r in out)


def nullspace(rows: Sequence[Sequence[int]], p: int, ncols: int) -> list[Vec]:
    """Basis of ``{v : rows * v = 0}``."""
    r = rref(rows, p, ncols)
    pivots = [next(j for j, x in enumerate(row) if x) for row in r]
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(r, pivots):
            v[pc] = (-row[f]) % p
        basis.append(tuple(v))
    return basis


# -- subspaces ---------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_p^n stored by its canonical reduced echelon basis."""

    p: int
    n: int
    basis: Matrix

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], p: int, n: int) -> "Subspace":
        vectors = list(vectors)
        for v in vectors:
            if len(v) != n:
                raise StructuralError(f"vector {tuple(v)} does not lie in F_{p}^{n}")
        return cls(p, n, rref(vectors, p, n))

    @classmethod
    def zero(cls, p: int, n: int) -> "Subspace":
        return cls(p, n, ())

    @classmethod
    def full(cls, p: int, n: int) -> "Subspace":
        return cls(p, n, identity(n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        return rref(list(self.basis) + [list(v)], self.p, self.n) == self.basis

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def vectors(self) -> list[Vec]:
        out = []
        for coeffs in itertools.product(range(self.p), repeat=self.dim):
            out.append(
                tuple(sum(c * b[j] for c, b in zip(coeffs, self.basis)) % self.p for j in range(self.n))
            )
        return out

    def column_matrix(self) -> Matrix:
        """``n x dim`` matrix whose columns are the basis vectors."""
        return tuple(tuple(b[i] for b in self.basis) for i in range(self.n))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspaces_of_dim(p: int, n: int, s: int, cap: int = DEFAULT_SUBSPACE_CAP) -> list[Subspace]:
    """Every ``s``-dimensional subspace of F_p^n, enumerated as echelon forms."""
    _check_prime(p)
    if not 0 <= s <= n:
        raise StructuralError(f"no subspaces of dimension {s} in F_{p}^{n}")
    count = gaussian_binomial(n, s, p)
    if count > cap:
        raise TooManySubspacesError(f"{count} subspaces of dimension {s} in F_{p}^{n} exceed cap {cap}")
    out = []
    for pivots in itertools.combinations(range(n), s):
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivots]
        for values in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(s)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), val in zip(free, values):
                rows[r][c] = val
            out.append(Subspace(p, n, tuple(tuple(r) for r in rows)))
    return out


# -- groups ------------------------------------------------------------------


class MatrixGroup:
    """Finite subgroup of GL_n(F_p) given by generators.

    The element list is produced by breadth-first closure starting from the
    identity and applying generators in sorted order, so it is deterministic.
    """

    def __init__(self, p: int, n: int, generators: Iterable[Sequence[Sequence[int]]], order_cap: int = DEFAULT_ORDER_CAP):
        _check_prime(p)
        self.p = p
        self.n = n
        self.order_cap = order_cap
        gens = []
        for g in generators:
            m = as_matrix(g, p)
            if len(m) != n or any(len(r) != n for r in m):
                raise StructuralError(f"generator {m} is not {n}x{n}")
            if not is_invertible(m, p):
                raise StructuralError(f"generator {m} is singular mod {p}")
            gens.append(m)
        self.generators: tuple[Matrix, ...] = tuple(gens)

    def __repr__(self) -> str:
        return f"MatrixGroup(p={self.p}, n={self.n}, generators={list(self.generators)})"

    @cached_property
    def elements(self) -> tuple[Matrix, ...]:
        return _closure(self.generators, self.p, self.n, self.order_cap)

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def identity(self) -> Matrix:
        return identity(self.n)

    def mul(self, a: Matrix, b: Matrix) -> Matrix:
        return mat_mul(a, b, self.p)

    def inverse(self, a: Matrix) -> Matrix:
        return _inverse_cached(a, self.p)

    def __contains__(self, g) -> bool:
        return g in self.element_set

    def whole(self) -> "SubgroupHandle":
        return SubgroupHandle(self, self.elements)

    def trivial(self) -> "SubgroupHandle":
        return SubgroupHandle(self, (self.identity,))


_INV_CACHE: dict[tuple[Matrix, int], Matrix] = {}


def _inverse_cached(a: Matrix, p: int) -> Matrix:
    key = (a, p)
    inv = _INV_CACHE.get(key)
    if inv is None:
        if len(_INV_CACHE) > 200_000:
            _INV_CACHE.clear()
        inv = _INV_CACHE[key] = mat_inv(a, p)
    return inv


def _closure(gens: Sequence[Matrix], p: int, n: int, cap: int) -> tuple[Matrix, ...]:
    gens = sorted(set(gens))
    e = identity(n)
    seen = {e}
    order = [e]
    queue = deque([e])
    while queue:
        a = queue.popleft()
        for g in gens:
            b = mat_mul(a, g, p)
            if b not in seen:
                seen.add(b)
                order.append(b)
                if len(order) > cap:
                    raise GroupTooLargeError(f"group order exceeds cap {cap}")
                queue.append(b)
    return tuple(order)


def enumerate_group(p: int, n: int, generators, order_cap: int = DEFAULT_ORDER_CAP) -> MatrixGroup:
    G = MatrixGroup(p, n, generators, order_cap)
    G.elements  # noqa: B018 - force enumeration
    return G


@dataclass(frozen=True)
class SubgroupHandle:
    """A subgroup of ``parent`` given by its members, listed in parent order."""

    parent: MatrixGroup
    members: tuple[Matrix, ...]
    _set: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_set", frozenset(self.members))

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def p(self) -> int:
        return self.parent.p

    @property
    def n(self) -> int:
        return self.parent.n

    def __contains__(self, g) -> bool:
        return g in self._set

    def __eq__(self, other) -> bool:
        return isinstance(other, SubgroupHandle) and self._set == other._set

    def __hash__(self) -> int:
        return hash(self._set)

    def issubgroup(self, other: "SubgroupHandle") -> bool:
        return self._set <= other._set

    @cached_property
    def generators(self) -> tuple[Matrix, ...]:
        """A small generating set, picked greedily in member order."""
        p, n = self.parent.p, self.parent.n
        gens: list[Matrix] = []
        span = {identity(n)}
        for g in self.members:
            if g not in span:
                gens.append(g)
                span = set(_closure(gens, p, n, len(self.members)))
        return tuple(gens)

    def as_group(self) -> MatrixGroup:
        G = MatrixGroup(self.p, self.n, self.generators or [self.parent.identity], self.parent.order_cap)
        return G


def element_order(g: Matrix, p: int) -> int:
    e = identity(len(g))
    k, a = 1, g
    while a != e:
        a = mat_mul(a, g, p)
        k += 1
    return k


def _p_part(m: int, p: int) -> int:
    q = 1
    while m % p == 0:
        m //= p
        q *= p
    return q


def _is_p_power(m: int, p: int) -> bool:
    return _p_part(m, p) == m


def sylow_subgroup(G: MatrixGroup) -> SubgroupHandle:
    """A Sylow p-subgroup, grown from a p-element of maximal order by adjoining normalizing p-elements."""
    p, n = G.p, G.n
    target = _p_part(G.order, p)
    if target == 1:
        return G.trivial()
    orders = {g: element_order(g, p) for g in G.elements}
    p_elements = [g for g in G.elements if orders[g] > 1 and _is_p_power(orders[g], p)]
    best = max(orders[g] for g in p_elements)
    start = next(g for g in p_elements if orders[g] == best)
    gens = [start]
    members = set(_closure(gens, p, n, G.order))
    while len(members) < target:
        for g in p_elements:
            if g in members:
                continue
            gi = G.inverse(g)
            if all(mat_mul(mat_mul(g, h, p), gi, p) in members for h in gens):
                grown = set(_closure(gens + [g], p, n, G.order))
                if _is_p_power(len(grown), p):
                    gens.append(g)
                    members = grown
                    break
        else:  # pragma: no cover - group theory guarantees a normalizing p-element
            raise RuntimeError("Sylow growth stalled")
    return SubgroupHandle(G, tuple(g for g in G.elements if g in members))


def _elements_of(S) -> Sequence[Matrix]:
    if isinstance(S, SubgroupHandle):
        return S.members
    if isinstance(S, MatrixGroup):
        return S.elements
    return list(S)


def fixed_subspace(S, p: int | None = None, n: int | None = None) -> Subspace:
    """``{v : g v = v for all g in S}`` for a subgroup, group, or plain element collection."""
    elems = _elements_of(S)
    if isinstance(S, (SubgroupHandle, MatrixGroup)):
        p, n = S.p, S.n
    elif p is None:
        raise StructuralError("p must be given for a bare element collection")
    if n is None:
        n = len(elems[0])
    rows = []
    for g in elems:
        for i in range(n):
            rows.append([(g[i][j] - (i == j)) % p for j in range(n)])
    return Subspace.span(nullspace(rows, p, n), p, n)


def pointwise_stabilizer(G: MatrixGroup, U: Subspace) -> SubgroupHandle:
    if U.n != G.n or U.p != G.p:
        raise StructuralError("subspace and group live on different spaces")
    members = tuple(g for g in G.elements if all(mat_vec(g, u, G.p) == u for u in U.basis))
    return SubgroupHandle(G, members)


def act_on_polynomial(g: Matrix, f: Polynomial) -> Polynomial:
    """Left action ``(g.f)(v) = f(g^{-1} v)``."""
    if len(g) != f.n:
        raise StructuralError(f"{len(g)}x{len(g)} matrix cannot act on a polynomial in {f.n} variables")
    return apply_linear_substitution(f, _inverse_cached(g, f.p))
