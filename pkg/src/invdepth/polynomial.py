"""Sparse multivariate polynomials over a prime field F_p.

Polynomials are immutable maps from exponent tuples to non-zero residues in
``[0, p)``.  Everything here uses the algebraic grading, where each variable
has degree 1; :class:`GradingConvention` converts to the topological grading
(generators in degree 2) only when results are displayed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import StructuralError, UnsupportedCharacteristicError

Monomial = tuple[int, ...]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in range(2, math.isqrt(p) + 1):
        if p % q == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldPrime:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise StructuralError(f"{self.p!r} is not a prime")

    def inverse(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse mod p")
        return pow(a, -1, self.p)


class GradingConvention(enum.Enum):
    ALGEBRAIC = "algebraic"
    TOPOLOGICAL = "topological"

    @property
    def factor(self) -> int:
        return 2 if self is GradingConvention.TOPOLOGICAL else 1

    def display(self, degree: int) -> int:
        return self.factor * degree


def _check_prime(p: int) -> None:
    # FieldPrime does the trial division; cache it for repeated construction
    _prime_ok(p)


@lru_cache(maxsize=None)
def _prime_ok(p: int) -> bool:
    FieldPrime(p)
    return True


class Polynomial:
    """An element of F_p[x_1, ..., x_n].

    >>> x, y = Polynomial.variables(2, 2)
    >>> (x + y) * (x + y)
    x1^2 + x2^2
    """

    __slots__ = ("n", "p", "_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]], n: int, p: int):
        _check_prime(p)
        if n < 0:
            raise StructuralError("variable count must be non-negative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Monomial, int] = {}
        for mon, c in items:
            mon = tuple(mon)
            if len(mon) != n:
                raise StructuralError(f"monomial {mon} does not have {n} exponents")
            if any(e < 0 for e in mon):
                raise StructuralError(f"negative exponent in {mon}")
            c = (clean.get(mon, 0) + c) % p
            if c:
                clean[mon] = c
            else:
                clean.pop(mon, None)
        self.n = n
        self.p = p
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, int], n: int, p: int) -> "Polynomial":
        # trusted constructor: terms already reduced, no zero coefficients
        obj = object.__new__(cls)
        obj.n = n
        obj.p = p
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, n: int, p: int) -> "Polynomial":
        _check_prime(p)
        return cls._raw({}, n, p)

    @classmethod
    def constant(cls, c: int, n: int, p: int) -> "Polynomial":
        return cls({(0,) * n: c}, n, p)

    @classmethod
    def one(cls, n: int, p: int) -> "Polynomial":
        return cls.constant(1, n, p)

    @classmethod
    def monomial(cls, exponents: Sequence[int], p: int, coeff: int = 1) -> "Polynomial":
        exponents = tuple(exponents)
        return cls({exponents: coeff}, len(exponents), p)

    @classmethod
    def variable(cls, i: int, n: int, p: int) -> "Polynomial":
        if not 0 <= i < n:
            raise StructuralError(f"variable index {i} out of range for n={n}")
        return cls.monomial(tuple(int(j == i) for j in range(n)), p)

    @classmethod
    def variables(cls, n: int, p: int) -> list["Polynomial"]:
        return [cls.variable(i, n, p) for i in range(n)]

    @classmethod
    def linear_form(cls, coeffs: Sequence[int], p: int) -> "Polynomial":
        _check_prime(p)
        n = len(coeffs)
        units = _unit_vectors(n)
        return cls._raw({units[i]: c % p for i, c in enumerate(coeffs) if c % p}, n, p)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coefficient(self, mon: Monomial) -> int:
        return self._terms.get(tuple(mon), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def homogeneous_component(self, d: int) -> "Polynomial":
        return Polynomial._raw({m: c for m, c in self._terms.items() if sum(m) == d}, self.n, self.p)

    def homogeneous_components(self) -> dict[int, "Polynomial"]:
        out: dict[int, dict[Monomial, int]] = {}
        for m, c in self._terms.items():
            out.setdefault(sum(m), {})[m] = c
        return {d: Polynomial._raw(t, self.n, self.p) for d, t in sorted(out.items())}

    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.n:
            raise StructuralError("point has the wrong length")
        total = 0
        for mon, c in self._terms.items():
            v = c
            for a, e in zip(point, mon):
                if e:
                    v = v * pow(a, e, self.p) % self.p
            total += v
        return total % self.p

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.n != other.n or self.p != other.p:
            raise StructuralError(
                f"incompatible polynomials: (n={self.n}, p={self.p}) vs (n={other.n}, p={other.p})"
            )

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return Polynomial.constant(other, self.n, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        terms = dict(self._terms)
        for m, c in other._terms.items():
            s = (terms.get(m, 0) + c) % p
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial._raw(terms, self.n, p)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return Polynomial._raw({m: p - c for m, c in self._terms.items()}, self.n, p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c: int) -> "Polynomial":
        c %= self.p
        if c == 0:
            return Polynomial.zero(self.n, self.p)
        p = self.p
        return Polynomial._raw({m: a * c % p for m, a in self._terms.items()}, self.n, p)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.one(self.n, self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.constant(other, self.n, self.p)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.p == other.p and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.p, frozenset(self._terms.items())))
        return self._hash

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        """Terms by decreasing degree, then decreasing lex order."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mon, c in self.sorted_terms():
            factors = []
            for i, e in enumerate(mon):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts)


def multiply(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    p = f.p
    if len(f) > len(g):
        f, g = g, f
    out: dict[Monomial, int] = {}
    gt = list(g._terms.items())
    for m1, c1 in f._terms.items():
        for m2, c2 in gt:
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = (out.get(m, 0) + c1 * c2) % p
    return Polynomial._raw({m: c for m, c in out.items() if c}, f.n, p)


def substitute(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Ring homomorphism sending variable ``x_i`` to ``images[i]``."""
    if len(images) != f.n:
        raise StructuralError(f"need {f.n} images, got {len(images)}")
    if not images:
        return f
    m_vars = images[0].n
    for img in images:
        if img.n != m_vars or img.p != f.p:
            raise StructuralError("substitution images live in different rings")
    powers: dict[tuple[int, int], Polynomial] = {}

    def power(i: int, e: int) -> Polynomial:
        key = (i, e)
        if key not in powers:
            powers[key] = images[i] if e == 1 else power(i, e - 1) * images[i]
        return powers[key]

    acc: dict[Monomial, int] = {}
    p = f.p
    one = Polynomial.one(m_vars, p)
    for mon, c in f._terms.items():
        term = one
        for i, e in enumerate(mon):
            if e:
                term = term * power(i, e)
        for m, a in term._terms.items():
            acc[m] = (acc.get(m, 0) + a * c) % p
    return Polynomial._raw({m: c for m, c in acc.items() if c}, m_vars, p)


def apply_linear_substitution(f: Polynomial, A: Sequence[Sequence[int]]) -> Polynomial:
    """Replace ``x_i`` by ``sum_j A[i][j] * y_j``; ``A`` is ``n x m`` and the result has ``m`` variables."""
    if len(A) != f.n:
        raise StructuralError(f"substitution matrix has {len(A)} rows, polynomial has {f.n} variables")
    widths = {len(row) for row in A}
    if len(widths) > 1:
        raise StructuralError("ragged substitution matrix")
    if not A:
        return f
    return _linear_substitution(tuple(tuple(row) for row in A), f.p)(f)


class LinearSubstitution:
    """``apply_linear_substitution`` for a fixed matrix, memoizing monomial images across calls."""

    def __init__(self, A: Sequence[Sequence[int]], p: int):
        self.p = p
        self.images = [Polynomial.linear_form(row, p) for row in A]
        self.m = len(A[0]) if A else 0
        self._cache: dict[Monomial, Polynomial] = {}

    def monomial_image(self, mon: Monomial) -> Polynomial:
        img = self._cache.get(mon)
        if img is None:
            i = next((j for j, e in enumerate(mon) if e), None)
            if i is None:
                return Polynomial.one(self.m, self.p)
            rest = mon[:i] + (mon[i] - 1,) + mon[i + 1:]
            img = self.images[i] if not any(rest) else self.monomial_image(rest) * self.images[i]
            self._cache[mon] = img
        return img

    def __call__(self, f: Polynomial) -> Polynomial:
        if f.n != len(self.images):
            raise StructuralError(f"substitution has {len(self.images)} rows, polynomial has {f.n} variables")
        p = self.p
        acc: dict[Monomial, int] = {}
        for mon, c in f._terms.items():
            for m, a in self.monomial_image(mon)._terms.items():
                acc[m] = (acc.get(m, 0) + a * c) % p
        return Polynomial._raw({m: c for m, c in acc.items() if c}, self.m, p)


@lru_cache(maxsize=64)
def _linear_substitution(A: tuple[tuple[int, ...], ...], p: int) -> LinearSubstitution:
    return LinearSubstitution(A, p)


@lru_cache(maxsize=None)
def _unit_vectors(n: int) -> tuple[Monomial, ...]:
    return tuple(tuple(int(j == i) for j in range(n)) for i in range(n))


@lru_cache(maxsize=None)
def monomial_basis(n: int, d: int) -> tuple[Monomial, ...]:
    """All degree-``d`` monomials in ``n`` variables, lexicographically decreasing."""
    if n < 1:
        raise StructuralError("need at least one variable")
    if d < 0:
        return ()
    if n == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        out.extend((first,) + rest for rest in monomial_basis(n - 1, d - first))
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n: int, d: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomial_basis(n, d))}


def steenrod_total_square(f: Polynomial) -> Polynomial:
    """Total Steenrod square at p = 2, ``Sq(x_i) = x_i + x_i^2`` extended multiplicatively."""
    if f.p != 2:
        raise UnsupportedCharacteristicError("total Steenrod square is only implemented for p = 2")
    xs = Polynomial.variables(f.n, 2)
    return substitute(f, [x + x * x for x in xs])


def clear_substitution_cache() -> None:
    """Drop memoized monomial images held for recently used substitution matrices."""
    _linear_substitution.cache_clear()
