"""Exact linear algebra over F_p for graded pieces of F[V].

Vectors are encoded in one of two ways, chosen by the characteristic:

* ``p == 2``: a Python ``int`` used as a bitset (bit ``i`` is coordinate ``i``);
* ``p`` odd: a ``dict`` mapping coordinate to a non-zero residue.

The pivot of a vector is its highest coordinate.  Polynomials of degree ``d``
are encoded so that the lexicographically largest monomial sits on the highest
coordinate, which makes echelon pivots coincide with leading monomials.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Union

from .polynomial import Polynomial, monomial_basis, monomial_index

Vector = Union[int, dict]


def zero(p: int) -> Vector:
    return 0 if p == 2 else {}


def is_zero(v: Vector) -> bool:
    return not v


def top(v: Vector) -> int:
    if isinstance(v, int):
        return v.bit_length() - 1
    return max(v)


def coeff(v: Vector, i: int) -> int:
    if isinstance(v, int):
        return (v >> i) & 1
    return v.get(i, 0)


def add_scaled(u: Vector, v: Vector, c: int, p: int) -> Vector:
    """Return ``u + c*v``."""
    if p == 2:
        return u ^ v if c & 1 else u
    c %= p
    if not c:
        return u
    out = dict(u)
    for i, a in v.items():
        s = (out.get(i, 0) + c * a) % p
        if s:
            out[i] = s
        else:
            out.pop(i, None)
    return out


def scale(v: Vector, c: int, p: int) -> Vector:
    if p == 2:
        return v if c & 1 else 0
    c %= p
    if not c:
        return {}
    return {i: a * c % p for i, a in v.items()}


def shift(v: Vector, offset: int) -> Vector:
    if isinstance(v, int):
        return v << offset
    return {i + offset: a for i, a in v.items()}


def low_part(v: Vector, width: int) -> Vector:
    if isinstance(v, int):
        return v & ((1 << width) - 1)
    return {i: a for i, a in v.items() if i < width}


def entries(v: Vector) -> list[tuple[int, int]]:
    if isinstance(v, int):
        bits = bin(v)[:1:-1]  # least significant first
        out = []
        i = bits.find("1")
        while i >= 0:
            out.append((i, 1))
            i = bits.find("1", i + 1)
        return out
    return sorted(v.items())


def combine(vectors: Sequence[Vector], coeffs: Vector, p: int) -> Vector:
    """``sum_i coeffs[i] * vectors[i]`` where ``coeffs`` is itself an encoded vector."""
    acc = zero(p)
    for i, c in entries(coeffs):
        acc = add_scaled(acc, vectors[i], c, p)
    return acc


def encode(f: Polynomial, d: int | None = None) -> Vector:
    """Coordinates of a homogeneous polynomial in the degree-``d`` monomial basis."""
    if d is None:
        d = max(f.degree, 0)
    index = monomial_index(f.n, d)
    top_pos = len(index) - 1
    if f.p == 2:
        v = 0
        for m, _ in f.items():
            v |= 1 << (top_pos - index[m])
        return v
    return {top_pos - index[m]: c for m, c in f.items()}


def decode(v: Vector, n: int, d: int, p: int) -> Polynomial:
    basis = monomial_basis(n, d)
    top_pos = len(basis) - 1
    return Polynomial({basis[top_pos - i]: c for i, c in entries(v)}, n, p)


class Echelon:
    """A subspace of F_p^N kept as rows in echelon form, keyed by pivot."""

    def __init__(self, p: int, vectors: Iterable[Vector] = ()):
        self.p = p
        self.rows: dict[int, Vector] = {}
        for v in vectors:
            self.insert(v)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def copy(self) -> "Echelon":
        e = Echelon(self.p)
        e.rows = dict(self.rows)
        return e

    def reduce(self, v: Vector) -> Vector:
        """Reduce until the leading coordinate is not a pivot (zero iff ``v`` is in the span)."""
        rows = self.rows
        if self.p == 2:
            while v:
                r = rows.get(v.bit_length() - 1)
                if r is None:
                    return v
                v ^= r
            return v
        p = self.p
        while v:
            h = max(v)
            r = rows.get(h)
            if r is None:
                return v
            v = add_scaled(v, r, p - v[h], p)
        return v

    def reduce_fully(self, v: Vector) -> Vector:
        """Eliminate every pivot coordinate from ``v``."""
        p = self.p
        for h in sorted(self.rows, reverse=True):
            c = coeff(v, h)
            if c:
                v = add_scaled(v, self.rows[h], p - c if p != 2 else 1, p)
        return v

    def insert(self, v: Vector) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        h = top(v)
        if self.p != 2:
            v = scale(v, pow(v[h], -1, self.p), self.p)
        self.rows[h] = v
        return True

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def rref(self) -> list[Vector]:
        """Fully reduced basis, ordered by decreasing pivot."""
        # rows of ``out`` vanish at each other's pivots, so the coefficients
        # to clear can all be read off the unreduced row
        out: dict[int, Vector] = {}
        p = self.p
        mask = 0
        for h in sorted(self.rows):
            v = self.rows[h]
            if p == 2:
                for h2, _ in entries(v & mask):
                    v ^= out[h2]
                mask |= 1 << h
            else:
                orig = v
                for h2 in [i for i in orig if i in out]:
                    v = add_scaled(v, out[h2], -orig[h2], p)
            out[h] = v
        return [out[h] for h in sorted(out, reverse=True)]


def rank(vectors: Iterable[Vector], p: int) -> int:
    return Echelon(p, vectors).rank


def kernel(vectors: Sequence[Vector], p: int) -> list[Vector]:
    """Basis of ``{c : sum_i c_i * vectors[i] = 0}``, each ``c`` encoded over ``len(vectors)`` coordinates."""
    k = len(vectors)
    ech = Echelon(p)
    out = []
    for i, v in enumerate(vectors):
        tag = (1 << i) if p == 2 else {i: 1}
        aug = add_scaled(shift(v, k), tag, 1, p)
        res = ech.reduce(aug)
        if not res:
            continue
        if top(res) < k:
            out.append(res)
        else:
            ech.insert(res)
    return out
