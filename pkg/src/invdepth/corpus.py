"""Named matrix groups used as the regression corpus."""

from __future__ import annotations

from typing import Sequence

from .groups import Matrix, MatrixGroup, enumerate_group, identity
from .polynomial import _check_prime


def permutation_matrix(perm: Sequence[int]) -> Matrix:
    """Matrix sending basis vector ``e_j`` to ``e_perm[j]``."""
    n = len(perm)
    return tuple(tuple(int(perm[j] == i) for j in range(n)) for i in range(n))


def block_diagonal(blocks: Sequence[Matrix]) -> Matrix:
    n = sum(len(b) for b in blocks)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, a in enumerate(row):
                rows[off + i][off + j] = a
        off += len(b)
    return tuple(tuple(r) for r in rows)


def primitive_root(p: int) -> int:
    for g in range(1, p):
        if len({pow(g, k, p) for k in range(1, p)}) == p - 1:
            return g
    raise ValueError(p)  # pragma: no cover


def general_linear_generators(p: int, n: int) -> list[Matrix]:
    """Elementary transvections plus a primitive diagonal scaling."""
    _check_prime(p)
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                m = [list(r) for r in identity(n)]
                m[i][j] = 1
                gens.append(tuple(tuple(r) for r in m))
    if p > 2:
        m = [list(r) for r in identity(n)]
        m[0][0] = primitive_root(p)
        gens.append(tuple(tuple(r) for r in m))
    if not gens:
        gens.append(identity(n))
    return gens


def general_linear_group(p: int, n: int) -> MatrixGroup:
    return enumerate_group(p, n, general_linear_generators(p, n))


def trivial_group(p: int, n: int) -> MatrixGroup:
    return enumerate_group(p, n, [identity(n)])


def swap_group() -> MatrixGroup:
    return enumerate_group(2, 2, [permutation_matrix([1, 0])])


def cyclic_order3_gl2f2() -> MatrixGroup:
    return enumerate_group(2, 2, [((0, 1), (1, 1))])


def regular_copies(p: int, k: int) -> MatrixGroup:
    """Z/p acting on F_p^{pk} by ``k`` copies of its regular representation."""
    shift = permutation_matrix([(j + 1) % p for j in range(p)])
    return enumerate_group(p, p * k, [block_diagonal([shift] * k)])


def klein_four_regular() -> MatrixGroup:
    """Z/2 x Z/2 permuting the coordinates of F_2^4 regularly."""
    return enumerate_group(2, 4, [permutation_matrix([1, 0, 3, 2]), permutation_matrix([2, 3, 0, 1])])


def corpus() -> dict[str, MatrixGroup]:
    """The regression corpus, keyed by a short name."""
    return {
        "swap": swap_group(),
        "gl2f2": general_linear_group(2, 2),
        "klein4_regular": klein_four_regular(),
        "z3_regular_f3": regular_copies(3, 1),
        "z2_regular_x1": regular_copies(2, 1),
        "z2_regular_x2": regular_copies(2, 2),
        "z2_regular_x3": regular_copies(2, 3),
        "z3_in_gl2f2": cyclic_order3_gl2f2(),
    }
