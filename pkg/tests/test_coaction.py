import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import polynomials
from invdepth.coaction import (
    ElemAbelianModel,
    TensorElement,
    coaction,
    coassociativity_check,
    counit_check,
    restrict_to_subspace,
)
from invdepth.corpus import general_linear_group, klein_four_regular, regular_copies, swap_group
from invdepth.errors import PreconditionError, StructuralError
from invdepth.groups import Subspace, act_on_polynomial, fixed_subspace, subspaces_of_dim, sylow_subgroup
from invdepth.invariants import InvariantBasis
from invdepth.polynomial import Polynomial

DIAG = Subspace.span([(1, 1)], 2, 2)


def swap_p():
    G = swap_group()
    return G, G.whole()


class TestRestriction:
    def test_full_space(self):
        x, y = Polynomial.variables(2, 3)
        f = x * x * y + y
        assert restrict_to_subspace(f, Subspace.full(3, 2)) == f

    def test_diagonal(self):
        x, y = Polynomial.variables(2, 2)
        lam = Polynomial.variable(0, 1, 2)
        assert restrict_to_subspace(x * y, DIAG) == lam * lam

    def test_axis(self):
        x, y = Polynomial.variables(2, 2)
        lam = Polynomial.variable(0, 1, 2)
        assert restrict_to_subspace(x + y, Subspace.span([(1, 0)], 2, 2)) == lam

    def test_mismatch(self):
        with pytest.raises(StructuralError):
            restrict_to_subspace(Polynomial.variable(0, 3, 2), DIAG)

    @given(st.data())
    @settings(max_examples=150)
    def test_algebra_map(self, data):
        p = data.draw(st.sampled_from([2, 3]))
        n = 3
        s = data.draw(st.integers(1, 3))
        U = data.draw(st.sampled_from(subspaces_of_dim(p, n, s)))
        f = data.draw(polynomials(n, p, max_degree=3, max_terms=4))
        g = data.draw(polynomials(n, p, max_degree=3, max_terms=4))
        assert restrict_to_subspace(f * g, U) == restrict_to_subspace(f, U) * restrict_to_subspace(g, U)
        assert restrict_to_subspace(f + g, U) == restrict_to_subspace(f, U) + restrict_to_subspace(g, U)


class TestCoaction:
    def test_constant(self):
        G, P = swap_p()
        c = Polynomial.one(2, 2)
        T = coaction(c, DIAG, P)
        assert T.terms == {(0,): c}

    def test_linear_cancels(self):
        G, P = swap_p()
        x, y = Polynomial.variables(2, 2)
        T = coaction(x + y, DIAG, P)
        assert T.terms == {(0,): x + y}

    def test_product(self):
        G, P = swap_p()
        x, y = Polynomial.variables(2, 2)
        T = coaction(x * y, DIAG, P)
        assert T.terms == {(0,): x * y, (1,): x + y, (2,): Polynomial.one(2, 2)}
        assert "mu1 (x) (x1 + x2)" in repr(T)

    def test_outside_fixed_space(self):
        G, P = swap_p()
        x, y = Polynomial.variables(2, 2)
        with pytest.raises(PreconditionError):
            coaction(x * y, Subspace.span([(1, 0)], 2, 2), P)

    def test_round_trip(self):
        x, y = Polynomial.variables(2, 2)
        T = coaction(x * y, DIAG)
        assert TensorElement.from_polynomial(T.to_polynomial(), 1) == T

    @given(st.data())
    @settings(max_examples=100)
    def test_algebra_map(self, data):
        G = data.draw(st.sampled_from([swap_group(), klein_four_regular(), regular_copies(3, 1)]))
        P = sylow_subgroup(G)
        VP = fixed_subspace(P)
        M = InvariantBasis(P.as_group())
        d1, d2 = data.draw(st.integers(1, 3)), data.draw(st.integers(1, 3))
        f = data.draw(st.sampled_from(M.basis(d1) or (Polynomial.one(G.n, G.p),)))
        g = data.draw(st.sampled_from(M.basis(d2) or (Polynomial.one(G.n, G.p),)))
        assert coaction(f * g, VP, P) == coaction(f, VP, P) * coaction(g, VP, P)


class TestComoduleIdentities:
    def test_constant(self):
        G, P = swap_p()
        one = Polynomial.one(2, 2)
        assert counit_check(one, DIAG, P) and coassociativity_check(one, DIAG, P)

    def test_swap_product(self):
        G, P = swap_p()
        x, y = Polynomial.variables(2, 2)
        assert counit_check(x * y, DIAG, P)
        assert coassociativity_check(x * y, DIAG, P)

    @pytest.mark.parametrize("group", [swap_group, klein_four_regular, lambda: regular_copies(3, 1), lambda: general_linear_group(2, 3)])
    def test_exhaustive(self, group):
        G = group()
        P = sylow_subgroup(G)
        VP = fixed_subspace(P)
        M = InvariantBasis(P.as_group())
        subspaces = [U for s in range(VP.dim + 1) for U in subspaces_of_dim(G.p, G.n, s) if U.issubspace(VP)]
        for C in subspaces:
            for d in range(5):
                for f in M.basis(d):
                    T = coaction(f, C, P)
                    assert T.counit() == f
                    assert coassociativity_check(f, C, P)
                    for g in T.right_factors():
                        assert all(act_on_polynomial(h, g) == g for h in P.members)


def test_elementary_abelian_model():
    E = ElemAbelianModel(2, 2)
    t1, t2 = E.variables()
    assert E.is_regular([t1 + t2, t1 * t2])
    assert not E.is_regular([t1, t1 * t2])
