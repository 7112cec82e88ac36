import itertools
import random

import pytest

from invdepth.corpus import swap_group, trivial_group
from invdepth.depth import (
    RegularSequenceCertificate,
    ResidueField,
    ZeroDivisorWitness,
    choose_hsop,
    depth_report,
    finite_length_evidence,
    freeness_test,
    is_regular_sequence,
    koszul_depth,
    module_regular_sequence_check,
    quotient_hilbert,
    regular_in_polynomial_ring,
)
from invdepth.errors import PreconditionError
from invdepth.groups import act_on_polynomial
from invdepth.invariants import InvariantBasis, dickson_invariants
from invdepth.polynomial import Polynomial


def swap_module():
    x, y = Polynomial.variables(2, 2)
    return InvariantBasis(swap_group()), x + y, x * y


class TestPolynomialRing:
    def test_variables(self):
        assert regular_in_polynomial_ring(Polynomial.variables(3, 3), 3)

    def test_multiple(self):
        t1, t2 = Polynomial.variables(2, 2)
        assert not regular_in_polynomial_ring([t1, t1 * t2], 2)

    def test_elementary_symmetric(self):
        t1, t2 = Polynomial.variables(2, 2)
        assert regular_in_polynomial_ring([t1 + t2, t1 * t2], 2)

    def test_too_long(self):
        t1, t2 = Polynomial.variables(2, 2)
        assert not regular_in_polynomial_ring([t1, t2, t1 + t2], 2)


class TestRegularSequence:
    def test_trivial_variables(self):
        G = trivial_group(3, 3)
        cert = module_regular_sequence_check(InvariantBasis(G), Polynomial.variables(3, 3), 6)
        assert isinstance(cert, RegularSequenceCertificate) and cert.length == 3
        assert cert.verified_up_to == 6

    def test_swap_certificate(self):
        M, e1, e2 = swap_module()
        cert = module_regular_sequence_check(M, [e1, e2], 8)
        assert isinstance(cert, RegularSequenceCertificate) and cert.length == 2

    def test_repeated_element_witness(self):
        M, _, e2 = swap_module()
        w = module_regular_sequence_check(M, [e2, e2], 8)
        assert isinstance(w, ZeroDivisorWitness)
        assert w.position == 1
        # the witness is a nonzero invariant killed by e2 modulo (e2)
        f = w.element
        assert not f.is_zero() and f.degree == w.degree
        assert act_on_polynomial(((0, 1), (1, 0)), f) == f
        assert is_regular_sequence(M, [e2], 8)

    def test_non_invariant_rejected(self):
        M, _, _ = swap_module()
        with pytest.raises(PreconditionError):
            module_regular_sequence_check(M, [Polynomial.variable(0, 2, 2)], 4)

    def test_prefix_property(self, groups):
        for name in ("klein4_regular", "z2_regular_x2", "z3_regular_f3", "gl2f2"):
            G = groups[name]
            R = depth_report(G)
            seq = R.certificate.sequence
            M = InvariantBasis(G)
            for k in range(len(seq) + 1):
                assert is_regular_sequence(M, seq[:k], R.cutoff)


class TestFreeness:
    def test_full_sequence(self):
        M, e1, e2 = swap_module()
        assert freeness_test(M, [e1, e2], 10)
        assert quotient_hilbert(M, [e1, e2], 10) == [1] + [0] * 10
        assert finite_length_evidence(M, [e1, e2], 10)

    def test_partial(self):
        M, e1, _ = swap_module()
        assert freeness_test(M, [e1], 10)
        assert quotient_hilbert(M, [e1], 10) == [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]
        assert not finite_length_evidence(M, [e1], 10)

    def test_zerodivisor(self):
        M, _, e2 = swap_module()
        assert not freeness_test(M, [e2, e2], 10)

    def test_agrees_with_degreewise_check(self, groups):
        # the series criterion and the degreewise check must agree on random sequences
        rng = random.Random(5)
        checked = 0
        for name in ("swap", "gl2f2", "klein4_regular", "z2_regular_x2", "z3_regular_f3", "z3_in_gl2f2"):
            G = groups[name]
            M = InvariantBasis(G)
            cutoff = 8
            M.extend(cutoff)
            degrees = [d for d in range(1, 5) if M.dimension(d)]
            for _ in range(12):
                seq = []
                for _ in range(rng.randint(1, G.n)):
                    d = rng.choice(degrees)
                    y = Polynomial.zero(G.n, G.p)
                    while y.is_zero():
                        for b in M.basis(d):
                            y = y + b.scale(rng.randrange(G.p))
                    seq.append(y)
                assert is_regular_sequence(M, seq, cutoff) == freeness_test(M, seq, cutoff)
                checked += 1
        assert checked == 72


class TestKoszul:
    def test_polynomial_ring_in_one_variable(self):
        x = Polynomial.variable(0, 1, 2)
        K = koszul_depth(InvariantBasis(trivial_group(2, 1)), [x], 8)
        assert K.nonzero() == {(0, 0): 1}
        assert K.depth == 1

    def test_swap_dickson(self):
        M, _, _ = swap_module()
        K = koszul_depth(M, dickson_invariants(2, 2), 10)
        assert K.top_nonvanishing == 0 and K.depth == 2

    def test_residue_field(self):
        x = Polynomial.variable(0, 1, 3)
        K = koszul_depth(ResidueField(1, 3), [x], 4)
        assert K.homology[(1, 1)] == 1
        assert K.depth == 0

    @pytest.mark.parametrize("name", ["klein4_regular", "z2_regular_x2", "gl2f2"])
    def test_permutation_invariance(self, groups, name):
        G = groups[name]
        M = InvariantBasis(G)
        theta = choose_hsop(M)
        cutoff = sum(f.degree for f in theta) + 3
        M.extend(cutoff)
        base = koszul_depth(M, theta, cutoff).nonzero()
        for perm in itertools.permutations(range(len(theta))):
            permuted = koszul_depth(M, [theta[i] for i in perm], cutoff).nonzero()
            assert permuted == base


class TestDepthReport:
    def test_trivial(self):
        assert depth_report(trivial_group(2, 2)).depth == 2

    def test_swap(self):
        R = depth_report(swap_group())
        assert R.depth == 2 and R.agreement
        assert R.confirmed_at == R.cutoff + 2

    def test_nonmodular(self, groups):
        R = depth_report(groups["z3_in_gl2f2"])
        assert R.depth == 2

    def test_dickson_hsop(self, groups):
        R = depth_report(groups["gl2f2"], hsop="dickson")
        assert R.depth == 2

    def test_bounded_by_n(self, groups):
        for name, G in groups.items():
            if G.n > 4:
                continue
            R = depth_report(G)
            assert 1 <= R.depth <= G.n
            assert R.certificate.length == R.koszul.depth == R.depth
            if G.order % G.p:
                assert R.depth == G.n

    def test_seed_recorded(self):
        assert depth_report(swap_group(), seed=7).seed == 7
