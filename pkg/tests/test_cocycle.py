import itertools
from fractions import Fraction

import pytest

from conftest import e, rand_matrix, rand_mv
from oracles import matching_pfaffian, row_expansion
from gfc.blades import AlgebraSignature, Multivector, ScalarModeError, basis, grade, indices, wedge
from gfc.clifford import clifford_product
from gfc.cocycle import (Cochain, CochainError, circle_product, coboundary, coboundary_inverse, cochain_extend,
                         convolution_inverse, convolve_forms, p_inverse_operator, p_operator,
                         p_operator_mirrored)
from gfc.forms import extend_form

S2 = AlgebraSignature(2)
S3 = AlgebraSignature(3)
S4 = AlgebraSignature(4)


def upper(m):
    n = len(m)
    return [[m[i][j] if i < j else 0 for j in range(n)] for i in range(n)]


class TestCochain:
    def test_low_grades(self):
        p = cochain_extend(S3, [[0, 2, 3], [0, 0, 5], [0, 0, 0]])
        assert p(0) == 1
        assert p(Multivector.scalar(S3)) == 1
        assert p(e(S3, 1)) == 0
        assert p(e(S3, 1, 2)) == 2
        assert p(e(S3, 2, 3)) == 5
        assert p(e(S3, 1, 2, 3)) == 0

    def test_grade_four(self):
        p12, p13, p14, p23, p24, p34 = 2, 3, 5, 7, 11, 13
        p = cochain_extend(S4, [[0, p12, p13, p14], [0, 0, p23, p24], [0, 0, 0, p34], [0] * 4])
        assert p(e(S4, 1, 2, 3, 4)) == p12 * p34 - p13 * p24 + p14 * p23

    def test_lower_triangle_ignored(self, rng):
        m = rand_matrix(4, rng)
        assert cochain_extend(S4, m) == cochain_extend(S4, upper(m))

    @pytest.mark.parametrize("n", [2, 4, 6])
    def test_against_matching_oracle(self, n, rng):
        sig = AlgebraSignature(n)
        m = rand_matrix(n, rng)
        p = cochain_extend(sig, m)
        for mask in sig.blades():
            assert p(mask) == matching_pfaffian(m, indices(mask))

    @pytest.mark.parametrize("n", [4, 6])
    def test_independent_of_expansion_row(self, n, rng):
        sig = AlgebraSignature(n)
        m = rand_matrix(n, rng)
        p = cochain_extend(sig, m)
        for mask in sig.blades():
            idx = indices(mask)
            if len(idx) < 4 or len(idx) % 2:
                continue
            for row in range(len(idx)):
                assert row_expansion(m, idx, row) == p(mask)

    def test_multivector_argument(self):
        p = cochain_extend(S2, [[0, 3], [0, 0]])
        assert p(2 + e(S2, 1) + e(S2, 1, 2, coeff=Fraction(1, 3))) == 3

    def test_float_rejected(self):
        with pytest.raises(ScalarModeError):
            cochain_extend(AlgebraSignature(2, "float"), [[0.0, 1.0], [0.0, 0.0]])


class TestInverse:
    def test_values(self):
        p = cochain_extend(S2, [[0, 3], [0, 0]])
        q = convolution_inverse(p)
        assert q(0) == 1
        assert q(e(S2, 1, 2)) == -3
        assert q(e(S2, 1)) == 0

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_is_convolution_inverse(self, n, rng):
        sig = AlgebraSignature(n)
        p = cochain_extend(sig, rand_matrix(n, rng))
        q = convolution_inverse(p)
        for mask in sig.blades():
            expected = 1 if mask == 0 else 0
            assert convolve_forms(p, q, mask) == expected
            assert convolve_forms(q, p, mask) == expected

    def test_needs_unit(self):
        with pytest.raises(CochainError):
            convolution_inverse(Cochain(S2, {0: 2}))


class TestOperators:
    def test_examples(self):
        p = cochain_extend(S2, [[0, 3], [0, 0]])
        one = Multivector.scalar(S2)
        assert p_operator(p, one) == one
        assert p_operator(p, e(S2, 1)) == e(S2, 1)
        assert p_operator(p, e(S2, 1, 2)) == e(S2, 1, 2) + 3
        assert p_inverse_operator(p, e(S2, 1, 2)) == e(S2, 1, 2) - 3

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_convolution_commutes(self, n, rng):
        sig = AlgebraSignature(n)
        p = cochain_extend(sig, rand_matrix(n, rng))
        for x in basis(sig):
            assert p_operator(p, x) == p_operator_mirrored(p, x)

    def test_inverse_operator(self, rng):
        p = cochain_extend(S4, rand_matrix(4, rng))
        q = convolution_inverse(p)
        for _ in range(20):
            x = rand_mv(S4, rng, 4)
            assert p_inverse_operator(p, p_operator(p, x), q) == x
            assert p_operator(p, p_inverse_operator(p, x, q)) == x


class TestCircleProduct:
    def test_examples(self, rng):
        p = cochain_extend(S2, [[0, 3], [0, 0]])
        one = Multivector.scalar(S2)
        for x in basis(S2):
            assert circle_product(p, one, x) == x == circle_product(p, x, one)
        assert circle_product(p, e(S2, 1), e(S2, 2)) == e(S2, 1, 2) - 3
        assert circle_product(p, e(S2, 2), e(S2, 1)) == -e(S2, 1, 2) + 3

    def test_zero_cochain_is_wedge(self, rng):
        p = cochain_extend(S3, [[0] * 3] * 3)
        for _ in range(10):
            x, y = rand_mv(S3, rng), rand_mv(S3, rng)
            assert circle_product(p, x, y) == wedge(x, y)

    def test_associative(self, rng):
        p = cochain_extend(S3, rand_matrix(3, rng))
        q = convolution_inverse(p)
        for a, b, c in itertools.product(basis(S3), repeat=3):
            assert circle_product(p, circle_product(p, a, b, q), c, q) == circle_product(p, a, circle_product(p, b, c, q), q)


class TestCoboundary:
    def test_examples(self):
        p = cochain_extend(S2, [[0, 3], [0, 0]])
        dp = coboundary(p)
        assert dp.pair(0, 0) == 1
        assert dp(e(S2, 1), e(S2, 2)) == -3
        assert dp(e(S2, 2), e(S2, 1)) == 3
        assert dp(e(S2, 1), e(S2, 1)) == 0

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_vector_antisymmetry(self, n, rng):
        sig = AlgebraSignature(n)
        dp = coboundary(cochain_extend(sig, rand_matrix(n, rng)))
        for i, j in itertools.product(range(n), repeat=2):
            assert dp.pair(1 << i, 1 << j) == -dp.pair(1 << j, 1 << i)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_exponentially_generated(self, n, rng):
        sig = AlgebraSignature(n)
        dp = coboundary(cochain_extend(sig, rand_matrix(n, rng)))
        ext = extend_form(dp.vector_block())
        for a, b in itertools.product(sig.blades(), repeat=2):
            if grade(a) == grade(b):
                assert dp.pair(a, b) == ext.pair(a, b)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_owl_exhaustive(self, n, rng):
        sig = AlgebraSignature(n)
        p = cochain_extend(sig, rand_matrix(n, rng))
        q = convolution_inverse(p)
        dp = coboundary(p, q)
        for x, y in itertools.product(basis(sig), repeat=2):
            assert circle_product(p, x, y, q) == clifford_product(dp, x, y)

    def test_owl_random_n4(self, rng):
        p = cochain_extend(S4, rand_matrix(4, rng))
        q = convolution_inverse(p)
        dp = coboundary(p, q)
        for _ in range(30):
            x, y = rand_mv(S4, rng), rand_mv(S4, rng)
            assert circle_product(p, x, y, q) == clifford_product(dp, x, y)

    def test_inverse_cocycle_deforms_back(self, rng):
        """Cliffordization by dP^-1 conjugates the wedge by P^-1."""
        p = cochain_extend(S3, rand_matrix(3, rng))
        q = convolution_inverse(p)
        dq = coboundary_inverse(p, q)
        for x, y in itertools.product(basis(S3), repeat=2):
            expected = p_operator(p, wedge(p_operator(q, x), p_operator(q, y)))
            assert clifford_product(dq, x, y) == expected
