from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qwalk.exact import (
    HigherDegreeFactor,
    IntPolynomial,
    QuadraticValue,
    RationalMatrix,
    char_poly,
    eval_at_quadratic,
    is_quadratic_algebraic_integer,
    mat_mul,
    mat_pow,
    poly_divmod_monic,
    quadratic_from_string,
    rational_rank,
    roots_degree_le2,
    square_free_part,
)

rationals = st.fractions(
    min_value=-10, max_value=10, max_denominator=12
)


def square_matrices(n: int):
    return st.lists(
        st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n
    ).map(RationalMatrix)


class TestRationalMatrix:
    def test_identity_and_zeros(self):
        assert RationalMatrix.identity(3).is_identity()
        assert not RationalMatrix.zeros(3, 3).is_identity()

    def test_ragged_rejected(self):
        with pytest.raises(ValueError):
            RationalMatrix([[1, 2], [3]])

    @given(square_matrices(3), st.integers(min_value=0, max_value=5), st.integers(min_value=0, max_value=5))
    @settings(max_examples=50, deadline=None)
    def test_mat_pow_additivity(self, a, i, j):
        assert mat_pow(a, i + j) == mat_mul(mat_pow(a, i), mat_pow(a, j))

    @given(square_matrices(3))
    @settings(max_examples=30, deadline=None)
    def test_transpose_involution(self, a):
        assert a.transpose().transpose() == a

    def test_rank(self):
        assert rational_rank(RationalMatrix.identity(4)) == 4
        assert rational_rank(RationalMatrix([[1, 2], [2, 4]])) == 1
        assert rational_rank(RationalMatrix.zeros(2, 5)) == 0


class TestPolynomials:
    def test_char_poly_of_diagonal(self):
        # (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        p = char_poly([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
        assert p.coeffs == (-6, 11, -6, 1)

    @given(
        st.lists(
            st.lists(st.integers(-4, 4), min_size=3, max_size=3),
            min_size=3,
            max_size=3,
        )
    )
    @settings(max_examples=40, deadline=None)
    def test_cayley_hamilton(self, m):
        """p(A) = 0 for p the characteristic polynomial of A."""
        p = char_poly(m)
        a = RationalMatrix(m)
        acc = RationalMatrix.zeros(3, 3)
        power = RationalMatrix.identity(3)
        for c in p.coeffs:
            acc = acc.add(power.scale(c))
            power = mat_mul(power, a)
        assert acc == RationalMatrix.zeros(3, 3)

    def test_divmod(self):
        p = IntPolynomial.from_coeffs([-6, 11, -6, 1])
        q, r = poly_divmod_monic(p, IntPolynomial.from_coeffs([-1, 1]))
        assert r.is_zero
        assert q.coeffs == (6, -5, 1)


class TestSquareFree:
    @given(st.integers(min_value=1, max_value=20000))
    @settings(max_examples=100)
    def test_decomposition(self, n):
        s, f = square_free_part(n)
        assert s * f * f == n
        # s has no square divisor
        d = 2
        while d * d <= s:
            assert s % (d * d) != 0
            d += 1

    def test_known_values(self):
        assert square_free_part(1) == (1, 1)
        assert square_free_part(12) == (3, 2)
        assert square_free_part(49) == (1, 7)


class TestQuadraticValue:
    def test_normalization(self):
        v = QuadraticValue.of(1, Fraction(1, 2), 12)  # sqrt(12) = 2 sqrt(3)
        assert (v.a, v.b, v.m) == (Fraction(1), Fraction(1), 3)

    def test_rational_collapse(self):
        assert QuadraticValue.of(2, 3, 1) == QuadraticValue.rational(5)
        assert QuadraticValue.of(2, 0, 7).is_rational

    @given(rationals, rationals, st.sampled_from([2, 3, 5, 6, 7]))
    def test_string_round_trip(self, a, b, m):
        v = QuadraticValue.of(a, b, m)
        assert quadratic_from_string(str(v)) == v

    def test_arithmetic(self):
        r2 = QuadraticValue.of(0, 1, 2)
        assert r2 * r2 == QuadraticValue.rational(2)
        assert (r2 + r2.conjugate()).is_rational

    def test_incompatible_radicands(self):
        with pytest.raises(ValueError):
            QuadraticValue.of(0, 1, 2) * QuadraticValue.of(0, 1, 3)

    def test_algebraic_integers(self):
        # golden ratio (1+sqrt5)/2 is integral (m = 1 mod 4)
        assert is_quadratic_algebraic_integer(
            QuadraticValue.of(Fraction(1, 2), Fraction(1, 2), 5)
        )
        # (1+sqrt2)/2 is not (m = 2 mod 4)
        assert not is_quadratic_algebraic_integer(
            QuadraticValue.of(Fraction(1, 2), Fraction(1, 2), 2)
        )
        assert is_quadratic_algebraic_integer(QuadraticValue.of(3, -2, 3))
        assert not is_quadratic_algebraic_integer(QuadraticValue.rational(Fraction(1, 2)))


class TestRootFinding:
    def test_integer_roots_with_multiplicity(self):
        # (x-2)^2 (x+1) = x^3 - 3x^2 + 4
        p = IntPolynomial.from_coeffs([4, 0, -3, 1])
        roots = dict(roots_degree_le2(p))
        assert roots[QuadraticValue.rational(2)] == 2
        assert roots[QuadraticValue.rational(-1)] == 1

    def test_quadratic_roots(self):
        # x^2 - x - 1: golden ratio pair
        roots = roots_degree_le2(IntPolynomial.from_coeffs([-1, -1, 1]))
        values = {v for v, _ in roots}
        phi = QuadraticValue.of(Fraction(1, 2), Fraction(1, 2), 5)
        assert values == {phi, phi.conjugate()}

    def test_mixed_with_zero(self):
        # x^2 (x^2 - 2)
        roots = dict(roots_degree_le2(IntPolynomial.from_coeffs([0, 0, -2, 0, 1])))
        assert roots[QuadraticValue.rational(0)] == 2
        assert roots[QuadraticValue.of(0, 1, 2)] == 1

    def test_higher_degree_raises(self):
        with pytest.raises(HigherDegreeFactor):
            roots_degree_le2(IntPolynomial.from_coeffs([-2, 0, 0, 1]))  # x^3 - 2

    def test_complex_quadratic_raises(self):
        with pytest.raises(HigherDegreeFactor):
            roots_degree_le2(IntPolynomial.from_coeffs([1, 0, 1]))  # x^2 + 1

    @given(
        st.lists(st.integers(-3, 3), min_size=1, max_size=4),
    )
    @settings(max_examples=60, deadline=None)
    def test_roots_verify_by_evaluation(self, int_roots):
        """Every root reported for a product of linear factors evaluates to zero."""
        p = IntPolynomial.from_coeffs([1])
        for r in int_roots:
            p = p.mul_linear_shift(r)
        for v, mult in roots_degree_le2(p):
            assert eval_at_quadratic(p, v) == QuadraticValue.rational(0)
        assert sum(m for _, m in roots_degree_le2(p)) == len(int_roots)
