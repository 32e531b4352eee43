"""q-brackets, the weight-0 q-Euler tables, beta values, and the
classical-limit cross-check."""

from fractions import Fraction
from math import comb

import pytest

from qeuler.exactarith import PolyQ, RatFuncQ, XPolyQ
from qeuler.qspecial import (
    DomainError,
    beta_exact,
    binom,
    classical_euler_number,
    euler_number,
    euler_poly,
    euler_poly_integral01,
    q_bracket,
)

ONE_PLUS_Q = PolyQ((1, 1))
Q = PolyQ((0, 1))


class TestBinom:
    def test_zero_convention(self):
        assert binom(3, -1) == 0
        assert binom(3, 4) == 0
        assert binom(-1, 0) == 0

    def test_matches_comb(self):
        for n in range(8):
            for r in range(n + 1):
                assert binom(n, r) == comb(n, r)


class TestQBracket:
    def test_small_values(self):
        assert q_bracket(3) == RatFuncQ(PolyQ((1, 1, 1)))
        assert q_bracket(0).is_zero
        assert q_bracket(1) == RatFuncQ(PolyQ((1,)))

    def test_reciprocal_base(self):
        assert q_bracket(2, reciprocal=True) == RatFuncQ(ONE_PLUS_Q, Q)
        assert q_bracket(0, reciprocal=True).is_zero

    def test_negative_index(self):
        # (1 - q^-1)/(1 - q) = -1/q
        assert q_bracket(-1) == RatFuncQ(PolyQ((-1,)), Q)

    def test_q_to_one_limit(self):
        for n in range(-4, 8):
            assert q_bracket(n).evaluate(1) == n
            assert q_bracket(n, reciprocal=True).evaluate(1) == n


class TestEulerNumbers:
    def test_first_values(self):
        assert euler_number(0) == RatFuncQ(PolyQ((1,)))
        assert euler_number(1) == RatFuncQ(PolyQ((0, -1)), ONE_PLUS_Q)
        assert euler_number(2) == RatFuncQ(Q * PolyQ((-1, 1)), ONE_PLUS_Q ** 2)

    def test_third_value(self):
        # -q(q^2 - 4q + 1)/(1+q)^3
        expected = RatFuncQ(Q * PolyQ((-1, 4, -1)), ONE_PLUS_Q ** 3)
        assert euler_number(3) == expected

    def test_recurrence_invariant(self):
        for n in range(1, 15):
            s = RatFuncQ.zero()
            for l in range(n):
                s = s + euler_number(l) * Fraction(comb(n, l))
            lhs = RatFuncQ(ONE_PLUS_Q) * euler_number(n) + RatFuncQ(Q) * s
            assert lhs.is_zero

    def test_denominator_divides_bracket_power(self):
        for n in range(21):
            assert (ONE_PLUS_Q ** n % euler_number(n).den).is_zero

    def test_classical_limit(self):
        for n in range(21):
            assert euler_number(n).evaluate(1) == classical_euler_number(n)

    def test_negative_index_rejected(self):
        with pytest.raises(DomainError):
            euler_number(-1)


class TestEulerPolys:
    def test_first_values(self):
        assert euler_poly(0) == XPolyQ.one()
        e1 = XPolyQ([RatFuncQ(PolyQ((0, -1)), ONE_PLUS_Q), RatFuncQ.one()])
        assert euler_poly(1) == e1

    def test_second_value(self):
        expected = XPolyQ([
            RatFuncQ(Q * PolyQ((-1, 1)), ONE_PLUS_Q ** 2),
            RatFuncQ(PolyQ((0, -2)), ONE_PLUS_Q),
            RatFuncQ.one(),
        ])
        assert euler_poly(2) == expected

    def test_monic_of_degree_n(self):
        for n in range(13):
            p = euler_poly(n)
            assert p.degree == n
            assert p.leading == RatFuncQ.one()

    def test_constant_term_is_number(self):
        for n in range(13):
            assert euler_poly(n).coefficient(0) == euler_number(n)

    def test_derivative_rule(self):
        for n in range(1, 13):
            assert euler_poly(n).derivative() == euler_poly(n - 1) * Fraction(n)

    def test_reflection_through_recurrence(self):
        # q * E_n(1) + E_n = 0 for n >= 1, and (1 + q) at n = 0
        q_rf = RatFuncQ(Q)
        for n in range(1, 13):
            v = q_rf * euler_poly(n).eval_at(Fraction(1)) + euler_number(n)
            assert v.is_zero
        n0 = q_rf * euler_poly(0).eval_at(Fraction(1)) + euler_number(0)
        assert n0 == RatFuncQ(ONE_PLUS_Q)


class TestIntegral01:
    def test_constant(self):
        assert euler_poly_integral01(0) == RatFuncQ.one()

    def test_linear(self):
        # (1 - q)/(2 (1 + q)), by substituting the second euler number
        expected = RatFuncQ(PolyQ((Fraction(1, 2), Fraction(-1, 2))), ONE_PLUS_Q)
        assert euler_poly_integral01(1) == expected

    def test_routes_agree_up_to_12(self):
        for n in range(13):
            euler_poly_integral01(n)  # raises InternalInconsistency on mismatch


class TestBetaExact:
    def test_trivial(self):
        assert beta_exact(1, 1) == 1

    def test_factorial_identity(self):
        assert beta_exact(2, 3) == Fraction(1, 12)

    def test_symmetry(self):
        for a in range(1, 8):
            for b in range(1, 8):
                assert beta_exact(a, b) == beta_exact(b, a)

    def test_central_form(self):
        # B(k+1, k+1) = 1 / ((2k+1) C(2k, k)) for k <= 10
        for k in range(11):
            assert beta_exact(k + 1, k + 1) == Fraction(1, (2 * k + 1) * comb(2 * k, k))
        assert beta_exact(3, 3) == Fraction(1, 30)

    def test_domain(self):
        with pytest.raises(DomainError):
            beta_exact(0, 1)
        with pytest.raises(DomainError):
            beta_exact(1, 0)


class TestClassicalOracle:
    def test_first_values(self):
        # recurrence by hand: 1 + 2 E_1 = 0; 1 - 1 + 2 E_2 = 0; ...
        assert classical_euler_number(0) == 1
        assert classical_euler_number(1) == Fraction(-1, 2)
        assert classical_euler_number(2) == 0
        assert classical_euler_number(3) == Fraction(1, 4)

    def test_odd_tail_and_even_zeros(self):
        # E_n(0) vanishes at even n >= 2
        for n in range(2, 16, 2):
            assert classical_euler_number(n) == 0
