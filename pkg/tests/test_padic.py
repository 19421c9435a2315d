import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padic_lines.padic import (
    PadicAbs,
    Prime,
    abs_max,
    abs_p,
    padic_expansion,
    parse_abs,
    parse_rational,
    render_abs,
    render_rational,
    valuation,
)

P2, P3, P5, P7 = Prime(2), Prime(3), Prime(5), Prime(7)

rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4)
small_primes = st.sampled_from([P2, P3, P5, P7])


class TestPrime:
    def test_accepts_primes(self):
        for p in (2, 3, 5, 7, 11, 97, 7919, 2**61 - 1):
            assert Prime(p).value == p

    @pytest.mark.parametrize("n", [-7, 0, 1, 4, 9, 15, 561, 2**32])
    def test_rejects_composites(self, n):
        with pytest.raises(ValueError, match="not a prime"):
            Prime(n)

    def test_rejects_oversize(self):
        with pytest.raises(ValueError, match="unsupported prime size"):
            Prime(2**64 + 13)


class TestValuation:
    def test_zero_is_infinite(self):
        assert valuation(Fraction(0), P5) == math.inf

    def test_prime_powers(self):
        assert valuation(Fraction(5), P5) == 1
        assert valuation(Fraction(1, 5), P5) == -1

    def test_hand_factored(self):
        assert valuation(Fraction(3, 5), P5) == -1
        assert valuation(Fraction(75, 4), P5) == 2
        assert valuation(Fraction(75, 4), P2) == -2

    @given(x=rationals, y=rationals, p=small_primes)
    def test_additive_on_products(self, x, y, p):
        if x == 0 or y == 0:
            return
        assert valuation(x * y, p) == valuation(x, p) + valuation(y, p)


class TestAbs:
    def test_zero(self):
        assert abs_p(Fraction(0), P3) is PadicAbs.ZERO

    def test_examples(self):
        assert abs_p(Fraction(3, 5), P5) == PadicAbs(1)
        assert abs_p(Fraction(9), P3) == PadicAbs(-2)

    def test_order(self):
        assert PadicAbs.ZERO < PadicAbs(-10) < PadicAbs(0) < PadicAbs(3)
        assert not PadicAbs.ZERO < PadicAbs.ZERO

    def test_mul_and_square(self):
        assert PadicAbs(2) * PadicAbs(-5) == PadicAbs(-3)
        assert PadicAbs(3).square() == PadicAbs(6)
        assert PadicAbs.ZERO * PadicAbs(4) == PadicAbs.ZERO
        assert PadicAbs(4) / PadicAbs(1) == PadicAbs(3)
        with pytest.raises(ZeroDivisionError):
            PadicAbs(1) / PadicAbs.ZERO

    def test_abs_max(self):
        assert abs_max([PadicAbs.ZERO]) == PadicAbs.ZERO
        assert abs_max([PadicAbs(-1), PadicAbs(2), PadicAbs.ZERO]) == PadicAbs(2)
        assert abs_max([PadicAbs(0), PadicAbs(0)]) == PadicAbs(0)

    def test_abs_max_empty(self):
        with pytest.raises(ValueError, match="empty-max"):
            abs_max([])

    @given(x=rationals, y=rationals, p=small_primes)
    def test_ultrametric(self, x, y, p):
        lhs = abs_p(x + y, p)
        ax, ay = abs_p(x, p), abs_p(y, p)
        assert lhs <= max(ax, ay)
        if ax != ay:
            assert lhs == max(ax, ay)

    @given(x=rationals, y=rationals, p=small_primes)
    def test_multiplicative(self, x, y, p):
        assert abs_p(x * y, p) == abs_p(x, p) * abs_p(y, p)


class TestTextEncoding:
    @pytest.mark.parametrize(
        "text,value",
        [("3/5", Fraction(3, 5)), ("-3/5", Fraction(-3, 5)), ("7", Fraction(7)), ("0", 0)],
    )
    def test_parse_rational(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("bad", ["3.5", "1e3", " 3", "3/ 5", "3//5", "1/0", "--3", "+3", ""])
    def test_parse_rational_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)

    @given(x=rationals)
    def test_rational_round_trip(self, x):
        assert parse_rational(render_rational(x)) == x

    def test_abs_round_trip(self):
        assert parse_abs("0", P5) is PadicAbs.ZERO
        assert parse_abs("5^-2", P5) == PadicAbs(-2)
        assert render_abs(PadicAbs(-2), P5) == "5^-2"
        assert render_abs(PadicAbs.ZERO, P5) == "0"

    @pytest.mark.parametrize("bad", ["5^", "^2", "5^1.5", "5 ^ 1", "-5^1", "five"])
    def test_abs_rejects_malformed(self, bad):
        with pytest.raises(ValueError, match="malformed absolute value"):
            parse_abs(bad, P5)

    def test_abs_rejects_base_mismatch(self):
        with pytest.raises(ValueError, match="does not match prime"):
            parse_abs("3^1", P5)


class TestExpansion:
    def test_zero(self):
        assert padic_expansion(Fraction(0), P5) == "0"

    def test_one_third_base_five(self):
        # 3 * (2 + 3*5 + 5^2 + 3*5^3) = 1 mod 5^4
        assert padic_expansion(Fraction(1, 3), P5, digits=4) == "2 + 3*5 + 5^2 + 3*5^3 + O(5^4)"

    def test_negative_valuation(self):
        assert padic_expansion(Fraction(1, 5), P5, digits=2).startswith("5^-1")

    def test_prime_power(self):
        assert padic_expansion(Fraction(9), P3, digits=3) == "3^2 + O(3^5)"

    @given(x=rationals, p=small_primes)
    def test_leading_term_matches_valuation(self, x, p):
        if x == 0:
            return
        text = padic_expansion(x, p, digits=3)
        assert text.endswith(f"O({p.value}^{valuation(x, p) + 3})")
