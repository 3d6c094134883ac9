import pytest
from hypothesis import given
from hypothesis import strategies as st

from composita.ring import XPoly, binom, rat
from composita.series import (
    DomainError,
    Series,
    series_compose,
    series_div_t_pow,
    series_exp,
    series_from_json,
    series_log,
    series_mul,
    series_pow_rat,
    series_reciprocal,
    series_to_json,
)
from helpers import P, S, chebyshev_u_rec, hermite_rec, mono

small_rats = st.fractions(min_value=-4, max_value=4, max_denominator=3).map(
    lambda f: rat(f.numerator, f.denominator)
)
small_xpolys = st.lists(small_rats, max_size=3).map(XPoly)


def geometric(order):
    return series_reciprocal(S(order, 1, -1))


class TestMul:
    def test_examples(self):
        assert series_mul(S(2, 1, 1), S(2, 1, -1)) == S(2, 1, 0, -1)
        assert series_mul(Series.t(3), Series.t(3)) == S(3, 0, 0, 1)
        f = S(4, XPoly.zero(), mono(2, 1), XPoly.one())
        sq = series_mul(f, f)
        assert sq == S(4, XPoly.zero(), XPoly.zero(), mono(4, 2), mono(4, 1), XPoly.one())

    def test_order_mismatch(self):
        with pytest.raises(ValueError):
            series_mul(Series.t(3), Series.t(4))


class TestReciprocal:
    def test_geometric(self):
        assert geometric(3) == S(3, 1, 1, 1, 1)

    def test_one(self):
        assert series_reciprocal(Series.one(2)) == Series.one(2)

    def test_chebyshev_u_kernel(self):
        # against the three-term recurrence for the second-kind polynomials
        kernel = S(2, XPoly.one(), mono(-2, 1), XPoly.one())
        inv = series_reciprocal(kernel)
        assert inv[0] == chebyshev_u_rec(0)
        assert inv[1] == chebyshev_u_rec(1)
        assert inv[2] == chebyshev_u_rec(2) == P(-1, 0, 4)

    def test_inverse_property(self):
        f = S(6, 2, "1/3", -1, 0, 5)
        assert series_mul(f, series_reciprocal(f)) == Series.one(6)

    def test_rejects_zero_constant(self):
        with pytest.raises(DomainError):
            series_reciprocal(Series.t(3))

    def test_rejects_symbolic_constant(self):
        with pytest.raises(DomainError):
            series_reciprocal(S(2, XPoly.x(), XPoly.one()))


class TestExpLog:
    def test_exp_examples(self):
        assert series_exp(Series.zero(3)) == Series.one(3)
        assert series_exp(Series.t(3)) == S(3, 1, 1, "1/2", "1/6")
        f = S(2, XPoly.zero(), mono(2, 1), XPoly.constant(-1))
        expanded = series_exp(f)
        assert expanded[2] * 2 == hermite_rec(2)  # H_2 = 4x^2 - 2
        assert expanded == S(2, XPoly.one(), mono(2, 1), P(-1, 0, 2))

    def test_exp_rejects_nonzero_constant(self):
        with pytest.raises(DomainError):
            series_exp(Series.one(3))

    def test_log_examples(self):
        assert series_log(S(3, 1, 1)) == S(3, 0, 1, "-1/2", "1/3")
        assert series_log(Series.one(4)) == Series.zero(4)
        assert series_log(series_exp(Series.t(4))) == Series.t(4)

    def test_log_rejects_bad_constant(self):
        with pytest.raises(DomainError):
            series_log(Series.t(3))
        with pytest.raises(DomainError):
            series_log(S(3, 2, 1))

    @given(coeffs=st.lists(small_xpolys, min_size=0, max_size=9))
    def test_exp_log_inverse_pair(self, coeffs):
        f = Series(10, [XPoly.zero()] + coeffs[:10])
        assert series_log(series_exp(f)) == f


class TestPowRat:
    def test_examples(self):
        assert series_pow_rat(S(3, 1, -1), -1) == geometric(3)
        half = series_pow_rat(S(2, 1, -1), rat(-1, 2))
        # r(n) = C(2n, n) / 4^n
        assert half == S(2, 1, "1/2", "3/8")
        assert [rat(binom(2 * n, n), 4**n) for n in range(3)] == [
            half[n].constant_value() for n in range(3)
        ]
        assert series_pow_rat(S(3, 1, 5, -2), 0) == Series.one(3)

    def test_rejects_bad_constant(self):
        with pytest.raises(DomainError):
            series_pow_rat(S(2, 2, 1), rat(1, 2))

    @given(
        coeffs=st.lists(small_rats, max_size=7),
        a=small_rats,
        b=small_rats,
    )
    def test_power_additivity(self, coeffs, a, b):
        f = Series(8, [XPoly.one()] + [XPoly.constant(c) for c in coeffs])
        lhs = series_mul(series_pow_rat(f, a), series_pow_rat(f, b))
        assert lhs == series_pow_rat(f, a + b)

    @given(coeffs=st.lists(small_xpolys, max_size=5), k=st.integers(0, 5))
    def test_integer_power_matches_iterated_mul(self, coeffs, k):
        f = Series(6, [XPoly.one()] + coeffs[:6])
        by_mul = Series.one(6)
        for _ in range(k):
            by_mul = series_mul(by_mul, f)
        assert series_pow_rat(f, k) == by_mul


class TestCompose:
    def test_examples(self):
        f = geometric(4)
        assert series_compose(f, S(4, 0, 0, 1)) == S(4, 1, 0, 1, 0, 1)
        g = S(4, 0, "1/2", -1, 0, 2)
        assert series_compose(g, Series.t(4)) == g
        u = series_compose(geometric(2), S(2, XPoly.zero(), mono(2, 1), XPoly.constant(-1)))
        assert u[2] == chebyshev_u_rec(2)

    def test_rejects_nonzero_inner_constant(self):
        with pytest.raises(DomainError):
            series_compose(geometric(3), Series.one(3))

    @given(
        f=st.lists(small_xpolys, max_size=5),
        g=st.lists(small_xpolys, max_size=4),
        h=st.lists(small_xpolys, max_size=4),
    )
    def test_compose_associativity(self, f, g, h):
        order = 8
        fs = Series(order, f[: order + 1])
        gs = Series(order, [XPoly.zero()] + g[:order])
        hs = Series(order, [XPoly.zero()] + h[:order])
        lhs = series_compose(series_compose(fs, gs), hs)
        rhs = series_compose(fs, series_compose(gs, hs))
        assert lhs == rhs


class TestDivTPow:
    def test_examples(self):
        assert series_div_t_pow(S(2, 0, 1, 1), 1) == S(1, 1, 1)
        mercator = series_log(S(4, 1, 1))
        assert series_div_t_pow(mercator, 1) == S(3, 1, "-1/2", "1/3", "-1/4")
        assert series_div_t_pow(S(3, 0, 0, 0, 1), 3) == Series.one(0)

    def test_errors(self):
        with pytest.raises(DomainError):
            series_div_t_pow(S(2, 1, 1), 1)
        with pytest.raises(ValueError):
            series_div_t_pow(S(2, 0, 1), 0)
        with pytest.raises(ValueError):
            series_div_t_pow(S(2, 0, 1), 3)


class TestStructure:
    def test_scale_by_xpoly(self):
        f = S(2, 0, 1, "1/2")
        scaled = f.scale(XPoly.x())
        assert scaled == S(2, XPoly.zero(), mono(1, 1), mono("1/2", 1))

    def test_truncate(self):
        f = S(4, 1, 2, 3, 4, 5)
        assert f.truncate(2) == S(2, 1, 2, 3)
        with pytest.raises(ValueError):
            f.truncate(5)

    def test_from_poly_truncates(self):
        assert Series.from_poly(1, (1, 2, 3)) == S(1, 1, 2)
        assert Series.t(0) == Series.zero(0)

    def test_json_round_trip(self):
        f = S(2, XPoly.one(), mono(-2, 1), P("1/3", 0, 1))
        data = series_to_json(f)
        assert data == {"order": 2, "coeffs": [["1"], ["0", "-2"], ["1/3", "0", "1"]]}
        assert series_from_json(data) == f
