import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from stminor.chebyshev import (ChebSeries, DegreeError, MonomialPoly, catalan, cos_to_u,
                               eval_series, eval_U, from_monomial, gauss_nodes,
                               st_inner, st_integral, st_moment, st_quad, st_quad_series,
                               t_to_u, to_monomial, u_product, u_to_t)


def density(t):
    return 2 / math.pi * math.sqrt(max(1 - t * t, 0.0))


def quad_st(f):
    """Oracle: adaptive quadrature against the Sato-Tate density."""
    val, _ = integrate.quad(lambda t: f(t) * density(t), -1, 1, epsabs=1e-13, epsrel=1e-13,
                            limit=400)
    return val


def naive_U(n, t):
    th = math.acos(t)
    return math.sin((n + 1) * th) / math.sin(th)


class TestEvalU:
    def test_examples(self):
        assert eval_U(0, 0.7) == 1
        assert eval_U(4, 1.0) == 5
        assert eval_U(2, 0.5) == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("n", [1, 3, 7, 20])
    def test_sine_formula(self, n):
        for t in np.linspace(-0.99, 0.99, 17):
            assert eval_U(n, t) == pytest.approx(naive_U(n, t), rel=1e-11, abs=1e-11)

    def test_vectorized(self):
        t = np.linspace(-1, 1, 5)
        assert np.allclose(eval_U(2, t), 4 * t * t - 1)

    def test_negative_degree(self):
        with pytest.raises(ValueError):
            eval_U(-1, 0.0)


class TestSeries:
    def test_examples(self):
        assert eval_series(ChebSeries([1]), 0.3) == 1
        assert eval_series(ChebSeries([0, 1]), 0.25) == pytest.approx(0.5)
        for t in (-0.8, 0.1, 0.6):
            assert eval_series(ChebSeries([1, 0, -1]), t) == pytest.approx(2 - 4 * t * t)

    def test_clenshaw_matches_naive_sum(self):
        rng = np.random.default_rng(1)
        b = rng.normal(size=257)
        s = ChebSeries(b)
        t = rng.uniform(-1, 1, 50)
        naive = sum(bk * eval_U(k, t) for k, bk in enumerate(b))
        scale = np.sum(np.abs(b))
        assert np.max(np.abs(eval_series(s, t) - naive)) <= 1e-12 * scale

    def test_degree_and_trim(self):
        s = ChebSeries([1.0, 2.0, 1e-16])
        assert s.trim().degree == 1
        assert ChebSeries([0.0]).degree == 0

    def test_degree_cap(self):
        with pytest.raises(DegreeError):
            ChebSeries(np.zeros(2000))

    def test_arithmetic(self):
        a, b = ChebSeries([1, 2]), ChebSeries([0, 1, 3])
        assert np.allclose((a + b).coeffs, [1, 3, 3])
        assert np.allclose((b - a).coeffs, [-1, -1, 3])
        assert np.allclose((a * 2.0).coeffs, [2, 4])
        t = np.linspace(-1, 1, 9)
        assert np.allclose(a.product(b)(t), a(t) * b(t))

    def test_immutable(self):
        s = ChebSeries([1.0, 2.0])
        with pytest.raises(ValueError):
            s.coeffs[0] = 5.0


class TestProducts:
    def test_examples(self):
        assert np.allclose(u_product(0, 3).coeffs, [0, 0, 0, 1])
        assert np.allclose(u_product(1, 1).coeffs, [1, 0, 1])
        assert np.allclose(u_product(2, 3).coeffs, [0, 1, 0, 1, 0, 1])

    def test_linearization(self):
        rng = np.random.default_rng(2)
        t = rng.uniform(-1, 1, 100)
        for m, n in [(3, 5), (7, 7), (10, 2), (0, 9)]:
            lhs = eval_series(u_product(m, n), t)
            rhs = eval_U(m, t) * eval_U(n, t)
            assert np.all(np.abs(lhs - rhs) <= 1e-11 * np.maximum(1, np.abs(rhs)))


class TestIntegrals:
    def test_inner(self):
        assert st_inner(3, 3) == 1 and st_inner(2, 5) == 0 and st_inner(0, 0) == 1

    def test_integral_examples(self):
        assert st_integral(ChebSeries([1, 0, 0])) == 1
        assert st_integral(ChebSeries([0.3, -2, 7])) == 0.3
        assert st_integral(ChebSeries([0.25, 0, 0.25])) == pytest.approx(0.25)
        assert quad_st(lambda t: t * t) == pytest.approx(0.25, abs=1e-12)

    def test_integral_matches_adaptive_quadrature(self):
        rng = np.random.default_rng(3)
        s = ChebSeries(rng.normal(size=9))
        assert st_integral(s) == pytest.approx(quad_st(lambda t: float(s(t))), abs=1e-10)

    def test_moments(self):
        assert st_moment(0) == 1
        assert st_moment(1) == Fraction(1, 4)
        assert st_moment(2) == Fraction(1, 8)
        for m in range(6):
            assert float(st_moment(m)) == pytest.approx(quad_st(lambda t: t ** (2 * m)),
                                                        abs=1e-12)

    def test_catalan(self):
        assert [catalan(m) for m in range(7)] == [1, 1, 2, 5, 14, 42, 132]

    def test_gauss_rule_exact(self):
        x, w = gauss_nodes(10)
        for m in range(10):
            assert np.dot(w, x ** (2 * m)) == pytest.approx(float(st_moment(m)), abs=1e-14)

    def test_st_quad_doubles_until_stable(self):
        val = st_quad(lambda x: np.exp(x), n0=2)
        assert val == pytest.approx(quad_st(math.exp), abs=1e-12)

    def test_quad_series(self):
        s = ChebSeries([0.5, 1, -2, 0.25])
        assert st_quad_series(s) == pytest.approx(0.5, abs=1e-13)


class TestBasisChange:
    def test_examples(self):
        assert to_monomial(ChebSeries([0, 0, 1])).coeffs == (-1, 0, 4)
        assert np.allclose(from_monomial(MonomialPoly([0, 1])).coeffs, [0, 0.5])
        assert np.allclose(from_monomial(MonomialPoly([1])).coeffs, [1])

    def test_round_trip_degree_64(self):
        rng = np.random.default_rng(4)
        b = rng.normal(size=65)
        back = from_monomial(to_monomial(ChebSeries(b)))
        assert np.max(np.abs(back.coeffs - b)) <= 1e-12

    def test_monomial_values_agree(self):
        s = ChebSeries([0.3, -1, 0.5, 2])
        p = to_monomial(s)
        for t in (-0.9, 0.0, 0.4):
            assert float(p(t)) == pytest.approx(float(s(t)), abs=1e-13)

    def test_t_to_u_examples(self):
        assert np.allclose(t_to_u(0).coeffs, [1])
        assert np.allclose(t_to_u(1).coeffs, [0, 0.5])
        assert np.allclose(t_to_u(2).coeffs, [-0.5, 0, 0.5])

    @pytest.mark.parametrize("k", range(0, 9))
    def test_t_to_u_values(self, k):
        t = np.linspace(-1, 1, 21)
        assert np.allclose(eval_series(t_to_u(k), t), np.cos(k * np.arccos(t)), atol=1e-13)

    def test_u_to_t_inverse_of_cos_to_u(self):
        rng = np.random.default_rng(5)
        c = rng.normal(size=12)
        assert np.allclose(u_to_t(cos_to_u(c)), c, atol=1e-13)

    def test_from_roots(self):
        p = MonomialPoly.from_roots([1, -1], scale=2)
        assert p.coeffs == (-2, 0, 2)
        assert p.derivative().coeffs == (0, 4)

    def test_moment_consistency(self):
        for m in range(16):
            coeffs = [0] * (2 * m) + [1]
            got = st_integral(from_monomial(MonomialPoly(coeffs)))
            assert abs(got - float(st_moment(m))) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=1, max_size=20))
def test_parseval(coeffs):
    s = ChebSeries(coeffs)
    x, w = gauss_nodes(2 * len(coeffs) + 2)
    assert np.dot(w, s(x) ** 2) == pytest.approx(np.sum(np.square(coeffs)), abs=1e-9, rel=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 30), st.integers(0, 30))
def test_orthonormality(m, n):
    x, w = gauss_nodes(64)
    assert abs(np.dot(w, eval_U(m, x) * eval_U(n, x)) - (m == n)) < 1e-10
