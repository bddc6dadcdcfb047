import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellclausen.numerics import (
    EPS,
    ConvergenceError,
    DomainError,
    EvalResult,
    Precision,
    adaptive_integrate,
    bernoulli_even,
    compensated_sum,
    zeta,
    zeta_int,
)


class TestPrecision:
    def test_defaults(self):
        p = Precision()
        assert p.abs_tol == 1e-12 and p.max_terms >= 8 and p.quad_tol > 0

    @pytest.mark.parametrize("kw", [{"abs_tol": 0}, {"quad_tol": -1.0}, {"max_terms": 7}, {"max_terms": 9.5}])
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            Precision(**kw)

    def test_eval_result_rejects_negative_bound(self):
        with pytest.raises(ValueError):
            EvalResult(1.0, -1e-3)


class TestCompensatedSum:
    def test_examples(self):
        assert compensated_sum([1, 2, 3]) == 6
        assert compensated_sum([]) == 0
        assert compensated_sum([1e16, 1.0, -1e16]) == 1.0

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.floats(-1e12, 1e12, allow_nan=False), max_size=60), st.randoms())
    def test_permutation_within_4_ulp(self, terms, rnd):
        a = compensated_sum(terms)
        shuffled = list(terms)
        rnd.shuffle(shuffled)
        b = compensated_sum(shuffled)
        assert abs(a - b) <= 4 * math.ulp(a) if a else b == 0


class TestBernoulli:
    @pytest.mark.parametrize("m,value", [(1, Fraction(1, 6)), (2, Fraction(-1, 30)), (3, Fraction(1, 42)),
                                         (6, Fraction(-691, 2730)), (15, Fraction(8615841276005, 14322))])
    def test_table(self, m, value):
        assert bernoulli_even(m) == value

    @pytest.mark.parametrize("m", [0, 16, -1, 1.5])
    def test_range(self, m):
        with pytest.raises(DomainError):
            bernoulli_even(m)


class TestZeta:
    @pytest.mark.parametrize("s,value", [(2, 1.6449340668482264), (3, 1.2020569031595942),
                                         (5, 1.0369277551433699), (7, 1.0083492773819228)])
    def test_values(self, s, value):
        r = zeta_int(s)
        assert abs(r.value - value) <= 1e-12
        assert r.err_bound <= Precision().abs_tol

    def test_two_term_counts_agree(self):
        coarse = zeta_int(3, Precision(abs_tol=1e-9))
        fine = zeta_int(3)
        assert coarse.terms_used < fine.terms_used
        assert abs(coarse.value - fine.value) <= coarse.err_bound + fine.err_bound

    @pytest.mark.parametrize("m", range(1, 6))
    def test_even_summation_matches_closed_form(self, m):
        from ellclausen.numerics import _pseries

        summed, bound, _ = _pseries(2 * m, 1e-13, 10_000_000)
        assert abs(summed - zeta_int(2 * m).value) <= 1e-12

    def test_budget(self):
        with pytest.raises(ConvergenceError):
            zeta_int(3, Precision(abs_tol=1e-14, max_terms=100))

    def test_rounding_floor(self):
        with pytest.raises(ConvergenceError):
            zeta_int(3, Precision(abs_tol=1e-17))

    @pytest.mark.parametrize("s", [1, 0, 2.5])
    def test_domain(self, s):
        with pytest.raises(DomainError):
            zeta_int(s)

    def test_cached_zeta(self):
        assert abs(zeta(3) - 1.2020569031595942) < 4 * EPS


class TestQuadrature:
    def test_linear(self):
        r = adaptive_integrate(lambda x: x, 0, 1)
        assert abs(r.value - 0.5) <= 1e-14 and r.err_bound <= Precision().quad_tol

    def test_sin(self):
        assert abs(adaptive_integrate(math.sin, 0, math.pi).value - 2.0) <= 1e-12

    def test_log_sine_has_zero_mean(self):
        f = lambda x: -math.log(2 * math.sin(x / 2))
        r = adaptive_integrate(f, 0, 2 * math.pi)
        assert abs(r.value) <= 1e-10
        assert r.terms_used > 10  # endpoint singularities forced refinement

    def test_empty_interval(self):
        assert adaptive_integrate(math.exp, 1.0, 1.0).value == 0.0

    def test_reversed_interval(self):
        with pytest.raises(DomainError):
            adaptive_integrate(math.exp, 1.0, 0.0)

    def test_budget(self):
        with pytest.raises(ConvergenceError):
            adaptive_integrate(lambda x: math.sin(1 / x) / x, 1e-6, 1, max_panels=20)

    @settings(max_examples=40, deadline=None)
    @given(st.floats(0.01, 0.99))
    def test_additivity(self, frac):
        prec = Precision()
        f = lambda x: -math.log(abs(2 * math.sin(x / 2)))
        a, b = 0.0, 3.0
        c = a + frac * (b - a)
        whole = adaptive_integrate(f, a, b, prec).value
        parts = adaptive_integrate(f, a, c, prec).value + adaptive_integrate(f, c, b, prec).value
        assert abs(whole - parts) <= 2 * prec.quad_tol
