import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wavetail.errors import DomainError
from wavetail.expansion import (
    ResolventTerm,
    evaluate_time_terms,
    terms_from_dicts,
    terms_to_dicts,
    truncation_order,
    uz_asymptotic,
    uz_exact,
)
from wavetail.loopint import loop_integral_closed

weights = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


class TestExact:
    @pytest.mark.parametrize("t", [2.0, 10.0, 50.0])
    def test_double_pole(self, t):
        w = 1.5 - 0.5j
        assert abs(uz_exact([ResolventTerm(-2, 0, 1, w)], t).value + w * t) <= 1e-8 * abs(w) * t

    @pytest.mark.parametrize("t", [2.0, 10.0, 50.0])
    def test_simple_pole(self, t):
        w = -0.3 + 2j
        assert abs(uz_exact([ResolventTerm(-1, 0, 1, w)], t).value + 1j * w) <= 1e-8

    @given(weights, weights, st.floats(-1.9, 2.9), st.integers(-2, 2), st.floats(1.0, 30.0))
    @settings(max_examples=30, deadline=None)
    def test_linearity(self, w1, w2, nu, k, t):
        a = ResolventTerm(nu, k, 1.0, w1)
        b = ResolventTerm(0.4, 1, -1j, w2)
        both = uz_exact([a, b], t).value
        separate = uz_exact([a], t).value + uz_exact([b], t).value
        assert abs(both - separate) <= 1e-12 * (abs(both) + abs(separate) + 1e-300)

    def test_integer_exponents_only(self):
        w_m2, w_m1 = 0.25 + 1j, -3.0
        terms = [
            ResolventTerm(-2, 0, 1, w_m2),
            ResolventTerm(-1, 0, 1, w_m1),
            ResolventTerm(0, 0, 1, 7.0),
            ResolventTerm(1, 0, 1, -2j),
            ResolventTerm(2, 0, 1, 4.0),
        ]
        for t in np.geomspace(1, 1e3, 7):
            value = uz_exact(terms, t).value
            assert abs(value - (-t * w_m2 - 1j * w_m1)) <= 1e-8 * max(1.0, t)

    def test_result_fields(self):
        res = uz_exact([ResolventTerm(0.5)], 3.0)
        assert res.t == 3.0 and res.terms_used == 1

    def test_term_validation(self):
        with pytest.raises(DomainError):
            ResolventTerm(-2.5)
        with pytest.raises(DomainError):
            ResolventTerm(0.0, k=9)
        with pytest.raises(DomainError):
            ResolventTerm(0.0, k=1, b=0)


class TestAsymptotic:
    def test_aharonov_bohm_ordering(self):
        mm, mM = 0.3, 0.7
        terms = [ResolventTerm(2 * mm, 0, 1, 1.0), ResolventTerm(4 * mm, 0, 1, 1.0), ResolventTerm(2 * mM, 0, 1, 1.0)]
        series = uz_asymptotic(terms)
        powers = [s.power for s in series]
        assert powers[0] == pytest.approx(-1 - 2 * mm)
        assert min(-p for p in powers[1:]) == pytest.approx(min(1 + 4 * mm, 1 + 2 * mM))

    def test_cone_leading(self):
        alpha = 0.75
        series = uz_asymptotic([ResolventTerm(2 * alpha, 0, 1, 2.0), ResolventTerm(2, 0, 1, 5.0)])
        assert len(series) == 1  # the even integer power drops out
        assert series[0].power == pytest.approx(-1 - 2 * alpha)
        assert abs(series[0].coeff - 2.0 * loop_integral_closed(2 * alpha, 1.0) / (2 * math.pi)) < 1e-12

    def test_log_law(self):
        series = uz_asymptotic([ResolventTerm(0, -1, 1, 2 * math.pi)], M=2)
        lead = series[0]
        assert (lead.power, lead.logpow) == (-1, -2)
        assert abs(lead.coeff - 2 * math.pi) < 1e-8

    def test_merge_equal_keys(self):
        a = uz_asymptotic([ResolventTerm(0.5, 0, 1, 1.0)])
        b = uz_asymptotic([ResolventTerm(0.5, 0, 1, 1.0), ResolventTerm(0.5, 0, 1, 2.0)])
        assert len(b) == 1 and abs(b[0].coeff - 3 * a[0].coeff) < 1e-14

    def test_tie_break_by_log_power(self):
        series = uz_asymptotic([ResolventTerm(0, 1, 1, 1.0), ResolventTerm(0, 2, 2.0, 1.0)], M=2)
        keys = [(s.power, s.logpow) for s in series]
        assert keys == sorted(keys, key=lambda k: (-k[0], -k[1]))

    @pytest.mark.parametrize("M", [1, 2, 3])
    def test_log_family_consistency(self, M):
        # exact minus expansion stays below the remainder order t^-1 log^{-2-M} t
        terms = [ResolventTerm(0, -1, 1, 1.0)]
        series = uz_asymptotic(terms, M=M)
        consts = []
        for t in np.geomspace(10, 1e4, 7):
            gap = abs(uz_exact(terms, t).value - evaluate_time_terms(series, t))
            consts.append(gap * t * math.log(t) ** (2 + M))
        assert max(consts) <= 3 * min(consts) + 1e-300
        assert max(consts) < 50 * 4**M

    def test_power_family_consistency(self):
        terms = [ResolventTerm(0.6, 0, 1, 1.0 + 1j), ResolventTerm(1.2, 0, 1, -2.0), ResolventTerm(1.4, 0, 1, 0.5j)]
        series = uz_asymptotic(terms)
        for t in np.geomspace(10, 1e4, 7):
            exact = uz_exact(terms, t).value
            assert abs(exact - evaluate_time_terms(series, t)) <= 1e-9 * abs(exact) + 2 * math.exp(-t / 2)


class TestTruncation:
    def test_cone_drop(self):
        alpha = 0.75
        tail = truncation_order(min(2 + 2 * alpha, 4 * alpha))
        assert tail.sup_order == pytest.approx(3.0) and tail.lemma_order == 2

    def test_integer_log_family(self):
        J = 2
        assert truncation_order(2 * J, k_max=1).lemma_order == 2 * J - 1

    def test_empty(self):
        tail = truncation_order(None)
        assert tail.exact_zero and tail(100.0) == 0.0

    @given(st.floats(0.01, 20.0))
    def test_strictly_below(self, nu_min):
        tail = truncation_order(nu_min)
        assert tail.lemma_order < nu_min <= tail.lemma_order + 1


def test_serialisation_round_trip():
    terms = [ResolventTerm(0.6, 0, 1, 2 - 1j), ResolventTerm(0, -1, -1j, 3.0)]
    assert terms_from_dicts(terms_to_dicts(terms)) == terms
