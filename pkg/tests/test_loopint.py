import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wavetail import specfun
from wavetail.errors import ContourError, DomainError
from wavetail.loopint import (
    ContourSpec,
    ModelIntegralSpec,
    asym_coeff,
    branch_log,
    default_delta,
    frak_J,
    hankel_loop_derivatives,
    log_time_integral,
    loop_integral_closed,
    loop_integral_numeric,
    time_expansion,
)

# Bank-collapsed reference values (nu > -1): the keyhole reduces to
# -i int_0^inf exp(-t s) [g(-pi/2) - g(3pi/2)] ds, g(th) = (s e^{i th})^nu (Log b + ln s + i th)^k,
# integrated with mpmath at 25 digits.
RAY_REFERENCE = [
    ((0.6, 1, 1.0, 2.0), 1.2357382360228897 + 0.20257275156568536j),
    ((-0.5, 2, math.sqrt(2) * (1 + 1j), 3.0), -23.21015251846552 - 9.10163144070701j),
    ((0.6, -1, 1.0, 2.0), 0.05913958488252012 - 0.07564529443581265j),
    ((0.2, -2, -1j, 5.0), -0.004510858390101883 - 0.0014656667378615607j),
    ((1.5, 3, 0.5, 0.7), 278.1673458351902 + 156.93191663213037j),
]


def numeric(nu, k=0, b=1.0, t=1.0, contour=None):
    return loop_integral_numeric(ModelIntegralSpec(nu, k, b, t), contour)


class TestClosedForm:
    def test_double_pole(self):
        assert loop_integral_closed(-2, 3.0) == pytest.approx(-2 * math.pi * 3.0, rel=1e-14)

    def test_nonnegative_integer_vanishes(self):
        assert loop_integral_closed(0, 1.0) == 0
        assert loop_integral_closed(3, 2.0) == 0

    def test_half(self):
        expected = 2 * math.sqrt(math.pi) * cmath.exp(-0.25j * math.pi)
        assert abs(loop_integral_closed(-0.5, 1.0) - expected) < 1e-13

    @given(st.floats(-2.45, 2.95).filter(lambda v: abs(v - round(v)) > 1e-3))
    def test_reflection_forms_agree(self, nu):
        phase = cmath.exp(0.5j * math.pi * nu)
        sine_form = -2 * phase * math.sin(math.pi * nu) * specfun.gamma(nu + 1)
        gamma_form = phase * 2 * math.pi / specfun.gamma(-nu)
        assert abs(sine_form - gamma_form) <= 1e-10 * max(1.0, abs(gamma_form))


class TestNumeric:
    @pytest.mark.parametrize("t", [1.0, 5.0, 20.0])
    def test_residue_table(self, t):
        expected = {-2: -t, -1: -1j, 0: 0, 1: 0, 2: 0}
        for nu, value in expected.items():
            assert abs(numeric(nu, t=t) / (2 * math.pi) - value) <= 1e-8

    def test_infinite_contour_examples(self):
        assert abs(numeric(-2, 0, 3 - 1j, 4.0) + 2 * math.pi * 4.0) <= 1e-8 * 8 * math.pi
        assert abs(numeric(-1, 0, 1.0, 7.0) + 2j * math.pi) <= 1e-8

    def test_closed_form_random(self):
        rng = np.random.default_rng(7)
        worst = 0.0
        count = 0
        while count < 50:
            nu = rng.uniform(-2.5, 3.0)
            if abs(nu - round(nu)) < 1e-3:
                continue
            t = rng.uniform(0.5, 50.0)
            closed = loop_integral_closed(nu, t)
            worst = max(worst, abs(numeric(nu, t=t) - closed) / abs(closed))
            count += 1
        assert worst <= 1e-8

    @pytest.mark.parametrize("args,expected", RAY_REFERENCE)
    def test_ray_reference(self, args, expected):
        assert abs(numeric(*args) - expected) <= 1e-10 * abs(expected)

    @given(
        st.floats(-2.5, 3.0),
        st.integers(-3, 3),
        st.sampled_from([1.0, -1j, 2 * cmath.exp(0.25j * math.pi), 0.3 - 0.2j, -4.0]),
        st.floats(0.5, 40.0),
    )
    @settings(max_examples=40, deadline=None)
    def test_delta_independence(self, nu, k, b, t):
        spec = ModelIntegralSpec(nu, k, b, t)
        d = default_delta(b, t)
        v1 = loop_integral_numeric(spec, ContourSpec(d))
        v2 = loop_integral_numeric(spec, ContourSpec(d / 2))
        assert abs(v1 - v2) <= 1e-10 * max(abs(v1), 1e-300) + 1e-13

    def test_finite_vs_infinite_decay(self):
        ts = np.array([5.0, 10.0, 20.0, 30.0, 40.0, 50.0])
        gaps = []
        for t in ts:
            spec = ModelIntegralSpec(-0.5, 1, 1.0, t)
            d = default_delta(1.0, t)
            gaps.append(abs(loop_integral_numeric(spec, ContourSpec(d, 1.0)) - loop_integral_numeric(spec, ContourSpec(d))))
        gaps = np.array(gaps)
        C = gaps[0] / math.exp(-0.5 * ts[0])
        assert np.all(gaps <= C * np.exp(-0.5 * ts) * (1 + 1e-6) + 1e-14)
        fitted = -np.polyfit(ts[:4], np.log(gaps[:4]), 1)[0]
        assert fitted >= 0.4

    def test_contour_variants(self):
        assert ContourSpec(1e-3).variant == "gamma_infinite"
        assert ContourSpec(1e-3, 1.0).variant == "gamma_finite"

    def test_bad_contours(self):
        with pytest.raises(ContourError):
            ContourSpec(0.0)
        with pytest.raises(ContourError):
            ContourSpec(0.5, 0.2)

    def test_log_zero_on_contour(self):
        # |b| delta = 1 puts log(b lam) = 0 on the circle
        with pytest.raises(ContourError):
            numeric(0.0, -1, 1.0, 1.0, ContourSpec(1.0))

    @pytest.mark.parametrize("b", [1j, 0.5j, 0])
    def test_excluded_branch_constants(self, b):
        with pytest.raises(DomainError):
            ModelIntegralSpec(0.0, 1, b, 1.0)

    def test_branch_log(self):
        lam = np.array([1.0, 1j, -1.0, 1 - 1j, -1 - 1j, -1j])
        expected = np.array([0.0, 0.5, 1.0, -0.25, 1.25, 1.5]) * math.pi
        assert np.allclose(np.imag(branch_log(lam)), expected, atol=1e-15)
        assert np.allclose(np.real(branch_log(2 * lam)), math.log(2) + np.log(np.abs(lam)))


class TestCoefficients:
    @pytest.mark.parametrize("b", [1.0, cmath.exp(-0.5j * math.pi), 2 * cmath.exp(0.25j * math.pi)])
    def test_c_0_m1_1(self, b):
        assert abs(asym_coeff(0, -1, b, 1) - 2 * math.pi) <= 1e-8

    @pytest.mark.parametrize("nu", [0, 1, 2])
    @pytest.mark.parametrize("k", [-2, 1, 3])
    def test_m0_integer_vanishes(self, nu, k):
        assert asym_coeff(nu, k, 1.3 - 0.4j, 0) == 0

    def test_m0_reduces_to_closed_form(self):
        expected = 2 * math.sqrt(math.pi) * cmath.exp(-0.25j * math.pi)
        assert abs(asym_coeff(-0.5, 2, 1.0, 0) - expected) <= 1e-12

    @pytest.mark.parametrize("nu", [-2, -1, 0, 0.6])
    @pytest.mark.parametrize("k", [-2, -1, 1, 2])
    @pytest.mark.parametrize("m", [0, 1, 2, 3])
    def test_polygamma_route_matches_quadrature(self, nu, k, m):
        binom = math.prod((k - i) / (i + 1) for i in range(m))
        for b in (1.0, 2 * cmath.exp(0.25j * math.pi)):
            closed = asym_coeff(nu, k, b, m, check=False)
            quad = (-1) ** (k - m) * binom * numeric(nu, m, b, 1.0)
            assert abs(closed - quad) <= 1e-7 * max(1.0, abs(closed))

    def test_derivatives_by_finite_difference(self):
        nu, h = 0.37, 1e-4
        d = hankel_loop_derivatives(nu, 2)
        F = lambda x: hankel_loop_derivatives(x, 0)[0]
        assert abs((F(nu + h) - F(nu - h)) / (2 * h) - d[1]) < 1e-6 * abs(d[1])
        assert abs((F(nu + h) - 2 * F(nu) + F(nu - h)) / h**2 - d[2]) < 1e-4 * abs(d[2])

    def test_domain(self):
        with pytest.raises(DomainError):
            asym_coeff(0, 9, 1.0, 0)
        with pytest.raises(DomainError):
            asym_coeff(0, 1, 1.0, 7)


class TestTimeExpansion:
    def test_log_law_leading_term(self):
        terms, rem = time_expansion(ModelIntegralSpec(0, -1, 1.0, 1.0), 1)
        assert terms[0].power == -1 and terms[0].logpow == -1
        assert terms[0].coeff == pytest.approx(0, abs=1e-14)
        assert terms[1].logpow == -2 and abs(terms[1].coeff - 2 * math.pi) < 1e-8
        assert rem.power == -1 and rem.logpow == -3

    def test_k0_single_exact_term(self):
        alpha = 0.75
        terms, rem = time_expansion(ModelIntegralSpec(2 * alpha, 0, 1.0, 1.0), 0)
        assert len(terms) == 1 and rem is None
        assert terms[0].power == pytest.approx(-1 - 2 * alpha)
        assert abs(terms[0].coeff - loop_integral_closed(2 * alpha, 1.0)) < 1e-12

    def test_remainder_constant_stable(self):
        # |I - partial sum| <= C t^-1 log^{-2-M} t with C steady in t
        for M in (1, 2, 3):
            consts = []
            for t in (1e2, 1e3, 1e4, 1e5):
                spec = ModelIntegralSpec(0, -1, 1.0, t)
                terms, rem = time_expansion(spec, M)
                gap = abs(loop_integral_numeric(spec) - sum(term(t) for term in terms))
                consts.append(gap / rem(t))
            assert max(consts) <= 1.5 * min(consts)


class TestLogIntegrals:
    @pytest.mark.parametrize("L", [5.0, 10.0, 20.0])
    def test_frak_J_law(self, L):
        t = math.exp(L)
        ratio = (frak_J(-1j, t) * L / t).real
        assert abs(ratio - 1) <= 3 / L

    def test_frak_J_delta_independent(self):
        t = 200.0
        b = -2j
        d = default_delta(b, t)
        v1 = frak_J(b, t, ContourSpec(d))
        v2 = frak_J(b, t, ContourSpec(d / 2))
        assert abs(v1 - v2) <= 1e-10 * abs(v1)

    def test_frak_J_requires_branch_direction(self):
        with pytest.raises(DomainError):
            frak_J(1.0, 10.0)

    def test_log_time_integral(self):
        assert abs(log_time_integral(20.0) + 2 * math.pi / 20) <= 1e-6

    def test_log_time_integral_small_t(self):
        v1 = log_time_integral(1.0)
        spec = ModelIntegralSpec(0.0, 1, 1.0, 1.0)
        v2 = loop_integral_numeric(spec, ContourSpec(default_delta(1.0, 1.0) / 2, 1.0))
        assert np.isfinite(v1) and abs(v1 - v2) <= 1e-10 * abs(v1)
