import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special as sc

from pde_oracle import radial_wave_cn
from wavetail import spectral
from wavetail._quad import gauss_legendre
from wavetail.errors import ConvergenceError, DomainError
from wavetail.spectral import (
    RadialProfile,
    SpectralGrid,
    SpectralProfile,
    bump_profile,
    hankel_transform,
    oscillatory_quad,
    sine_evolution,
    spectral_grid,
)

ALPHA = 0.75
ROUND_TRIP_ORDERS = [0.0, 0.5] + [ALPHA * j for j in range(1, 11)]

_transforms = {}


def transform(nu, profile=None):
    """Cached transforms; each one costs a few seconds."""
    profile = profile or bump_profile()
    key = (nu, profile.label)
    if key not in _transforms:
        _transforms[key] = hankel_transform(nu, profile)
    return _transforms[key]


def plain_inverse(ft, nu, r):
    # Gauss-Legendre on the lambda mesh, independent of the Filon machinery
    lam = ft.grid.nodes.ravel()
    w = ft.grid.weights.ravel() * ft.values.ravel() * lam
    return sc.jv(nu, np.outer(r, lam)) @ w


class TestGrid:
    def test_grading(self):
        grid = spectral_grid(10.0)
        edges = grid.edges
        assert edges[0] == 0.0 and edges[1] <= 1e-12
        ratios = edges[1:-1] / edges[2:]
        assert np.all(ratios[edges[2:] <= 0.5] <= 0.5 + 1e-12)
        assert grid.lam_max == pytest.approx(10.0)

    def test_bad_ratio(self):
        with pytest.raises(DomainError):
            spectral_grid(10.0, grade_ratio=0.8)

    def test_refined_doubles_panels(self):
        grid = spectral_grid(5.0)
        assert len(grid.refined().edges) == 2 * len(grid.edges) - 1

    def test_subdivided_interpolates(self):
        grid = spectral_grid(6.0)
        f = lambda lam: np.exp(-lam) * np.sin(3 * lam)
        prof = SpectralProfile.from_function(f, grid)
        fine = prof.subdivided(3)
        assert np.max(np.abs(fine.values - f(fine.grid.nodes))) < 1e-13
        assert fine.integral() == pytest.approx(prof.integral(), rel=1e-14)


class TestHankel:
    def test_gaussian_self_reciprocal(self):
        gauss = RadialProfile(lambda r: np.exp(-0.5 * r * r), 0.0, 12.0, "gauss")
        ft = hankel_transform(0.0, gauss)
        lam = ft.grid.nodes
        assert np.max(np.abs(ft.values - np.exp(-0.5 * lam * lam))) <= 1e-8
        assert ft.endpoint_exponent == 0.0

    @pytest.mark.parametrize("nu", [0.0, 0.75, 2.25])
    def test_small_lambda_limit(self, nu):
        bump = bump_profile()
        ft = transform(nu)
        limit = bump.moment(1 + nu) / (2**nu * math.gamma(nu + 1))
        lam = ft.grid.nodes.ravel()
        pick = (lam > 1e-7) & (lam < 1e-5)
        ratios = ft.values.ravel()[pick] / lam[pick] ** nu
        assert np.max(np.abs(ratios / limit - 1)) <= 1e-8
        assert ft.endpoint_exponent == nu

    @pytest.mark.slow
    @pytest.mark.parametrize("nu", ROUND_TRIP_ORDERS)
    def test_round_trip(self, nu):
        bump = bump_profile()
        ft = transform(nu)
        r = np.linspace(0.8, 3.2, 121)
        assert np.max(np.abs(plain_inverse(ft, nu, r) - bump(r))) <= 1e-6

    def test_negative_order(self):
        with pytest.raises(DomainError):
            hankel_transform(-0.5, bump_profile())

    def test_cutoff_budget(self):
        # a kinked profile decays too slowly to reach the 1e-12 floor
        tent = RadialProfile(lambda r: 1.0 - np.abs(r - 2.0), 1.0, 3.0)
        with pytest.raises(ConvergenceError) as info:
            spectral.choose_cutoff(0.0, tent, lam_probe_max=300.0)
        assert info.value.achieved > 1e-12


def _unit_grid(n_panels=4, order=20):
    return SpectralGrid(np.linspace(0.0, 1.0, n_panels + 1), order)


class TestFilon:
    @pytest.mark.parametrize("t", [0.3, 7.0, 150.0, 1000.0])
    def test_constant(self, t):
        g = SpectralProfile.from_function(np.ones_like, _unit_grid())
        assert oscillatory_quad(g, t) == pytest.approx((1 - math.cos(t)) / t, rel=1e-12, abs=1e-15)

    @pytest.mark.parametrize("t", [0.3, 7.0, 150.0, 1000.0])
    def test_linear(self, t):
        g = SpectralProfile.from_function(lambda x: x, _unit_grid())
        expected = (math.sin(t) - t * math.cos(t)) / t**2
        assert oscillatory_quad(g, t) == pytest.approx(expected, rel=1e-12, abs=1e-15)

    @pytest.mark.parametrize("t", [2.0, 40.0])
    def test_exp_and_cos(self, t):
        g = SpectralProfile.from_function(np.ones_like, _unit_grid())
        assert abs(oscillatory_quad(g, t, "exp") - (1 - np.exp(-1j * t)) / (1j * t)) <= 1e-13
        assert oscillatory_quad(g, t, "cos") == pytest.approx(math.sin(t) / t, abs=1e-14)

    def test_vectorised_times(self):
        g = SpectralProfile.from_function(np.cos, spectral_grid(8.0))
        ts = np.array([1.0, 10.0, 100.0])
        vec = oscillatory_quad(g, ts)
        assert np.allclose(vec, [oscillatory_quad(g, t) for t in ts], rtol=0, atol=1e-15)

    def test_bad_phase(self):
        g = SpectralProfile.from_function(np.ones_like, _unit_grid())
        with pytest.raises(DomainError):
            oscillatory_quad(g, 1.0, "tan")

    @given(
        st.lists(st.floats(-2.0, 2.0), min_size=3, max_size=3),
        st.floats(0.5, 3.0),
        st.floats(0.0, 1000.0),
    )
    @settings(max_examples=40, deadline=None)
    def test_richardson_halving(self, coeffs, decay, t):
        a, b, c = coeffs
        f = lambda lam: (a + b * np.cos(c * lam)) * np.exp(-decay * lam) + b * lam * np.exp(-lam * lam)
        grid = spectral_grid(40.0)
        coarse = oscillatory_quad(SpectralProfile.from_function(f, grid), t)
        fine = oscillatory_quad(SpectralProfile.from_function(f, grid.refined()), t)
        scale = abs(a) + 2 * abs(b) + 1e-3
        assert abs(coarse - fine) <= 1e-8 * scale

    def test_convergence_order(self):
        # low-order panels expose the algebraic rate of the Filon rule
        f = lambda lam: np.exp(-lam) * np.cos(2 * lam)
        t = 30.0
        # e^-lam cos(2 lam) sin(t lam) splits into two Laplace transforms of sines
        exact = 0.5 * sum((t + s) / (1 + (t + s) ** 2) for s in (2.0, -2.0))
        errors = []
        levels = np.array([16, 32, 64, 128, 256])
        for n in levels:
            grid = SpectralGrid(np.linspace(0.0, 40.0, n + 1), 4)
            g = SpectralProfile.from_function(f, grid)
            errors.append(abs(oscillatory_quad(g, t) - exact))
        # the error constant oscillates with omega*h, so fit the rate over all levels
        rate = -np.polyfit(np.log2(levels), np.log2(errors), 1)[0]
        assert rate >= 3.0


class TestEvolution:
    def test_zero_time(self):
        ft = transform(0.75)
        assert np.all(sine_evolution(0.75, ft, 0.0, np.linspace(0.5, 4, 9)) == 0.0)

    def test_forward_difference_recovers_data(self):
        nu, h = 0.75, 1e-3
        ft = transform(nu)
        r = np.linspace(1.2, 2.8, 9)
        slope = sine_evolution(nu, ft, h, r) / h
        assert np.max(np.abs(slope - bump_profile()(r))) <= 1e-4

    def test_time_derivative_at_zero(self):
        nu = 0.75
        ft = transform(nu)
        r = np.linspace(0.8, 3.2, 25)
        ut = sine_evolution(nu, ft, 0.0, r, time_derivative=True)
        assert np.max(np.abs(ut - bump_profile()(r))) <= 1e-8

    def test_shapes(self):
        ft = transform(0.75)
        assert np.shape(sine_evolution(0.75, ft, [1.0, 2.0], [1.0, 2.0, 3.0])) == (2, 3)
        assert np.shape(sine_evolution(0.75, ft, [1.0, 2.0], 1.0)) == (2,)
        assert np.shape(sine_evolution(0.75, ft, 1.0, [1.0, 2.0, 3.0])) == (3,)
        assert np.ndim(sine_evolution(0.75, ft, 1.0, 2.0)) == 0

    def test_complex_data_is_linear(self):
        ft = transform(0.75)
        z = ft.multiply(1.0 - 2.0j)
        r = np.array([1.5, 2.5, 6.0])
        direct = sine_evolution(0.75, z, 3.0, r)
        split = sine_evolution(0.75, ft, 3.0, r) * (1.0 - 2.0j)
        assert np.max(np.abs(direct - split)) <= 1e-14

    @pytest.mark.slow
    def test_large_radius_resolved(self):
        # the same wave from a finer lambda mesh
        nu, t, r = 0.75, 50.0, np.array([45.0, 49.0, 51.0])
        coarse = sine_evolution(nu, transform(nu), t, r, time_derivative=True)
        fine_ft = hankel_transform(nu, bump_profile(), grid=spectral_grid(transform(nu).lam_max, panel_width=0.05))
        fine = sine_evolution(nu, fine_ft, t, r, time_derivative=True)
        assert np.max(np.abs(coarse - fine)) <= 1e-12

    def test_radial_derivative(self):
        nu, t, h = 0.75, 2.0, 1e-4
        ft = transform(nu)
        r = np.array([0.8, 2.0, 3.7])
        fd = (sine_evolution(nu, ft, t, r + h) - sine_evolution(nu, ft, t, r - h)) / (2 * h)
        assert np.max(np.abs(sine_evolution(nu, ft, t, r, radial_derivative=True) - fd)) <= 1e-7

    def test_domain(self):
        ft = transform(0.75)
        with pytest.raises(DomainError):
            sine_evolution(0.75, ft, -1.0, 1.0)
        with pytest.raises(DomainError):
            sine_evolution(0.75, ft, 1.0, 0.0)

    def test_resolution_budget(self, monkeypatch):
        monkeypatch.setattr(spectral, "MAX_NODES", 1000)
        with pytest.raises(ConvergenceError) as info:
            sine_evolution(0.75, transform(0.75), 1.0, 2.0)
        assert np.isfinite(info.value.achieved)

    @pytest.mark.parametrize("t", [0.5, 1.5])
    def test_crank_nicolson(self, t):
        nu = 0.75
        grid_r, u_cn = radial_wave_cn(nu, bump_profile(), t)
        r = np.array([1.5, 2.0, 2.5, 3.2])
        u_cn = np.interp(r, grid_r, u_cn)
        assert np.max(np.abs(sine_evolution(nu, transform(nu), t, r) - u_cn)) <= 1e-3


def _parseval_radii(t, support):
    lo_f, hi_f = support
    hi = hi_f + t
    lo = max(0.0, lo_f + t - 2 * (hi_f - lo_f)) if t > 0 else lo_f
    # smooth wake behind the front gets coarse panels, the front fine ones
    wake = np.linspace(0.0, lo, int(np.ceil(lo / 4)) + 1) if lo > 0 else np.array([lo])
    front = np.linspace(lo, hi, int(np.ceil((hi - lo) / 0.5)) + 1)
    edges = np.unique(np.concatenate([wake, front]))
    r, w = gauss_legendre(edges[:-1], edges[1:], 20)
    return r.ravel(), w.ravel()


@pytest.mark.parametrize("t", [0.0, 5.0, pytest.param(50.0, marks=pytest.mark.slow)])
def test_parseval(t):
    nu = 0.75
    data = bump_profile(center=3.0, width=2.0)
    ft = transform(nu, data)
    lam = ft.grid.nodes
    kinetic = SpectralProfile(ft.grid, ft.values**2 * lam)
    potential = SpectralProfile(ft.grid, ft.values**2 / lam)
    r, w = _parseval_radii(t, (data.r_min, data.r_max))
    ut = sine_evolution(nu, ft, t, r, time_derivative=True)
    u = sine_evolution(nu, ft, t, r)
    # int cos^2(t lam) g = (int g + int g cos(2 t lam)) / 2, and likewise for sin^2
    kin_exact = 0.5 * (kinetic.integral() + oscillatory_quad(kinetic, 2 * t, "cos"))
    pot_exact = 0.5 * (potential.integral() - oscillatory_quad(potential, 2 * t, "cos"))
    assert abs(np.sum(w * ut**2 * r) / kin_exact - 1) <= 1e-6
    if t == 0:
        assert np.sum(w * u**2 * r) == 0.0
    else:
        assert abs(np.sum(w * u**2 * r) / pot_exact - 1) <= 1e-6
