r"""Explicitly solvable models: Dirichlet sector, single-pole Aharonov-Bohm, free plane.

Every model separates into angular modes. Mode ``m`` carries radial data
``f_m`` and a Bessel order ``nu_m``:

* sector ``(0, inf) x (0, L)`` with Dirichlet walls: modes ``sin(alpha j y)``,
  ``alpha = pi / L``, orders ``alpha j``;
* Aharonov-Bohm flux ``beta`` at the origin (Friedrichs realisation):
  modes ``exp(i m theta)``, orders ``|m - beta|``;
* the free plane is the Aharonov-Bohm model with ``beta = 0``.

For each model this module provides the resolvent applied to the data,
its small-lambda expansion as :class:`~wavetail.expansion.ResolventTerm`
lists, and a spectral wave oracle that never touches the expansion
machinery.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special as sc

from . import specfun
from ._parallel import parallel_map
from ._quad import gauss_legendre
from .errors import DomainError
from .expansion import ResolventTerm, truncation_order
from .spectral import RadialProfile, bump_profile, hankel_transform, sine_evolution

__all__ = [
    "ModeDatum",
    "CutoffWindow",
    "ConeModel",
    "ABModel",
    "FreePlaneModel",
    "mu_m",
    "mu_M",
    "mode_resolvent",
    "cone_resolvent_apply",
    "ab_resolvent_apply",
    "cone_A10",
    "cone_leading_constant",
    "cone_wave_oracle",
    "ab_wave_oracle",
    "free_plane_wave_oracle",
    "model_terms",
    "small_lambda_fit",
    "cone_A10_fit",
    "free_plane_log_coefficient_fit",
]

DIOPHANTINE_GUARD = 1e-3
MODE_CUTOFF = 1e-12
_R_ORDER = 16


@dataclass(frozen=True, eq=False)
class ModeDatum:
    """Radial data ``profile`` attached to angular mode ``mode``."""

    mode: int
    profile: RadialProfile


@dataclass(frozen=True)
class CutoffWindow:
    """Observation points ``(r, angle)`` inside a disc of radius ``r_max``."""

    r_max: float
    points: tuple

    def __post_init__(self):
        pts = tuple((float(r), float(a)) for r, a in self.points)
        for r, _ in pts:
            if not 0 < r <= self.r_max:
                raise DomainError(f"observation radius {r} outside (0, {self.r_max}]")
        object.__setattr__(self, "points", pts)


def mu_m(beta):
    """Distance from the flux ``beta`` to the nearest integer."""
    frac = beta - math.floor(beta)
    return min(frac, 1.0 - frac)


def mu_M(beta):
    """``1 - mu_m(beta)``: distance to the second-nearest integer."""
    frac = beta - math.floor(beta)
    return max(frac, 1.0 - frac)


class _TransformCache:
    """Per-model memo of Hankel transforms keyed by mode."""

    def __init__(self):
        self._store = {}

    def get(self, key, build):
        value = self._store.get(key)
        if value is None:
            value = build()
            self._store[key] = value
        return value


def _as_modes(data):
    modes = tuple(d if isinstance(d, ModeDatum) else ModeDatum(int(d[0]), d[1]) for d in data)
    seen = [d.mode for d in modes]
    if len(set(seen)) != len(seen):
        raise DomainError("each angular mode may appear only once in the data")
    return modes


@dataclass(frozen=True, eq=False)
class ConeModel:
    """Dirichlet Laplacian on the sector ``(0, inf) x (0, L)``, ``alpha = pi / L``.

    Parameters
    ----------
    alpha : float
        ``pi / L``.
    data : sequence of ModeDatum or (j, RadialProfile)
        Initial velocity ``sum_j f_j(r) sin(alpha j y)``, ``j >= 1``.
    """

    alpha: float
    data: tuple
    diophantine_margin: float = field(init=False)
    _cache: _TransformCache = field(init=False, repr=False)

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainError("cone model needs alpha > 0")
        modes = _as_modes(self.data)
        if not modes:
            raise DomainError("cone model needs at least one data mode")
        if any(d.mode < 1 for d in modes):
            raise DomainError("sector modes are indexed by j >= 1")
        orders = np.array([self.alpha * d.mode for d in modes])
        margin = float(np.min(np.abs(orders - np.round(orders))))
        if margin <= DIOPHANTINE_GUARD:
            raise DomainError(
                f"alpha*j lies within {DIOPHANTINE_GUARD:g} of an integer for a retained mode "
                f"(margin {margin:.3g})"
            )
        object.__setattr__(self, "data", modes)
        object.__setattr__(self, "diophantine_margin", margin)
        object.__setattr__(self, "_cache", _TransformCache())

    @property
    def L(self):
        return math.pi / self.alpha

    def order(self, j):
        return self.alpha * j

    def angular(self, j, y):
        return np.sin(self.alpha * j * np.asarray(y, dtype=float))

    def mode(self, j):
        for d in self.data:
            if d.mode == j:
                return d
        return None

    def transform(self, j):
        d = self.mode(j)
        return self._cache.get(j, lambda: hankel_transform(self.order(j), d.profile))

    @classmethod
    def from_function(cls, alpha, func, r_min, r_max, j_max=64, n_y=256):
        """Project ``func(r, y)`` onto the Dirichlet modes ``sin(alpha j y)``.

        Modes whose sampled sup-norm falls below ``1e-12`` of the largest
        one are dropped; the largest dropped amplitude is stored as
        ``dropped_tail`` on the returned model.
        """
        L = math.pi / alpha
        y, wy = gauss_legendre(0.0, L, n_y)
        y, wy = y.ravel(), wy.ravel()
        r_probe = np.linspace(r_min, r_max, 41)[1:-1]

        def coefficient(j):
            basis = (2.0 / L) * wy * np.sin(alpha * j * y)

            def f_j(r):
                r = np.asarray(r, dtype=float)
                return func(r[..., None], y) @ basis

            return f_j

        coeffs = [coefficient(j) for j in range(1, j_max + 1)]
        sizes = np.array([np.max(np.abs(c(r_probe))) for c in coeffs])
        keep = sizes >= MODE_CUTOFF * sizes.max()
        data = [ModeDatum(j, RadialProfile(c, r_min, r_max)) for j, c, k in zip(range(1, j_max + 1), coeffs, keep) if k]
        model = cls(alpha, data)
        object.__setattr__(model, "dropped_tail", float(sizes[~keep].max()) if np.any(~keep) else 0.0)
        return model


@dataclass(frozen=True, eq=False)
class ABModel:
    """Single Aharonov-Bohm pole of flux ``beta`` at the origin (Friedrichs domain).

    Parameters
    ----------
    beta : float
        Total flux.
    data : sequence of ModeDatum or (m, RadialProfile)
        Initial velocity ``sum_m f_m(r) exp(i m theta)``.
    """

    beta: float
    data: tuple
    _cache: _TransformCache = field(init=False, repr=False)

    def __post_init__(self):
        modes = _as_modes(self.data)
        if not modes:
            raise DomainError("model needs at least one data mode")
        object.__setattr__(self, "data", modes)
        object.__setattr__(self, "_cache", _TransformCache())

    def order(self, m):
        return abs(m - self.beta)

    def angular(self, m, theta):
        return np.exp(1j * m * np.asarray(theta, dtype=float))

    def mode(self, m):
        for d in self.data:
            if d.mode == m:
                return d
        return None

    def transform(self, m):
        d = self.mode(m)
        return self._cache.get(m, lambda: hankel_transform(self.order(m), d.profile))

    def shifted(self, n):
        """Flux ``beta + n`` with every mode relabelled ``m -> m + n`` (same orders)."""
        return type(self)(self.beta + n, [ModeDatum(d.mode + n, d.profile) for d in self.data])

    @property
    def mu_m(self):
        return mu_m(self.beta)

    @property
    def mu_M(self):
        return mu_M(self.beta)


class FreePlaneModel(ABModel):
    """Free Laplacian on the plane: the Aharonov-Bohm model with zero flux."""

    def __init__(self, data):
        super().__init__(0.0, data)

    def shifted(self, n):
        return ABModel(float(n), [ModeDatum(d.mode + n, d.profile) for d in self.data])


def _split_nodes(profile, r, n_panels):
    r_nodes, w = profile.quadrature(n_panels, _R_ORDER, split_at=r)
    return r_nodes, w * profile(r_nodes) * r_nodes


def mode_resolvent(nu, profile, lam, r):
    r"""``(pi i / 2) int J_nu(lam min(r, s)) H1_nu(lam max(r, s)) f(s) s ds``.

    ``lam`` must satisfy ``arg lam in (-pi/4, pi)``; the quadrature is split
    at ``s = r`` where the kernel has a kink.
    """
    lam = complex(lam)
    if lam == 0:
        raise DomainError("resolvent is evaluated away from lam = 0")
    n_panels = max(32, int(abs(lam) * (profile.r_max - profile.r_min) / math.pi) + 8)
    s, weights = _split_nodes(profile, r, n_panels)
    a = np.minimum(r, s)
    b = np.maximum(r, s)
    kernel = sc.jv(nu, lam * a) * specfun.hankel1(nu, lam * b)
    return 0.5j * math.pi * complex(np.sum(kernel * weights))


def cone_resolvent_apply(model, lam, r, y):
    """Resolvent of the sector applied to the data, evaluated at ``(r, y)``."""
    _check_sector_point(model, r, y)
    total = 0j
    for d in sorted(model.data, key=lambda d: d.mode):
        total += mode_resolvent(model.order(d.mode), d.profile, lam, r) * model.angular(d.mode, y)
    return total


def ab_resolvent_apply(model, lam, r, theta):
    """Aharonov-Bohm resolvent applied to the data, evaluated at ``(r, theta)``."""
    if not r > 0:
        raise DomainError("radius must be positive")
    total = 0j
    for d in sorted(model.data, key=lambda d: d.mode):
        total += mode_resolvent(model.order(d.mode), d.profile, lam, r) * model.angular(d.mode, theta)
    return total


def _check_sector_point(model, r, y):
    if not r > 0 or not 0 <= y <= model.L:
        raise DomainError("point must lie in the sector r > 0, 0 <= y <= L")


def cone_A10(model, r, y):
    r"""Leading ``lam**(2 alpha)`` coefficient of the sector resolvent at ``(r, y)``.

    .. math::

        \frac{i\pi (1 + i\cot(\pi\alpha))\, r^\alpha}
             {2^{1+2\alpha}\Gamma(1+\alpha)^2}
        \int_0^\infty s^{1+\alpha} f_1(s)\, ds \,\sin(\alpha y)
    """
    d = model.mode(1)
    if d is None:
        raise DomainError("cone_A10 needs data in mode j = 1")
    a = model.alpha
    cot = specfun.cospi(a) / specfun.sinpi(a)
    prefactor = 1j * math.pi * (1 + 1j * cot) / (2 ** (1 + 2 * a) * specfun.gamma(1 + a) ** 2)
    return complex(prefactor * r**a * d.profile.moment(1 + a) * np.sin(a * y))


def cone_leading_constant(model):
    r"""Constant ``C`` with ``u(t, r, y) ~ C t**(-1-2 alpha) r**alpha sin(alpha y)``.

    ``C = c_1 * int f(s, y) sin(alpha y) s**(1+alpha) ds dy`` where
    ``c_1 = 2 Gamma(1/2 + alpha) cos(pi alpha) / (pi**1.5 Gamma(alpha))``.
    Only mode ``j = 1`` survives the ``y`` integral, giving a factor ``L/2``.
    """
    d = model.mode(1)
    if d is None:
        raise DomainError("cone_leading_constant needs data in mode j = 1")
    a = model.alpha
    c1 = 2 * specfun.gamma(0.5 + a) * specfun.cospi(a) / (math.pi**1.5 * specfun.gamma(a))
    return float(c1 * d.profile.moment(1 + a) * model.L / 2)


def _mode_sum(model, t, r, angle, ordered_modes):
    def one(d):
        amp = sine_evolution(model.order(d.mode), model.transform(d.mode), t, r)
        return amp * model.angular(d.mode, angle)

    parts = parallel_map(one, ordered_modes)
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    return total


def cone_wave_oracle(model, t, r, y):
    """Sector wave with data ``(0, f)`` at ``(t, r, y)`` by Hankel-mode synthesis.

    ``t`` may be an array. Modes are summed in ascending ``j``.
    """
    _check_sector_point(model, r, y)
    return _mode_sum(model, t, r, y, sorted(model.data, key=lambda d: d.mode))


def ab_wave_oracle(model, t, r, theta):
    """Aharonov-Bohm wave with data ``(0, f)`` at ``(t, r, theta)``; complex."""
    if not r > 0:
        raise DomainError("radius must be positive")
    out = _mode_sum(model, t, r, theta, sorted(model.data, key=lambda d: d.mode))
    return np.asarray(out, dtype=complex)[()] if np.ndim(t) == 0 else np.asarray(out, dtype=complex)


def free_plane_wave_oracle(model, t, r, theta):
    """Free-plane wave; identical to :func:`ab_wave_oracle` with zero flux."""
    return ab_wave_oracle(model, t, r, theta)


def _integrate(profile, r, kernel_fn):
    s, weights = _split_nodes(profile, r, 64)
    return complex(np.sum(kernel_fn(np.minimum(r, s), np.maximum(r, s)) * weights))


def _series_p(nu, ell, a, b, other):
    # sum_k (-a^2/4)^k (-b^2/4)^(l-k) / (k! Gamma(nu+k+1) (l-k)! Gamma(other+l-k+1))
    total = 0.0
    for k in range(ell + 1):
        total = total + (
            (-a * a / 4) ** k
            * (-b * b / 4) ** (ell - k)
            * specfun.rgamma(nu + k + 1)
            * specfun.rgamma(other + ell - k + 1)
            / (math.factorial(k) * math.factorial(ell - k))
        )
    return total


def _mode_terms(nu, profile, r, angular, n_series):
    """Resolvent terms of one mode, the first omitted exponent and its log power."""
    terms = []
    if float(nu).is_integer():
        n = int(nu)
        # log(lam s/2) J_n J_n part of -(pi/2) J_n Y_n; log(s/2) is absorbed in
        # integer-power terms whose loop integrals vanish
        for ell in range(n_series):
            w = _integrate(profile, r, lambda a, b, ell=ell: -((a * b / 4) ** n) * _series_p(n, ell, a, b, n))
            terms.append(ResolventTerm(2 * n + 2 * ell, 1, 1.0, w * angular))
        if n == 0:
            const = _integrate(profile, r, lambda a, b: 0.5j * math.pi - np.log(b / 2) - np.euler_gamma)
        else:
            const = _integrate(profile, r, lambda a, b: (a / b) ** n / (2 * n))
        terms.append(ResolventTerm(0.0, 0, 1.0, const * angular))
        return terms, float(2 * n + 2 * n_series), 1
    s, c = specfun.sinpi(nu), specfun.cospi(nu)
    w_plus = 0.5j * math.pi * (1 + 1j * c / s)
    w_minus = math.pi / (2 * s)
    for ell in range(n_series):
        wa = _integrate(profile, r, lambda a, b, ell=ell: (a * b / 4) ** nu * _series_p(nu, ell, a, b, nu))
        wb = _integrate(profile, r, lambda a, b, ell=ell: (a / b) ** nu * _series_p(nu, ell, a, b, -nu))
        terms.append(ResolventTerm(2 * nu + 2 * ell, 0, 1.0, w_plus * wa * angular))
        terms.append(ResolventTerm(2 * ell, 0, 1.0, w_minus * wb * angular))
    # the dropped lam**(2l) family has even integer powers and contributes nothing
    return terms, 2 * nu + 2 * n_series, 0


def model_terms(model, r, angle, n_series=2):
    """Low-energy resolvent terms of ``model`` applied to its data at ``(r, angle)``.

    Each mode of order ``nu`` contributes the families ``lam**(2 nu + 2 l)``
    and ``lam**(2 l)`` for ``l < n_series`` (for integer ``nu`` the
    ``log lam`` family replaces the first one).

    Returns
    -------
    terms : list of ResolventTerm
        Ordered by exponent, then log power.
    tail : TailBound
        Decay order of everything left out.
    """
    if n_series < 1:
        raise DomainError("n_series must be at least 1")
    terms = []
    dropped = []
    for d in sorted(model.data, key=lambda d: d.mode):
        nu = model.order(d.mode)
        angular = complex(model.angular(d.mode, angle))
        mode_terms, next_exponent, k = _mode_terms(nu, d.profile, r, angular, n_series)
        terms.extend(mode_terms)
        # integer powers without logarithms integrate to zero on the keyhole
        if k != 0 or not float(next_exponent).is_integer():
            dropped.append((next_exponent, k))
    terms.sort(key=lambda t: (t.nu, t.k))
    if not dropped:
        return terms, truncation_order(None)
    nu_min = min(e for e, _ in dropped)
    k_max = max(k for e, k in dropped if e == nu_min)
    return terms, truncation_order(nu_min, k_max)


def small_lambda_fit(values, lams, exponents):
    """Least-squares coefficients of ``sum_e c_e lam**e`` matching ``values``.

    Columns are scaled to unit norm before solving.
    """
    lams = np.asarray(lams, dtype=float)
    basis = np.stack([lams**e for e in exponents], axis=1)
    scale = np.linalg.norm(basis, axis=0)
    coef, *_ = np.linalg.lstsq(basis / scale, np.asarray(values, dtype=complex), rcond=None)
    return coef / scale


def cone_A10_fit(model, r, y, lams=None):
    """Coefficient of ``lam**(2 alpha)`` fitted from the mode-1 resolvent at small real lambda.

    The fit basis is ``{1, lam**2, lam**4} x {1, lam**(2 alpha)}``, the
    structure of the mode-1 kernel series.
    """
    d = model.mode(1)
    if d is None:
        raise DomainError("cone_A10_fit needs data in mode j = 1")
    a = model.alpha
    if lams is None:
        lams = np.geomspace(1e-3, 0.05, 24)
    vals = [mode_resolvent(a, d.profile, lam, r) for lam in lams]
    exps = [0.0, 2.0, 4.0, 2 * a, 2 * a + 2, 2 * a + 4]
    coef = small_lambda_fit(vals, lams, exps)
    return complex(coef[3] * np.sin(a * y))


def free_plane_log_coefficient_fit(model, r, lams=None):
    """Coefficient of ``log lam`` in the ``m = 0`` free resolvent, fitted at small real lambda.

    Basis ``{1, log lam, lam**2, lam**2 log lam, lam**4, lam**4 log lam}``.
    """
    d = model.mode(0)
    if d is None:
        raise DomainError("the free-plane log coefficient needs data in mode m = 0")
    if lams is None:
        lams = np.geomspace(1e-4, 0.05, 24)
    lams = np.asarray(lams, dtype=float)
    vals = np.array([mode_resolvent(0.0, d.profile, lam, r) for lam in lams])
    logs = np.log(lams)
    basis = np.stack([np.ones_like(lams), logs, lams**2, lams**2 * logs, lams**4, lams**4 * logs], axis=1)
    scale = np.linalg.norm(basis, axis=0)
    coef, *_ = np.linalg.lstsq(basis / scale, vals, rcond=None)
    return complex(coef[1] / scale[1])


def default_bump(center=2.0, width=1.0, amplitude=1.0):
    """Default test data on ``(center - width, center + width)``."""
    return bump_profile(center, width, amplitude)
