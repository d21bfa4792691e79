r"""Keyhole-contour integrals of :math:`e^{-it\lambda}\lambda^\nu\log^k(b\lambda)`.

The contour hugs the branch cut along the negative imaginary axis. The
branch of :math:`\lambda^\nu` and :math:`\log\lambda` takes
:math:`\arg\lambda\in(-\pi/2, 3\pi/2)`, and
:math:`\log(b\lambda) = \operatorname{Log} b + \log\lambda` with the
principal ``Log b``.

Orientation, left to right: come up the left bank
(:math:`\arg\lambda = 3\pi/2`) from distance ``c`` to ``delta``, go
clockwise around :math:`|\lambda| = \delta` to :math:`\arg\lambda=-\pi/2`,
then go down the right bank back out to ``c``. With ``c = inf`` this is the
infinite keyhole. On both banks :math:`e^{-it\lambda} = e^{-t\rho}`, so the
rays carry no oscillation.

The contour integral of a pure power has the closed form

.. math::

    \int e^{-it\lambda}\lambda^\nu\,d\lambda
        = e^{i\pi\nu/2}\frac{2\pi}{\Gamma(-\nu)}\,t^{-\nu-1},

and its derivatives in :math:`\nu` produce the log-power coefficients.
"""

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import specfun
from ._quad import adaptive_quad
from .errors import ContourError, CrossCheckError, DomainError

__all__ = [
    "ContourSpec",
    "ModelIntegralSpec",
    "TimeTerm",
    "RemainderOrder",
    "default_delta",
    "branch_log",
    "loop_integral_closed",
    "loop_integral_numeric",
    "hankel_loop_derivatives",
    "log_power_moment",
    "asym_coeff",
    "time_expansion",
    "frak_J",
    "log_time_integral",
]

K_MAX = 8
M_MAX = 6
_LOG_GUARD = 1e-3
_RAY_TOL = 1e-16


@dataclass(frozen=True)
class ContourSpec:
    """Keyhole contour: circle radius ``delta`` and ray length ``c`` (``inf`` allowed)."""

    delta: float
    c: float = math.inf

    def __post_init__(self):
        if not self.delta > 0:
            raise ContourError(f"keyhole radius must be positive, got {self.delta}")
        if not self.c > self.delta:
            raise ContourError(f"ray length c={self.c} must exceed delta={self.delta}")

    @property
    def variant(self):
        return "gamma_infinite" if math.isinf(self.c) else "gamma_finite"


@dataclass(frozen=True)
class ModelIntegralSpec:
    nu: float
    k: int
    b: complex
    t: float

    def __post_init__(self):
        b = complex(self.b)
        object.__setattr__(self, "b", b)
        if b == 0:
            raise DomainError("branch constant b must be nonzero")
        if b.real == 0 and b.imag > 0:
            raise DomainError("branch constant b must avoid the ray i[0, inf)")
        if int(self.k) != self.k or abs(self.k) > K_MAX:
            raise DomainError(f"log power k must be an integer with |k| <= {K_MAX}")
        object.__setattr__(self, "k", int(self.k))
        if not self.t > 0:
            raise DomainError("t must be positive")


@dataclass(frozen=True)
class TimeTerm:
    """One term ``coeff * t**power * log(t)**logpow`` of a long-time expansion."""

    coeff: complex
    power: float
    logpow: int

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return self.coeff * t**self.power * np.log(t) ** self.logpow


@dataclass(frozen=True)
class RemainderOrder:
    """Remainder bound O(t**power * log(t)**logpow)."""

    power: float
    logpow: int = 0

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return t**self.power * np.log(t) ** self.logpow


def default_delta(b, t):
    """Keyhole radius min(1e-3, 1/(4|b|), 1/t)."""
    return min(1e-3, 0.25 / abs(b), 1.0 / t)


def branch_log(lam):
    """log(lambda) on the branch arg(lambda) in (-pi/2, 3pi/2)."""
    lam = np.asarray(lam, dtype=complex)
    arg = np.angle(lam)
    arg = np.where(arg <= -np.pi / 2, arg + 2 * np.pi, arg)
    return np.log(np.abs(lam)) + 1j * arg


def loop_integral_closed(nu, t):
    """Closed-form infinite-keyhole integral of exp(-i t lam) lam**nu.

    Returns ``exp(i pi nu / 2) * 2 pi / Gamma(-nu) * t**(-nu-1)``, which is
    exactly zero for nonnegative integer ``nu``.
    """
    if not t > 0:
        raise DomainError("t must be positive")
    return cmath.exp(0.5j * math.pi * nu) * 2 * math.pi * float(specfun.rgamma(-nu)) * t ** (-nu - 1)


def _check_log_guard(values):
    if np.any(np.abs(values) < _LOG_GUARD):
        raise ContourError("log(b*lambda) nearly vanishes on the contour")


def _ray_integrand(nu, k, log_b, t):
    # Both banks at once: right bank lam = rho e^{-i pi/2} (ascending rho),
    # left bank lam = rho e^{3i pi/2} traversed inwards, hence the minus sign.
    right_phase = cmath.exp(-0.5j * math.pi * (nu + 1))
    left_phase = cmath.exp(1.5j * math.pi * (nu + 1))
    if k == 0:
        # right - left = -2i sin(pi (nu+1)) e^{i pi (nu+1)/2}; exact zero at integers
        bracket = -2j * float(specfun.sinpi(nu + 1)) * cmath.exp(0.5j * math.pi * (nu + 1))

        def integrand(rho):
            return np.exp(-t * rho) * rho**nu * bracket

        return integrand

    def integrand(rho):
        log_rho = np.log(rho)
        log_right = log_b + log_rho - 0.5j * math.pi
        log_left = log_b + log_rho + 1.5j * math.pi
        if k < 0:
            _check_log_guard(log_right)
            _check_log_guard(log_left)
        return np.exp(-t * rho) * rho**nu * (right_phase * log_right**k - left_phase * log_left**k)

    return integrand


def _circle_integrand(nu, k, log_b, t, delta):
    # lam = delta e^{i theta}, theta from 3pi/2 down to -pi/2; the reversed
    # orientation is absorbed by integrating theta upward with a minus sign.
    def integrand(theta):
        lam = delta * np.exp(1j * theta)
        lam_nu = delta**nu * np.exp(1j * nu * theta)
        value = -np.exp(-1j * t * lam) * lam_nu * 1j * lam
        if k != 0:
            log_val = log_b + math.log(delta) + 1j * theta
            if k < 0:
                _check_log_guard(log_val)
            value = value * log_val**k
        return value

    return integrand


def _ray_cutoff(nu, k, log_b, t, delta):
    """Ray length beyond which the integrand is negligible relative to its peak."""
    peak_rho = max(delta, nu / t) if nu > 0 else delta
    log_scale = abs(log_b) + 2 * math.pi

    def magnitude(rho):
        log_mag = -t * rho + nu * math.log(rho)
        if k:
            log_mag += abs(k) * math.log(log_scale + abs(math.log(rho)))
        return log_mag

    reference = magnitude(peak_rho) + math.log(max(peak_rho, 1.0 / t))
    rho = max(peak_rho, delta) + 40.0 / t
    while magnitude(rho) + math.log(rho) - reference > math.log(_RAY_TOL):
        rho *= 2.0
    return rho


def loop_integral_numeric(spec, contour=None, rtol=1e-13):
    """Numerical keyhole integral of exp(-i t lam) lam**nu log(b lam)**k.

    Parameters
    ----------
    spec : ModelIntegralSpec
    contour : ContourSpec, optional
        Defaults to the infinite keyhole with ``delta = default_delta(b, t)``.
    rtol : float
        Relative tolerance of the adaptive quadrature.

    Raises
    ------
    ContourError
        If ``k < 0`` and ``|b| delta >= 1/2``, so that the zero of
        log(b lam) at lam = 1/b may touch or sit inside the keyhole.
    ConvergenceError
        If adaptive refinement exceeds its panel budget.
    """
    nu, k, b, t = float(spec.nu), spec.k, spec.b, float(spec.t)
    if contour is None:
        contour = ContourSpec(default_delta(b, t))
    delta = contour.delta
    if k < 0 and abs(b) * delta >= 0.5:
        raise ContourError(f"|b|*delta = {abs(b) * delta:.3g} must stay below 1/2 when k < 0")
    log_b = cmath.log(b)

    # Single-valued integrands (integer nu, k = 0): the banks cancel exactly.
    ray_value = 0.0
    if not (k == 0 and float(nu).is_integer()):
        far = contour.c if contour.variant == "gamma_finite" else _ray_cutoff(nu, k, log_b, t, delta)
        n_geom = max(1, int(math.ceil(math.log2(far / delta))))
        edges = delta * np.geomspace(1.0, far / delta, n_geom + 1)
        edges[-1] = far
        ray_value, _ = adaptive_quad(_ray_integrand(nu, k, log_b, t), edges, rtol=rtol)

    edges = np.linspace(-0.5 * math.pi, 1.5 * math.pi, 9)
    circle_value, _ = adaptive_quad(_circle_integrand(nu, k, log_b, t, delta), edges, rtol=rtol)
    return complex(ray_value + circle_value)


def _bell_polynomials(x, n):
    """Complete Bell polynomials B_0..B_n of the sequence x[1], ..., x[n]."""
    bell = [1.0 + 0j]
    for order in range(n):
        bell.append(sum(math.comb(order, i) * bell[order - i] * x[i + 1] for i in range(order + 1)))
    return bell


def _leibniz(f, g, n):
    return [sum(math.comb(j, i) * f[i] * g[j - i] for i in range(j + 1)) for j in range(n + 1)]


def hankel_loop_derivatives(nu, n):
    r"""Derivatives ``F(nu), F'(nu), ..., F^(n)(nu)`` of the unit-time loop integral.

    ``F(nu) = exp(i pi nu/2) 2 pi / Gamma(-nu)``. Derivatives of the Gamma
    factor come from polygamma values through complete Bell polynomials.
    Both representations used keep every polygamma argument above 1/2:

    * ``nu > -1/2``: ``F = -2 exp(i pi nu/2) sin(pi nu) Gamma(1+nu)``;
    * ``nu <= -1/2``: ``F = 2 pi exp(i pi nu/2) exp(-log Gamma(-nu))``.
    """
    if n > M_MAX:
        raise DomainError(f"at most {M_MAX} derivatives are supported")
    phase = [(0.5j * math.pi) ** j * cmath.exp(0.5j * math.pi * nu) for j in range(n + 1)]
    if nu > -0.5:
        x = [0.0] + [complex(specfun.polygamma(j, 1.0 + nu)) for j in range(n)]
        gamma_val = math.exp(float(specfun.loggamma(1.0 + nu)))
        gamma_derivs = [gamma_val * v for v in _bell_polynomials(x, n)]
        sine = [math.pi**j * float(specfun.sinpi(nu + 0.5 * j)) for j in range(n + 1)]
        prefactor = _leibniz(phase, sine, n)
        return [-2.0 * v for v in _leibniz(prefactor, gamma_derivs, n)]
    # d^j/dnu^j [-log Gamma(-nu)] = (-1)^(j-1) psi^(j-1)(-nu)
    x = [0.0] + [(-1.0) ** j * complex(specfun.polygamma(j, -nu)) for j in range(n)]
    rgamma_val = math.exp(-float(specfun.loggamma(-nu)))
    rgamma_derivs = [rgamma_val * v for v in _bell_polynomials(x, n)]
    return [2.0 * math.pi * v for v in _leibniz(phase, rgamma_derivs, n)]


def log_power_moment(nu, b, m):
    """Closed-form unit-time moment: keyhole integral of exp(-i mu) mu**nu log(b mu)**m.

    Expands ``log(b mu)**m = sum_i C(m,i) (Log b)**(m-i) log(mu)**i`` and
    uses ``d^i F / d nu^i`` for each ``log(mu)**i`` moment.
    """
    derivs = hankel_loop_derivatives(nu, m)
    log_b = cmath.log(complex(b))
    return sum(math.comb(m, i) * log_b ** (m - i) * derivs[i] for i in range(m + 1))


def _general_binomial(k, m):
    value = 1.0
    for i in range(m):
        value *= (k - i) / (i + 1)
    return value


@lru_cache(maxsize=4096)
def _asym_coeff_cached(nu, k, b, m, check):
    binom = _general_binomial(k, m)
    if binom == 0.0:
        return 0j
    sign = (-1.0) ** (k - m)
    closed = sign * binom * log_power_moment(nu, b, m)
    if check:
        moment = loop_integral_numeric(ModelIntegralSpec(nu, m, b, 1.0))
        numeric = sign * binom * moment
        if abs(closed - numeric) > 1e-7 * (1.0 + abs(closed)):
            raise CrossCheckError(
                f"c[nu={nu}, k={k}, m={m}]: polygamma route {closed} vs quadrature {numeric}"
            )
    return complex(closed)


def asym_coeff(nu, k, b, m, check=True):
    """Coefficient ``c_{nu,k,m}`` of the log-power long-time expansion.

    ``c = (-1)**(k-m) * C(k, m) * I_m`` with the generalised binomial
    ``C(k, m)`` and ``I_m`` the unit-time keyhole integral of
    ``exp(-i mu) mu**nu log(b mu)**m``. ``I_m`` is evaluated in closed form
    from polygamma values; with ``check=True`` it is re-evaluated by
    quadrature and a :class:`CrossCheckError` is raised when the two
    disagree by more than ``1e-7 (1 + |c|)``.
    """
    if int(m) != m or not 0 <= m <= M_MAX:
        raise DomainError(f"m must be an integer in [0, {M_MAX}]")
    if int(k) != k or abs(k) > K_MAX:
        raise DomainError(f"k must be an integer with |k| <= {K_MAX}")
    return _asym_coeff_cached(float(nu), int(k), complex(b), int(m), bool(check))


def time_expansion(spec, M):
    """Truncated long-time expansion of the infinite-keyhole integral.

    Returns ``(terms, remainder)`` where ``terms`` holds
    ``c_{nu,k,m} t**(-nu-1) log(t)**(k-m)`` for ``m = 0..M`` and ``remainder``
    is the order ``t**(-nu-1) log(t)**(k-M-1)`` of the neglected part. For
    ``k = 0`` the single term is exact and the remainder vanishes
    identically, which is signalled by ``remainder = None``.
    """
    if int(M) != M or not 0 <= M <= M_MAX:
        raise DomainError(f"M must be an integer in [0, {M_MAX}]")
    nu, k = float(spec.nu), spec.k
    power = -nu - 1.0
    if k == 0:
        return [TimeTerm(asym_coeff(nu, 0, spec.b, 0), power, 0)], None
    terms = [TimeTerm(asym_coeff(nu, k, spec.b, m), power, k - m) for m in range(M + 1)]
    return terms, RemainderOrder(power, k - M - 1)


def frak_J(b, t, contour=None):
    r"""(1/2 pi) times the keyhole integral of exp(-i t lam) lam**-2 / log(b lam).

    Requires ``arg b = -pi/2``; grows like ``t / log t``.
    """
    b = complex(b)
    if abs(cmath.phase(b) + 0.5 * math.pi) > 1e-12:
        raise DomainError("frak_J requires arg b = -pi/2")
    if not t > 1:
        raise DomainError("frak_J requires t > 1")
    return loop_integral_numeric(ModelIntegralSpec(-2.0, -1, b, t), contour) / (2 * math.pi)


def log_time_integral(t, c=1.0):
    """Finite-keyhole integral of exp(-i t lam) log(lam); equals -2 pi/t + O(exp(-c t)).

    For ``t >= 10`` the deviation from ``-2 pi / t`` is checked against
    ``2 pi exp(-c t / 2)``.
    """
    spec = ModelIntegralSpec(0.0, 1, 1.0, t)
    value = loop_integral_numeric(spec, ContourSpec(default_delta(1.0, t), c))
    if t >= 10 and abs(value + 2 * math.pi / t) > 2 * math.pi * math.exp(-0.5 * c * t):
        raise CrossCheckError(f"log-time integral at t={t} deviates from -2 pi/t: {value}")
    return value
