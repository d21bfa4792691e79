"""Special-function kernel: Gamma, polygamma, Bessel J/Y and Hankel H1.

Gamma and the Bessel family delegate to :mod:`scipy.special` (AMOS /
Cephes) behind explicit domain checks. Polygamma is implemented here since
scipy only offers real arguments for orders above zero.

All functions accept scalars or arrays and broadcast like numpy ufuncs.
"""

import math

import numpy as np
from scipy import special as sc

from .errors import DomainError, PoleError

__all__ = [
    "gamma",
    "loggamma",
    "rgamma",
    "polygamma",
    "bessel_j",
    "bessel_y",
    "hankel1",
    "sinpi",
    "cospi",
]

NU_MAX = 200.0
X_MAX = 1.0e5
POLYGAMMA_MAX_ORDER = 6

# B_2, B_4, ..., B_24
_BERNOULLI_EVEN = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
)
_ASYMPTOTIC_SHIFT = 20.0


def _scalar_or_array(values, like):
    if np.ndim(like) == 0:
        return values[()] if isinstance(values, np.ndarray) else values
    return values


def _check_poles(z):
    z = np.asarray(z)
    zr = np.real(z)
    on_pole = (np.imag(z) == 0) & (zr <= 0) & (zr == np.round(zr))
    if np.any(on_pole):
        raise PoleError(f"Gamma has a pole at nonpositive integer {zr[on_pole].ravel()[0]:g}")


def sinpi(x):
    """sin(pi x), exactly zero at integers and exactly +-1 at half-integers."""
    x = np.asarray(x, dtype=float)
    r = np.remainder(x, 2.0)
    out = np.sin(np.pi * r)
    out = np.where(r == np.round(r), 0.0, out)
    out = np.where(r == 0.5, 1.0, out)
    out = np.where(r == 1.5, -1.0, out)
    return _scalar_or_array(out, x)


def cospi(x):
    """cos(pi x), exactly zero at half-integers and exactly +-1 at integers."""
    return sinpi(np.asarray(x, dtype=float) + 0.5)


def gamma(z):
    """Gamma function for real or complex ``z``.

    Raises
    ------
    PoleError
        If ``z`` is a nonpositive integer.
    """
    _check_poles(z)
    return sc.gamma(z)


def loggamma(z):
    """Principal branch of log Gamma (real for positive real ``z``)."""
    _check_poles(z)
    z = np.asarray(z)
    if np.iscomplexobj(z) or np.any(z < 0):
        return _scalar_or_array(sc.loggamma(z.astype(complex)), z)
    return sc.gammaln(z)


def rgamma(z):
    """Reciprocal Gamma; entire, so zero rather than an error at the poles."""
    return sc.rgamma(z)


def _polygamma_asymptotic(m, w):
    """Large-|w| series for psi^(m)(w), valid for Re w >= ~20."""
    if m == 0:
        total = np.log(w) - 0.5 / w
        w2 = w * w
        wpow = w2
        for k, b2k in enumerate(_BERNOULLI_EVEN, start=1):
            total = total - b2k / (2 * k * wpow)
            wpow = wpow * w2
        return total
    sign = (-1.0) ** (m + 1)
    total = math.factorial(m - 1) / w**m + math.factorial(m) / (2.0 * w ** (m + 1))
    for k, b2k in enumerate(_BERNOULLI_EVEN, start=1):
        coeff = b2k * math.factorial(2 * k + m - 1) / math.factorial(2 * k)
        total = total + coeff / w ** (2 * k + m)
    return sign * total


def polygamma(m, z):
    """m-th derivative of log Gamma at real or complex ``z``.

    Upward recurrence shifts the argument until the asymptotic Bernoulli
    series converges to double precision, then the recurrence terms are
    subtracted back.

    Parameters
    ----------
    m : int
        Derivative order, ``0 <= m <= 6``.
    z : complex or array_like
        Argument, not a nonpositive integer.
    """
    if int(m) != m or not 0 <= m <= POLYGAMMA_MAX_ORDER:
        raise DomainError(f"polygamma order must be an integer in [0, {POLYGAMMA_MAX_ORDER}], got {m}")
    m = int(m)
    _check_poles(z)
    z_in = z
    z = np.asarray(z, dtype=complex)
    shift = np.maximum(0, np.ceil(_ASYMPTOTIC_SHIFT - z.real)).astype(int)
    n_max = int(shift.max()) if shift.size else 0
    correction = np.zeros_like(z)
    # psi^(m)(z) = psi^(m)(z+N) - (-1)^m m! sum_{k<N} (z+k)^(-m-1)
    for k in range(n_max):
        active = k < shift
        correction = correction + np.where(active, 1.0 / (z + k) ** (m + 1), 0.0)
    w = z + shift
    result = _polygamma_asymptotic(m, w) - (-1.0) ** m * math.factorial(m) * correction
    if not np.iscomplexobj(z_in) and np.all(np.isreal(z_in)):
        result = result.real
    return _scalar_or_array(result, z_in)


def _check_order(nu):
    nu = np.asarray(nu, dtype=float)
    if np.any(~np.isfinite(nu)) or np.any(nu < 0) or np.any(nu > NU_MAX):
        raise DomainError(f"Bessel order must lie in [0, {NU_MAX:g}]")
    return nu


def _check_real_argument(x):
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)) or np.any(x > X_MAX):
        raise DomainError(f"Bessel argument must lie in (0, {X_MAX:g}]")
    return x


def bessel_j(nu, x):
    """Bessel function of the first kind J_nu(x) for 0 <= nu <= 200, 0 < x <= 1e5."""
    _check_order(nu)
    _check_real_argument(x)
    return sc.jv(nu, x)


def bessel_y(nu, x):
    """Bessel function of the second kind Y_nu(x) on the same domain as :func:`bessel_j`."""
    _check_order(nu)
    _check_real_argument(x)
    return sc.yv(nu, x)


def hankel1(nu, z):
    """Hankel function H1_nu(z) = J_nu(z) + i Y_nu(z), continued off the real axis.

    Supported for ``arg z`` in (-pi/4, pi) and ``0 < |z| <= 1e5``.
    """
    _check_order(nu)
    z = np.asarray(z, dtype=complex)
    arg = np.angle(z)
    bad = (z == 0) | (arg <= -np.pi / 4) | (arg >= np.pi) | (np.abs(z) > X_MAX)
    if np.any(bad):
        raise DomainError("hankel1 requires z != 0 with arg z in (-pi/4, pi)")
    return _scalar_or_array(sc.hankel1(nu, z), z)
