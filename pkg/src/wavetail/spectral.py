r"""Spectral quadrature for radial wave problems.

For an angular mode of Bessel order :math:`\nu` the wave with data
:math:`(0, f)` is

.. math::

    u_\nu(t, r) = \int_0^\infty \sin(t\lambda)\, J_\nu(\lambda r)\,
                  \tilde f(\lambda)\, d\lambda,
    \qquad
    \tilde f(\lambda) = \int_0^\infty f(r) J_\nu(\lambda r)\, r\, dr .

The long-time behaviour is decided by the endpoint :math:`\lambda = 0`,
where the integrand behaves like :math:`\lambda^{2\nu}`. The
:math:`\lambda` mesh is therefore graded geometrically toward zero. The
oscillation :math:`\sin(t\lambda)` is integrated exactly against a
piecewise Legendre interpolant of the smooth factor (a Filon rule), using

.. math::

    \int_{-1}^{1} P_n(x)\, e^{i\omega x}\, dx = 2 i^n j_n(\omega).
"""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import special as sc

from ._parallel import parallel_map
from ._quad import gauss_legendre
from .errors import ConvergenceError, DomainError

__all__ = [
    "RadialProfile",
    "bump_profile",
    "SpectralGrid",
    "SpectralProfile",
    "spectral_grid",
    "hankel_transform",
    "choose_cutoff",
    "oscillatory_quad",
    "filon_weights",
    "sine_evolution",
]

DEFAULT_ORDER = 20
_R_ORDER = 16
_LAM_PROBE_MAX = 2000.0
_CUTOFF_REL = 1e-12


@dataclass(frozen=True, eq=False)
class RadialProfile:
    """Compactly supported radial data ``f(r)`` vanishing outside ``[r_min, r_max]``."""

    func: Callable
    r_min: float
    r_max: float
    label: str = ""

    def __post_init__(self):
        if not 0 <= self.r_min < self.r_max < np.inf:
            raise DomainError("radial profile needs 0 <= r_min < r_max < inf")

    @property
    def support_bound(self):
        return self.r_max

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        inside = (r > self.r_min) & (r < self.r_max)
        out = np.zeros_like(r)
        out[inside] = self.func(r[inside])
        return out

    def scaled(self, factor):
        return RadialProfile(lambda r: factor * self.func(r), self.r_min, self.r_max, self.label)

    def quadrature(self, n_panels=64, order=_R_ORDER, split_at=None):
        """Gauss-Legendre nodes and weights covering the support.

        ``split_at`` adds a panel boundary (used where an integrand kernel
        has a kink).
        """
        edges = np.linspace(self.r_min, self.r_max, n_panels + 1)
        if split_at is not None and self.r_min < split_at < self.r_max:
            edges = np.unique(np.concatenate([edges, [split_at]]))
        nodes, weights = gauss_legendre(edges[:-1], edges[1:], order)
        return nodes.ravel(), weights.ravel()

    def moment(self, power, n_panels=64):
        """``int f(r) r**power dr`` over the support."""
        r, w = self.quadrature(n_panels)
        return float(np.sum(w * self(r) * r**power))


def bump_profile(center=2.0, width=1.0, amplitude=1.0):
    """Smooth bump ``amplitude * exp(-1 / (1 - ((r - center)/width)**2))``."""
    if width <= 0 or center - width < 0:
        raise DomainError("bump must have positive width and lie in r >= 0")

    def func(r):
        x = (r - center) / width
        return amplitude * np.exp(-1.0 / (1.0 - x * x))

    return RadialProfile(func, center - width, center + width, f"bump(c={center}, w={width})")


@dataclass(frozen=True, eq=False)
class SpectralGrid:
    """Panelled lambda mesh: ``edges`` of the panels and ``order`` GL nodes per panel."""

    edges: np.ndarray
    order: int = DEFAULT_ORDER
    nodes: np.ndarray = field(init=False, repr=False)
    weights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=float)
        if np.any(np.diff(edges) <= 0) or edges[0] < 0:
            raise DomainError("spectral grid edges must be ascending and nonnegative")
        object.__setattr__(self, "edges", edges)
        nodes, weights = gauss_legendre(edges[:-1], edges[1:], self.order)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def lam_max(self):
        return float(self.edges[-1])

    @property
    def centers(self):
        return 0.5 * (self.edges[1:] + self.edges[:-1])

    @property
    def half_widths(self):
        return 0.5 * (self.edges[1:] - self.edges[:-1])

    def refined(self):
        """Grid with every panel bisected."""
        mids = self.centers
        edges = np.empty(2 * len(mids) + 1)
        edges[0::2] = self.edges
        edges[1::2] = mids
        return SpectralGrid(edges, self.order)


def spectral_grid(lam_max, panel_width=0.5, order=DEFAULT_ORDER, grade_ratio=0.5, lam_min=1e-12):
    """Panels graded geometrically toward zero, then uniform up to ``lam_max``.

    The graded panels run from ``lam_min`` up to ``panel_width`` with
    consecutive edge ratio ``grade_ratio``; ``[0, lam_min]`` is one extra
    panel.
    """
    if not 0 < grade_ratio <= 0.7:
        raise DomainError("grade ratio must lie in (0, 0.7]")
    if not lam_max > panel_width:
        raise DomainError("lam_max must exceed the panel width")
    n_grade = int(np.ceil(np.log(lam_min / panel_width) / np.log(grade_ratio)))
    graded = panel_width * grade_ratio ** np.arange(n_grade, 0, -1)
    n_uniform = int(np.ceil(lam_max / panel_width))
    uniform = np.linspace(panel_width, lam_max, n_uniform)
    return SpectralGrid(np.concatenate([[0.0], graded, uniform]), order)


@dataclass(frozen=True, eq=False)
class SpectralProfile:
    """Samples of a spectral function on the nodes of a :class:`SpectralGrid`.

    ``endpoint_exponent`` records the known power of lambda at zero.
    """

    grid: SpectralGrid
    values: np.ndarray
    endpoint_exponent: float = 0.0

    @classmethod
    def from_function(cls, func, grid, endpoint_exponent=0.0):
        return cls(grid, np.asarray(func(grid.nodes)), endpoint_exponent)

    @property
    def lam_max(self):
        return self.grid.lam_max

    def multiply(self, factor, endpoint_exponent=None):
        """Pointwise product with ``factor`` (array on the nodes or callable)."""
        if callable(factor):
            factor = factor(self.grid.nodes)
        exponent = self.endpoint_exponent if endpoint_exponent is None else endpoint_exponent
        return SpectralProfile(self.grid, self.values * factor, exponent)

    def integral(self):
        return np.sum(self.values * self.grid.weights)

    def subdivided(self, factor):
        """Same function on a grid with every panel split into ``factor`` equal parts.

        Values at the new nodes come from each panel's Legendre interpolant,
        so no new samples of the underlying function are needed.
        """
        factor = int(factor)
        if factor <= 1:
            return self
        order = self.grid.order
        table = _legendre_table(order)
        coeffs = self.values @ table.matrix.T
        x, _ = np.polynomial.legendre.leggauss(order)
        # node positions of the sub-panels in the parent's reference coordinate
        sub_edges = np.linspace(-1.0, 1.0, factor + 1)
        sub_x = (0.5 * (sub_edges[1:] + sub_edges[:-1]))[:, None] + 0.5 * np.diff(sub_edges)[:, None] * x
        vander = np.polynomial.legendre.legvander(sub_x.ravel(), order - 1)
        values = (coeffs @ vander.T).reshape(-1, order)
        e = self.grid.edges
        edges = np.concatenate([np.linspace(a, b, factor + 1)[:-1] for a, b in zip(e[:-1], e[1:])] + [e[-1:]])
        return SpectralProfile(SpectralGrid(edges, order), values, self.endpoint_exponent)


def _r_panels(lam, width):
    # at most 1.5 oscillations of J(lam r) per 16-node panel; the floor
    # resolves the essential singularities of bump-type data at the edges
    return max(32, int(np.ceil(lam * width / (3 * np.pi))) + 4)


def _transform_values(nu, profile, lam):
    """f-tilde at the points ``lam``, blocked so the r-rule tracks the oscillation."""
    lam = np.asarray(lam, dtype=float)
    flat = lam.ravel()
    out = np.empty_like(flat)
    width = profile.r_max - profile.r_min
    order = np.argsort(flat, kind="stable")

    def work(block):
        r, w = profile.quadrature(_r_panels(flat[block].max(), width))
        weights = w * profile(r) * r
        out[block] = sc.jv(nu, np.outer(flat[block], r)) @ weights

    blocks = [b for b in np.array_split(order, max(1, flat.size // 512)) if b.size]
    # blocks write disjoint slots, so the result does not depend on scheduling
    parallel_map(work, blocks)
    return out.reshape(lam.shape)


def choose_cutoff(nu, profile, rel=_CUTOFF_REL, lam_probe_max=_LAM_PROBE_MAX, step=5.0, window=100.0):
    """Smallest probe lambda beyond which ``|f-tilde| < rel * max |f-tilde|``.

    The transform is probed on a grid of spacing ``step``; probing stops
    once it has stayed below the threshold for a stretch of length
    ``window``.

    Raises
    ------
    ConvergenceError
        If the transform has not decayed below the threshold by
        ``lam_probe_max``.
    """
    lam = np.concatenate([np.geomspace(1e-3, step, 16, endpoint=False), np.arange(step, window + step, step)])
    vals = np.abs(_transform_values(nu, profile, lam))
    peak = vals.max()
    while True:
        above = np.nonzero(vals >= rel * peak)[0]
        last = lam[above[-1]] if above.size else 0.0
        if lam[-1] - last >= window:
            return float(last + step)
        if lam[-1] >= lam_probe_max:
            raise ConvergenceError(
                f"Hankel transform still above {rel:g} of its peak at lambda={lam_probe_max:g}",
                achieved=float(vals[-1] / peak),
            )
        extra = np.arange(lam[-1] + step, lam[-1] + window + step / 2, step)
        lam = np.concatenate([lam, extra])
        vals = np.concatenate([vals, np.abs(_transform_values(nu, profile, extra))])
        peak = max(peak, vals.max())


def hankel_transform(nu, profile, lam_max=None, grid=None, panel_width=0.5, order=DEFAULT_ORDER):
    """Order-``nu`` Hankel transform of a compactly supported radial profile.

    Parameters
    ----------
    nu : float
        Bessel order, ``nu >= 0``.
    profile : RadialProfile
    lam_max : float, optional
        Spectral cutoff; chosen by :func:`choose_cutoff` when omitted.
    grid : SpectralGrid, optional
        Overrides ``lam_max``, ``panel_width`` and ``order``.

    Returns
    -------
    SpectralProfile
        Values of ``int f(r) J_nu(lam r) r dr`` with ``endpoint_exponent = nu``.
    """
    if nu < 0:
        raise DomainError("Hankel transform order must be nonnegative")
    if grid is None:
        if lam_max is None:
            lam_max = choose_cutoff(nu, profile)
        grid = spectral_grid(lam_max, panel_width, order)
    return SpectralProfile(grid, _transform_values(nu, profile, grid.nodes), float(nu))


@dataclass(frozen=True, eq=False)
class _LegendreTable:
    order: int
    matrix: np.ndarray
    ipow: np.ndarray


_TABLES = {}


def _legendre_table(order):
    # built once per order; read-only afterwards
    table = _TABLES.get(order)
    if table is None:
        x, w = np.polynomial.legendre.leggauss(order)
        k = np.arange(order)
        vander = np.polynomial.legendre.legvander(x, order - 1)  # (node, k)
        matrix = (vander * w[:, None]).T * ((2 * k + 1) / 2.0)[:, None]
        table = _LegendreTable(order, matrix, 1j**k)
        _TABLES[order] = table
    return table


def filon_weights(grid, omega):
    """Complex weights ``Q`` with ``sum(g * Q) = int g(lam) exp(i omega lam) d lam``.

    ``g`` is sampled on ``grid.nodes``. Per panel, the samples are mapped to
    Legendre coefficients, and each Legendre polynomial is integrated
    exactly against the exponential.
    """
    table = _legendre_table(grid.order)
    half = grid.half_widths
    k = np.arange(grid.order)
    moments = sc.spherical_jn(k[None, :], np.abs(omega) * half[:, None])
    if omega < 0:
        moments = moments * (-1.0) ** k
    per_coeff = (half * np.exp(1j * omega * grid.centers))[:, None] * (2.0 * table.ipow) * moments
    return per_coeff @ table.matrix


def _apply(values, weights):
    # contract the trailing (panel, node) axes
    return np.tensordot(values, weights, axes=([-2, -1], [0, 1]))


def _phase_integrals(values, grid, times, phase):
    """Oscillatory integrals of ``values`` (shape ``(..., P, n)``) for each time.

    Returns an array of shape ``(len(times), ...)``.
    """
    real = not np.iscomplexobj(values)
    out = []
    for ti in times:
        if phase == "exp":
            out.append(_apply(values, filon_weights(grid, -ti)))
            continue
        plus = _apply(values, filon_weights(grid, ti))
        if phase == "cos":
            out.append(plus.real if real else 0.5 * (plus + _apply(values, filon_weights(grid, -ti))))
        elif real:
            out.append(plus.imag)
        else:
            out.append((plus - _apply(values, filon_weights(grid, -ti))) / 2j)
    return np.array(out)


def oscillatory_quad(g, t, phase="sin"):
    """Filon-Legendre quadrature of ``g`` against ``sin(t lam)``, ``cos(t lam)`` or ``exp(-i t lam)``.

    Each panel's samples are converted to Legendre coefficients and the
    oscillatory factor is integrated exactly against them. ``t`` may be a
    scalar or an array.

    Parameters
    ----------
    g : SpectralProfile
    t : float or array_like
    phase : {"sin", "cos", "exp"}
    """
    if phase not in ("sin", "cos", "exp"):
        raise DomainError("phase must be 'sin', 'cos' or 'exp'")
    times = np.atleast_1d(np.asarray(t, dtype=float))
    out = _phase_integrals(g.values, g.grid, times, phase)
    return out[0] if np.ndim(t) == 0 else out


_R_BLOCK = 64
_RAD_PER_PANEL = 1.5
MAX_NODES = 4_000_000


def sine_evolution(nu, ftilde, t, r, time_derivative=False, radial_derivative=False):
    """Mode amplitude ``int sin(t lam) J_nu(lam r) f-tilde(lam) d lam``.

    Parameters
    ----------
    nu : float
        Bessel order of the mode.
    ftilde : SpectralProfile
        Hankel transform of the mode's initial velocity.
    t : float or array_like
        Times, ``t >= 0``.
    r : float or array_like
        Radii, ``r > 0``.
    time_derivative : bool
        Return ``d/dt`` instead (``lam cos(t lam)`` in place of ``sin``).
    radial_derivative : bool
        Return ``d/dr`` (``lam J_nu'(lam r)`` in place of ``J_nu``).

    Returns
    -------
    float or ndarray
        Shape ``(len(t), len(r))`` with scalar axes removed.
    """
    times = np.atleast_1d(np.asarray(t, dtype=float))
    radii = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(times < 0):
        raise DomainError("sine_evolution needs t >= 0")
    if np.any(~(radii > 0)):
        raise DomainError("sine_evolution needs r > 0")
    phase = "cos" if time_derivative else "sin"
    complex_data = np.iscomplexobj(ftilde.values)
    out = np.empty((times.size, radii.size), dtype=complex if complex_data else float)
    order = np.argsort(radii, kind="stable")
    width = float(np.max(np.diff(ftilde.grid.edges)))
    for start in range(0, radii.size, _R_BLOCK):
        idx = order[start : start + _R_BLOCK]
        # keep J(lam r) below about 1.5 radians per panel
        factor = max(1, int(np.ceil(width * radii[idx].max() / _RAD_PER_PANEL)))
        profile = ftilde.subdivided(factor)
        if profile.values.size > MAX_NODES:
            raise ConvergenceError(
                f"resolving r={radii[idx].max():g} needs {profile.values.size} spectral nodes "
                f"(budget {MAX_NODES})",
                achieved=float(width * radii[idx].max()),
            )
        weights = _evolution_weights(profile.grid, times, phase, complex_data)
        lam = profile.grid.nodes
        base = profile.values * lam if time_derivative else profile.values
        rb = radii[idx, None, None]
        kernel = lam * sc.jvp(nu, lam * rb) if radial_derivative else sc.jv(nu, lam * rb)
        g = base * kernel
        for i, w in enumerate(weights):
            val = _apply(g, w)
            if complex_data:
                out[i, idx] = val
            else:
                out[i, idx] = val.real if phase == "cos" else val.imag
    if np.ndim(r) == 0:
        out = out[:, 0]
    return out[0] if np.ndim(t) == 0 else out


def _evolution_weights(grid, times, phase, complex_data):
    plus = [filon_weights(grid, ti) for ti in times]
    if not complex_data:
        return plus
    # complex data: combine +t and -t so the trig factor is applied exactly
    minus = [filon_weights(grid, -ti) for ti in times]
    if phase == "cos":
        return [0.5 * (wp + wm) for wp, wm in zip(plus, minus)]
    return [(wp - wm) / 2j for wp, wm in zip(plus, minus)]
