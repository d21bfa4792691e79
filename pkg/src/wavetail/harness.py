"""Experiment runner: oracles against expansions over time grids, rate fits, verdicts.

Config documents are JSON with these keys (all optional except
``model.kind``)::

    {
      "model":  {"kind": "cone" | "ab" | "free2d", "alpha": 0.75, "beta": 0.3},
      "data":   {"center": 2.0, "width": 1.0, "amplitude": 1.0, "modes": [1]},
      "grid":   {"tmin": 10, "tmax": 400, "count": 16},
      "points": [[r, angle], ...],
      "tol":    {"rate": 0.05, "constant": 0.05, "log_band": 0.25},
      "out":    {"path": "results.csv"}
    }

The CSV written to ``out.path`` has the frozen header
``point_id,t,oracle_re,oracle_im,uz_re,uz_im,leading_re,leading_im,ratio_re,ratio_im``
with floats printed to 17 significant digits.
"""

import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import loopint, specfun
from ._parallel import parallel_map
from .errors import ConfigError, ConvergenceError, DegenerateSamplesError, WavetailError
from .expansion import ResolventTerm, uz_asymptotic, uz_exact
from .models import (
    ABModel,
    ConeModel,
    FreePlaneModel,
    ab_wave_oracle,
    cone_A10,
    cone_leading_constant,
    cone_wave_oracle,
    model_terms,
    mu_m,
)
from .spectral import bump_profile

__all__ = [
    "CSV_HEADER",
    "T_COMPARE_MIN",
    "ExperimentConfig",
    "RateFit",
    "Verdict",
    "ExperimentResult",
    "CheckResult",
    "SelftestReport",
    "fit_rate",
    "build_model",
    "run_experiment",
    "write_csv",
    "selftest",
]

CSV_HEADER = "point_id,t,oracle_re,oracle_im,uz_re,uz_im,leading_re,leading_im,ratio_re,ratio_im"
T_COMPARE_MIN = 10.0
MIN_SAMPLES = 8
LOG_POWERS = (-3, -2, -1, 0, 1)
SUPERPOLY_POWER = 5.0
ZERO_FLOOR = 1e-12
KINDS = ("cone", "ab", "free2d")


@dataclass
class ExperimentConfig:
    """Validated experiment description; see the module docstring for the JSON layout."""

    kind: str
    alpha: float = 0.75
    beta: float = 0.3
    data_center: float = 2.0
    data_width: float = 1.0
    data_amplitude: float = 1.0
    data_modes: list = None
    tmin: float = 10.0
    tmax: float = 400.0
    count: int = 16
    points: list = None
    tol_rate: float = 0.05
    tol_constant: float = 0.05
    tol_log_band: float = 0.25
    out_path: str = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"model.kind must be one of {KINDS}, got {self.kind!r}")
        if self.data_modes is None:
            self.data_modes = [1] if self.kind == "cone" else [0]
        self.data_modes = [int(m) for m in self.data_modes]
        if self.points is None:
            self.points = self._default_points()
        try:
            self.points = [[float(r), float(a)] for r, a in self.points]
        except (TypeError, ValueError) as exc:
            raise ConfigError("points must be a list of [r, angle] pairs") from exc
        if not self.points:
            raise ConfigError("at least one observation point is required")
        if not self.tmin >= 1:
            raise ConfigError("grid.tmin must be at least 1")
        if not self.tmax > self.tmin:
            raise ConfigError("grid.tmax must exceed grid.tmin")
        if int(self.count) != self.count or self.count < MIN_SAMPLES:
            raise ConfigError(f"grid.count must be an integer >= {MIN_SAMPLES}")
        self.count = int(self.count)
        for name in ("tol_rate", "tol_constant", "tol_log_band"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name.replace('_', '.', 1)} must be positive")
        if not self.data_width > 0 or self.data_center - self.data_width < 0:
            raise ConfigError("data bump must have positive width and lie in r >= 0")
        if self.kind == "cone":
            if not self.alpha > 0:
                raise ConfigError("model.alpha must be positive")
            for r, y in self.points:
                if not (r > 0 and 0 <= y <= math.pi / self.alpha):
                    raise ConfigError(f"point ({r}, {y}) is outside the sector")
        for r, _ in self.points:
            if not r > 0:
                raise ConfigError("observation radii must be positive")

    def _default_points(self):
        radii = [1.5, 1.75, 2.0, 2.25, 2.5]
        if self.kind == "cone":
            L = math.pi / self.alpha
            return [[r, L * f] for r, f in zip(radii, (0.3, 0.4, 0.5, 0.6, 0.7))]
        return [[r, a] for r, a in zip(radii, (0.0, 0.7, 1.4, 2.1, 2.8))]

    @property
    def times(self):
        return np.geomspace(self.tmin, self.tmax, self.count)

    @classmethod
    def from_dict(cls, doc):
        if not isinstance(doc, dict):
            raise ConfigError("config must be a JSON object")
        known = {"model", "data", "grid", "points", "tol", "out"}
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        allowed = {
            "model": {"kind", "alpha", "beta"},
            "data": {"center", "width", "amplitude", "modes"},
            "grid": {"tmin", "tmax", "count"},
            "tol": {"rate", "constant", "log_band"},
            "out": {"path"},
        }
        for name, keys in allowed.items():
            section = doc.get(name, {})
            if not isinstance(section, dict):
                raise ConfigError(f"{name} must be a JSON object")
            extra = set(section) - keys
            if extra:
                raise ConfigError(f"unknown keys in {name}: {sorted(extra)}")
        model = doc.get("model", {})
        data = doc.get("data", {})
        grid = doc.get("grid", {})
        tol = doc.get("tol", {})
        out = doc.get("out", {})
        if "kind" not in model:
            raise ConfigError("model.kind is required")
        kwargs = dict(kind=model["kind"], points=doc.get("points"), out_path=out.get("path"))
        pairs = [
            (model, "alpha", "alpha"),
            (model, "beta", "beta"),
            (data, "center", "data_center"),
            (data, "width", "data_width"),
            (data, "amplitude", "data_amplitude"),
            (data, "modes", "data_modes"),
            (grid, "tmin", "tmin"),
            (grid, "tmax", "tmax"),
            (grid, "count", "count"),
            (tol, "rate", "tol_rate"),
            (tol, "constant", "tol_constant"),
            (tol, "log_band", "tol_log_band"),
        ]
        for section, key, attr in pairs:
            if key in section:
                kwargs[attr] = section[key]
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def load(cls, path):
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(doc)

    def to_dict(self):
        return {
            "model": {"kind": self.kind, "alpha": self.alpha, "beta": self.beta},
            "data": {
                "center": self.data_center,
                "width": self.data_width,
                "amplitude": self.data_amplitude,
                "modes": list(self.data_modes),
            },
            "grid": {"tmin": self.tmin, "tmax": self.tmax, "count": self.count},
            "points": [list(p) for p in self.points],
            "tol": {"rate": self.tol_rate, "constant": self.tol_constant, "log_band": self.tol_log_band},
            "out": {"path": self.out_path},
        }


@dataclass(frozen=True)
class RateFit:
    """Fitted law ``value ~ constant * t**(-power) * log(t)**logpow``."""

    power: float
    logpow: int
    constant: complex
    residual: float

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return self.constant * t ** (-self.power) * np.log(t) ** self.logpow


def _check_samples(samples):
    try:
        t = np.array([s[0] for s in samples], dtype=float)
        v = np.array([s[1] for s in samples], dtype=complex)
    except (TypeError, IndexError, ValueError) as exc:
        raise DegenerateSamplesError("samples must be (t, value) pairs") from exc
    if t.size < MIN_SAMPLES:
        raise DegenerateSamplesError(f"need at least {MIN_SAMPLES} samples, got {t.size}")
    if not np.all(np.isfinite(t)) or np.any(t <= 1):
        raise DegenerateSamplesError("sample times must be finite and exceed 1")
    if t.max() / t.min() < 10 * (1 - 1e-12):
        raise DegenerateSamplesError("samples must span at least one decade in t")
    if not np.all(np.isfinite(v)) or np.any(v == 0):
        raise DegenerateSamplesError("sample values must be finite and nonzero")
    return t, v


def _lsq_power(log_t, y):
    design = np.stack([np.ones_like(log_t), -log_t], axis=1)
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    return float(coef[1]), float(np.sqrt(np.mean(resid**2)))


def fit_rate(samples, family="pure_power"):
    """Fit a decay law to ``(t, value)`` samples.

    ``pure_power`` regresses ``log|value|`` on ``log t``. ``power_log`` also
    subtracts ``q log log t`` for each integer ``q`` in ``[-3, 1]`` and keeps
    the ``q`` with the smallest residual. The constant is the complex mean
    of ``value * t**power * log(t)**(-q)``.

    Raises
    ------
    DegenerateSamplesError
        Fewer than 8 samples, less than a decade in ``t``, times not above
        1, or zero/non-finite values.
    """
    aliases = {"pure": "pure_power", "log": "power_log"}
    family = aliases.get(family, family)
    if family not in ("pure_power", "power_log"):
        raise ValueError(f"unknown fit family {family!r}")
    t, v = _check_samples(samples)
    log_t = np.log(t)
    log_v = np.log(np.abs(v))
    candidates = (0,) if family == "pure_power" else LOG_POWERS
    best = None
    for q in candidates:
        power, residual = _lsq_power(log_t, log_v - q * np.log(log_t))
        if best is None or residual < best[2]:
            best = (power, q, residual)
    power, q, residual = best
    constant = complex(np.mean(v * t**power * log_t ** (-q)))
    return RateFit(power, int(q), constant, residual)


@dataclass(frozen=True)
class Verdict:
    name: str
    point_id: int
    passed: bool
    measured: float
    expected: float
    tolerance: float
    detail: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        where = "all" if self.point_id < 0 else str(self.point_id)
        return (
            f"{status} {self.name} point={where} measured={self.measured:.6g} "
            f"expected={self.expected:.6g} tol={self.tolerance:g} {self.detail}".rstrip()
        )


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    rows: list
    verdicts: list
    fits: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures and all(v.passed for v in self.verdicts)

    @property
    def budget_failure(self):
        return any(isinstance(e, ConvergenceError) for _, e in self.failures)

    def csv_text(self):
        lines = [CSV_HEADER]
        for row in self.rows:
            pid, t, oracle, uz, lead = row
            ratio = oracle / lead if lead != 0 else complex(np.nan, np.nan)
            values = [t, oracle.real, oracle.imag, uz.real, uz.imag, lead.real, lead.imag, ratio.real, ratio.imag]
            lines.append(",".join([str(pid)] + [_fmt(x) for x in values]))
        return "\n".join(lines) + "\n"


def _fmt(x):
    x = float(x)
    if x == 0:
        return "0"  # folds -0.0 so output does not depend on signed zeros
    return format(x, ".17g")


def build_model(cfg):
    """Model instance described by ``cfg`` (bump data in each listed mode)."""
    profile = bump_profile(cfg.data_center, cfg.data_width, cfg.data_amplitude)
    data = [(m, profile) for m in cfg.data_modes]
    try:
        if cfg.kind == "cone":
            return ConeModel(cfg.alpha, data)
        if cfg.kind == "ab":
            return ABModel(cfg.beta, data)
        return FreePlaneModel(data)
    except WavetailError as exc:
        raise ConfigError(str(exc)) from exc


def _oracle(model, t, r, angle):
    if isinstance(model, ConeModel):
        return np.asarray(cone_wave_oracle(model, t, r, angle), dtype=complex)
    return np.asarray(ab_wave_oracle(model, t, r, angle), dtype=complex)


def _regime(cfg):
    """Predicted law at the observation points: (label, power, logpow)."""
    if cfg.kind == "cone":
        return "power", 1 + 2 * cfg.alpha, 0
    if cfg.kind == "free2d":
        return "power", 1.0, 0
    beta = cfg.beta
    if float(2 * beta).is_integer() and not float(beta).is_integer():
        return "superpoly", math.inf, 0
    if float(beta).is_integer():
        return "log", 1.0, -2
    return "power", 1 + 2 * mu_m(beta), 0


def _point_cell(model, cfg, point_id, point, times):
    r, angle = point
    oracle = _oracle(model, times, r, angle)
    terms, _ = model_terms(model, r, angle)
    uz = np.array([uz_exact(terms, t).value for t in times])
    leading_terms = uz_asymptotic(terms, M=2)
    lead_term = leading_terms[0] if leading_terms else None
    lead = np.array([lead_term(t) if lead_term else 0j for t in times], dtype=complex)
    return point_id, oracle, uz, lead


def run_experiment(cfg):
    """Run every observation point over the time grid and judge the predicted law.

    Cells are evaluated on a thread pool (``WAVETAIL_THREADS``) and reduced
    in ``(point_id, t)`` order. Verdicts only use ``t >= 10``. A point whose
    evaluation fails is recorded in ``failures`` and reported through a
    failing verdict; the other points are still emitted.
    """
    model = build_model(cfg)
    times = cfg.times

    def cell(item):
        pid, point = item
        try:
            return _point_cell(model, cfg, pid, point, times), None
        except WavetailError as exc:
            return None, (pid, exc)

    # transforms are built once, before the pool starts sharing the model
    for d in model.data:
        model.transform(d.mode)
    outcomes = parallel_map(cell, list(enumerate(cfg.points)))
    rows, verdicts, fits, failures = [], [], {}, []
    label, power, logpow = _regime(cfg)
    for outcome, failure in outcomes:
        if failure is not None:
            failures.append(failure)
            pid, exc = failure
            verdicts.append(Verdict("evaluation", pid, False, math.nan, math.nan, 0.0, f"{type(exc).__name__}: {exc}"))
            continue
        pid, oracle, uz, lead = outcome
        rows.extend((pid, float(t), complex(o), complex(u), complex(ld)) for t, o, u, ld in zip(times, oracle, uz, lead))
        mask = times >= T_COMPARE_MIN
        verdicts.extend(_judge(cfg, pid, times[mask], oracle[mask], lead[mask], label, power, logpow, fits))
    return ExperimentResult(cfg, rows, verdicts, fits, failures)


def _judge(cfg, pid, t, oracle, lead, label, power, logpow, fits):
    out = []
    if t.size < MIN_SAMPLES:
        return [Verdict("samples", pid, False, t.size, MIN_SAMPLES, 0, "too few samples with t >= 10")]
    samples = list(zip(t, oracle))
    if label == "superpoly":
        scale = ZERO_FLOOR * cfg.data_amplitude
        peak = float(np.max(np.abs(oracle)))
        if peak <= scale:
            out.append(Verdict("superpoly", pid, True, peak, scale, 0, "identically zero to quadrature precision"))
            return out
        try:
            fit = fit_rate(samples, "pure_power")
        except DegenerateSamplesError as exc:
            return [Verdict("superpoly", pid, False, math.nan, SUPERPOLY_POWER, 0, str(exc))]
        fits[pid] = fit
        out.append(Verdict("superpoly", pid, fit.power > SUPERPOLY_POWER, fit.power, SUPERPOLY_POWER, 0))
        return out
    try:
        fit = fit_rate(samples, "power_log" if label == "log" else "pure_power")
    except DegenerateSamplesError as exc:
        return [Verdict("rate", pid, False, math.nan, power, cfg.tol_rate, str(exc))]
    fits[pid] = fit
    out.append(Verdict("rate", pid, abs(fit.power - power) <= cfg.tol_rate, fit.power, power, cfg.tol_rate))
    if label == "log":
        out.append(Verdict("logpow", pid, fit.logpow == logpow, fit.logpow, logpow, 0))
        return out
    ratio = oracle[-1] / lead[-1] if lead[-1] != 0 else complex(np.nan)
    out.append(
        Verdict("constant", pid, bool(abs(ratio - 1) <= cfg.tol_constant), abs(ratio), 1.0, cfg.tol_constant)
    )
    if cfg.kind == "free2d":
        tu = t * oracle
        change = abs(tu[-1] / tu[-2] - 1)
        out.append(Verdict("t*u settles", pid, bool(change <= cfg.tol_constant), change, 0.0, cfg.tol_constant))
    return out


def write_csv(result, path=None):
    """Write the result table; returns the CSV text."""
    text = result.csv_text()
    target = path or result.config.out_path
    if target:
        with open(target, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    seconds: float
    detail: str = ""


@dataclass
class SelftestReport:
    checks: list

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def lines(self):
        return [
            f"{'PASS' if c.passed else 'FAIL'} {c.name} ({c.seconds * 1e3:.1f} ms){' ' + c.detail if c.detail else ''}"
            for c in self.checks
        ]


def _close(a, b, tol, rel=True):
    scale = max(abs(b), 1e-300) if rel else 1.0
    return abs(a - b) <= tol * scale


def _selftest_checks(gamma_func):
    rng = np.random.default_rng(12345)

    def reflection():
        z = rng.uniform(-9.5, 9.5, 100) + 1j * rng.uniform(-3, 3, 100)
        vals = np.array([gamma_func(x) * gamma_func(1 - x) for x in z]) * np.sin(np.pi * z) / np.pi
        err = float(np.max(np.abs(vals - 1)))
        return err <= 1e-10, f"max error {err:.2e}"

    def gamma_values():
        ok = _close(gamma_func(0.5), math.sqrt(math.pi), 1e-14) and _close(gamma_func(5.0), 24.0, 1e-14)
        return ok, ""

    def duplication():
        a = np.linspace(0.05, 4.95, 50)
        lhs = math.sqrt(math.pi) * np.array([gamma_func(1 + 2 * x) for x in a])
        rhs = 2 ** (2 * a) * np.array([gamma_func(0.5 + x) * gamma_func(1 + x) for x in a])
        err = float(np.max(np.abs(lhs / rhs - 1)))
        return err <= 1e-10, f"max error {err:.2e}"

    def polygamma_values():
        ok = _close(specfun.polygamma(0, 1.0), -np.euler_gamma, 1e-13)
        ok &= _close(specfun.polygamma(1, 1.0), math.pi**2 / 6, 1e-13)
        ok &= _close(specfun.polygamma(0, 3.0), -np.euler_gamma + 1.5, 1e-13)
        return bool(ok), ""

    def bessel_identities():
        x = 3.0
        j, y = specfun.bessel_j(1.7, x), specfun.bessel_y(1.7, x)
        jp = 0.5 * (specfun.bessel_j(0.7, x) - specfun.bessel_j(2.7, x))
        yp = 0.5 * (specfun.bessel_y(0.7, x) - specfun.bessel_y(2.7, x))
        ok = _close(j * yp - jp * y, 2 / (math.pi * x), 1e-9)
        ok &= _close(specfun.bessel_j(0.5, x), math.sqrt(2 / (math.pi * x)) * math.sin(x), 1e-13)
        ok &= _close(specfun.bessel_y(0.5, x), -math.sqrt(2 / (math.pi * x)) * math.cos(x), 1e-13)
        return bool(ok), ""

    def residues():
        worst = 0.0
        for t in (1.0, 5.0, 20.0):
            for nu, expected in ((-2, -t), (-1, -1j), (0, 0), (1, 0), (2, 0)):
                v = loopint.loop_integral_numeric(loopint.ModelIntegralSpec(nu, 0, 1.0, t)) / (2 * math.pi)
                worst = max(worst, abs(v - expected))
        return worst <= 1e-8, f"max error {worst:.2e}"

    def closed_form():
        ok = _close(loopint.loop_integral_closed(-2, 3.0), -2 * math.pi * 3.0, 1e-12)
        ok &= loopint.loop_integral_closed(0, 1.0) == 0
        ok &= _close(loopint.loop_integral_closed(-0.5, 1.0), 2 * math.sqrt(math.pi) * np.exp(-0.25j * math.pi), 1e-12)
        return bool(ok), ""

    def coefficients():
        ok = all(_close(loopint.asym_coeff(0, -1, b, 1), 2 * math.pi, 1e-8) for b in (1, -1j, 2 * np.exp(0.25j * math.pi)))
        ok &= loopint.asym_coeff(2, 1, 1.0, 0) == 0
        return bool(ok), ""

    def log_time():
        v = loopint.log_time_integral(20.0)
        return _close(v, -2 * math.pi / 20, 1e-6, rel=False), f"value {v:.10g}"

    def frak_j_law():
        worst = 0.0
        for L in (5.0, 10.0, 20.0):
            t = math.exp(L)
            worst = max(worst, abs(loopint.frak_J(-1j, t) * L / t - 1) * L)
        return worst <= 3, f"max |ratio-1|*log t = {worst:.3f}"

    def corollary():
        terms = [ResolventTerm(-2, 0, 1, 0.7), ResolventTerm(-1, 0, 1, 2 - 1j), ResolventTerm(1, 0, 1, 5.0)]
        ok = all(_close(uz_exact(terms, t).value, -t * 0.7 - 1j * (2 - 1j), 1e-8, rel=False) for t in (2.0, 11.0))
        return ok, ""

    def cone_prefactor():
        from .spectral import bump_profile as bump

        model = ConeModel(0.5, [(1, bump())])
        a10 = cone_A10(model, 1.0, math.pi) / model.mode(1).profile.moment(1.5)
        return _close(a10, 1j, 1e-12) and abs(cone_leading_constant(model)) < 1e-14, ""

    def fits():
        t = np.geomspace(10, 1000, 20)
        f1 = fit_rate(list(zip(t, 3 * t**-2.5)))
        f2 = fit_rate(list(zip(t, 2 * math.pi / (t * np.log(t) ** 2))), "power_log")
        ok = _close(f1.power, 2.5, 1e-10) and _close(f1.constant, 3, 1e-10) and f1.residual < 1e-10
        ok &= f2.logpow == -2 and _close(f2.power, 1.0, 1e-8)
        return bool(ok), ""

    def filon():
        from .spectral import SpectralProfile, oscillatory_quad, spectral_grid

        grid = spectral_grid(1.0, panel_width=0.125)
        one = SpectralProfile.from_function(np.ones_like, grid)
        lin = SpectralProfile.from_function(lambda x: x, grid)
        ok = True
        for t in (0.5, 7.0, 900.0):
            ok &= _close(oscillatory_quad(one, t), (1 - math.cos(t)) / t, 1e-10, rel=False)
            ok &= _close(oscillatory_quad(lin, t), (math.sin(t) - t * math.cos(t)) / t**2, 1e-10, rel=False)
        return bool(ok), ""

    return [
        ("gamma special values", gamma_values),
        ("gamma reflection identity", reflection),
        ("gamma duplication identity", duplication),
        ("polygamma classical values", polygamma_values),
        ("bessel wronskian and half-integer forms", bessel_identities),
        ("residue table", residues),
        ("hankel loop closed form values", closed_form),
        ("log-power coefficient values", coefficients),
        ("log time integral", log_time),
        ("frak_J law", frak_j_law),
        ("integer-exponent zero-energy sum", corollary),
        ("cone prefactor at alpha = 1/2", cone_prefactor),
        ("rate fit on exact families", fits),
        ("filon closed forms", filon),
    ]


def selftest(gamma_func=None):
    """Run the built-in identity checks; ``gamma_func`` allows fault injection.

    Returns
    -------
    SelftestReport
        One :class:`CheckResult` per check, with wall-clock timings.
    """
    gamma_func = gamma_func or specfun.gamma
    results = []
    for name, check in _selftest_checks(gamma_func):
        start = time.perf_counter()
        try:
            passed, detail = check()
        except Exception as exc:  # a crashing check is a failed check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(passed), time.perf_counter() - start, detail))
    return SelftestReport(results)


def config_summary(cfg):
    """Short JSON rendering of a config (for logs)."""
    return json.dumps(cfg.to_dict(), sort_keys=True)

