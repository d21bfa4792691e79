"""Zero-energy contribution to the wave from a finite resolvent expansion.

A resolvent expansion near zero energy is a list of terms
``weight * lam**nu * log(b lam)**k``. Each term contributes
``weight / (2 pi)`` times a keyhole loop integral to the wave, and its
long-time behaviour follows from the log-power coefficients in
:mod:`wavetail.loopint`.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError
from .loopint import (
    K_MAX,
    ContourSpec,
    ModelIntegralSpec,
    TimeTerm,
    default_delta,
    loop_integral_numeric,
    time_expansion,
)

__all__ = [
    "ResolventTerm",
    "ZeroEnergyResult",
    "TailBound",
    "uz_exact",
    "uz_asymptotic",
    "evaluate_time_terms",
    "truncation_order",
    "terms_to_dicts",
    "terms_from_dicts",
]

NU_FLOOR = -2.0


@dataclass(frozen=True)
class ResolventTerm:
    """One term ``weight * lam**nu * log(b lam)**k`` of a cut-off resolvent expansion."""

    nu: float
    k: int = 0
    b: complex = 1.0 + 0j
    weight: complex = 1.0 + 0j

    def __post_init__(self):
        object.__setattr__(self, "b", complex(self.b))
        object.__setattr__(self, "weight", complex(self.weight))
        if self.nu < NU_FLOOR:
            raise DomainError(f"resolvent exponents below {NU_FLOOR} are not supported (nu={self.nu})")
        if int(self.k) != self.k or abs(self.k) > K_MAX:
            raise DomainError(f"log power must satisfy |k| <= {K_MAX}")
        object.__setattr__(self, "k", int(self.k))
        if self.b == 0:
            raise DomainError("branch constant b must be nonzero")


@dataclass(frozen=True)
class ZeroEnergyResult:
    t: float
    value: complex
    terms_used: int
    tail_bound: float = 0.0


@dataclass(frozen=True)
class TailBound:
    """Order of the contribution from a dropped tail of the expansion.

    The dropped part is ``O(t**-N)`` for every ``N < sup_order``.
    ``lemma_order`` is the largest integer ``N`` strictly below
    ``sup_order`` (one bounded derivative per power of ``1/t``).
    ``exact_zero`` marks an empty tail.
    """

    sup_order: float
    lemma_order: int
    exact_zero: bool = False

    def __call__(self, t):
        return 0.0 if self.exact_zero else t ** (-float(self.lemma_order))


@lru_cache(maxsize=8192)
def _loop_value(nu, k, b, t, c):
    spec = ModelIntegralSpec(nu, k, b, t)
    contour = ContourSpec(default_delta(b, t), c)
    return loop_integral_numeric(spec, contour)


def _sorted(terms):
    return sorted(terms, key=lambda term: (term.nu, term.k))


def uz_exact(terms, t, c=1.0):
    """Sum of the finite-keyhole integrals weighted by the expansion terms.

    ``value = (1/2 pi) sum_j weight_j * int_{gamma(delta, c)} exp(-i t lam)
    lam**nu_j log(b_j lam)**k_j d lam``. Terms are summed in ascending
    ``(nu, k)`` order.
    """
    total = 0j
    for term in _sorted(terms):
        total += term.weight * _loop_value(float(term.nu), term.k, term.b, float(t), float(c))
    return ZeroEnergyResult(float(t), total / (2 * math.pi), len(terms), 0.0)


def uz_asymptotic(terms, M=2):
    """Merged long-time expansion of the zero-energy contribution.

    Each term expands to ``M + 1`` log-power terms (a single exact term when
    ``k = 0``). Terms sharing ``(power, logpow)`` are summed and the result
    is sorted by slowest decay first: larger power, then larger log power.
    Terms with vanishing coefficient (nonnegative integer ``nu`` with
    ``k = 0``) are dropped.
    """
    merged = {}
    for term in _sorted(terms):
        spec = ModelIntegralSpec(term.nu, term.k, term.b, 1.0)
        expansion, _ = time_expansion(spec, M)
        for piece in expansion:
            key = (piece.power, piece.logpow)
            merged[key] = merged.get(key, 0j) + term.weight * piece.coeff / (2 * math.pi)
    ordered = sorted(merged.items(), key=lambda item: (-item[0][0], -item[0][1]))
    return [TimeTerm(coeff, power, logpow) for (power, logpow), coeff in ordered if coeff != 0]


def evaluate_time_terms(time_terms, t):
    """Sum a list of :class:`TimeTerm` at time(s) ``t``."""
    return sum(term(t) for term in time_terms)


def truncation_order(nu_min, k_max=0):
    """Decay order of a dropped expansion tail starting at exponent ``nu_min``.

    Integrating ``N`` times by parts on the circle ``|lam| = c`` gives
    ``O(t**-N)`` as long as ``N`` derivatives of the tail stay bounded near
    zero, which holds for every integer ``N < nu_min``. Pass
    ``nu_min=None`` for an empty tail. ``k_max`` (largest log power in the
    tail) does not move the bound, since the inequality is strict.
    """
    if nu_min is None or math.isinf(nu_min):
        return TailBound(math.inf, 0, exact_zero=True)
    if not nu_min > 0:
        raise DomainError("truncation_order requires nu_min > 0")
    return TailBound(float(nu_min), int(math.ceil(nu_min)) - 1)


def terms_to_dicts(terms):
    """Serialise terms to JSON-compatible dicts."""
    return [
        {
            "nu": term.nu,
            "k": term.k,
            "b": [term.b.real, term.b.imag],
            "weight": [term.weight.real, term.weight.imag],
        }
        for term in terms
    ]


def terms_from_dicts(records):
    """Inverse of :func:`terms_to_dicts`."""
    return [
        ResolventTerm(
            float(rec["nu"]),
            int(rec.get("k", 0)),
            complex(*rec.get("b", (1.0, 0.0))),
            complex(*rec.get("weight", (1.0, 0.0))),
        )
        for rec in records
    ]
