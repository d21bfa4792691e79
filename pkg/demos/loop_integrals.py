"""Keyhole integrals and their long-time expansions.

The decay laws all come from one family of contour integrals

    I(t) = int_gamma exp(-i t lam) lam**nu log(b lam)**k d lam

taken around the branch cut on the negative imaginary axis. This script
compares quadrature with the closed form for k = 0, then shows how the
logarithmic family k = -1 approaches its 1 / (t log^2 t) law.
"""

import math

import numpy as np

from wavetail.loopint import (
    ModelIntegralSpec,
    frak_J,
    loop_integral_closed,
    loop_integral_numeric,
    time_expansion,
)


def closed_form_table():
    print("nu      t      quadrature                       closed form")
    for nu, t in [(-2, 3.0), (-1, 3.0), (-0.5, 2.0), (0.6, 5.0), (1.5, 10.0)]:
        num = loop_integral_numeric(ModelIntegralSpec(nu, 0, 1.0, t))
        closed = loop_integral_closed(nu, t)
        print(f"{nu:5.2f} {t:6.1f}  {num.real:+.10f}{num.imag:+.10f}j  {closed.real:+.10f}{closed.imag:+.10f}j")


def log_family():
    print("\nk = -1, nu = 0: exact integral against the M-term expansion")
    print("t          |I|               M=1 gap      M=3 gap")
    for t in np.geomspace(1e2, 1e5, 4):
        spec = ModelIntegralSpec(0, -1, 1.0, t)
        exact = loop_integral_numeric(spec)
        gaps = []
        for M in (1, 3):
            terms, _ = time_expansion(spec, M)
            gaps.append(abs(exact - sum(term(t) for term in terms)))
        print(f"{t:9.0f}  {abs(exact):.6e}   {gaps[0]:.3e}    {gaps[1]:.3e}")


def frak_j():
    print("\nfrak_J(-i, t) log t / t tends to 1")
    for L in (5, 10, 20, 40):
        t = math.exp(L)
        print(f"log t = {L:3d}: {(frak_J(-1j, t) * L / t).real:.6f}")


if __name__ == "__main__":
    closed_form_table()
    log_family()
    frak_j()
