"""Three regimes of a single Aharonov-Bohm pole.

* generic flux: power law t**(-1 - 2 mu), mu the distance to the nearest integer;
* half-odd flux: every mode has half-integer order and the wave vanishes
  near the pole once the front has passed (zero up to roundoff here);
* integer flux: a single pole is a gauge transform of the free plane,
  so the order-0 mode decays like 1/t.
"""

import numpy as np

from wavetail.harness import fit_rate
from wavetail.models import ABModel, ab_wave_oracle, default_bump, model_terms, mu_m


def main():
    bump = default_bump()
    r, theta = 2.0, 0.5
    for beta in (0.3, 0.5, 1.0):
        model = ABModel(beta, [(0, bump), (1, bump)])
        times = np.geomspace(20, 2000, 12)
        u = ab_wave_oracle(model, times, r, theta)
        peak = np.max(np.abs(u))
        _, tail = model_terms(model, r, theta)
        print(f"beta = {beta}: mu_m = {mu_m(beta):.2f}, max |u| on [20, 2000] = {peak:.3e}, zero-energy part exact zero: {tail.exact_zero}")
        if peak > 1e-12:
            pure = fit_rate(list(zip(times, u)))
            logfit = fit_rate(list(zip(times, u)), "power_log")
            print(f"    pure power fit {pure.power:.4f}; log-corrected fit power {logfit.power:.4f}, log power {logfit.logpow}")


if __name__ == "__main__":
    main()
