"""The free plane: the log lam term of the resolvent gives a 1/t tail.

The limit of t u(t) at a fixed point equals minus the coefficient of
log lam in the m = 0 resolvent applied to the data, which is the plain
integral of f r dr.
"""

import numpy as np

from wavetail.models import FreePlaneModel, default_bump, free_plane_log_coefficient_fit, free_plane_wave_oracle


def main():
    bump = default_bump()
    model = FreePlaneModel([(0, bump)])
    times = 1000.0 / 2.0 ** np.arange(6)[::-1]
    tu = times * free_plane_wave_oracle(model, times, 2.0, 0.0).real
    for t, v in zip(times, tu):
        print(f"t = {t:8.2f}   t u = {v:.8f}")
    print(f"log coefficient fit: {free_plane_log_coefficient_fit(model, 2.0).real:.8f}")
    print(f"int f r dr:          {bump.moment(1):.8f}")


if __name__ == "__main__":
    main()
