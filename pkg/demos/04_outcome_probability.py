"""How likely is the heralding outcome, and what squeezing maximises it."""
import numpy as np

from catgate import GateConfig, GateTemplate, probability_curve, success_probability
from catgate.analysis import probability_peak, squeezing_db

# the outcome density is a proper distribution
y, p = success_probability(GateConfig.from_rho(0.5, s=0.2, gamma=0.202), (-12, 130), 1421)
print("integral of P(y_m):", np.trapezoid(p, y))
print("most likely y_m:", y[np.argmax(p)])

# at fixed (gamma, y_m) the density has a maximum in the initial squeezing
pairs = [(0.115, 1.89), (0.202, 3.34), (0.289, 4.77)]
curve = probability_curve(GateTemplate.from_rho(0.5), pairs, (0.02, 1.0), 99)
for k, (g, ym) in enumerate(pairs):
    s, pk = probability_peak(curve, k)
    print(f"gamma={g} y_m={ym}: max P = {pk:.4f} at s = {s:.3f} ({squeezing_db(s):.2f} dB)")
