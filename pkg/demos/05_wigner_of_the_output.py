"""Phase-space picture of the output: two lobes plus negative fringes."""
import numpy as np

from catgate import GateConfig, PerfectCatSpec, output_wf_closed, perfect_cat_wf, wigner
from catgate.states import GridSpec

state = output_wf_closed(GateConfig.from_rho(0.5, s=0.2, gamma=0.289, y_m=4.77))
w = wigner(state.wavefunction)
print("W grid shape:", w.values.shape)
print("normalisation:", w.integral(), " purity:", w.purity())
print("most negative W:", w.values.min())

# the coordinate density peaks near the semiclassical copies at +-2.87
px = w.marginal_x()
left, right = w.x_axis < 0, w.x_axis > 0
print(f"lobes at x = {w.x_axis[left][np.argmax(px[left])]:.2f}, "
      f"{w.x_axis[right][np.argmax(px[right])]:.2f}")

# the ideal odd cat has W(0, 0) = -1/pi
cat = perfect_cat_wf(PerfectCatSpec(2.87, 0.0, 2.0, np.pi), GridSpec.symmetric(12, 4001))
print("pi * W_cat(0, 0) =", np.pi * wigner(cat).value_at(0, 0))
