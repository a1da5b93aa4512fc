"""The gate output computed twice: Airy closed form and direct quadrature."""
import time

import numpy as np

from catgate import GateConfig, gate_grid, unnormalized_closed, unnormalized_integral

# vacuum signal, cubic phase resource squeezed to s = 0.2, 50:50-ish splitter
cfg = GateConfig.from_rho(0.5, s=0.2, gamma=0.289, y_m=4.77)
grid = gate_grid(cfg)
print("grid:", grid)

t = time.time()
closed = unnormalized_closed(cfg, grid.x)
print(f"closed form: {time.time() - t:.3f} s")

t = time.time()
direct = unnormalized_integral(cfg, grid.x)
print(f"quadrature:  {time.time() - t:.3f} s")

print("max |difference|:", np.abs(closed - direct).max())

# the squared norm is the outcome density P(y_m)
print("P(y_m) =", np.sum(np.abs(closed) ** 2) * grid.dx)
