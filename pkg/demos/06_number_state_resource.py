"""Same gate with a five-photon number state as the resource."""
import numpy as np

from catgate import (FockGateConfig, fidelity, fock_output_wf, map_fock, perfect_cat_wf,
                     unnormalized_integral)
from catgate.states import PerfectCatSpec

cfg = FockGateConfig.from_rho(0.5, n=5, y_m=0.0)
pair = map_fock(cfg)
print("copies at", pair.minus.q, pair.plus.q)

out = fock_output_wf(cfg)
cat = perfect_cat_wf(PerfectCatSpec(2.87, 0.0, 2.0, np.pi), out.wavefunction.grid)
print("P(y_m = 0) =", out.prob_density)
print("fidelity to the odd cat:", fidelity(cat, out.wavefunction))

# an odd number state leaves a node at the origin when y_m = 0
print("|psi~(0)| =", abs(unnormalized_integral(cfg, np.array([0.0]))[0]))
