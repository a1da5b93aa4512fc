"""Infidelity along the fixed-spacing line oscillates with gamma."""
import numpy as np

from catgate import GateTemplate, find_optimal_gamma, infidelity_slice

for rho in (0.5, np.sqrt(3) / 2):
    t = GateTemplate.from_rho(rho, s=0.2)
    sl = infidelity_slice(t, delta_q=2.87, gamma_range=(0.05, 0.35), resolution=301)
    minima = find_optimal_gamma(sl)
    print(f"rho = {rho:.3f}: {len(minima)} local minima")
    for g, v in minima[:8]:
        print(f"   gamma = {g:.4f}   1 - F = {v:.4f}")
    if len(minima) > 8:
        print("   ...")
