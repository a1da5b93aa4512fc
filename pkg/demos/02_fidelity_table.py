"""Best cat fidelities for three splitters and three nonlinearities.

The copies are held at half-spacing 2.87; for each starting gamma the
nearest fidelity optimum is located and y_m follows from the spacing.
"""
from catgate import GateTemplate, REFERENCE_TABLE, refine_reference_cell

print(f"{'rho':>6} {'gamma':>8} {'y_m':>7} {'F':>7} {'listed F':>9}")
for rho, cells in REFERENCE_TABLE:
    t = GateTemplate.from_rho(rho, s=0.2)
    for g0, _, f_listed in cells:
        g, y, f = refine_reference_cell(t, g0, delta_q=2.87)
        print(f"{rho:6.3f} {g:8.5f} {y:7.3f} {f:7.4f} {f_listed:9.4f}")
