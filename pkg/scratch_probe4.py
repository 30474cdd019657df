"""Probe stability scan grid, ideal-gas spectrum resolution, eps2 oracle (not shipped)."""
import time

import numpy as np

import dampedgpe as d
from dampedgpe.ground_state import chemical_potential, thomas_fermi_state

# --- stability scan on a paper-scale grid ----------------------------------
print("stability scan probe, grid (129, 10), dt=1e-3")
g = d.make_grid(129, 10.0)
dt = 1e-3
products = [0.002, 0.005, 0.0075, 0.01, 0.015, 0.02, 0.03, 0.045, 0.07, 0.1]
for c in (0.0, 50.0, 100.0):
    for t_final in (5.0, 20.0):
        row = []
        psi0 = d.ho_eigenstate(0, g)
        mu = chemical_potential(psi0, c)
        for prod in products:
            lam = -prod / dt
            params = d.GpeParams(c_n=c, mu=mu, lam=lam)
            traj = d.evolve(psi0, t_final, dt, params, record_stride=1000,
                            store_snapshots=False, allow_unstable=True)
            row.append("S" if not traj.diverged else "X")
        # empirical threshold: geometric mean of last stable / first unstable
        stable = [p for p, r in zip(products, row) if r == "S"]
        unstable = [p for p, r in zip(products, row) if r == "X"]
        thr = np.sqrt(max(stable) * min(unstable)) if stable and unstable else float("nan")
        print(f"c={c:5.0f} t={t_final:4.0f}: {''.join(row)} threshold~{thr:.4f}")

# --- ideal-gas spectrum resolution ------------------------------------------
for n, xm in ((513, 10.0), (769, 8.0), (769, 10.0)):
    g2 = d.make_grid(n, xm)
    rep = d.relax_fixed_c(d.ho_eigenstate(0, g2), 0.0, lam=-2.0, dt=5e-4, t_max=10.0)
    t0 = time.time()
    spec = d.solve_modes(d.build_bdg_operator(rep.final_state, rep.mu, 0.0), 6)
    errs = [abs(m.energy - m.index) for m in spec.modes]
    print(f"ideal gas ({n},{xm}): errs={['%.1e' % e for e in errs]} eig wall={time.time()-t0:.0f}s")

# --- eps2(c=50) oracle: Richardson over (1025,12) and (2049,12) -------------
vals = {}
for n in (1025, 2049):
    g3 = d.make_grid(n, 12.0)
    gs = d.relax_fixed_c(thomas_fermi_state(g3, 8.89, 50.0), 50.0, lam=-2.0,
                         dt=2e-4 if n == 1025 else 5e-5, t_max=15.0)
    t0 = time.time()
    spec = d.solve_modes(d.build_bdg_operator(gs.final_state, gs.mu, 50.0), 3)
    vals[n] = spec.modes[1].energy
    print(f"eps2 ({n},12) = {vals[n]:.8f}  (eig wall={time.time()-t0:.0f}s)")
print(f"Richardson eps2 = {(4 * vals[2049] - vals[1025]) / 3:.8f}")
