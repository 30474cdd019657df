"""Probe RK4 order, fixed-mu invariant, odd parity, conservation, backends (not shipped)."""
import os
import subprocess
import sys

import numpy as np
import scipy.linalg

import dampedgpe as d
from dampedgpe.dynamics import GpeParams, _laplacian
from dampedgpe.ground_state import thomas_fermi_state

g = d.make_grid(513, 12.0)

# --- RK4 global order on a c=0 analytic (discrete-eigenmode) test -----------
h0 = np.zeros((g.n_points, g.n_points))
idx = np.arange(g.n_points)
h0[idx, idx] = 2.0 / g.dx**2 * 0.5 + 0.5 * g.points**2
h0[idx[:-1], idx[:-1] + 1] = -0.5 / g.dx**2
h0[idx[1:], idx[1:] - 1] = -0.5 / g.dx**2
evals, evecs = scipy.linalg.eigh(h0)
phi0 = evecs[:, 0] / np.sqrt(np.trapezoid(evecs[:, 0] ** 2, dx=g.dx))
phi1 = evecs[:, 1] / np.sqrt(np.trapezoid(evecs[:, 1] ** 2, dx=g.dx))
psi0 = d.ComplexField(g, (phi0 + phi1) / np.sqrt(2))
mu = 0.0
t_end = 1.0
exact = (phi0 * np.exp(-1j * evals[0] * t_end) + phi1 * np.exp(-1j * evals[1] * t_end)) / np.sqrt(2)
errs = []
for dt in (4e-3, 2e-3, 1e-3):
    params = GpeParams(c_n=0.0, mu=mu, lam=0.0)
    traj = d.evolve(psi0, t_end, dt, params, record_stride=10**9, store_snapshots=False)
    err = np.sqrt(np.trapezoid(np.abs(traj.final_state.values - exact) ** 2, dx=g.dx))
    errs.append(err)
print("rk4 global errors:", ["%.3e" % e for e in errs],
      "ratios:", [errs[i] / errs[i + 1] for i in range(2)])

# --- single-step Richardson ratio on c=50, lam=-0.1 --------------------------
gs = d.relax_fixed_c(thomas_fermi_state(g, 8.89, 50.0), 50.0, lam=-2.0, dt=1e-3, t_max=15.0)
spec = d.solve_modes(d.build_bdg_operator(gs.final_state, gs.mu, 50.0), 3)
psi = d.seed_mode(gs.final_state, spec, 2, 0.3)
params = GpeParams(c_n=50.0, mu=gs.mu, lam=-0.1)


def nsteps(f, n, dt):
    vals = f.values
    from dampedgpe.dynamics import _span
    out, done = _span(vals, n, 0.0, dt, g, params)
    assert done == n
    return out


for dt in (2e-3, 1e-3):
    ref = nsteps(psi, 64, dt / 64)
    one = nsteps(psi, 1, dt)
    err1 = np.sqrt(np.trapezoid(np.abs(one - ref) ** 2, dx=g.dx))
    if dt == 2e-3:
        e_coarse = err1
    else:
        e_fine = err1
print("single-step errors:", e_coarse, e_fine, "ratio:", e_coarse / e_fine)

# --- relax_fixed_mu invariant ------------------------------------------------
for c_est, mu_in in ((40.0, 8.9198184), (50.0, 8.9198184)):
    rep = d.relax_fixed_mu(d.ho_eigenstate(0, g), mu_in, c_est, lam=-2.0, dt=1e-3, t_max=20.0)
    print(f"fixed_mu c_est={c_est}: conv={rep.converged} c_corr={rep.c_n_corrected:.6f} "
          f"res(renorm)={rep.residual_l2:.2e} t={rep.elapsed_sim_time}")

# --- odd parity ---------------------------------------------------------------
reps = {}
for start_n in (1, 3):
    rep = d.odd_parity_state(50.0, -2.0, start_n, g, dt=1e-3, t_max=30.0)
    reps[start_n] = rep
    jump, fl, fr = d.phase_jump_at_origin(rep.final_state)
    anti = rep.final_state.values + rep.final_state.values[::-1]
    print(f"odd start={start_n}: conv={rep.converged} t={rep.elapsed_sim_time} mu={rep.mu:.6f} "
          f"crossings={d.count_zero_crossings(rep.final_state)} jump={jump:.6f} "
          f"halves=({fl:.2e},{fr:.2e}) antisym={np.abs(anti).max():.1e}")
dist = np.sqrt(np.trapezoid(np.abs(
    np.abs(reps[1].final_state.values) - np.abs(reps[3].final_state.values)) ** 2, dx=g.dx))
print("start1 vs start3 |psi| L2 distance:", dist)

# --- lam=0 conservation --------------------------------------------------------
for c in (0.0, 50.0):
    base = gs.final_state if c else d.ho_eigenstate(0, g)
    vals = base.values * np.exp(0.05j * g.points)  # small boost breaks stationarity
    psi0 = d.ComplexField(g, vals / np.sqrt(d.norm_sq(d.ComplexField(g, vals))))
    params = GpeParams(c_n=c, mu=gs.mu if c else 0.5, lam=0.0)
    traj = d.evolve(psi0, 10.0, 1e-3, params, record_stride=500, store_snapshots=True)
    e0 = d.energy(traj.snapshots[0], params)
    efin = d.energy(traj.final_state, params)
    print(f"c={c}: norm drift={abs(traj.norms[-1]-traj.norms[0]):.2e} "
          f"energy rel drift={abs(efin-e0)/abs(e0):.2e}")

# --- parity conservation -------------------------------------------------------
psi0 = d.ho_eigenstate(0, g)
params = GpeParams(c_n=50.0, mu=8.9, lam=0.0)
traj = d.evolve(psi0, 5.0, 1e-3, params, record_stride=1000)
v = traj.final_state.values
print("parity violation:", np.abs(v - v[::-1]).max())

# --- backend equality ----------------------------------------------------------
code = '''
import numpy as np
import dampedgpe as d
from dampedgpe.dynamics import GpeParams
rng = np.random.default_rng(7)
g = d.make_grid(129, 8.0)
vals = rng.normal(size=129) + 1j*rng.normal(size=129)
vals[0] = vals[-1] = 0
psi = d.ComplexField(g, vals)
params = GpeParams(c_n=5.0, mu=1.3, lam=-0.2,
                   trap=d.TrapPotential.harmonic_modulated(0.1, 2.0, 3.0))
traj = d.evolve(psi, 1.0, 1e-3, params, record_stride=10**9, store_snapshots=False)
print(d.backend_name())
np.save("/tmp/backend_out.npy" if d.backend_name()=="cython" else "/tmp/backend_out_py.npy",
        traj.final_state.values)
'''
subprocess.run([sys.executable, "-c", code], check=True)
subprocess.run([sys.executable, "-c", code], check=True,
               env={**os.environ, "DAMPEDGPE_PURE_PYTHON": "1"})
a = np.load("/tmp/backend_out.npy")
b = np.load("/tmp/backend_out_py.npy")
print("backend max diff:", np.abs(a - b).max())
