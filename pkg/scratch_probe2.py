"""Probe bg drift and small-seed frequencies (not shipped)."""
import numpy as np

import dampedgpe as d
from dampedgpe.ground_state import chemical_potential, thomas_fermi_state

g = d.make_grid(513, 12.0)
c = 50.0
gs = d.relax_fixed_c(thomas_fermi_state(g, 8.89, c), c, lam=-2.0, dt=1e-3, t_max=15.0)
spec = d.solve_modes(d.build_bdg_operator(gs.final_state, gs.mu, c), 10)
eps2 = spec.modes[1].energy
m2 = spec.modes[1]
u, v = m2.u.values.real, m2.v.values.real
m = np.trapezoid(u * u + v * v, dx=g.dx)
p = 2 * np.trapezoid(u * v, dx=g.dx)
print(f"c=50 mode2: eps={eps2:.6f} m={m:.4f} p={p:.4f} a={m+p:.4f} b={m-p:.4f}")

# chemical potential of the seeded state
for b in (0.5, 0.05):
    seeded = d.seed_mode(gs.final_state, spec, 2, b)
    print(f"seed b={b}: norm={d.norm_sq(seeded):.6f} "
          f"mu_inst={chemical_potential(seeded, c):.6f} (mu_g={gs.mu:.6f})")

# bg2 trajectories at seed 0.5
for lam in (-0.03, -0.5):
    psi0 = d.seed_mode(gs.final_state, spec, 2, 0.5)
    params = d.GpeParams(c_n=c, mu=gs.mu, lam=lam)
    traj = d.evolve(psi0, t_final=30.0, dt=1e-3, params=params, record_stride=250)
    series = d.populations_along(traj, gs.final_state, spec, gs.mu)
    with np.printoptions(precision=3, suppress=True):
        print(f"lam={lam} bg2(t):", series.bg2[::4])

# small-seed fitted frequencies per lambda
print("\nsmall seed b=0.05:")
for lam in (-0.03, -0.1, -0.25, -0.5):
    psi0 = d.seed_mode(gs.final_state, spec, 2, 0.05)
    params = d.GpeParams(c_n=c, mu=gs.mu, lam=lam)
    traj = d.evolve(psi0, t_final=40.0, dt=1e-3, params=params, record_stride=25)
    fit = d.fit_damped_sinusoid(traj.times, traj.widths)
    series = d.populations_along(traj, gs.final_state, spec, gs.mu)
    rate2 = d.envelope_decay_rate(series.times, series.population(2))
    print(f"lam={lam}: fit nu={fit.frequency:.5f} (eps2/2pi={eps2/2/np.pi:.5f}) "
          f"decay={fit.decay_rate:.4f} rms/A={fit.rms_residual/fit.amplitude:.4f} "
          f"pop2 rate={rate2:.4f} (2|L|eps2 m={2*abs(lam)*eps2*m:.4f})")
