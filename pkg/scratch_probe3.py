"""Re-probe after the frame fix (not shipped)."""
import numpy as np

import dampedgpe as d
from dampedgpe.ground_state import thomas_fermi_state

g = d.make_grid(513, 12.0)

# criterion 5 at c=2
c = 2.0
rep = d.relax_fixed_c(d.ho_eigenstate(0, g), c, lam=-2.0, dt=1e-3, t_max=15.0)
spec = d.solve_modes(d.build_bdg_operator(rep.final_state, rep.mu, c), 5)
lam = -0.1
for i in (1, 2, 3):
    psi0 = d.seed_mode(rep.final_state, spec, i, 1e-2)
    params = d.GpeParams(c_n=c, mu=rep.mu, lam=lam)
    traj = d.evolve(psi0, t_final=20.0, dt=1e-3, params=params, record_stride=50)
    series = d.populations_along(traj, rep.final_state, spec, rep.mu)
    rate = d.envelope_decay_rate(series.times, series.population(i))
    expect = 2 * abs(lam) * spec.modes[i - 1].energy
    print(f"crit5 c={c} mode {i}: rate={rate:.5f} 2|L|eps={expect:.5f} ratio={rate/expect:.4f}")

# criterion 10: free evolution phase tracking at c=50
c = 50.0
gs = d.relax_fixed_c(thomas_fermi_state(g, 8.89, c), c, lam=-2.0, dt=1e-3, t_max=15.0)
spec = d.solve_modes(d.build_bdg_operator(gs.final_state, gs.mu, c), 10)
eps2 = spec.modes[1].energy
b0 = 1e-2
psi0 = d.seed_mode(gs.final_state, spec, 2, b0)
params = d.GpeParams(c_n=c, mu=gs.mu, lam=0.0)
traj = d.evolve(psi0, t_final=5.0, dt=1e-3, params=params, record_stride=50)
series = d.populations_along(traj, gs.final_state, spec, gs.mu)
bt = np.array([a.b[1] for a in series.amplitudes])
phase_err = np.abs(np.unwrap(np.angle(bt)) - (-eps2 * series.times))
mag_err = np.abs(np.abs(bt) - b0) / b0
print(f"crit10: max phase err={phase_err.max():.2e} rad (1% budget={0.01*eps2*5:.3f}), "
      f"max rel mag err={mag_err.max():.2e}")

# fig1 after fix: bg ordering + rates + outside fraction
lambdas = (-0.03, -0.1, -0.25, -0.5)
print("\nfig1 sweep (seed 0.5):")
for lam in lambdas:
    psi0 = d.seed_mode(gs.final_state, spec, 2, 0.5)
    params = d.GpeParams(c_n=c, mu=gs.mu, lam=lam)
    traj = d.evolve(psi0, t_final=30.0, dt=1e-3, params=params, record_stride=25)
    series = d.populations_along(traj, gs.final_state, spec, gs.mu)
    pop2 = series.population(2)
    rate = d.envelope_decay_rate(series.times, pop2)
    print(f"lam={lam}: pop2[0]={pop2[0]:.8f} rate={rate:.4f} bg2_ptp={np.ptp(series.bg2):.4f} "
          f"outside_frac={series.basis_truncation_fraction():.4f}")

# fig2 linear-regime (seed 0.05): nu and decay ratio
print("\nfig2 small-seed fits:")
fits = {}
for lam in lambdas:
    psi0 = d.seed_mode(gs.final_state, spec, 2, 0.05)
    params = d.GpeParams(c_n=c, mu=gs.mu, lam=lam)
    traj = d.evolve(psi0, t_final=40.0, dt=1e-3, params=params, record_stride=25,
                    store_snapshots=False)
    fit = d.fit_damped_sinusoid(traj.times, traj.widths)
    fits[lam] = fit
    print(f"lam={lam}: nu={fit.frequency:.5f} vs {eps2/2/np.pi:.5f} "
          f"({(fit.frequency/(eps2/2/np.pi))-1:+.2%}) decay={fit.decay_rate:.4f} "
          f"rms/A={fit.rms_residual/fit.amplitude:.4f}")
print("decay ratio -0.5/-0.03:", fits[-0.5].decay_rate / fits[-0.03].decay_rate)
