"""Scratch probe for fig1/fig2 scenarios and criterion-5 decay rates (not shipped)."""
import time

import numpy as np

import dampedgpe as d
from dampedgpe.ground_state import thomas_fermi_state

g = d.make_grid(513, 12.0)

# --- criterion 5: small seeds at c=2, lam=-0.1 ------------------------------
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

# --- fig1/fig2 sweep at c=50 ------------------------------------------------
c = 50.0
t0 = time.time()
gs = d.relax_fixed_c(thomas_fermi_state(g, 8.89, c), c, lam=-2.0, dt=1e-3, t_max=15.0)
spec = d.solve_modes(d.build_bdg_operator(gs.final_state, gs.mu, c), 10)
eps2 = spec.modes[1].energy
print(f"gs c=50: mu={gs.mu:.6f} eps2={eps2:.6f} setup wall={time.time()-t0:.1f}s")

lambdas = (-0.03, -0.1, -0.25, -0.5)
rates, bg_amp, fit_rates = {}, {}, {}
for lam in lambdas:
    t0 = time.time()
    psi0 = d.seed_mode(gs.final_state, spec, 2, 0.5)
    params = d.GpeParams(c_n=c, mu=gs.mu, lam=lam)
    traj = d.evolve(psi0, t_final=30.0, dt=1e-3, params=params, record_stride=25)
    series = d.populations_along(traj, gs.final_state, spec, gs.mu)
    pop2 = series.population(2)
    rates[lam] = d.envelope_decay_rate(series.times, pop2)
    bg_amp[lam] = np.ptp(series.bg2)
    deltan = np.sqrt(
        np.maximum(series.bg2, 0) + series.populations.sum(axis=1))  # rough delta scale
    frac = series.residual_outside_basis / np.maximum(
        np.sqrt((series.populations * 1).sum(axis=1)), 1e-30)
    fit = d.fit_damped_sinusoid(traj.times, traj.widths)
    fit_rates[lam] = fit.decay_rate
    print(
        f"lam={lam}: pop2[0]={pop2[0]:.6f} rate={rates[lam]:.4f} bg2_ptp={bg_amp[lam]:.4f} "
        f"fit: A={fit.amplitude:.4f} decay={fit.decay_rate:.4f} nu={fit.frequency:.5f} "
        f"rms/A={fit.rms_residual/fit.amplitude:.3f} conv={fit.converged} "
        f"nu_err={abs(fit.frequency - eps2/(2*np.pi))/(eps2/(2*np.pi)):.4f} "
        f"outside_max={series.residual_outside_basis.max():.2e} wall={time.time()-t0:.1f}s"
    )
print("pop rates ordered:", [rates[l] for l in lambdas])
print("bg2 amplitude by lam:", {l: round(bg_amp[l], 4) for l in lambdas})
print("fit decay ratio -0.5/-0.03:", fit_rates[-0.5] / fit_rates[-0.03])
