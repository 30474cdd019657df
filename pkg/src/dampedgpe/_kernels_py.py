"""Pure-numpy fallback for the RK4 stepping kernel.

Mirrors the compiled extension in dampedgpe._kernels; the two must produce
identical results (same arithmetic per grid point, same stage ordering).
The right-hand side is

    dpsi/dt = (lam - i) * (-0.5 lap(psi) + (V(x,t) + c(t)|psi|^2 - mu) psi)

with a Dirichlet (psi = 0 outside the grid) central-difference Laplacian.
V(x,t) = fac(t) * v_base with fac = 1 + eta*sin(drive_omega*t) while
t < t_off for the modulated harmonic trap and fac = 1 otherwise, and
c(t) = c_n + c_rate * t for linear nonlinearity ramps.
"""

import math

import numpy as np


def _rhs(psi, t, invdx2, v_base, c_n, c_rate, mu, lam_minus_i, modulated, eta, drive_omega, t_off):
    lap = np.empty_like(psi)
    lap[1:-1] = psi[2:] - 2.0 * psi[1:-1] + psi[:-2]
    lap[0] = psi[1] - 2.0 * psi[0]
    lap[-1] = psi[-2] - 2.0 * psi[-1]
    if modulated and t < t_off:
        fac = 1.0 + eta * math.sin(drive_omega * t)
    else:
        fac = 1.0
    c_t = c_n + c_rate * t
    dens = psi.real * psi.real + psi.imag * psi.imag
    return lam_minus_i * (-0.5 * invdx2 * lap + (fac * v_base + c_t * dens - mu) * psi)


def rk4_span(values, n_steps, t0, dt, dx, v_base, c_n, mu, lam,
             modulated=False, eta=0.0, drive_omega=0.0, t_off=0.0, c_rate=0.0):
    """Advance `values` by n_steps classical RK4 steps.

    Returns (state, completed) where completed < n_steps means non-finite
    samples appeared; `state` is then the last finite state.
    """
    cur = np.array(values, dtype=np.complex128)
    invdx2 = 1.0 / (dx * dx)
    lam_minus_i = lam - 1j
    half = 0.5 * dt
    args = (invdx2, v_base, c_n, c_rate, mu, lam_minus_i, modulated, eta, drive_omega, t_off)
    for k in range(n_steps):
        t = t0 + k * dt
        k1 = _rhs(cur, t, *args)
        k2 = _rhs(cur + half * k1, t + half, *args)
        k3 = _rhs(cur + half * k2, t + half, *args)
        k4 = _rhs(cur + dt * k3, t + dt, *args)
        nxt = cur + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        if not np.isfinite(nxt).all():
            return cur, k
        cur = nxt
    return cur, n_steps
