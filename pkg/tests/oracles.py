"""Independent numerical oracles used to freeze expected values.

These deliberately use different numerics from the package: spectral
(split-step Fourier) imaginary-time propagation for ground states and
Richardson extrapolation over resolution for Bogoliubov energies.  Frozen
constants derived from them live next to the tests that assert against the
production code.
"""

import numpy as np


def imaginary_time_ground_state(c_n, n_points=4096, box=32.0, dtau=2e-4, tol=1e-13,
                                max_steps=400_000):
    """Spectral split-step imaginary-time relaxation in a harmonic trap.

    Returns (x, psi, mu) with psi unit-normalized (trapezoid) and mu from the
    GPE functional.  Periodic box large enough that the density at the edge
    underflows.
    """
    x = np.linspace(-box / 2, box / 2, n_points, endpoint=False)
    dx = x[1] - x[0]
    k = 2 * np.pi * np.fft.fftfreq(n_points, d=dx)
    v = 0.5 * x**2
    psi = np.exp(-0.5 * x**2).astype(np.complex128)
    psi /= np.sqrt(np.trapezoid(np.abs(psi) ** 2, dx=dx))
    half_kinetic = np.exp(-0.25 * k**2 * dtau)

    mu_old = np.inf
    for step in range(max_steps):
        psi = np.fft.ifft(half_kinetic * np.fft.fft(psi))
        psi *= np.exp(-(v + c_n * np.abs(psi) ** 2) * dtau)
        psi = np.fft.ifft(half_kinetic * np.fft.fft(psi))
        psi /= np.sqrt(np.trapezoid(np.abs(psi) ** 2, dx=dx))
        if step % 200 == 199:
            mu = _chemical_potential_spectral(psi, x, k, c_n)
            if abs(mu - mu_old) < tol * max(1.0, abs(mu)):
                break
            mu_old = mu
    psi = np.abs(psi)
    mu = _chemical_potential_spectral(psi.astype(np.complex128), x, k, c_n)
    return x, psi, mu


def _chemical_potential_spectral(psi, x, k, c_n):
    dx = x[1] - x[0]
    kinetic = np.trapezoid(
        np.real(np.conj(psi) * np.fft.ifft(0.5 * k**2 * np.fft.fft(psi))), dx=dx)
    dens = np.abs(psi) ** 2
    rest = np.trapezoid((0.5 * x**2 + c_n * dens) * dens, dx=dx)
    return float((kinetic + rest) / np.trapezoid(dens, dx=dx))


def density_width(x, psi):
    dx = x[1] - x[0]
    dens = np.abs(psi) ** 2
    n = np.trapezoid(dens, dx=dx)
    mean = np.trapezoid(x * dens, dx=dx) / n
    mean2 = np.trapezoid(x * x * dens, dx=dx) / n
    return float(np.sqrt(mean2 - mean**2))


def bessel_k1_quadrature(z, n=200_001):
    """K1 via its integral representation, int_0^inf e^{-z cosh t} cosh t dt."""
    upper = np.arccosh(np.log(1e280) / z) if z > 1e-280 else 50.0
    t = np.linspace(0.0, upper, n)
    return float(np.trapezoid(np.exp(-z * np.cosh(t)) * np.cosh(t), t))
