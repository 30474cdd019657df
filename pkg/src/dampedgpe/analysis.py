"""Scalar post-processing: damped-sinusoid fits, envelope decay rates, and
the physical damping-strength estimate from the quantum-kinetic feeding rate.

Everything here is dimensionless except `w_plus`/`lambda_estimate`, which
evaluate the one dimensional formula of the package in SI units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.optimize
from scipy.constants import hbar as HBAR_SI
from scipy.constants import k as KB_SI

from .errors import ConfigurationError


@dataclass
class DampedSinusoidFit:
    """Parameters of A exp(-decay_rate t) sin(2 pi nu t + phi) + B."""

    amplitude: float
    decay_rate: float
    frequency: float
    phase: float
    offset: float
    rms_residual: float
    converged: bool

    def model(self, t: np.ndarray) -> np.ndarray:
        return damped_sinusoid(t, self.amplitude, self.decay_rate,
                               self.frequency, self.phase, self.offset)

    def as_record(self) -> dict:
        return {
            "amplitude": self.amplitude,
            "decay_rate": self.decay_rate,
            "frequency": self.frequency,
            "phase": self.phase,
            "offset": self.offset,
            "rms_residual": self.rms_residual,
            "converged": self.converged,
        }


def damped_sinusoid(t, amplitude, decay_rate, frequency, phase, offset):
    return amplitude * np.exp(-decay_rate * t) * np.sin(2.0 * np.pi * frequency * t + phase) + offset


def _envelope_points(times, values):
    """Local maxima of |values|; the series itself when it has none."""
    mag = np.abs(values)
    interior = (mag[1:-1] >= mag[:-2]) & (mag[1:-1] >= mag[2:])
    idx = np.where(interior)[0] + 1
    if idx.size < 3:
        return times, mag
    return times[idx], mag[idx]


def _initial_guess(times, values):
    offset = float(np.mean(values))
    detrended = values - offset

    # Dominant discrete-spectrum peak, excluding the zero-frequency bin.
    spectrum = np.abs(np.fft.rfft(detrended))
    freqs = np.fft.rfftfreq(len(times), d=times[1] - times[0])
    peak = 1 + int(np.argmax(spectrum[1:]))
    nu = max(float(freqs[peak]), freqs[1] * 0.5)

    # Envelope decay from a log-linear regression on the local maxima.
    env_t, env = _envelope_points(times, detrended)
    good = env > 1e-300
    if good.sum() >= 2:
        slope, intercept = np.polyfit(env_t[good], np.log(env[good]), 1)
        decay = max(-slope, 0.0)
    else:
        decay = 0.0

    # Given (offset, nu, decay), amplitude and phase are a linear problem:
    # y - B = e^{-decay t} (P sin + Q cos).
    damp = np.exp(-decay * times)
    basis = np.column_stack([damp * np.sin(2 * np.pi * nu * times),
                             damp * np.cos(2 * np.pi * nu * times)])
    (p, q), *_ = np.linalg.lstsq(basis, detrended, rcond=None)
    amplitude = float(np.hypot(p, q))
    phase = float(np.arctan2(q, p))
    return amplitude, decay, nu, phase, offset


def fit_damped_sinusoid(times, values, initial_guess=None) -> DampedSinusoidFit:
    """Nonlinear least-squares fit of a damped sinusoid.

    Seeds the offset from the mean, the frequency from the dominant spectral
    peak and the decay from a log-envelope regression, then refines with
    Levenberg-Marquardt until the relative parameter change drops below 1e-8
    (at most 200 iterations).
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if times.size != values.size:
        raise ConfigurationError("times and values must have the same length")
    if times.size < 20:
        raise ConfigurationError(f"need at least 20 samples, got {times.size}")
    if np.ptp(values) <= 1e-300:
        raise ConfigurationError("cannot fit a constant series")

    p0 = np.asarray(initial_guess if initial_guess is not None
                    else _initial_guess(times, values), dtype=float)

    def resid(p):
        return damped_sinusoid(times, *p) - values

    result = scipy.optimize.least_squares(
        resid, p0, method="lm", xtol=1e-8, ftol=1e-12, gtol=1e-12, max_nfev=200 * 6
    )
    amplitude, decay, nu, phase, offset = result.x

    # Canonical form: positive amplitude and frequency, phase in (-pi, pi].
    if nu < 0:
        nu, phase = -nu, -phase
    if amplitude < 0:
        amplitude, phase = -amplitude, phase + np.pi
    phase = math.remainder(phase, 2 * np.pi)
    if phase <= -np.pi:
        phase += 2 * np.pi

    rms = float(np.sqrt(np.mean(result.fun**2)))
    converged = bool(result.success) and nu > 0 and np.isfinite(result.x).all()
    return DampedSinusoidFit(
        amplitude=float(amplitude), decay_rate=float(decay), frequency=float(nu),
        phase=float(phase), offset=float(offset), rms_residual=rms,
        converged=converged,
    )


def envelope_decay_rate(times, populations) -> float:
    """Exponential decay rate of a positive series from its log envelope.

    Samples at or below 1e-12 are dropped first (log floor); the envelope is
    then the series of local maxima, or the surviving series itself when it
    has too few.  Returns the positive rate r of envelope ~ e^{-r t}.
    """
    times = np.asarray(times, dtype=float)
    populations = np.asarray(populations, dtype=float)
    if times.size < 10:
        raise ConfigurationError(f"need at least 10 samples, got {times.size}")
    usable = populations > 1e-12
    if usable.sum() < 2:
        raise ConfigurationError("series has no usable samples above 1e-12")
    env_t, env = _envelope_points(times[usable], populations[usable])
    slope, _ = np.polyfit(env_t, np.log(env), 1)
    return float(-slope)


# ---------------------------------------------------------------------------
# Modified Bessel function K1 and the quantum-kinetic feeding rate.
# ---------------------------------------------------------------------------

_EULER_GAMMA = 0.5772156649015328606


def _k1_series(z: float) -> float:
    # Ascending series: K1 = ln(z/2) I1(z) + 1/z - (1/2) sum_k
    # [psi(k+1)+psi(k+2)] (z/2)^{2k+1} / (k! (k+1)!).
    half = 0.5 * z
    log_half = math.log(half)
    term_i1 = half  # (z/2)^{2k+1}/(k!(k+1)!) at k = 0
    i1 = term_i1
    psi_a = -_EULER_GAMMA        # psi(1)
    psi_b = 1.0 - _EULER_GAMMA   # psi(2)
    corr = (psi_a + psi_b) * term_i1
    k = 0
    while True:
        k += 1
        term_i1 *= half * half / (k * (k + 1))
        psi_a += 1.0 / k
        psi_b += 1.0 / (k + 1)
        i1 += term_i1
        new = (psi_a + psi_b) * term_i1
        corr += new
        if abs(new) < 1e-18 * abs(corr) or k > 60:
            break
    return log_half * i1 + 1.0 / z - 0.5 * corr


def _k1_continued_fraction(z: float) -> float:
    # Steed/Lentz evaluation of the large-argument continued fraction for
    # K_mu at mu = 0, then the recurrence K1 = K0 (z + 1/2 - h)/z.
    eps = 1e-16
    a1 = 0.25  # 0.25 - mu^2 at mu = 0
    b = 2.0 * (1.0 + z)
    d = 1.0 / b
    h = delh = d
    q1 = 0.0
    q2 = 1.0
    a = -a1
    q = c = a1
    s = 1.0 + q * delh
    for i in range(1, 20000):
        a -= 2 * i
        c = -a * c / (i + 1.0)
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < eps:
            break
    h = a1 * h
    k0 = math.sqrt(math.pi / (2.0 * z)) * math.exp(-z) / s
    return k0 * (z + 0.5 - h) / z


def bessel_k1(z: float) -> float:
    """Modified Bessel function of the second kind, order 1.

    Ascending series below z = 2, continued fraction above; relative accuracy
    better than 1e-8 over z in [1e-3, 50].
    """
    if not np.isfinite(z) or z <= 0:
        raise ConfigurationError(f"bessel_k1 requires z > 0, got {z}")
    if z <= 2.0:
        return _k1_series(float(z))
    return _k1_continued_fraction(float(z))


@dataclass(frozen=True)
class WPlusParams:
    """SI inputs for the condensate-feeding rate W+.

    scattering_length in meters, temperature in kelvin, mu and mu_n in
    joules, mass in kilograms, trap_omega in rad/s.
    """

    scattering_length: float
    temperature: float
    mu: float
    mu_n: float
    mass: float
    trap_omega: float

    def __post_init__(self):
        for name in ("scattering_length", "temperature", "mu", "mu_n", "mass", "trap_omega"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise ConfigurationError(f"{name} must be positive and finite, got {value}")


def w_plus(p: WPlusParams) -> float:
    """Rate (1/s) at which thermal atoms feed the condensate band:

        W+ = 4 m (a kT)^2 / (pi hbar^3) * e^{2 mu / kT} * (mu_n/kT) K1(mu_n/kT)
    """
    kt = KB_SI * p.temperature
    exponent = 2.0 * p.mu / kt
    if exponent > 200.0:
        raise ConfigurationError(
            f"mu/kT = {0.5 * exponent:.3g} would overflow e^(2 mu/kT); "
            f"check the parameter file"
        )
    z = p.mu_n / kt
    prefactor = 4.0 * p.mass * (p.scattering_length * kt) ** 2 / (math.pi * HBAR_SI**3)
    return prefactor * math.exp(exponent) * z * bessel_k1(z)


@dataclass
class LambdaEstimate:
    """Dimensionless damping strength -W+/omega and the 1/W+ damping time."""

    lam: float
    damping_time_s: float


def lambda_estimate(w_plus_rate: float, trap_omega: float) -> LambdaEstimate:
    """Convert a feeding rate and trap frequency into the damping parameter."""
    if w_plus_rate < 0 or trap_omega <= 0:
        raise ConfigurationError("w_plus_rate must be >= 0 and trap_omega > 0")
    lam = -w_plus_rate / trap_omega
    damping_time = math.inf if w_plus_rate == 0 else 1.0 / w_plus_rate
    return LambdaEstimate(lam=lam, damping_time_s=damping_time)
