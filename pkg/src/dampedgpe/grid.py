"""Spatial grid, complex fields, inner products and basic observables.

Everything in this package is dimensionless in harmonic oscillator units:
hbar = m = omega = 1, lengths in sqrt(hbar/(m*omega)), times in 1/omega,
energies in hbar*omega.  ``HO_UNITS`` records the convention for output
metadata; no module-internal quantity carries a dimension.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import eval_hermite, gammaln

from .errors import ConfigurationError, GridMismatchError

HO_UNITS = {
    "hbar": 1.0,
    "mass": 1.0,
    "trap_omega": 1.0,
    "length_unit": "sqrt(hbar/(m*omega))",
    "time_unit": "1/omega",
    "energy_unit": "hbar*omega",
}

HO_EIGENSTATE_N_MAX = 12


@dataclass(frozen=True, eq=False)
class Grid1D:
    """Uniform symmetric grid on [-x_max, x_max] including x = 0.

    Immutable after creation; build through :func:`make_grid`.
    """

    n_points: int
    x_max: float
    dx: float
    points: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, Grid1D):
            return NotImplemented
        return self.n_points == other.n_points and self.x_max == other.x_max

    def __hash__(self):
        return hash((self.n_points, self.x_max))


def make_grid(n_points: int, x_max: float) -> Grid1D:
    """Build a symmetric uniform grid with an odd number of points.

    Odd n_points guarantees a sample exactly at x = 0, which the parity
    and phase-jump diagnostics rely on.
    """
    if not isinstance(n_points, (int, np.integer)):
        raise ConfigurationError(f"n_points must be an integer, got {n_points!r}")
    if n_points < 3:
        raise ConfigurationError(f"n_points must be >= 3, got {n_points}")
    if n_points % 2 == 0:
        raise ConfigurationError(
            f"n_points must be odd so that x = 0 is a grid point, got {n_points}"
        )
    if not np.isfinite(x_max) or x_max <= 0:
        raise ConfigurationError(f"x_max must be positive and finite, got {x_max}")

    n_points = int(n_points)
    x_max = float(x_max)
    dx = 2.0 * x_max / (n_points - 1)
    half = np.arange(n_points // 2 + 1) * dx
    points = np.concatenate([-half[:0:-1], half])  # exactly antisymmetric
    points.setflags(write=False)
    return Grid1D(n_points=n_points, x_max=x_max, dx=dx, points=points)


class ComplexField:
    """Complex wave function sampled on a :class:`Grid1D`.

    Value-semantic snapshot: the sample array is copied on construction and
    marked read-only, so fields can be stored in trajectories and shared
    across threads without aliasing surprises.
    """

    __slots__ = ("grid", "values")

    def __init__(self, grid: Grid1D, values):
        values = np.array(values, dtype=np.complex128, copy=True)
        if values.ndim != 1 or values.shape[0] != grid.n_points:
            raise GridMismatchError(
                f"field has {values.shape} values for a grid of {grid.n_points} points"
            )
        if not np.isfinite(values).all():
            raise ValueError("field contains non-finite samples")
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("ComplexField is immutable")

    def with_values(self, values) -> "ComplexField":
        return ComplexField(self.grid, values)

    def scaled(self, factor: complex) -> "ComplexField":
        return ComplexField(self.grid, self.values * factor)


def _require_same_grid(f: ComplexField, g: ComplexField) -> Grid1D:
    if f.grid is not g.grid and f.grid != g.grid:
        raise GridMismatchError(
            f"fields live on different grids: "
            f"({f.grid.n_points}, {f.grid.x_max}) vs ({g.grid.n_points}, {g.grid.x_max})"
        )
    return f.grid


def quad(samples: np.ndarray, grid: Grid1D) -> complex:
    """Trapezoidal quadrature of samples over the grid."""
    return np.trapezoid(samples, dx=grid.dx)


def inner(f: ComplexField, g: ComplexField) -> complex:
    """Trapezoidal approximation of the L2 inner product int conj(f) g dx."""
    grid = _require_same_grid(f, g)
    return complex(quad(np.conj(f.values) * g.values, grid))


def norm_sq(f: ComplexField) -> float:
    """Squared L2 norm int |f|^2 dx.

    The imaginary part of inner(f, f) vanishes identically; it is asserted
    below 1e-12 and discarded.
    """
    z = inner(f, f)
    if abs(z.imag) > 1e-12 * max(1.0, abs(z.real)):
        raise ArithmeticError(f"norm_sq produced imaginary part {z.imag:g}")
    return z.real


def width(f: ComplexField) -> float:
    """Density-weighted standard deviation of position.

    sqrt(<x^2> - <x>^2) with averages taken against |f|^2 / norm_sq(f).
    """
    n = norm_sq(f)
    if n <= 0.0:
        raise ValueError("width of a zero-norm field is undefined")
    x = f.grid.points
    density = np.abs(f.values) ** 2
    mean_x = quad(x * density, f.grid).real / n
    mean_x2 = quad(x * x * density, f.grid).real / n
    return float(np.sqrt(max(mean_x2 - mean_x * mean_x, 0.0)))


def ho_eigenstate(n: int, grid: Grid1D) -> ComplexField:
    """Harmonic-oscillator eigenstate phi_n sampled and unit-normalized on the grid.

    Parity is (-1)^n. Supported for 0 <= n <= HO_EIGENSTATE_N_MAX.
    """
    if not 0 <= n <= HO_EIGENSTATE_N_MAX:
        raise ConfigurationError(
            f"ho_eigenstate supports 0 <= n <= {HO_EIGENSTATE_N_MAX}, got {n}"
        )
    x = grid.points
    log_norm = -0.5 * (n * np.log(2.0) + gammaln(n + 1) + 0.5 * np.log(np.pi))
    values = np.exp(log_norm - 0.5 * x * x) * eval_hermite(n, x)
    f = ComplexField(grid, values.astype(np.complex128))
    return f.scaled(1.0 / np.sqrt(norm_sq(f)))
