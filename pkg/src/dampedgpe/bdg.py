"""Bogoliubov-de Gennes spectrum about a relaxed condensate.

The linearization of the GPE about a real condensate psi_g gives the block
eigenproblem

    [[ L,  M ],      L = -0.5 d^2/dx^2 + V + 2 c_n psi_g^2 - mu
     [-M, -L ]]      M = c_n psi_g^2

acting on (u, v), solved densely.  Retained modes are Bogoliubov-normalized,
int(|u|^2 - |v|^2) dx = 1, and explicitly orthogonalized against psi_g so
that the quasiparticle expansion of a wave function is unique.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .dynamics import TrapPotential
from .errors import ConfigurationError, EigensolverError
from .grid import ComplexField, Grid1D, inner, norm_sq, quad
from .ground_state import residual

#: Eigenvalues below this are treated as the numerically-zero gauge
#: (Goldstone) mode and excluded from the retained spectrum.
ENERGY_FLOOR = 1e-3

_CONDENSATE_RESIDUAL_MAX = 1e-4


@dataclass
class QuasiparticleMode:
    """One Bogoliubov mode: energy and the (u, v) amplitude pair."""

    index: int
    energy: float
    u: ComplexField
    v: ComplexField


@dataclass
class BdgSpectrum:
    """Retained positive-energy modes about a condensate, sorted by energy."""

    condensate: ComplexField
    mu: float
    c_n: float
    modes: list[QuasiparticleMode]

    @property
    def energies(self) -> np.ndarray:
        return np.array([m.energy for m in self.modes])


@dataclass
class BdgOperator:
    """Dense 2N x 2N real matrix representation plus its context."""

    matrix: np.ndarray
    condensate: ComplexField
    mu: float
    c_n: float
    trap: TrapPotential


def _second_derivative_matrix(grid: Grid1D) -> np.ndarray:
    n = grid.n_points
    d2 = np.zeros((n, n))
    idx = np.arange(n)
    d2[idx, idx] = -2.0
    d2[idx[:-1], idx[:-1] + 1] = 1.0
    d2[idx[1:], idx[1:] - 1] = 1.0
    return d2 / grid.dx**2


def build_bdg_operator(psi_g: ComplexField, mu: float, c_n: float,
                       trap: TrapPotential | None = None) -> BdgOperator:
    """Assemble the BdG block matrix about a converged real condensate."""
    trap = trap or TrapPotential.harmonic()
    values = psi_g.values
    if np.abs(values.imag).max() > 1e-6 * np.abs(values).max():
        raise ConfigurationError("condensate must be real (remove the global phase)")
    if abs(norm_sq(psi_g) - 1.0) > 1e-8:
        raise ConfigurationError("condensate must be unit-normalized")
    res = residual(psi_g, mu, c_n, trap)
    if res > _CONDENSATE_RESIDUAL_MAX:
        raise ConfigurationError(
            f"condensate residual {res:.3g} exceeds {_CONDENSATE_RESIDUAL_MAX:g}; "
            f"relax further before building the BdG operator"
        )

    grid = psi_g.grid
    dens = values.real**2
    ell = -0.5 * _second_derivative_matrix(grid)
    ell[np.diag_indices_from(ell)] += trap.base_table(grid) + 2.0 * c_n * dens - mu
    m_diag = c_n * dens

    n = grid.n_points
    mat = np.zeros((2 * n, 2 * n))
    mat[:n, :n] = ell
    mat[n:, n:] = -ell
    mat[:n, n:][np.diag_indices(n)] = m_diag
    mat[n:, :n][np.diag_indices(n)] = -m_diag
    return BdgOperator(matrix=mat, condensate=psi_g, mu=mu, c_n=c_n, trap=trap)


def _bogoliubov_norm(u: np.ndarray, v: np.ndarray, grid: Grid1D) -> float:
    return quad(np.abs(u) ** 2 - np.abs(v) ** 2, grid).real


def solve_modes(operator: BdgOperator, n_modes: int,
                energy_floor: float = ENERGY_FLOOR) -> BdgSpectrum:
    """Dense eigendecomposition; keep, normalize and sort the positive branch.

    Asserts the +/- spectral pairing, drops the near-zero gauge mode via
    energy_floor, Bogoliubov-normalizes each mode and projects (u, v)
    orthogonal to the condensate.
    """
    if n_modes < 1:
        raise ConfigurationError(f"n_modes must be >= 1, got {n_modes}")
    mat = operator.matrix
    try:
        eigvals, eigvecs = scipy.linalg.eig(mat)
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - rare
        raise EigensolverError(f"dense eigensolve failed for a {mat.shape[0]}x"
                               f"{mat.shape[0]} operator: {exc}") from exc

    real = eigvals.real
    keep = np.where((real > energy_floor) & (np.abs(eigvals.imag) < 1e-6))[0]
    if keep.size < n_modes:
        raise EigensolverError(
            f"only {keep.size} positive modes above the {energy_floor:g} floor; "
            f"{n_modes} requested"
        )
    order = keep[np.argsort(real[keep])][:n_modes]

    # Spectral symmetry: each retained energy must have a -energy partner.
    for i in order:
        if np.min(np.abs(eigvals + eigvals[i])) > 1e-8:
            raise EigensolverError(
                f"eigenvalue {real[i]:.6g} has no negative partner; "
                f"spectral pairing violated"
            )

    grid = operator.condensate.grid
    psi_g = operator.condensate
    n = grid.n_points
    modes = []
    for rank, i in enumerate(order, start=1):
        vec = eigvecs[:, i]
        if np.abs(vec.imag).max() > 1e-8 * np.abs(vec).max():
            raise EigensolverError("retained eigenvector is not real")
        u = vec[:n].real.astype(np.complex128)
        v = vec[n:].real.astype(np.complex128)
        s = _bogoliubov_norm(u, v, grid)
        if s <= 0:
            raise EigensolverError(
                f"positive-energy mode {rank} has non-positive Bogoliubov norm {s:.3g}"
            )
        u /= np.sqrt(s)
        v /= np.sqrt(s)
        # Fix the leftover sign freedom deterministically.
        if u[np.argmax(np.abs(u))].real < 0:
            u, v = -u, -v
        # Remove the small condensate admixture carried by finite-precision
        # eigenvectors; this preserves the Bogoliubov orthogonality relations.
        uf = ComplexField(grid, u)
        vf = ComplexField(grid, v)
        uf = ComplexField(grid, u - inner(psi_g, uf) * psi_g.values)
        vf = ComplexField(grid, v - inner(psi_g, vf) * psi_g.values)
        s = _bogoliubov_norm(uf.values, vf.values, grid)
        uf = uf.scaled(1.0 / np.sqrt(s))
        vf = vf.scaled(1.0 / np.sqrt(s))
        modes.append(QuasiparticleMode(index=rank, energy=float(real[i]), u=uf, v=vf))

    return BdgSpectrum(condensate=psi_g, mu=operator.mu, c_n=operator.c_n, modes=modes)


def check_orthogonality(spectrum: BdgSpectrum) -> float:
    """Worst violation of the Bogoliubov orthogonality relations.

    Checks int(u_i* u_j - v_i* v_j) = delta_ij and the symplectic relation
    int(u_i v_j - v_i u_j) = 0 over all mode pairs.
    """
    grid = spectrum.condensate.grid
    worst = 0.0
    for i, mi in enumerate(spectrum.modes):
        for j, mj in enumerate(spectrum.modes):
            ortho = quad(np.conj(mi.u.values) * mj.u.values
                         - np.conj(mi.v.values) * mj.v.values, grid)
            sympl = quad(mi.u.values * mj.v.values
                         - mi.v.values * mj.u.values, grid)
            worst = max(worst, abs(ortho - (1.0 if i == j else 0.0)), abs(sympl))
    return worst


def mode_parity(mode: QuasiparticleMode) -> int:
    """+1 for even u(x), -1 for odd; the grid is symmetric so flipping is exact."""
    u = mode.u.values
    even = np.linalg.norm(u + u[::-1])
    odd = np.linalg.norm(u - u[::-1])
    return 1 if even >= odd else -1
