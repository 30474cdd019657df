"""Damped Gross-Pitaevskii right-hand side and fixed-step RK4 propagation.

The equation of motion is

    i dpsi/dt = (1 + i*lam) * (-0.5 d^2/dx^2 + V(x,t) + c_n |psi|^2 - mu) psi

with lam <= 0; lam = 0 recovers unitary GPE evolution in the rotating frame.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .errors import ConfigurationError, GridMismatchError, PropagationDivergedError
from .grid import ComplexField, Grid1D, inner, norm_sq, quad, width

#: Empirical stability limit on |lam| * dt for the damped RK4 integrator.
STABILITY_PRODUCT_LIMIT = 0.03


@dataclass(frozen=True)
class TrapPotential:
    """Trap descriptor: static harmonic, modulated harmonic, or tabulated.

    The modulated trap is V(x,t) = 0.5*(1 + eta*sin(drive_omega*t))*x^2 while
    t < t_off and the static harmonic trap afterwards; it is the knob used to
    pump energy into the breathing mode through the spring constant.
    """

    kind: str = "harmonic"
    eta: float = 0.0
    drive_omega: float = 0.0
    t_off: float = 0.0
    table: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in ("harmonic", "harmonic_modulated", "tabulated"):
            raise ConfigurationError(f"unknown trap kind {self.kind!r}")
        if self.eta < 0:
            raise ConfigurationError(f"modulation amplitude eta must be >= 0, got {self.eta}")
        if self.t_off < 0:
            raise ConfigurationError(f"t_off must be >= 0, got {self.t_off}")
        if self.kind == "tabulated":
            if self.table is None:
                raise ConfigurationError("tabulated trap requires a table")
            table = np.array(self.table, dtype=np.float64, copy=True)
            if not np.isfinite(table).all():
                raise ConfigurationError("tabulated trap contains non-finite values")
            table.setflags(write=False)
            object.__setattr__(self, "table", table)

    @classmethod
    def harmonic(cls) -> "TrapPotential":
        return cls(kind="harmonic")

    @classmethod
    def harmonic_modulated(cls, eta: float, drive_omega: float, t_off: float) -> "TrapPotential":
        return cls(kind="harmonic_modulated", eta=eta, drive_omega=drive_omega, t_off=t_off)

    @classmethod
    def tabulated(cls, values) -> "TrapPotential":
        return cls(kind="tabulated", table=np.asarray(values, dtype=np.float64))

    @property
    def is_modulated(self) -> bool:
        return self.kind == "harmonic_modulated"

    def base_table(self, grid: Grid1D) -> np.ndarray:
        """Static part of V on the grid (x^2/2 for both harmonic kinds)."""
        if self.kind == "tabulated":
            if self.table.shape[0] != grid.n_points:
                raise GridMismatchError(
                    f"trap table has {self.table.shape[0]} entries for a "
                    f"{grid.n_points}-point grid"
                )
            return self.table
        return 0.5 * grid.points**2

    def modulation_factor(self, t: float) -> float:
        if self.is_modulated and t < self.t_off:
            return 1.0 + self.eta * np.sin(self.drive_omega * t)
        return 1.0

    def values_at(self, grid: Grid1D, t: float) -> np.ndarray:
        return self.modulation_factor(t) * self.base_table(grid)


@dataclass(frozen=True)
class GpeParams:
    """Physical parameters of the damped GPE: nonlinearity, chemical potential,
    damping and trap."""

    c_n: float
    mu: float
    lam: float
    trap: TrapPotential = field(default_factory=TrapPotential.harmonic)

    def __post_init__(self):
        if not np.isfinite(self.c_n) or self.c_n < 0:
            raise ConfigurationError(f"c_n must be finite and >= 0, got {self.c_n}")
        if not np.isfinite(self.mu):
            raise ConfigurationError(f"mu must be finite, got {self.mu}")
        if not np.isfinite(self.lam) or self.lam > 0:
            raise ConfigurationError(
                f"lambda must be <= 0 (negative damps, 0 is unitary), got {self.lam}"
            )


@dataclass
class StabilityCheck:
    ok: bool
    product: float
    limit: float

    @property
    def message(self) -> str:
        verdict = "within" if self.ok else "exceeds"
        return (
            f"|lambda|*dt = {self.product:.4g} {verdict} the stability limit "
            f"{self.limit:.3g}"
        )


def stability_guard(lam: float, dt: float) -> StabilityCheck:
    """Check the empirical RK4 stability bound |lam|*dt <= 0.03.

    The bound is interpreted on the magnitude of lambda (lambda is negative
    for damping).
    """
    product = abs(lam) * dt
    return StabilityCheck(ok=product <= STABILITY_PRODUCT_LIMIT,
                          product=product, limit=STABILITY_PRODUCT_LIMIT)


def _laplacian(values: np.ndarray, dx: float) -> np.ndarray:
    out = np.empty_like(values)
    out[1:-1] = values[2:] - 2.0 * values[1:-1] + values[:-2]
    out[0] = values[1] - 2.0 * values[0]
    out[-1] = values[-2] - 2.0 * values[-1]
    out /= dx * dx
    return out


def apply_hamiltonian(psi: ComplexField, params: GpeParams, t: float = 0.0) -> ComplexField:
    """(-0.5 d^2/dx^2 + V(x,t) + c_n |psi|^2) psi with Dirichlet boundaries."""
    v = params.trap.values_at(psi.grid, t)
    values = psi.values
    h = -0.5 * _laplacian(values, psi.grid.dx)
    h += (v + params.c_n * np.abs(values) ** 2) * values
    return ComplexField(psi.grid, h)


def apply_damped_rhs(psi: ComplexField, params: GpeParams, t: float = 0.0) -> ComplexField:
    """dpsi/dt = -i (1 + i*lam) (H[psi] - mu) psi; reduces to the plain GPE
    (rotating frame) at lam = 0."""
    h = apply_hamiltonian(psi, params, t).values - params.mu * psi.values
    return ComplexField(psi.grid, (params.lam - 1j) * h)


def _check_guard(params: GpeParams, dt: float, allow_unstable: bool):
    if dt <= 0 or not np.isfinite(dt):
        raise ConfigurationError(f"dt must be positive and finite, got {dt}")
    guard = stability_guard(params.lam, dt)
    if not guard.ok and not allow_unstable:
        raise ConfigurationError(guard.message + "; pass allow_unstable=True to override")


def _span(values: np.ndarray, n_steps: int, t0: float, dt: float, grid: Grid1D,
          params: GpeParams, c_rate: float = 0.0):
    """Raw kernel call: advance n_steps from t0. Returns (values, completed)."""
    trap = params.trap
    return kernels.rk4_span(
        values, n_steps, t0, dt, grid.dx, trap.base_table(grid),
        params.c_n, params.mu, params.lam,
        trap.is_modulated, trap.eta, trap.drive_omega, trap.t_off,
        c_rate,
    )


def rk4_step(psi: ComplexField, t: float, dt: float, params: GpeParams,
             allow_unstable: bool = False) -> ComplexField:
    """One classical RK4 step of the damped GPE."""
    _check_guard(params, dt, allow_unstable)
    values, done = _span(psi.values, 1, t, dt, psi.grid, params)
    if done < 1:
        raise PropagationDivergedError(t, dt)
    return ComplexField(psi.grid, values)


@dataclass
class Trajectory:
    """Time-ordered record of an evolution: observables at every recorded time
    and, optionally, the field snapshots themselves."""

    times: np.ndarray
    norms: np.ndarray
    widths: np.ndarray
    snapshots: list[ComplexField] | None
    final_state: ComplexField
    diverged: bool = False
    t_diverged: float | None = None


def evolve(psi0: ComplexField, t_final: float, dt: float, params: GpeParams,
           record_stride: int = 1, store_snapshots: bool = True,
           allow_unstable: bool = False) -> Trajectory:
    """Propagate psi0 to t_final, recording observables every record_stride
    steps (t = 0 and the final state always included).

    Divergence does not raise: the partial trajectory is returned with
    `diverged` set and `t_diverged` holding the failing step time.
    """
    if t_final <= 0:
        raise ConfigurationError(f"t_final must be positive, got {t_final}")
    if record_stride < 1:
        raise ConfigurationError(f"record_stride must be >= 1, got {record_stride}")
    _check_guard(params, dt, allow_unstable)

    n_steps = max(1, int(round(t_final / dt)))
    record_steps = list(range(0, n_steps, record_stride))
    if record_steps[-1] != n_steps:
        record_steps.append(n_steps)

    grid = psi0.grid
    times, norms, widths = [], [], []
    snapshots = [] if store_snapshots else None

    values = np.array(psi0.values, dtype=np.complex128)
    step = 0
    diverged = False
    t_diverged = None

    def record(vals, t):
        f = ComplexField(grid, vals)
        times.append(t)
        norms.append(norm_sq(f))
        widths.append(width(f))
        if snapshots is not None:
            snapshots.append(f)
        return f

    last_field = record(values, 0.0)
    for target in record_steps[1:]:
        span = target - step
        values, done = _span(values, span, step * dt, dt, grid, params)
        step += done
        if done < span:
            diverged = True
            t_diverged = (step + 1) * dt
            break
        last_field = record(values, step * dt)

    return Trajectory(
        times=np.asarray(times), norms=np.asarray(norms), widths=np.asarray(widths),
        snapshots=snapshots, final_state=last_field,
        diverged=diverged, t_diverged=t_diverged,
    )


def energy(psi: ComplexField, params: GpeParams, t: float = 0.0) -> float:
    """GPE energy functional int(0.5|dpsi/dx|^2 + V|psi|^2 + 0.5 c_n |psi|^4) dx,
    evaluated with the same discrete Laplacian as the propagator."""
    grid = psi.grid
    values = psi.values
    kinetic = inner(psi, ComplexField(grid, -0.5 * _laplacian(values, grid.dx))).real
    density = np.abs(values) ** 2
    v = params.trap.values_at(grid, t)
    potential = quad(v * density, grid).real
    interaction = 0.5 * params.c_n * quad(density * density, grid).real
    return kinetic + potential + interaction
