"""1D damped Gross-Pitaevskii toolkit.

Simulates condensate dynamics under the phenomenologically damped GPE,
relaxes eigenstates with the same equation, solves the Bogoliubov-de Gennes
spectrum about them, and tracks quasiparticle populations by projection.
"""

from ._backend import backend_name
from .analysis import (
    DampedSinusoidFit,
    LambdaEstimate,
    WPlusParams,
    bessel_k1,
    envelope_decay_rate,
    fit_damped_sinusoid,
    lambda_estimate,
    w_plus,
)
from .bdg import (
    BdgSpectrum,
    QuasiparticleMode,
    build_bdg_operator,
    check_orthogonality,
    mode_parity,
    solve_modes,
)
from .dynamics import (
    GpeParams,
    STABILITY_PRODUCT_LIMIT,
    Trajectory,
    TrapPotential,
    apply_damped_rhs,
    apply_hamiltonian,
    energy,
    evolve,
    rk4_step,
    stability_guard,
)
from .errors import (
    ConfigurationError,
    DampedGpeError,
    EigensolverError,
    GridMismatchError,
    PropagationDivergedError,
)
from .grid import (
    HO_UNITS,
    ComplexField,
    Grid1D,
    ho_eigenstate,
    inner,
    make_grid,
    norm_sq,
    width,
)
from .ground_state import (
    RelaxationReport,
    adiabatic_ramp,
    chemical_potential,
    count_zero_crossings,
    odd_parity_state,
    phase_flatness,
    phase_jump_at_origin,
    relax_fixed_c,
    relax_fixed_mu,
    residual,
    thomas_fermi_state,
)
from .projection import (
    ModeAmplitudes,
    PopulationSeries,
    populations_along,
    project,
    seed_mode,
)

__version__ = "0.1.0"

__all__ = [
    "BdgSpectrum",
    "ComplexField",
    "ConfigurationError",
    "DampedGpeError",
    "DampedSinusoidFit",
    "EigensolverError",
    "GpeParams",
    "Grid1D",
    "GridMismatchError",
    "HO_UNITS",
    "LambdaEstimate",
    "ModeAmplitudes",
    "PopulationSeries",
    "PropagationDivergedError",
    "QuasiparticleMode",
    "RelaxationReport",
    "STABILITY_PRODUCT_LIMIT",
    "Trajectory",
    "TrapPotential",
    "WPlusParams",
    "adiabatic_ramp",
    "apply_damped_rhs",
    "apply_hamiltonian",
    "backend_name",
    "bessel_k1",
    "build_bdg_operator",
    "check_orthogonality",
    "chemical_potential",
    "count_zero_crossings",
    "energy",
    "envelope_decay_rate",
    "evolve",
    "fit_damped_sinusoid",
    "ho_eigenstate",
    "inner",
    "lambda_estimate",
    "make_grid",
    "mode_parity",
    "norm_sq",
    "odd_parity_state",
    "phase_flatness",
    "phase_jump_at_origin",
    "populations_along",
    "project",
    "relax_fixed_c",
    "relax_fixed_mu",
    "residual",
    "rk4_step",
    "seed_mode",
    "solve_modes",
    "stability_guard",
    "thomas_fermi_state",
    "w_plus",
    "width",
]
