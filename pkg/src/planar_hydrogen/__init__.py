"""Bound states of the planar hydrogen atom in a Maxwell-Chern-Simons potential."""

__version__ = "0.1.0"

from .model import (
    UNITS,
    PhysicalParams,
    PotentialKind,
    UnitTable,
    effective_potential,
    energy_ry_to_ev,
    photon_mass_ev,
)
from .observables import McEstimate, mean_radius_mc, mean_radius_quadrature, radius_histogram
from .solver import (
    EigenBracket,
    GridSpec,
    RadialSolution,
    SolverError,
    bracket_states,
    count_bound_states,
    find_eigenvalue,
    ground_state,
    node_count,
    numerov_sweep,
    spectrum,
)
from .specfun import bessel_i0, bessel_k0
