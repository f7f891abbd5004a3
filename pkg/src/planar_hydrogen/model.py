"""
Physical constants, units and the effective radial potential.

All energies are in Rydberg (the natural unit of the dimensionless radial
equation) and lengths in Bohr radii, ``x = r / a_B``.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .specfun import bessel_k0

FINE_STRUCTURE = 1.0 / 137.0


@dataclass(frozen=True)
class UnitTable:
    """Conversion constants between the dimensionless model and lab units."""

    rydberg_in_ev: float = 13.605692
    bohr_radius_cm: float = 0.52917720859e-8
    electron_mass_ev: float = 510998.9


UNITS = UnitTable()


@dataclass(frozen=True)
class PhysicalParams:
    """
    Parameters of the planar Chern-Simons atom.

    Parameters
    ----------
    lam : float
        Photon-to-electron mass ratio ``m_gamma / m_e``.
    alpha : float
        Fine-structure constant, 1/137 by default.
    l : int
        Angular momentum quantum number.
    """

    lam: float = 0.2e-5
    alpha: float = FINE_STRUCTURE
    l: int = 0

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"lam must be positive, got {self.lam!r}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha!r}")
        if int(self.l) != self.l or self.l < 0:
            raise ValueError(f"l must be a non-negative integer, got {self.l!r}")
        object.__setattr__(self, "l", int(self.l))

    @property
    def well_strength(self):
        """Prefactor ``lam / (pi alpha)`` of the K0 well."""
        return self.lam / (np.pi * self.alpha)

    @property
    def screening_length(self):
        """Screening length ``alpha / lam`` in Bohr radii."""
        return self.alpha / self.lam


class PotentialKind(Enum):
    CHERN_SIMONS = "chern-simons"
    COULOMB_2D = "coulomb-2d"
    CENTRIFUGAL_ONLY = "centrifugal-only"


def _check_x(x):
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise ValueError("the radial coordinate must be strictly positive")
    return arr


def centrifugal_term(x, l):
    """``(l^2 - 1/4) / x^2``; attractive for l = 0."""
    arr = _check_x(x)
    return (l * l - 0.25) / (arr * arr)


def interaction_potential(x, kind, params):
    """
    Non-centrifugal part of the effective potential, in Ry.

    ChernSimons gives ``-(lam/(pi alpha)) K0(lam x / alpha)``, Coulomb2D
    gives ``-2/x`` and CentrifugalOnly gives zero.
    """
    arr = _check_x(x)
    kind = PotentialKind(kind)
    if kind is PotentialKind.CHERN_SIMONS:
        return -params.well_strength * bessel_k0(arr / params.screening_length)
    if kind is PotentialKind.COULOMB_2D:
        return -2.0 / arr
    return np.zeros_like(arr)


def effective_potential(x, kind, params):
    """
    Effective radial potential ``U_eff(x)`` in Ry.

    Parameters
    ----------
    x : float or array_like
        Radius in Bohr radii, strictly positive.
    kind : PotentialKind or str
    params : PhysicalParams

    Returns
    -------
    float or ndarray
    """
    u = interaction_potential(x, kind, params) + centrifugal_term(x, params.l)
    return float(u) if np.ndim(u) == 0 else u


def potential_components(x, params):
    """Return ``(k0_term, centrifugal_term)`` of the ChernSimons potential."""
    k0_part = interaction_potential(x, PotentialKind.CHERN_SIMONS, params)
    return k0_part, centrifugal_term(x, params.l)


def energy_ry_to_ev(e, units=UNITS):
    return np.multiply(e, units.rydberg_in_ev)


def length_bohr_to_cm(x, units=UNITS):
    return np.multiply(x, units.bohr_radius_cm)


def photon_mass_ev(lam, units=UNITS):
    """Photon topological mass in eV for a mass ratio ``lam``."""
    if np.any(np.asarray(lam) < 0):
        raise ValueError("lam must be non-negative")
    return np.multiply(lam, units.electron_mass_ev)
