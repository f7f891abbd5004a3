"""
The screened planar potential
=============================

A point charge in a Maxwell-Chern-Simons plane is screened by a massive
photon. After the centrifugal reduction the electron feels

    U_eff(x) = -(lam / (pi alpha)) K0(lam x / alpha) + (l^2 - 1/4) / x^2

with ``x`` in Bohr radii and ``U_eff`` in Rydberg.
"""

import numpy as np

from planar_hydrogen import PhysicalParams, PotentialKind, effective_potential
from planar_hydrogen.model import potential_components

x = np.geomspace(1e-2, 3e3, 400)

# For l = 0 both pieces are attractive. The K0 well has a range of
# alpha/lam Bohr radii, so a lighter photon gives a wider, shallower well.
for lam in (0.2e-5, 0.2e-4, 0.2e-3):
    p = PhysicalParams(lam=lam)
    well, cent = potential_components(x, p)
    print(f"lam={lam:g}: range {p.screening_length:8.1f} a_B, K0 term at x=10: {well[np.searchsorted(x, 10)]:.3e} Ry")

# For l = 1 the barrier is repulsive near the origin, but the K0 term still
# dips the potential below zero at intermediate radii.
u1 = effective_potential(x, PotentialKind.CHERN_SIMONS, PhysicalParams(lam=0.2e-4, l=1))
print(f"l=1, lam=2e-5: min U_eff = {u1.min():.3e} Ry at x = {x[np.argmin(u1)]:.1f}")

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    p = PhysicalParams(lam=0.2e-5)
    well, cent = potential_components(x, p)
    fig, ax = plt.subplots()
    ax.semilogx(x, well + cent, label="U_eff")
    ax.semilogx(x, well, "--", label="K0 term")
    ax.semilogx(x, cent, ":", label="centrifugal, l=0")
    ax.set_ylim(-2e-3, 1e-4)
    ax.set_xlabel("r / a_B")
    ax.set_ylabel("energy [Ry]")
    ax.legend()
    fig.savefig("potential_profile.png", dpi=120)
