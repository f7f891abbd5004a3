"""
Bound states by shooting
========================

The solver integrates the radial equation outward and inward with Numerov
steps, counts nodes to bracket each level and matches the two sweeps.
"""

import numpy as np

from planar_hydrogen import GridSpec, PhysicalParams, PotentialKind, count_bound_states, spectrum
from planar_hydrogen.model import energy_ry_to_ev, photon_mass_ev

# Each photon mass gets its own mesh; lighter photons bind more loosely and
# need a longer one.
for lam in (0.2e-5, 0.2e-4, 0.2e-3):
    grid = GridSpec.for_lambda(lam)
    p = PhysicalParams(lam=lam)
    states = spectrum(PotentialKind.CHERN_SIMONS, p, grid, n_max=3)
    n_bound = count_bound_states(PotentialKind.CHERN_SIMONS, p, grid)
    print(f"m_gamma = {photon_mass_ev(lam):5.2f} eV, x_max = {grid.x_max:6.0f}, {n_bound} s-states on the mesh")
    for s in states:
        print(f"  n={s.n}  E = {s.energy:+.5e} Ry = {energy_ry_to_ev(s.energy):+.4e} eV  nodes={s.nodes}")

# The gap between the two lowest levels opens up as the photon gets heavier.
gaps = []
for lam in np.geomspace(0.2e-5, 0.2e-3, 7):
    s = spectrum(PotentialKind.CHERN_SIMONS, PhysicalParams(lam=lam), GridSpec.for_lambda(lam), n_max=2)
    gaps.append((lam, s[0].energy, s[1].energy))
for lam, e1, e2 in gaps:
    print(f"lam={lam:.2e}  E1={e1:+.4e}  E2={e2:+.4e}  gap={e2 - e1:.3e}")

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots()
    for lam in (0.2e-5, 0.2e-4, 0.2e-3):
        s = spectrum(PotentialKind.CHERN_SIMONS, PhysicalParams(lam=lam), GridSpec.for_lambda(lam), n_max=1)[0]
        ax.plot(s.x, s.u, label=f"lam={lam:g}")
    ax.set_xlim(0, 800)
    ax.set_xlabel("r / a_B")
    ax.set_ylabel("y(x)")
    ax.legend()
    fig.savefig("ground_states.png", dpi=120)
