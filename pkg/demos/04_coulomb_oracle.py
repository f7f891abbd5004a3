"""
Checking the solver on planar hydrogen
======================================

With an unscreened ``-2/x`` interaction the planar atom is solvable:
``E_n = -1 / (n - 1/2)^2`` Ry and the ground state ``y ~ x^(1/2) e^(-2x)``
has ``<x> = 1/2``. The regular inner condition reproduces both.
"""

from planar_hydrogen import GridSpec, PhysicalParams, PotentialKind, mean_radius_quadrature, spectrum

grid = GridSpec(x_min=1e-4, x_max=60.0, n_steps=10000, origin="regular")
states = spectrum(PotentialKind.COULOMB_2D, PhysicalParams(), grid, n_max=3)
for s in states:
    exact = -1 / (s.n - 0.5) ** 2
    print(f"n={s.n}  E={s.energy:.9f}  exact={exact:.9f}  rel err={abs(s.energy / exact - 1):.1e}")
print(f"<x> = {mean_radius_quadrature(states[0]):.8f} (exact 0.5)")

# The residual error above is set by cutting the mesh at x_min, not by the
# step. A hard wall at x_min instead makes the inner boundary exact: the
# levels move up, and the decaying Whittaker function W_{1/k,0}(2 k x) must
# vanish at the wall. Its first root, k = 1.5881870428777365, is an exact
# target for the step study: the error drops ~16x per halving of the step
# until it reaches roundoff near 1e-11.
kappa = 1.5881870428777365
for n_steps in (1000, 2000, 4000):
    g = GridSpec(x_min=1e-4, x_max=60.0, n_steps=n_steps, origin="wall")
    e = spectrum(PotentialKind.COULOMB_2D, PhysicalParams(), g, n_max=1)[0].energy
    print(f"wall, n_steps={n_steps:5d}  E1={e:.12f}  error {abs(e + kappa**2):.2e}")

wall = GridSpec(x_min=1e-4, x_max=60.0, n_steps=10000, origin="wall")
for s in spectrum(PotentialKind.COULOMB_2D, PhysicalParams(), wall, n_max=3):
    print(f"wall n={s.n}  E={s.energy:.6f}")
