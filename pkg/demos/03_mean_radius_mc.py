"""
Mean radius by rejection sampling
=================================

Radii are drawn from ``y(x)^2`` by rejection against a flat box whose
height is the peak of ``y^2`` on the mesh. The accepted sample mean is
compared with Simpson quadrature.
"""

from planar_hydrogen import PhysicalParams, ground_state, mean_radius_mc, mean_radius_quadrature, radius_histogram
from planar_hydrogen.model import length_bohr_to_cm

for lam in (0.2e-5, 0.2e-4, 0.2e-3):
    sol = ground_state(PhysicalParams(lam=lam))
    exact = mean_radius_quadrature(sol)
    est = mean_radius_mc(sol, n_samples=200_000, seed=42)
    z = (est.mean - exact) / est.std_error
    print(
        f"lam={lam:g}: quadrature {exact:8.3f}, MC {est.mean:8.3f} +- {est.std_error:.3f} "
        f"({z:+.1f} sigma), acceptance {est.acceptance_rate:.3f}, <r> = {length_bohr_to_cm(exact):.3e} cm"
    )

# Quadrupling the sample count halves the error bar.
sol = ground_state(PhysicalParams(lam=0.2e-4))
for n in (50_000, 200_000, 800_000):
    print(f"n={n:7d}  std_error={mean_radius_mc(sol, n, seed=1).std_error:.4f}")

edges, counts = radius_histogram(sol, n_bins=60, n_samples=200_000, seed=7)

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots()
    width = edges[1] - edges[0]
    ax.bar(edges[:-1], counts / (counts.sum() * width), width=width, align="edge", alpha=0.5, label="samples")
    ax.plot(sol.x, sol.u**2, "k", label="y(x)^2")
    ax.set_xlim(0, 300)
    ax.set_xlabel("r / a_B")
    ax.legend()
    fig.savefig("radius_histogram.png", dpi=120)
