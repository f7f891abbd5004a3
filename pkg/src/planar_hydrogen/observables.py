"""
Mean electron radius by quadrature and by Monte Carlo rejection sampling.

For a planar state ``<r>/a_B = int x y^2 dx / int y^2 dx``. The quadrature
route integrates this with composite Simpson on the solution mesh. The
Monte Carlo route draws radii from ``p(x) ~ y(x)^2`` by rejection against a
flat envelope over ``[x_min, x_max]`` whose height is the grid maximum of
``y^2``; ``y^2`` between mesh points is linearly interpolated, so the
envelope is exact.
"""

import io
import math
from dataclasses import dataclass

import numpy as np

from .solver import integrate_on_grid

MIN_ACCEPTANCE = 1e-4
_PILOT = 100_000
_MAX_BATCH = 2_000_000


class InefficientSamplingError(RuntimeError):
    pass


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo estimate of ``<x> = <r>/a_B``."""

    mean: float
    std_error: float
    n_samples: int
    acceptance_rate: float
    seed: int


def _check_solution(sol):
    if sol.u.size == 0:
        raise ValueError("empty solution")
    if not sol.normalized:
        raise ValueError(f"solution is not normalized (norm = {sol.norm:.12g})")


def mean_radius_quadrature(sol):
    """``<r>/a_B`` of a normalized :class:`RadialSolution` by Simpson's rule."""
    _check_solution(sol)
    rho = sol.u * sol.u
    return integrate_on_grid(sol.x * rho, sol.x, sol.grid) / integrate_on_grid(rho, sol.x, sol.grid)


def _density(sol):
    """Piecewise-linear ``y^2`` on the log mesh, evaluated by direct indexing."""
    x, rho = sol.x, sol.u * sol.u
    t0, h, last = math.log(x[0]), sol.grid.step, x.size - 2

    def rho_at(xs):
        j = np.clip(((np.log(xs) - t0) / h).astype(np.intp), 0, last)
        # log rounding can land one cell off
        j = np.clip(j - (xs < x[j]) + (xs > x[j + 1]), 0, last)
        frac = (xs - x[j]) / (x[j + 1] - x[j])
        return rho[j] + frac * (rho[j + 1] - rho[j])

    return rho_at, rho.max()


def sample_radius(sol, n_samples, seed):
    """
    Draw ``n_samples`` radii distributed as ``y(x)^2`` by rejection.

    Returns
    -------
    samples : ndarray
        Accepted radii, in acceptance order.
    acceptance_rate : float
        Accepted over proposed.

    Raises
    ------
    InefficientSamplingError
        If the acceptance rate falls below 1e-4.
    """
    _check_solution(sol)
    n_samples = int(n_samples)
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    rng = np.random.default_rng(seed)
    rho_at, top = _density(sol)
    lo, hi = sol.x[0], sol.x[-1]

    accepted = []
    n_acc = n_prop = 0
    batch = _PILOT
    while n_acc < n_samples:
        xs = rng.uniform(lo, hi, batch)
        keep = xs[rng.uniform(0.0, top, batch) < rho_at(xs)]
        n_prop += batch
        n_acc += keep.size
        accepted.append(keep)
        rate = n_acc / n_prop
        if rate < MIN_ACCEPTANCE:
            raise InefficientSamplingError(
                f"acceptance rate {rate:.2e} is below {MIN_ACCEPTANCE:g}; "
                "shrink x_max to tighten the envelope"
            )
        batch = min(int(1.1 * (n_samples - n_acc) / rate) + 1000, _MAX_BATCH)
    samples = np.concatenate(accepted)[:n_samples]
    return samples, n_acc / n_prop


def mean_radius_mc(sol, n_samples=1_000_000, seed=0):
    """
    ``<r>/a_B`` by rejection Monte Carlo.

    Deterministic for a fixed ``seed``. The standard error is the sample
    standard deviation over ``sqrt(n_samples)``.
    """
    samples, rate = sample_radius(sol, n_samples, seed)
    return McEstimate(
        mean=float(samples.mean()),
        std_error=float(samples.std(ddof=1) / math.sqrt(samples.size)),
        n_samples=int(samples.size),
        acceptance_rate=float(rate),
        seed=seed,
    )


def radius_histogram(sol, n_bins=100, n_samples=1_000_000, seed=0, range=None):
    """
    Histogram of rejection-sampled radii.

    Bins span ``[x_min, x_max]`` of the solution mesh unless ``range`` is
    given. Returns ``(bin_edges, counts)``.
    """
    if n_bins < 10:
        raise ValueError("n_bins must be at least 10")
    samples, _ = sample_radius(sol, n_samples, seed)
    if range is None:
        range = (sol.x[0], sol.x[-1])
    counts, edges = np.histogram(samples, bins=n_bins, range=range)
    return edges, counts


def histogram_csv(edges, counts):
    """Render a histogram as ``bin_left,count`` CSV text."""
    buf = io.StringIO()
    buf.write("bin_left,count\n")
    for left, c in zip(edges[:-1], counts):
        buf.write(f"{left:.6g},{int(c)}\n")
    return buf.getvalue()
