"""
Shooting solver for the planar radial equation.

The working equation is ``y'' + (E - U_eff(x)) y = 0`` with energies in Ry
and ``x = r / a_B``. With ``x = exp(t)`` and ``y = sqrt(x) w(t)`` it becomes

    w'' + g(t) w = 0,    g = x^2 (E - V(x)) - l^2,

where ``V`` is the non-centrifugal part of ``U_eff``. The ``-1/(4 x^2)``
term cancels exactly, ``g`` is smooth down to the origin, and the standard
three-term Numerov recurrence on the uniform ``t`` mesh is O(h^4).

Eigenvalues are bracketed by node counting of the outward sweep (Sturm
oscillation), narrowed by bisection and polished on the outward/inward
mismatch at the outermost classical turning point.
"""

import functools
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.optimize import brentq

from . import _numerov
from .model import PhysicalParams, PotentialKind, interaction_potential

ORIGINS = ("wall", "regular")

#: stand-in for E -> 0^- in node counts
E_ZERO = -np.finfo(float).tiny

# largest |h^2 g / 12| allowed anywhere on the mesh
_STABILITY = 0.5
_LADDER_PER_DECADE = 10
_LADDER_TOP = -1e-12
_MAX_ITER = 200


class SolverError(RuntimeError):
    pass


class NoTurningPointError(SolverError):
    """The energy has no classically allowed region on the grid."""


class ConvergenceError(SolverError):
    pass


class BracketError(ValueError):
    """An :class:`EigenBracket` does not isolate exactly one eigenvalue."""


class TailWarning(UserWarning):
    """The grid ends before the bound-state tail has decayed."""


@dataclass(frozen=True)
class GridSpec:
    """
    Radial mesh, uniform in ``t = ln x`` between ``x_min`` and ``x_max``.

    Parameters
    ----------
    x_min, x_max : float
        Mesh end points in Bohr radii, ``0 < x_min < x_max``.
    n_steps : int
        Number of Numerov steps (at least 1000).
    origin : {"wall", "regular"}
        Inner boundary condition. ``"wall"`` imposes ``y(x_min) = 0``;
        ``"regular"`` starts from ``y ~ x^(l + 1/2)``, the solution that is
        regular at ``x = 0``.
    """

    x_min: float = 1e-4
    x_max: float = 3000.0
    n_steps: int = 10000
    origin: str = "wall"

    def __post_init__(self):
        if not 0 < self.x_min < self.x_max:
            raise ValueError("grid requires 0 < x_min < x_max")
        if int(self.n_steps) != self.n_steps or self.n_steps < 1000:
            raise ValueError("grid requires an integer n_steps >= 1000")
        if self.origin not in ORIGINS:
            raise ValueError(f"origin must be one of {ORIGINS}, got {self.origin!r}")
        object.__setattr__(self, "n_steps", int(self.n_steps))

    @property
    def step(self):
        """Mesh step in ``ln x``."""
        return (math.log(self.x_max) - math.log(self.x_min)) / self.n_steps

    def mesh(self):
        t = np.linspace(math.log(self.x_min), math.log(self.x_max), self.n_steps + 1)
        x = np.exp(t)
        x[0], x[-1] = self.x_min, self.x_max
        return x

    @classmethod
    def for_lambda(cls, lam, n_steps=10000, origin="wall", x_min=1e-4):
        """Default mesh for mass ratio ``lam``: x_max = 3000 at 0.2e-5, 400 at 0.2e-3."""
        x_max = 3000.0 * (lam / 0.2e-5) ** (-0.4375)
        return cls(x_min=x_min, x_max=float(np.clip(x_max, 50.0, 1e5)), n_steps=n_steps, origin=origin)


@dataclass(frozen=True)
class EigenBracket:
    """Energy interval holding exactly one eigenvalue, by node count."""

    e_lo: float
    e_hi: float
    nodes_lo: int
    nodes_hi: int

    def __post_init__(self):
        if not self.e_lo < self.e_hi < 0:
            raise BracketError("bracket requires e_lo < e_hi < 0")
        if self.nodes_hi != self.nodes_lo + 1:
            raise BracketError("bracket node counts must differ by exactly one")


@dataclass(frozen=True, eq=False)
class RadialSolution:
    """
    A matched, normalized bound state.

    ``u`` holds ``y(x)`` on the mesh ``x``, normalized so that the integral
    of ``y^2 dx`` is one. ``n`` is the principal label, ``nodes = n - 1``.
    """

    energy: float
    n: int
    l: int
    x: np.ndarray
    u: np.ndarray
    nodes: int
    grid: GridSpec
    kind: PotentialKind
    params: PhysicalParams
    match_index: int
    log_derivative_out: float
    log_derivative_in: float

    @property
    def norm(self):
        return integrate_on_grid(self.u * self.u, self.x, self.grid)

    @property
    def normalized(self):
        return abs(self.norm - 1.0) < 1e-8


def integrate_on_grid(f, x, grid):
    """Composite Simpson integral of ``f dx`` over the log mesh."""
    return float(simpson(f * x, dx=grid.step))


class _Problem:
    """Mesh quantities for one (potential, parameters, grid) triple."""

    def __init__(self, kind, params, grid):
        self.kind = PotentialKind(kind)
        self.params = params
        self.grid = grid
        self.l = params.l
        self.h = grid.step
        self.x = grid.mesh()
        self.x2 = self.x * self.x
        self.v = interaction_potential(self.x, self.kind, params)
        for arr in (self.x, self.x2, self.v):
            arr.setflags(write=False)
        l2 = self.l * self.l
        self.potential_floor = float(np.min(self.v + l2 / self.x2))
        self.stability_floor = float(np.max(self.v + (l2 - 12.0 * _STABILITY / self.h**2) / self.x2))

    @property
    def energy_floor(self):
        return max(self.potential_floor, self.stability_floor)

    def g(self, energy):
        return self.x2 * (energy - self.v) - self.l * self.l

    def outward_start(self, g):
        if self.grid.origin == "wall":
            return 0.0, 1.0
        # w = (x/x0)^l (1 - q / (p^2 + 2 l p)) with q = x^2 (E - V) ~ e^(p t)
        l = self.l
        q0, q1 = g[0] + l * l, g[1] + l * l
        p = math.log(q1 / q0) / self.h if q0 * q1 > 0 else 2.0
        if not p > 0:
            p = 2.0
        denom = p * p + 2 * l * p
        ratio = math.exp(l * self.h)
        return 1.0 - q0 / denom, ratio * (1.0 - q1 / denom)

    def inward_start(self, energy):
        kappa = math.sqrt(-energy)
        xn, xn1 = self.x[-1], self.x[-2]
        return 1.0, math.exp(kappa * (xn - xn1)) * math.sqrt(xn / xn1)

    def nodes(self, energy):
        g = self.g(energy)
        _, n = _numerov.outward(g, self.h, *self.outward_start(g), len(g) - 1)
        return n

    def match_index(self, energy):
        allowed = np.nonzero(self.g(energy) > 0)[0]
        if allowed.size == 0:
            raise NoTurningPointError(
                f"no classically allowed region on the grid for E = {energy:g} Ry"
            )
        return int(np.clip(allowed[-1], 2, len(self.x) - 3))

    def sweeps(self, energy, m):
        g = self.g(energy)
        wo, nodes = _numerov.outward(g, self.h, *self.outward_start(g), m + 1)
        wi, _ = _numerov.inward(g, self.h, *self.inward_start(energy), m - 1)
        return wo, wi, nodes

    def mismatch(self, energy, m):
        wo, wi, _ = self.sweeps(energy, m)
        do = (wo[m + 1] - wo[m - 1]) / (2 * self.h)
        di = (wi[m + 1] - wi[m - 1]) / (2 * self.h)
        return (wo[m] * di - wi[m] * do) / (math.hypot(wo[m], do) * math.hypot(wi[m], di))

    def log_derivative(self, w, m):
        # y = sqrt(x) w  =>  y'/y = (1/2 + w_t / w) / x
        dw = (w[m + 1] - w[m - 1]) / (2 * self.h)
        return (0.5 + dw / w[m]) / self.x[m]


@functools.lru_cache(maxsize=64)
def _problem(kind, params, grid):
    return _Problem(kind, params, grid)


def _check_energy(energy):
    if not energy < 0:
        raise ValueError(f"bound-state energies must be negative, got {energy!r}")


def node_count(grid, energy, kind, params):
    """Sign changes of the outward solution over the whole grid."""
    _check_energy(energy)
    return _problem(PotentialKind(kind), params, grid).nodes(energy)


def numerov_sweep(grid, energy, kind, params, direction="outward"):
    """
    One Numerov sweep up to (or down to) the matching point.

    Parameters
    ----------
    grid : GridSpec
    energy : float
        Trial energy in Ry, negative.
    kind : PotentialKind
    params : PhysicalParams
    direction : {"outward", "inward"}

    Returns
    -------
    u : ndarray
        ``y(x)`` on the mesh, NaN where the sweep did not reach. Arbitrary
        scale.
    nodes : int
        Sign changes over the swept range.
    log_derivative : float
        ``y'/y`` at the outermost classical turning point.

    Raises
    ------
    NoTurningPointError
        If the energy has no classically allowed region on the grid.
    """
    _check_energy(energy)
    prob = _problem(PotentialKind(kind), params, grid)
    m = prob.match_index(energy)
    g = prob.g(energy)
    if direction == "outward":
        w, nodes = _numerov.outward(g, prob.h, *prob.outward_start(g), m + 1)
        y = np.sqrt(prob.x) * w
        y[m + 2 :] = np.nan
    elif direction == "inward":
        w, nodes = _numerov.inward(g, prob.h, *prob.inward_start(energy), m - 1)
        y = np.sqrt(prob.x) * w
        y[: m - 1] = np.nan
    else:
        raise ValueError("direction must be 'outward' or 'inward'")
    return y, nodes, prob.log_derivative(w, m)


def _midpoint(lo, hi):
    if hi < -1e-14 and lo / hi > 4.0:
        return -math.sqrt(lo * hi)
    return 0.5 * (lo + hi)


def _require_resolved(prob):
    floor = prob.energy_floor
    if floor < 0 and prob.nodes(floor) > 0:
        raise SolverError(
            "bound states lie below the Numerov stability floor "
            f"({floor:g} Ry); increase n_steps or reduce x_max"
        )
    return floor


def _isolate(prob, lo, hi, k):
    n_lo, n_hi = prob.nodes(lo), prob.nodes(hi)
    for _ in range(_MAX_ITER):
        if n_lo == k - 1 and n_hi == k:
            return EigenBracket(lo, hi, n_lo, n_hi)
        mid = _midpoint(lo, hi)
        n_mid = prob.nodes(mid)
        if n_mid <= k - 1:
            lo, n_lo = mid, n_mid
        else:
            hi, n_hi = mid, n_mid
    raise ConvergenceError(f"could not isolate state {k}")


def bracket_states(kind, params, grid, n_max):
    """
    Brackets for the lowest ``n_max`` bound states.

    Energies are scanned on a logarithmic ladder from the lowest admissible
    energy up to ``0^-``; ladder intervals holding several eigenvalues are
    subdivided until each bracket holds exactly one. Fewer than ``n_max``
    brackets are returned when fewer states exist.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    prob = _problem(PotentialKind(kind), params, grid)
    floor = _require_resolved(prob)
    if floor >= _LADDER_TOP:
        return []
    decades = math.log10(floor / _LADDER_TOP)
    ladder = list(-np.logspace(math.log10(-floor), math.log10(-_LADDER_TOP), int(decades * _LADDER_PER_DECADE) + 2))
    ladder[0] = floor
    ladder.append(E_ZERO)
    counts = [0]
    for e in ladder[1:]:
        counts.append(prob.nodes(e))
        if counts[-1] >= n_max:
            break
    brackets = []
    for k in range(1, min(n_max, counts[-1]) + 1):
        j = next(i for i, c in enumerate(counts) if c >= k)
        brackets.append(_isolate(prob, ladder[j - 1], ladder[j], k))
    return brackets


def count_bound_states(kind, params, grid, e_floor=None):
    """
    Number of bound states with energy in ``(e_floor, 0)``.

    Uses the node count of the outward sweep at ``E -> 0^-``. Without
    ``e_floor`` all states on the grid are counted.
    """
    prob = _problem(PotentialKind(kind), params, grid)
    floor = _require_resolved(prob)
    if floor >= 0:
        return 0
    if e_floor is None:
        e_floor = floor
    if not e_floor < 0:
        raise ValueError("e_floor must be negative")
    return prob.nodes(E_ZERO) - prob.nodes(max(e_floor, floor))


def find_eigenvalue(bracket, kind, params, grid, tol=1e-7):
    """
    Converge the eigenvalue inside ``bracket`` and return the bound state.

    Bisection on the node count shrinks the bracket below ``tol``; the
    energy is then polished with Brent's method on the outward/inward
    mismatch at a fixed matching point.

    Raises
    ------
    BracketError
        If the node counts at the bracket ends disagree with ``bracket``.
    ConvergenceError
        If bisection needs more than 200 iterations.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    kind = PotentialKind(kind)
    prob = _problem(kind, params, grid)
    lo, hi = bracket.e_lo, bracket.e_hi
    if prob.nodes(lo) != bracket.nodes_lo or prob.nodes(hi) != bracket.nodes_hi:
        raise BracketError("bracket node counts do not match the problem")
    for _ in range(_MAX_ITER):
        if hi - lo < tol:
            break
        mid = _midpoint(lo, hi)
        if prob.nodes(mid) <= bracket.nodes_lo:
            lo = mid
        else:
            hi = mid
    else:
        raise ConvergenceError(f"bisection did not reach tol={tol:g} in {_MAX_ITER} iterations")

    energy = 0.5 * (lo + hi)
    m = prob.match_index(energy)
    f_lo, f_hi = prob.mismatch(lo, m), prob.mismatch(hi, m)
    if f_lo * f_hi < 0:
        energy = brentq(prob.mismatch, lo, hi, args=(m,), xtol=1e-15 * abs(energy), maxiter=_MAX_ITER)
    return _assemble(prob, energy, m, bracket.nodes_hi)


def _assemble(prob, energy, m, n):
    wo, wi, _ = prob.sweeps(energy, m)
    w = wo.copy()
    w[m + 1 :] = wi[m + 1 :] * (wo[m] / wi[m])
    y = np.sqrt(prob.x) * w
    y /= math.sqrt(integrate_on_grid(y * y, prob.x, prob.grid))
    nz = y[y != 0]
    nodes = int(np.count_nonzero(nz[1:] * nz[:-1] < 0))
    if prob.grid.x_max < 8.0 / math.sqrt(-energy):
        warnings.warn(
            f"x_max = {prob.grid.x_max:g} is short of 8/sqrt|E| = {8 / math.sqrt(-energy):g}",
            TailWarning,
            stacklevel=3,
        )
    y.setflags(write=False)
    return RadialSolution(
        energy=float(energy),
        n=n,
        l=prob.l,
        x=prob.x,
        u=y,
        nodes=nodes,
        grid=prob.grid,
        kind=prob.kind,
        params=prob.params,
        match_index=m,
        log_derivative_out=float(prob.log_derivative(wo, m)),
        log_derivative_in=float(prob.log_derivative(wi, m)),
    )


def spectrum(kind, params, grid=None, n_max=3, tol=1e-7):
    """
    The lowest ``n_max`` bound states, ordered by energy.

    States that do not exist on the grid are omitted. The default grid is
    :meth:`GridSpec.for_lambda` for ``params.lam``.
    """
    if grid is None:
        grid = GridSpec.for_lambda(params.lam)
    return [find_eigenvalue(b, kind, params, grid, tol) for b in bracket_states(kind, params, grid, n_max)]


def ground_state(params, grid=None, kind=PotentialKind.CHERN_SIMONS, tol=1e-7):
    """Convenience wrapper: the n = 1 state, or SolverError if none exists."""
    states = spectrum(kind, params, grid, n_max=1, tol=tol)
    if not states:
        raise SolverError(f"no bound state found for lam={params.lam:g}, l={params.l}")
    return states[0]
