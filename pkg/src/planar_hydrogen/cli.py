"""
Command-line front end.

Every command produces one table, written as CSV (header row, LF line
endings) or as a JSON object with ``config``, ``results`` and
``provenance`` keys. Values carry 6 significant digits so that repeated
runs with the same configuration are byte-identical.

Exit codes: 0 success, 1 numerical failure, 2 usage error.
"""

import argparse
import dataclasses
import io
import json
import sys
from dataclasses import dataclass, field

from . import __version__
from .model import UNITS, FINE_STRUCTURE, PhysicalParams, PotentialKind
from .model import energy_ry_to_ev, length_bohr_to_cm, potential_components
from .observables import InefficientSamplingError, histogram_csv, mean_radius_mc, mean_radius_quadrature, radius_histogram
from .solver import GridSpec, SolverError, ground_state, spectrum

COMMANDS = ("solve", "spectrum", "mean-radius", "table1", "table2", "scan-lambda", "potential-profile", "units")
BENCHMARK_LAMBDAS = (0.2e-5, 0.2e-4, 0.2e-3)

CS = PotentialKind.CHERN_SIMONS


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    lam: float = 0.2e-5
    l: int = 0
    n: int = 1
    x_min: float = None
    x_max: float = None
    n_steps: int = None
    origin: str = "wall"
    tol: float = 1e-7
    seed: int = 0
    n_samples: int = 1_000_000
    output_path: str = None
    format: str = "csv"
    lambdas: list = field(default_factory=lambda: list(BENCHMARK_LAMBDAS))
    bins: int = 100
    histogram_path: str = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format not in ("csv", "json"):
            raise UsageError("format must be csv or json")
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.n < 1:
            raise UsageError("--n must be at least 1")
        if self.n_samples < 10_000:
            raise UsageError("--samples must be at least 1e4")
        if self.bins < 10:
            raise UsageError("--bins must be at least 10")
        if self.command == "scan-lambda" and not self.lambdas:
            raise UsageError("scan-lambda needs at least one --lambdas value")
        try:
            self.params_for(self.lam)
            for lam in [self.lam, *self.lambdas]:
                self.grid_for(lam)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc

    def params_for(self, lam, l=None):
        return PhysicalParams(lam=lam, l=self.l if l is None else l)

    def grid_for(self, lam):
        grid = GridSpec.for_lambda(lam, origin=self.origin)
        overrides = {k: v for k, v in (("x_min", self.x_min), ("x_max", self.x_max), ("n_steps", self.n_steps)) if v is not None}
        return dataclasses.replace(grid, **overrides)


@dataclass
class Table:
    columns: list
    rows: list
    meta: dict = field(default_factory=dict)


def _solve(config, lam, n_max):
    return spectrum(CS, config.params_for(lam), config.grid_for(lam), n_max=n_max, tol=config.tol)


def run_table1(config):
    rows = []
    for lam in BENCHMARK_LAMBDAS:
        e1 = ground_state(config.params_for(lam, l=0), config.grid_for(lam), tol=config.tol).energy
        rows.append((lam, e1, float(energy_ry_to_ev(e1))))
    return Table(["lambda", "E1_ry", "E1_ev"], rows)


def run_table2(config):
    rows = []
    for lam in BENCHMARK_LAMBDAS:
        sol = ground_state(config.params_for(lam, l=0), config.grid_for(lam), tol=config.tol)
        mc = mean_radius_mc(sol, config.n_samples, config.seed)
        rows.append((lam, mc.mean, mc.std_error, float(length_bohr_to_cm(mc.mean)), mean_radius_quadrature(sol)))
    return Table(["lambda", "mean_r_over_aB", "std_error", "mean_r_cm", "mean_r_quadrature"], rows)


def run_scan_lambda(config):
    if not config.lambdas:
        raise UsageError("scan-lambda needs at least one lambda")
    rows = []
    for lam in config.lambdas:
        try:
            energies = [s.energy for s in _solve(config, lam, 2)]
        except SolverError:
            energies = []
        energies += [None] * (2 - len(energies))
        rows.append((lam, *energies))
    return Table(["lambda", "E1_ry", "E2_ry"], rows)


def run_potential_profile(config):
    params = config.params_for(config.lam)
    x = config.grid_for(config.lam).mesh()
    k0_term, centrifugal = potential_components(x, params)
    u_eff = k0_term + centrifugal
    return Table(["x", "U_eff", "K0_term", "centrifugal_term"], list(zip(x, u_eff, k0_term, centrifugal)))


def run_units(config):
    rows = [
        ("rydberg_in_ev", UNITS.rydberg_in_ev),
        ("bohr_radius_cm", UNITS.bohr_radius_cm),
        ("electron_mass_ev", UNITS.electron_mass_ev),
        ("alpha", FINE_STRUCTURE),
    ]
    return Table(["name", "value"], rows)


def run_solve(config):
    states = _solve(config, config.lam, config.n)
    if len(states) < config.n:
        raise SolverError(f"state n={config.n} not found for lambda={config.lam:g}, l={config.l}")
    sol = states[-1]
    meta = {"n": sol.n, "l": sol.l, "nodes": sol.nodes, "energy_ry": sol.energy, "energy_ev": float(energy_ry_to_ev(sol.energy))}
    return Table(["x", "u"], list(zip(sol.x, sol.u)), meta)


def run_spectrum(config):
    states = _solve(config, config.lam, config.n)
    if not states:
        raise SolverError(f"no bound state found for lambda={config.lam:g}, l={config.l}")
    columns = ["x"] + [f"u_{s.n}" for s in states]
    rows = list(zip(states[0].x, *(s.u for s in states)))
    meta = {
        "states": [
            {"n": s.n, "l": s.l, "nodes": s.nodes, "energy_ry": s.energy, "energy_ev": float(energy_ry_to_ev(s.energy))}
            for s in states
        ]
    }
    return Table(columns, rows, meta)


def run_mean_radius(config):
    states = _solve(config, config.lam, config.n)
    if len(states) < config.n:
        raise SolverError(f"state n={config.n} not found for lambda={config.lam:g}, l={config.l}")
    sol = states[-1]
    mc = mean_radius_mc(sol, config.n_samples, config.seed)
    if config.histogram_path:
        edges, counts = radius_histogram(sol, config.bins, config.n_samples, config.seed)
        with open(config.histogram_path, "w", newline="\n") as fh:
            fh.write(histogram_csv(edges, counts))
    row = (config.lam, sol.n, mean_radius_quadrature(sol), mc.mean, mc.std_error, mc.n_samples, mc.acceptance_rate, mc.seed)
    columns = ["lambda", "n", "mean_quadrature", "mean_mc", "std_error", "n_samples", "acceptance_rate", "seed"]
    return Table(columns, [row])


RUNNERS = {
    "solve": run_solve,
    "spectrum": run_spectrum,
    "mean-radius": run_mean_radius,
    "table1": run_table1,
    "table2": run_table2,
    "scan-lambda": run_scan_lambda,
    "potential-profile": run_potential_profile,
    "units": run_units,
}


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, int) and not isinstance(v, bool):
        return str(v)
    return f"{float(v):.6g}"


def _num(v):
    if v is None or isinstance(v, str):
        return v
    if isinstance(v, int) and not isinstance(v, bool):
        return v
    return float(f"{float(v):.6g}")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return _num(obj)


def to_csv(table):
    buf = io.StringIO()
    buf.write(",".join(table.columns) + "\n")
    for row in table.rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def to_json(table, config):
    cfg = dataclasses.asdict(config)
    doc = {
        "config": _jsonable(cfg),
        "results": _jsonable({"columns": table.columns, "rows": table.rows, **table.meta}),
        "provenance": {"tool": "planar-hydrogen", "version": __version__, "seed": config.seed},
    }
    return json.dumps(doc, indent=1) + "\n"


def render(table, config):
    return to_json(table, config) if config.format == "json" else to_csv(table)


def run(config):
    """Execute ``config`` and return the rendered output text."""
    return render(RUNNERS[config.command](config), config)


# flag dest -> RunConfig field
_FIELDS = {
    "lambda": "lam",
    "l": "l",
    "n": "n",
    "xmin": "x_min",
    "xmax": "x_max",
    "steps": "n_steps",
    "origin": "origin",
    "tol": "tol",
    "seed": "seed",
    "samples": "n_samples",
    "format": "format",
    "out": "output_path",
    "lambdas": "lambdas",
    "bins": "bins",
    "histogram": "histogram_path",
}


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON file with default option values")
    common.add_argument("--lambda", type=float, help="photon/electron mass ratio (default 0.2e-5)")
    common.add_argument("--l", type=int, help="angular momentum (default 0)")
    common.add_argument("--n", type=int, help="principal label or number of states (default 1)")
    common.add_argument("--xmin", type=float, help="inner mesh radius in Bohr radii")
    common.add_argument("--xmax", type=float, help="outer mesh radius in Bohr radii")
    common.add_argument("--steps", type=int, help="Numerov steps")
    common.add_argument("--origin", choices=("wall", "regular"), help="inner boundary condition")
    common.add_argument("--tol", type=float, help="eigenvalue tolerance in Ry")
    common.add_argument("--seed", type=int, help="Monte Carlo seed")
    common.add_argument("--samples", type=int, help="accepted Monte Carlo samples")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--out", metavar="PATH", help="output file (default stdout)")

    parser = argparse.ArgumentParser(prog="planar-hydrogen", description=__doc__.split("\n")[1])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "scan-lambda":
            p.add_argument("--lambdas", type=_float_list, help="comma-separated mass ratios")
        if name == "mean-radius":
            p.add_argument("--bins", type=int, help="histogram bins (default 100)")
            p.add_argument("--histogram", metavar="PATH", help="also write a bin_left,count histogram CSV")
    return parser


def config_from_args(args):
    """Merge defaults < config file < command-line flags into a RunConfig."""
    values = {}
    if args.config:
        try:
            with open(args.config) as fh:
                file_values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config file: {exc}") from exc
        unknown = set(file_values) - set(_FIELDS)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        values.update({_FIELDS[k]: v for k, v in file_values.items()})
    for flag, name in _FIELDS.items():
        v = getattr(args, flag, None)
        if v is not None:
            values[name] = v
    try:
        return RunConfig(command=args.command, **values)
    except TypeError as exc:
        raise UsageError(f"bad option value: {exc}") from exc


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        text = run(config)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except (SolverError, InefficientSamplingError, ArithmeticError) as exc:
        print(f"{parser.prog}: numerical failure: {exc}", file=sys.stderr)
        return 1
    if config.output_path:
        with open(config.output_path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0
