"""Command-line experiment runner.

Usage::

    logmeans EXPERIMENT [--config FILE] [--dim D] [--axes LR] [--orders SPEC]
                        [--young FAMILY:PARAM] [--grid G] [--out DIR] [--jobs J]
                        [--function NAME] [--degree N] [--seed S]
    logmeans run CONFIG [overrides]

Experiments: kernels, means-check, converge, weak-strong, diverge, orlicz.
A config file holds ``key = value`` lines using the flag names; flags win.
Each run writes ``<stem>.csv`` and ``<stem>.manifest`` into ``--out``; the
manifest is itself a config file, so ``logmeans run <manifest>`` repeats it.

Order specs are comma-separated items: ``8``, ``1..5`` (inclusive range) or
``8..512:x2`` (geometric, factor 2).

CSV columns, in order:

=============  =============================================================
kernels        n, u, dirichlet, norlund, riesz
means-check    order, trial, max_abs_diff
converge       n, error
weak-strong    function, n, weak_constant, strong_ratio
diverge        n, b, gamma, j_measure, lemma_min, l1_of_means,
               luxemburg_norm, ratio, bound_rhs
orlicz         n, u, young_value, containment_ratio, bound_rhs
=============  =============================================================
"""

import argparse
import dataclasses
import io
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from ._validation import default_resolution
from .analysis import (
    convergence_experiment,
    random_trig_polynomial,
    strong_type_check,
    stress_corpus,
    weak_type_scan,
)
from .counterexample import (
    IndicatorSpec,
    build_geometry,
    lemma_gt_check,
    lower_bound_experiment,
    operator_bound_rhs,
)
from .io import write_rows
from .kernels import dirichlet, norlund_kernel, riesz_kernel
from .orlicz import YoungFunction, containment_ratio_scan
from .spectral import AxisPlan, CoefficientGrid, apply_mixed_means, brute_force_means

log = logging.getLogger(__name__)

EXPERIMENTS = ("kernels", "means-check", "converge", "weak-strong", "diverge", "orlicz")
FUNCTIONS = ("cos", "const", "random")

# regression guards for the weak/strong constants, fixed after the baseline run
WEAK_CAP = 10.0
STRONG_CAP = 10.0

DEFAULTS = {
    "kernels": {"orders": "0,1,2,4,8", "grid": 256},
    "means-check": {"orders": "0..8"},
    "converge": {"orders": "8..512:x2"},
    "weak-strong": {"orders": "1..1024:x2", "grid": 8192},
    "diverge": {"orders": "1..5", "young": "llog_pow:0.5"},
    "orlicz": {"orders": "1..16", "young": "llog_pow:0.5"},
}


HELP = {
    "kernels": "tabulate the Dirichlet, Nörlund and Riesz kernels",
    "means-check": "compare the multiplier means with the literal averaging sum",
    "converge": "L1 error of the means against the input function",
    "weak-strong": "weak and strong (1,1) constants over a stress corpus",
    "diverge": "growth of the means of normalized indicators",
    "orlicz": "containment scan and operator bound for a Young function",
}


class ConfigError(ValueError):
    def __init__(self, field, message):
        super().__init__(f"invalid config field '{field}': {message}")
        self.field = field


@dataclasses.dataclass(frozen=True)
class RunConfig:
    experiment: str
    dim: int = 1
    axes: str = None
    orders: tuple = ()
    young: str = "llog_r:1"
    grid: int = None
    out: str = "results"
    jobs: int = 1
    function: str = "cos"
    degree: int = 8
    seed: int = 0

    @property
    def plan_axes(self):
        return self.axes if self.axes is not None else "L" * self.dim

    @property
    def b(self):
        return self.plan_axes.count("L")

    @property
    def young_function(self):
        return YoungFunction.parse(self.young)

    @property
    def stem(self):
        return f"{self.experiment}_d{self.dim}_b{self.b}_n{self.orders[0]}-{self.orders[-1]}"

    def validate(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError("experiment", f"{self.experiment!r} is not one of {EXPERIMENTS}")
        if self.dim < 1:
            raise ConfigError("dim", "must be >= 1")
        axes = self.plan_axes
        if len(axes) != self.dim or set(axes.upper()) - {"L", "R"}:
            raise ConfigError("axes", f"need {self.dim} letters from 'L'/'R', got {axes!r}")
        if not self.orders:
            raise ConfigError("orders", "order list is empty")
        floor = 1 if self.experiment in ("diverge", "orlicz", "converge", "weak-strong") else 0
        if min(self.orders) < floor:
            raise ConfigError("orders", f"orders must be >= {floor}")
        if self.experiment == "means-check" and max(self.orders) > 64:
            raise ConfigError("orders", "brute-force oracle is limited to orders <= 64")
        if self.experiment in ("diverge", "orlicz") and self.b < 1:
            raise ConfigError("axes", "needs at least one Nörlund ('L') axis")
        if self.experiment in ("weak-strong",) and self.dim != 1:
            raise ConfigError("dim", "weak/strong estimates live on T^1")
        try:
            self.young_function
        except ValueError as exc:
            raise ConfigError("young", str(exc)) from None
        if self.grid is not None and self.grid < 1:
            raise ConfigError("grid", "must be positive")
        if self.jobs < 1:
            raise ConfigError("jobs", "must be >= 1")
        if self.function not in FUNCTIONS:
            raise ConfigError("function", f"{self.function!r} is not one of {FUNCTIONS}")
        if self.degree < 0:
            raise ConfigError("degree", "must be >= 0")
        return self

    def manifest(self):
        lines = [f"# logmeans {__version__}", f"version = {__version__}"]
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if field.name == "orders":
                value = ",".join(str(n) for n in value)
            if value is None:
                continue
            lines.append(f"{field.name} = {value}")
        if self.experiment == "weak-strong":
            lines += [f"weak_cap = {WEAK_CAP:g}", f"strong_cap = {STRONG_CAP:g}"]
        return "\n".join(lines) + "\n"


def parse_orders(text):
    orders = []
    for item in (s.strip() for s in str(text).split(",")):
        if not item:
            continue
        try:
            if ".." in item:
                lo, _, rest = item.partition("..")
                hi, _, step = rest.partition(":x")
                lo, hi = int(lo), int(hi)
                if step:
                    factor = int(step)
                    if factor < 2 or lo < 1:
                        raise ValueError
                    n = lo
                    while n <= hi:
                        orders.append(n)
                        n *= factor
                else:
                    orders.extend(range(lo, hi + 1))
            else:
                orders.append(int(item))
        except ValueError:
            raise ConfigError("orders", f"cannot parse {item!r}") from None
    return tuple(orders)


def read_config(path):
    values = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"line {lineno}", f"expected 'key = value', got {line!r}")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


_INT_FIELDS = ("dim", "grid", "jobs", "degree", "seed")
_IGNORED = ("version", "weak_cap", "strong_cap")


def build_config(experiment, file_values, overrides):
    raw = dict(DEFAULTS.get(experiment, {}))
    raw.update({k: v for k, v in file_values.items() if k not in _IGNORED})
    raw.update({k: v for k, v in overrides.items() if v is not None})
    raw.setdefault("experiment", experiment)
    known = {f.name for f in dataclasses.fields(RunConfig)}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown key")
    kwargs = {}
    for key, value in raw.items():
        if key in _INT_FIELDS:
            try:
                value = int(value)
            except (TypeError, ValueError):
                raise ConfigError(key, f"expected an integer, got {value!r}") from None
        elif key == "orders":
            value = parse_orders(value)
        elif key == "axes":
            value = str(value).upper()
        kwargs[key] = value
    return RunConfig(**kwargs).validate()


def _map(config, fn, cells):
    if config.jobs == 1:
        return [fn(c) for c in cells]
    with ThreadPoolExecutor(max_workers=config.jobs) as pool:
        return list(pool.map(fn, cells))


def _kernels(config):
    g = config.grid or 256
    u = -np.pi + 2 * np.pi * np.arange(g) / g

    def cell(n):
        d, f, r = dirichlet(n, u), norlund_kernel(n, u), riesz_kernel(n, u)
        return [(n, u[k], d[k], f[k], r[k]) for k in range(g)]

    header = ["n", "u", "dirichlet", "norlund", "riesz"]
    return header, [row for rows in _map(config, cell, config.orders) for row in rows]


def _means_check(config, trials=4):
    rng = np.random.default_rng(config.seed)
    cells = []
    for n in config.orders:
        for t in range(trials):
            shape = (2 * config.degree + 1,) * config.dim
            raw = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
            cells.append((n, t, raw))

    def cell(args):
        n, t, raw = args
        coeffs = CoefficientGrid(raw)
        plan = AxisPlan.from_string(config.plan_axes, n)
        diff = apply_mixed_means(coeffs, plan).coeffs - brute_force_means(coeffs, plan).coeffs
        return n, t, float(np.abs(diff).max())

    return ["order", "trial", "max_abs_diff"], _map(config, cell, cells)


def converge_function(config):
    degree = config.degree
    if config.function == "const":
        return CoefficientGrid(np.ones((1,) * config.dim), real=True)
    if config.function == "cos":
        cos = np.array([0.5, 0.0, 0.5])
        return CoefficientGrid.tensor([cos] * config.dim, real=True)
    return random_trig_polynomial((degree,) * config.dim, seed=config.seed)


def _converge(config):
    f = converge_function(config)
    resolution = config.grid or default_resolution(max(f.degrees))
    resolution = (resolution,) * config.dim

    def cell(n):
        return convergence_experiment(f, config.plan_axes, (n,), resolution).errors[0]

    errors = _map(config, cell, config.orders)
    return ["n", "error"], list(zip(config.orders, errors))


def _weak_strong(config):
    corpus = stress_corpus(config.grid or 8192, seed=config.seed)
    cells = [(name, n) for name in corpus for n in config.orders]

    def cell(args):
        name, n = args
        field = corpus[name]
        weak = weak_type_scan(field, n).constant_estimate
        lhs, rhs = strong_type_check(field, n)
        return name, n, weak, lhs / rhs if rhs else 0.0

    return ["function", "n", "weak_constant", "strong_ratio"], _map(config, cell, cells)


def divergence_row(n, b, d, Q):
    geom = build_geometry(n)
    spec = IndicatorSpec(b=b, gamma=geom.gamma, d=d)
    l1 = lower_bound_experiment(n, b, d)
    norm = spec.luxemburg_norm(Q)
    return (n, b, geom.gamma, geom.j_measure, lemma_gt_check(n), l1, norm, l1 / norm,
            operator_bound_rhs(n, b, Q))


def _diverge(config):
    Q = config.young_function

    def cell(n):
        return divergence_row(n, config.b, config.dim, Q)

    header = ["n", "b", "gamma", "j_measure", "lemma_min", "l1_of_means",
              "luxemburg_norm", "ratio", "bound_rhs"]
    return header, _map(config, cell, config.orders)


def _orlicz(config):
    Q = config.young_function
    b = config.b
    u = np.array([4.0 ** (n * b) for n in config.orders])
    ratios = containment_ratio_scan(Q, b, u)
    rows = [(n, u[i], Q(u[i]), ratios[i], operator_bound_rhs(n, b, Q))
            for i, n in enumerate(config.orders)]
    return ["n", "u", "young_value", "containment_ratio", "bound_rhs"], rows


RUNNERS = {
    "kernels": _kernels,
    "means-check": _means_check,
    "converge": _converge,
    "weak-strong": _weak_strong,
    "diverge": _diverge,
    "orlicz": _orlicz,
}


def run(config):
    """Execute ``config`` and write its CSV and manifest; returns the CSV path."""
    out = Path(config.out)
    header, rows = RUNNERS[config.experiment](config)
    buf = io.StringIO()
    write_rows(buf, header, rows)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{config.stem}.csv"
    csv_path.write_text(buf.getvalue())
    (out / f"{config.stem}.manifest").write_text(config.manifest())
    log.info("wrote %s (%d rows)", csv_path, len(rows))
    return csv_path


def _add_flags(parser):
    parser.add_argument("--config", help="key = value file; flags override it")
    parser.add_argument("--dim", type=int)
    parser.add_argument("--axes", help="one letter per axis: L (Nörlund) or R (Riesz)")
    parser.add_argument("--orders", help="e.g. 8,16 or 1..5 or 8..512:x2")
    parser.add_argument("--young", help="Young function, e.g. llog_pow:0.5, llog_r:1, power:2")
    parser.add_argument("--grid", type=int, help="grid points per axis")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--jobs", type=int, help="worker threads")
    parser.add_argument("--function", help=f"test function for converge: {', '.join(FUNCTIONS)}")
    parser.add_argument("--degree", type=int, help="trigonometric degree of test functions")
    parser.add_argument("--seed", type=int)


def make_parser():
    parser = argparse.ArgumentParser(prog="logmeans", description=__doc__.split("\n\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in EXPERIMENTS:
        _add_flags(sub.add_parser(name, help=HELP[name]))
    rerun = sub.add_parser("run", help="run the experiment named in a config or manifest")
    rerun.add_argument("config_file")
    _add_flags(rerun)
    return parser


def main(argv=None):
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    flags = {k: v for k, v in vars(args).items()
             if k not in ("command", "config", "config_file", "verbose")}
    try:
        config_path = args.config_file if args.command == "run" else args.config
        file_values = read_config(config_path) if config_path else {}
        experiment = file_values.get("experiment") if args.command == "run" else args.command
        if experiment is None:
            raise ConfigError("experiment", "missing from config file")
        if args.command != "run":
            file_values.pop("experiment", None)
        config = build_config(experiment, file_values, flags)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        run(config)
    except OSError as exc:
        print(f"error: cannot write to {config.out}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
