"""Experiment drivers: L1 convergence, the endpoint estimates and growth fits."""

from dataclasses import dataclass

import numpy as np

from .spectral import (
    AxisPlan,
    CoefficientGrid,
    SampledField,
    analyze,
    apply_mixed_means,
    field_means,
    l1_norm,
    synthesize,
)

__all__ = [
    "ConvergenceReport",
    "WeakTypeReport",
    "convergence_experiment",
    "theorem1_ratio",
    "weak_type_scan",
    "strong_type_check",
    "growth_fit",
    "random_trig_polynomial",
    "normalized_indicator",
    "spike_train",
    "stress_corpus",
]


@dataclass(frozen=True)
class ConvergenceReport:
    axes: str
    orders: tuple
    errors: tuple

    @property
    def monotone_tail(self):
        tail = self.errors[-3:]
        return all(b <= a for a, b in zip(tail, tail[1:]))

    @property
    def reduction(self):
        """Final error relative to the first one (0 when both vanish)."""
        if self.errors[0] == 0:
            return 0.0
        return self.errors[-1] / self.errors[0]


@dataclass(frozen=True)
class WeakTypeReport:
    y_grid: np.ndarray
    tail_measures: np.ndarray
    constant_estimate: float


def convergence_experiment(f, axes, orders, resolution=None):
    """``||(L o R)_n f - f||_1`` for each ``n`` in ``orders`` (same ``n`` on every axis).

    ``f`` is a :class:`CoefficientGrid` or a :class:`SampledField` (analyzed
    at full resolution).  Errors are measured on one grid for all orders.
    """
    if isinstance(f, SampledField):
        resolution = f.resolution if resolution is None else resolution
        f = analyze(f)
    orders = tuple(orders)
    if not orders:
        raise ValueError("orders must not be empty")
    reference = synthesize(f, resolution)
    errors = []
    for n in orders:
        plan = AxisPlan.from_string(axes, n)
        means = synthesize(apply_mixed_means(f, plan), reference.resolution)
        errors.append(l1_norm(SampledField(means.samples - reference.samples)))
    return ConvergenceReport(axes=axes.upper(), orders=orders, errors=tuple(errors))


def theorem1_ratio(field, plan):
    """``(||means f||_1, 1 + int |f| log(1+|f|)**|B|)``."""
    b = len(plan.norlund_axes)
    lhs = l1_norm(field_means(field, plan))
    mod = np.abs(field.samples)
    rhs = 1.0 + float(np.sum(mod * np.log1p(mod) ** b) * field.cell_volume)
    return lhs, rhs


def _check_1d(field):
    if field.dims != 1:
        raise ValueError(f"expected a field on T^1, got {field.dims} dimensions")


def weak_type_scan(field, n, y_grid=None):
    """Level sets of ``f * F_n`` (the Nörlund means of ``f``).

    ``tail_measures`` are reported on ``y_grid`` (default: 256 geometric
    levels up to ``max|f * F_n|``).  ``constant_estimate`` is the exact
    supremum over all ``y > 0`` of ``y mes{|f * F_n| > y} / ||f||_1``,
    read off the sorted samples.
    """
    _check_1d(field)
    g = np.abs(field_means(field, AxisPlan.from_string("L", n)).samples)
    cell = field.cell_volume
    top = float(g.max())
    if y_grid is None:
        y_grid = np.geomspace(top * 1e-8, top, 256) if top > 0 else np.ones(1)
    y_grid = np.asarray(y_grid, dtype=float)
    ordered = np.sort(g)
    tails = (g.size - np.searchsorted(ordered, y_grid, side="right")) * cell
    norm = l1_norm(field)
    if norm == 0:
        return WeakTypeReport(y_grid, tails, 0.0)
    descending = ordered[::-1]
    counts = np.arange(1, g.size + 1)
    constant = float(np.max(descending * counts) * cell / norm)
    return WeakTypeReport(y_grid, tails, constant)


def strong_type_check(field, n):
    """``(||f * G_n||_1, ||f||_1)`` with ``G_n`` the Riesz kernel."""
    _check_1d(field)
    return l1_norm(field_means(field, AxisPlan.from_string("R", n))), l1_norm(field)


def growth_fit(values, orders):
    """Least-squares line through ``(log order, log value)``: ``(slope, intercept)``."""
    values = np.asarray(values, dtype=float)
    orders = np.asarray(orders, dtype=float)
    if values.shape != orders.shape or values.ndim != 1:
        raise ValueError("values and orders must be 1D and of equal length")
    if values.size < 3:
        raise ValueError("growth_fit needs at least 3 points")
    if np.any(values <= 0) or np.any(orders <= 0):
        raise ValueError("values and orders must be positive")
    slope, intercept = np.polyfit(np.log(orders), np.log(values), 1)
    return float(slope), float(intercept)


def random_trig_polynomial(degrees, seed=0):
    """Real trigonometric polynomial with Gaussian coefficients (Hermitian grid)."""
    rng = np.random.default_rng(seed)
    shape = tuple(2 * n + 1 for n in degrees)
    raw = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    mirrored = np.conj(raw[(slice(None, None, -1),) * raw.ndim])
    return CoefficientGrid((raw + mirrored) / 2, real=True)


def normalized_indicator(resolution, width, start=0.0):
    """``1_{[start, start + width)} / width`` on the grid, at least one sample wide,
    rescaled so the grid ``L1`` norm is exactly 1."""
    h = 2 * np.pi / resolution
    count = max(1, int(round(width / h)))
    first = int(np.floor((start + np.pi) / h))
    samples = np.zeros(resolution)
    samples[(first + np.arange(count)) % resolution] = 1.0 / (count * h)
    return SampledField(samples)


def spike_train(resolution, spikes=8, seed=0):
    """Positive single-sample spikes at random positions, total mass 1."""
    rng = np.random.default_rng(seed)
    where = rng.choice(resolution, size=spikes, replace=False)
    mass = rng.uniform(0.5, 1.5, size=spikes)
    samples = np.zeros(resolution)
    samples[where] = mass / mass.sum() / (2 * np.pi / resolution)
    return SampledField(samples)


def stress_corpus(resolution=8192, seed=0):
    """Named 1D test fields that stress the ``L1`` endpoint."""
    trig = synthesize(random_trig_polynomial((8,), seed=seed), (resolution,))
    corpus = {
        "constant": SampledField(np.ones(resolution)),
        "cosine": SampledField.from_function(np.cos, (resolution,)),
        "trig_poly": trig,
    }
    for power in (4, 8, 12):
        corpus[f"indicator_h{power}"] = normalized_indicator(resolution, 2.0**-power)
    corpus["spikes"] = spike_train(resolution, seed=seed)
    corpus["spikes_dense"] = spike_train(resolution, spikes=64, seed=seed + 1)
    return corpus
