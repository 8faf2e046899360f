"""Fourier coefficient grids, sampled fields and the mixed logarithmic means.

The Nörlund and Riesz means are weighted averages of partial sums, and a
frequency ``j`` survives in ``S_m`` exactly when ``|j| <= m``.  Summing the
weights of the partial sums that contain ``j`` gives per-frequency
multipliers::

    norlund:  lambda_n(j) = l_{n-|j|} / l_n
    riesz:    r_n(j)      = 1 - l_{|j|-1} / l_n      (l_{-1} = 0)

and both vanish for ``|j| > n``.  :func:`apply_mixed_means` uses these;
:func:`brute_force_means` averages the partial sums literally and is kept
as the oracle.
"""

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from ._validation import (
    check_int,
    check_per_axis,
    check_resolution,
    default_resolution,
)
from .kernels import _TABLE_LIMIT, log_weight, log_weights

__all__ = [
    "Treatment",
    "CoefficientGrid",
    "AxisPlan",
    "SampledField",
    "norlund_multiplier",
    "riesz_multiplier",
    "multiplier",
    "partial_sum",
    "apply_mixed_means",
    "brute_force_means",
    "synthesize",
    "analyze",
    "l1_norm",
    "field_means",
]


class Treatment(enum.Enum):
    NORLUND = "L"
    RIESZ = "R"


def _frozen(array):
    array = np.array(array, copy=True)
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class CoefficientGrid:
    """Coefficients ``c[j]`` for ``j`` in the box ``prod_a [-N_a, N_a]``.

    ``coeffs[idx]`` holds the frequency ``idx - N`` along each axis.  With
    ``real=True`` the grid must be Hermitian, ``c[-j] = conj(c[j])``.
    """

    coeffs: np.ndarray
    real: bool = False

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.ndim < 1:
            raise ValueError("coefficient grid needs at least one axis")
        for axis, size in enumerate(coeffs.shape):
            if size % 2 != 1:
                raise ValueError(f"axis {axis} has even extent {size}; need 2N + 1")
        object.__setattr__(self, "coeffs", _frozen(coeffs))
        if self.real:
            mirrored = np.conj(coeffs[(slice(None, None, -1),) * coeffs.ndim])
            scale = max(np.abs(coeffs).max(), 1.0)
            if not np.allclose(coeffs, mirrored, rtol=0, atol=1e-12 * scale):
                raise ValueError("real grid violates Hermitian symmetry")

    @property
    def dims(self):
        return self.coeffs.ndim

    @property
    def degrees(self):
        return tuple((s - 1) // 2 for s in self.coeffs.shape)

    def frequencies(self, axis):
        n = self.degrees[axis]
        return np.arange(-n, n + 1)

    def coeff(self, j):
        j = check_per_axis(j, self.dims, "frequency", minimum=-(1 << 62))
        if any(abs(ja) > n for ja, n in zip(j, self.degrees)):
            return 0j
        return complex(self.coeffs[tuple(ja + n for ja, n in zip(j, self.degrees))])

    def with_coeffs(self, coeffs):
        return CoefficientGrid(coeffs, real=self.real)

    @classmethod
    def zeros(cls, degrees, real=False):
        shape = tuple(2 * n + 1 for n in degrees)
        return cls(np.zeros(shape, dtype=complex), real=real)

    @classmethod
    def from_function(cls, coeff_fn, degrees, real=False):
        """Tabulate ``coeff_fn(*j)`` over the frequency box (broadcast call)."""
        axes = [np.arange(-n, n + 1) for n in degrees]
        mesh = np.meshgrid(*axes, indexing="ij")
        return cls(np.broadcast_to(coeff_fn(*mesh), mesh[0].shape), real=real)

    @classmethod
    def tensor(cls, factors, real=False):
        """Outer product of 1D coefficient vectors."""
        out = np.ones(())
        for f in factors:
            out = np.multiply.outer(out, np.asarray(f, dtype=complex))
        return cls(out, real=real)


@dataclass(frozen=True)
class AxisPlan:
    """Per-axis choice of Nörlund (``B``) or Riesz (``B'``) means and order."""

    tags: tuple
    orders: tuple

    def __post_init__(self):
        tags = tuple(t if isinstance(t, Treatment) else Treatment(t) for t in self.tags)
        if not tags:
            raise ValueError("plan needs at least one axis")
        orders = check_per_axis(self.orders, len(tags), "orders")
        object.__setattr__(self, "tags", tags)
        object.__setattr__(self, "orders", orders)

    @classmethod
    def from_string(cls, axes, orders):
        """``axes`` like ``"LRL"``: ``L`` marks a Nörlund axis, ``R`` a Riesz axis."""
        try:
            tags = tuple(Treatment(c) for c in axes.upper())
        except ValueError:
            raise ValueError(f"axes must only contain 'L' or 'R', got {axes!r}") from None
        return cls(tags, orders)

    @property
    def dims(self):
        return len(self.tags)

    @property
    def norlund_axes(self):
        return tuple(a for a, t in enumerate(self.tags) if t is Treatment.NORLUND)

    @property
    def riesz_axes(self):
        return tuple(a for a, t in enumerate(self.tags) if t is Treatment.RIESZ)

    @property
    def axes(self):
        return "".join(t.value for t in self.tags)

    def with_orders(self, orders):
        return AxisPlan(self.tags, orders)


@dataclass(frozen=True, eq=False)
class SampledField:
    """Samples on the grid ``x_a = -pi + 2 pi k / G_a``, ``k = 0..G_a - 1``."""

    samples: np.ndarray

    def __post_init__(self):
        samples = np.asarray(self.samples)
        if samples.ndim < 1 or samples.size == 0:
            raise ValueError("field needs at least one axis and one sample")
        if not (np.isrealobj(samples) or np.iscomplexobj(samples)) or samples.dtype == object:
            raise TypeError("samples must be numeric")
        dtype = complex if np.iscomplexobj(samples) else float
        object.__setattr__(self, "samples", _frozen(samples.astype(dtype)))

    @property
    def dims(self):
        return self.samples.ndim

    @property
    def resolution(self):
        return self.samples.shape

    @property
    def is_real(self):
        return not np.iscomplexobj(self.samples)

    def spacing(self, axis):
        return 2 * np.pi / self.resolution[axis]

    def grid(self, axis):
        g = self.resolution[axis]
        return -np.pi + 2 * np.pi * np.arange(g) / g

    def mesh(self):
        return np.meshgrid(*(self.grid(a) for a in range(self.dims)), indexing="ij")

    @property
    def cell_volume(self):
        return float(np.prod([self.spacing(a) for a in range(self.dims)]))

    @classmethod
    def from_function(cls, fn, resolution):
        """Sample ``fn(x_1, ..., x_d)`` (broadcast call) on the uniform grid."""
        resolution = tuple(resolution)
        axes = [-np.pi + 2 * np.pi * np.arange(g) / g for g in resolution]
        mesh = np.meshgrid(*axes, indexing="ij")
        return cls(np.broadcast_to(fn(*mesh), mesh[0].shape))


def _norlund_at(n, freqs):
    freqs = np.abs(np.asarray(freqs, dtype=np.int64))
    out = np.zeros(freqs.shape)
    inside = freqs <= n
    if n <= _TABLE_LIMIT:
        out[inside] = log_weights(n - freqs[inside]) / log_weight(n)
        return out
    # huge n: l_n - l_{n-j} = sum_{k=n-j+1}^{n} 1/(k+1), summed directly
    top = int(freqs[inside].max()) if inside.any() else 0
    tail = np.concatenate([[0.0], np.cumsum(1.0 / (float(n) + 1.0 - np.arange(top)))])
    out[inside] = 1.0 - tail[freqs[inside]] / log_weight(n)
    return out


def _riesz_at(n, freqs):
    freqs = np.abs(np.asarray(freqs, dtype=np.int64))
    out = np.zeros(freqs.shape)
    inside = freqs <= n
    out[inside] = 1.0 - log_weights(freqs[inside] - 1) / log_weight(n)
    return out


def multiplier(treatment, n, freqs):
    """Weights of the order-``n`` means at the integer frequencies ``freqs``."""
    n = check_int(n, "order")
    treatment = treatment if isinstance(treatment, Treatment) else Treatment(treatment)
    if treatment is Treatment.NORLUND:
        return _norlund_at(n, freqs)
    return _riesz_at(n, freqs)


def norlund_multiplier(n):
    """``(lambda_n(0), ..., lambda_n(n))`` with ``lambda_n(j) = l_{n-j}/l_n``."""
    n = check_int(n, "order")
    return _norlund_at(n, np.arange(n + 1))


def riesz_multiplier(n):
    """``(r_n(0), ..., r_n(n))`` with ``r_n(j) = 1 - l_{j-1}/l_n``."""
    n = check_int(n, "order")
    return _riesz_at(n, np.arange(n + 1))


def partial_sum(coeffs, cutoff):
    """Rectangular partial sum: drop every frequency with ``|j_a| > cutoff_a``."""
    cutoff = check_per_axis(cutoff, coeffs.dims, "cutoff")
    for axis, (c, n) in enumerate(zip(cutoff, coeffs.degrees)):
        if c > n:
            raise ValueError(f"cutoff[{axis}] = {c} exceeds stored degree {n}")
    mask = np.ones(coeffs.coeffs.shape, dtype=bool)
    for axis, c in enumerate(cutoff):
        keep = np.abs(coeffs.frequencies(axis)) <= c
        shape = [1] * coeffs.dims
        shape[axis] = -1
        mask = mask & keep.reshape(shape)
    return coeffs.with_coeffs(np.where(mask, coeffs.coeffs, 0))


def _check_plan(coeffs, plan):
    if plan.dims != coeffs.dims:
        raise ValueError(f"plan has {plan.dims} axes but coefficients have {coeffs.dims}")


def apply_mixed_means(coeffs, plan, axis_order=None):
    """Mixed means ``(L_{n_B} o R_{n_B'}) f`` as separable coefficient scaling.

    The per-axis weight vectors may be computed in any ``axis_order``; they
    are combined in ascending axis order and applied in one product, so the
    result is bit-for-bit independent of ``axis_order``.
    """
    _check_plan(coeffs, plan)
    axis_order = range(plan.dims) if axis_order is None else axis_order
    if sorted(axis_order) != list(range(plan.dims)):
        raise ValueError(f"axis_order must be a permutation of 0..{plan.dims - 1}")
    weights = {
        axis: multiplier(plan.tags[axis], plan.orders[axis], coeffs.frequencies(axis))
        for axis in axis_order
    }
    total = np.ones(())
    for axis in range(plan.dims):
        total = np.multiply.outer(total, weights[axis])
    return coeffs.with_coeffs(coeffs.coeffs * total)


def brute_force_means(coeffs, plan):
    """Literal weighted average of rectangular partial sums (test oracle).

    Nörlund axes use ``S_{n-i}``, Riesz axes ``S_i``, each weighted by
    ``1/(i+1)``, normalized by ``prod_a l_{n_a}``.  Cost grows like
    ``prod_a (n_a + 1)`` partial sums.
    """
    _check_plan(coeffs, plan)
    total = np.zeros(coeffs.coeffs.shape, dtype=complex)
    for idx in itertools.product(*(range(n + 1) for n in plan.orders)):
        cutoff = []
        weight = 1.0
        for tag, n, i, deg in zip(plan.tags, plan.orders, idx, coeffs.degrees):
            m = n - i if tag is Treatment.NORLUND else i
            cutoff.append(min(m, deg))
            weight /= i + 1
        total += weight * partial_sum(coeffs, cutoff).coeffs
    norm = np.prod([log_weight(n) for n in plan.orders])
    return coeffs.with_coeffs(total / norm)


def _signs(n):
    # e^{i j x_0} with x_0 = -pi
    return np.where(np.arange(-n, n + 1) % 2 == 0, 1.0, -1.0)


def synthesize(coeffs, resolution=None, method="fft"):
    """Evaluate the trigonometric polynomial on the uniform grid.

    ``method="fft"`` zero-pads into an inverse FFT; ``method="direct"`` sums
    the exponentials axis by axis.  A Hermitian (``real``) grid yields real
    samples.
    """
    degrees = coeffs.degrees
    if resolution is None:
        resolution = tuple(default_resolution(n) for n in degrees)
    resolution = check_resolution(resolution, degrees)
    if method == "fft":
        values = np.array(coeffs.coeffs)
        for axis, n in enumerate(degrees):
            shape = [1] * coeffs.dims
            shape[axis] = -1
            values = values * _signs(n).reshape(shape)
        padded = np.zeros(resolution, dtype=complex)
        index = np.ix_(*[np.arange(-n, n + 1) % g for n, g in zip(degrees, resolution)])
        padded[index] = values
        samples = np.fft.ifftn(padded) * np.prod(resolution)
    elif method == "direct":
        samples = np.array(coeffs.coeffs)
        for axis, (n, g) in enumerate(zip(degrees, resolution)):
            x = -np.pi + 2 * np.pi * np.arange(g) / g
            basis = np.exp(1j * np.multiply.outer(x, np.arange(-n, n + 1)))
            samples = np.moveaxis(np.tensordot(basis, samples, axes=([1], [axis])), 0, axis)
    else:
        raise ValueError(f"unknown synthesis method {method!r}")
    return SampledField(samples.real if coeffs.real else samples)


def analyze(field, degrees=None):
    """Rectangle-rule Fourier coefficients of ``field`` up to ``degrees``.

    Exact for trigonometric polynomials of degree ``<= G_a - N_a - 1``;
    otherwise aliased.  ``degrees=None`` keeps every resolvable frequency.
    """
    if degrees is None:
        degrees = tuple((g - 1) // 2 for g in field.resolution)
    degrees = check_per_axis(degrees, field.dims, "degrees")
    resolution = check_resolution(field.resolution, degrees, "field resolution")
    spectrum = np.fft.fftn(field.samples) / np.prod(resolution)
    index = np.ix_(*[np.arange(-n, n + 1) % g for n, g in zip(degrees, resolution)])
    values = spectrum[index]
    for axis, n in enumerate(degrees):
        shape = [1] * field.dims
        shape[axis] = -1
        values = values * _signs(n).reshape(shape)
    if field.is_real:
        # symmetrize to remove rounding-level asymmetry of the FFT
        mirrored = np.conj(values[(slice(None, None, -1),) * values.ndim])
        values = (values + mirrored) / 2
    return CoefficientGrid(values, real=field.is_real)


def l1_norm(field):
    """``int_{T^d} |f|`` by the rectangle rule."""
    return float(np.abs(field.samples).sum() * field.cell_volume)


def field_means(field, plan):
    """Apply the mixed means to sampled data through its discrete spectrum."""
    coeffs = analyze(field)
    return synthesize(apply_mixed_means(coeffs, plan), field.resolution)
