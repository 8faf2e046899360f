"""Divergence construction for spaces wider than ``L log^{|B|} L``.

For each ``n`` the test function is ``f_n = 1_{[0, gamma_n]^b} / (2 gamma_n)^b``
on the Nörlund axes and constant on the Riesz axes.  Its means of order
``N = 4**n`` have ``L1`` norm growing like ``n**b`` while ``||f_n||_1`` stays
fixed.  For large ``n`` the Nörlund kernel ``F_N(x - z)`` is bounded below by
``c / x`` for ``x`` in ``J_n`` and ``0 <= z <= gamma_n``.
"""

import logging
from dataclasses import dataclass

import numpy as np

from ._validation import check_int
from .kernels import norlund_kernel
from .orlicz import simple_function_norm
from .spectral import (
    AxisPlan,
    CoefficientGrid,
    Treatment,
    apply_mixed_means,
    l1_norm,
    multiplier,
    synthesize,
)

log = logging.getLogger(__name__)

__all__ = [
    "DivergenceGeometry",
    "IndicatorSpec",
    "build_geometry",
    "indicator_coeff",
    "kernel_order",
    "lemma_gt_check",
    "means_resolution",
    "lower_bound_experiment",
    "lower_bound_full",
    "divergence_ratio",
    "operator_bound_rhs",
]


def kernel_order(n):
    """Order ``2**(2n)`` of the means used at scale ``n``."""
    return 4 ** check_int(n, "n", minimum=1)


@dataclass(frozen=True, eq=False)
class DivergenceGeometry:
    n: int
    gamma: float
    alpha: np.ndarray
    beta: np.ndarray

    @property
    def intervals(self):
        """Shrunken components ``[alpha + gamma, beta - gamma]`` of ``J_n``."""
        return np.column_stack([self.alpha + self.gamma, self.beta - self.gamma])

    @property
    def j_measure(self):
        lo, hi = self.intervals.T
        return float(np.sum(hi - lo))

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        lo, hi = self.intervals.T
        return np.any((x[..., None] >= lo) & (x[..., None] <= hi), axis=-1)

    def inverse_integral(self):
        """``int_{J_n} dx / x`` in closed form."""
        lo, hi = self.intervals.T
        return float(np.sum(np.log(hi / lo)))

    def sample(self, count):
        """``count`` points spread uniformly over the measure of ``J_n``."""
        lo, hi = self.intervals.T
        lengths = hi - lo
        edges = np.concatenate([[0.0], np.cumsum(lengths)])
        s = np.linspace(0.0, edges[-1], count)
        comp = np.clip(np.searchsorted(edges, s, side="right") - 1, 0, lo.size - 1)
        return lo[comp] + (s - edges[comp])


def build_geometry(n):
    n = check_int(n, "n", minimum=1)
    scale = 6 * (4**n + 0.5)
    m = np.arange(1, 2 ** (n - 1) + 1)
    return DivergenceGeometry(
        n=n,
        gamma=np.pi / scale,
        alpha=np.pi * (12 * m + 1) / scale,
        beta=np.pi * (12 * m + 5) / scale,
    )


@dataclass(frozen=True)
class IndicatorSpec:
    """``1_{[0, gamma]^b} / (2 gamma)^b`` on ``T^d``, constant in the last ``d - b`` slots."""

    b: int
    gamma: float
    d: int = None

    def __post_init__(self):
        check_int(self.b, "b", minimum=1)
        d = self.b if self.d is None else check_int(self.d, "d", minimum=self.b)
        object.__setattr__(self, "d", d)
        if not 0 < self.gamma < 2 * np.pi:
            raise ValueError("gamma must lie in (0, 2 pi)")

    @property
    def height(self):
        return (2 * self.gamma) ** -self.b

    @property
    def measure(self):
        return self.gamma**self.b * (2 * np.pi) ** (self.d - self.b)

    @property
    def l1_norm(self):
        return 0.5**self.b * (2 * np.pi) ** (self.d - self.b)

    def luxemburg_norm(self, Q):
        return simple_function_norm(self.height, self.measure, Q)

    def coefficients(self, degree):
        """1D coefficients of the normalized indicator factor."""
        j = np.arange(-degree, degree + 1)
        return indicator_coeff(self.gamma, j) / (2 * self.gamma)


def indicator_coeff(gamma, j):
    """Exact Fourier coefficient of ``1_{[0, gamma]}`` at frequency ``j``."""
    if not 0 < gamma < 2 * np.pi:
        raise ValueError("gamma must lie in (0, 2 pi)")
    j = np.asarray(j)
    jf = np.where(j == 0, 1, j).astype(float)
    out = np.where(j == 0, gamma / (2 * np.pi), (1 - np.exp(-1j * jf * gamma)) / (2j * np.pi * jf))
    return out if out.ndim else complex(out)


def lemma_gt_check(n, x_samples=256, z_samples=64):
    """``min x * F_N(x - z)`` over ``x`` in ``J_n``, ``0 <= z <= gamma_n``, ``N = 4**n``."""
    geom = build_geometry(n)
    x = geom.sample(x_samples)
    z = np.linspace(0.0, geom.gamma, z_samples)
    u = np.subtract.outer(x, z)
    values = x[:, None] * norlund_kernel(kernel_order(n), u)
    return float(values.min())


def means_resolution(n):
    """Grid size ``128 * 4**n`` (at least 4096): spacing about ``gamma_n / 10``."""
    return max(4096, 128 * kernel_order(n))


def _norlund_factor(n, resolution=None):
    """``L1`` norm of the order-``4**n`` Nörlund means of the normalized 1D indicator."""
    order = kernel_order(n)
    geom = build_geometry(n)
    resolution = means_resolution(n) if resolution is None else resolution
    spec = IndicatorSpec(b=1, gamma=geom.gamma)
    coeffs = spec.coefficients(order) * multiplier(Treatment.NORLUND, order, np.arange(-order, order + 1))
    field = synthesize(CoefficientGrid(coeffs, real=True), (resolution,))
    log.debug("n=%d: grid spacing / gamma = %.4f", n, (2 * np.pi / resolution) / geom.gamma)
    return l1_norm(field)


def lower_bound_experiment(n, b, d=None, resolution=None):
    """``|| (L_{N(B)} o R_{N(B')}) f_n ||_{L1(T^d)}`` with ``N = 4**n``.

    The output is a tensor product, so its ``L1`` norm is the product of the
    per-axis norms: the Nörlund factor on each of the ``b`` axes and ``2 pi``
    on each Riesz axis (the means reproduce constants).
    """
    d = b if d is None else d
    check_int(b, "b", minimum=1)
    if check_int(d, "d", minimum=1) < b:
        raise ValueError(f"b = {b} exceeds d = {d}")
    return _norlund_factor(n, resolution) ** b * (2 * np.pi) ** (d - b)


def lower_bound_full(n, axes, resolution=None):
    """Same quantity on a full ``d``-dimensional grid (small ``n`` only)."""
    order = kernel_order(n)
    geom = build_geometry(n)
    plan = AxisPlan.from_string(axes, order)
    spec = IndicatorSpec(b=1, gamma=geom.gamma)
    factors = [spec.coefficients(order) if t is Treatment.NORLUND else np.ones(1) for t in plan.tags]
    coeffs = CoefficientGrid.tensor(factors, real=True)
    if resolution is None:
        resolution = tuple(means_resolution(n) if t is Treatment.NORLUND else 1 for t in plan.tags)
    return l1_norm(synthesize(apply_mixed_means(coeffs, plan), resolution))


def divergence_ratio(n, b, Q, d=None):
    """Empirical lower bound for the ``L_Q -> L1`` operator norm at scale ``n``."""
    d = b if d is None else d
    spec = IndicatorSpec(b=b, gamma=build_geometry(n).gamma, d=d)
    return lower_bound_experiment(n, b, d) / spec.luxemburg_norm(Q)


def operator_bound_rhs(n, b, Q):
    """``2**(2nb) n**b / Q(2**(2nb))``."""
    n = check_int(n, "n", minimum=1)
    b = check_int(b, "b", minimum=1)
    u = 4.0 ** (n * b)
    return u * n**b / Q(u)
