"""Nörlund and Riesz logarithmic means of multiple Fourier series."""

__version__ = "0.1.0"

from .kernels import dirichlet, log_weight, norlund_kernel, riesz_kernel
from .spectral import (
    AxisPlan,
    CoefficientGrid,
    SampledField,
    Treatment,
    analyze,
    apply_mixed_means,
    brute_force_means,
    field_means,
    l1_norm,
    norlund_multiplier,
    partial_sum,
    riesz_multiplier,
    synthesize,
)
from .orlicz import YoungFunction, luxemburg_norm, modular
from .estimators import FieldNorms, MixedLogMeans

__all__ = [
    "AxisPlan",
    "CoefficientGrid",
    "FieldNorms",
    "MixedLogMeans",
    "SampledField",
    "Treatment",
    "YoungFunction",
    "analyze",
    "apply_mixed_means",
    "brute_force_means",
    "dirichlet",
    "field_means",
    "l1_norm",
    "log_weight",
    "luxemburg_norm",
    "modular",
    "norlund_kernel",
    "norlund_multiplier",
    "partial_sum",
    "riesz_kernel",
    "riesz_multiplier",
    "synthesize",
]
