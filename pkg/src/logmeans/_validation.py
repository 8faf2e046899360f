"""Input validation shared by the library, the estimators and the CLI."""

import numbers

import numpy as np


def check_int(value, name, minimum=0):
    if isinstance(value, (bool, np.bool_)) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def check_per_axis(values, dims, name, minimum=0):
    """Broadcast a scalar or validate a length-``dims`` sequence of integers."""
    if isinstance(values, numbers.Integral):
        values = (values,) * dims
    values = tuple(values)
    if len(values) != dims:
        raise ValueError(f"{name} needs {dims} entries, got {len(values)}")
    return tuple(check_int(v, name, minimum) for v in values)


def check_positive(value, name):
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be a positive finite number, got {value}")
    return value


def check_resolution(resolution, degrees, name="resolution"):
    """Every axis must hold ``2N + 1`` distinct frequencies."""
    resolution = check_per_axis(resolution, len(degrees), name, minimum=1)
    for axis, (g, n) in enumerate(zip(resolution, degrees)):
        if g < 2 * n + 1:
            raise ValueError(
                f"{name}[{axis}] = {g} under-resolves degree {n}; need >= {2 * n + 1}"
            )
    return resolution


def default_resolution(degree):
    """Next power of two >= 4 (N + 1)."""
    return 1 << int(np.ceil(np.log2(4 * (degree + 1))))
