"""Columnar CSV persistence.

Coefficient grids are written as ``j1..jd,real,imag`` (frequency indices
then value), sampled fields as ``k1..kd,real,imag`` (grid indices then
value).  Rows follow C order; floats use 17 significant digits so a round
trip is exact.
"""

import csv
import io

import numpy as np

from .spectral import CoefficientGrid, SampledField

__all__ = ["fmt", "write_rows", "write_coefficients", "read_coefficients", "write_field", "read_field"]


def fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


def write_rows(handle, header, rows):
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])


def _dump(handle, prefix, values, offsets):
    dims = values.ndim
    header = [f"{prefix}{a + 1}" for a in range(dims)] + ["real", "imag"]
    rows = (
        [i - o for i, o in zip(idx, offsets)] + [float(v.real), float(v.imag)]
        for idx, v in np.ndenumerate(values)
    )
    write_rows(handle, header, rows)


def _load(handle, prefix):
    reader = csv.reader(handle)
    header = next(reader)
    dims = sum(1 for h in header if h.startswith(prefix))
    if header != [f"{prefix}{a + 1}" for a in range(dims)] + ["real", "imag"]:
        raise ValueError(f"unexpected CSV header {header}")
    rows = [r for r in reader if r]
    index = np.array([[int(v) for v in r[:dims]] for r in rows], dtype=np.int64).reshape(-1, dims)
    values = np.array([complex(float(r[dims]), float(r[dims + 1])) for r in rows])
    return index, values


def write_coefficients(coeffs, handle):
    _dump(handle, "j", coeffs.coeffs, coeffs.degrees)


def read_coefficients(handle, real=False):
    index, values = _load(handle, "j")
    degrees = np.abs(index).max(axis=0)
    out = np.zeros(tuple(2 * degrees + 1), dtype=complex)
    out[tuple((index + degrees).T)] = values
    return CoefficientGrid(out, real=real)


def write_field(field, handle):
    _dump(handle, "k", field.samples, (0,) * field.dims)


def read_field(handle):
    index, values = _load(handle, "k")
    shape = tuple(index.max(axis=0) + 1)
    out = np.zeros(shape, dtype=complex)
    out[tuple(index.T)] = values
    if not np.any(out.imag):
        out = out.real
    return SampledField(out)


def dumps(writer, obj):
    buf = io.StringIO()
    writer(obj, buf)
    return buf.getvalue()
