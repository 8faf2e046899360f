"""Young functions, modular integrals and the Luxemburg norm."""

from dataclasses import dataclass

import numpy as np

from ._validation import check_positive
from .spectral import l1_norm

__all__ = [
    "YoungFunction",
    "young_eval",
    "modular",
    "luxemburg_norm",
    "simple_function_norm",
    "modular_bound_check",
    "containment_ratio_scan",
    "is_sampled_convex",
]

_FAMILIES = ("power", "llog_r", "llog_pow")


@dataclass(frozen=True)
class YoungFunction:
    """One member of a small catalog of Young functions.

    ``power``: ``u**p`` (p > 1); ``llog_r``: ``u * log(1+u)**r`` (integer
    r >= 1); ``llog_pow``: ``u * log(1+u)**s`` (real s > 0).
    """

    family: str
    param: float

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown Young family {self.family!r}; choose from {_FAMILIES}")
        param = float(self.param)
        if self.family == "power" and not param > 1:
            raise ValueError(f"power exponent must exceed 1, got {param}")
        if self.family == "llog_r" and (param < 1 or param != int(param)):
            raise ValueError(f"llog_r needs an integer r >= 1, got {param}")
        if self.family == "llog_pow" and not param > 0:
            raise ValueError(f"llog_pow exponent must be positive, got {param}")
        object.__setattr__(self, "param", param)

    @classmethod
    def power(cls, p):
        return cls("power", p)

    @classmethod
    def llog_r(cls, r):
        return cls("llog_r", r)

    @classmethod
    def llog_pow(cls, s):
        return cls("llog_pow", s)

    @classmethod
    def parse(cls, text):
        """Parse ``"family:param"``, e.g. ``"llog_pow:0.5"``."""
        family, sep, param = text.partition(":")
        if not sep:
            raise ValueError(f"expected 'family:param', got {text!r}")
        return cls(family.strip().lower(), float(param))

    def __str__(self):
        return f"{self.family}:{self.param:g}"

    def __call__(self, u):
        u = np.abs(np.asarray(u, dtype=float))
        if self.family == "power":
            out = u ** self.param
        else:
            out = u * np.log1p(u) ** self.param
        return out if out.ndim else float(out)


def young_eval(Q, u):
    if np.any(np.asarray(u) < 0):
        raise ValueError("Young functions are evaluated at u >= 0")
    return Q(u)


def _modular(values, weights, Q, k):
    return float(np.sum(Q(values / k) * weights))


def modular(field, Q, k):
    """``int_{T^d} Q(|f| / k)`` by the rectangle rule."""
    k = check_positive(k, "k")
    return _modular(np.abs(field.samples), field.cell_volume, Q, k)


def _norm_from_levels(values, weights, Q, k0, rtol=1e-14, max_doublings=200):
    """Smallest ``k`` with ``sum Q(values / k) * weights <= 1``, by bisection."""
    values = np.abs(np.asarray(values, dtype=float))
    weights = np.broadcast_to(np.asarray(weights, dtype=float), values.shape)
    if not np.any(values * weights > 0):
        return 0.0
    k0 = k0 if k0 > 0 else float(values.max())

    def excess(k):
        return _modular(values, weights, Q, k) > 1.0

    lo = hi = k0
    if excess(k0):
        for _ in range(max_doublings):
            lo, hi = hi, hi * 2
            if not excess(hi):
                break
        else:
            raise RuntimeError("could not bracket the Luxemburg norm; malformed Young function?")
    else:
        for _ in range(max_doublings):
            lo, hi = lo / 2, lo
            if excess(lo):
                break
        else:
            raise RuntimeError("could not bracket the Luxemburg norm; malformed Young function?")
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if excess(mid):
            lo = mid
        else:
            hi = mid
    return hi


def luxemburg_norm(field, Q):
    """``inf{k > 0 : int Q(|f|/k) <= 1}``; the zero field has norm 0."""
    return _norm_from_levels(field.samples, field.cell_volume, Q, l1_norm(field))


def simple_function_norm(heights, measures, Q):
    """Luxemburg norm of ``sum_i heights[i] * 1_{E_i}`` with ``|E_i| = measures[i]``
    and disjoint ``E_i``."""
    heights = np.abs(np.atleast_1d(np.asarray(heights, dtype=float)))
    measures = np.atleast_1d(np.asarray(measures, dtype=float))
    return _norm_from_levels(heights, measures, Q, float(np.sum(heights * measures)))


def modular_bound_check(field, Q):
    """``(||f||_Q, 1 + int Q(|f|))``; the first never exceeds the second."""
    return luxemburg_norm(field, Q), 1.0 + modular(field, Q, 1.0)


def containment_ratio_scan(Q, b, u_grid):
    """``u log(u)**b / Q(u)`` along ``u_grid``.

    Unbounded growth means ``L_Q`` is not contained in ``L log^b L``.
    """
    u = np.asarray(u_grid, dtype=float)
    if u.ndim != 1 or u.size == 0 or np.any(u <= 1) or np.any(np.diff(u) <= 0):
        raise ValueError("u_grid must be increasing with every u > 1")
    return u * np.log(u) ** b / Q(u)


def is_sampled_convex(Q, u_grid=None, rtol=1e-12):
    """Midpoint convexity on all pairs of a (default geometric) grid."""
    if u_grid is None:
        u_grid = np.concatenate([[0.0], np.geomspace(1e-6, 1e6, 121)])
    u = np.asarray(u_grid, dtype=float)
    a, b = np.meshgrid(u, u, indexing="ij")
    lhs = Q((a + b) / 2)
    rhs = (Q(a) + Q(b)) / 2
    return bool(np.all(lhs <= rhs * (1 + rtol) + 1e-300))
