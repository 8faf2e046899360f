"""One-dimensional logarithmic weights and kernels.

Conventions: ``D_n(u) = 1/2 + sum_{k=1}^n cos(k u)`` so that the partial sum
is ``S_n f(x) = (1/pi) * int_T f(t) D_n(x - t) dt``.  The Nörlund kernel
``F_n`` and the Riesz kernel ``G_n`` are the logarithmic averages of
``D_0, ..., D_n`` with weight ``1/(k+1)`` on ``D_{n-k}`` and ``D_k``.
"""

import threading

import numpy as np
from scipy.special import digamma

__all__ = [
    "SMALL_ANGLE",
    "LogWeightTable",
    "log_weight",
    "log_weights",
    "dirichlet",
    "norlund_kernel",
    "riesz_kernel",
    "kernel_weights",
]

# below this |sin(u/2)| the Dirichlet kernel is summed explicitly
SMALL_ANGLE = 1e-6

# orders above this are evaluated through the digamma function
_TABLE_LIMIT = 1 << 22


class LogWeightTable:
    """Append-only cache of ``l_n = sum_{k=0}^n 1/(k+1)``.

    The table grows by doubling with compensated summation, so every entry
    is correctly rounded up to a few ulps.  Reads never block; extension is
    serialized by a lock.
    """

    def __init__(self, max_order=1023):
        self._lock = threading.Lock()
        self._values = np.ones(1)
        self._extend(max_order)

    @property
    def max_order(self):
        return self._values.size - 1

    @property
    def values(self):
        view = self._values.view()
        view.flags.writeable = False
        return view

    def _extend(self, max_order):
        with self._lock:
            old = self._values
            if max_order < old.size:
                return
            size = max(max_order + 1, 2 * old.size)
            new = np.empty(size)
            new[: old.size] = old
            # Kahan summation continued from the last stored value
            total = float(old[-1])
            comp = 0.0
            for k in range(old.size, size):
                y = 1.0 / (k + 1) - comp
                t = total + y
                comp = (t - total) - y
                total = t
                new[k] = total
            self._values = new

    def __getitem__(self, n):
        if n > self.max_order:
            self._extend(n)
        return self._values[n]

    def take(self, ns):
        ns = np.asarray(ns)
        top = int(ns.max()) if ns.size else 0
        if top > self.max_order:
            self._extend(top)
        return self._values[ns]


_TABLE = LogWeightTable()


def _check_order(n):
    if isinstance(n, (bool, np.bool_)) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"order must be an integer, got {n!r}")
    if n < 0:
        raise ValueError(f"order must be >= 0, got {n}")
    return int(n)


def log_weight(n):
    """Return ``l_n``; ``l_{-1} = 0`` by convention."""
    if isinstance(n, (int, np.integer)) and n == -1:
        return 0.0
    n = _check_order(n)
    if n <= _TABLE_LIMIT:
        return float(_TABLE[n])
    return float(digamma(float(n) + 2.0) + np.euler_gamma)


def log_weights(ns):
    """Vectorized :func:`log_weight` for an integer array (``-1`` allowed)."""
    ns = np.asarray(ns, dtype=np.int64)
    if ns.size and ns.min() < -1:
        raise ValueError("orders must be >= -1")
    out = np.zeros(ns.shape)
    small = (ns >= 0) & (ns <= _TABLE_LIMIT)
    out[small] = _TABLE.take(ns[small])
    big = ns > _TABLE_LIMIT
    if big.any():
        out[big] = digamma(ns[big].astype(float) + 2.0) + np.euler_gamma
    return out


def kernel_weights(n, kind):
    """Coefficients ``w_k`` with ``K_n = sum_k w_k D_k`` for ``kind`` in
    ``{"norlund", "riesz"}``."""
    n = _check_order(n)
    k = np.arange(n + 1)
    if kind == "norlund":
        w = 1.0 / (n - k + 1)
    elif kind == "riesz":
        w = 1.0 / (k + 1)
    else:
        raise ValueError(f"unknown kernel kind {kind!r}")
    return w / log_weight(n)


def _as_angles(u):
    u = np.asarray(u, dtype=float)
    return u, np.abs(np.sin(u / 2)) < SMALL_ANGLE


def dirichlet(n, u):
    """Dirichlet kernel ``D_n(u)``; scalar in, scalar out."""
    n = _check_order(n)
    u_arr, small = _as_angles(u)
    out = np.empty(u_arr.shape)
    wide = ~small
    uw = u_arr[wide]
    out[wide] = np.sin((n + 0.5) * uw) / (2 * np.sin(uw / 2))
    if small.any():
        us = u_arr[small]
        m = np.arange(1, n + 1)
        out[small] = 0.5 + np.cos(np.multiply.outer(us, m)).sum(axis=-1)
    return out if out.ndim else float(out)


def _dirichlet_mix(weights, u):
    """Evaluate ``sum_k weights[k] * D_k(u)``."""
    u_arr, small = _as_angles(u)
    out = np.empty(u_arr.shape)
    wide = ~small
    uw = u_arr[wide]
    acc = np.zeros(uw.shape)
    for k, w in enumerate(weights):
        acc += w * np.sin((k + 0.5) * uw)
    out[wide] = acc / (2 * np.sin(uw / 2))
    if small.any():
        us = u_arr[small]
        m = np.arange(1, len(weights))
        # D_k at each small angle via cumulative cosine sums
        dk = 0.5 + np.concatenate(
            [np.zeros(us.shape + (1,)),
             np.cumsum(np.cos(np.multiply.outer(us, m)), axis=-1)],
            axis=-1,
        )
        out[small] = dk @ weights
    return out if out.ndim else float(out)


def norlund_kernel(n, u):
    """Nörlund logarithmic kernel ``F_n(u) = (1/l_n) sum_i D_{n-i}(u)/(i+1)``."""
    return _dirichlet_mix(kernel_weights(n, "norlund"), u)


def riesz_kernel(n, u):
    """Riesz logarithmic kernel ``G_n(u) = (1/l_n) sum_i D_i(u)/(i+1)``."""
    return _dirichlet_mix(kernel_weights(n, "riesz"), u)
