"""scikit-learn wrappers.

Each row of ``X`` is one function sampled on a uniform periodic grid of
shape ``grid_shape`` (flattened in C order), so the transformers drop into
pipelines and grid searches.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted, validate_data

from .orlicz import YoungFunction, luxemburg_norm
from .spectral import AxisPlan, SampledField, field_means, l1_norm


def _grid_shape(grid_shape, n_features):
    shape = (n_features,) if grid_shape is None else tuple(int(g) for g in grid_shape)
    if int(np.prod(shape)) != n_features:
        raise ValueError(f"grid_shape {shape} does not match {n_features} features")
    return shape


class MixedLogMeans(TransformerMixin, BaseEstimator):
    """Mixed Nörlund/Riesz logarithmic means of sampled periodic functions.

    Parameters
    ----------
    axes : str
        One letter per axis, ``L`` for Nörlund means and ``R`` for Riesz means.
    order : int or tuple of int
        Order of the means, shared or per axis.
    grid_shape : tuple of int, optional
        Sampling grid of each row; defaults to one axis of ``n_features``.
    """

    def __init__(self, axes="L", order=8, grid_shape=None):
        self.axes = axes
        self.order = order
        self.grid_shape = grid_shape

    def fit(self, X, y=None):
        X = validate_data(self, X, dtype=np.float64)
        self.grid_shape_ = _grid_shape(self.grid_shape, X.shape[1])
        self.plan_ = AxisPlan.from_string(self.axes, self.order)
        if self.plan_.dims != len(self.grid_shape_):
            raise ValueError(
                f"axes {self.axes!r} name {self.plan_.dims} axes but the grid has "
                f"{len(self.grid_shape_)}"
            )
        return self

    def transform(self, X):
        check_is_fitted(self)
        X = validate_data(self, X, reset=False, dtype=np.float64)
        rows = [
            field_means(SampledField(row.reshape(self.grid_shape_)), self.plan_).samples.ravel()
            for row in X
        ]
        return np.asarray(rows).reshape(X.shape[0], -1)


class FieldNorms(TransformerMixin, BaseEstimator):
    """Map each sampled function to ``[||f||_1, ||f||_Q]``."""

    def __init__(self, young="llog_r:1", grid_shape=None):
        self.young = young
        self.grid_shape = grid_shape

    def fit(self, X, y=None):
        X = validate_data(self, X, dtype=np.float64)
        self.grid_shape_ = _grid_shape(self.grid_shape, X.shape[1])
        self.young_ = self.young if isinstance(self.young, YoungFunction) else YoungFunction.parse(self.young)
        return self

    def transform(self, X):
        check_is_fitted(self)
        X = validate_data(self, X, reset=False, dtype=np.float64)
        out = np.empty((X.shape[0], 2))
        for i, row in enumerate(X):
            field = SampledField(row.reshape(self.grid_shape_))
            out[i] = l1_norm(field), luxemburg_norm(field, self.young_)
        return out

    def get_feature_names_out(self, input_features=None):
        return np.array(["l1_norm", "luxemburg_norm"], dtype=object)


__all__ = ["MixedLogMeans", "FieldNorms"]
