"""scikit-learn compatible wrappers.

``X`` is a batch of density matrices: an array of shape
``(n_samples, D, D)`` (or a list of :class:`BipartiteDensityMatrix`), with
the local dimensions given by the ``dims`` parameter. When ``dims`` is
``None`` and ``D`` is a perfect square, ``(sqrt(D), sqrt(D))`` is assumed.
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .bounds import Measure, lower_bound
from .criteria import (
    Criterion,
    CriterionParams,
    default_grid,
    kyfan_criterion_test,
    run_criterion,
)
from .linalg import BipartiteDensityMatrix, ValidationError


def check_states(X, dims=None) -> list[BipartiteDensityMatrix]:
    """Validate a batch of density matrices and return them as state objects."""
    if isinstance(X, BipartiteDensityMatrix):
        X = [X]
    if isinstance(X, (list, tuple)) and X and all(isinstance(x, BipartiteDensityMatrix) for x in X):
        if dims is not None and any(x.dims != tuple(dims) for x in X):
            raise ValidationError("dimension", f"states do not all have dims {tuple(dims)}")
        return list(X)
    arr = np.asarray(X, dtype=np.complex128)
    if arr.ndim == 2:
        arr = arr[np.newaxis]
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
        raise ValidationError("dimension", f"expected shape (n_samples, D, D), got {arr.shape}")
    if arr.shape[0] == 0:
        raise ValidationError("dimension", "empty batch")
    D = arr.shape[1]
    if dims is None:
        d = math.isqrt(D)
        if d * d != D:
            raise ValidationError("dimension", f"cannot infer dims from D = {D}; pass dims=(dim_a, dim_b)")
        dims = (d, d)
    return [BipartiteDensityMatrix(m, *dims) for m in arr]


class EntanglementDetector(ClassifierMixin, BaseEstimator):
    """Unsupervised entanglement witness built on a separability criterion.

    ``decision_function`` returns the margin, ``predict`` returns 1 for
    certified-entangled samples and 0 otherwise.

    Parameters
    ----------
    criterion : {"kyfan", "ccnr", "enhanced", "ppt"}
    alpha, beta : float
        Border weights, used only by ``"kyfan"``.
    dims : tuple of int, optional
    """

    def __init__(self, criterion="kyfan", alpha=0.0, beta=0.0, dims=None):
        self.criterion = criterion
        self.alpha = alpha
        self.beta = beta
        self.dims = dims

    def fit(self, X, y=None):
        Criterion(self.criterion)
        self.params_ = CriterionParams(self.alpha, self.beta)
        states = check_states(X, self.dims)
        self.dims_ = states[0].dims
        self.classes_ = np.array([0, 1])
        return self

    def _verdicts(self, X):
        check_is_fitted(self, "params_")
        return [run_criterion(s, self.criterion, self.params_) for s in check_states(X, self.dims)]

    def decision_function(self, X):
        return np.array([v.margin for v in self._verdicts(X)])

    def predict(self, X):
        return np.array([int(v.detected) for v in self._verdicts(X)])


class KyFanParameterSearch(ClassifierMixin, BaseEstimator):
    """Choose one ``(alpha, beta)`` from a grid that best certifies a training batch.

    ``fit`` ranks grid points by number of detections, then mean margin, then
    smaller ``alpha**2 + beta**2``. For a single state this is the same as
    :func:`kyfan.criteria.optimize_params` whenever the state is detected.
    """

    def __init__(self, grid=None, dims=None):
        self.grid = grid
        self.dims = dims

    def fit(self, X, y=None):
        states = check_states(X, self.dims)
        grid = default_grid() if self.grid is None else [
            p if isinstance(p, CriterionParams) else CriterionParams(*p) for p in self.grid
        ]
        if not grid:
            raise ValueError("parameter grid is empty")
        best = None
        for p in grid:
            verdicts = [kyfan_criterion_test(s, p) for s in states]
            key = (
                sum(v.detected for v in verdicts),
                float(np.mean([v.margin for v in verdicts])),
                -(p.alpha**2 + p.beta**2),
            )
            if best is None or key > best[0]:
                best = (key, p)
        (n_detected, mean_margin, _), self.params_ = best
        self.n_detected_ = n_detected
        self.mean_margin_ = mean_margin
        self.dims_ = states[0].dims
        self.classes_ = np.array([0, 1])
        return self

    def decision_function(self, X):
        check_is_fitted(self, "params_")
        return np.array([kyfan_criterion_test(s, self.params_).margin for s in check_states(X, self.dims)])

    def predict(self, X):
        check_is_fitted(self, "params_")
        return np.array([int(kyfan_criterion_test(s, self.params_).detected) for s in check_states(X, self.dims)])


class LowerBoundTransformer(TransformerMixin, BaseEstimator):
    """Map each state to its concurrence or CREN lower bound.

    ``transform`` returns shape ``(n_samples, 1)``; with ``clamp=False`` the
    raw (possibly negative) value is returned.
    """

    def __init__(self, measure="concurrence", alpha=0.0, beta=0.0, clamp=True, dims=None):
        self.measure = measure
        self.alpha = alpha
        self.beta = beta
        self.clamp = clamp
        self.dims = dims

    def fit(self, X, y=None):
        self.measure_ = Measure(self.measure)
        self.params_ = CriterionParams(self.alpha, self.beta)
        self.dims_ = check_states(X, self.dims)[0].dims
        return self

    def transform(self, X):
        check_is_fitted(self, "params_")
        reports = [lower_bound(s, self.params_, self.measure_) for s in check_states(X, self.dims)]
        vals = [r.bound if self.clamp else r.raw for r in reports]
        return np.asarray(vals, dtype=np.float64).reshape(-1, 1)

    def get_feature_names_out(self, input_features=None):
        return np.array([f"{Measure(self.measure).value}_lower_bound"], dtype=object)
