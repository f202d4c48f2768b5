"""scikit-learn style wrapper: centers in, uniform verdicts out."""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from .classifier import MAX_RETRIES, MonodromyReport, monodromy_report
from .config import DEFAULT_TOLERANCES
from .permgroup import is_primitive, k_transitivity
from .tracker import DEFAULT_ARC_SEGMENTS
from .validation import check_hypersurface, check_points, check_seed

__all__ = ["UniformPointClassifier"]

FEATURE_NAMES = ("effective_degree", "log_order", "transitivity", "primitive", "branch_count", "uniform")


class UniformPointClassifier(ClassifierMixin, BaseEstimator):
    """Labels projection centers of a fixed hypersurface as uniform (True) or not.

    There is nothing to learn: ``fit`` only validates the hypersurface and the
    settings, and the optional ``y`` is ignored.  ``predict`` runs the full
    monodromy pipeline for each row of ``X`` (one homogeneous point per row).

    >>> clf = UniformPointClassifier(surface="x0^2 + x1^2 + x2^2").fit()
    >>> clf.predict([[1, 2, 3]]).tolist()
    [True]
    """

    def __init__(self, surface=None, seed=0, max_retries=MAX_RETRIES, arc_segments=DEFAULT_ARC_SEGMENTS, tolerances=None):
        self.surface = surface
        self.seed = seed
        self.max_retries = max_retries
        self.arc_segments = arc_segments
        self.tolerances = tolerances

    def fit(self, X=None, y=None):
        self.surface_ = check_hypersurface(self.surface)
        self.seed_ = check_seed(self.seed)
        self.tolerances_ = DEFAULT_TOLERANCES.replace(**(self.tolerances or {}))
        self.classes_ = np.array([False, True])
        self.n_features_in_ = self.surface_.num_vars
        if X is not None:
            check_points(X, self.n_features_in_)
        return self

    def reports(self, X) -> list[MonodromyReport]:
        check_is_fitted(self, "surface_")
        pts = check_points(X, self.n_features_in_)
        return [
            monodromy_report(
                self.surface_, P, seed=self.seed_, tol=self.tolerances_,
                arc_segments=self.arc_segments, max_retries=self.max_retries,
            )
            for P in pts
        ]

    def predict(self, X) -> np.ndarray:
        return np.array([r.uniform for r in self.reports(X)], dtype=bool)

    def transform(self, X) -> np.ndarray:
        """Group invariants per center, columns as in ``get_feature_names_out``."""
        rows = []
        for r in self.reports(X):
            G = r.group
            rows.append([
                r.effective_degree,
                math.log(G.order),
                k_transitivity(G),
                float(G.degree > 1 and is_primitive(G)),
                len(r.branch_points),
                float(r.uniform),
            ])
        return np.array(rows, dtype=float)

    def get_feature_names_out(self, input_features=None):
        return np.array(FEATURE_NAMES, dtype=object)
