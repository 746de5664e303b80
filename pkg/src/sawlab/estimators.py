"""scikit-learn style wrappers around the estimation routines.

Each class keeps its configuration in ``__init__`` (so ``get_params`` and
``set_params`` work and the objects clone), learns in ``fit`` and exposes
fitted quantities with a trailing underscore.
"""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import hitting, pivot, series, thermo
from .enumerate import CountTable, JointCountTable


class ConnectiveConstantEstimator(BaseEstimator):
    """Estimate mu from a walk-count series c_0..c_N."""

    def __init__(self, method: str = "aitken_ratio", mu_ref: float = series.MU_SQUARE):
        self.method = method
        self.mu_ref = mu_ref

    def fit(self, X: CountTable | Sequence[int], y=None):
        self.estimate_ = series.estimate_mu(X, self.method)
        self.mu_ = self.estimate_.extrapolated
        self.bounds_ = series.validate_series_bounds(X, self.mu_ref)
        return self

    def predict(self, n_values) -> np.ndarray:
        """Finite-n estimates at the requested n (nan where none exists)."""
        check_is_fitted(self, "estimate_")
        pts = dict(self.estimate_.point_estimates)
        return np.array([pts.get(int(n), np.nan) for n in np.atleast_1d(n_values)])


class CrossingGrowthEstimator(BaseEstimator):
    """Estimate lambda from crossing-path totals keyed by side length L."""

    def __init__(self, reference: float = series.LAMBDA_CROSSING):
        self.reference = reference

    def fit(self, X: Mapping[int, int], y=None):
        self.estimate_ = series.estimate_lambda(X)
        self.lambda_ = self.estimate_.extrapolated
        return self

    def predict(self, L_values) -> np.ndarray:
        check_is_fitted(self, "estimate_")
        pts = dict(self.estimate_.point_estimates)
        return np.array([pts.get(int(L), np.nan) for L in np.atleast_1d(L_values)])


class PivotNuEstimator(BaseEstimator):
    """Fit E|w_n|^2 ~ A n^(2 nu) from pivot chains at the lengths in X."""

    def __init__(self, samples_per_n: int = 100_000, seed: int = 0, warmup_factor: int = 20,
                 thin: int | None = None, workers: int | None = None):
        self.samples_per_n = samples_per_n
        self.seed = seed
        self.warmup_factor = warmup_factor
        self.thin = thin
        self.workers = workers

    def fit(self, X, y=None):
        """X: lengths.  ``y`` may map extra lengths to exact mean |w_n|^2."""
        self.estimate_ = pivot.estimate_nu(X, self.samples_per_n, self.seed, self.warmup_factor,
                                           self.thin, exact=y, workers=self.workers)
        self.nu_ = self.estimate_.nu
        self.nu_err_ = self.estimate_.nu_err
        return self

    def predict(self, n_values) -> np.ndarray:
        check_is_fitted(self, "estimate_")
        return self.estimate_.predict(np.atleast_1d(n_values))


class PulledPolymerModel(BaseEstimator, TransformerMixin):
    """Observables of the pulled interacting walk as a function of temperature.

    ``fit`` takes the C(N, m, x) table; ``transform`` maps a column of
    temperatures to rows ``[<m>, <m^2>, chi, <x>, G]``.
    """

    columns = ("mean_m", "mean_m2", "chi", "mean_x", "G")

    def __init__(self, force: float = 0.0, sign: int = 1):
        self.force = force
        self.sign = sign

    def fit(self, X: JointCountTable, y=None):
        if not isinstance(X, JointCountTable):
            raise TypeError("fit expects a JointCountTable of (contacts, displacement)")
        self.table_ = X
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "table_")
        temps = np.asarray(X, dtype=float).reshape(-1)
        rows = []
        for T in temps:
            o = thermo.observables(self.table_, thermo.EnsembleWeights(float(T), self.force, sign=self.sign))
            rows.append([getattr(o, c) for c in self.columns])
        return np.array(rows)


class HittingRatioModel(BaseEstimator):
    """R(r, b) as a function of aspect ratio; nothing is learned."""

    def __init__(self, b: float = 5 / 8, precision: str = "double"):
        self.b = b
        self.precision = precision

    def fit(self, X=None, y=None):
        self.quadrature_ = hitting.default_quadrature(self.precision)
        return self

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "quadrature_")
        out = []
        for r in np.asarray(X, dtype=float).reshape(-1):
            p = hitting.alpha_from_r(float(r), self.b, self.precision)
            out.append(float(hitting.hitting_ratio(p, self.quadrature_)))
        return np.array(out)
