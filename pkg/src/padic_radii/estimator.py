"""scikit-learn style front end.

Each sample is one differential module (or operator, or connection matrix).
:class:`SpectralRadii` maps a batch of samples to their radius verdicts;
:class:`TaylorOracle` maps them to brute-force estimates of the smallest
radius.  Both are stateless: ``fit`` only validates hyperparameters.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .driver import DEFAULT_MAX_STAGES, RadiusReport, compute_radii
from .oracle import estimate_lambda1
from .ratfunc import DEFAULT_DEGREE_CAP
from .validation import check_modules, check_point

__all__ = ["SpectralRadii", "TaylorOracle"]


class SpectralRadii(TransformerMixin, BaseEstimator):
    """Spectral radii at the Gauss point ``|T| = p**log_radius``.

    Parameters
    ----------
    p
        Residue characteristic.
    log_radius
        ``log_p(rho)`` as an int, Fraction or ``"a/b"`` string.
    max_stages
        Number of Frobenius push-forwards allowed.
    degree_cap
        Largest degree allowed for intermediate rational functions.
    katz_constants
        Optional list forcing the Katz constants tried at every stage.

    Attributes
    ----------
    point_
        Validated :class:`PointSpec`.
    reports_
        Reports of the last ``fit_transform`` / ``transform`` call.
    """

    def __init__(self, p: int = 2, log_radius=0, max_stages: int = DEFAULT_MAX_STAGES,
                 degree_cap: int = DEFAULT_DEGREE_CAP,
                 katz_constants: Optional[Sequence] = None):
        self.p = p
        self.log_radius = log_radius
        self.max_stages = max_stages
        self.degree_cap = degree_cap
        self.katz_constants = katz_constants

    def fit(self, X=None, y=None) -> "SpectralRadii":
        self.point_ = check_point(self.p, self.log_radius)
        if not isinstance(self.max_stages, int) or self.max_stages < 0:
            raise ValueError(f"max_stages must be a nonnegative int, got {self.max_stages!r}")
        if not isinstance(self.degree_cap, int) or self.degree_cap < 1:
            raise ValueError(f"degree_cap must be a positive int, got {self.degree_cap!r}")
        if X is not None:
            check_modules(X)
        return self

    def report(self, X) -> RadiusReport:
        """Full report for a single sample."""
        return self._reports(X)[0]

    def _reports(self, X) -> List[RadiusReport]:
        check_is_fitted(self, "point_")
        cyclic = None
        if self.katz_constants is not None:
            cyclic = {"constants": list(self.katz_constants)}
        return [compute_radii(M, self.point_, self.max_stages, self.degree_cap, cyclic)
                for M in check_modules(X)]

    def transform(self, X) -> list:
        """Verdict tuples, one per sample, sorted from the smallest radius."""
        self.reports_ = self._reports(X)
        return [r.verdicts for r in self.reports_]


class TaylorOracle(TransformerMixin, BaseEstimator):
    """Estimate of ``log_p R_1`` from the growth of Taylor coefficients."""

    def __init__(self, p: int = 2, log_radius=0, n_terms: int = 60,
                 degree_cap: int = DEFAULT_DEGREE_CAP):
        self.p = p
        self.log_radius = log_radius
        self.n_terms = n_terms
        self.degree_cap = degree_cap

    def fit(self, X=None, y=None) -> "TaylorOracle":
        self.point_ = check_point(self.p, self.log_radius)
        if not isinstance(self.n_terms, int) or self.n_terms < 8:
            raise ValueError(f"n_terms must be an int >= 8, got {self.n_terms!r}")
        return self

    def transform(self, X) -> List[Fraction]:
        check_is_fitted(self, "point_")
        self.growth_ = [estimate_lambda1(M, self.point_, self.n_terms, self.degree_cap)
                        for M in check_modules(X)]
        return [g.estimate for g in self.growth_]
