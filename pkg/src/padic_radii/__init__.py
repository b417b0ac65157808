"""Exact spectral radii of p-adic differential modules at the Gauss point.

Typical use::

    from padic_radii import DiffModule, PointSpec, compute_radii
    report = compute_radii(DiffModule([["1"]]), PointSpec(2, 0))
    report.verdicts          # (Exact(value=Fraction(-1, 1)),)
"""

from .diffmodule import (DiffModule, DiffOperator, companion_module, direct_sum,
                         find_cyclic, operator_from_cyclic)
from .driver import RadiusReport, compute_radii, stage_analyze
from .estimator import SpectralRadii, TaylorOracle
from .frobenius import forward_slopes, invert_slopes, pushforward
from .newton import AtLeast, Exact, SlopeMultiset, polygon_of_operator, young_compare
from .oracle import estimate_lambda1
from .ratfunc import PointSpec, Poly, RatFunc, T, gauss_val, parse_expr
from .scalars import INF, vp, vp_factorial

__version__ = "0.1.0"

__all__ = [
    "AtLeast", "DiffModule", "DiffOperator", "Exact", "INF", "PointSpec", "Poly",
    "RadiusReport", "RatFunc", "SlopeMultiset", "SpectralRadii", "T", "TaylorOracle",
    "companion_module", "compute_radii", "direct_sum", "estimate_lambda1",
    "find_cyclic", "forward_slopes", "gauss_val", "invert_slopes",
    "operator_from_cyclic", "parse_expr", "polygon_of_operator", "pushforward",
    "stage_analyze", "vp", "vp_factorial", "young_compare",
]
