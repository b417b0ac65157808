"""Brute-force estimate of the smallest radius from Taylor-coefficient growth.

For ``Y' = G Y`` the derivatives of a fundamental solution are ``B_n Y``
with ``B_0 = 1`` and ``B_(n+1) = B_n' + B_n G``.  The smallest radius at the
generic point is ``liminf (|B_n|_rho / |n!|)^(-1/n)``, capped at ``rho``; in
``log_p`` units that is ``min(t, liminf w_n / n)`` with
``w_n = gauss_val(B_n) - v_p(n!)``.

This path shares nothing with the polygon pipeline beyond the Gauss
valuation, which is why it serves as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from . import linalg
from .diffmodule import DiffModule
from .ratfunc import DEFAULT_DEGREE_CAP, PointSpec, degree_cap, gauss_val
from .scalars import INF, ExtVal, vp_factorial

__all__ = ["TaylorGrowth", "estimate_lambda1", "taylor_matrices"]


@dataclass(frozen=True)
class TaylorGrowth:
    point: PointSpec
    terms: int
    w: Tuple[ExtVal, ...]
    window: Tuple[Tuple[int, ExtVal], ...]
    estimate: Fraction

    def rows(self) -> List[Tuple[int, ExtVal, ExtVal]]:
        """``(n, w_n, w_n/n)`` for ``n >= 1``."""
        return [(n, w, w if w is INF else w / n)
                for n, w in enumerate(self.w) if n >= 1]


def taylor_matrices(M: DiffModule, N: int):
    """Yield ``B_0, ..., B_N``."""
    G = M.matrix()
    B = linalg.identity(M.rank)
    yield B
    for _ in range(N):
        B = linalg.mat_add([[x.derivative() for x in row] for row in B],
                           linalg.mat_mul(B, G))
        yield B


def _matrix_val(B, pt: PointSpec) -> ExtVal:
    return min((gauss_val(x, pt) for row in B for x in row), default=INF)


def estimate_lambda1(M: DiffModule, pt: PointSpec, N: int = 60,
                     cap: Optional[int] = None) -> TaylorGrowth:
    """Estimate ``log_p R_1`` as ``min(t, min_{N/2 <= n <= N} w_n / n)``.

    The window minimum (rather than the last term) is used because ``w_n/n``
    oscillates with ``v_p(n!)``; its liminf is approached along ``n = p^k``.
    """
    if N < 8:
        raise ValueError("need at least 8 terms")
    with degree_cap(cap or DEFAULT_DEGREE_CAP):
        w = []
        for n, B in enumerate(taylor_matrices(M, N)):
            v = _matrix_val(B, pt)
            w.append(v if v is INF else v - vp_factorial(n, pt.p))
    start = (N + 1) // 2
    window = tuple((n, w[n] if w[n] is INF else w[n] / n)
                   for n in range(max(start, 1), N + 1))
    best = min(ratio for _, ratio in window)
    estimate = pt.t if best is INF else min(pt.t, best)
    return TaylorGrowth(pt, N, tuple(w), window, estimate)
