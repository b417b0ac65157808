"""Staged computation of the spectral radii.

Stage 0 reads the small radii off the Newton polygon of a cyclic operator.
Stage ``k`` pushes the module forward ``k`` times, reads the small slopes at
``rho**(p**k)`` and inverts the slope transform ``k`` times.  Each stage
makes radii up to ``t - 1/(p**k (p-1))`` visible.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .diffmodule import DiffModule, find_cyclic
from .frobenius import invert_slopes, pushforward
from .newton import AtLeast, Exact, SlopeMultiset, Verdict, polygon_of_operator, young_compare
from .ratfunc import DEFAULT_DEGREE_CAP, DegreeCapExceeded, PointSpec, degree_cap

logger = logging.getLogger(__name__)

DEFAULT_MAX_STAGES = 3

__all__ = [
    "DEFAULT_MAX_STAGES",
    "InconsistentStagesError",
    "RadiusReport",
    "StageDiagnostics",
    "compute_radii",
    "stage_analyze",
]


class InconsistentStagesError(ArithmeticError):
    """A later stage contradicted an exact radius found earlier."""


@dataclass(frozen=True)
class StageDiagnostics:
    stage: int
    rank: int
    point: PointSpec
    cyclic_strategy: str
    cyclic_index: int
    cyclic_constant: Optional[object]
    vertices: Tuple[Tuple[int, Fraction], ...]
    local: SlopeMultiset
    pulled_back: SlopeMultiset


@dataclass
class RadiusReport:
    """Per-index verdicts for the log-radii ``log_p R_1 <= ... <= log_p R_r``."""

    point: PointSpec
    rank: int
    verdicts: Tuple[Verdict, ...]
    stage_found: Tuple[Optional[int], ...]
    stages_used: int
    max_stages: int
    stages: List[StageDiagnostics] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def complete(self) -> bool:
        return all(isinstance(v, Exact) for v in self.verdicts)

    @property
    def exact(self) -> List[Fraction]:
        return [v.value for v in self.verdicts if isinstance(v, Exact)]

    def uncertainty_interval(self) -> Optional[Tuple[Fraction, Fraction]]:
        """Range still possible for the censored radii, if any."""
        bounds = [v.bound for v in self.verdicts if isinstance(v, AtLeast)]
        if not bounds:
            return None
        return min(bounds), self.point.t


def _cyclic_kwargs(cyclic) -> dict:
    return dict(cyclic or {})


def stage_analyze(N: DiffModule, pt: PointSpec, cyclic=None):
    """Cyclic vector, operator, Newton polygon, then Young's comparison.

    Returns the slope multiset at ``pt`` together with the cyclic-vector
    choice and the polygon, for diagnostics.
    """
    choice = find_cyclic(N, **_cyclic_kwargs(cyclic))
    L = choice.operator
    poly = polygon_of_operator(L, pt)
    return young_compare(poly, pt), choice, poly


def _merge(previous: Tuple[Verdict, ...], found: Tuple[Optional[int], ...],
           new: SlopeMultiset, stage: int):
    old_exact = Counter(v.value for v in previous if isinstance(v, Exact))
    new_exact = Counter(new.exact)
    missing = old_exact - new_exact
    if missing:
        raise InconsistentStagesError(
            f"stage {stage} lost exact radii {sorted(missing.elements())}")
    stage_of = {}
    for v, s in zip(previous, found):
        if isinstance(v, Exact):
            stage_of.setdefault(v.value, []).append(s)
    out_found = []
    for v in new:
        if isinstance(v, Exact) and stage_of.get(v.value):
            out_found.append(stage_of[v.value].pop(0))
        elif isinstance(v, Exact):
            out_found.append(stage)
        else:
            out_found.append(None)
    return new.entries, tuple(out_found)


def compute_radii(
    M: DiffModule,
    pt: PointSpec,
    max_stages: int = DEFAULT_MAX_STAGES,
    cap: int = DEFAULT_DEGREE_CAP,
    cyclic: Optional[dict] = None,
) -> RadiusReport:
    """Compute the log-radii of ``M`` at ``pt``, exactly where possible.

    Args:
        M: differential module over Q(T).
        pt: the point ``rho = p**t``.
        max_stages: number of push-forwards allowed.
        cap: degree cap for rational functions during the computation.
        cyclic: keyword arguments forwarded to :func:`find_cyclic` at every
            stage (e.g. ``{"constants": [2]}`` to force a Katz candidate).

    Returns:
        A :class:`RadiusReport`.  If the degree cap is hit, the report holds
        the results of the last completed stage and ``error`` is set.
    """
    if max_stages < 0:
        raise ValueError("max_stages must be nonnegative")
    r = M.rank
    stages: List[StageDiagnostics] = []
    verdicts: Tuple[Verdict, ...] = ()
    found: Tuple[Optional[int], ...] = ()
    used = 0
    error = None
    N, ptk = M, pt
    with degree_cap(cap):
        for k in range(max_stages + 1):
            try:
                if k > 0:
                    N, ptk = pushforward(N, ptk)
                local, choice, poly = stage_analyze(N, ptk, cyclic)
            except DegreeCapExceeded as exc:
                if k == 0:
                    raise
                error = f"stage {k}: {exc}"
                logger.warning("stopping early, %s", error)
                break
            pulled = local
            for j in range(k, 0, -1):
                pulled = invert_slopes(pulled, r * pt.p ** (j - 1))
            stages.append(StageDiagnostics(
                k, N.rank, ptk, choice.strategy, choice.index, choice.constant,
                poly.vertices, local, pulled))
            logger.info("stage %d (rank %d): local %s, pulled back %s",
                        k, N.rank, local, pulled)
            verdicts, found = _merge(verdicts, found, pulled, k)
            used = k
            if pulled.all_exact:
                break
    return RadiusReport(pt, r, verdicts, found, used, max_stages, stages, error)
