"""Differential modules over (Q(T), d/dT) and their cyclic vectors.

A module of rank ``r`` is given by a connection matrix ``G``; on coordinate
vectors the connection acts as ``y -> y' - G y``, so horizontal sections
solve ``y' = G y``.  An operator ``L = d^r + g_1 d^(r-1) + ... + g_r`` is
stored by its coefficients ``g_1..g_r``.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from math import comb, factorial
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .linalg import SingularMatrixError
from .ratfunc import ONE, ZERO, RatFunc, T, as_ratfunc, matrix_of

logger = logging.getLogger(__name__)

Vector = List[RatFunc]

__all__ = [
    "CyclicVectorError",
    "DiffModule",
    "DiffOperator",
    "companion_module",
    "direct_sum",
    "find_cyclic",
    "is_cyclic",
    "katz_candidate",
    "katz_constants",
    "nabla_apply",
    "nabla_power",
    "operator_from_cyclic",
]


class CyclicVectorError(ArithmeticError):
    """No tested candidate was cyclic.  For the Katz family this is a bug."""


@dataclass(frozen=True)
class DiffModule:
    """Connection matrix ``G`` of a rank ``r`` module."""

    G: Tuple[Tuple[RatFunc, ...], ...]

    def __init__(self, G):
        rows = tuple(tuple(row) for row in matrix_of(G))
        if not rows or any(len(row) != len(rows) for row in rows):
            raise ValueError("connection matrix must be square and nonempty")
        object.__setattr__(self, "G", rows)

    @property
    def rank(self) -> int:
        return len(self.G)

    def matrix(self) -> List[List[RatFunc]]:
        return [list(row) for row in self.G]

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.G)
        return f"DiffModule([{body}])"


@dataclass(frozen=True)
class DiffOperator:
    """Monic operator ``d^r + sum_i g_i d^(r-i)``; ``g`` holds ``g_1..g_r``."""

    g: Tuple[RatFunc, ...] = field(default=())

    def __init__(self, g: Sequence):
        coeffs = tuple(as_ratfunc(x) for x in g)
        if not coeffs:
            raise ValueError("operator order must be at least 1")
        object.__setattr__(self, "g", coeffs)

    @property
    def order(self) -> int:
        return len(self.g)

    def coefficient(self, i: int) -> RatFunc:
        """``g_i`` with the convention ``g_0 = 1``."""
        return ONE if i == 0 else self.g[i - 1]

    def __repr__(self):
        terms = ", ".join(str(x) for x in self.g)
        return f"DiffOperator([{terms}])"


def _check_dim(M: DiffModule, y: Sequence) -> None:
    if len(y) != M.rank:
        raise ValueError(f"vector of length {len(y)} for a rank {M.rank} module")


def nabla_apply(M: DiffModule, y: Sequence[RatFunc]) -> Vector:
    """``y' - G y``."""
    _check_dim(M, y)
    Gy = linalg.mat_vec(M.G, y)
    return [yi.derivative() - gyi for yi, gyi in zip(y, Gy)]


def nabla_power(M: DiffModule, y: Sequence[RatFunc], n: int) -> List[Vector]:
    """``[y, nabla y, ..., nabla^n y]``."""
    out = [list(y)]
    for _ in range(n):
        out.append(nabla_apply(M, out[-1]))
    return out


def _basis_vector(r: int, j: int) -> Vector:
    return [ONE if i == j else ZERO for i in range(r)]


def katz_constants(r: int) -> List[int]:
    """The ``r(r-1)+1`` distinct constants ``0, 1, ..., r(r-1)``."""
    return list(range(r * (r - 1) + 1))


def katz_candidate(M: DiffModule, a) -> Vector:
    """Katz's vector ``c(e, T-a)`` on the standard basis ``e``.

    ``sum_j (T-a)^j/j! * sum_k (-1)^k C(j,k) nabla^k(e_{j-k})``.
    """
    r = M.rank
    shift = T - a
    # iterated connection on each basis vector, only as deep as needed
    powers = [nabla_power(M, _basis_vector(r, i), r - 1 - i) for i in range(r)]
    c = [ZERO] * r
    for j in range(r):
        inner = [ZERO] * r
        for k in range(j + 1):
            coef = (-1) ** k * comb(j, k)
            vec = powers[j - k][k]
            inner = [u + coef * v for u, v in zip(inner, vec)]
        weight = shift ** j / factorial(j)
        c = [u + weight * v for u, v in zip(c, inner)]
    return c


def _columns_matrix(vectors: Sequence[Vector]) -> List[List[RatFunc]]:
    r = len(vectors[0])
    return [[vectors[k][i] for k in range(len(vectors))] for i in range(r)]


def is_cyclic(M: DiffModule, c: Sequence[RatFunc]) -> Optional[List[List[RatFunc]]]:
    """Matrix with columns ``c, nabla c, ..., nabla^(r-1) c`` if it is invertible."""
    _check_dim(M, c)
    c = [as_ratfunc(x) for x in c]
    W = _columns_matrix(nabla_power(M, c, M.rank - 1))
    if linalg.det(W).is_zero():
        return None
    return W


@dataclass
class CyclicChoice:
    vector: Vector
    basis: List[List[RatFunc]]
    strategy: str
    index: int
    constant: Optional[object] = None
    operator: Optional["DiffOperator"] = None


def find_cyclic(
    M: DiffModule,
    strategy: str = "katz",
    constants: Optional[Sequence] = None,
    probes: Optional[Sequence[Sequence]] = None,
    n_random: int = 0,
    seed: Optional[int] = None,
) -> CyclicChoice:
    """Find a cyclic vector of ``M``.

    Args:
        M: the module.
        strategy: ``"katz"`` tries ``c(e, T-a)`` for ``a = 0, 1, ..., r(r-1)``
            and is guaranteed to succeed.  ``"probe"`` first tries the given
            ``probes`` and ``n_random`` seeded random constant vectors, then
            falls back to the Katz family.
        constants: override the Katz constants, in trial order.  Used to force
            a particular candidate.
        probes: explicit vectors for the ``"probe"`` strategy.
        n_random: number of random integer vectors in ``[-9, 9]^r`` to probe.
        seed: RNG seed for the random probes.

    Returns:
        A :class:`CyclicChoice` holding the vector, the basis matrix and the
        index of the winning candidate within its strategy.
    """
    if strategy not in ("katz", "probe"):
        raise ValueError(f"unknown cyclic-vector strategy {strategy!r}")
    r = M.rank
    if strategy == "probe":
        trials = [list(v) for v in (probes or [])]
        rng = random.Random(seed)
        for _ in range(n_random):
            trials.append([rng.randint(-9, 9) for _ in range(r)])
        for idx, v in enumerate(trials):
            v = [as_ratfunc(x) for x in v]
            hit = _try_cyclic(M, v)
            if hit is not None:
                logger.debug("probe %d is cyclic", idx)
                return CyclicChoice(v, hit[0], "probe", idx, None, hit[1])
    consts = katz_constants(r) if constants is None else list(constants)
    for idx, a in enumerate(consts):
        c = katz_candidate(M, a)
        hit = _try_cyclic(M, c)
        if hit is not None:
            logger.debug("Katz candidate a=%s is cyclic", a)
            return CyclicChoice(c, hit[0], "katz", idx, a, hit[1])
        logger.debug("Katz candidate a=%s is not cyclic", a)
    if constants is None:
        raise CyclicVectorError(
            f"all {len(consts)} Katz candidates failed on a rank {r} module; "
            "this contradicts Katz's theorem and indicates an arithmetic bug")
    raise CyclicVectorError(f"none of the Katz constants {consts} gave a cyclic vector")


def _operator_from_chain(chain: List[Vector]) -> "DiffOperator":
    r = len(chain) - 1
    W = _columns_matrix(chain[:r])
    f = linalg.solve(W, chain[r])
    return W, DiffOperator([-f[r - i] for i in range(1, r + 1)])


def _try_cyclic(M: DiffModule, c: Vector):
    """``(basis, operator)`` when ``c`` is cyclic, else ``None``; one elimination."""
    try:
        return _operator_from_chain(nabla_power(M, c, M.rank))
    except SingularMatrixError:
        return None


def operator_from_cyclic(M: DiffModule, c: Sequence[RatFunc]) -> DiffOperator:
    """Operator of ``M`` in the cyclic basis generated by ``c``.

    Solves ``[c | nabla c | ... | nabla^(r-1) c] f = nabla^r c`` and returns
    ``g_(r-i) = -f_i``.
    """
    _check_dim(M, c)
    c = [as_ratfunc(x) for x in c]
    try:
        return _operator_from_chain(nabla_power(M, c, M.rank))[1]
    except SingularMatrixError:
        raise SingularMatrixError("vector is not cyclic") from None


def companion_module(L: DiffOperator) -> DiffModule:
    """The module ``Q(T)<d>/Q(T)<d>L`` on the basis ``1, d, ..., d^(r-1)``.

    ``nabla`` maps ``d^i`` to ``d^(i+1)`` and ``d^(r-1)`` to
    ``-sum g_(r-i) d^i``; the connection matrix is minus that companion
    matrix.
    """
    r = L.order
    G = [[ZERO] * r for _ in range(r)]
    for i in range(r - 1):
        G[i + 1][i] = -ONE
    for i in range(r):
        G[i][r - 1] = L.coefficient(r - i)
    return DiffModule(G)


def direct_sum(*modules: DiffModule) -> DiffModule:
    n = sum(m.rank for m in modules)
    G = [[ZERO] * n for _ in range(n)]
    off = 0
    for m in modules:
        for i in range(m.rank):
            for j in range(m.rank):
                G[off + i][off + j] = m.G[i][j]
        off += m.rank
    return DiffModule(G)
