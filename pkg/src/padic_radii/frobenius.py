"""Frobenius push-forward along ``T = S**p``.

Throughout, a module over ``Q(S)`` is written with the same :class:`RatFunc`
type (its variable printed as ``T``); the push-forward is a module over
``Q(T)`` with ``T = S**p`` and basis ``S**k e_i`` (``k < p``), flattened as
index ``i*p + k``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from flint import fmpq_poly

from . import linalg
from .diffmodule import DiffModule
from .newton import AtLeast, Exact, SlopeMultiset
from .ratfunc import ZERO, PointSpec, Poly, RatFunc, T, _build

__all__ = [
    "Decomposition",
    "SlopeInversionError",
    "decompose",
    "forward_slopes",
    "invert_slopes",
    "mult_matrix",
    "norm_poly",
    "phi_star_entry",
    "pushforward",
]


class SlopeInversionError(ValueError):
    """A pushed slope multiset is not the image of any multiset."""


@dataclass(frozen=True)
class Decomposition:
    """``f(S) = sum_k components[k](S**p) * S**k``."""

    p: int
    components: Tuple[RatFunc, ...]

    def reconstruct(self) -> RatFunc:
        """Reassemble ``f`` as a function of ``S`` (printed as ``T``)."""
        acc = ZERO
        for k, fk in enumerate(self.components):
            acc = acc + fk.inflate(self.p) * T ** k
        return acc


def _split_poly(f: fmpq_poly, p: int) -> List[fmpq_poly]:
    """Residue-class split ``f(S) = sum_k f_k(S**p) S**k`` of a polynomial."""
    coeffs = f.coeffs()
    return [fmpq_poly(coeffs[k::p]) for k in range(p)]


def _mult_matrix_poly(parts: Sequence[fmpq_poly], p: int) -> List[List[fmpq_poly]]:
    t = fmpq_poly([0, 1])
    return [[parts[i - j] if i >= j else t * parts[p + i - j] for j in range(p)]
            for i in range(p)]


def norm_poly(f: Poly, p: int) -> Poly:
    """Norm of ``f(S)`` down to ``Q[T]``, i.e. ``prod_zeta f(zeta S)``.

    Computed as the determinant of multiplication by ``f`` on ``Q[S]`` over
    ``Q[T]``; it agrees with ``Res_Z(Z**p - T, f(Z))``.
    """
    parts = _split_poly(f.flint, p)
    mat = [[_build(x, fmpq_poly([1])) for x in row]
           for row in _mult_matrix_poly(parts, p)]
    n = linalg.det(mat)
    if not n.is_polynomial():
        raise ArithmeticError("norm of a polynomial is not a polynomial")
    return n.num


def decompose(f: RatFunc, p: int) -> Decomposition:
    """Components ``f_0..f_(p-1)`` in ``Q(T)`` with ``f = sum f_k(S**p) S**k``.

    The denominator is cleared by its norm ``N(T)``: ``den(S)`` divides
    ``N(S**p)``, so ``f = num * (N(S**p)/den) / N(S**p)`` and the numerator
    is split by exponent residues mod ``p``.
    """
    if f.is_zero():
        return Decomposition(p, (ZERO,) * p)
    num, den = f.num, f.den
    if den.degree == 0:
        parts = _split_poly(num.flint, p)
        return Decomposition(p, tuple(_build(x, fmpq_poly([1])) for x in parts))
    norm = norm_poly(den, p)
    try:
        cofactor = norm.inflate(p).exact_div(den)
    except ArithmeticError:
        raise ArithmeticError(
            f"den(S) = {den} does not divide its norm N(S^{p}); arithmetic bug"
        ) from None
    parts = _split_poly((num * cofactor).flint, p)
    return Decomposition(p, tuple(_build(x, norm.flint) for x in parts))


def mult_matrix(f: RatFunc, p: int) -> List[List[RatFunc]]:
    """Matrix of multiplication by ``f(S)`` on the basis ``1, S, ..., S**(p-1)``.

    Entry ``(i, j)`` is ``f_(i-j)`` for ``i >= j`` and ``T f_(p+i-j)`` above
    the diagonal.
    """
    fk = decompose(f, p).components
    return [[fk[i - j] if i >= j else T * fk[p + i - j] for j in range(p)]
            for i in range(p)]


def phi_star_entry(g: RatFunc, p: int) -> List[List[RatFunc]]:
    """Matrix of multiplication by ``g(S) / (p S**(p-1))``.

    Since ``1/(p S**(p-1)) = S/(pT)`` this is ``(pT)^-1`` times the array
    with ``g_(i-j-1)`` below the diagonal, ``T g_(p-1+i-j)`` above it and
    ``T g_(p-1)`` on it.
    """
    gk = decompose(g, p).components
    scale = (p * T).inverse()
    out = []
    for i in range(p):
        row = []
        for j in range(p):
            if i > j:
                e = gk[i - j - 1]
            elif i == j:
                e = T * gk[p - 1]
            else:
                e = T * gk[p - 1 + i - j]
            row.append(e * scale)
        out.append(row)
    return out


def pushforward(M: DiffModule, pt: PointSpec) -> Tuple[DiffModule, PointSpec]:
    """Push ``M`` (at ``|.|_rho``) forward to a rank ``p*r`` module at ``rho**p``.

    ``H = phi_*(G) - D`` with ``D`` the diagonal ``k/(pT)`` on the
    ``S**k``-component of each block, which comes from differentiating
    ``S**k``.
    """
    p = pt.p
    r = M.rank
    n = p * r
    H = [[ZERO] * n for _ in range(n)]
    for i in range(r):
        for j in range(r):
            gij = M.G[i][j]
            if gij.is_zero():
                continue
            block = phi_star_entry(gij, p)
            for a in range(p):
                for b in range(p):
                    H[i * p + a][j * p + b] = block[a][b]
    for i in range(r):
        for k in range(1, p):
            idx = i * p + k
            H[idx][idx] = H[idx][idx] - Fraction(k, p) / T
    return DiffModule(H), pt.pushed()


def forward_slopes(s: SlopeMultiset) -> SlopeMultiset:
    """Exact slopes at ``rho`` mapped to those of the push-forward at ``rho**p``."""
    pt = s.point
    p, t = pt.p, pt.t
    cutoff = pt.cutoff
    out = []
    for e in s:
        if not isinstance(e, Exact):
            raise ValueError("forward_slopes needs an all-exact multiset")
        lam = e.value
        if lam <= cutoff:
            out.extend([Exact(lam - 1 + (p - 1) * t)] * p)
        else:
            out.append(Exact(p * lam))
            out.extend([Exact(pt.junk)] * (p - 1))
    return SlopeMultiset(pt.pushed(), out)


def invert_slopes(s: SlopeMultiset, r: int) -> SlopeMultiset:
    """Recover the slopes at ``rho`` from those of the push-forward at ``rho**p``.

    * exact values below the junk level ``J`` come in groups of ``p`` and
      each group shifts back;
    * of the ``c`` copies of ``J``, ``(p-1)(r - n_small)`` are filler and the
      remaining ``e`` are slopes sitting exactly on the cutoff;
    * exact values above ``J`` are divided by ``p``;
    * ``AtLeast(b)`` with ``b > J`` becomes ``AtLeast(b/p)``.

    Raises:
        SlopeInversionError: the input is not a push-forward multiset of a
            rank ``r`` module.
    """
    pushed = s.point
    p = pushed.p
    if len(s) != p * r:
        raise SlopeInversionError(f"{len(s)} slopes for rank {r} and p = {p}")
    base = PointSpec(p, pushed.t / p)
    t = base.t
    junk = base.junk
    small = Counter()
    n_junk = 0
    out = []
    for e in s:
        if isinstance(e, Exact):
            if e.value < junk:
                small[e.value] += 1
            elif e.value == junk:
                n_junk += 1
            else:
                out.append(Exact(e.value / p))
        else:
            if e.bound <= junk:
                raise SlopeInversionError(
                    f"censored bound {e.bound} does not exceed the junk level {junk}")
            out.append(AtLeast(e.bound / p))
    n_small = 0
    for value, mult in sorted(small.items()):
        if mult % p:
            raise SlopeInversionError(
                f"slope {value} has multiplicity {mult}, not divisible by {p}")
        out.extend([Exact(value + 1 - (p - 1) * t)] * (mult // p))
        n_small += mult // p
    on_cutoff = n_junk - (p - 1) * (r - n_small)
    if on_cutoff < 0:
        raise SlopeInversionError(
            f"only {n_junk} copies of the junk slope {junk}, "
            f"expected at least {(p - 1) * (r - n_small)}")
    out.extend([Exact(base.cutoff)] * on_cutoff)
    if len(out) != r:
        raise SlopeInversionError(f"recovered {len(out)} slopes, expected {r}")
    return SlopeMultiset(base, out)
