"""Input validation helpers shared by the estimators and the CLI."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from fractions import Fraction

from .diffmodule import DiffModule, DiffOperator, companion_module
from .ratfunc import PointSpec
from .scalars import is_prime, parse_rat

__all__ = ["check_module", "check_modules", "check_point"]


def check_point(p, log_radius) -> PointSpec:
    if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be a prime integer, got {p!r}")
    if isinstance(log_radius, float):
        raise TypeError("log_radius must be exact (int, Fraction or 'a/b'), not float")
    return PointSpec(p, parse_rat(log_radius))


def check_module(X) -> DiffModule:
    """Coerce one sample to a :class:`DiffModule`.

    Accepts a module, an operator (via its companion module), a mapping with
    ``"matrix"`` or ``"coeffs"``, or a square nested sequence of entries.
    """
    if isinstance(X, DiffModule):
        return X
    if isinstance(X, DiffOperator):
        return companion_module(X)
    if isinstance(X, Mapping):
        if "matrix" in X:
            return DiffModule(X["matrix"])
        if "coeffs" in X:
            return companion_module(DiffOperator(X["coeffs"]))
        raise ValueError("mapping needs a 'matrix' or 'coeffs' key")
    if isinstance(X, Sequence) and not isinstance(X, str) and X and all(
            isinstance(row, Sequence) and not isinstance(row, str) for row in X):
        return DiffModule(X)
    raise TypeError(f"cannot interpret {type(X).__name__} as a differential module")


def _is_single(X) -> bool:
    if isinstance(X, (DiffModule, DiffOperator, Mapping)):
        return True
    if any(isinstance(x, (DiffModule, DiffOperator, Mapping)) for x in X):
        return False
    # a nested list whose leaves are expressions is one matrix
    try:
        return all(not isinstance(x, Sequence) or isinstance(x, str)
                   for row in X for x in row)
    except TypeError:
        return False


def check_modules(X) -> list:
    """Coerce a batch of samples (or a single one) to a list of modules."""
    if _is_single(X):
        return [check_module(X)]
    return [check_module(x) for x in X]


def check_fraction(x, name: str) -> Fraction:
    try:
        return parse_rat(x)
    except ValueError as exc:
        raise ValueError(f"{name}: {exc}") from exc
