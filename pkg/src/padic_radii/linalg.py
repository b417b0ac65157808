"""Dense linear algebra over Q(T).

Matrices are lists of rows of :class:`RatFunc`.  Elimination first clears
denominators column by column, then runs Bareiss' fraction-free scheme over
Q[T] so that every intermediate entry is a polynomial obtained by exact
division.
"""

from __future__ import annotations

from typing import List, Sequence

from flint import fmpq_poly

from .ratfunc import ONE, ZERO, DegreeCapExceeded, RatFunc, _build, get_degree_cap

Matrix = List[List[RatFunc]]

__all__ = [
    "SingularMatrixError",
    "det",
    "identity",
    "inverse",
    "mat_add",
    "mat_mul",
    "mat_scale",
    "mat_sub",
    "mat_vec",
    "rank",
    "solve",
    "zeros",
]


class SingularMatrixError(ArithmeticError):
    pass


def zeros(n: int, m: int = None) -> Matrix:
    return [[ZERO] * (n if m is None else m) for _ in range(n)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A: Matrix) -> Matrix:
    return [[c * a for a in row] for row in A]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    if A and len(A[0]) != len(B):
        raise ValueError("dimension mismatch in matrix product")
    cols = list(zip(*B))
    out = []
    for row in A:
        out.append([_dot(row, col) for col in cols])
    return out


def mat_vec(A: Matrix, v: Sequence[RatFunc]) -> List[RatFunc]:
    if A and len(A[0]) != len(v):
        raise ValueError("dimension mismatch in matrix-vector product")
    return [_dot(row, v) for row in A]


def _dot(u, v) -> RatFunc:
    acc = ZERO
    for a, b in zip(u, v):
        if a.is_zero() or b.is_zero():
            continue
        acc = acc + a * b
    return acc


def _poly_columns(A: Matrix):
    """Scale each column by the lcm of its denominators.

    Returns polynomial rows ``P`` and the scales ``s_j`` with
    ``P[i][j] = A[i][j] * s_j``.
    """
    n_rows = len(A)
    n_cols = len(A[0]) if A else 0
    P = [[None] * n_cols for _ in range(n_rows)]
    scales = []
    for j in range(n_cols):
        lcm = fmpq_poly([1])
        for i in range(n_rows):
            d = A[i][j]._den
            if d.degree() > 0:
                lcm = lcm * (d / lcm.gcd(d))
        for i in range(n_rows):
            a = A[i][j]
            P[i][j] = a._num * (lcm / a._den)
        scales.append(lcm)
    return P, scales


def _bareiss(P, n_elim: int):
    """In-place fraction-free forward elimination on the first ``n_elim`` columns.

    Returns ``(pivot_columns, sign)``; rows beyond ``len(pivot_columns)``
    are zero in the eliminated columns.
    """
    n_rows = len(P)
    n_cols = len(P[0]) if P else 0
    cap = get_degree_cap()
    prev = fmpq_poly([1])
    sign = 1
    pivots = []
    r = 0
    for c in range(n_elim):
        if r == n_rows:
            break
        best = None
        for i in range(r, n_rows):
            deg = P[i][c].degree()
            if deg >= 0 and (best is None or deg < P[best][c].degree()):
                best = i
        if best is None:
            continue
        if best != r:
            P[r], P[best] = P[best], P[r]
            sign = -sign
        piv = P[r][c]
        for i in range(r + 1, n_rows):
            lead = P[i][c]
            row_i = P[i]
            row_r = P[r]
            for j in range(c + 1, n_cols):
                val = piv * row_i[j] - lead * row_r[j]
                if prev != 1:
                    val = val / prev
                if val.degree() > cap:
                    raise DegreeCapExceeded(val.degree(), cap)
                row_i[j] = val
            row_i[c] = fmpq_poly([])
        prev = piv
        pivots.append(c)
        r += 1
    return pivots, sign


def rank(A: Matrix) -> int:
    if not A:
        return 0
    P, _ = _poly_columns(A)
    pivots, _ = _bareiss(P, len(P[0]))
    return len(pivots)


def det(A: Matrix) -> RatFunc:
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE
    P, scales = _poly_columns(A)
    pivots, sign = _bareiss(P, n)
    if len(pivots) < n:
        return ZERO
    den = fmpq_poly([1])
    for s in scales:
        den = den * s
    return _build(sign * P[n - 1][n - 1], den)


def solve(A: Matrix, B) -> Matrix:
    """Solve ``A X = B`` for square nonsingular ``A``.

    ``B`` may be a matrix or a vector; the result has the same shape.
    """
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("solve needs a square matrix")
    vector = bool(B) and not isinstance(B[0], list)
    Bm = [[b] for b in B] if vector else B
    if len(Bm) != n:
        raise ValueError("right-hand side has the wrong number of rows")
    m = len(Bm[0]) if Bm else 0
    aug = [list(A[i]) + list(Bm[i]) for i in range(n)]
    P, scales = _poly_columns(aug)
    pivots, _ = _bareiss(P, n)
    if len(pivots) < n:
        raise SingularMatrixError("matrix is singular over Q(T)")
    # back substitution for Y = diag(scales[:n]) X, then unscale
    X = [[None] * m for _ in range(n)]
    for k in range(m):
        rhs_scale = scales[n + k]
        for i in range(n - 1, -1, -1):
            acc = _build(P[i][n + k], rhs_scale)
            for j in range(i + 1, n):
                if P[i][j].degree() >= 0:
                    acc = acc - _build(P[i][j], fmpq_poly([1])) * X[j][k]
            X[i][k] = acc / _build(P[i][i], fmpq_poly([1]))
        for i in range(n):
            X[i][k] = X[i][k] * _build(scales[i], fmpq_poly([1]))
    if vector:
        return [row[0] for row in X]
    return X


def inverse(A: Matrix) -> Matrix:
    return solve(A, identity(len(A)))
