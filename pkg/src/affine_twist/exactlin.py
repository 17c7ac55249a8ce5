"""Exact integer and rational linear algebra on small dense matrices.

Vectors are tuples of Python ints and matrices are tuples of row tuples.
Every value that leaves this module is range-checked against signed 64-bit
bounds, so a computation that would wrap around in a fixed-width
implementation raises ``OverflowError`` instead of silently continuing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

IntVec = tuple[int, ...]
IntMat = tuple[IntVec, ...]

# Rationals are stdlib fractions: lowest terms, positive denominator.
Rat = Fraction


class NotUnimodular(ValueError):
    pass


class NoSolution(ValueError):
    pass


class NonUnique(ValueError):
    def __init__(self, dimension: int):
        super().__init__(f"solution space has dimension {dimension}")
        self.dimension = dimension


def checked(x: int) -> int:
    if x < INT64_MIN or x > INT64_MAX:
        raise OverflowError(f"value {x} exceeds the signed 64-bit range")
    return x


def vec(entries: Iterable[int]) -> IntVec:
    return tuple(checked(int(x)) for x in entries)


def mat(rows: Iterable[Iterable[int]]) -> IntMat:
    m = tuple(vec(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def identity(n: int) -> IntMat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(n: int) -> IntMat:
    return tuple((0,) * n for _ in range(n))


def transpose(m: IntMat) -> IntMat:
    return tuple(zip(*m)) if m else ()


def _max_abs(m: Sequence[Sequence[int]]) -> int:
    return max((abs(x) for row in m for x in row), default=0)


def _checked_dot(u: Sequence[int], v: Sequence[int]) -> int:
    acc = 0
    for x, y in zip(u, v):
        acc = checked(acc + checked(x * y))
    return acc


def mat_mul(a: IntMat, b: IntMat) -> IntMat:
    """Exact product ``a @ b``; raises ``OverflowError`` past int64."""
    if not a or not b or len(a[0]) != len(b):
        raise ValueError("dimension mismatch in mat_mul")
    cols = transpose(b)
    # If the worst-case partial sum fits, no intermediate can overflow.
    if _max_abs(a) * _max_abs(b) * len(b) <= INT64_MAX:
        return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)
    return tuple(tuple(_checked_dot(row, col) for col in cols) for row in a)


def mat_vec(m: IntMat, v: Sequence[int]) -> IntVec:
    if len(m[0]) != len(v):
        raise ValueError("dimension mismatch in mat_vec")
    if _max_abs(m) * max((abs(x) for x in v), default=0) * len(v) <= INT64_MAX:
        return tuple(sum(x * y for x, y in zip(row, v)) for row in m)
    return tuple(_checked_dot(row, v) for row in m)


def mat_add(a: IntMat, b: IntMat) -> IntMat:
    return tuple(tuple(checked(x + y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a: IntMat) -> IntMat:
    return tuple(tuple(checked(-x) for x in r) for r in a)


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise ValueError("dimension mismatch in dot")
    return _checked_dot(u, v)


def bilinear(u: Sequence[int], m: IntMat, v: Sequence[int]) -> int:
    """``u^T m v``."""
    return dot(u, mat_vec(m, v))


def vec_add(u: Sequence[int], v: Sequence[int]) -> IntVec:
    return tuple(checked(x + y) for x, y in zip(u, v))


def vec_sub(u: Sequence[int], v: Sequence[int]) -> IntVec:
    return tuple(checked(x - y) for x, y in zip(u, v))


def vec_scale(k: int, v: Sequence[int]) -> IntVec:
    return tuple(checked(k * x) for x in v)


def vec_neg(v: Sequence[int]) -> IntVec:
    return tuple(checked(-x) for x in v)


def determinant(m: IntMat) -> int:
    """Bareiss fraction-free determinant."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss division must be exact"
                a[i][j] = q
        prev = a[k][k]
    return checked(sign * a[n - 1][n - 1])


def is_unimodular(m: IntMat) -> bool:
    return abs(determinant(m)) == 1


def mat_inverse_unimodular(m: IntMat) -> IntMat:
    """Integer inverse of a matrix with determinant +-1.

    Uses fraction-free elimination on ``[m | I]``; the scaled solution
    ``det * m^-1`` is the adjugate, which is integral.
    """
    n = len(m)
    det = determinant(m)
    if abs(det) != 1:
        raise NotUnimodular(f"determinant {det} is not +-1")
    a = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(m)]
    width = 2 * n
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            r = next(r for r in range(k + 1, n) if a[r][k] != 0)
            a[k], a[r] = a[r], a[k]
        for i in range(n):
            if i == k:
                continue
            for j in range(width):
                if j == k:
                    continue
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                q, rem = divmod(num, prev)
                assert rem == 0
                a[i][j] = q
            a[i][k] = 0
        prev = a[k][k]
    # Fraction-free Gauss-Jordan leaves every pivot equal to +-det.
    return mat(
        [[a[i][n + j] // a[i][i] for j in range(n)] for i in range(n)]
    )


def mat_pow(m: IntMat, k: int) -> IntMat:
    """``m**k`` by repeated squaring; negative ``k`` needs a unimodular ``m``."""
    if k < 0:
        m = mat_inverse_unimodular(m)
        k = -k
    result = identity(len(m))
    base = m
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


# --------------------------------------------------------------------------
# linear systems


@dataclass(frozen=True)
class LinearConstraint:
    """``sum(coeffs[u] * x_u) == rhs`` over integer-indexed unknowns."""

    coeffs: Mapping[int, int]
    rhs: int = 0


def _echelon(rows: list[list[int]], ncols: int) -> list[int]:
    """In-place fraction-free row echelon form of ``rows``.

    Only the first ``ncols`` columns are pivot candidates (the rest is the
    augmented right-hand side). Returns the pivot columns.
    """
    pivots: list[int] = []
    prev = 1
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            f = rows[i][c]
            row_i = rows[i]
            row_r = rows[r]
            for j in range(c, len(row_i)):
                q, rem = divmod(row_i[j] * piv - f * row_r[j], prev)
                assert rem == 0, "fraction-free elimination lost exactness"
                row_i[j] = q
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def solve_linear_system(constraints: Sequence[LinearConstraint], nunknowns: int) -> IntVec:
    """Unique integer solution of an integer linear system.

    Raises ``NoSolution`` if the system is inconsistent or its unique
    rational solution is not integral, and ``NonUnique`` if the solution
    space is positive-dimensional.
    """
    rows = []
    for con in constraints:
        row = [0] * (nunknowns + 1)
        for u, c in con.coeffs.items():
            if not 0 <= u < nunknowns:
                raise IndexError(f"unknown {u} out of range")
            row[u] += c
        row[nunknowns] = con.rhs
        rows.append(row)
    pivots = _echelon(rows, nunknowns)
    rank = len(pivots)
    for row in rows[rank:]:
        if row[nunknowns] != 0:
            raise NoSolution("inconsistent constraints")
    if rank < nunknowns:
        raise NonUnique(nunknowns - rank)
    sol: list[Fraction] = [Fraction(0)] * nunknowns
    for r in range(rank - 1, -1, -1):
        c = pivots[r]
        s = Fraction(rows[r][nunknowns])
        for j in range(c + 1, nunknowns):
            if rows[r][j]:
                s -= rows[r][j] * sol[j]
        sol[c] = s / rows[r][c]
    if any(x.denominator != 1 for x in sol):
        raise NoSolution("the unique rational solution is not integral")
    out = vec(int(x) for x in sol)
    for con in constraints:
        assert sum(c * out[u] for u, c in con.coeffs.items()) == con.rhs
    return out


def solve_bilinear_system(constraints: Sequence[LinearConstraint], n: int) -> IntMat:
    """Solve for an ``n x n`` integer matrix; unknown ``(i, j)`` has index ``i*n + j``."""
    flat = solve_linear_system(constraints, n * n)
    return tuple(flat[i * n:(i + 1) * n] for i in range(n))


def entry(i: int, j: int, n: int) -> int:
    """Index of matrix unknown ``(i, j)`` in :func:`solve_bilinear_system`."""
    return i * n + j
