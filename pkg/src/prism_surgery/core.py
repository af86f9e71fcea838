"""Exact integer linear algebra and bounded lattice-point enumeration.

Everything here works on plain tuples of Python integers, so values are
arbitrary precision and hashable.  Rationals are ``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Optional, Sequence

IntVec = tuple[int, ...]
GramMatrix = tuple[tuple[int, ...], ...]


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    """Standard Euclidean pairing of two integer vectors of equal length."""
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} != {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def norm(v: Sequence[int]) -> int:
    """Squared Euclidean length."""
    return sum(a * a for a in v)


def gram(vectors: Sequence[Sequence[int]]) -> GramMatrix:
    """Gram matrix of a list of vectors under the Euclidean pairing."""
    return tuple(tuple(dot(u, v) for v in vectors) for u in vectors)


def pair(g: Sequence[Sequence[int]], u: Sequence[int], v: Sequence[int]) -> int:
    """Evaluate the bilinear form with Gram matrix ``g`` on coordinate vectors."""
    return sum(u[i] * g[i][j] * v[j] for i in range(len(u)) if u[i] for j in range(len(v)) if v[j])


def is_symmetric(g: Sequence[Sequence[int]]) -> bool:
    n = len(g)
    return all(len(row) == n for row in g) and all(g[i][j] == g[j][i] for i in range(n) for j in range(i))


def det(g: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix by Bareiss elimination.

    Every intermediate division is exact, so no rationals are needed.
    The empty matrix has determinant 1.
    """
    n = len(g)
    if any(len(row) != n for row in g):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    a = [list(row) for row in g]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def leading_minors_positive(g: Sequence[Sequence[int]]) -> bool:
    """Sylvester's criterion for positive definiteness of a symmetric matrix."""
    return all(det([row[:k] for row in g[:k]]) > 0 for k in range(1, len(g) + 1))


def constrained_vectors(
    dim: int,
    max_norm: int,
    *,
    min_norm: int = 0,
    constraints: Iterable[tuple[Sequence[int], int]] = (),
    order: Optional[Sequence[int]] = None,
    at_least: Optional[dict[int, int]] = None,
) -> list[IntVec]:
    """All ``w`` in Z^dim with ``min_norm <= |w|^2 <= max_norm`` and ``<u, w> = t`` for each constraint.

    Coordinates are assigned in ``order`` (default ``0..dim-1``), each one
    ranging over ascending values, so with the default order the output is in
    ascending lexicographic order.  Branches are cut by the Cauchy-Schwarz
    bound: the still-unassigned part of ``<u, w>`` is at most
    ``sqrt(remaining norm * sum of remaining u_i^2)`` in absolute value.

    ``at_least`` maps a coordinate ``i`` to a coordinate ``j`` assigned
    earlier in ``order`` and imposes ``w_i >= w_j`` (used for symmetry
    breaking).
    """
    if dim < 0 or max_norm < 0:
        return []
    order = list(range(dim)) if order is None else list(order)
    if sorted(order) != list(range(dim)):
        raise ValueError("order must be a permutation of range(dim)")
    cons = [(tuple(u), int(t)) for u, t in constraints]
    for u, _ in cons:
        if len(u) != dim:
            raise ValueError("constraint vector has wrong length")
    k = len(cons)
    coef = [[u[order[d]] for u, _ in cons] for d in range(dim)]
    tail = [[0] * k for _ in range(dim + 1)]
    for d in range(dim - 1, -1, -1):
        for c in range(k):
            tail[d][c] = tail[d + 1][c] + coef[d][c] * coef[d][c]
    depth_of = {pos: d for d, pos in enumerate(order)}
    link: list[Optional[int]] = [None] * dim
    for i, j in (at_least or {}).items():
        if depth_of[j] >= depth_of[i]:
            raise ValueError("at_least must refer to an earlier coordinate")
        link[depth_of[i]] = j
    x = [0] * dim
    out: list[IntVec] = []

    def rec(d: int, rem: int, partial: list[int]) -> None:
        if d == dim:
            if max_norm - rem >= min_norm:
                out.append(tuple(x))
            return
        r = isqrt(rem)
        lo = -r
        j = link[d]
        if j is not None and x[j] > lo:
            lo = x[j]
        cd = coef[d]
        tl = tail[d + 1]
        pos = order[d]
        for v in range(lo, r + 1):
            rem2 = rem - v * v
            nxt = []
            for c in range(k):
                left = partial[c] - cd[c] * v
                if left * left > rem2 * tl[c]:
                    break
                nxt.append(left)
            else:
                x[pos] = v
                rec(d + 1, rem2, nxt)
        x[pos] = 0

    rec(0, max_norm, [t for _, t in cons])
    return out


def enumerate_orthogonal_short(sigma: Sequence[int], bound: int) -> list[IntVec]:
    """Nonzero ``w`` with ``<w, sigma> = 0`` and ``|w|^2 <= bound``, lexicographically ascending.

    The set is closed under negation; both signs are listed.
    """
    sigma = tuple(sigma)
    if not sigma:
        raise ValueError("sigma must be nonempty")
    return constrained_vectors(len(sigma), bound, min_norm=1, constraints=[(sigma, 0)])


def solve_rational(basis: Sequence[Sequence[int]], target: Sequence[int]) -> Optional[tuple[Fraction, ...]]:
    """Rational coefficients ``c`` with ``sum c_i basis_i = target``, or None if inconsistent.

    The basis vectors must be linearly independent.
    """
    k = len(basis)
    m = len(target)
    if any(len(b) != m for b in basis):
        raise ValueError("basis vectors and target differ in length")
    rows = [[Fraction(basis[i][r]) for i in range(k)] + [Fraction(target[r])] for r in range(m)]
    pivots: list[int] = []
    row = 0
    for col in range(k):
        piv = next((r for r in range(row, m) if rows[r][col] != 0), None)
        if piv is None:
            raise ValueError("basis vectors are linearly dependent")
        rows[row], rows[piv] = rows[piv], rows[row]
        inv = 1 / rows[row][col]
        rows[row] = [v * inv for v in rows[row]]
        for r in range(m):
            if r != row and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[row])]
        pivots.append(row)
        row += 1
    if any(rows[r][k] != 0 for r in range(row, m)):
        return None
    return tuple(rows[i][k] for i in range(k))


def solve_in_basis(basis: Sequence[Sequence[int]], target: Sequence[int]) -> Optional[IntVec]:
    """Integer coordinates of ``target`` in an independent ``basis``, or None.

    None is returned both when ``target`` is outside the rational span and
    when its coordinates are not all integers.
    """
    coeffs = solve_rational(basis, target)
    if coeffs is None or any(c.denominator != 1 for c in coeffs):
        return None
    return tuple(int(c) for c in coeffs)
