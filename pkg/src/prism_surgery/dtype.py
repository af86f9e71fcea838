"""D-type lattices attached to prism manifolds and classification of their elements.

The vertex basis is ordered ``(x_*, x_**, x_0, x_1, ..., x_n)``; in
coordinate vectors index 0 is ``x_*``, index 1 is ``x_**`` and index
``i + 2`` is ``x_i``.  Pairings: ``<x_*, x_0> = <x_**, x_0> = -1``,
``<x_i, x_{i+1}> = -1``, ``|x_*| = |x_**| = 2``, ``|x_i| = a_i``, all
others zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Sequence, Union

from .contfrac import neg_cf_eval, neg_cf_expand
from .core import GramMatrix, IntVec, det, pair
from .errors import DomainError

VertexCoords = IntVec
Label = Union[str, int]
STAR = "*"
STARSTAR = "**"

#: Largest norm accepted by the brute-force element classifiers.
BRUTE_FORCE_NORM_LIMIT = 40


@dataclass(frozen=True)
class PrismParams:
    """The label (p, q) of the prism manifold P(p, q)."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p <= 1:
            raise DomainError(f"p must exceed 1, got {self.p}")
        if self.q == 0:
            raise DomainError("q must be nonzero")
        if gcd(self.p, abs(self.q)) != 1:
            raise DomainError(f"p={self.p} and q={self.q} are not coprime")


@dataclass(frozen=True)
class DTypeLattice:
    """A D-type lattice given by its vertex norms ``(a_0, ..., a_n)``."""

    norms: tuple[int, ...]
    gram: GramMatrix = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        norms = tuple(int(a) for a in self.norms)
        if not norms:
            raise DomainError("a D-type lattice needs at least one norm")
        if any(a < 2 for a in norms):
            raise DomainError(f"vertex norms must be at least 2, got {norms}")
        object.__setattr__(self, "norms", norms)
        object.__setattr__(self, "gram", dtype_gram(norms))

    @property
    def n(self) -> int:
        return len(self.norms) - 1

    @property
    def rank(self) -> int:
        return len(self.norms) + 2

    @property
    def m(self) -> int:
        """Smallest index with ``a_i >= 3``, or ``n`` when every norm is 2."""
        return next((i for i, a in enumerate(self.norms) if a >= 3), self.n)

    def labels(self) -> list[Label]:
        return [STAR, STARSTAR] + list(range(len(self.norms)))

    def index(self, label: Label) -> int:
        if label == STAR:
            return 0
        if label == STARSTAR:
            return 1
        return int(label) + 2

    def basis_vector(self, label: Label) -> VertexCoords:
        v = [0] * self.rank
        v[self.index(label)] = 1
        return tuple(v)

    def pair(self, u: Sequence[int], v: Sequence[int]) -> int:
        return pair(self.gram, u, v)

    def norm(self, v: Sequence[int]) -> int:
        return pair(self.gram, v, v)


def dtype_gram(norms: Sequence[int]) -> GramMatrix:
    """Gram matrix of the D-type lattice with the given vertex norms."""
    size = len(norms) + 2
    g = [[0] * size for _ in range(size)]
    g[0][0] = g[1][1] = 2
    g[0][2] = g[2][0] = g[1][2] = g[2][1] = -1
    for i, a in enumerate(norms):
        g[i + 2][i + 2] = a
        if i + 1 < len(norms):
            g[i + 2][i + 3] = g[i + 3][i + 2] = -1
    return tuple(tuple(row) for row in g)


def dtype_from_pq(pp: PrismParams) -> DTypeLattice:
    """The lattice Delta(p, q) for q < 0.

    With ``k = floor(q/p)``, ``q' = q - k p`` and ``a_0 = 1 - k``, the
    remaining norms are the canonical expansion of ``p/q'``; equivalently
    ``-q/p = [a_0 - 1, a_1, ..., a_n]``.
    """
    if pp.q >= 0:
        raise DomainError(f"D-type lattices are built for q < 0, got q={pp.q}")
    k = pp.q // pp.p
    q_prime = pp.q - k * pp.p
    return DTypeLattice((1 - k,) + neg_cf_expand(pp.p, q_prime))


def pq_from_norms(norms: Sequence[int]) -> PrismParams:
    """Recover (p, q) from vertex norms via ``-q/p = [a_0 - 1, a_1, ..., a_n]``."""
    norms = tuple(norms)
    if not norms or any(a < 2 for a in norms):
        raise DomainError(f"vertex norms must be at least 2, got {norms}")
    value = neg_cf_eval((norms[0] - 1,) + norms[1:])
    return PrismParams(value.denominator, -value.numerator)


def norms_value(norms: Sequence[int]) -> Fraction:
    """The rational ``-q/p`` encoded by a norm sequence."""
    return neg_cf_eval((norms[0] - 1,) + tuple(norms[1:]))


def _ldl(g: GramMatrix) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Exact ``L D L^T`` factorisation of a positive definite Gram matrix."""
    n = len(g)
    low = [[Fraction(0)] * n for _ in range(n)]
    diag = [Fraction(0)] * n
    for i in range(n):
        for j in range(i + 1):
            s = Fraction(g[i][j]) - sum(low[i][k] * low[j][k] * diag[k] for k in range(j))
            if i == j:
                if s <= 0:
                    raise DomainError("Gram matrix is not positive definite")
                diag[i] = s
                low[i][i] = Fraction(1)
            else:
                low[i][j] = s / diag[j]
    return low, diag


def lattice_vectors(lattice: DTypeLattice, max_norm: int) -> list[VertexCoords]:
    """All nonzero lattice vectors of norm at most ``max_norm``, as vertex coordinates.

    Exact enumeration via completing squares in the ``L D L^T`` form: with
    ``y_k = c_k + sum_{i>k} L[i][k] c_i`` the norm is ``sum D_k y_k^2``,
    and coordinates are fixed from the last to the first.
    """
    g = lattice.gram
    n = len(g)
    low, diag = _ldl(g)
    c = [0] * n
    out: list[VertexCoords] = []

    def rec(k: int, rem: Fraction) -> None:
        if k < 0:
            if rem < max_norm:
                out.append(tuple(c))
            return
        centre = -sum(low[i][k] * c[i] for i in range(k + 1, n))
        # (c_k - centre)^2 * D_k <= rem
        bound = rem / diag[k]
        lo = _ceil(centre - _sqrt_upper(bound))
        hi = _floor(centre + _sqrt_upper(bound))
        for v in range(lo, hi + 1):
            y = v - centre
            used = diag[k] * y * y
            if used <= rem:
                c[k] = v
                rec(k - 1, rem - used)
        c[k] = 0

    rec(n - 1, Fraction(max_norm))
    return out


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _sqrt_upper(x: Fraction) -> Fraction:
    """A rational number at least sqrt(x), for x >= 0."""
    return Fraction(isqrt(x.numerator * x.denominator) + 1, x.denominator)


def _check_brute_force(lattice: DTypeLattice, v: Sequence[int]) -> int:
    if len(v) != lattice.rank:
        raise DomainError(f"expected {lattice.rank} vertex coordinates, got {len(v)}")
    nv = lattice.norm(v)
    if nv > BRUTE_FORCE_NORM_LIMIT:
        raise DomainError(f"brute-force classification limited to norm <= {BRUTE_FORCE_NORM_LIMIT}, got {nv}")
    return nv


def is_irreducible(v: Sequence[int], lattice: DTypeLattice) -> bool:
    """True when ``v`` admits no splitting ``v = x + y`` with x, y nonzero and ``<x, y> >= 0``.

    Such x satisfies ``|x| <= |v|`` (because ``|v| = |x| + |y| + 2<x,y>``),
    so it suffices to scan lattice vectors up to norm ``|v|``.
    """
    nv = _check_brute_force(lattice, v)
    if nv == 0:
        return False
    v = tuple(v)
    for x in lattice_vectors(lattice, nv):
        if x == v:
            continue
        # <x, v - x> >= 0  <=>  <x, v> >= |x|
        if lattice.pair(x, v) >= lattice.norm(x):
            return False
    return True


def is_breakable(v: Sequence[int], lattice: DTypeLattice) -> bool:
    """True when ``v = x + y`` with ``|x|, |y| >= 3`` and ``<x, y> = -1``.

    Then ``|x| + |y| = |v| + 2``, so ``3 <= |x| <= |v| - 1`` and ``<x, v> = |x| - 1``.
    """
    nv = _check_brute_force(lattice, v)
    for x in lattice_vectors(lattice, nv - 1):
        nx = lattice.norm(x)
        if nx >= 3 and lattice.pair(x, v) == nx - 1:
            return True
    return False


def tau_image(j: int, label: Label, lattice: DTypeLattice) -> VertexCoords:
    """``tau_j`` applied to one vertex basis element."""
    out = [0] * lattice.rank
    if label == STAR:
        out[1] = 1
    elif label == STARSTAR:
        out[0] = 1
    elif label < j:
        out[lattice.index(label)] = 1
    elif label == j:
        out[0] = out[1] = -1
        for i in range(j):
            out[i + 2] = -2
        out[j + 2] = -1
    else:
        out[lattice.index(label)] = -1
    return tuple(out)


def tau(j: int, v: Sequence[int], lattice: DTypeLattice) -> VertexCoords:
    """The reflection ``tau_j`` for ``0 <= j <= m``, applied to vertex coordinates ``v``.

    ``tau_j`` swaps ``x_*`` and ``x_**``, fixes ``x_i`` for ``i < j``, sends
    ``x_j`` to ``-x_* - x_** - 2x_0 - ... - 2x_{j-1} - x_j`` and negates
    ``x_i`` for ``i > j``.
    """
    if not 0 <= j <= lattice.m:
        raise DomainError(f"tau_j needs 0 <= j <= {lattice.m}, got {j}")
    if len(v) != lattice.rank:
        raise DomainError(f"expected {lattice.rank} vertex coordinates, got {len(v)}")
    out = [0] * lattice.rank
    for label in lattice.labels():
        c = v[lattice.index(label)]
        if c:
            img = tau_image(j, label, lattice)
            for k in range(lattice.rank):
                out[k] += c * img[k]
    return tuple(out)


def _tree_neighbours(rank: int) -> list[list[int]]:
    nbr: list[list[int]] = [[] for _ in range(rank)]
    edges = [(0, 2), (1, 2)] + [(i, i + 1) for i in range(2, rank - 1)]
    for a, b in edges:
        nbr[a].append(b)
        nbr[b].append(a)
    return nbr


def is_interval(v: Sequence[int]) -> Optional[frozenset[Label]]:
    """The support of ``v`` if ``v`` is an interval, else None.

    An interval is a 0/1 vector whose support is a nonempty connected subset
    of the vertex tree not containing both ``x_*`` and ``x_**``.
    """
    if len(v) < 3 or any(c not in (0, 1) for c in v):
        return None
    support = [i for i, c in enumerate(v) if c]
    if not support or (v[0] and v[1]):
        return None
    nbr = _tree_neighbours(len(v))
    seen = {support[0]}
    stack = [support[0]]
    while stack:
        for w in nbr[stack.pop()]:
            if v[w] and w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(support):
        return None
    return frozenset(_label(i) for i in support)


def _label(index: int) -> Label:
    if index == 0:
        return STAR
    if index == 1:
        return STARSTAR
    return index - 2


def interval_vector(labels: frozenset[Label], lattice: DTypeLattice) -> VertexCoords:
    """The 0/1 vertex-coordinate vector ``[A]`` of a label set."""
    v = [0] * lattice.rank
    for label in labels:
        v[lattice.index(label)] = 1
    return tuple(v)


def discriminant(lattice: DTypeLattice) -> int:
    return det(lattice.gram)
