"""Changemaker vectors, the standard basis of their orthogonal complements, and structural diagnostics."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import isqrt
from typing import Optional, Sequence

import networkx as nx

from .core import IntVec, dot, gram, norm, solve_in_basis
from .dtype import STAR, STARSTAR, DTypeLattice, Label, interval_vector, is_interval, tau
from .errors import DomainError, NoInterval

TIGHT = "tight"
JUST_RIGHT = "just_right"
GAPPY = "gappy"


def is_changemaker(sigma: Sequence[int]) -> bool:
    """Nondecreasing, nonnegative, and every integer in ``[0, sum(sigma)]`` is a subset sum.

    For a nondecreasing sequence the subset-sum condition is equivalent to
    ``sigma_i <= 1 + sigma_0 + ... + sigma_{i-1}`` for every i.
    """
    total = 0
    prev = 0
    for s in sigma:
        if s < prev or s > total + 1:
            return False
        prev = s
        total += s
    return True


def enum_changemakers(dim: int, norm_value: int, *, unit_start: bool = True) -> list[IntVec]:
    """All changemakers of length ``dim`` with ``sum sigma_i^2 = norm_value``, lexicographically sorted.

    By default ``sigma_0 = 1`` is imposed; ``unit_start=False`` also admits
    leading zeros.
    """
    if dim <= 0 or norm_value < 0:
        return []
    out: list[IntVec] = []
    cur: list[int] = []

    def rec(remaining_slots: int, rem: int, lo: int, total: int) -> None:
        if remaining_slots == 0:
            if rem == 0:
                out.append(tuple(cur))
            return
        if rem < remaining_slots * lo * lo:
            return
        hi = min(total + 1, isqrt(rem // remaining_slots) if lo > 0 else isqrt(rem))
        # each later entry is at least the current one, so s^2 * slots <= rem
        for s in range(lo, hi + 1):
            if s * s * remaining_slots > rem:
                break
            cur.append(s)
            rec(remaining_slots - 1, rem - s * s, s, total + s)
            cur.pop()

    if unit_start:
        if norm_value >= 1:
            cur.append(1)
            rec(dim - 1, norm_value - 1, 1, 1)
    else:
        rec(dim, norm_value, 0, 0)
    return out


@dataclass(frozen=True)
class StandardBasis:
    """The vectors ``v_1, ..., v_{m-1}`` spanning the complement of ``sigma``, with tags.

    ``vectors[j - 1]`` is ``v_j``; ``tags[j - 1]`` is ``"tight"``,
    ``"just_right"`` or ``"gappy"``; ``gappy_indices[j - 1]`` lists the
    gappy indices (empty unless gappy); ``supports[j - 1]`` is the set ``A``
    with ``v_j = sum_{i in A} e_i - e_j`` (for tight vectors,
    ``{0, ..., j-1}``).
    """

    sigma: IntVec
    vectors: tuple[IntVec, ...]
    tags: tuple[str, ...]
    gappy_indices: tuple[frozenset[int], ...]
    supports: tuple[frozenset[int], ...]

    def v(self, j: int) -> IntVec:
        return self.vectors[j - 1]

    def tag(self, j: int) -> str:
        return self.tags[j - 1]


def greedy_subset(sigma: Sequence[int], j: int) -> frozenset[int]:
    """The subset ``A`` of ``{0, ..., j-1}`` summing to ``sigma_j`` chosen greedily from the largest index."""
    need = sigma[j]
    chosen = []
    for i in range(j - 1, -1, -1):
        if sigma[i] <= need:
            chosen.append(i)
            need -= sigma[i]
    if need != 0:
        raise DomainError(f"sigma_{j}={sigma[j]} is not a subset sum of the earlier entries")
    return frozenset(chosen)


def standard_basis(sigma: Sequence[int]) -> StandardBasis:
    """Standard basis of the orthogonal complement of a changemaker with ``sigma_0 >= 1``."""
    sigma = tuple(sigma)
    if not is_changemaker(sigma) or not sigma or sigma[0] < 1:
        raise DomainError(f"{sigma} is not a changemaker with positive entries")
    m = len(sigma)
    vectors, tags, gaps, supports = [], [], [], []
    prefix = 0
    for j in range(m):
        if j > 0:
            v = [0] * m
            v[j] = -1
            if sigma[j] == prefix + 1:
                v[0] = 2
                for i in range(1, j):
                    v[i] = 1
                vectors.append(tuple(v))
                tags.append(TIGHT)
                gaps.append(frozenset())
                supports.append(frozenset(range(j)))
            else:
                a = greedy_subset(sigma, j)
                for i in a:
                    v[i] = 1
                gappy = frozenset(i for i in a if i < j - 1 and i + 1 not in a)
                vectors.append(tuple(v))
                tags.append(GAPPY if gappy else JUST_RIGHT)
                gaps.append(gappy)
                supports.append(a)
        prefix += sigma[j]
    return StandardBasis(sigma, tuple(vectors), tuple(tags), tuple(gaps), tuple(supports))


def complement_gram(sigma: Sequence[int]):
    """Gram matrix of the standard basis of the complement of ``sigma``."""
    return gram(standard_basis(sigma).vectors)


# ---------------------------------------------------------------------------
# Decompositions inside the complement, computed in ambient coordinates.
# ---------------------------------------------------------------------------


def ambient_splits(
    v: Sequence[int],
    sigma: Sequence[int],
    *,
    min_pairing: int,
    exact_pairing: Optional[int] = None,
    min_part_norm: int = 1,
) -> Optional[tuple[IntVec, IntVec]]:
    """Find ``v = x + y`` with x, y orthogonal to ``sigma``, both of norm at least ``min_part_norm``.

    The pairing ``<x, y>`` must be at least ``min_pairing`` (and equal
    ``exact_pairing`` when given).  Returns one such pair or None.

    Writing ``<x, y> = sum_i x_i (v_i - x_i)``, each term is at most
    ``cap_i = floor(v_i^2 / 4)``, so the total shortfall ``sum_i (cap_i -
    x_i (v_i - x_i))`` is at most ``sum cap_i - min_pairing``.  Coordinates
    are enumerated within that shortfall budget, and a memoised
    feasibility table over (coordinate, budget left, partial
    ``<x, sigma>``) prunes every branch that cannot be completed.
    """
    v = tuple(v)
    sigma = tuple(sigma)
    m = len(v)
    if len(sigma) != m:
        raise ValueError("v and sigma differ in length")
    caps = [c * c // 4 for c in v]
    total_cap = sum(caps)
    budget = total_cap - min_pairing
    if budget < 0:
        return None
    exact_dev = None if exact_pairing is None else total_cap - exact_pairing
    if exact_dev is not None and not 0 <= exact_dev <= budget:
        return None
    opts: list[list[tuple[int, int]]] = []
    for i, c in enumerate(v):
        s = isqrt(4 * budget + c * c - 4 * caps[i])
        lo = -((s - c) // 2)
        hi = (c + s) // 2
        row = []
        for xi in range(lo, hi + 1):
            dev = caps[i] - xi * (c - xi)
            if 0 <= dev <= budget:
                row.append((xi, dev))
        opts.append(row)
    limit = exact_dev if exact_dev is not None else budget

    @lru_cache(maxsize=None)
    def feasible(d: int, used: int, partial: int) -> bool:
        if d == m:
            return partial == 0 and (exact_dev is None or used == exact_dev)
        sd = sigma[d]
        return any(
            feasible(d + 1, used + dev, partial + sd * xi) for xi, dev in opts[d] if used + dev <= limit
        )

    x = [0] * m

    def search(d: int, used: int, partial: int) -> Optional[tuple[IntVec, IntVec]]:
        if d == m:
            xv = tuple(x)
            yv = tuple(a - b for a, b in zip(v, xv))
            if norm(xv) >= min_part_norm and norm(yv) >= min_part_norm:
                return xv, yv
            return None
        sd = sigma[d]
        for xi, dev in opts[d]:
            if used + dev <= limit and feasible(d + 1, used + dev, partial + sd * xi):
                x[d] = xi
                hit = search(d + 1, used + dev, partial + sd * xi)
                if hit is not None:
                    return hit
        x[d] = 0
        return None

    try:
        return search(0, 0, 0)
    finally:
        feasible.cache_clear()


def is_reducible_in_complement(v: Sequence[int], sigma: Sequence[int]) -> bool:
    """True when ``v = x + y`` with x, y nonzero in the complement and ``<x, y> >= 0``."""
    return ambient_splits(v, sigma, min_pairing=0) is not None


def is_breakable_in_complement(v: Sequence[int], sigma: Sequence[int]) -> bool:
    """True when ``v = x + y`` in the complement with ``|x|, |y| >= 3`` and ``<x, y> = -1``."""
    return ambient_splits(v, sigma, min_pairing=-1, exact_pairing=-1, min_part_norm=3) is not None


# ---------------------------------------------------------------------------
# Intervals and the intersection graph.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntervalLabel:
    """``v_j = s [A]`` (eps = +1) or ``v_j = s tau([A])`` (eps = -1), with sign ``s``."""

    support: frozenset[Label]
    eps: int
    sign: int = 1


@dataclass(frozen=True)
class IntervalAssignment:
    sigma: IntVec
    lattice: DTypeLattice
    labels: tuple[IntervalLabel, ...]
    tau_index: int
    f: Optional[int]

    def label(self, j: int) -> IntervalLabel:
        return self.labels[j - 1]


def _reflection_index(lattice: DTypeLattice) -> int:
    return 1 if lattice.norms[0] == 2 else 0


def interval_assignment(
    sigma: Sequence[int], norms: Sequence[int], vertex_vectors: Sequence[Sequence[int]]
) -> IntervalAssignment:
    """Express each standard basis vector as an interval or the reflection of one.

    ``vertex_vectors`` is an embedding of the D-type lattice with ``norms``
    into ``Z^m``, in the order ``(X_*, X_**, X_0, ..., X_n)``.  For each
    ``v_j`` the candidates ``v``, ``tau(v)``, ``-v``, ``-tau(v)`` are tried
    in that order, with ``tau = tau_0`` when ``a_0 >= 3`` and ``tau_1`` when
    ``a_0 = 2``.  When ``X_* = v_1`` and ``X_** = v_f`` the labels of
    ``v_1`` and ``v_f`` are chosen so that ``eps_1 = -eps_f = eps_{f-1}``,
    which makes ``A_1 = A_f``.
    """
    sigma = tuple(sigma)
    lattice = DTypeLattice(tuple(norms))
    basis = standard_basis(sigma)
    j_tau = _reflection_index(lattice)
    labels: list[IntervalLabel] = []
    for j, v in enumerate(basis.vectors, start=1):
        coords = solve_in_basis(vertex_vectors, v)
        if coords is None:
            raise NoInterval(f"v_{j} is not in the span of the embedding")
        labels.append(_label_for(coords, lattice, j_tau, j))
    f = _locate_f(basis, vertex_vectors)
    if f is not None:
        eps = labels[f - 2].eps if f - 1 >= 2 else 1
        if eps == 1:
            labels[0] = IntervalLabel(frozenset({STAR}), 1)
            labels[f - 1] = IntervalLabel(frozenset({STAR}), -1)
        else:
            labels[0] = IntervalLabel(frozenset({STARSTAR}), -1)
            labels[f - 1] = IntervalLabel(frozenset({STARSTAR}), 1)
    return IntervalAssignment(sigma, lattice, tuple(labels), j_tau, f)


def _label_for(coords: Sequence[int], lattice: DTypeLattice, j_tau: int, j: int) -> IntervalLabel:
    neg = tuple(-c for c in coords)
    reflected = tau(j_tau, coords, lattice)
    neg_reflected = tuple(-c for c in reflected)
    for cand, eps, sign in ((coords, 1, 1), (reflected, -1, 1), (neg, 1, -1), (neg_reflected, -1, -1)):
        support = is_interval(cand)
        if support is not None:
            return IntervalLabel(support, eps, sign)
    raise NoInterval(f"v_{j} with vertex coordinates {tuple(coords)} is not an interval up to tau")


def _locate_f(basis: StandardBasis, vertex_vectors: Sequence[Sequence[int]]) -> Optional[int]:
    """Index f with ``X_** = v_f`` when also ``X_* = v_1``; None otherwise."""
    if tuple(vertex_vectors[0]) != basis.v(1):
        return None
    target = tuple(vertex_vectors[1])
    for j, v in enumerate(basis.vectors, start=1):
        if v == target:
            return j
    return None


def intersection_graph(assignment: IntervalAssignment) -> nx.Graph:
    """Graph on ``1..m-1`` joining ``v_i, v_j`` whose intervals abut.

    Disjoint intervals abut when ``<[A], [B]> = -1``; intersecting intervals
    abut when they share an endpoint, i.e. ``<[A], [B]> = |[A cap B]| - 1``.
    ``v_1`` and ``v_f`` are joined by convention since ``A_1 = A_f``.
    """
    lat = assignment.lattice
    g = nx.Graph()
    count = len(assignment.labels)
    g.add_nodes_from(range(1, count + 1))
    vecs = [interval_vector(lab.support, lat) for lab in assignment.labels]
    for i in range(count):
        for j in range(i + 1, count):
            a, b = assignment.labels[i].support, assignment.labels[j].support
            p = lat.pair(vecs[i], vecs[j])
            common = a & b
            if not common:
                if p == -1:
                    g.add_edge(i + 1, j + 1)
            elif a != b and p == lat.norm(interval_vector(common, lat)) - 1:
                g.add_edge(i + 1, j + 1)
    if assignment.f is not None:
        g.add_edge(1, assignment.f)
    return g


def find_claw(g: nx.Graph) -> Optional[tuple[int, int, int, int]]:
    """An induced ``K_{1,3}`` as ``(centre, a, b, c)``, or None."""
    for centre in sorted(g.nodes):
        nbrs = sorted(g.neighbors(centre))
        for a, b, c in combinations(nbrs, 3):
            if not (g.has_edge(a, b) or g.has_edge(a, c) or g.has_edge(b, c)):
                return (centre, a, b, c)
    return None


def long_cycles(g: nx.Graph, breakable: set[int]) -> list[list[int]]:
    """Simple cycles violating the cycle-length rule.

    Allowed cycles have three vertices, or four when one of them is breakable.
    """
    bad = []
    for cyc in nx.simple_cycles(g):
        if len(cyc) <= 3:
            continue
        if len(cyc) == 4 and breakable.intersection(cyc):
            continue
        bad.append(sorted(cyc))
    return bad


def structural_violations(
    sigma: Sequence[int], norms: Sequence[int], vertex_vectors: Sequence[Sequence[int]]
) -> list[str]:
    """Check the structural consequences of embedding a D-type lattice as the complement of ``sigma``.

    Returns a list of human-readable violations; empty means every check passed.
    ``vertex_vectors`` should be a normalised embedding (``X_* = v_1``,
    ``X_** = v_f``) so that the interval conventions apply.
    """
    sigma = tuple(sigma)
    out: list[str] = []
    if len(sigma) < 2 or sigma[0] != 1 or sigma[1] != 1:
        out.append(f"sigma_0 = sigma_1 = 1 fails for {sigma}")
    basis = standard_basis(sigma)
    count = len(basis.vectors)
    for j in range(1, count + 1):
        if basis.v(j)[j - 1] == 0:
            out.append(f"{j - 1} not in supp v_{j}")
    for k in range(1, count):
        if norm(basis.v(k + 1)) == 2:
            for j in range(1, count + 1):
                if k in basis.gappy_indices[j - 1]:
                    out.append(f"|v_{k + 1}| = 2 but {k} is a gappy index of v_{j}")
    tight = [j for j in range(1, count + 1) if basis.tag(j) == TIGHT]
    if len(tight) > 1:
        out.append(f"more than one tight vector: {tight}")
    breakable = {j for j in range(1, count + 1) if is_breakable_in_complement(basis.v(j), sigma)}
    for j in sorted(breakable):
        if basis.tag(j) != TIGHT:
            out.append(f"v_{j} is breakable but not tight")
    gappy = [j for j in range(1, count + 1) if basis.tag(j) == GAPPY]
    if not breakable and gappy:
        if len(gappy) > 1:
            out.append(f"several gappy vectors without a breakable one: {gappy}")
        for g in gappy:
            if not _gappy_shape_ok(basis.v(g), g):
                out.append(f"gappy v_{g} = {basis.v(g)} lacks the shape -e_g + e_(g-1) + ... + e_j + e_k")
    for i, j in combinations(range(1, count + 1), 2):
        if i in breakable or j in breakable:
            continue
        vi, vj = basis.v(i), basis.v(j)
        if norm(vi) >= 3 and norm(vj) >= 3 and abs(dot(vi, vj)) > 1:
            out.append(f"|<v_{i}, v_{j}>| = {abs(dot(vi, vj))} > 1 for unbreakable v_{i}, v_{j}")
    try:
        assignment = interval_assignment(sigma, norms, vertex_vectors)
    except NoInterval as exc:
        out.append(str(exc))
        return out
    graph = intersection_graph(assignment)
    claw = find_claw(graph)
    if claw is not None:
        out.append(f"claw centred at v_{claw[0]} with leaves {claw[1:]}")
    for cyc in long_cycles(graph, breakable):
        out.append(f"cycle {cyc} is too long")
    return out


def _gappy_shape_ok(v: Sequence[int], g: int) -> bool:
    """``v = -e_g + e_{g-1} + ... + e_j + e_k`` with ``k + 1 < j < g``."""
    if v[g] != -1:
        return False
    ones = sorted(i for i, c in enumerate(v) if c == 1)
    if len(ones) + 1 != sum(1 for c in v if c) or any(c not in (0, 1, -1) for c in v):
        return False
    if len(ones) < 2 or ones[-1] != g - 1:
        return False
    k = ones[0]
    run = ones[1:]
    j = run[0]
    return run == list(range(j, g)) and k + 1 < j < g
