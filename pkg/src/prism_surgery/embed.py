"""Embedding D-type lattices as orthogonal complements of changemaker vectors.

The search works in the ambient coordinates of ``Z^m``.  Vertex vectors are
placed in tree order ``X_*, X_**, X_0, X_1, ..., X_n``; each new vector has
a prescribed norm, is orthogonal to ``sigma`` and has prescribed pairings
with every vector already placed.  Candidates come from
:func:`core.constrained_vectors`.

Symmetry: permuting coordinates that carry equal entries of ``sigma`` is an
isometry of the complement.  Coordinates on which every vector placed so
far vanishes ("untouched") can be permuted freely within such a block
without disturbing earlier choices, so each new vector may be required to
be nonincreasing along the untouched coordinates of every block.  Applying
this at every level only discards vectors that are images of kept ones
under the stabiliser of the prefix, so a completion exists after the
restriction exactly when one existed before it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Optional, Sequence

from .changemaker import enum_changemakers, is_changemaker
from .core import IntVec, constrained_vectors, det, gram, norm
from .dtype import DTypeLattice, PrismParams, dtype_from_pq, dtype_gram, pq_from_norms
from .errors import DomainError, InvariantError

#: First bound on the largest vertex norm in the deepening search.
NORM_BOUND_START = 8


@dataclass(frozen=True)
class Embedding:
    """Vertex vectors ``(X_*, X_**, X_0, ..., X_n)`` in ``Z^m`` spanning the complement of ``sigma``."""

    sigma: IntVec
    norms: tuple[int, ...]
    vectors: tuple[IntVec, ...]

    @property
    def pq(self) -> PrismParams:
        return pq_from_norms(self.norms)


Trie = dict[int, "Trie"]


def _trie(sequences: Iterable[Sequence[int]]) -> Trie:
    """Prefix tree of norm sequences; a complete sequence ends at a node holding the key -1."""
    root: Trie = {}
    for seq in sequences:
        node = root
        for a in seq:
            node = node.setdefault(a, {})
        node[-1] = {}
    return root


def _trie_remove(root: Trie, seq: Sequence[int]) -> None:
    path = [root]
    for a in seq:
        path.append(path[-1][a])
    path[-1].pop(-1, None)
    for depth in range(len(seq) - 1, -1, -1):
        if path[depth + 1]:
            break
        del path[depth][seq[depth]]


def _pairings(level: int) -> list[tuple[int, int]]:
    """Required pairings of the vector at ``level`` with earlier levels (tree order)."""
    if level == 0:
        return []
    if level == 1:
        return [(0, 0)]
    if level == 2:
        return [(0, -1), (1, -1)]
    return [(k, 0) for k in range(level - 1)] + [(level - 1, -1)]


def _blocks(sigma: Sequence[int]) -> list[list[int]]:
    groups: dict[int, list[int]] = {}
    for i, s in enumerate(sigma):
        groups.setdefault(s, []).append(i)
    return [sorted(g) for g in groups.values() if len(g) > 1]


class _Searcher:
    """Backtracking placement of vertex vectors whose norm sequence lies in a trie."""

    def __init__(self, sigma: IntVec, trie: Trie, normalized: bool):
        self.sigma = sigma
        self.trie = trie
        self.m = len(sigma)
        self.depth = self.m - 1
        self.blocks = _blocks(sigma)
        self.order = list(range(self.m - 1, -1, -1))
        self.normalized = normalized
        self.nodes = 0

    def _symmetry_links(self, chosen: Sequence[IntVec]) -> dict[int, int]:
        touched = [any(v[i] for v in chosen) for i in range(self.m)]
        links: dict[int, int] = {}
        for block in self.blocks:
            free = [i for i in block if not touched[i]]
            # order processes larger indices first, so x[i_k] >= x[i_{k+1}] is a lower bound on i_k
            for a, b in zip(free, free[1:]):
                links[a] = b
        return links

    def _unit(self, i: int, j: int) -> IntVec:
        v = [0] * self.m
        v[i] = 1
        v[j] = -1
        return tuple(v)

    def _forced(self, level: int, chosen: Sequence[IntVec], target: int) -> Optional[list[IntVec]]:
        """Candidates fixed by ``X_* = v_1``, ``X_** = v_f`` and, when ``a_0 = 2``, ``X_0 = v_2``."""
        s = self.sigma
        if level == 0:
            return [self._unit(0, 1)] if s[0] == s[1] else []
        if level == 1:
            return [self._unit(f - 1, f) for f in range(3, self.m) if s[f - 1] == s[f]]
        if level == 2 and target == 2:
            return self._forced_a0_two(chosen)
        return None

    def _forced_a0_two(self, chosen: Sequence[IntVec]) -> list[IntVec]:
        s = self.sigma
        if self.m > 3 and s[1] == s[2] and chosen[1] == self._unit(2, 3):
            return [self._unit(1, 2)]
        return []

    def _free(self, level: int, chosen: Sequence[IntVec], lo: int, hi: int) -> list[IntVec]:
        cons = [(self.sigma, 0)] + [(chosen[k], val) for k, val in _pairings(level)]
        return constrained_vectors(
            self.m,
            hi,
            min_norm=lo,
            constraints=cons,
            order=self.order,
            at_least=self._symmetry_links(chosen),
        )

    def candidates(self, level: int, chosen: Sequence[IntVec], node: Trie) -> Iterator[IntVec]:
        """Candidate vectors for ``level``, generated one norm at a time in increasing order."""
        norms = [2] if level < 2 else sorted(a for a in node if a >= 0)
        pairs = _pairings(level)
        for a in norms:
            found: Optional[list[IntVec]] = None
            if self.normalized:
                found = self._forced(level, chosen, a)
            if found is None:
                found = self._free(level, chosen, a, a)
            found = [
                w
                for w in found
                if norm(w) == a and _dot(w, self.sigma) == 0 and all(_dot(w, chosen[k]) == val for k, val in pairs)
            ]
            found.sort()
            yield from found

    def run(self, first_only: bool = True) -> list[tuple[IntVec, ...]]:
        results: list[tuple[IntVec, ...]] = []
        chosen: list[IntVec] = []

        def rec(level: int, node: Trie) -> bool:
            self.nodes += 1
            if level == self.depth:
                if -1 in node:
                    results.append(tuple(chosen))
                    return first_only
                return False
            for w in self.candidates(level, chosen, node):
                chosen.append(w)
                nxt = node if level < 2 else node[norm(w)]
                if rec(level + 1, nxt):
                    return True
                chosen.pop()
            return False

        rec(0, self.trie)
        return results


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def _check_rank(sigma: Sequence[int], norms: Sequence[int]) -> None:
    if len(norms) + 2 != len(sigma) - 1:
        raise DomainError(
            f"a lattice with {len(norms)} vertex norms has rank {len(norms) + 2}, "
            f"but the complement of a length-{len(sigma)} vector has rank {len(sigma) - 1}"
        )


def embed_dtype(sigma: Sequence[int], norms: Sequence[int], *, normalized: bool = False) -> Optional[Embedding]:
    """An embedding of the D-type lattice with vertex ``norms`` onto the complement of ``sigma``, or None.

    The Gram determinant of the D-type lattice equals ``|sigma|^2`` exactly
    when it has the same discriminant as the complement, so vectors with the
    right pairings span the whole complement precisely in that case; this is
    checked before searching.  ``normalized=True`` fixes ``X_* = e_0 - e_1``,
    restricts ``X_**`` to vectors ``e_{f-1} - e_f`` and, when ``a_0 = 2``,
    fixes ``X_** = e_2 - e_3`` and ``X_0 = e_1 - e_2``.
    """
    sigma = tuple(int(s) for s in sigma)
    norms = tuple(int(a) for a in norms)
    _check_rank(sigma, norms)
    if any(a < 2 for a in norms):
        raise DomainError(f"vertex norms must be at least 2, got {norms}")
    if det(dtype_gram(norms)) != norm(sigma):
        return None
    hits = _Searcher(sigma, _trie([norms]), normalized).run(first_only=True)
    if not hits:
        return None
    emb = Embedding(sigma, norms, hits[0])
    _verify(emb)
    return emb


def all_embeddings(sigma: Sequence[int], norms: Sequence[int], *, normalized: bool = False) -> list[Embedding]:
    """Every embedding found by the symmetry-reduced search (one per reduced branch)."""
    sigma = tuple(int(s) for s in sigma)
    norms = tuple(int(a) for a in norms)
    _check_rank(sigma, norms)
    if det(dtype_gram(norms)) != norm(sigma):
        return []
    return [Embedding(sigma, norms, h) for h in _Searcher(sigma, _trie([norms]), normalized).run(first_only=False)]


def _verify(emb: Embedding) -> None:
    if gram(emb.vectors) != dtype_gram(emb.norms):
        raise InvariantError(f"embedding of {emb.norms} into the complement of {emb.sigma} has the wrong Gram matrix")
    if any(_dot(v, emb.sigma) for v in emb.vectors):
        raise InvariantError("embedded vector not orthogonal to sigma")


def candidate_norms(sigma: Sequence[int]) -> list[tuple[int, ...]]:
    """Vertex-norm sequences whose D-type lattice has the rank and discriminant of the complement.

    With ``|sigma|^2 = 4|q|`` and rank ``n + 3 = m - 1``, the sequence is
    the expansion of ``-q/p`` for some p.  Every such value is at least
    ``[1, 2, ..., 2] = 1/(n + 1)``, so ``p <= (n + 1)|q|``.
    """
    sigma = tuple(sigma)
    m = len(sigma)
    total = norm(sigma)
    if m < 4 or total % 4:
        return []
    q_abs = total // 4
    n = m - 4
    out = []
    for p in range(2, (n + 1) * q_abs + 1):
        if gcd(p, q_abs) != 1:
            continue
        lat = dtype_from_pq(PrismParams(p, -q_abs))
        if len(lat.norms) == n + 1:
            out.append(lat.norms)
    return out


def find_vertex_basis(
    sigma: Sequence[int], *, method: str = "norms", exhaustive: bool = False, normalized: bool = False
) -> Optional[Embedding]:
    """Recover a vertex basis of the complement of ``sigma`` if it is a D-type lattice.

    ``method="norms"`` tries every norm sequence from :func:`candidate_norms`.
    ``method="chain"`` grows the vertex chain with free norms up to a bound
    that starts at 16 and doubles up to ``|sigma|^2``, accepting a complete
    chain whose Gram determinant equals ``|sigma|^2``.  With
    ``exhaustive=True`` every candidate is examined and an InvariantError is
    raised if two different norm sequences both embed.
    """
    sigma = tuple(int(s) for s in sigma)
    if not is_changemaker(sigma):
        raise DomainError(f"{sigma} is not a changemaker")
    # A single vertex norm encodes -q/p = a_0 - 1, so p = 1; prism manifolds
    # need at least two vertex norms, hence a lattice of rank >= 4 and m >= 5.
    if len(sigma) < 5:
        return None
    if method == "chain":
        return _chain_search(sigma, exhaustive=exhaustive)
    if method != "norms":
        raise ValueError(f"unknown method {method!r}")
    candidates = candidate_norms(sigma)
    if not exhaustive:
        # Deepen on the largest vertex norm so that a wrong early choice cannot
        # drag the search through sequences with enormous norms first.
        top = max((max(c) for c in candidates), default=0)
        bound = NORM_BOUND_START
        while True:
            trie = _trie(c for c in candidates if max(c) <= bound)
            hits = _Searcher(sigma, trie, normalized).run(first_only=True) if trie else []
            if hits:
                emb = Embedding(sigma, tuple(norm(v) for v in hits[0][2:]), hits[0])
                _verify(emb)
                return emb
            if bound >= top:
                return None
            bound *= 2
    trie = _trie(candidates)
    found: list[Embedding] = []
    while trie:
        hits = _Searcher(sigma, trie, normalized).run(first_only=True)
        if not hits:
            break
        emb = Embedding(sigma, tuple(norm(v) for v in hits[0][2:]), hits[0])
        _verify(emb)
        found.append(emb)
        _trie_remove(trie, emb.norms)
    if len(found) > 1:
        raise InvariantError(f"complement of {sigma} embeds with several norm sequences: {[e.norms for e in found]}")
    return found[0] if found else None


def _chain_search(sigma: IntVec, *, exhaustive: bool) -> Optional[Embedding]:
    m = len(sigma)
    total = norm(sigma)
    depth = m - 1
    bound = 16
    while True:
        cap = min(bound, total)
        hits = _free_chain(sigma, cap, depth, exhaustive)
        if hits:
            if len({h.norms for h in hits}) > 1:
                raise InvariantError(f"complement of {sigma} has chains with norms {sorted({h.norms for h in hits})}")
            return hits[0]
        if cap >= total:
            return None
        bound *= 2


def _free_chain(sigma: IntVec, cap: int, depth: int, exhaustive: bool) -> list[Embedding]:
    m = len(sigma)
    total = norm(sigma)
    order = list(range(m - 1, -1, -1))
    blocks = _blocks(sigma)
    chosen: list[IntVec] = []
    out: list[Embedding] = []

    def links() -> dict[int, int]:
        touched = [any(v[i] for v in chosen) for i in range(m)]
        res = {}
        for block in blocks:
            free = [i for i in block if not touched[i]]
            for a, b in zip(free, free[1:]):
                res[a] = b
        return res

    def rec(level: int) -> bool:
        if level == depth:
            if det(gram(chosen)) == total:
                out.append(Embedding(sigma, tuple(norm(v) for v in chosen[2:]), tuple(chosen)))
                return not exhaustive
            return False
        lo, hi = (2, 2) if level < 2 else (2, cap)
        cons = [(sigma, 0)] + [(chosen[k], val) for k, val in _pairings(level)]
        cands = constrained_vectors(m, hi, min_norm=lo, constraints=cons, order=order, at_least=links())
        cands.sort(key=lambda w: (norm(w), w))
        for w in cands:
            chosen.append(w)
            if rec(level + 1):
                return True
            chosen.pop()
        return False

    rec(0)
    return out


def realizable(pp: PrismParams, *, normalized: bool = False) -> list[IntVec]:
    """Changemakers ``sigma`` whose complement is isomorphic to Delta(p, q), lexicographically sorted.

    Fast rejects: p even, or ``m > 4|q|`` where ``m`` is the length of
    ``sigma`` (a vector of m positive integers has squared norm at least m).
    """
    if pp.q >= 0:
        raise DomainError(f"realizable expects q < 0, got q={pp.q}")
    if pp.p % 2 == 0:
        return []
    lat = dtype_from_pq(pp)
    q_abs = -pp.q
    if det(lat.gram) != 4 * q_abs:
        raise InvariantError(f"det of Delta({pp.p},{pp.q}) is not 4|q|")
    m = lat.rank + 1
    if m > 4 * q_abs:
        return []
    return [s for s in enum_changemakers(m, 4 * q_abs) if embed_dtype(s, lat.norms, normalized=normalized)]


def realizable_many(pairs: Iterable[tuple[int, int]], *, normalized: bool = False) -> dict[tuple[int, int], list[IntVec]]:
    return {(p, q): realizable(PrismParams(p, q), normalized=normalized) for p, q in pairs}
