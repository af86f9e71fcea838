"""Torsion coefficients and the Alexander polynomial forced by a changemaker vector.

For a changemaker ``sigma`` of length m with ``|sigma|^2 = 4|q|``,

    t_i = min { (|c|^2 - m) / 8 : c odd in every coordinate,
                <c, sigma> + 4|q| = 2i (mod 8|q|) }

for ``0 <= i <= 2|q|``.  The minimum is computed by a dynamic programme
over residues of ``<c, sigma>`` modulo ``8|q|``, with coordinates drawn
from ``{+-1, +-3, ..., +-B}``.  B runs through 3, 7, 15, ... until two
consecutive values give the same table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .changemaker import is_changemaker
from .core import norm
from .errors import DomainError, InvariantError, NonConvergence

TorsionSeq = tuple[int, ...]

_INF = float("inf")


def _min_squares(sigma: Sequence[int], modulus: int, bound: int) -> list[float]:
    """For each residue r, the least ``sum c_j^2`` over odd ``|c_j| <= bound`` with ``<c, sigma> = r``."""
    best = [_INF] * modulus
    best[0] = 0
    choices = [c for c in range(-bound, bound + 1, 2)]
    for s in sigma:
        nxt = [_INF] * modulus
        for r, val in enumerate(best):
            if val == _INF:
                continue
            for c in choices:
                r2 = (r + c * s) % modulus
                v2 = val + c * c
                if v2 < nxt[r2]:
                    nxt[r2] = v2
        best = nxt
    return best


def _table(sigma: Sequence[int], bound: int) -> list[float]:
    q_abs = norm(sigma) // 4
    modulus = 8 * q_abs
    best = _min_squares(sigma, modulus, bound)
    m = len(sigma)
    out: list[float] = []
    for i in range(2 * q_abs + 1):
        val = best[(2 * i - 4 * q_abs) % modulus]
        if val == _INF:
            out.append(_INF)
            continue
        if (val - m) % 8:
            raise InvariantError(f"|c|^2 - m = {val - m} is not divisible by 8")
        out.append((val - m) // 8)
    return out


def coordinate_ceiling(sigma: Sequence[int]) -> int:
    """Largest B tried: the first of 3, 7, 15, ... that is at least ``max(7, 2 max(sigma) + 1)``."""
    target = max(7, 2 * max(sigma) + 1)
    bound = 3
    while bound < target:
        bound = 2 * bound + 1
    return bound


def torsion_coeffs(sigma: Sequence[int]) -> TorsionSeq:
    """The torsion coefficients ``(t_0, ..., t_{2|q|})`` of a changemaker."""
    sigma = tuple(int(s) for s in sigma)
    if not is_changemaker(sigma):
        raise DomainError(f"{sigma} is not a changemaker")
    if norm(sigma) % 4:
        raise DomainError(f"|sigma|^2 = {norm(sigma)} is not divisible by 4")
    ceiling = coordinate_ceiling(sigma)
    bound = 3
    prev = _table(sigma, bound)
    while True:
        bound = 2 * bound + 1
        if bound > ceiling:
            raise NonConvergence(f"torsion minimisation for {sigma} did not stabilise up to B = {ceiling}")
        cur = _table(sigma, bound)
        if cur == prev and _INF not in cur:
            return tuple(int(v) for v in cur)
        prev = cur


@dataclass(frozen=True)
class AlexPoly:
    """Symmetric Laurent polynomial ``b_0 + sum_{i>0} b_i (T^i + T^-i)``; ``coeffs = (b_0, b_1, ...)``."""

    coeffs: tuple[int, ...]

    def coefficient(self, i: int) -> int:
        i = abs(i)
        return self.coeffs[i] if i < len(self.coeffs) else 0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def laurent(self) -> dict[int, int]:
        """Exponent to coefficient, nonzero terms only."""
        out = {}
        for i in range(-self.degree, self.degree + 1):
            c = self.coefficient(i)
            if c:
                out[i] = c
        return out

    def __str__(self) -> str:
        terms = []
        for e, c in sorted(self.laurent().items(), reverse=True):
            mono = "1" if e == 0 else ("T" if e == 1 else f"T^{e}")
            terms.append(f"{c}" if e == 0 else (mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}"))
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def alex_poly(t: Sequence[int]) -> AlexPoly:
    """``b_i = t_{i-1} - 2t_i + t_{i+1}`` for ``i > 0`` and ``b_0 = 1 - 2 sum_{i>0} b_i``."""
    padded = list(t) + [0, 0]
    b = [padded[i - 1] - 2 * padded[i] + padded[i + 1] for i in range(1, len(t) + 1)]
    coeffs = [1 - 2 * sum(b)] + b
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return AlexPoly(tuple(coeffs))


def torus_knot_poly(k: int) -> AlexPoly:
    """Alexander polynomial of the (2, 2k+1) torus knot: ``sum_{|i| <= k} (-1)^{i+k} T^i``."""
    if k < 0:
        raise DomainError("k must be nonnegative")
    return AlexPoly(tuple((-1) ** (i + k) for i in range(k + 1)))


def is_lspace_shape(poly: AlexPoly) -> bool:
    """Coefficients in {-1, 0, 1} whose nonzero entries alternate in sign along the exponents."""
    nonzero = [c for _, c in sorted(poly.laurent().items())]
    if any(abs(c) != 1 for c in nonzero):
        return False
    return all(a == -b for a, b in zip(nonzero, nonzero[1:]))
