"""Negative (Hirzebruch-Jung) continued fractions.

``[c_1, c_2, ..., c_k]`` denotes ``c_1 - 1/(c_2 - 1/(... - 1/c_k))``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DivisionByZero

NegCF = tuple[int, ...]


def neg_cf_expand(num: int, den: int) -> NegCF:
    """Canonical expansion of ``num/den`` with every term except possibly the first at least 2.

    Terms are produced by repeated ceilings: ``c = ceil(x)`` and ``x <- 1/(c - x)``.
    For ``num/den > 1`` every term is at least 2, and such an expansion is unique.
    """
    if den == 0:
        raise DivisionByZero("denominator is zero")
    if den < 0:
        num, den = -num, -den
    terms: list[int] = []
    while True:
        c = -((-num) // den)
        terms.append(c)
        rest = c * den - num
        if rest == 0:
            return tuple(terms)
        num, den = den, rest


def neg_cf_eval(cf: Sequence[int]) -> Fraction:
    """Evaluate a negative continued fraction with arbitrary integer terms exactly.

    Raises DivisionByZero when some proper tail evaluates to zero.
    """
    if len(cf) == 0:
        raise ValueError("empty continued fraction")
    value = Fraction(cf[-1])
    for c in reversed(cf[:-1]):
        if value == 0:
            raise DivisionByZero(f"zero tail in {list(cf)}")
        value = c - 1 / value
    return value


def expand_pattern(pattern: Sequence[tuple[int, int]]) -> NegCF:
    """Expand ``(value, count)`` blocks into a term sequence, honouring count -1 blocks of 2s.

    A block ``2^[-1]`` is interpreted through the identity
    ``[r, 2^[s], t] = [r - 1, -(s + 1), t - 1]``: at ``s = -1`` the middle
    term is 0, which merges its neighbours into ``r + t - 2``; at the end of
    the sequence it deletes itself together with the preceding term.
    Only value 2 may carry a negative count, and only -1.
    """
    out: list[int] = []
    pending_merge = False
    for value, count in pattern:
        if count >= 0:
            block = [value] * count
            if pending_merge and block:
                out[-1] = out[-1] + block[0] - 2
                block = block[1:]
                pending_merge = False
            out.extend(block)
            continue
        if count != -1 or value != 2:
            raise ValueError(f"unsupported block {value}^[{count}]")
        if pending_merge:
            raise ValueError("two adjacent 2^[-1] blocks")
        if not out:
            raise ValueError("2^[-1] block at the start of a pattern")
        pending_merge = True
    if pending_merge:
        out.pop()
    return tuple(out)
