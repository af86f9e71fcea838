"""Closed-form prism manifold families and the parametric changemaker families.

Membership (q < 0 and q > 0) is decided by scanning the odd parameter r
over ``0 < |r| <= 4|q|``.  For every family with a parameter, the defining
identity together with its range forces ``|r|`` well below ``4|q|``, so the
scan is exhaustive.

The changemaker families are stored as data: each row knows its
changemaker, the expected vertex norms (as blocks ``(value, count)``,
where a count of -1 follows the truncation convention of
:func:`contfrac.expand_pattern`), the predicted ``(p, q)`` and its type.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .contfrac import expand_pattern
from .dtype import PrismParams

TAGS = ("1A", "1B", "2", "3A", "3B", "4", "5", "Spor")

SPORADIC_NEG = ((11, -30), (17, -31), (13, -47), (23, -64))
SPORADIC_POS = ((11, 19), (11, 30), (13, 34))


@dataclass(frozen=True, order=True)
class FamilyInstance:
    """Membership witness: a family tag, its odd parameter r (None for 1A, 1B, Spor) and p."""

    tag: str
    r: Optional[int]
    p: int

    def label(self) -> str:
        return self.tag if self.r is None else f"{self.tag}(r={self.r})"


def _div(num: int, den: int) -> Optional[int]:
    if den == 0 or num % den:
        return None
    return num // den


def _neg_rule(tag: str, p: int, big_q: int, r: int) -> bool:
    """Table of q < 0 families; ``big_q = -q > 0``."""
    if tag == "2":
        mod = abs(4 * r + 2)
        return r % 4 == 3 and r not in (-1, 3) and big_q * mod == r * r * p + 1 and (p - (2 * r - 3)) % mod == 0
    if tag == "3A":
        return r >= 1 and 2 * r * big_q == (p + 1) * (p + 4) and (p + 1) % (2 * r) == 0 and p >= 4 * r - 1
    if tag == "3B":
        return r >= 5 and 2 * r * big_q == (p + 1) * (p + 4) and (p - (r - 4)) % (2 * r) == 0 and p >= 3 * r - 4
    if tag == "4":
        mod = 2 * r * r
        return (
            r not in (-3, -1, 1)
            and mod * big_q == (2 * r + 1) ** 2 * p + 1
            and (p - (4 * r - 1)) % mod == 0
            and p >= 4 * r - 1
        )
    if tag == "5":
        mod = r * r - 2 * r - 1
        return r != 1 and mod * big_q == r * r * p + 1 and (p - (2 * r - 5)) % mod == 0 and p >= 2 * r - 5
    raise ValueError(tag)


def _pos_rule(tag: str, p: int, q: int, r: int) -> bool:
    """Table of q > 0 families."""
    if tag == "2":
        mod = abs(4 * r + 2)
        return r % 4 == 3 and q * mod == r * r * p - 1 and (p - (-2 * r + 3)) % mod == 0
    if tag == "3A":
        return 2 * r * q == (p - 1) * (p - 4) and (p - 1) % abs(2 * r) == 0
    if tag == "3B":
        return 2 * r * q == (p - 1) * (p - 4) and (p - (r + 4)) % abs(2 * r) == 0
    if tag == "4":
        # The printed congruence p = 4r - 1 contradicts integrality of q here;
        # reducing the identity mod 2r^2 forces p = 1 - 4r.
        mod = 2 * r * r
        return mod * q == (2 * r + 1) ** 2 * p - 1 and (p - (1 - 4 * r)) % mod == 0
    if tag == "5":
        mod = r * r - 2 * r - 1
        return r != 1 and mod * q == r * r * p - 1 and (p - (-2 * r + 5)) % mod == 0
    raise ValueError(tag)


def _odd_range(bound: int) -> list[int]:
    return [r for r in range(-bound, bound + 1) if r % 2]


def pneg_membership(pp: PrismParams) -> list[FamilyInstance]:
    """All families of the q < 0 table containing P(p, q), sorted by tag then r."""
    p, q = pp.p, pp.q
    if q >= 0 or p % 2 == 0:
        return []
    big_q = -q
    out: list[FamilyInstance] = []
    if p >= 7 and 2 * big_q == p * p - 3 * p + 4:
        out.append(FamilyInstance("1A", None, p))
    if p > 22 and p % 22 in (17, 19) and 22 * big_q == p * p - 3 * p + 4:
        out.append(FamilyInstance("1B", None, p))
    for tag in ("2", "3A", "3B", "4", "5"):
        for r in _odd_range(4 * big_q):
            if _neg_rule(tag, p, big_q, r):
                out.append(FamilyInstance(tag, r, p))
    if (p, q) in SPORADIC_NEG:
        out.append(FamilyInstance("Spor", None, p))
    return sorted(out, key=_sort_key)


def ppos_membership(pp: PrismParams) -> list[FamilyInstance]:
    """All families of the q > 0 table containing P(p, q), sorted by tag then r."""
    p, q = pp.p, pp.q
    if q <= 0 or p % 2 == 0:
        return []
    out: list[FamilyInstance] = []
    if 2 * q == p * p + 3 * p + 4:
        out.append(FamilyInstance("1A", None, p))
    if p % 22 in (3, 5) and 22 * q == p * p + 3 * p + 4:
        out.append(FamilyInstance("1B", None, p))
    for tag in ("2", "3A", "3B", "4", "5"):
        for r in _odd_range(4 * q):
            if _pos_rule(tag, p, q, r):
                out.append(FamilyInstance(tag, r, p))
    if (p, q) in SPORADIC_POS:
        out.append(FamilyInstance("Spor", None, p))
    return sorted(out, key=_sort_key)


def membership(pp: PrismParams) -> list[FamilyInstance]:
    return pneg_membership(pp) if pp.q < 0 else ppos_membership(pp)


def _sort_key(fi: FamilyInstance) -> tuple[int, int]:
    return (TAGS.index(fi.tag), fi.r if fi.r is not None else 0)


def enumerate_members(
    tag: str, pmax: int, *, negative: bool = True, r: Optional[int] = None
) -> list[tuple[PrismParams, FamilyInstance]]:
    """Members of one family with ``p <= pmax``, sorted by ``(p, |q|, r)``.

    For a fixed p every row's range or congruence bounds the parameter by
    ``|r| <= p + 5``, so scanning that window (or only ``r`` when given)
    finds every member.  Each candidate is confirmed by the membership test.
    """
    if tag not in TAGS:
        raise KeyError(f"unknown family type {tag!r}")
    found: set[tuple[PrismParams, FamilyInstance]] = set()
    for p in range(3, pmax + 1, 2):
        if r is not None:
            rs: list[Optional[int]] = [r]
        elif tag in ("1A", "1B", "Spor"):
            rs = [None]
        else:
            rs = [v for v in range(-(p + 5), p + 6) if v % 2]
        for rv in rs:
            for q in _family_q_candidates(tag, rv, p, negative):
                if (q < 0) != negative:
                    continue
                try:
                    pp = PrismParams(p, q)
                except ValueError:
                    continue
                for fi in membership(pp):
                    if fi.tag == tag and (rv is None or fi.r == rv):
                        found.add((pp, fi))
    return sorted(found, key=lambda item: (item[0].p, abs(item[0].q), item[1].r or 0))


def _family_q_candidates(tag: str, r: Optional[int], p: int, negative: bool) -> list[int]:
    sign = -1 if negative else 1
    if tag == "Spor":
        pool = SPORADIC_NEG if negative else SPORADIC_POS
        return [q for pp, q in pool if pp == p]
    if tag in ("1A", "1B"):
        num = p * p - 3 * p + 4 if negative else p * p + 3 * p + 4
        den = 2 if tag == "1A" else 22
        val = _div(num, den)
        return [] if val is None else [sign * val]
    if r is None:
        raise ValueError(f"family {tag} needs r")
    eps = 1 if negative else -1
    if tag == "2":
        val = _div(r * r * p + eps, abs(4 * r + 2))
    elif tag in ("3A", "3B"):
        val = _div((p + 1) * (p + 4), 2 * r) if negative else _div((p - 1) * (p - 4), 2 * r)
    elif tag == "4":
        val = _div((2 * r + 1) ** 2 * p + eps, 2 * r * r)
    else:
        val = _div(r * r * p + eps, r * r - 2 * r - 1)
    return [] if val is None else [sign * val]


# ---------------------------------------------------------------------------
# Parametric changemaker families.
# ---------------------------------------------------------------------------

Blocks = list[tuple[int, int]]


@dataclass(frozen=True)
class CMFamily:
    """One parametric family of changemakers whose complements are D-type lattices."""

    row_id: str
    group: str
    changemaker_text: str
    vertex_text: str
    p_text: str
    q_text: str
    tag: str
    r_text: str
    s_min: Optional[int]
    t_min: Optional[int]
    sigma: Callable[[int, int], Blocks]
    norms: Callable[[int, int], Blocks]
    p: Callable[[int, int], int]
    neg_q: Callable[[int, int], int]
    r: Callable[[int, int], Optional[int]]

    @property
    def uses_s(self) -> bool:
        return self.s_min is not None

    @property
    def uses_t(self) -> bool:
        return self.t_min is not None


@dataclass(frozen=True)
class CMFamilyRow:
    """A family together with values of its parameters."""

    row_id: str
    s: int = 0
    t: int = 0

    def __post_init__(self) -> None:
        fam = family(self.row_id)
        if fam.uses_s:
            if self.s < fam.s_min:
                raise ValueError(f"{self.row_id} needs s >= {fam.s_min}, got {self.s}")
        elif self.s != 0:
            raise ValueError(f"{self.row_id} has no parameter s")
        if fam.uses_t:
            if self.t < fam.t_min:
                raise ValueError(f"{self.row_id} needs t >= {fam.t_min}, got {self.t}")
        elif self.t != 0:
            raise ValueError(f"{self.row_id} has no parameter t")

    @property
    def family(self) -> CMFamily:
        return family(self.row_id)


def _flat(blocks: Blocks) -> tuple[int, ...]:
    out: list[int] = []
    for value, count in blocks:
        if count < 0:
            raise ValueError(f"negative multiplicity in a changemaker pattern: {blocks}")
        out.extend([value] * count)
    return tuple(out)


def _fixed(values: tuple[int, ...]) -> Callable[[int, int], Blocks]:
    return lambda s, t: [(v, 1) for v in values]


def _registry() -> list[CMFamily]:
    rows: list[CMFamily] = []

    def add(*args, **kwargs) -> None:
        rows.append(CMFamily(*args, **kwargs))

    # Families where f != 3 and v_{f-1} is just right.
    add("jr_1", "f!=3, just right", "(1,1,2,4,7,7)", "{4,4,3}", "11", "30", "Spor", "", None, None,
        _fixed((1, 1, 2, 4, 7, 7)), _fixed((4, 4, 3)), lambda s, t: 11, lambda s, t: 30, lambda s, t: None)
    add("jr_2", "f!=3, just right", "(1,1,2,3,3,10)", "{3,6,3}", "17", "31", "Spor", "", None, None,
        _fixed((1, 1, 2, 3, 3, 10)), _fixed((3, 6, 3)), lambda s, t: 17, lambda s, t: 31, lambda s, t: None)
    add("jr_3", "f!=3, just right", "(1,1,2,2,4,9,9)", "{5,3,3,2}", "13", "47", "Spor", "", None, None,
        _fixed((1, 1, 2, 2, 4, 9, 9)), _fixed((5, 3, 3, 2)), lambda s, t: 13, lambda s, t: 47, lambda s, t: None)
    add("jr_4", "f!=3, just right", "(1,1,2,2,5,5,14)", "{4,5,3,2}", "23", "64", "Spor", "", None, None,
        _fixed((1, 1, 2, 2, 5, 5, 14)), _fixed((4, 5, 3, 2)), lambda s, t: 23, lambda s, t: 64, lambda s, t: None)
    add("jr_5", "f!=3, just right", "(1,1,2^[s+1],(2s+3)^[2],4s+6,8s+14)", "{s+3,3,5,2^[s],3}",
        "22s+39", "22s^2+75s+64", "1B", "", 0, None,
        lambda s, t: [(1, 2), (2, s + 1), (2 * s + 3, 2), (4 * s + 6, 1), (8 * s + 14, 1)],
        lambda s, t: [(s + 3, 1), (3, 1), (5, 1), (2, s), (3, 1)],
        lambda s, t: 22 * s + 39, lambda s, t: 22 * s * s + 75 * s + 64, lambda s, t: None)
    add("jr_6", "f!=3, just right", "(1,1,2^[s+1],(2s+3)^[2],4s+8,8s+14)", "{s+3,4,4,2^[s],3}",
        "22s+41", "22s^2+79s+71", "1B", "", 0, None,
        lambda s, t: [(1, 2), (2, s + 1), (2 * s + 3, 2), (4 * s + 8, 1), (8 * s + 14, 1)],
        lambda s, t: [(s + 3, 1), (4, 1), (4, 1), (2, s), (3, 1)],
        lambda s, t: 22 * s + 41, lambda s, t: 22 * s * s + 79 * s + 71, lambda s, t: None)
    add("jr_7", "f!=3, just right", "(1,1,2,3,3,8,8^[s],8s+10,(8s+18)^[t])", "{3,s+3,3,4,2^[s],3,2^[t-1]}",
        "2r^2t+2r^2+4r-1", "(2r+1)^2(t+1)+8r+6", "4", "-(2s+5)", 0, 0,
        lambda s, t: [(1, 2), (2, 1), (3, 2), (8, 1), (8, s), (8 * s + 10, 1), (8 * s + 18, t)],
        lambda s, t: [(3, 1), (s + 3, 1), (3, 1), (4, 1), (2, s), (3, 1), (2, t - 1)],
        lambda s, t: 2 * (2 * s + 5) ** 2 * (t + 1) - 4 * (2 * s + 5) - 1,
        lambda s, t: (-4 * s - 9) ** 2 * (t + 1) - 8 * (2 * s + 5) + 6,
        lambda s, t: -(2 * s + 5))
    # f = 3, just right.
    add("a0_1", "f=3, just right", "(1,1,1,1,2^[s])", "{2,3,2^[s-1]}", "2s+1", "s+1", "5", "-1", 1, None,
        lambda s, t: [(1, 4), (2, s)],
        lambda s, t: [(2, 1), (3, 1), (2, s - 1)],
        lambda s, t: 2 * s + 1, lambda s, t: s + 1, lambda s, t: -1)
    add("a0_2", "f=3, just right", "(1,1,1,1,4^[s],4s+2,(4s+6)^[t])", "{2,s+3,5,2^[s-1],3,2^[t-1]}",
        "r^2-6+(r^2-2r-1)t", "r^2(t+1)+2r-1", "5", "-(2s+3)", 0, 0,
        lambda s, t: [(1, 4), (4, s), (4 * s + 2, 1), (4 * s + 6, t)],
        lambda s, t: [(2, 1), (s + 3, 1), (5, 1), (2, s - 1), (3, 1), (2, t - 1)],
        lambda s, t: _r5(s) ** 2 - 6 + (_r5(s) ** 2 - 2 * _r5(s) - 1) * t,
        lambda s, t: _r5(s) ** 2 * (t + 1) + 2 * _r5(s) - 1,
        lambda s, t: _r5(s))
    # f != 3, v_{f-1} tight.
    add("tight_1", "f!=3, tight", "(1,1,2^[s+1],(2s+5)^[2],(4s+8)^[t])", "{s+4,2^[t-1],4,2^[s],3}",
        "(2t+1)(2s+4)-1", "(s+2)((2t+1)(2s+4)+3)", "3A", "2t+1", 0, 1,
        lambda s, t: [(1, 2), (2, s + 1), (2 * s + 5, 2), (4 * s + 8, t)],
        lambda s, t: [(s + 4, 1), (2, t - 1), (4, 1), (2, s), (3, 1)],
        lambda s, t: (2 * t + 1) * (2 * s + 4) - 1,
        lambda s, t: (s + 2) * ((2 * t + 1) * (2 * s + 4) + 3),
        lambda s, t: 2 * t + 1)
    add("tight_2", "f!=3, tight", "(1,1,2^[s+1],(2s+5)^[2])", "{s+6,2^[s],3}",
        "2s+3", "2s^2+11s+14", "3A", "1", 0, None,
        lambda s, t: [(1, 2), (2, s + 1), (2 * s + 5, 2)],
        lambda s, t: [(s + 6, 1), (2, s), (3, 1)],
        lambda s, t: 2 * s + 3, lambda s, t: 2 * s * s + 11 * s + 14, lambda s, t: 1)
    add("tight_3", "f!=3, tight", "(1,1,2^[s+1],(2s+5)^[2],4s+8,(4s+10)^[t])", "{s+4,3,2^[t-1],3,2^[s],3}",
        "(2t+3)(2s+5)-4", "(2s+5)((2t+3)s+5t+6)", "3B", "2t+3", 0, 1,
        lambda s, t: [(1, 2), (2, s + 1), (2 * s + 5, 2), (4 * s + 8, 1), (4 * s + 10, t)],
        lambda s, t: [(s + 4, 1), (3, 1), (2, t - 1), (3, 1), (2, s), (3, 1)],
        lambda s, t: (2 * t + 3) * (2 * s + 5) - 4,
        lambda s, t: (2 * s + 5) * ((2 * t + 3) * s + 5 * t + 6),
        lambda s, t: 2 * t + 3)
    # f = 3, v_2 tight.
    add("f3_1", "f=3, tight", "(1,1,3,3,4^[s],(4s+6)^[t])", "{3,2^[s-1],5,s+3,2^[t-1]}",
        "(r^2-2r-1)t+2r-5", "r^2t+2r-1", "5", "2s+3", 1, 0,
        lambda s, t: [(1, 2), (3, 2), (4, s), (4 * s + 6, t)],
        lambda s, t: [(3, 1), (2, s - 1), (5, 1), (s + 3, 1), (2, t - 1)],
        lambda s, t: ((2 * s + 3) ** 2 - 2 * (2 * s + 3) - 1) * t + 2 * (2 * s + 3) - 5,
        lambda s, t: (2 * s + 3) ** 2 * t + 2 * (2 * s + 3) - 1,
        lambda s, t: 2 * s + 3)
    add("f3_2", "f=3, tight", "(1,1,3,3,6^[t])", "{6,3,2^[t-1]}", "2t+1", "9t+5", "5", "3", None, 1,
        lambda s, t: [(1, 2), (3, 2), (6, t)],
        lambda s, t: [(6, 1), (3, 1), (2, t - 1)],
        lambda s, t: 2 * t + 1, lambda s, t: 9 * t + 5, lambda s, t: 3)
    add("f3_3", "f=3, tight", "(1,1,3,3,4,6^[s])", "{3,3,2^[s-1],4}", "6s+5", "9s+9", "3B", "2s+3", 1, None,
        lambda s, t: [(1, 2), (3, 2), (4, 1), (6, s)],
        lambda s, t: [(3, 1), (3, 1), (2, s - 1), (4, 1)],
        lambda s, t: 6 * s + 5, lambda s, t: 9 * s + 9, lambda s, t: 2 * s + 3)
    add("f3_4", "f=3, tight", "(1,1,3,3,6,8^[s],(8s+6)^[t])", "{4,2^[s-1],4,3,s+2,2^[t-1]}",
        "2r^2t+4r-1", "(2r+1)^2t+8r+6", "4", "2s+1", 1, 0,
        lambda s, t: [(1, 2), (3, 2), (6, 1), (8, s), (8 * s + 6, t)],
        lambda s, t: [(4, 1), (2, s - 1), (4, 1), (3, 1), (s + 2, 1), (2, t - 1)],
        lambda s, t: 2 * (2 * s + 1) ** 2 * t + 4 * (2 * s + 1) - 1,
        lambda s, t: (4 * s + 3) ** 2 * t + 8 * (2 * s + 1) + 6,
        lambda s, t: 2 * s + 1)
    # v_{f-1} gappy.
    add("gappy_1", "v_(f-1) gappy", "(1,1,2,2,2^[s],(2s+3)^[2])", "{s+3,2^[s+1],3}", "2s+5", "2s^2+7s+7",
        "1A", "", 1, None,
        lambda s, t: [(1, 2), (2, 2), (2, s), (2 * s + 3, 2)],
        lambda s, t: [(s + 3, 1), (2, s + 1), (3, 1)],
        lambda s, t: 2 * s + 5, lambda s, t: 2 * s * s + 7 * s + 7, lambda s, t: None)
    add("gappy_2", "v_(f-1) gappy", "(1,1,2,4,4^[s],(4s+5)^[2],(8s+14)^[t])", "{s+3,3,4,2^[s],4,2^[t-1]}",
        "16ts+30t+8s+11", "16ts^2+56ts+8s^2+24s+49t+18", "2", "4s+7", 0, 0,
        lambda s, t: [(1, 2), (2, 1), (4, 1), (4, s), (4 * s + 5, 2), (8 * s + 14, t)],
        lambda s, t: [(s + 3, 1), (3, 1), (4, 1), (2, s), (4, 1), (2, t - 1)],
        lambda s, t: 16 * t * s + 30 * t + 8 * s + 11,
        lambda s, t: 16 * t * s * s + 56 * t * s + 8 * s * s + 24 * s + 49 * t + 18,
        lambda s, t: 4 * s + 7)
    add("gappy_3", "v_(f-1) gappy", "(1,1,2,2,4^[s],(4s+3)^[2],(8s+10)^[t])", "{s+3,2,3,3,2^[s-1],4,2^[t-1]}",
        "16ts+18t+8s+5", "16ts^2+40ts+8s^2+25t+16s+7", "2", "-4s-5", 1, 0,
        lambda s, t: [(1, 2), (2, 2), (4, s), (4 * s + 3, 2), (8 * s + 10, t)],
        lambda s, t: [(s + 3, 1), (2, 1), (3, 1), (3, 1), (2, s - 1), (4, 1), (2, t - 1)],
        lambda s, t: 16 * t * s + 18 * t + 8 * s + 5,
        lambda s, t: 16 * t * s * s + 40 * t * s + 8 * s * s + 25 * t + 16 * s + 7,
        lambda s, t: -4 * s - 5)
    add("gappy_4", "v_(f-1) gappy", "(1,1,2,2,3^[2],10^[t])", "{3,2,3,5,2^[t-1]}", "18t+5", "25t+7",
        "2", "-5", None, 0,
        lambda s, t: [(1, 2), (2, 2), (3, 2), (10, t)],
        lambda s, t: [(3, 1), (2, 1), (3, 1), (5, 1), (2, t - 1)],
        lambda s, t: 18 * t + 5, lambda s, t: 25 * t + 7, lambda s, t: -5)
    return rows


def _r5(s: int) -> int:
    return -(2 * s + 3)


FAMILIES: tuple[CMFamily, ...] = tuple(_registry())
_BY_ID = {f.row_id: f for f in FAMILIES}


def family(row_id: str) -> CMFamily:
    try:
        return _BY_ID[row_id]
    except KeyError:
        raise KeyError(f"unknown changemaker family {row_id!r}") from None


def family_rows(max_param: int = 3) -> list[CMFamilyRow]:
    """Every family row with parameters in ``[0, max_param]`` that respect the row constraints."""
    out = []
    for fam in FAMILIES:
        s_vals = range(fam.s_min, max_param + 1) if fam.uses_s else [0]
        t_vals = range(fam.t_min, max_param + 1) if fam.uses_t else [0]
        for s in s_vals:
            for t in t_vals:
                out.append(CMFamilyRow(fam.row_id, s, t))
    return out


def family_changemaker(row: CMFamilyRow) -> tuple[int, ...]:
    return _flat(row.family.sigma(row.s, row.t))


def family_norm_pattern(row: CMFamilyRow) -> tuple[int, ...]:
    """The expected vertex norms, with ``2^[-1]`` blocks resolved."""
    return expand_pattern(row.family.norms(row.s, row.t))


def family_predicted_pq(row: CMFamilyRow) -> PrismParams:
    fam = row.family
    return PrismParams(fam.p(row.s, row.t), -fam.neg_q(row.s, row.t))


def family_type(row: CMFamilyRow) -> FamilyInstance:
    fam = row.family
    return FamilyInstance(fam.tag, fam.r(row.s, row.t), fam.p(row.s, row.t))
