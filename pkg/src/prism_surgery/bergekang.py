"""Surface slopes, fibre indices and Euler-number signs of primitive/Seifert-fibred knots.

The Berge-Kang families KIST I, KIST IV, TKM II, TKM V and OPT I-V are
evaluated from their printed formulas.  A surgery is a prism manifold when
two fibre indices equal 2 and the third is an odd p > 1; then
``|q| = |gamma| / 4``.  The sign of q comes from the matching row of the
table of prism-manifold P/SF knots, except for KIST IV with
``(J_1, J_2) in {(2, 1), (2, -3)}``, where it is computed from the triple
pairing of the classes iota, rho and phi on the surgered torus.

Homology of the genus-two surface is generated by A, B, X, Y with
``A.X = B.Y = -1`` and every other pairing of distinct generators 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Optional

from .dtype import PrismParams
from .errors import ConstraintViolation, DegenerateClass, InvariantError, NotPrism

#: Intersection pairing on (A, B, X, Y).
PAIRING: tuple[tuple[int, ...], ...] = (
    (0, 0, -1, 0),
    (0, 0, 0, -1),
    (1, 0, 0, 0),
    (0, 1, 0, 0),
)

FAMILY_TAGS = ("KIST-I", "KIST-IV", "TKM-II", "TKM-V", "OPT-I", "OPT-II", "OPT-III", "OPT-IV", "OPT-V")
_ARITY = {"KIST-I": 5, "KIST-IV": 5, "TKM-II": 5, "TKM-V": 6, "OPT-I": 3, "OPT-II": 5, "OPT-III": 5, "OPT-IV": 2, "OPT-V": 2}
_ROMAN = {"1": "I", "2": "II", "3": "III", "4": "IV", "5": "V"}


@dataclass(frozen=True)
class CurveClass:
    """The homology class ``aA + bB + xX + yY``."""

    a: int
    b: int
    x: int
    y: int

    def coords(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.x, self.y)

    def dot(self, other: "CurveClass") -> int:
        u, v = self.coords(), other.coords()
        return sum(u[i] * PAIRING[i][j] * v[j] for i in range(4) for j in range(4))


def normalize_tag(tag: str) -> str:
    """Accept spellings like ``KIST4``, ``kist-iv`` or ``OPT_II``."""
    t = tag.upper().replace("_", "-").replace(" ", "")
    for prefix in ("KIST", "TKM", "OPT"):
        if t.startswith(prefix):
            rest = t[len(prefix):].lstrip("-")
            rest = _ROMAN.get(rest, rest)
            t = f"{prefix}-{rest}"
            break
    if t not in FAMILY_TAGS:
        raise KeyError(f"unknown P/SF family {tag!r}")
    return t


@dataclass(frozen=True)
class PSFParams:
    """A Berge-Kang family tag with its integer parameters, in the order the family prints them.

    KIST I: (J, h, k, h', k'); KIST IV and TKM II: (J_1, J_2, eps, n, p~);
    TKM V: (J_1, J_2, delta, eps, n, p~); OPT I: (m, n, s);
    OPT II and OPT III: (m, n, j, eps, p~); OPT IV and OPT V: (m, n).
    """

    family: str
    params: tuple[int, ...]

    def __post_init__(self) -> None:
        fam = normalize_tag(self.family)
        object.__setattr__(self, "family", fam)
        params = tuple(int(v) for v in self.params)
        object.__setattr__(self, "params", params)
        if len(params) != _ARITY[fam]:
            raise ConstraintViolation(f"{fam} takes {_ARITY[fam]} parameters, got {len(params)}")


@dataclass(frozen=True)
class PSFEvaluation:
    gamma: int
    fibers: tuple[int, int, int]
    curve: Optional[CurveClass] = None


@dataclass(frozen=True)
class PSFResult:
    """A prism-manifold surgery with the provenance of the sign of q."""

    prism: PrismParams
    gamma: int
    fibers: tuple[int, int, int]
    sign_source: str
    row_id: Optional[str]


def _require(ok: bool, message: str) -> None:
    if not ok:
        raise ConstraintViolation(message)


def _unit(v: int, name: str) -> None:
    _require(v in (1, -1), f"{name} must be +1 or -1, got {v}")


def _kist1(J: int, h: int, k: int, h2: int, k2: int) -> PSFEvaluation:
    _require(J > 0, "J > 0")
    _require(2 * h - k > 1, "2h - k > 1")
    _require(k2 != 0, "k' != 0")
    _require(h2 * k - h * k2 == 1, "h'k - hk' = 1")
    third = abs(2 * h2 + (2 * J + 1) * k2)
    _require(third > 1, "|2h' + (2J+1)k'| > 1")
    gamma = -(J + 1) + (2 * h + J * k) * (2 * h2 + J * k2)
    return PSFEvaluation(gamma, (J + 1, 2 * h - k, third))


def kist4_classes(J1: int, J2: int, eps: int, n: int, pt: int) -> tuple[CurveClass, CurveClass]:
    """The knot class ``[c]`` and the fibre class ``phi`` of a KIST IV knot."""
    h, h2 = pt, n * pt + eps
    k, k2 = pt + eps, n * (pt + eps) + eps
    l, l2 = k - h, k2 - h2
    c = CurveClass(J1 * J2 + J2 + 1, (J2 + 1) * h + J1 * J2 * k, -1, (J2 + 1) * h2 + J1 * J2 * k2)
    phi = CurveClass(J1, J1 * k - eps * pt * l + h, -eps * pt, J1 * k2 - eps * pt * l2 + h2)
    return c, phi


def _kist4(J1: int, J2: int, eps: int, n: int, pt: int) -> PSFEvaluation:
    _require(abs(J1) > 1, "|J_1| > 1")
    _require(abs(J2 + 1) > 1, "|J_2 + 1| > 1")
    _unit(eps, "eps")
    _require(pt + eps > 1, "p~ + eps > 1")
    c, _ = kist4_classes(J1, J2, eps, n, pt)
    gamma = c.a * c.x + c.b * c.y
    inner = (J2 + 1) * (n * pt + eps) + J1 * J2 * (n * (pt + eps) + eps)
    third = abs(eps * pt * inner - (J1 * (n * (pt + eps) + eps) + eps))
    return PSFEvaluation(gamma, (abs(J1), abs(J2 + 1), third), c)


def _tkm_hk(n: int, eps: int, pt: int) -> tuple[int, int, int, int]:
    return n * pt + eps, eps * pt, n * (pt + 1) + eps, eps * (pt + 1)


def _tkm2(J1: int, J2: int, eps: int, n: int, pt: int) -> PSFEvaluation:
    _require(abs(J2) > 1, "|J_2| > 1")
    _unit(eps, "eps")
    _require(abs(pt + 1) > 1, "|p~ + 1| > 1")
    _require(abs(n * (pt + 1) + eps) > n > 0, "|n(p~+1) + eps| > n > 0")
    h, h2, k, k2 = _tkm_hk(n, eps, pt)
    third = abs((J1 * J2 + J1 - 1) * pt + J1)
    _require(third > 1, "|(J_1J_2 + J_1 - 1)p~ + J_1| > 1")
    w = J1 * J2 + J1
    gamma = J2 * (1 - J1 * J2 - J1) + (w * k - h) * (w * k2 - h2)
    return PSFEvaluation(gamma, (abs(J1 * k - h), abs(J2), third))


def _tkm5(J1: int, J2: int, delta: int, eps: int, n: int, pt: int) -> PSFEvaluation:
    _require(abs(J1) > 1, "|J_1| > 1")
    _require(J2 != 0, "J_2 != 0")
    _unit(delta, "delta")
    _unit(eps, "eps")
    _require(pt > 1, "p~ > 1")
    _require(n >= 0, "n >= 0")
    _require(n > 0 or eps == 1, "eps = 1 when n = 0")
    _require(abs(J1 * (n * pt + eps) + n) > 1, "|J_1(n p~ + eps) + n| > 1")
    h, h2, k, k2 = _tkm_hk(n, eps, pt)
    fibers = (abs(delta * J1 + 1), abs((J1 * J2 + 1) * h + J2 * n), abs((J2 - delta) * pt - delta * J2))
    _require(all(f > 1 for f in fibers), "all fibre indices > 1")
    left = -delta * J1 * h + J2 * (J1 - 1) * h + J2 * k
    right = -delta * J1 * h2 + J2 * (J1 - 1) * h2 + J2 * k2
    gamma = (delta * J1 + 1) * (J2 - delta) + left * right
    return PSFEvaluation(gamma, fibers)


def _opt_common(m: int, n: int) -> None:
    _require(m >= 0, "m >= 0")
    _require(gcd(m, n) == 1, "gcd(m, n) = 1")
    _require(m > 1, "m > 1")


def _opt1(m: int, n: int, s: int) -> PSFEvaluation:
    _opt_common(m, n)
    _require(abs(s) > 1, "|s| > 1")
    _require(abs(m + n) > 1, "|m + n| > 1")
    return PSFEvaluation(m * m + m * n + s * n * n, (m, abs(s), abs(m + n)))


def _opt2(m: int, n: int, j: int, eps: int, pt: int) -> PSFEvaluation:
    _opt_common(m, n)
    _unit(eps, "eps")
    _require(pt > 0, "p~ > 0")
    _require(j >= 0, "j >= 0")
    s = j * (2 * pt + 1) + 2 * eps
    _require(s > 1, "s > 1")
    u = -j * pt - eps
    third = abs((pt + 1) * m + (2 * pt + 1) * n)
    _require(third > 1, "|(p~+1)m + (2p~+1)n| > 1")
    gamma = m * (m + 2 * n) - (-m * u + n * s) * eps * (m * pt + n * (2 * pt + 1))
    return PSFEvaluation(gamma, (m, s, third))


def _opt3(m: int, n: int, j: int, eps: int, pt: int) -> PSFEvaluation:
    _opt_common(m, n)
    _unit(eps, "eps")
    _require(pt > 0, "p~ > 0")
    _require(j >= 0, "j >= 0")
    s = j * (2 * pt + 3) + 2 * eps
    _require(s > 1, "s > 1")
    u = -j * (pt + 1) - eps
    t = s + u
    s2, t2, u2 = -eps * (2 * pt + 3), -eps * (pt + 2), eps * (pt + 1)
    third = abs(2 * m + (2 * pt + 3) * n)
    _require(third > 1, "|2m + (2p~+3)n| > 1")
    gamma = -m * n + (m * (t + u) + n * s) * (m * (t2 + u2) + n * s2)
    return PSFEvaluation(gamma, (m, abs(s), third))


def _opt4(m: int, n: int) -> PSFEvaluation:
    _opt_common(m, n)
    third = abs(3 * m + 11 * n)
    _require(third > 1, "|3m + 11n| > 1")
    return PSFEvaluation(m * m + 9 * m * n + 22 * n * n, (2, m, third))


def _opt5(m: int, n: int) -> PSFEvaluation:
    _opt_common(m, n)
    third = abs(4 * m + 11 * n)
    _require(third > 1, "|4m + 11n| > 1")
    return PSFEvaluation(2 * m * m + 13 * m * n + 22 * n * n, (2, m, third))


_EVALUATORS: dict[str, Callable[..., PSFEvaluation]] = {
    "KIST-I": _kist1,
    "KIST-IV": _kist4,
    "TKM-II": _tkm2,
    "TKM-V": _tkm5,
    "OPT-I": _opt1,
    "OPT-II": _opt2,
    "OPT-III": _opt3,
    "OPT-IV": _opt4,
    "OPT-V": _opt5,
}


def psf_evaluate(params: PSFParams) -> PSFEvaluation:
    """Surface slope gamma and the three fibre indices; raises ConstraintViolation on a failed proviso."""
    return _EVALUATORS[params.family](*params.params)


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def triple_pairing(iota: CurveClass, rho: CurveClass, phi: CurveClass) -> int:
    """``(iota.rho)(rho.phi)(phi.iota)``."""
    return iota.dot(rho) * rho.dot(phi) * phi.dot(iota)


def euler_sign(iota: CurveClass, rho: CurveClass, phi: CurveClass) -> int:
    """Sign of the triple pairing; the orbifold Euler number of the filling along rho has the opposite sign."""
    value = triple_pairing(iota, rho, phi)
    if value == 0:
        raise DegenerateClass(f"triple pairing vanishes for iota={iota}, rho={rho}, phi={phi}")
    return _sign(value)


def iota_rho(c: CurveClass) -> tuple[CurveClass, CurveClass]:
    """The rationally null-homologous class iota and the disk class rho for a knot class ``c``."""
    a, b, x, y = c.coords()
    iota = CurveClass(-a * a * x, -a * b * x, -x * (a * x + b * y), 0)
    rho = CurveClass(y, -x, 0, 0)
    return iota, rho


def kist4_sign_of_q(params: PSFParams) -> int:
    """Sign of q for a KIST IV prism surgery, computed from the triple pairing.

    The Euler number is negative (so q < 0) exactly when the slope and
    the triple pairing have the same sign.
    """
    if params.family != "KIST-IV":
        raise ValueError("only KIST IV has a printed fibre class")
    ev = psf_evaluate(params)
    c, phi = kist4_classes(*params.params)
    iota, rho = iota_rho(c)
    if ev.gamma == 0:
        raise DegenerateClass("surface slope is zero")
    return -1 if _sign(ev.gamma) == euler_sign(iota, rho, phi) else 1


# ---------------------------------------------------------------------------
# Rows of the table of prism-manifold P/SF knots.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BKRow:
    """One row: fixed parameters, a condition deciding the sign, and closed forms for (p, |q|, r)."""

    row_id: str
    family: str
    fixed_text: str
    free_text: str
    condition_text: str
    build: Callable[..., PSFParams]
    match: Callable[[PSFParams], Optional[tuple[int, ...]]]
    sign: Callable[..., tuple[int, str]]
    p: Callable[..., int]
    abs_q: Callable[..., int]
    r: Callable[..., Optional[int]]
    samples: tuple[tuple[int, ...], ...]

    def evaluate(self, free: tuple[int, ...]) -> tuple[PrismParams, str, Optional[int]]:
        """The row's closed-form prediction at the free parameters: (P(p, q), type, r)."""
        sgn, tag = self.sign(*free)
        return PrismParams(self.p(*free), sgn * self.abs_q(*free)), tag, self.r(*free)


def _match_fixed(family: str, fixed: dict[int, int], free: tuple[int, ...]) -> Callable[[PSFParams], Optional[tuple[int, ...]]]:
    def match(pp: PSFParams) -> Optional[tuple[int, ...]]:
        if pp.family != family or any(pp.params[i] != v for i, v in fixed.items()):
            return None
        return tuple(pp.params[i] for i in free)

    return match


def _kist1_match(pp: PSFParams) -> Optional[tuple[int, ...]]:
    if pp.family != "KIST-I":
        return None
    J, h, k, h2, k2 = pp.params
    if J != 1 or (h - 1) % 2:
        return None
    a = (h - 1) // 2
    if a in (0, -1) or k != 4 * a or (h2 - a) % (2 * a + 1):
        return None
    b = (h2 - a) // (2 * a + 1)
    if k2 != 4 * a * b + 2 * a - 1:
        return None
    return (a, b)


def _sporadic(row_id: str, family: str, params: tuple[int, ...], p: int, q: int) -> BKRow:
    free_idx: tuple[int, ...] = ()
    fixed = dict(enumerate(params))
    return BKRow(
        row_id, family, str(params).replace(" ", ""), "", "",
        lambda: PSFParams(family, params),
        _match_fixed(family, fixed, free_idx),
        lambda: (_sign(q), "Spor"),
        lambda: p, lambda: abs(q), lambda: None,
        ((),),
    )


def _rows() -> list[BKRow]:
    rows = [
        BKRow(
            "kist1", "KIST-I", "(1,2a+1,4a,2ab+a+b,4ab+2a-1), a!=0,-1", "a,b",
            "a(2b+1)>0: P-,2; a(2b+1)<0: P+,2",
            lambda a, b: PSFParams("KIST-I", (1, 2 * a + 1, 4 * a, 2 * a * b + a + b, 4 * a * b + 2 * a - 1)),
            _kist1_match,
            lambda a, b: (-1, "2") if a * (2 * b + 1) > 0 else (1, "2"),
            lambda a, b: abs(16 * a * b + 8 * a + 2 * b - 3),
            lambda a, b: abs(16 * a * a * b + 8 * a * a + 8 * a * b + b - 1),
            lambda a, b: -4 * a - 1,
            tuple((a, b) for a in (-3, -2, 1, 2) for b in (-2, -1, 0, 1)),
        ),
        BKRow(
            "kist4_a", "KIST-IV", "(J1,J2,eps)=(2,1,1)", "n,p~", "n>=0: P-,5; n<0: P+,5",
            lambda n, pt: PSFParams("KIST-IV", (2, 1, 1, n, pt)),
            _match_fixed("KIST-IV", {0: 2, 1: 1, 2: 1}, (3, 4)),
            lambda n, pt: (-1, "5") if n >= 0 else (1, "5"),
            lambda n, pt: abs(n * (4 * pt * pt - 2) + 4 * pt - 3),
            lambda n, pt: abs(n * (2 * pt + 1) ** 2 + 4 * pt + 1),
            lambda n, pt: 2 * pt + 1,
            tuple((n, pt) for n in range(-3, 4) for pt in (2, 3, 4)),
        ),
        BKRow(
            "kist4_b", "KIST-IV", "(J1,J2,eps)=(2,1,-1)", "n,p~", "n>0: P-,5; n<=0: P+,5",
            lambda n, pt: PSFParams("KIST-IV", (2, 1, -1, n, pt)),
            _match_fixed("KIST-IV", {0: 2, 1: 1, 2: -1}, (3, 4)),
            lambda n, pt: (-1, "5") if n > 0 else (1, "5"),
            lambda n, pt: abs(-n * (4 * pt * pt - 2) + 4 * pt + 3),
            lambda n, pt: abs(n * (2 * pt - 1) ** 2 - 4 * pt + 1),
            lambda n, pt: 1 - 2 * pt,
            tuple((n, pt) for n in range(-3, 4) for pt in (3, 4)),
        ),
        BKRow(
            "kist4_c", "KIST-IV", "(J1,J2,eps)=(2,-3,1)", "n,p~", "n>=0: P-,4; n<0: P+,4",
            lambda n, pt: PSFParams("KIST-IV", (2, -3, 1, n, pt)),
            _match_fixed("KIST-IV", {0: 2, 1: -3, 2: 1}, (3, 4)),
            lambda n, pt: (-1, "4") if n >= 0 else (1, "4"),
            lambda n, pt: abs(8 * n * pt * pt + 8 * n * pt + 8 * pt + 2 * n + 3),
            lambda n, pt: abs(n * (4 * pt + 3) ** 2 + 16 * pt + 14),
            lambda n, pt: 2 * pt + 1,
            tuple((n, pt) for n in range(-3, 4) for pt in (1, 2, 3)),
        ),
        BKRow(
            "kist4_d", "KIST-IV", "(J1,J2,eps)=(2,-3,-1)", "n,p~", "n>0: P-,4; n<=0: P+,4",
            lambda n, pt: PSFParams("KIST-IV", (2, -3, -1, n, pt)),
            _match_fixed("KIST-IV", {0: 2, 1: -3, 2: -1}, (3, 4)),
            lambda n, pt: (-1, "4") if n > 0 else (1, "4"),
            lambda n, pt: abs(8 * n * pt * pt - 8 * n * pt - 8 * pt + 2 * n + 3),
            lambda n, pt: abs(n * (4 * pt - 3) ** 2 - 16 * pt + 14),
            lambda n, pt: 1 - 2 * pt,
            tuple((n, pt) for n in range(-3, 4) for pt in (3, 4)),
        ),
        BKRow(
            "tkm2_a", "TKM-II", "(J1,J2,eps,n)=(1,2,1,2)", "p~", "p~>0: P-,3A; p~<-2: P+,3A",
            lambda pt: PSFParams("TKM-II", (1, 2, 1, 2, pt)),
            _match_fixed("TKM-II", {0: 1, 1: 2, 2: 1, 3: 2}, (4,)),
            lambda pt: (-1, "3A") if pt > 0 else (1, "3A"),
            lambda pt: abs(2 * pt + 1),
            lambda pt: abs((4 * pt * pt + 14 * pt + 10) // 2),
            lambda pt: 1,
            tuple((pt,) for pt in (1, 2, 3, 4, 5, -3, -4, -5, -6, -7)),
        ),
        BKRow(
            "tkm2_b", "TKM-II", "(J1,J2,eps,n)=(1,2,-1,2)", "p~", "p~>0: P+,1A; p~<-2: P-,1A",
            lambda pt: PSFParams("TKM-II", (1, 2, -1, 2, pt)),
            _match_fixed("TKM-II", {0: 1, 1: 2, 2: -1, 3: 2}, (4,)),
            lambda pt: (1, "1A") if pt > 0 else (-1, "1A"),
            lambda pt: abs(2 * pt + 1),
            lambda pt: abs(2 * pt * pt + 5 * pt + 4),
            lambda pt: None,
            tuple((pt,) for pt in (1, 2, 3, 4, 5, -4, -5, -6, -7, -8)),
        ),
        _sporadic("tkm2_s1", "TKM-II", (2, 2, -1, 1, -3), 13, 34),
        _sporadic("tkm2_s2", "TKM-II", (2, -2, -1, 1, -3), 11, 19),
        _sporadic("tkm2_s3", "TKM-II", (2, 2, 1, 1, -5), 23, -64),
        _sporadic("tkm2_s4", "TKM-II", (2, -2, 1, 1, -5), 17, -31),
        _sporadic("tkm2_s5", "TKM-II", (2, 2, 1, 3, -3), 13, -47),
        _sporadic("tkm2_s6", "TKM-II", (2, -2, 1, 3, -3), 11, -30),
        _sporadic("tkm5_s1", "TKM-V", (-3, 4, 1, 1, 0, 2), 11, 30),
        BKRow(
            "opt2", "OPT-II", "(m,j,eps)=(2,0,1), n odd", "n,p~", "n>0: P+,3A; n<-2: P-,3A",
            lambda n, pt: PSFParams("OPT-II", (2, n, 0, 1, pt)),
            _match_fixed("OPT-II", {0: 2, 2: 0, 3: 1}, (1, 4)),
            lambda n, pt: (1, "3A") if n > 0 else (-1, "3A"),
            lambda n, pt: abs(2 * (pt + 1) + n * (2 * pt + 1)),
            lambda n, pt: abs(pt * (n + 1) ** 2 + (n + 1) * (n - 2) // 2),
            lambda n, pt: 2 * pt + 1,
            tuple((n, pt) for n in (1, 3, 5, -5, -7, -9) for pt in (1, 2, 3)),
        ),
        BKRow(
            "opt3", "OPT-III", "(m,j,eps)=(2,0,1), n odd", "n,p~", "n>0: P+,3B; n<-2: P-,3B",
            lambda n, pt: PSFParams("OPT-III", (2, n, 0, 1, pt)),
            _match_fixed("OPT-III", {0: 2, 2: 0, 3: 1}, (1, 4)),
            lambda n, pt: (1, "3B") if n > 0 else (-1, "3B"),
            lambda n, pt: abs(4 + (2 * pt + 3) * n),
            lambda n, pt: abs((n * n * (2 * pt + 3) + 3 * n) // 2),
            lambda n, pt: 2 * pt + 3,
            tuple((n, pt) for n in (1, 3, 5, -3, -5, -7) for pt in (1, 2, 3)),
        ),
        BKRow(
            "opt4", "OPT-IV", "m=2, n odd", "n", "n>1: P-,1B; n<0: P+,1B",
            lambda n: PSFParams("OPT-IV", (2, n)),
            _match_fixed("OPT-IV", {0: 2}, (1,)),
            lambda n: (-1, "1B") if n > 1 else (1, "1B"),
            lambda n: abs(11 * n + 6),
            lambda n: abs((11 * n * n + 9 * n + 2) // 2),
            lambda n: None,
            tuple((n,) for n in (3, 5, 7, 9, 11, -1, -3, -5, -7, -9)),
        ),
        BKRow(
            "opt5", "OPT-V", "m=2, n odd", "n", "n>1: P-,1B; n<0: P+,1B",
            lambda n: PSFParams("OPT-V", (2, n)),
            _match_fixed("OPT-V", {0: 2}, (1,)),
            lambda n: (-1, "1B") if n > 1 else (1, "1B"),
            lambda n: abs(11 * n + 8),
            lambda n: abs(2 + (13 * n + 11 * n * n) // 2),
            lambda n: None,
            tuple((n,) for n in (3, 5, 7, 9, 11, -1, -3, -5, -7, -9)),
        ),
    ]
    return rows


BK_ROWS: tuple[BKRow, ...] = tuple(_rows())
_ROW_BY_ID = {row.row_id: row for row in BK_ROWS}


def bk_row(row_id: str) -> BKRow:
    return _ROW_BY_ID[row_id]


def find_row(params: PSFParams) -> Optional[tuple[BKRow, tuple[int, ...]]]:
    """The table row containing these parameters together with the free values, if any."""
    for row in BK_ROWS:
        free = row.match(params)
        if free is not None:
            return row, free
    return None


def _prism_shape(fibers: tuple[int, int, int]) -> int:
    ordered = sorted(fibers)
    if ordered[0] != 2 or ordered[1] != 2 or ordered[2] % 2 == 0 or ordered[2] <= 1:
        raise NotPrism(f"fibre indices {fibers} are not (2, 2, odd p > 1)")
    return ordered[2]


def psf_result(params: PSFParams) -> Optional[PSFResult]:
    """Full prism-surgery report, or None when no table row (and no computation) fixes the sign of q."""
    ev = psf_evaluate(params)
    p = _prism_shape(ev.fibers)
    if ev.gamma % 4:
        raise NotPrism(f"surface slope {ev.gamma} is not divisible by 4")
    abs_q = abs(ev.gamma) // 4
    located = find_row(params)
    row_sign: Optional[int] = None
    if located is not None:
        row, free = located
        row_sign = row.sign(*free)[0]
    if params.family == "KIST-IV" and params.params[:2] in ((2, 1), (2, -3)):
        sign = kist4_sign_of_q(params)
        if row_sign is not None and sign != row_sign:
            raise InvariantError(f"computed sign {sign} disagrees with the table for {params}")
        source = "computed"
    elif row_sign is not None:
        sign, source = row_sign, "table"
    else:
        return None
    return PSFResult(
        PrismParams(p, sign * abs_q), ev.gamma, ev.fibers, source, located[0].row_id if located else None
    )


def psf_prism(params: PSFParams) -> Optional[PrismParams]:
    """The prism manifold P(p, q) with signed q produced by surface-slope surgery, or None if the sign is unknown."""
    res = psf_result(params)
    return None if res is None else res.prism
