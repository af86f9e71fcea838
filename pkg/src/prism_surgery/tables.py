"""Golden CSV tables: family lists for q < 0 and q > 0, overlaps, changemaker families and P/SF rows.

Text columns are transcriptions kept as data here; every numeric column is
recomputed from the library, and each overlap row is checked three ways
(changemaker embedding, family closed form, P/SF surgery) before it is
written.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Callable, Optional

from .bergekang import BK_ROWS, PSFParams, psf_result
from .dtype import PrismParams
from .embed import find_vertex_basis
from .errors import InvariantError
from .families import (
    CMFamilyRow,
    FAMILIES,
    enumerate_members,
    family_changemaker,
    family_norm_pattern,
    family_predicted_pq,
    family_type,
    membership,
)

#: Largest p used for the member examples of each family.
MEMBER_PMAX = 45
#: Number of member examples listed per family.
MEMBER_COUNT = 6

PNEG_TEXT = (
    ("1A", "P(p, -(p^2-3p+4)/2)", "p>=7"),
    ("1B", "P(p, -(p^2-3p+4)/22)", "p=17 or 19 mod 22; p>22"),
    ("2", "P(p, -(r^2p+1)/|4r+2|)", "r=-1 mod 4; r!=-1,3; p=2r-3 mod 4r+2"),
    ("3A", "P(p, -(p+1)(p+4)/(2r))", "r>=1; p=-1 mod 2r; p>=4r-1"),
    ("3B", "P(p, -(p+1)(p+4)/(2r))", "r>=5; p=r-4 mod 2r; p>=3r-4"),
    ("4", "P(p, -((2r+1)^2p+1)/(2r^2))", "r!=-3,-1,1; p=4r-1 mod 2r^2; p>=4r-1"),
    ("5", "P(p, -(r^2p+1)/(r^2-2r-1))", "r!=1; p=2r-5 mod r^2-2r-1; p>=2r-5"),
    ("Spor", "P(11,-30) P(17,-31) P(13,-47) P(23,-64)", ""),
)

PPOS_TEXT = (
    ("1A", "P(p, (p^2+3p+4)/2)", ""),
    ("1B", "P(p, (p^2+3p+4)/22)", "p=5 or 3 mod 22"),
    ("2", "P(p, (r^2p-1)/|4r+2|)", "r=-1 mod 4; p=-2r+3 mod 4r+2"),
    ("3A", "P(p, (p-1)(p-4)/(2r))", "p=1 mod 2r"),
    ("3B", "P(p, (p-1)(p-4)/(2r))", "p=r+4 mod 2r"),
    ("4", "P(p, ((2r+1)^2p-1)/(2r^2))", "p=1-4r mod 2r^2 (printed as 4r-1)"),
    ("5", "P(p, (r^2p-1)/(r^2-2r-1))", "r!=1; p=-2r+5 mod r^2-2r-1"),
    ("Spor", "P(11,19) P(11,30) P(13,34)", ""),
)

#: Prism manifolds with several changemakers: (Table 4 row, s, t, P/SF family, P/SF parameters).
OVERLAP_ENTRIES: tuple[tuple[str, int, int, str, tuple[int, ...]], ...] = (
    ("tight_2", 0, 0, "TKM-II", (1, 2, 1, 2, 1)),
    ("f3_2", 0, 1, "KIST-IV", (2, 1, 1, 1, 1)),
    ("gappy_2", 0, 0, "KIST-I", (1, -3, -8, 1, 3)),
    ("f3_3", 1, 0, "OPT-III", (2, -3, 0, 1, 1)),
    ("tight_1", 0, 1, "OPT-II", (2, -5, 0, 1, 1)),
    ("f3_4", 1, 0, "KIST-IV", (2, -3, 1, 0, 1)),
    ("jr_1", 0, 0, "TKM-II", (2, -2, 1, 3, -3)),
    ("tight_1", 0, 2, "OPT-II", (2, -5, 0, 1, 2)),
    ("f3_4", 2, 0, "KIST-IV", (2, -3, 1, 0, 2)),
    ("tight_1", 0, 3, "OPT-II", (2, -5, 0, 1, 3)),
    ("f3_4", 3, 0, "KIST-IV", (2, -3, 1, 0, 3)),
)

TABLE_NAMES = ("p_minus", "p_plus", "overlap", "summary", "bk_table3")


def _fmt_pq(pp: PrismParams) -> str:
    return f"P({pp.p},{pp.q})"


def _fmt_vec(v: tuple[int, ...]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _render(header: list[str], rows: list[list[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _member_text(tag: str, negative: bool) -> str:
    items = enumerate_members(tag, MEMBER_PMAX, negative=negative)[:MEMBER_COUNT]
    parts = []
    for pp, fi in items:
        parts.append(_fmt_pq(pp) if fi.r is None else f"{_fmt_pq(pp)}[r={fi.r}]")
    return " ".join(parts)


def _family_table(text: tuple[tuple[str, str, str], ...], negative: bool) -> str:
    rows: list[list[object]] = [[tag, formula, rng, _member_text(tag, negative)] for tag, formula, rng in text]
    return _render(["type", "manifold", "range", f"members_p_le_{MEMBER_PMAX}"], rows)


def p_minus_table() -> str:
    return _family_table(PNEG_TEXT, True)


def p_plus_table() -> str:
    return _family_table(PPOS_TEXT, False)


def overlap_table() -> str:
    rows: list[list[object]] = []
    for row_id, s, t, fam, params in OVERLAP_ENTRIES:
        row = CMFamilyRow(row_id, s, t)
        sigma = family_changemaker(row)
        emb = find_vertex_basis(sigma)
        predicted = family_predicted_pq(row)
        surgery = psf_result(PSFParams(fam, params))
        if emb is None or emb.pq != predicted or surgery is None or surgery.prism != predicted:
            raise InvariantError(f"overlap entry {row_id} s={s} t={t} is inconsistent")
        ftype = family_type(row)
        if not any(fi.tag == ftype.tag and (ftype.r is None or fi.r == ftype.r) for fi in membership(predicted)):
            raise InvariantError(f"{_fmt_pq(predicted)} is not in family {ftype.label()}")
        rows.append([
            predicted.p,
            predicted.q,
            ftype.tag,
            "" if ftype.r is None else ftype.r,
            _fmt_vec(sigma),
            fam,
            _fmt_vec(params),
        ])
    rows.sort(key=lambda r: (-int(r[1]), int(r[0]), str(r[2])))
    return _render(["p", "q", "type", "r", "changemaker", "psf_family", "psf_params"], rows)


def summary_table() -> str:
    rows: list[list[object]] = []
    for fam in FAMILIES:
        s = fam.s_min if fam.uses_s else 0
        t = fam.t_min if fam.uses_t else 0
        row = CMFamilyRow(fam.row_id, s, t)
        sigma = family_changemaker(row)
        emb = find_vertex_basis(sigma)
        if emb is None or emb.norms != family_norm_pattern(row):
            raise InvariantError(f"family {fam.row_id} does not embed with its norm pattern")
        rows.append([
            fam.row_id,
            fam.group,
            fam.changemaker_text,
            fam.vertex_text,
            fam.p_text,
            fam.q_text,
            fam.tag,
            fam.r_text,
            f"s={s} t={t}",
            _fmt_vec(sigma),
            _fmt_vec(emb.norms),
            _fmt_pq(emb.pq),
        ])
    header = ["row", "group", "changemaker", "vertex_norms", "p", "minus_q", "type", "r",
              "sample", "sample_sigma", "sample_norms", "sample_manifold"]
    return _render(header, rows)


def bk_table() -> str:
    rows: list[list[object]] = []
    for row in BK_ROWS:
        free = row.samples[0]
        res = psf_result(row.build(*free))
        if res is None:
            raise InvariantError(f"row {row.row_id} has no sign")
        rows.append([
            row.row_id,
            row.family,
            row.fixed_text,
            row.free_text,
            row.condition_text,
            _fmt_vec(free),
            _fmt_vec(row.build(*free).params),
            res.gamma,
            _fmt_vec(res.fibers),
            _fmt_pq(res.prism),
            res.sign_source,
        ])
    header = ["row", "family", "fixed", "free", "conditions", "sample_free", "sample_params",
              "gamma", "fibers", "manifold", "sign_source"]
    return _render(header, rows)


GENERATORS: dict[str, Callable[[], str]] = {
    "p_minus": p_minus_table,
    "p_plus": p_plus_table,
    "overlap": overlap_table,
    "summary": summary_table,
    "bk_table3": bk_table,
}


def generate(name: str) -> str:
    try:
        return GENERATORS[name]()
    except KeyError:
        raise KeyError(f"unknown table {name!r}; choose from {', '.join(TABLE_NAMES)}") from None


def write_tables(directory: Path, which: Optional[list[str]] = None) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name in which or list(TABLE_NAMES):
        path = directory / f"{name}.csv"
        path.write_text(generate(name), encoding="utf-8")
        out.append(path)
    return out
