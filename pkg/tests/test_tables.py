import csv
import io
from pathlib import Path

import pytest

from prism_surgery.tables import TABLE_NAMES, generate, write_tables

FIXTURES = Path(__file__).resolve().parents[1] / "tables"


@pytest.mark.parametrize("name", TABLE_NAMES)
def test_regenerates_fixture_byte_for_byte(name):
    assert generate(name) == (FIXTURES / f"{name}.csv").read_text(encoding="utf-8")


def rows(name):
    return list(csv.DictReader(io.StringIO(generate(name))))


def test_overlap_rows_match_transcription():
    got = {(int(r["p"]), int(r["q"]), r["type"], r["changemaker"], r["psf_family"], r["psf_params"]) for r in rows("overlap")}
    expected = {
        (3, -14, "3A", "(1,1,2,5,5)", "TKM-II", "(1,2,1,2,1)"),
        (3, -14, "5", "(1,1,3,3,6)", "KIST-IV", "(2,1,1,1,1)"),
        (11, -18, "2", "(1,1,2,4,5,5)", "KIST-I", "(1,-3,-8,1,3)"),
        (11, -18, "3B", "(1,1,3,3,4,6)", "OPT-III", "(2,-3,0,1,1)"),
        (11, -30, "Spor", "(1,1,2,4,7,7)", "TKM-II", "(2,-2,1,3,-3)"),
    }
    assert expected <= got
    for s in (1, 2, 3):
        p, q = 8 * s + 3, -(16 * s + 14)
        eights = ",8" * s
        assert (p, q, "3A", f"(1,1,2,5,5{eights})", "OPT-II", f"(2,-5,0,1,{s})") in got
        assert (p, q, "4", f"(1,1,3,3,6{eights})", "KIST-IV", f"(2,-3,1,0,{s})") in got


def test_summary_has_every_family():
    summary = rows("summary")
    assert len(summary) == 20
    assert {r["sample_manifold"] for r in summary if r["type"] == "Spor"} == {
        "P(11,-30)", "P(17,-31)", "P(13,-47)", "P(23,-64)"}


def test_bk_table_sign_sources():
    table = rows("bk_table3")
    assert {r["sign_source"] for r in table if r["family"] == "KIST-IV"} == {"computed"}
    assert {r["sign_source"] for r in table if r["family"] != "KIST-IV"} == {"table"}


def test_family_tables_list_members():
    minus = {r["type"]: r for r in rows("p_minus")}
    assert "P(11,-30)" in minus["Spor"]["members_p_le_45"]
    assert "P(3,-2)[r=-3]" in minus["5"]["members_p_le_45"]
    plus = {r["type"]: r for r in rows("p_plus")}
    assert plus["4"]["members_p_le_45"]


def test_write_tables(tmp_path):
    paths = write_tables(tmp_path, ["overlap"])
    assert [p.name for p in paths] == ["overlap.csv"]
    assert paths[0].read_text() == (FIXTURES / "overlap.csv").read_text()


def test_unknown_table():
    with pytest.raises(KeyError):
        generate("nope")
