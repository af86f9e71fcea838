from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prism_surgery.dtype import PrismParams
from prism_surgery.embed import find_vertex_basis
from prism_surgery.families import (
    FAMILIES,
    CMFamilyRow,
    FamilyInstance,
    enumerate_members,
    family,
    family_changemaker,
    family_norm_pattern,
    family_predicted_pq,
    family_rows,
    family_type,
    membership,
    pneg_membership,
    ppos_membership,
)


def labels(pp):
    return [fi.label() for fi in membership(pp)]


def test_pneg_examples():
    assert "5(r=-1)" in labels(PrismParams(3, -2))
    assert labels(PrismParams(11, -30)) == ["3A(r=3)", "4(r=3)", "Spor"]
    assert pneg_membership(PrismParams(7, -1)) == []
    assert pneg_membership(PrismParams(3, 2)) == []


def test_small_prism_in_family_five_twice():
    """P(3,-2) satisfies the family 5 identity at r = -1 and at r = -3."""
    assert labels(PrismParams(3, -2)) == ["5(r=-3)", "5(r=-1)"]


def test_ppos_examples():
    assert labels(PrismParams(11, 19)) == ["Spor"]
    assert ppos_membership(PrismParams(9, 2)) == []
    assert ppos_membership(PrismParams(3, -2)) == []


def test_ppos_five_nine_is_empty():
    """Hand check of every q > 0 row for P(5, 9)."""
    p, q = 5, 9
    assert 2 * q != p * p + 3 * p + 4
    assert 22 * q != p * p + 3 * p + 4
    assert (p - 1) * (p - 4) == 4  # families 3A and 3B would need 2r * 9 = 4
    for r in range(-41, 42, 2):
        assert abs(4 * r + 2) * q != r * r * p - 1
        assert 2 * r * r * q != (2 * r + 1) ** 2 * p - 1
        if r != 1:
            assert (r * r - 2 * r - 1) * q != r * r * p - 1
    assert ppos_membership(PrismParams(p, q)) == []


def neg_closed_form(tag, r, p):
    """-q from the q < 0 table as an exact rational."""
    if tag == "1A":
        value = Fraction(p * p - 3 * p + 4, 2)
    elif tag == "1B":
        value = Fraction(p * p - 3 * p + 4, 22)
    elif tag == "2":
        value = Fraction(r * r * p + 1, abs(4 * r + 2))
    elif tag in ("3A", "3B"):
        value = Fraction((p + 1) * (p + 4), 2 * r)
    elif tag == "4":
        value = Fraction((2 * r + 1) ** 2 * p + 1, 2 * r * r)
    elif tag == "5":
        value = Fraction(r * r * p + 1, r * r - 2 * r - 1)
    return value


@pytest.mark.parametrize("tag", ["1A", "1B", "2", "3A", "3B", "4", "5"])
def test_enumerated_members_satisfy_closed_form(tag):
    members = enumerate_members(tag, 61)
    assert members
    for pp, fi in members:
        assert fi.tag == tag and fi.p == pp.p
        assert neg_closed_form(tag, fi.r, pp.p) == -pp.q
        assert fi in pneg_membership(pp)


def test_enumerate_members_is_sorted_and_deterministic():
    first = enumerate_members("5", 45)
    assert first == enumerate_members("5", 45)
    keys = [(pp.p, -pp.q, fi.r) for pp, fi in first]
    assert keys == sorted(keys)


def test_family_three_a_with_r_three():
    members = enumerate_members("3A", 60, r=3)
    assert (PrismParams(11, -30), FamilyInstance("3A", 3, 11)) in members
    for pp, _ in members:
        assert (pp.p + 1) * (pp.p + 4) == -6 * pp.q


def test_positive_family_four_uses_corrected_congruence():
    """With p = 1 - 4r mod 2r^2 the q > 0 family 4 is nonempty for |r| >= 3."""
    for r in (-5, -3, 3, 5):
        members = enumerate_members("4", 400, negative=False, r=r)
        assert members, r
        for pp, fi in members:
            assert 2 * r * r * pp.q == (2 * r + 1) ** 2 * pp.p - 1
            assert (pp.p - (1 - 4 * r)) % (2 * r * r) == 0


def test_printed_positive_family_four_congruence_is_empty():
    """The congruence p = 4r - 1 mod 2r^2 never gives an integral q once |r| >= 3."""
    for r in (-7, -5, -3, 3, 5, 7):
        mod = 2 * r * r
        for p in range(4 * r - 1 + mod * 20, 4 * r - 1 + mod * 40, mod):
            assert ((2 * r + 1) ** 2 * p - 1) % mod != 0


@given(st.integers(1, 80), st.integers(1, 300))
def test_membership_labels_are_sorted(p_half, abs_q):
    p = 2 * p_half + 1
    if gcd(p, abs_q) != 1:
        return
    for q in (-abs_q, abs_q):
        found = membership(PrismParams(p, q))
        assert len(set(found)) == len(found)
        for fi in found:
            assert fi.p == p


def test_family_registry():
    assert len(FAMILIES) == 20
    with pytest.raises(KeyError):
        family("nope")
    with pytest.raises(ValueError):
        CMFamilyRow("a0_1", 0, 0)
    with pytest.raises(ValueError):
        CMFamilyRow("jr_1", 1, 0)


def test_family_changemaker_examples():
    assert family_changemaker(CMFamilyRow("a0_1", 1)) == (1, 1, 1, 1, 2)
    assert family_changemaker(CMFamilyRow("tight_2", 0)) == (1, 1, 2, 5, 5)
    assert family_changemaker(CMFamilyRow("jr_2")) == (1, 1, 2, 3, 3, 10)


def test_family_predicted_examples():
    assert family_predicted_pq(CMFamilyRow("a0_1", 1)) == PrismParams(3, -2)
    assert family_predicted_pq(CMFamilyRow("f3_2", 0, 1)) == PrismParams(3, -14)
    assert family_predicted_pq(CMFamilyRow("tight_2", 0)) == PrismParams(3, -14)
    assert family_norm_pattern(CMFamilyRow("tight_2", 0)) == (6, 3)


def test_family_rows_count():
    rows = family_rows(3)
    assert len(rows) == 140
    assert len(set(rows)) == len(rows)


@pytest.mark.parametrize("row", family_rows(1), ids=lambda r: f"{r.row_id}-{r.s}-{r.t}")
def test_small_family_rows_end_to_end(row):
    sigma = family_changemaker(row)
    emb = find_vertex_basis(sigma)
    assert emb is not None
    assert emb.norms == family_norm_pattern(row)
    assert emb.pq == family_predicted_pq(row)
    ftype = family_type(row)
    assert any(fi.tag == ftype.tag and (ftype.r is None or fi.r == ftype.r) for fi in pneg_membership(emb.pq))
