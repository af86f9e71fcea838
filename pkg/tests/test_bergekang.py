import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from prism_surgery.bergekang import (
    BK_ROWS,
    CurveClass,
    PSFParams,
    bk_row,
    euler_sign,
    iota_rho,
    kist4_classes,
    kist4_sign_of_q,
    normalize_tag,
    psf_evaluate,
    psf_prism,
    psf_result,
    triple_pairing,
)
from prism_surgery.dtype import PrismParams
from prism_surgery.errors import ConstraintViolation, DegenerateClass, NotPrism
from prism_surgery.families import membership


def test_normalize_tag_spellings():
    assert normalize_tag("KIST4") == "KIST-IV"
    assert normalize_tag("kist-iv") == "KIST-IV"
    assert normalize_tag("OPT_2") == "OPT-II"
    with pytest.raises(KeyError):
        normalize_tag("FOO")


def test_arity_is_checked():
    with pytest.raises(ConstraintViolation):
        PSFParams("OPT-IV", (2, 3, 5))


def test_evaluate_examples():
    ev = psf_evaluate(PSFParams("KIST-IV", (2, 1, 1, 0, 2)))
    assert ev.gamma == 36 and sorted(ev.fibers) == [2, 2, 5]
    ev = psf_evaluate(PSFParams("OPT-IV", (2, 3)))
    assert ev.gamma == 2 * 2 + 9 * 2 * 3 + 22 * 3 * 3 == 256
    assert sorted(ev.fibers) == [2, 2, 39]


def test_opt_one_proviso():
    with pytest.raises(ConstraintViolation):
        psf_evaluate(PSFParams("OPT-I", (2, -1, 3)))


def test_prism_examples():
    assert psf_prism(PSFParams("KIST-IV", (2, 1, 1, 0, 2))) == PrismParams(5, -9)
    assert psf_prism(PSFParams("TKM-II", (2, -2, 1, 3, -3))) == PrismParams(11, -30)
    assert psf_prism(PSFParams("OPT-IV", (2, 3))) == PrismParams(39, -64)
    assert psf_prism(PSFParams("TKM-V", (-3, 4, 1, 1, 0, 2))) == PrismParams(11, 30)
    assert psf_prism(PSFParams("KIST-I", (1, -3, -8, 1, 3))) == PrismParams(11, -18)
    assert psf_prism(PSFParams("KIST-IV", (2, 1, 1, -1, 2))) == PrismParams(9, 16)


def test_opt_four_lands_in_family_one_b():
    assert [fi.label() for fi in membership(PrismParams(39, -64))] == ["1B"]
    assert (39 * 39 - 3 * 39 + 4) == 22 * 64


def test_sign_sources():
    assert psf_result(PSFParams("KIST-IV", (2, 1, 1, 0, 2))).sign_source == "computed"
    assert psf_result(PSFParams("OPT-IV", (2, 3))).sign_source == "table"


def test_non_prism_fibres():
    with pytest.raises(NotPrism):
        psf_result(PSFParams("KIST-IV", (2, 1, 1, -1, 1)))


def test_unknown_sign_gives_none():
    params = PSFParams("TKM-II", (1, -2, 1, 2, -5))
    assert sorted(psf_evaluate(params).fibers) == [2, 2, 11]
    assert psf_result(params) is None
    assert psf_prism(params) is None


@pytest.mark.parametrize("n", [-2, -1, 0, 1, 2])
def test_kist4_triple_pairing_positive(n):
    c, phi = kist4_classes(2, 1, 1, n, 2)
    iota, rho = iota_rho(c)
    assert triple_pairing(iota, rho, phi) > 0


classes = st.builds(CurveClass, *(st.integers(-6, 6) for _ in range(4)))


@given(classes, classes, classes, st.integers(1, 5), st.integers(0, 2))
def test_euler_sign_invariances(a, b, c, k, which):
    assume(triple_pairing(a, b, c) != 0)
    args = [a, b, c]
    s = euler_sign(*args)
    v = args[which]
    args[which] = CurveClass(k * v.a, k * v.b, k * v.x, k * v.y)
    assert euler_sign(*args) == s
    args[which] = CurveClass(-v.a, -v.b, -v.x, -v.y)
    assert euler_sign(*args) == s


def test_euler_sign_degenerate():
    zero = CurveClass(0, 0, 0, 0)
    with pytest.raises(DegenerateClass):
        euler_sign(zero, CurveClass(1, 0, 0, 0), CurveClass(0, 1, 0, 0))


def test_pairing_is_antisymmetric():
    a, b, x, y = (CurveClass(*row) for row in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))
    assert a.dot(x) == -1 and b.dot(y) == -1
    for u in (a, b, x, y):
        for v in (a, b, x, y):
            assert u.dot(v) == -v.dot(u)


@pytest.mark.parametrize("row", BK_ROWS, ids=lambda r: r.row_id)
def test_rows_match_closed_forms(row):
    for free in row.samples:
        params = row.build(*free)
        res = psf_result(params)
        expected, tag, r = row.evaluate(free)
        assert res is not None
        assert res.prism == expected
        assert abs(res.gamma) == 4 * abs(res.prism.q)
        assert res.row_id == row.row_id
        found = membership(res.prism)
        assert any(fi.tag == tag and (r is None or fi.r == r) for fi in found), (free, found)


@pytest.mark.parametrize("row_id", ["kist4_a", "kist4_b"])
def test_kist4_computed_sign_matches_table(row_id):
    row = bk_row(row_id)
    for n in range(-3, 4):
        for pt in (2, 3, 4):
            params = row.build(n, pt)
            try:
                sign = kist4_sign_of_q(params)
            except (NotPrism, ConstraintViolation, DegenerateClass):
                continue
            assert sign == row.sign(n, pt)[0]


def test_tkm2_boundary_sample():
    """At p~ = -3 the 1A row predicts P(5, -7), but 1A needs p >= 7; the manifold is in family 2."""
    res = psf_result(bk_row("tkm2_b").build(-3))
    assert res.prism == PrismParams(5, -7)
    assert [fi.label() for fi in membership(res.prism)] == ["2(r=-5)"]


def test_opt2_boundary_sample():
    """At n = -3 the 3A row gives p = 4p~ + 1, below the 3A range; the manifold lands in family 5 only."""
    res = psf_result(bk_row("opt2").build(-3, 1))
    assert res.prism == PrismParams(5, -9)
    assert all(fi.tag != "3A" for fi in membership(res.prism))
