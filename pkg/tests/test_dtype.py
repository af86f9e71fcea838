from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prism_surgery.core import det
from prism_surgery.dtype import (
    STAR,
    STARSTAR,
    DTypeLattice,
    PrismParams,
    discriminant,
    dtype_from_pq,
    is_breakable,
    is_interval,
    is_irreducible,
    pq_from_norms,
    tau,
)
from prism_surgery.errors import DomainError


def test_prism_params_validation():
    with pytest.raises(DomainError):
        PrismParams(9, -6)
    with pytest.raises(DomainError):
        PrismParams(3, 0)
    with pytest.raises(DomainError):
        PrismParams(1, -2)


def test_dtype_from_pq_examples():
    assert dtype_from_pq(PrismParams(3, -2)).norms == (2, 3)
    assert dtype_from_pq(PrismParams(11, -30)).norms == (4, 4, 3)
    assert dtype_from_pq(PrismParams(3, -14)).norms == (6, 3)
    with pytest.raises(DomainError):
        dtype_from_pq(PrismParams(3, 2))


def test_pq_from_norms_examples():
    assert pq_from_norms((2, 3)) == PrismParams(3, -2)
    assert pq_from_norms((4, 4, 3)) == PrismParams(11, -30)
    assert pq_from_norms((3, 2, 3)) == PrismParams(5, -7)


coprime_pairs = st.tuples(st.integers(1, 60), st.integers(1, 200)).map(
    lambda t: (2 * t[0] + 1, -t[1])).filter(lambda pq: gcd(pq[0], -pq[1]) == 1)


@given(coprime_pairs)
def test_norms_round_trip(pq):
    pp = PrismParams(*pq)
    lat = dtype_from_pq(pp)
    assert pq_from_norms(lat.norms) == pp
    assert all(a >= 2 for a in lat.norms)


@given(coprime_pairs)
def test_discriminant_is_four_abs_q(pq):
    lat = dtype_from_pq(PrismParams(*pq))
    assert discriminant(lat) == 4 * -pq[1]


def unit(lat, label):
    return lat.basis_vector(label)


def test_basis_vectors_are_irreducible():
    lat = DTypeLattice((3, 2, 4))
    for label in lat.labels():
        assert is_irreducible(unit(lat, label), lat)


def test_reducible_and_irreducible_examples():
    lat = DTypeLattice((3, 2, 3))
    x0_plus_x2 = tuple(a + b for a, b in zip(unit(lat, 0), unit(lat, 2)))
    assert not is_irreducible(x0_plus_x2, lat)
    lat = DTypeLattice((3, 2))
    v = tuple(sum(unit(lat, lab)[i] for lab in (STAR, STARSTAR, 0, 1)) for i in range(lat.rank))
    assert is_irreducible(v, lat)


def test_breakable_examples():
    lat = DTypeLattice((3, 3))
    x0_plus_x1 = tuple(a + b for a, b in zip(unit(lat, 0), unit(lat, 1)))
    assert is_breakable(x0_plus_x1, lat)
    lat = DTypeLattice((2, 5))
    assert not is_breakable(unit(lat, 1), lat)
    for label in lat.labels():
        v = unit(lat, label)
        if lat.norm(v) == 2:
            assert not is_breakable(v, lat)


def test_brute_force_norm_limit():
    lat = DTypeLattice((50,))
    with pytest.raises(DomainError):
        is_irreducible(unit(lat, 0), lat)


def test_tau_examples():
    lat = DTypeLattice((3, 2))
    assert tau(0, unit(lat, STAR), lat) == unit(lat, STARSTAR)
    assert tau(0, unit(lat, 1), lat) == tuple(-c for c in unit(lat, 1))
    with pytest.raises(DomainError):
        tau(5, unit(lat, 0), lat)


norm_seqs = st.lists(st.integers(2, 6), min_size=1, max_size=4)


@given(norm_seqs, st.data())
def test_tau_is_an_isometric_involution(norms, data):
    lat = DTypeLattice(tuple(norms))
    j = data.draw(st.integers(0, lat.m))
    u = data.draw(st.lists(st.integers(-3, 3), min_size=lat.rank, max_size=lat.rank))
    v = data.draw(st.lists(st.integers(-3, 3), min_size=lat.rank, max_size=lat.rank))
    tu, tv = tau(j, u, lat), tau(j, v, lat)
    assert tau(j, tu, lat) == tuple(u)
    assert lat.pair(tu, tv) == lat.pair(u, v)


def test_is_interval_examples():
    lat = DTypeLattice((3, 2, 2, 2))
    assert is_interval(unit(lat, 0)) == frozenset({0})
    both_stars = tuple(a + b + c for a, b, c in zip(unit(lat, STAR), unit(lat, STARSTAR), unit(lat, 0)))
    assert is_interval(both_stars) is None
    gap = tuple(a + b for a, b in zip(unit(lat, 1), unit(lat, 3)))
    assert is_interval(gap) is None
    run = tuple(a + b + c for a, b, c in zip(unit(lat, STAR), unit(lat, 0), unit(lat, 1)))
    assert is_interval(run) == frozenset({STAR, 0, 1})


def test_gram_determinant_matches_lattice():
    lat = DTypeLattice((4, 4, 3))
    assert det(lat.gram) == discriminant(lat) == 120
