from fractions import Fraction
from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prism_surgery.core import (
    constrained_vectors,
    det,
    dot,
    enumerate_orthogonal_short,
    gram,
    leading_minors_positive,
    norm,
    solve_in_basis,
    solve_rational,
)
from prism_surgery.changemaker import standard_basis
from prism_surgery.dtype import dtype_gram


def leibniz_det(m):
    """Independent determinant oracle: the permutation expansion."""
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    return total


def test_det_examples():
    assert det([[2]]) == 2
    assert det(dtype_gram((2, 3))) == 8
    assert det(dtype_gram((4, 4, 3))) == 120
    assert det([]) == 1


def test_det_needs_row_swap():
    assert det([[0, 1], [1, 0]]) == -1
    assert det([[0, 0], [0, 1]]) == 0


@given(st.integers(1, 5).flatmap(lambda n: st.lists(
    st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_permutation_expansion(m):
    assert det(m) == leibniz_det(m)


def test_det_rejects_non_square():
    with pytest.raises(ValueError):
        det([[1, 2]])


def test_dot_and_norm():
    assert dot((1, 2, 3), (4, -5, 6)) == 12
    assert norm((1, -2, 2)) == 9
    with pytest.raises(ValueError):
        dot((1,), (1, 2))


def test_gram_and_positivity():
    g = gram([(1, -1, 0), (0, 1, -1)])
    assert g == ((2, -1), (-1, 2))
    assert leading_minors_positive(g)
    assert not leading_minors_positive(((1, 2), (2, 1)))


def brute_orthogonal(sigma, bound):
    r = int(bound ** 0.5)
    out = []
    for w in product(range(-r, r + 1), repeat=len(sigma)):
        if any(w) and norm(w) <= bound and dot(w, sigma) == 0:
            out.append(w)
    return sorted(out)


def test_enumerate_orthogonal_short_examples():
    assert enumerate_orthogonal_short((1, 1), 2) == [(-1, 1), (1, -1)]
    vecs = enumerate_orthogonal_short((1, 1, 1, 1, 2), 2)
    expected = set()
    for i in range(4):
        for j in range(i + 1, 4):
            e = [0] * 5
            e[i], e[j] = 1, -1
            expected.add(tuple(e))
            expected.add(tuple(-c for c in e))
    assert set(vecs) == expected and len(vecs) == 12


def test_enumerate_orthogonal_short_norm_five_example():
    # (2, -1) has norm 5, so it first appears at bound 5.
    assert enumerate_orthogonal_short((1, 2), 4) == []
    assert enumerate_orthogonal_short((1, 2), 5) == [(-2, 1), (2, -1)]


@settings(max_examples=60)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=4), st.integers(0, 6))
def test_enumerate_orthogonal_short_matches_brute_force(sigma, bound):
    assert enumerate_orthogonal_short(sigma, bound) == brute_orthogonal(sigma, bound)


@settings(max_examples=60)
@given(
    st.integers(1, 4).flatmap(lambda d: st.tuples(
        st.just(d),
        st.lists(st.integers(-2, 2), min_size=d, max_size=d),
        st.integers(-2, 2),
        st.integers(0, 6),
        st.integers(0, 3),
    ))
)
def test_constrained_vectors_matches_brute_force(args):
    dim, u, t, max_norm, min_norm = args
    got = constrained_vectors(dim, max_norm, min_norm=min_norm, constraints=[(u, t)])
    r = int(max_norm ** 0.5)
    expected = [
        w for w in product(range(-r, r + 1), repeat=dim)
        if min_norm <= norm(w) <= max_norm and dot(u, w) == t
    ]
    assert got == sorted(expected)


def test_constrained_vectors_symmetry_link():
    got = constrained_vectors(2, 2, min_norm=2, constraints=[((1, 1), 0)], at_least={1: 0})
    assert got == [(-1, 1)]


def test_solve_in_basis_examples():
    assert solve_in_basis([(1, 0), (0, 1)], (3, -2)) == (3, -2)
    assert solve_in_basis([(2, 0), (0, 1)], (1, 0)) is None
    assert solve_rational([(2, 0), (0, 1)], (1, 0)) == (Fraction(1, 2), Fraction(0))
    basis = standard_basis((1, 1, 1, 1, 2)).vectors
    assert solve_in_basis(basis, (1, -1, 0, 0, 0)) == (1, 0, 0, 0)


def test_solve_in_basis_outside_span():
    assert solve_in_basis([(1, 0, 0)], (0, 1, 0)) is None


@given(st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_solve_in_basis_recovers_coefficients(coeffs):
    basis = standard_basis((1, 1, 1, 1, 2)).vectors
    target = tuple(sum(c * v[i] for c, v in zip(coeffs, basis)) for i in range(5))
    assert solve_in_basis(basis, target) == tuple(coeffs)
