"""Fraction-free elimination: exactness, rank, minors."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkmd.exact_linalg import (
    LinearSystemInconsistent,
    LinearSystemUnderdetermined,
    determinant,
    is_negative_definite,
    leading_principal_minors,
    matrix_rank,
    solve_unique,
)

A2 = [[Fraction(-2), Fraction(1)], [Fraction(1), Fraction(-2)]]


def test_solve_a2():
    assert solve_unique(A2, [Fraction(0), Fraction(0)]) == [Fraction(0), Fraction(0)]
    assert solve_unique(A2, [Fraction(1), Fraction(1)]) == [Fraction(-1), Fraction(-1)]


def test_underdetermined_reports_nullspace():
    with pytest.raises(LinearSystemUnderdetermined) as info:
        solve_unique([[Fraction(0), Fraction(0)]], [Fraction(0)])
    assert info.value.nullspace_dim == 2
    assert info.value.rank == 0


def test_inconsistent():
    with pytest.raises(LinearSystemInconsistent):
        solve_unique(
            [[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]],
            [Fraction(1), Fraction(3)],
        )


def test_rank_duplicate_rows_unchanged():
    m = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]
    assert matrix_rank(m) == 2
    assert matrix_rank(m + [m[0], m[1], m[0]]) == 2


def test_minors_a2():
    assert leading_principal_minors(A2) == [Fraction(-2), Fraction(3)]
    assert is_negative_definite(A2)


def test_not_negative_definite():
    assert not is_negative_definite([[Fraction(1)]])
    assert not is_negative_definite(
        [[Fraction(-1), Fraction(2)], [Fraction(2), Fraction(-1)]]
    )


def test_determinant_singular():
    assert determinant([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]) == 0


fracs = st.fractions(min_value=-10, max_value=10)


@given(
    diag=st.lists(
        st.fractions(min_value=Fraction(1, 4), max_value=6), min_size=1, max_size=5
    ),
    data=st.data(),
)
@settings(max_examples=80, deadline=None)
def test_solve_recovers_known_solution(diag, data):
    # build a full-rank matrix as (unit lower triangular) * diag * (unit upper)
    n = len(diag)
    low = [[Fraction(0)] * n for _ in range(n)]
    up = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        low[i][i] = up[i][i] = Fraction(1)
        for j in range(i):
            low[i][j] = data.draw(fracs)
            up[j][i] = data.draw(fracs)
    m = [
        [
            sum(low[i][k] * diag[k] * up[k][j] for k in range(n))
            for j in range(n)
        ]
        for i in range(n)
    ]
    x = [data.draw(fracs) for _ in range(n)]
    rhs = [sum(m[i][j] * x[j] for j in range(n)) for i in range(n)]
    assert solve_unique(m, rhs) == x
    assert matrix_rank(m) == n


@given(data=st.data(), n=st.integers(1, 4))
@settings(max_examples=60, deadline=None)
def test_rank_of_outer_products_bounded(data, n):
    # a sum of r rank-one matrices has rank at most r
    r = data.draw(st.integers(0, n))
    m = [[Fraction(0)] * n for _ in range(n)]
    for _ in range(r):
        u = [data.draw(fracs) for _ in range(n)]
        v = [data.draw(fracs) for _ in range(n)]
        for i in range(n):
            for j in range(n):
                m[i][j] += u[i] * v[j]
    assert matrix_rank(m) <= r
