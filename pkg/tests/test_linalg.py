from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gradedlc import linalg


def naive_rank(M, p=0):
    """Textbook dense Gaussian elimination, Fractions or residues mod p."""
    rows = [[Fraction(x) if not p else x % p for x in r] for r in M]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = (1 / rows[rank][col]) if not p else pow(rows[rank][col], p - 2, p)
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col] * inv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
                if p:
                    rows[r] = [a % p for a in rows[r]]
        rank += 1
        col += 1
    return rank


matrices = st.integers(1, 6).flatmap(lambda m: st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=m, max_size=m)))


def test_field_validation():
    assert repr(linalg.field(0)) == "QQ" and repr(linalg.field(7)) == "GF(7)"
    with pytest.raises(ValueError):
        linalg.Field(6)


def test_field_inverse():
    assert linalg.field(7).inv(3) * 3 % 7 == 1
    assert linalg.field(0).inv(Fraction(2, 3)) == Fraction(3, 2)
    assert linalg.field(0).inv(-1) == -1


@given(matrices)
def test_rank_rationals(M):
    assert linalg.rank(linalg.field(0), M, len(M[0])) == naive_rank(M)


@given(matrices, st.sampled_from([2, 3, 5, 101]))
def test_rank_prime_field(M, p):
    assert linalg.rank(linalg.field(p), M, len(M[0])) == naive_rank(M, p)


def test_characteristic_matters():
    M = [[1, 1], [1, -1]]
    assert linalg.rank(linalg.field(0), M, 2) == 2
    assert linalg.rank(linalg.field(2), M, 2) == 1


@given(matrices)
def test_nullspace(M):
    F = linalg.field(0)
    n = len(M[0])
    basis = linalg.nullspace(F, M, n)
    assert len(basis) == n - naive_rank(M)
    for v in basis:
        assert linalg.matvec(F, M, v) == {}
    dense = [[v.get(c, 0) for c in range(n)] for v in basis]
    if dense:
        assert naive_rank(dense) == len(basis)


@given(matrices, st.integers(0, 5))
def test_matmul_identity(M, _):
    F = linalg.field(0)
    n = len(M[0])
    assert linalg.matmul(F, M, linalg.identity(n)) == M
    assert linalg.matmul(F, linalg.identity(len(M)), M) == M


def test_matmul_empty_shapes():
    F = linalg.field(0)
    assert linalg.matmul(F, linalg.zeros(2, 0), [], inner=0, ncols=3) == [[0, 0, 0], [0, 0, 0]]


def test_quotient_of_simplex_boundary():
    # cycles of the boundary of a triangle modulo the image of the 2-cell
    F = linalg.field(0)
    cycles = [{0: 1, 1: -1, 2: 1}]
    q = linalg.Quotient(F, 3, [], cycles)
    assert len(q) == 1 and q.coords({0: 2, 1: -2, 2: 2}) == [2]
    q2 = linalg.Quotient(F, 3, [{0: 1, 1: -1, 2: 1}], cycles)
    assert len(q2) == 0


def test_quotient_rejects_noncycle():
    q = linalg.Quotient(linalg.field(0), 2, [], [{0: 1}])
    with pytest.raises(ValueError):
        q.coords({1: 1})


@given(matrices)
def test_echelon_membership(M):
    F = linalg.field(0)
    n = len(M[0])
    E = linalg.echelon_of_rows(F, M, n)
    assert len(E) == naive_rank(M)
    for row in M:
        assert E.contains(linalg.to_sparse(row))
