from __future__ import annotations

from collections import defaultdict

import pytest
from hypothesis import given, strategies as st

from gradedlc.combinatorics import RingConfig, SquarefreeMonomialIdeal, intersect, vset
from gradedlc.engine import (PatternModule, injective_hull, local_cohomology, zero_module)
from gradedlc.errors import BudgetExceeded
from gradedlc.invariants import class_of, ext_against
from gradedlc.oracle import (Box, BoxedModule, boxed_ext, boxed_ext_all, boxed_local_cohomology,
                             boxed_local_cohomology_all, boxed_taylor_exactness, cross_validate)

from conftest import proper_ideals

MIXED = SquarefreeMonomialIdeal.from_supports(3, [(1, 2), (1, 3)])


def prime(n, *idx):
    return SquarefreeMonomialIdeal.prime(n, vset(idx))


class TestBox:
    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            Box.cube(7, -10, 10)
        assert Box.cube(2, 0, 9, budget=100).volume == 100

    def test_bad_corners(self):
        with pytest.raises(ValueError):
            Box((0, 1), (1, 0))
        with pytest.raises(ValueError):
            Box((0,), (1, 1))

    def test_defaults(self):
        assert Box.default(4) == Box.cube(4, -3, 2)
        assert Box.default(6) == Box.cube(6, -2, 1)

    def test_points_lexicographic(self):
        pts = list(Box.cube(2, 0, 1).points())
        assert pts == [(0, 0), (0, 1), (1, 0), (1, 1)]


class TestBoxedLocalCohomology:
    def test_mixed(self):
        B = boxed_local_cohomology(MIXED, 2, Box.cube(3, -2, 1))
        for a, d in B.dims.items():
            assert d == (1 if a[1] <= -1 and a[2] <= -1 else 0)

    @given(proper_ideals(n_max=3))
    def test_degree_zero_vanishes(self, I):
        assert boxed_local_cohomology(I, 0, Box.cube(I.n, -2, 1)).is_zero()

    def test_single_variable(self):
        B = boxed_local_cohomology(prime(1, 1), 1, Box.cube(1, -2, 1))
        assert B.dims == {(-2,): 1, (-1,): 1, (0,): 0, (1,): 0}

    def test_zero_ideal(self):
        assert boxed_local_cohomology(SquarefreeMonomialIdeal.zero(2), 0, Box.cube(2, 0, 1)).is_zero()

    @given(proper_ideals(n_max=3, max_gens=3))
    def test_enlarging_box(self, I):
        small = boxed_local_cohomology_all(I, Box.cube(I.n, -2, 1))
        big = boxed_local_cohomology_all(I, Box.cube(I.n, -3, 2))
        for i, B in small.items():
            for a, d in B.dims.items():
                assert big[i].dims[a] == d

    @given(proper_ideals(n_max=3, max_gens=3))
    def test_pattern_constancy(self, I):
        for B in boxed_local_cohomology_all(I, Box.cube(I.n, -3, 2)).values():
            seen = defaultdict(set)
            for a, d in B.dims.items():
                seen[tuple(x < 0 for x in a)].add(d)
            assert all(len(v) == 1 for v in seen.values())

    def test_dump_format(self):
        B = boxed_local_cohomology(prime(2, 1), 1, Box.cube(2, -1, 0))
        assert B.dump() == "-1 -1  0\n-1 0  1\n0 -1  0\n0 0  0\n"


class TestBoxedExt:
    def test_hom_into_mixed(self):
        H = local_cohomology(MIXED, 2)
        B = boxed_ext(prime(3, 2, 3), H, 0, Box.cube(3, -3, 0))
        for a, d in B.dims.items():
            assert d == (1 if a[1] == -1 and a[2] == -1 else 0)

    def test_zero_module(self):
        Z = zero_module(RingConfig(2))
        for J in (prime(2, 1), prime(2, 1, 2), SquarefreeMonomialIdeal.from_supports(2, [(1, 2)])):
            assert all(B.is_zero() for B in boxed_ext_all(J, Z, Box.cube(2, -2, 1)).values())

    def test_hull_is_injective(self):
        E = injective_hull(RingConfig(1), vset((1,)))
        assert boxed_ext(prime(1, 1), E, 1, Box.cube(1, -3, 2)).is_zero()
        assert boxed_ext(prime(1, 1), E, 0, Box.cube(1, -3, 2)).dims[(-1,)] == 1

    @given(proper_ideals(n_max=3, max_gens=3), proper_ideals(n_min=3, n_max=3, max_gens=3),
           st.integers(0, 3))
    def test_class_constancy(self, I, J, i):
        if I.n != 3:
            return
        M = local_cohomology(I, i % (len(I.gens) + 1))
        for B in boxed_ext_all(J, M, Box.cube(3, -3, 2)).values():
            seen = defaultdict(set)
            for a, d in B.dims.items():
                seen[tuple(class_of(x) for x in a)].add(d)
            assert all(len(v) == 1 for v in seen.values())

    @given(proper_ideals(n_max=3, max_gens=3), st.integers(0, 7), st.integers(1, 7))
    def test_agrees_with_class_engine(self, I, i, Jmask):
        n = I.n
        J = SquarefreeMonomialIdeal.prime(n, Jmask & ((1 << n) - 1) or 1)
        M = local_cohomology(I, i % (len(I.gens) + 1))
        box = Box.cube(n, -3, 2)
        for l, B in boxed_ext_all(J, M, box).items():
            rep = cross_validate(ext_against(J, M, l), B)
            assert rep.agree, rep.diagnostic


class TestTaylorExactness:
    def test_mixed(self):
        assert boxed_taylor_exactness(MIXED, Box.cube(3, -1, 1)) == []

    @given(proper_ideals(n_max=4, max_gens=4))
    def test_random(self, I):
        assert boxed_taylor_exactness(I, Box.cube(I.n, 0, 2)) == []


class TestCrossValidate:
    def test_series_one(self):
        I = intersect(prime(5, 1, 2), prime(5, 3, 4), prime(5, 5, 1))
        box = Box.cube(5, -2, 1)
        rep = cross_validate(local_cohomology(I, 3), boxed_local_cohomology(I, 3, box))
        assert rep.agree and rep.checked == box.volume

    def test_zero_module(self):
        box = Box.cube(2, -1, 0)
        empty = BoxedModule(box, {a: 0 for a in box.points()})
        assert cross_validate(zero_module(RingConfig(2)), empty).agree

    def test_corrupted_piece(self):
        H = local_cohomology(MIXED, 2)
        dims = list(H.dims)
        dims[vset((1, 2))] = 1
        bad = PatternModule(H.ring, dims)
        rep = cross_validate(bad, boxed_local_cohomology(MIXED, 2, Box.cube(3, -1, 0)))
        assert not rep.agree
        a, got, want = rep.mismatch
        assert a[0] < 0 and a[1] < 0 and a[2] >= 0 and (got, want) == (1, 0)
        assert "mismatch at degree" in rep.diagnostic
