from __future__ import annotations

import pytest
from hypothesis import given

from gradedlc.combinatorics import SquarefreeMonomialIdeal, intersect, vset
from gradedlc.errors import ParseError
from gradedlc.parser import Gens, Join, Meet, Prime, format_ideal, ideal_from_text, parse_ideal

from conftest import proper_ideals


def prime(n, *idx):
    return SquarefreeMonomialIdeal.prime(n, vset(idx))


def test_series_one_expression():
    got = ideal_from_text("V(x1,x2) & V(x3,x4) & V(x5,x1)", 5)
    assert got == intersect(prime(5, 1, 2), prime(5, 3, 4), prime(5, 5, 1))


def test_generator_list():
    assert ideal_from_text("(x1*x2, x1*x3)", 3) == SquarefreeMonomialIdeal.from_supports(3, [(1, 2), (1, 3)])


def test_squarefree_only():
    with pytest.raises(ParseError, match="squarefree only"):
        parse_ideal("(x1*x1)")


def test_intersection_spellings():
    a = ideal_from_text("V(x1) & V(x2)", 2)
    assert ideal_from_text("V(x1) ∩ V(x2)", 2) == a
    assert ideal_from_text("V(x1) cap V(x2)", 2) == a


def test_sum_binds_tighter():
    loose = ideal_from_text("V(x1) & V(x2) + V(x3)", 3)
    assert loose == intersect(prime(3, 1), prime(3, 2, 3))
    tight = ideal_from_text("(V(x1) & V(x2)) + V(x3)", 3)
    assert tight == SquarefreeMonomialIdeal.from_supports(3, [(1, 2), (3,)])


def test_ast_shape():
    e = parse_ideal("(x1, x2*x3) & V(x4) + (x5)")
    assert isinstance(e.root, Meet)
    left, right = e.root.parts
    assert isinstance(left, Gens) and left.monomials == ((1,), (2, 3))
    assert isinstance(right, Join) and isinstance(right.parts[0], Prime)
    assert e.max_variable == 5


def test_zero_and_unit():
    assert ideal_from_text("(0)", 2).is_zero
    assert ideal_from_text("(1)", 2).is_unit
    assert ideal_from_text("(1) & V(x1)", 2) == prime(2, 1)


def test_whitespace_and_nested_parens():
    assert ideal_from_text("  ( ( x1 , x2 ) )  ", 2) == prime(2, 1, 2)


@pytest.mark.parametrize("text, pos", [
    ("(x1", 3), ("x1", 0), ("", 0), ("(x1) ^ (x2)", 5), ("(x1,)", 4), ("V(x1 x2)", 5),
    ("(2)", 1), ("(x0)", 1), ("(x1) &", 6),
])
def test_syntax_errors(text, pos):
    with pytest.raises(ParseError) as err:
        parse_ideal(text)
    assert err.value.position == pos
    assert f"(at position {pos})" in str(err.value)


def test_range_checked_against_n():
    e = parse_ideal("V(x1,x9)")
    with pytest.raises(ParseError, match="out of range"):
        e.evaluate(5)
    assert e.evaluate(9) == prime(9, 1, 9)
    with pytest.raises(ParseError):
        parse_ideal("V(x1,x9)", 5)


@given(proper_ideals(n_max=7, max_gens=6))
def test_round_trip(I):
    assert ideal_from_text(format_ideal(I), I.n) == I
    assert ideal_from_text(str(I), I.n) == I


def test_round_trip_degenerate():
    for I in (SquarefreeMonomialIdeal.zero(3), SquarefreeMonomialIdeal.unit(3)):
        assert ideal_from_text(format_ideal(I), 3) == I
