from __future__ import annotations

import pytest

from gradedlc.parser import ideal_from_text
from gradedlc.combinatorics import height_and_bigheight
from gradedlc.scenarios import SCENARIOS, Expectation, lyubeznik_s, run_scenario, verify_paper

NAMES = ["mixed", "series-1", "series-2", "series-3", "series-4", "series-5",
         "remark-fails", "gor-ci", "lyubeznik-cd"]


def test_registry_names():
    assert list(SCENARIOS) == NAMES


@pytest.mark.parametrize("name", NAMES)
def test_scenario_passes(name):
    r = run_scenario(name)
    assert r.passed, "\n".join(r.text())


def test_every_expectation_has_a_source():
    for spec in SCENARIOS.values():
        assert spec.expectations
        for e in spec.expectations:
            assert isinstance(e, Expectation) and e.source.strip()


def test_scenario_ideals_parse():
    for spec in SCENARIOS.values():
        assert not spec.evaluate_ideal().is_zero


def test_unknown_scenario():
    with pytest.raises(KeyError):
        run_scenario("nope")


def test_mismatch_is_reported():
    spec = SCENARIOS["remark-fails"]
    bad = type(spec)(spec.name, spec.n, spec.ideal, spec.degree,
                     (Expectation("injdim", 1, "deliberately wrong"),), spec.compute)
    SCENARIOS["tmp-bad"] = bad
    try:
        r = run_scenario("tmp-bad")
    finally:
        del SCENARIOS["tmp-bad"]
    assert not r.passed
    assert "[BAD] injdim: expected 1, computed 0" in "\n".join(r.text())


def test_lyubeznik_s_is_floor():
    assert [lyubeznik_s(d, b) for d, b in ((5, 2), (6, 2), (7, 3), (4, 2), (3, 1))] == [2, 2, 2, 1, 2]


def test_lyubeznik_instances_are_in_range():
    for text, n in (("V(x1,x2) & V(x3,x4) & V(x5,x6)", 6), ("V(x1,x2,x3) & V(x4,x5,x6) & V(x7,x1,x4)", 7)):
        I = ideal_from_text(text, n)
        b = height_and_bigheight(I)[1]
        assert len(I.minimal_primes) == lyubeznik_s(n, b) + 1


def test_verify_all():
    assert all(r.passed for r in verify_paper("all"))
