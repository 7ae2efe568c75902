from __future__ import annotations

import random

from hypothesis import HealthCheck, settings, strategies as st

from gradedlc.combinatorics import SquarefreeMonomialIdeal, intersect

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


@st.composite
def proper_ideals(draw, n_min=1, n_max=4, max_gens=4):
    """Nonzero proper squarefree monomial ideals."""
    n = draw(st.integers(n_min, n_max))
    full = (1 << n) - 1
    gens = draw(st.lists(st.integers(1, full), min_size=1, max_size=max_gens))
    return SquarefreeMonomialIdeal(n, tuple(gens))


@st.composite
def ideal_pairs(draw, n_min=1, n_max=4, max_gens=3):
    n = draw(st.integers(n_min, n_max))
    full = (1 << n) - 1
    g1 = draw(st.lists(st.integers(1, full), min_size=1, max_size=max_gens))
    g2 = draw(st.lists(st.integers(1, full), min_size=1, max_size=max_gens))
    return SquarefreeMonomialIdeal(n, tuple(g1)), SquarefreeMonomialIdeal(n, tuple(g2))


def random_ideal(rng: random.Random, n: int, max_gens: int = 4) -> SquarefreeMonomialIdeal:
    full = (1 << n) - 1
    k = rng.randint(1, max_gens)
    return SquarefreeMonomialIdeal(n, tuple(rng.randint(1, full) for _ in range(k)))


def random_dim_one_ideal(rng: random.Random, n: int) -> SquarefreeMonomialIdeal:
    """Intersection of primes generated by n - 1 variables: dim R/I = 1."""
    full = (1 << n) - 1
    misses = rng.sample(range(n), rng.randint(1, n))
    parts = [SquarefreeMonomialIdeal.prime(n, full & ~(1 << j)) for j in misses]
    return intersect(*parts)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        ok, title = mod.RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
