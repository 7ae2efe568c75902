"""Variable sets and squarefree monomial ideals.

A variable set is an ``int`` bitmask: bit ``j - 1`` stands for ``x_j``.
A squarefree monomial ideal is the antichain of supports of its
minimal generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .errors import IdealError
from .linalg import Field, field

MAX_VARS = 16


@dataclass(frozen=True)
class RingConfig:
    """``k[x_1..x_n]`` with ``k`` the rationals (char 0) or GF(char)."""

    n: int
    char: int = 0

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VARS:
            raise ValueError(f"n must lie in 1..{MAX_VARS}, got {self.n}")
        field(self.char)  # validates the characteristic

    @property
    def field(self) -> Field:
        return field(self.char)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def depth(self) -> int:
        return self.n

    def __str__(self):
        k = "QQ" if self.char == 0 else f"GF({self.char})"
        return f"{k}[x1..x{self.n}]"


# -- variable sets ---------------------------------------------------------

def vset(indices) -> int:
    """Bitmask of the 1-based variable indices."""
    m = 0
    for i in indices:
        if i < 1 or i > MAX_VARS:
            raise ValueError(f"variable index {i} out of range")
        m |= 1 << (i - 1)
    return m


def members(mask: int) -> tuple[int, ...]:
    """Sorted 1-based indices in ``mask``."""
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def subset_key(mask: int):
    """Deterministic order: by size, then lexicographically."""
    return (popcount(mask), members(mask))


def subsets(mask: int):
    """All submasks of ``mask`` (including 0 and ``mask``)."""
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def fmt_vars(mask: int) -> str:
    return "{" + ",".join(str(i) for i in members(mask)) + "}"


@dataclass(frozen=True, order=True)
class MonomialPrime:
    """The prime ``(x_i : i in vars)``; ``vars == 0`` is the zero prime."""

    vars: int

    @property
    def height(self) -> int:
        return popcount(self.vars)

    def __str__(self):
        if not self.vars:
            return "(0)"
        return "(" + ",".join(f"x{i}" for i in members(self.vars)) + ")"

    @classmethod
    def of(cls, *indices: int) -> "MonomialPrime":
        return cls(vset(indices))


# -- ideals ----------------------------------------------------------------

def normalize_gens(gens) -> tuple[int, ...]:
    """Inclusion-minimal antichain of supports, sorted by size then lex."""
    uniq = sorted(set(gens), key=subset_key)
    kept: list[int] = []
    for g in uniq:
        if not any(h & g == h for h in kept):
            kept.append(g)
    return tuple(kept)


@dataclass(frozen=True)
class SquarefreeMonomialIdeal:
    n: int
    gens: tuple[int, ...]

    def __post_init__(self):
        full = (1 << self.n) - 1
        for g in self.gens:
            if g & ~full:
                raise ValueError(f"generator {fmt_vars(g)} uses variables beyond x{self.n}")
        object.__setattr__(self, "gens", normalize_gens(self.gens))

    @classmethod
    def from_supports(cls, n: int, supports) -> "SquarefreeMonomialIdeal":
        return cls(n, tuple(vset(s) for s in supports))

    @classmethod
    def prime(cls, n: int, mask: int) -> "SquarefreeMonomialIdeal":
        return cls(n, tuple(1 << (i - 1) for i in members(mask)))

    @classmethod
    def maximal(cls, n: int) -> "SquarefreeMonomialIdeal":
        return cls.prime(n, (1 << n) - 1)

    @classmethod
    def zero(cls, n: int) -> "SquarefreeMonomialIdeal":
        return cls(n, ())

    @classmethod
    def unit(cls, n: int) -> "SquarefreeMonomialIdeal":
        return cls(n, (0,))

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return self.gens == (0,)

    def contains_monomial(self, support: int) -> bool:
        return any(g & support == g for g in self.gens)

    def contains(self, other: "SquarefreeMonomialIdeal") -> bool:
        return all(self.contains_monomial(g) for g in other.gens)

    def is_contained_in_prime(self, mask: int) -> bool:
        """``I ⊆ (x_i : i in mask)``, i.e. ``mask`` meets every generator."""
        return all(g & mask for g in self.gens)

    def __and__(self, other):
        return intersect(self, other)

    def __add__(self, other):
        return ideal_sum(self, other)

    def __str__(self):
        if self.is_zero:
            return "(0)"
        if self.is_unit:
            return "(1)"
        return "(" + ", ".join("*".join(f"x{i}" for i in members(g)) for g in self.gens) + ")"

    @cached_property
    def minimal_primes(self) -> tuple[MonomialPrime, ...]:
        return minimal_primes(self)


def normalize(n: int, gens) -> SquarefreeMonomialIdeal:
    return SquarefreeMonomialIdeal(n, tuple(gens))


def _check_same(I1, I2):
    if I1.n != I2.n:
        raise ValueError(f"ideals live in different rings (n={I1.n} vs n={I2.n})")


def intersect(*ideals: SquarefreeMonomialIdeal) -> SquarefreeMonomialIdeal:
    out = ideals[0]
    for J in ideals[1:]:
        _check_same(out, J)
        out = SquarefreeMonomialIdeal(out.n, tuple(a | b for a in out.gens for b in J.gens))
    return out


def ideal_sum(*ideals: SquarefreeMonomialIdeal) -> SquarefreeMonomialIdeal:
    out = ideals[0]
    for J in ideals[1:]:
        _check_same(out, J)
        out = SquarefreeMonomialIdeal(out.n, out.gens + J.gens)
    return out


def minimal_primes(I: SquarefreeMonomialIdeal) -> tuple[MonomialPrime, ...]:
    """Minimal vertex covers of the generator supports."""
    if I.is_zero or I.is_unit:
        raise IdealError("no prime decomposition")
    covers = [0]
    for g in I.gens:
        nxt = set()
        for c in covers:
            if c & g:
                nxt.add(c)
            else:
                for v in members(g):
                    nxt.add(c | (1 << (v - 1)))
        covers = normalize_gens(nxt)
    return tuple(MonomialPrime(c) for c in sorted(covers, key=subset_key))


def height_and_bigheight(I: SquarefreeMonomialIdeal) -> tuple[int, int]:
    hs = [p.height for p in minimal_primes(I)]
    return min(hs), max(hs)


def dim_quotient(I: SquarefreeMonomialIdeal) -> int:
    """Krull dimension of ``R/I``."""
    return I.n - height_and_bigheight(I)[0]


def brute_force_members(I: SquarefreeMonomialIdeal) -> frozenset[int]:
    """Every squarefree support lying in ``I`` (membership oracle)."""
    full = (1 << I.n) - 1
    return frozenset(s for s in range(full + 1) if I.contains_monomial(s))


def k_subsets(k: int, t: int):
    """``t``-subsets of ``range(k)`` in lexicographic order."""
    return list(combinations(range(k), t))
