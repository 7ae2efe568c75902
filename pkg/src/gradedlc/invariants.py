"""Homological invariants of pattern modules.

Hom and Ext against ``R/J`` (``J`` squarefree) are computed from the
Taylor resolution of ``R/J``.  Because every Taylor shift is 0 or 1 in
each coordinate, the degree-``a`` piece of ``Ext^l(R/J, M)`` depends only
on the per-coordinate class of ``a`` in {≤-2, -1, 0, ≥1}; such modules
are :class:`GradedClassModule` objects and can be decided finitely
generated exactly.

Bass numbers are taken at monomial primes only (see README).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations, product

from . import linalg
from .combinatorics import (
    MonomialPrime,
    SquarefreeMonomialIdeal,
    dim_quotient,
    fmt_vars,
    height_and_bigheight,
    members,
    popcount,
    subset_key,
)
from .engine import (
    PatternModule,
    _meets_all,
    apply_chain_map,
    build_complex,
    invert_variables,
    local_cohomology,
    local_cohomology_dims,
)
from .errors import NotComputable, PreconditionError, ZeroModuleError

DEEP, MINUS, ZERO, POS = -2, -1, 0, 1
CLASS_VALUES = (DEEP, MINUS, ZERO, POS)
CLASS_NAMES = {DEEP: "deep", MINUS: "-1", ZERO: "0", POS: "pos"}
INFINITE = math.inf


def class_of(x: int) -> int:
    if x <= -2:
        return DEEP
    if x >= 1:
        return POS
    return x


def fmt_class(c) -> str:
    return "(" + ",".join(CLASS_NAMES[x] for x in c) + ")"


def _split(c) -> tuple[int, int]:
    """Masks of the deep and the -1 coordinates of a class vector."""
    D = A = 0
    for j, x in enumerate(c):
        if x == DEEP:
            D |= 1 << j
        elif x == MINUS:
            A |= 1 << j
    return D, A


# -- Taylor resolution -----------------------------------------------------

@dataclass(frozen=True)
class TaylorComplex:
    """Taylor resolution ``F_t = ⊕_{|T|=t} R(-lcm(T))`` of ``R/J``."""

    ideal: SquarefreeMonomialIdeal
    terms: tuple  # per t: tuple of (T, shift mask)

    @property
    def length(self) -> int:
        return len(self.ideal.gens)

    def differential(self, t: int):
        """Entries ``(T_target, T_source, sign, multiplier mask)`` of ``F_t -> F_{t-1}``."""
        gens = self.ideal.gens
        out = []
        for T, shift in self.terms[t]:
            for pos, i in enumerate(T):
                Tm = T[:pos] + T[pos + 1:]
                sub = 0
                for g in Tm:
                    sub |= gens[g]
                out.append((Tm, T, -1 if pos % 2 else 1, shift & ~sub))
        return out


def taylor_complex(J: SquarefreeMonomialIdeal) -> TaylorComplex:
    if J.is_zero or J.is_unit:
        raise PreconditionError("Taylor complex needs a nonzero proper ideal")
    k = len(J.gens)
    terms = []
    for t in range(k + 1):
        row = []
        for T in combinations(range(k), t):
            s = 0
            for i in T:
                s |= J.gens[i]
            row.append((T, s))
        terms.append(tuple(row))
    return TaylorComplex(J, tuple(terms))


# -- class modules ---------------------------------------------------------

class ExtFamily:
    """All ``Ext^l_R(R/J, M)`` at once, evaluated lazily per class vector.

    The degree-``a`` slice of ``Hom(Taylor(J), M)`` has components
    ``M_{a + lcm(T)}`` whose pattern is ``D ∪ (A - lcm(T))``, ``D`` and
    ``A`` being the deep and -1 coordinates of ``a``.  So the slice is the
    generic pattern complex at ``D ∪ A`` with supports ``U_i - D``.
    """

    def __init__(self, J: SquarefreeMonomialIdeal, M: PatternModule, shortcut: bool = True):
        if J.n != M.n:
            raise ValueError("module and ideal live in different rings")
        self.J = J
        self.M = M
        self.n = M.n
        self.shortcut = shortcut
        self._dims: dict = {}

    @property
    def length(self) -> int:
        return len(self.J.gens)

    def _complex(self, c):
        D, A = _split(c)
        supports = tuple(U & ~D for U in self.J.gens)
        return build_complex(self.M, supports, D | A)

    def dims_at(self, c) -> list[int]:
        """Dimensions of every Ext level at class vector ``c``."""
        key = _split(c)
        hit = self._dims.get(key)
        if hit is not None:
            return hit
        D, A = key
        k = self.length
        if self.shortcut and not _meets_all(A, self.J.gens):
            # some generator acts invertibly on this slice: cone of an isomorphism
            out = [0] * (k + 1)
        else:
            out = self._complex(c).cohomology_dims(self.M.field)
        self._dims[key] = out
        return out

    def level(self, l: int) -> "GradedClassModule":
        return GradedClassModule(self, l)


class GradedClassModule:
    """ℤⁿ-graded module whose piece at ``a`` depends on the class vector of ``a``."""

    def __init__(self, family: ExtFamily, level: int):
        self.family = family
        self.level = level
        self.n = family.n

    def dim(self, c) -> int:
        if len(c) != self.n:
            raise ValueError("class vector has the wrong length")
        if self.level < 0 or self.level > self.family.length:
            return 0
        return self.family.dims_at(tuple(c))[self.level]

    def dim_at_degree(self, a) -> int:
        return self.dim(tuple(class_of(x) for x in a))

    def classes(self):
        return product(CLASS_VALUES, repeat=self.n)

    def deep_classes(self):
        return (c for c in self.classes() if DEEP in c)

    def nonzero_classes(self) -> list[tuple]:
        return [c for c in self.classes() if self.dim(c)]

    def is_zero(self) -> bool:
        return not self.nonzero_classes()

    def step_map_rank(self, c, j: int) -> int:
        """Rank of multiplication by ``x_j`` from class ``c`` to the next class."""
        c = tuple(c)
        if c[j - 1] == POS:
            return self.dim(c)
        d = list(c)
        d[j - 1] += 1
        d = tuple(d)
        if not self.dim(c) or not self.dim(d):
            return 0
        fam = self.family
        F = fam.M.field
        src, dst = fam._complex(c), fam._complex(d)
        Qs, Qd = src.quotient(F, self.level), dst.quotient(F, self.level)
        cols = [Qd.coords(apply_chain_map(fam.M, src, dst, self.level, r)) for r in Qs.reps]
        mat = [[cols[x][y] for x in range(len(cols))] for y in range(len(Qd))]
        return linalg.rank(F, mat, len(cols))


def as_class_module(M: PatternModule) -> GradedClassModule:
    """``M`` itself, viewed through the class grid (``Hom(R, M)``)."""
    return ExtFamily(SquarefreeMonomialIdeal.zero(M.n), M).level(0)


_FAMILIES: dict = {}


def ext_family(J: SquarefreeMonomialIdeal, M: PatternModule) -> ExtFamily:
    key = (J, id(M))
    fam = _FAMILIES.get(key)
    if fam is None or fam.M is not M:
        if len(_FAMILIES) > 512:
            _FAMILIES.clear()
        fam = ExtFamily(J, M)
        _FAMILIES[key] = fam
    return fam


def ext_against(J: SquarefreeMonomialIdeal, M: PatternModule, l: int) -> GradedClassModule:
    """``Ext^l_R(R/J, M)``; ``l = 0`` is ``Hom_R(R/J, M)``."""
    return ext_family(J, M).level(l)


def is_finitely_generated(X: GradedClassModule) -> tuple[bool, tuple | None]:
    """Exact decision: finitely generated iff every deep class vanishes.

    A nonzero deep piece repeats isomorphically towards -∞ in that
    coordinate; otherwise all nonzero degrees are ≥ -1 and the module is
    generated in the finite grid {-1, 0}ⁿ.
    """
    for c in X.deep_classes():
        if X.dim(c):
            return False, c
    return True, None


# -- support, Bass numbers, resolutions ------------------------------------

def support_dimension(M: PatternModule) -> int:
    nz = [popcount(N) for N, d in enumerate(M.dims) if d]
    if not nz:
        raise ZeroModuleError("dimension of zero module")
    return M.n - min(nz)


def _localized_is_zero(M: PatternModule, S: int) -> bool:
    # M[x_j^{-1} : j not in S] has pieces piece(N ∩ S)
    return not any(M.dims[N] for N in range(1 << M.n) if N & ~S == 0)


def _bass_at(M: PatternModule, S: int) -> list:
    """``[μ_0(p_S, M), …, μ_|S|(p_S, M)]``."""
    n = M.n
    s = popcount(S)
    if _localized_is_zero(M, S):
        return [0] * (s + 1)
    full = (1 << n) - 1
    Mloc = invert_variables(M, full & ~S)
    P = SquarefreeMonomialIdeal.prime(n, S)
    fam = ExtFamily(P, Mloc)
    Sidx = [j - 1 for j in members(S)]
    out = [0] * (s + 1)
    infinite = [False] * (s + 1)
    for vals in product(CLASS_VALUES, repeat=s):
        c = [ZERO] * n
        for j, v in zip(Sidx, vals):
            c[j] = v
        ds = fam.dims_at(tuple(c))
        finite_class = all(v in (MINUS, ZERO) for v in vals)
        for j in range(s + 1):
            if ds[j]:
                if finite_class:
                    out[j] += ds[j]
                else:
                    infinite[j] = True
    return [INFINITE if inf else v for v, inf in zip(out, infinite)]


def bass_number(p: MonomialPrime, j: int, M: PatternModule):
    """``μ_j(p, M)`` via Koszul cohomology of ``M`` localized at ``p``."""
    if j < 0 or j > p.height:
        return 0
    return _bass_at(M, p.vars)[j]


@dataclass
class BassTable:
    n: int
    entries: dict = dc_field(default_factory=dict)  # (MonomialPrime, j) -> nat or inf

    def get(self, p: MonomialPrime, j: int):
        return self.entries.get((p, j), 0)

    def nonzero(self) -> list:
        return sorted(((p, j, v) for (p, j), v in self.entries.items() if v),
                      key=lambda e: (e[1], subset_key(e[0].vars)))

    def has_infinite(self) -> bool:
        return any(v == INFINITE for v in self.entries.values())


def _bass_task(args):
    M, S = args
    return _bass_at(M, S)


@lru_cache(maxsize=64)
def _bass_table_cached(M: PatternModule) -> BassTable:
    from .parallel import pmap

    masks = sorted(range(1 << M.n), key=subset_key)
    rows = pmap(_bass_task, [(M, S) for S in masks])
    T = BassTable(M.n)
    for S, row in zip(masks, rows):
        for j, v in enumerate(row):
            if v:
                T.entries[(MonomialPrime(S), j)] = v
    return T


def bass_table(M: PatternModule) -> BassTable:
    return _bass_table_cached(M)


def injective_dimension(M: PatternModule) -> int:
    if M.is_zero():
        raise ZeroModuleError("injective dimension of zero module")
    T = bass_table(M)
    if T.has_infinite():
        raise NotComputable("not computable in this model")
    return max(j for (_, j), v in T.entries.items() if v)


@dataclass
class ResolutionShape:
    levels: list  # per level: list of (MonomialPrime, multiplicity)

    @property
    def injective_dimension(self) -> int:
        return len(self.levels) - 1

    def as_sets(self) -> list[dict]:
        return [{p: m for p, m in lev} for lev in self.levels]

    def __str__(self):
        parts = []
        for lev in self.levels:
            parts.append(" ⊕ ".join(
                f"E(R/{p})" + (f"^{m}" if m != 1 else "") for p, m in lev) or "0")
        return "0 → M → " + " → ".join(parts) + " → 0"


def resolution_shape(M: PatternModule) -> ResolutionShape:
    if M.is_zero():
        return ResolutionShape([])
    T = bass_table(M)
    if T.has_infinite():
        raise NotComputable("resolution shape needs finite Bass numbers")
    top = injective_dimension(M)
    levels = []
    for j in range(top + 1):
        lev = sorted(((p, v) for (p, jj), v in T.entries.items() if jj == j and v),
                     key=lambda e: subset_key(e[0].vars))
        levels.append(lev)
    return ResolutionShape(levels)


def associated_primes(M: PatternModule) -> list[MonomialPrime]:
    T = bass_table(M)
    return sorted((p for (p, j), v in T.entries.items() if j == 0 and v),
                  key=lambda p: subset_key(p.vars))


def cohomological_dimension(I: SquarefreeMonomialIdeal, char: int = 0) -> int:
    dims = local_cohomology_dims(I, char)
    nz = [i for i, ds in dims.items() if any(ds)]
    return max(nz) if nz else 0


def nonzero_degrees(I: SquarefreeMonomialIdeal, char: int = 0) -> list[int]:
    return sorted(i for i, ds in local_cohomology_dims(I, char).items() if any(ds))


# -- cofiniteness ----------------------------------------------------------

@dataclass
class CofinitenessVerdict:
    supp_ok: bool
    checked_levels: list = dc_field(default_factory=list)  # (l, fg, witness or None)
    verdict: str = "inconclusive"
    support_witness: int | None = None

    @property
    def cofinite(self) -> bool:
        return self.verdict == "cofinite"

    @property
    def witness(self):
        for l, fg, w in self.checked_levels:
            if not fg:
                return l, w
        return None


def support_in(M: PatternModule, I: SquarefreeMonomialIdeal) -> tuple[bool, int | None]:
    """``Supp M ⊆ V(I)``: each nonzero pattern must span a prime containing ``I``."""
    for N in M.nonzero_patterns():
        if not I.is_contained_in_prime(N):
            return False, N
    return True, None


def is_cofinite(I: SquarefreeMonomialIdeal, M: PatternModule, max_level: int | None = None,
                use_cutoff: bool = True) -> CofinitenessVerdict:
    if max_level is None:
        max_level = M.n + 1
    ok, wit = support_in(M, I)
    v = CofinitenessVerdict(supp_ok=ok, support_witness=wit)
    if not ok:
        v.verdict = "not-cofinite"
        return v
    # Hom(Taylor(I), M) has no terms past the Taylor length; pd R/I <= n
    cutoff = min(len(I.gens), M.n)
    fam = ext_family(I, M)
    for l in range(0, min(max_level, cutoff) + 1):
        fg, w = is_finitely_generated(fam.level(l))
        v.checked_levels.append((l, fg, w))
        if not fg:
            v.verdict = "not-cofinite"
            return v
    v.verdict = "cofinite" if use_cutoff and max_level >= cutoff else "inconclusive"
    return v


# -- property checks -------------------------------------------------------

@dataclass
class PropertyReport:
    name: str
    holds: bool
    details: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.holds


def check_bass_inequality(M: PatternModule, I: SquarefreeMonomialIdeal) -> PropertyReport:
    """``dim M <= injdim M`` for a module certified ``I``-cofinite."""
    v = is_cofinite(I, M)
    if not v.cofinite:
        raise PreconditionError(f"module is not certified {I}-cofinite ({v.verdict})")
    d, e = support_dimension(M), injective_dimension(M)
    return PropertyReport("dim <= injdim", d <= e, {"dim": d, "injdim": e})


def check_nonfg_thresholds(I: SquarefreeMonomialIdeal, char: int = 0) -> PropertyReport:
    """Top and bottom nonvanishing ``H^i_I(R)`` are not finitely generated."""
    c = cohomological_dimension(I, char)
    h = height_and_bigheight(I)[0]
    details = {"cd": c, "height": h}
    holds = True
    for name, i in (("cd", c), ("height", h)):
        if i <= 0:
            continue
        fg, w = is_finitely_generated(as_class_module(local_cohomology(I, i, char)))
        details[f"H^{name} finitely generated"] = fg
        if w is not None:
            details[f"H^{name} witness"] = fmt_class(w)
        holds = holds and not fg
    return PropertyReport("H^cd and H^height not finitely generated", holds, details)


def check_ext_finiteness(I: SquarefreeMonomialIdeal, M: PatternModule, J: SquarefreeMonomialIdeal,
                         levels) -> PropertyReport:
    """``Ext^l(R/J, M)`` finitely generated for ``J ⊇ I`` and ``M`` ``I``-cofinite."""
    if not J.contains(I):
        raise PreconditionError(f"{J} does not contain {I}")
    v = is_cofinite(I, M)
    if not v.cofinite:
        raise PreconditionError(f"module is not certified {I}-cofinite ({v.verdict})")
    details = {}
    holds = True
    for l in levels:
        fg, w = is_finitely_generated(ext_against(J, M, l))
        details[l] = fg if w is None else (fg, fmt_class(w))
        holds = holds and fg
    return PropertyReport("Ext(R/J, M) finitely generated", holds, details)


def check_vanishing_criterion(I: SquarefreeMonomialIdeal, char: int = 0) -> PropertyReport:
    """For ``l > bigheight(I)``: ``Hom(R/I, H^l_I(R))`` f.g. forces ``H^l_I(R) = 0``."""
    big = height_and_bigheight(I)[1]
    details = {}
    holds = True
    for l in range(big + 1, I.n + 1):
        H = local_cohomology(I, l, char)
        fg, _ = is_finitely_generated(ext_against(I, H, 0))
        zero = H.is_zero()
        details[l] = {"hom_fg": fg, "zero": zero}
        if fg and not zero:
            holds = False
    return PropertyReport("Hom(R/I, H^l) f.g. above bigheight only when H^l = 0", holds, details)


def check_single_degree_equality(I: SquarefreeMonomialIdeal, char: int = 0) -> PropertyReport:
    """When exactly one ``H^l_I(R)`` is nonzero: ``injdim = dim = dim R/I``."""
    nz = nonzero_degrees(I, char)
    if len(nz) != 1:
        return PropertyReport("single nonvanishing degree", True, {"applies": False, "degrees": nz})
    H = local_cohomology(I, nz[0], char)
    d, e, q = support_dimension(H), injective_dimension(H), dim_quotient(I)
    return PropertyReport("injdim = dim = dim R/I", d == e == q,
                          {"applies": True, "degree": nz[0], "dim": d, "injdim": e, "dim R/I": q})


__all__ = [
    "BassTable", "CofinitenessVerdict", "ExtFamily", "GradedClassModule", "INFINITE",
    "PropertyReport", "ResolutionShape", "TaylorComplex", "as_class_module", "associated_primes",
    "bass_number", "bass_table", "check_bass_inequality", "check_ext_finiteness",
    "check_nonfg_thresholds", "check_single_degree_equality", "check_vanishing_criterion",
    "class_of", "cohomological_dimension", "ext_against", "fmt_class", "injective_dimension",
    "is_cofinite", "is_finitely_generated", "nonzero_degrees", "resolution_shape",
    "support_dimension", "support_in", "taylor_complex", "fmt_vars",
]
