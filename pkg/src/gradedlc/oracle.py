"""Brute-force graded pieces inside an explicit box of multidegrees.

Nothing here assumes that pieces depend only on sign patterns or class
vectors: every degree of the box gets its own complex, assembled from
the literal description of localizations and Taylor shifts.  This makes
the module an independent check on :mod:`gradedlc.engine` and
:mod:`gradedlc.invariants`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations, product

from . import linalg
from .combinatorics import SquarefreeMonomialIdeal, fmt_vars
from .engine import PatternModule
from .errors import BudgetExceeded

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class Box:
    lo: tuple[int, ...]
    hi: tuple[int, ...]
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise ValueError("box corners have different lengths")
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise ValueError("box needs lo <= hi componentwise")
        if self.volume > self.budget:
            raise BudgetExceeded(f"box volume {self.volume} exceeds budget {self.budget}")

    @classmethod
    def cube(cls, n: int, lo: int, hi: int, budget: int = DEFAULT_BUDGET) -> "Box":
        return cls((lo,) * n, (hi,) * n, budget)

    @classmethod
    def default(cls, n: int) -> "Box":
        return cls.cube(n, -3, 2) if n <= 4 else cls.cube(n, -2, 1)

    @property
    def n(self) -> int:
        return len(self.lo)

    @property
    def volume(self) -> int:
        v = 1
        for a, b in zip(self.lo, self.hi):
            v *= b - a + 1
        return v

    def points(self):
        return product(*(range(a, b + 1) for a, b in zip(self.lo, self.hi)))


@dataclass
class BoxedModule:
    box: Box
    dims: dict = dc_field(default_factory=dict)  # degree tuple -> dim

    def dim(self, a) -> int:
        return self.dims[tuple(a)]

    def is_zero(self) -> bool:
        return not any(self.dims.values())

    def dump(self) -> str:
        lines = [" ".join(str(x) for x in a) + "  " + str(d) for a, d in sorted(self.dims.items())]
        return "\n".join(lines) + ("\n" if lines else "")


_rank_cache: dict = {}


def _cached_rank(F, mat, ncols):
    key = (F.char, ncols, tuple(tuple(r) for r in mat))
    r = _rank_cache.get(key)
    if r is None:
        if len(_rank_cache) > 200_000:
            _rank_cache.clear()
        r = linalg.rank(F, mat, ncols)
        _rank_cache[key] = r
    return r


def _cohomology_dims(F, terms, blocks):
    """Dimensions from term sizes and differentials ``blocks[t]: C^t -> C^{t+1}``."""
    k = len(terms) - 1
    ranks = []
    for t in range(k):
        if terms[t] and terms[t + 1]:
            ranks.append(_cached_rank(F, blocks[t], terms[t]))
        else:
            ranks.append(0)
    return [terms[t] - (ranks[t - 1] if t else 0) - (ranks[t] if t < k else 0) for t in range(k + 1)]


def boxed_local_cohomology_all(I: SquarefreeMonomialIdeal, box: Box, char: int = 0) -> dict[int, BoxedModule]:
    """``H^i_I(R)`` for every ``i``, one Čech slice per degree of the box."""
    if box.n != I.n:
        raise ValueError("box dimension differs from the number of variables")
    F = linalg.field(char)
    gens = I.gens
    k = len(gens)
    out = {i: BoxedModule(box) for i in range(k + 1)}
    subsets_by_t = [list(combinations(range(k), t)) for t in range(k + 1)]
    union = {}
    for t in range(k + 1):
        for T in subsets_by_t[t]:
            u = 0
            for i in T:
                u |= gens[i]
            union[T] = u
    for a in box.points():
        # R_{x^U} has a nonzero degree-a piece iff a_j >= 0 whenever x_j is not inverted
        present = []
        for t in range(k + 1):
            present.append([T for T in subsets_by_t[t]
                            if all(a[j] >= 0 or (union[T] >> j) & 1 for j in range(I.n))])
        sizes = [len(p) for p in present]
        blocks = [_incidence(present[t], present[t + 1]) for t in range(k)]
        for i, d in enumerate(_cohomology_dims(F, sizes, blocks)):
            out[i].dims[a] = d
    return out


def _incidence(src, dst):
    where = {T: c for c, T in enumerate(src)}
    mat = [[0] * len(src) for _ in dst]
    for r, T in enumerate(dst):
        for k in range(len(T)):
            c = where.get(T[:k] + T[k + 1:])
            if c is not None:
                mat[r][c] = -1 if k % 2 else 1
    return mat


def boxed_local_cohomology(I: SquarefreeMonomialIdeal, i: int, box: Box, char: int = 0) -> BoxedModule:
    if I.is_zero:
        return BoxedModule(box, {a: 0 for a in box.points()})
    res = boxed_local_cohomology_all(I, box, char)
    return res.get(i) or BoxedModule(box, {a: 0 for a in box.points()})


def _module_piece(M: PatternModule, b) -> int:
    return M.dims[sum(1 << j for j, x in enumerate(b) if x < 0)]


def _multiply(M: PatternModule, b, mask: int):
    """Matrix of multiplication by ``x^mask`` on ``M_b``, one variable at a time."""
    F = M.field
    b = list(b)
    width = _module_piece(M, b)
    mat = linalg.identity(width)
    for j in range(M.n):
        if not (mask >> j) & 1:
            continue
        src = _module_piece(M, b)
        if b[j] == -1:
            N = sum(1 << q for q, x in enumerate(b) if x < 0)
            step = M.umap(N, j + 1)
        else:
            step = linalg.identity(src)
        b[j] += 1
        mat = linalg.matmul(F, step, mat, inner=src, ncols=width)
    return mat


def boxed_ext_all(J: SquarefreeMonomialIdeal, M: PatternModule, box: Box) -> dict[int, BoxedModule]:
    """``Ext^l(R/J, M)`` for every ``l`` from the dual Taylor complex, degree by degree."""
    if box.n != M.n or J.n != M.n:
        raise ValueError("box, ideal and module must share the number of variables")
    F = M.field
    gens = J.gens
    k = len(gens)
    subsets_by_t = [list(combinations(range(k), t)) for t in range(k + 1)]
    union = {}
    for t in range(k + 1):
        for T in subsets_by_t[t]:
            u = 0
            for i in T:
                u |= gens[i]
            union[T] = u
    out = {l: BoxedModule(box) for l in range(k + 1)}
    for a in box.points():
        shifted = {T: tuple(a[j] + ((union[T] >> j) & 1) for j in range(M.n)) for T in union}
        sizes, offs = [], []
        for t in range(k + 1):
            o, acc = {}, 0
            for T in subsets_by_t[t]:
                o[T] = acc
                acc += _module_piece(M, shifted[T])
            offs.append(o)
            sizes.append(acc)
        blocks = []
        for t in range(k):
            mat = linalg.zeros(sizes[t + 1], sizes[t])
            for T in subsets_by_t[t + 1]:
                dT = _module_piece(M, shifted[T])
                if not dT:
                    continue
                for pos in range(len(T)):
                    Tm = T[:pos] + T[pos + 1:]
                    dm = _module_piece(M, shifted[Tm])
                    if not dm:
                        continue
                    blk = _multiply(M, shifted[Tm], union[T] & ~union[Tm])
                    sgn = -1 if pos % 2 else 1
                    r0, c0 = offs[t + 1][T], offs[t][Tm]
                    for r in range(dT):
                        for c in range(dm):
                            if blk[r][c]:
                                mat[r0 + r][c0 + c] = sgn * blk[r][c]
            blocks.append(mat)
        for l, d in enumerate(_cohomology_dims(F, sizes, blocks)):
            out[l].dims[a] = d
    return out


def boxed_ext(J: SquarefreeMonomialIdeal, M: PatternModule, l: int, box: Box) -> BoxedModule:
    res = boxed_ext_all(J, M, box)
    return res.get(l) or BoxedModule(box, {a: 0 for a in box.points()})


def boxed_taylor_exactness(J: SquarefreeMonomialIdeal, box: Box, char: int = 0) -> list:
    """Degrees where the Taylor complex fails to resolve ``R/J`` (empty when exact)."""
    F = linalg.field(char)
    gens = J.gens
    k = len(gens)
    subsets_by_t = [list(combinations(range(k), t)) for t in range(k + 1)]
    bad = []
    for a in box.points():
        if any(x < 0 for x in a):
            continue
        present = []
        for t in range(k + 1):
            row = []
            for T in subsets_by_t[t]:
                u = 0
                for i in T:
                    u |= gens[i]
                if all(a[j] >= 1 for j in range(J.n) if (u >> j) & 1):
                    row.append(T)
            present.append(row)
        # homological indexing: F_t -> F_{t-1}; transpose of the coboundary
        ranks = [0] * (k + 1)
        for t in range(1, k + 1):
            if present[t] and present[t - 1]:
                inc = _incidence(present[t - 1], present[t])
                ranks[t] = _cached_rank(F, [list(r) for r in zip(*inc)], len(present[t]))
        hom = [len(present[t]) - ranks[t] - (ranks[t + 1] if t < k else 0) for t in range(k + 1)]
        in_quotient = 0 if J.contains_monomial(sum(1 << j for j in range(J.n) if a[j] > 0)) else 1
        if hom[0] != in_quotient or any(hom[1:]):
            bad.append((a, hom))
    return bad


@dataclass
class ValidationReport:
    agree: bool
    checked: int
    mismatch: tuple | None = None   # (degree, pattern value, boxed value)
    diagnostic: str = ""


def cross_validate(pattern_result, boxed_result: BoxedModule, box: Box | None = None) -> ValidationReport:
    """Compare a pattern/class module with boxed dimensions at every degree."""
    box = box or boxed_result.box
    if hasattr(pattern_result, "dim_at_degree"):
        value = pattern_result.dim_at_degree
    else:
        from .engine import piece_dim

        def value(a):
            return piece_dim(pattern_result, a)
    checked = 0
    for a in box.points():
        want = boxed_result.dims.get(a, 0)
        got = value(a)
        checked += 1
        if got != want:
            neg = sum(1 << j for j, x in enumerate(a) if x < 0)
            same = [f"  {' '.join(map(str, b))}  {d}" for b, d in sorted(boxed_result.dims.items())
                    if sum(1 << j for j, x in enumerate(b) if x < 0) == neg]
            diag = (f"mismatch at degree {a} (pattern {fmt_vars(neg)}): engine {got}, oracle {want}\n"
                    f"oracle pieces sharing this sign pattern:\n" + "\n".join(same[:50]))
            return ValidationReport(False, checked, (a, got, want), diag)
    return ValidationReport(True, checked)
