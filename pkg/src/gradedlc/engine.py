"""Pattern modules: finite models of straight ℤⁿ-graded modules.

A pattern module ``M`` has a finite-dimensional piece for each subset
``N`` of the variables, and ``M_a = piece(neg(a))`` where
``neg(a) = {j : a_j < 0}``.  Multiplication by ``x_j`` from degree
``a`` to ``a + e_j`` is the identity unless ``a_j = -1``, in which case
it is the stored map ``u[N, j]: piece(N) -> piece(N - {j})``.

Local cohomology of ``R`` (and of any pattern module) along a squarefree
monomial ideal is again a pattern module: every localization
``M[x^U^{-1}]`` is one, and the Čech differentials respect patterns.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations

from . import linalg
from .combinatorics import (
    RingConfig,
    SquarefreeMonomialIdeal,
    fmt_vars,
    members,
    popcount,
    subset_key,
    subsets,
)
from .errors import IdealError
from .parallel import pmap


class PatternModule:
    """Immutable pattern module over ``ring``.

    ``dims`` is indexed by bitmask.  ``umaps[(N, j)]`` is a dense matrix
    of shape ``dims[N - j] x dims[N]``; entries whose source or target
    is zero-dimensional are omitted.
    """

    __slots__ = ("ring", "dims", "_umaps", "_comp")

    def __init__(self, ring: RingConfig, dims, umaps=None):
        dims = tuple(int(d) for d in dims)
        if len(dims) != 1 << ring.n:
            raise ValueError("need one dimension per subset of the variables")
        self.ring = ring
        self.dims = dims
        clean = {}
        for (N, j), mat in (umaps or {}).items():
            b = 1 << (j - 1)
            if not N & b:
                raise ValueError(f"u-map at {fmt_vars(N)} along x{j}: variable not in pattern")
            if dims[N] and dims[N ^ b]:
                if len(mat) != dims[N ^ b] or any(len(r) != dims[N] for r in mat):
                    raise ValueError(f"u-map at {fmt_vars(N)} along x{j} has the wrong shape")
                clean[(N, j)] = [list(r) for r in mat]
        self._umaps = clean
        self._comp: dict = {}

    def __reduce__(self):
        return (PatternModule, (self.ring, self.dims, self._umaps))

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def field(self):
        return self.ring.field

    def piece(self, N: int) -> int:
        return self.dims[N]

    def umap(self, N: int, j: int):
        b = 1 << (j - 1)
        mat = self._umaps.get((N, j))
        if mat is not None:
            return mat
        return linalg.zeros(self.dims[N ^ b], self.dims[N])

    def composite(self, A: int, B: int):
        """Multiplication map ``piece(A) -> piece(B)`` for ``B ⊆ A``."""
        if B & ~A:
            raise ValueError(f"{fmt_vars(B)} is not a subset of {fmt_vars(A)}")
        if A == B:
            return linalg.identity(self.dims[A])
        key = (A, B)
        hit = self._comp.get(key)
        if hit is not None:
            return hit
        if not self.dims[A] or not self.dims[B]:
            out = linalg.zeros(self.dims[B], self.dims[A])
        else:
            low = (A & ~B) & -(A & ~B)
            j = low.bit_length()
            step = self.umap(A, j)
            rest = self.composite(A ^ low, B)
            out = linalg.matmul(self.field, rest, step, inner=self.dims[A ^ low], ncols=self.dims[A])
        self._comp[key] = out
        return out

    def is_zero(self) -> bool:
        return not any(self.dims)

    def nonzero_patterns(self) -> list[int]:
        return sorted((N for N, d in enumerate(self.dims) if d), key=subset_key)

    def check_commuting(self) -> list[tuple[int, int, int]]:
        """Violations ``(N, i, j)`` of the commuting-square invariant."""
        bad = []
        F = self.field
        for N in range(1 << self.n):
            if not self.dims[N]:
                continue
            for i, j in combinations(members(N), 2):
                bi, bj = 1 << (i - 1), 1 << (j - 1)
                t = N ^ bi ^ bj
                if not self.dims[t]:
                    continue
                a = linalg.matmul(F, self.umap(N ^ bj, i), self.umap(N, j),
                                  inner=self.dims[N ^ bj], ncols=self.dims[N])
                b = linalg.matmul(F, self.umap(N ^ bi, j), self.umap(N, i),
                                  inner=self.dims[N ^ bi], ncols=self.dims[N])
                if a != b:
                    bad.append((N, i, j))
        return bad

    def table(self) -> list[tuple[tuple[int, ...], int]]:
        return [(members(N), self.dims[N]) for N in self.nonzero_patterns()]

    def __repr__(self):
        body = ", ".join(f"{fmt_vars(N)}:{self.dims[N]}" for N in self.nonzero_patterns())
        return f"PatternModule(n={self.n}, {{{body}}})"


def zero_module(ring: RingConfig) -> PatternModule:
    return PatternModule(ring, [0] * (1 << ring.n))


def ring_module(ring: RingConfig) -> PatternModule:
    """``R`` itself: ``R_a = k`` exactly when ``a >= 0``."""
    dims = [0] * (1 << ring.n)
    dims[0] = 1
    return PatternModule(ring, dims)


def injective_hull(ring: RingConfig, S: int) -> PatternModule:
    """Graded injective hull ``E(R/p_S)``: ``k`` at every pattern containing ``S``."""
    dims = [1 if N & S == S else 0 for N in range(1 << ring.n)]
    umaps = {}
    for N in range(1 << ring.n):
        if not dims[N]:
            continue
        for j in members(N & ~S):
            umaps[(N, j)] = [[1]]
    return PatternModule(ring, dims, umaps)


def piece_dim(M: PatternModule, a) -> int:
    if len(a) != M.n:
        raise ValueError(f"degree has length {len(a)}, ring has {M.n} variables")
    N = 0
    for j, x in enumerate(a):
        if x < 0:
            N |= 1 << j
    return M.dims[N]


def invert_variables(M: PatternModule, W: int) -> PatternModule:
    """``M[x_j^{-1} : j in W]``; its piece at ``N`` is ``piece(N - W)``."""
    if not W:
        return M
    dims = [M.dims[N & ~W] for N in range(1 << M.n)]
    umaps = {}
    for N in range(1 << M.n):
        if not dims[N]:
            continue
        base = N & ~W
        for j in members(N):
            if (1 << (j - 1)) & W:
                umaps[(N, j)] = linalg.identity(dims[N])
            else:
                umaps[(N, j)] = M.umap(base, j)
    return PatternModule(M.ring, dims, umaps)


# -- complexes -------------------------------------------------------------

@dataclass
class PatternComplex:
    """Degree slice of a Čech/Taylor-type complex built on ``supports``.

    Term ``t`` is the sum over ``t``-subsets ``T`` of
    ``piece(N - union(U_T))``; only nonzero pieces are kept.
    ``diffs[t]`` maps term ``t`` to term ``t + 1``.
    """

    N: int
    supports: tuple[int, ...]
    terms: list = dc_field(default_factory=list)   # per t: [(T, P, offset, dim)]
    index: list = dc_field(default_factory=list)   # per t: {T: (P, offset, dim)}
    dims: list = dc_field(default_factory=list)
    diffs: list = dc_field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.supports)

    def quotient(self, F, p: int) -> linalg.Quotient:
        if p < 0 or p > self.length:
            return linalg.Quotient(F, 0, [], [])
        dim = self.dims[p]
        bounds = []
        if p > 0 and self.dims[p - 1]:
            d = self.diffs[p - 1]
            for c in range(self.dims[p - 1]):
                col = {r: d[r][c] for r in range(dim) if d[r][c]}
                if col:
                    bounds.append(col)
        if p < self.length and self.dims[p + 1]:
            cycles = linalg.nullspace(F, self.diffs[p], dim)
        else:
            cycles = [{i: 1} for i in range(dim)]
        return linalg.Quotient(F, dim, bounds, cycles)

    def cohomology_dims(self, F) -> list[int]:
        ranks = []
        for t in range(self.length):
            if self.dims[t] and self.dims[t + 1]:
                ranks.append(linalg.rank(F, self.diffs[t], self.dims[t]))
            else:
                ranks.append(0)
        out = []
        for t in range(self.length + 1):
            r_in = ranks[t - 1] if t > 0 else 0
            r_out = ranks[t] if t < self.length else 0
            out.append(self.dims[t] - r_in - r_out)
        return out

    def check_dd(self, F) -> bool:
        for t in range(self.length - 1):
            a, b = self.diffs[t], self.diffs[t + 1]
            if not self.dims[t] or not self.dims[t + 2] or not self.dims[t + 1]:
                continue
            prod = linalg.matmul(F, b, a, inner=self.dims[t + 1], ncols=self.dims[t])
            if any(any(r) for r in prod):
                return False
        return True


def _unions(supports):
    k = len(supports)
    out = [0] * (1 << k)
    for m in range(1, 1 << k):
        low = m & -m
        out[m] = out[m ^ low] | supports[low.bit_length() - 1]
    return out


def build_complex(M: PatternModule, supports, N: int, unions=None) -> PatternComplex:
    supports = tuple(supports)
    k = len(supports)
    if unions is None:
        unions = _unions(supports)
    C = PatternComplex(N, supports)
    dims = M.dims
    for t in range(k + 1):
        row, idx, off = [], {}, 0
        for T in combinations(range(k), t):
            tm = 0
            for i in T:
                tm |= 1 << i
            P = N & ~unions[tm]
            d = dims[P]
            if d:
                row.append((T, P, off, d))
                idx[T] = (P, off, d)
                off += d
        C.terms.append(row)
        C.index.append(idx)
        C.dims.append(off)
    for t in range(k):
        D = linalg.zeros(C.dims[t + 1], C.dims[t])
        src = C.index[t]
        for T, P, ro, rd in C.terms[t + 1]:
            for pos, i in enumerate(T):
                Tm = T[:pos] + T[pos + 1:]
                hit = src.get(Tm)
                if hit is None:
                    continue
                Pm, co, cd = hit
                blk = M.composite(Pm, P)
                sgn = -1 if pos % 2 else 1
                for r in range(rd):
                    br = blk[r]
                    Dr = D[ro + r]
                    for c in range(cd):
                        if br[c]:
                            Dr[co + c] = sgn * br[c]
        C.diffs.append(D)
    return C


def apply_chain_map(M: PatternModule, src: PatternComplex, dst: PatternComplex, p: int, v: dict) -> dict:
    """Image of ``v`` under the termwise multiplication map ``src -> dst``."""
    F = M.field
    out: dict = {}
    if p > src.length:
        return out
    for T, P, off, d in src.terms[p]:
        hit = dst.index[p].get(T)
        if hit is None:
            continue
        part = {c: v[off + c] for c in range(d) if v.get(off + c)}
        if not part:
            continue
        P2, off2, d2 = hit
        blk = M.composite(P, P2)
        for r, val in linalg.matvec(F, blk, part).items():
            out[off2 + r] = out.get(off2 + r, 0) + val
    if F.char:
        out = {k: v % F.char for k, v in out.items() if v % F.char}
    else:
        out = {k: v for k, v in out.items() if v}
    return out


def _meets_all(N: int, supports) -> bool:
    return all(U & N for U in supports)


class CechComplex:
    """Čech complex of a pattern module along the generators of a squarefree ideal."""

    def __init__(self, ideal: SquarefreeMonomialIdeal, module: PatternModule | None = None, char: int = 0):
        if ideal.is_zero or ideal.is_unit:
            raise IdealError("Čech complex needs a nonzero proper ideal")
        self.ideal = ideal
        self.module = module if module is not None else ring_module(RingConfig(ideal.n, char))
        if self.module.n != ideal.n:
            raise ValueError("module and ideal live in different rings")
        self.supports = ideal.gens
        self._unions = _unions(self.supports)

    def pattern_complex(self, N: int) -> PatternComplex:
        return build_complex(self.module, self.supports, N, self._unions)


def cech_complex(I: SquarefreeMonomialIdeal, char: int = 0) -> CechComplex:
    return CechComplex(I, char=char)


def _quotient_task(args):
    M, supports, N, p = args
    C = build_complex(M, supports, N)
    return C, C.quotient(M.field, p)


def local_cohomology_of(J: SquarefreeMonomialIdeal, M: PatternModule, p: int) -> PatternModule:
    """``H^p_J(M)`` as a pattern module (``p = 0`` gives ``Γ_J(M)``)."""
    if J.is_zero or J.is_unit:
        raise IdealError("local cohomology needs a nonzero proper ideal")
    if J.n != M.n:
        raise ValueError("module and ideal live in different rings")
    n = M.n
    supports = J.gens
    if p < 0 or p > len(supports):
        return zero_module(M.ring)
    # A generator that is a unit on the pattern makes the slice contractible.
    todo = [N for N in range(1 << n) if _meets_all(N, supports)]
    results = pmap(_quotient_task, [(M, supports, N, p) for N in todo])
    cx, quo = {}, {}
    for N, (C, Q) in zip(todo, results):
        if len(Q):
            cx[N], quo[N] = C, Q
    dims = [len(quo[N]) if N in quo else 0 for N in range(1 << n)]
    umaps = {}
    for N, Q in quo.items():
        for j in members(N):
            tgt = N ^ (1 << (j - 1))
            Qt = quo.get(tgt)
            if Qt is None:
                continue
            cols = [Qt.coords(apply_chain_map(M, cx[N], cx[tgt], p, rep)) for rep in Q.reps]
            umaps[(N, j)] = [[cols[c][r] for c in range(len(cols))] for r in range(len(Qt))]
    return PatternModule(M.ring, dims, umaps)


@lru_cache(maxsize=256)
def local_cohomology(I: SquarefreeMonomialIdeal, i: int, char: int = 0) -> PatternModule:
    """``H^i_I(R)`` for the polynomial ring in ``I.n`` variables."""
    if I.is_zero or I.is_unit:
        raise IdealError("local cohomology needs a nonzero proper ideal")
    return local_cohomology_of(I, ring_module(RingConfig(I.n, char)), i)


def _dims_task(args):
    M, supports, N = args
    return build_complex(M, supports, N).cohomology_dims(M.field)


@lru_cache(maxsize=256)
def local_cohomology_dims(I: SquarefreeMonomialIdeal, char: int = 0) -> dict[int, list[int]]:
    """Piece dimensions of every ``H^i_I(R)``: ``{i: dims by pattern}``."""
    if I.is_zero or I.is_unit:
        raise IdealError("local cohomology needs a nonzero proper ideal")
    R = ring_module(RingConfig(I.n, char))
    k = len(I.gens)
    todo = [N for N in range(1 << I.n) if _meets_all(N, I.gens)]
    res = pmap(_dims_task, [(R, I.gens, N) for N in todo])
    out = {i: [0] * (1 << I.n) for i in range(k + 1)}
    for N, ds in zip(todo, res):
        for i, d in enumerate(ds):
            out[i][N] = d
    return out


def module_equal(M1: PatternModule, M2: PatternModule) -> bool:
    """Same piece dimensions and same ranks of every composite u-map."""
    if M1.ring != M2.ring:
        raise ValueError("modules live over different rings")
    if M1.dims != M2.dims:
        return False
    F = M1.field
    for A in range(1 << M1.n):
        if not M1.dims[A]:
            continue
        for B in subsets(A):
            if B == A or not M1.dims[B]:
                continue
            r1 = linalg.rank(F, M1.composite(A, B), M1.dims[A])
            r2 = linalg.rank(F, M2.composite(A, B), M2.dims[A])
            if r1 != r2:
                return False
    return True


def module_difference(M1: PatternModule, M2: PatternModule) -> str | None:
    """Human-readable first disagreement found by :func:`module_equal`."""
    for N in range(1 << M1.n):
        if M1.dims[N] != M2.dims[N]:
            return f"piece {fmt_vars(N)}: {M1.dims[N]} vs {M2.dims[N]}"
    F = M1.field
    for A in range(1 << M1.n):
        for B in subsets(A):
            if B == A or not M1.dims[A] or not M1.dims[B]:
                continue
            r1 = linalg.rank(F, M1.composite(A, B), M1.dims[A])
            r2 = linalg.rank(F, M2.composite(A, B), M2.dims[A])
            if r1 != r2:
                return f"map {fmt_vars(A)}->{fmt_vars(B)}: rank {r1} vs {r2}"
    return None


__all__ = [
    "PatternModule",
    "PatternComplex",
    "CechComplex",
    "apply_chain_map",
    "build_complex",
    "cech_complex",
    "injective_hull",
    "invert_variables",
    "local_cohomology",
    "local_cohomology_dims",
    "local_cohomology_of",
    "module_difference",
    "module_equal",
    "piece_dim",
    "popcount",
    "ring_module",
    "zero_module",
]
