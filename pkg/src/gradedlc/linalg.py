"""Exact linear algebra over the rationals or a prime field.

Matrices are plain lists of rows.  Elimination works on sparse rows
(``dict`` column -> nonzero entry) because the coboundary matrices that
appear here are signed 0/1 matrices with a handful of entries per row.
Rational entries are kept as ``int`` whenever the denominator is 1, so
the common case never touches :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


class Field:
    """The base field: ``char == 0`` for the rationals, else GF(char)."""

    __slots__ = ("char",)

    def __init__(self, char: int = 0):
        if char != 0 and not _is_prime(char):
            raise ValueError(f"characteristic must be 0 or a prime, got {char}")
        self.char = char

    def __repr__(self):
        return "QQ" if self.char == 0 else f"GF({self.char})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.char == self.char

    def __hash__(self):
        return hash(("Field", self.char))

    def __reduce__(self):
        return (Field, (self.char,))

    def coerce(self, x):
        if self.char:
            return int(x) % self.char
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else x

    def inv(self, x):
        p = self.char
        if p:
            return pow(x, p - 2, p)
        if x == 1 or x == -1:
            return int(x)
        y = Fraction(1) / x
        return y.numerator if y.denominator == 1 else y


@lru_cache(maxsize=None)
def field(char: int = 0) -> Field:
    return Field(char)


def _fix(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def to_sparse(row) -> dict:
    return {j: v for j, v in enumerate(row) if v}


def from_sparse(row: dict, ncols: int) -> list:
    out = [0] * ncols
    for j, v in row.items():
        out[j] = v
    return out


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Pivots are only ever chosen among columns ``< ncols``; further
    columns act as passive tags that record how each stored row was
    assembled (used for quotient coordinates).
    """

    def __init__(self, F: Field, ncols: int):
        self.F = F
        self.ncols = ncols
        self.rows: dict[int, dict] = {}  # pivot column -> row with pivot 1

    def __len__(self):
        return len(self.rows)

    def reduce(self, row: dict) -> dict:
        """Return ``row`` reduced against the stored pivots (new dict)."""
        p = self.F.char
        if p:
            r = {j: v % p for j, v in row.items() if v % p}
        else:
            r = dict(row)
        for c in [c for c in r if c in self.rows]:
            a = r.get(c)
            if not a:
                continue
            for j, v in self.rows[c].items():
                if p:
                    w = (r.get(j, 0) - a * v) % p
                else:
                    w = _fix(r.get(j, 0) - a * v)
                if w:
                    r[j] = w
                else:
                    r.pop(j, None)
        return r

    def insert(self, row: dict) -> bool:
        """Add ``row`` to the span; return True if the rank grew."""
        r = self.reduce(row)
        cands = [c for c in r if c < self.ncols]
        if not cands:
            return False
        c = min(cands)
        p = self.F.char
        s = self.F.inv(r[c])
        if p:
            r = {j: v * s % p for j, v in r.items()}
        else:
            r = {j: _fix(v * s) for j, v in r.items()}
        for other in self.rows.values():
            a = other.get(c)
            if not a:
                continue
            for j, v in r.items():
                if p:
                    w = (other.get(j, 0) - a * v) % p
                else:
                    w = _fix(other.get(j, 0) - a * v)
                if w:
                    other[j] = w
                else:
                    other.pop(j, None)
        self.rows[c] = r
        return True

    def contains(self, row: dict) -> bool:
        r = self.reduce(row)
        return not any(c < self.ncols for c in r)


def echelon_of_rows(F: Field, rows, ncols: int) -> Echelon:
    E = Echelon(F, ncols)
    for row in rows:
        E.insert(to_sparse(row) if not isinstance(row, dict) else row)
    return E


def rank(F: Field, M, ncols: int | None = None) -> int:
    """Rank of ``M``; over the rationals this uses fraction-free elimination."""
    if not M:
        return 0
    if ncols is None:
        ncols = len(M[0])
    if ncols == 0:
        return 0
    if F.char == 0:
        return _bareiss_rank(M, ncols)
    return len(echelon_of_rows(F, M, ncols))


def _bareiss_rank(M, ncols: int) -> int:
    # Clear denominators row by row, then run Bareiss on sparse integer rows.
    rows = []
    for row in M:
        sp = to_sparse(row) if not isinstance(row, dict) else dict(row)
        if not sp:
            continue
        den = 1
        for v in sp.values():
            if type(v) is Fraction:
                den = den * v.denominator // _gcd(den, v.denominator)
        if den != 1:
            sp = {j: int(v * den) for j, v in sp.items()}
        rows.append(sp)
    r = 0
    prev = 1
    for c in range(ncols):
        piv = None
        best = None
        for i in range(r, len(rows)):
            if rows[i].get(c):
                if best is None or len(rows[i]) < best:
                    piv, best = i, len(rows[i])
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        a = pr[c]
        for i in range(r + 1, len(rows)):
            row = rows[i]
            b = row.get(c, 0)
            keys = set(row) | set(pr)
            new = {}
            for j in keys:
                if j < c:
                    continue
                w = a * row.get(j, 0) - b * pr.get(j, 0)
                if w:
                    # exact division is the Bareiss invariant
                    new[j] = w // prev
            rows[i] = new
        prev = a
        r += 1
        rows = rows[:r] + [row for row in rows[r:] if row]
    return r


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def nullspace(F: Field, M, ncols: int) -> list[dict]:
    """Sparse basis of ``{v : M v = 0}`` (vectors of length ``ncols``)."""
    E = echelon_of_rows(F, M, ncols)
    pivots = E.rows
    p = F.char
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = {f: 1}
        for c, row in pivots.items():
            a = row.get(f)
            if a:
                v[c] = (-a) % p if p else _fix(-a)
        basis.append(v)
    return basis


def matvec(F: Field, M, v: dict) -> dict:
    """``M`` (dense rows) applied to a sparse vector."""
    p = F.char
    out = {}
    for i, row in enumerate(M):
        s = 0
        for j, a in v.items():
            b = row[j]
            if b:
                s += a * b
        if p:
            s %= p
        else:
            s = _fix(s)
        if s:
            out[i] = s
    return out


def matmul(F: Field, A, B, inner: int | None = None, ncols: int | None = None):
    """Product ``A @ B`` with explicit shapes so empty matrices behave."""
    if inner is None:
        inner = len(B)
    if ncols is None:
        ncols = len(B[0]) if B else 0
    p = F.char
    out = []
    for row in A:
        acc = [0] * ncols
        for k in range(inner):
            a = row[k]
            if not a:
                continue
            bk = B[k]
            for j in range(ncols):
                b = bk[j]
                if b:
                    acc[j] += a * b
        if p:
            acc = [x % p for x in acc]
        else:
            acc = [_fix(x) for x in acc]
        out.append(acc)
    return out


def identity(n: int):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m: int, n: int):
    return [[0] * n for _ in range(m)]


class Quotient:
    """Basis of a subquotient ``Z / B`` with a coordinate map.

    ``reps`` are vectors of the ambient space whose classes form a basis
    of ``Z/B``.  :meth:`coords` expresses any vector of ``Z`` in that
    basis; it raises if the vector is not in ``Z + span(reps)``.
    """

    def __init__(self, F: Field, dim: int, boundaries, cycles):
        self.F = F
        self.dim = dim
        self.reps: list[dict] = []
        E = Echelon(F, dim)
        for b in boundaries:
            E.insert(b)
        for z in cycles:
            tag = dim + len(self.reps)
            zz = dict(z)
            zz[tag] = 1
            if E.insert(zz):
                self.reps.append(dict(z))
            # a dependent cycle leaves no trace
        self._E = E

    def __len__(self):
        return len(self.reps)

    def coords(self, v: dict) -> list:
        r = self._E.reduce(v)
        dim = self.dim
        if any(c < dim for c in r):
            raise ValueError("vector is not a cycle of this subquotient")
        p = self.F.char
        out = [0] * len(self.reps)
        for c, a in r.items():
            out[c - dim] = (-a) % p if p else _fix(-a)
        return out
