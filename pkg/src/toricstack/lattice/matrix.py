"""Exact integer and rational linear algebra.

Everything here works on Python ints (arbitrary precision) and
``fractions.Fraction``; no floating point is ever used. Internal helpers take
plain lists of rows, ``IntegerMatrix`` is the immutable value type used at
module boundaries.
"""
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

Vector = Tuple[int, ...]
Rows = List[List[int]]


class IntegerMatrix:
    """Immutable integer matrix stored row-major.

    Parameters
    ----------
    rows : iterable of iterables of int
    ncols : int, optional
        Required when ``rows`` is empty.
    """

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, rows: Iterable[Iterable[int]] = (), ncols: Optional[int] = None):
        data = tuple(tuple(_as_int(x) for x in r) for r in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise ValueError(f"row of length {len(r)} in a matrix with {ncols} columns")
        self.nrows = len(data)
        self.ncols = ncols
        self._rows = data

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Sequence[int]) -> "IntegerMatrix":
        if len(entries) != nrows * ncols:
            raise ValueError("entries length must equal nrows * ncols")
        return cls((entries[i * ncols:(i + 1) * ncols] for i in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(identity(n), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntegerMatrix":
        return cls(([0] * ncols for _ in range(nrows)), ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> "IntegerMatrix":
        columns = [tuple(c) for c in columns]
        return cls(([c[i] for c in columns] for i in range(nrows)), len(columns))

    @property
    def entries(self) -> Tuple[int, ...]:
        return tuple(x for r in self._rows for x in r)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def T(self) -> "IntegerMatrix":
        return IntegerMatrix(transpose(self._rows, self.ncols), self.nrows)

    def row(self, i: int) -> Vector:
        return self._rows[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> List[Vector]:
        return [self.col(j) for j in range(self.ncols)]

    def tolist(self) -> Rows:
        return [list(r) for r in self._rows]

    def apply(self, v: Sequence[int]) -> Vector:
        """Matrix-vector product ``self @ v``."""
        return tuple(dot(r, v) for r in self._rows)

    def det(self) -> int:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return determinant(self._rows)

    def rank(self) -> int:
        return rank(self._rows)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return IntegerMatrix(matmul(self._rows, other._rows, other.ncols), other.ncols)

    def __iter__(self):
        return iter(self._rows)

    def __len__(self):
        return self.nrows

    def __getitem__(self, key):
        if isinstance(key, tuple):
            i, j = key
            return self._rows[i][j]
        return self._rows[key]

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        return f"IntegerMatrix({[list(r) for r in self._rows]!r}, ncols={self.ncols})"


def _as_int(x) -> int:
    if isinstance(x, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    if hasattr(x, "__index__"):
        return x.__index__()
    raise TypeError(f"non-integer entry {x!r}")


# -- elementary helpers ------------------------------------------------------

def identity(n: int) -> Rows:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(rows: Sequence[Sequence[int]], ncols: int) -> Rows:
    return [[r[j] for r in rows] for j in range(ncols)]


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], bcols: int) -> Rows:
    bt = transpose(b, bcols)
    return [[dot(r, c) for c in bt] for r in a]


def vec_gcd(v: Iterable[int]) -> int:
    return reduce(gcd, v, 0)


def primitive(v: Sequence) -> Vector:
    """First lattice point on the ray through ``v`` (accepts Fractions)."""
    if any(isinstance(x, Fraction) for x in v):
        den = reduce(lambda a, b: a * b // gcd(a, b), (Fraction(x).denominator for x in v), 1)
        v = [int(Fraction(x) * den) for x in v]
    g = vec_gcd(v)
    if g == 0:
        raise ValueError("the zero vector spans no ray")
    return tuple(int(x) // g for x in v)


def neg(v: Sequence[int]) -> Vector:
    return tuple(-x for x in v)


# -- rational elimination ------------------------------------------------------

def row_echelon(rows: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q, by fraction-free elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rk = 0
    for c in range(ncols):
        p = next((i for i in range(rk, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[rk], m[p] = m[p], m[rk]
        pv = m[rk][c]
        for i in range(rk + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c]
                m[i] = [pv * x - f * y for x, y in zip(m[i], m[rk])]
        rk += 1
        if rk == len(m):
            break
    return rk


def solve_rational(rows: Sequence[Sequence], b: Sequence) -> Optional[List[Fraction]]:
    """One solution x of ``A x = b`` over Q (free variables set to 0), or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [bi] for r, bi in zip(rows, b)]
    ech, piv = row_echelon(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for r, c in zip(ech, piv):
        x[c] = r[-1]
    return x


def inverse_rational(rows: Sequence[Sequence]) -> List[List[Fraction]]:
    n = len(rows)
    aug = [list(r) + e for r, e in zip(rows, identity(n))]
    ech, piv = row_echelon(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [r[n:] for r in ech]


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# -- lattices ------------------------------------------------------------------

def hermite_with_transform(rows: Sequence[Sequence[int]], ncols: int) -> Tuple[Rows, Rows]:
    """Row-style Hermite normal form ``H = U A`` with ``U`` unimodular.

    Pivots are positive and entries above a pivot lie in ``[0, pivot)``; zero
    rows of ``H`` sit at the bottom.
    """
    h = [list(r) for r in rows]
    m = len(h)
    u = identity(m)
    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if h[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(h[i][c]))
            h[r], h[p] = h[p], h[r]
            u[r], u[p] = u[p], u[r]
            clean = True
            for i in range(r + 1, m):
                if h[i][c]:
                    q = h[i][c] // h[r][c]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if h[i][c]:
                        clean = False
            if clean:
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return h, u


def hermite_basis(rows: Sequence[Sequence[int]], ncols: int) -> List[Vector]:
    """Canonical basis (nonzero HNF rows) of the lattice spanned by ``rows``."""
    h, _ = hermite_with_transform(rows, ncols)
    return [tuple(r) for r in h if any(r)]


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> List[Vector]:
    """Canonical basis of ``{x in Z^ncols : A x = 0}``."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return [tuple(r) for r in identity(ncols)]
    h, u = hermite_with_transform(transpose(rows, ncols), len(rows))
    kern = [u[i] for i in range(ncols) if not any(h[i])]
    return hermite_basis(kern, ncols)


def saturation(rows: Sequence[Sequence[int]], ncols: int) -> List[Vector]:
    """Canonical basis of ``span_Q(rows) ∩ Z^ncols``."""
    return integer_kernel(integer_kernel(rows, ncols), ncols)


def lattice_intersection(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], ncols: int) -> List[Vector]:
    """Canonical basis of ``span_Z(a) ∩ span_Z(b)``."""
    a = hermite_basis(a, ncols)
    b = hermite_basis(b, ncols)
    if not a or not b:
        return []
    # x = sum alpha_i a_i = sum beta_j b_j
    cols = list(a) + [neg(v) for v in b]
    kern = integer_kernel(transpose(cols, ncols), len(cols))
    return hermite_basis([[dot(k[:len(a)], [v[c] for v in a]) for c in range(ncols)] for k in kern], ncols)


def coordinates_in_basis(v: Sequence[int], basis: Sequence[Sequence[int]]) -> Optional[Vector]:
    """Integer coordinates of ``v`` in a lattice basis, or None if ``v`` is outside the lattice."""
    if not basis:
        return () if not any(v) else None
    sol = solve_rational(transpose(basis, len(v)), v)
    if sol is None or any(x.denominator != 1 for x in sol):
        return None
    return tuple(int(x) for x in sol)


def combine(coeffs: Sequence[int], basis: Sequence[Sequence[int]], ncols: int) -> Vector:
    return tuple(sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(ncols))


# -- Smith normal form -----------------------------------------------------------

def _smith(a: Rows, m: int, n: int) -> Tuple[Rows, Rows, Rows]:
    s = [list(r) for r in a]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in s:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        s[dst] = [x - q * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col dst -= q * col src
        for r in s:
            r[dst] -= q * r[src]
        for r in v:
            r[dst] -= q * r[src]

    for t in range(min(m, n)):
        cands = [(abs(s[i][j]), i, j) for i in range(t, m) for j in range(t, n) if s[i][j]]
        if not cands:
            break
        _, i0, j0 = min(cands)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(i, t, s[i][t] // s[t][t])
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(j, t, s[t][j] // s[t][t])
            rest = [(abs(s[i][t]), i, t) for i in range(t + 1, m) if s[i][t]]
            rest += [(abs(s[t][j]), t, j) for j in range(t + 1, n) if s[t][j]]
            if rest:
                _, i0, j0 = min(rest)
                if i0 != t:
                    swap_rows(t, i0)
                else:
                    swap_cols(t, j0)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if s[i][j] % s[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return s, u, v


def smith_normal_form(m: IntegerMatrix) -> Tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Smith normal form ``u @ m @ v == s``.

    ``u`` and ``v`` are unimodular and ``s`` is diagonal with nonnegative
    entries ``d_1 | d_2 | ...`` (zeros last).

    >>> s, u, v = smith_normal_form(IntegerMatrix([[2, 4], [6, 8]]))
    >>> s
    IntegerMatrix([[2, 0], [0, 4]], ncols=2)
    """
    s, u, v = _smith(m.tolist(), m.nrows, m.ncols)
    return IntegerMatrix(s, m.ncols), IntegerMatrix(u, m.nrows), IntegerMatrix(v, m.ncols)


def smith_diagonal(rows: Sequence[Sequence[int]], m: int, n: int) -> List[int]:
    s, _, _ = _smith([list(r) for r in rows], m, n)
    return [s[i][i] for i in range(min(m, n))]


def determinantal_divisors(rows: Sequence[Sequence[int]], m: int, n: int) -> List[int]:
    """Invariant factors from gcds of k x k minors (independent of elimination)."""
    dets = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for ri in combinations(range(m), k):
            for ci in combinations(range(n), k):
                g = gcd(g, determinant([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        dets.append(g)
    factors = [dets[k] // dets[k - 1] for k in range(1, len(dets))]
    return factors + [0] * (min(m, n) - len(factors))
