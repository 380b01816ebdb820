"""Exact dense linear algebra: rank and right kernels.

Two engines sit behind :class:`Matrix`:

* rationals -- rows are scaled to integers and reduced with Bareiss'
  fraction-free elimination, so every intermediate is an exact integer;
* GF(p) -- ordinary Gaussian elimination on numpy arrays.  For ``p < 2**31``
  products of residues fit in int64; larger moduli fall back to object arrays.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .errors import BackendMismatchError
from .fields import Fp, common_backend, to_residue

_INT64_SAFE = 1 << 31


class Matrix:
    """Immutable matrix over a single backend (rationals or one GF(p))."""

    __slots__ = ("rows", "nrows", "ncols", "p")

    def __init__(self, rows: Sequence[Sequence], ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        object.__setattr__(self, "p", common_backend(x for r in rows for x in r))
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __repr__(self):
        field = "QQ" if self.p is None else f"GF({self.p})"
        return f"Matrix({self.nrows}x{self.ncols} over {field})"

    def _residues(self) -> np.ndarray:
        return residue_array(self.rows, self.p, self.ncols)

    def rank(self) -> int:
        return rank(self)

    def kernel_basis(self) -> list[list]:
        return kernel_basis(self)

    def apply(self, v: Sequence) -> list:
        """Matrix-vector product, exact."""
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        if self.p is not None:
            common_backend(list(v) + [Fp(0, self.p)])
        return [sum((a * b for a, b in zip(row, v)), Fraction(0) if self.p is None else Fp(0, self.p))
                for row in self.rows]


def rank(m: Matrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if m.p is None:
        return bareiss_rank(integer_rows(m.rows))
    return rank_mod_p(m._residues(), m.p)


def kernel_basis(m: Matrix) -> list[list]:
    """Basis of ``{v : m v = 0}``, one vector per free column."""
    if m.p is None:
        return [[Fraction(x) for x in v] for v in kernel_rational(m.rows, m.ncols)]
    basis = kernel_mod_p(m._residues(), m.p)
    return [[Fp(int(x), m.p) for x in v] for v in basis]


# --------------------------------------------------------------------------
# rationals

def integer_rows(rows) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank is unchanged)."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fp):
                raise BackendMismatchError("prime-field entry in a rational matrix")
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    a = [list(r) for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        pv = pr[c]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            if f == 0:
                # Bareiss division still applies to untouched rows
                for k in range(c + 1, ncols):
                    row[k] = row[k] * pv // prev
            else:
                for k in range(c + 1, ncols):
                    row[k] = (row[k] * pv - f * pr[k]) // prev
            row[c] = 0
        prev = pv
        r += 1
        if r == nrows:
            break
    return r


def rref_rational(rows, ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals and the pivot columns."""
    a = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def kernel_rational(rows, ncols: int) -> list[list[Fraction]]:
    ech, pivots = rref_rational(integer_rows(rows), ncols)
    return _kernel_from_rref(ech, pivots, ncols, Fraction(1), Fraction(0), lambda x: -x)


def _kernel_from_rref(ech, pivots, ncols, one, zero, neg):
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, pc in zip(ech, pivots):
            v[pc] = neg(row[f])
        basis.append(v)
    return basis


# --------------------------------------------------------------------------
# prime fields

def residue_array(rows, p: int, ncols: int | None = None) -> np.ndarray:
    dtype = np.int64 if p < _INT64_SAFE else object
    data = [[to_residue(x, p) for x in row] for row in rows]
    if not data:
        return np.zeros((0, ncols or 0), dtype=dtype)
    return np.array(data, dtype=dtype)


def _echelon_mod_p(a: np.ndarray, p: int, reduced: bool) -> tuple[np.ndarray, list[int]]:
    """Row-reduce ``a`` in place modulo ``p``; returns (a, pivot columns)."""
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = a[r, c:] * inv % p
        lo = 0 if reduced else r + 1
        col = a[lo:, c].copy()
        if not reduced:
            targets = np.flatnonzero(col)
        else:
            col[r - lo] = 0
            targets = np.flatnonzero(col)
        if targets.size:
            rows_idx = targets + lo
            a[rows_idx, c:] = (a[rows_idx, c:] - np.outer(col[targets], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank_mod_p(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    if a.dtype != object and p >= _INT64_SAFE:
        a = a.astype(object)
    _, pivots = _echelon_mod_p(a.copy(), p, reduced=False)
    return len(pivots)


def kernel_mod_p(a: np.ndarray, p: int) -> list[list[int]]:
    ncols = a.shape[1]
    if a.shape[0] == 0:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    ech, pivots = _echelon_mod_p(a.copy(), p, reduced=True)
    rows = [[int(x) for x in ech[i]] for i in range(len(pivots))]
    return _kernel_from_rref(rows, pivots, ncols, 1, 0, lambda x: (-x) % p)
