"""Exact dense linear algebra over the rationals.

Scalars are ``fractions.Fraction`` (reduced, positive denominator, so the
"p/q" invariants hold for free).  Matrices are immutable and dense; the
elimination core clears every row to integers and runs fraction-free row
reduction with gcd stripping, which keeps intermediate entries small on the
sparse, mostly 0/1 systems this package produces.  Everything here is pure:
no floating point, no tolerances.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

Rational = Fraction
Vector = tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def vec_add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_scale(c: Fraction, a: Sequence[Fraction]) -> Vector:
    return tuple(c * x for x in a)


class QMatrix:
    """Immutable dense matrix of Fractions, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        ent = tuple(Fraction(e) for e in entries)
        if len(ent) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(ent)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ent)

    def __setattr__(self, *args):
        raise AttributeError("QMatrix is immutable")

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "QMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(r)
        return QMatrix(nrows, ncols, flat)

    @staticmethod
    def zeros(rows: int, cols: int) -> "QMatrix":
        return QMatrix(rows, cols, [_ZERO] * (rows * cols))

    @staticmethod
    def identity(n: int) -> "QMatrix":
        return QMatrix(n, n, [_ONE if i == j else _ZERO for i in range(n) for j in range(n)])

    @staticmethod
    def block_diag(blocks: Sequence["QMatrix"]) -> "QMatrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        flat = [_ZERO] * (rows * cols)
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                base = (r0 + i) * cols + c0
                flat[base:base + b.cols] = b.entries[i * b.cols:(i + 1) * b.cols]
            r0 += b.rows
            c0 += b.cols
        return QMatrix(rows, cols, flat)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return self.entries[j::self.cols]

    def row_list(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows,
                       [self.entries[i * self.cols + j]
                        for j in range(self.cols) for i in range(self.rows)])

    def __eq__(self, other) -> bool:
        return (isinstance(other, QMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._shape_check(other)
        return QMatrix(self.rows, self.cols,
                       [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._shape_check(other)
        return QMatrix(self.rows, self.cols,
                       [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "QMatrix":
        return QMatrix(self.rows, self.cols, [-a for a in self.entries])

    def __rmul__(self, c) -> "QMatrix":
        c = Fraction(c)
        return QMatrix(self.rows, self.cols, [c * a for a in self.entries])

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        n, k, m = self.rows, self.cols, other.cols
        flat = [_ZERO] * (n * m)
        for i in range(n):
            arow = self.entries[i * k:(i + 1) * k]
            out = i * m
            for t in range(k):
                a = arow[t]
                if a:
                    brow = other.entries[t * m:(t + 1) * m]
                    for j in range(m):
                        if brow[j]:
                            flat[out + j] += a * brow[j]
        return QMatrix(n, m, flat)

    def apply(self, vec: Sequence[Fraction]) -> Vector:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for i in range(self.rows):
            s = _ZERO
            base = i * self.cols
            for j, v in enumerate(vec):
                if v:
                    s += self.entries[base + j] * v
            out.append(s)
        return tuple(out)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def _shape_check(self, other: "QMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def __repr__(self):
        return f"QMatrix({self.rows}x{self.cols})"


# ---------------------------------------------------------------------------
# elimination core: integer rows, fraction-free updates, gcd stripping

def _int_rows(rows: Iterable[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for x in row:
            d = x.denominator
            if d != 1:
                den = den * d // gcd(den, d)
        ints = [x.numerator * (den // x.denominator) for x in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
            if g == 1:
                break
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def _strip_row(row: list[int]) -> list[int]:
    g = 0
    for v in row:
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return [v // g for v in row]
    return row


def _rref_int(rows: list[list[int]], ncols: int) -> list[int]:
    """In-place reduced row echelon form on integer rows; returns pivot columns."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        best = -1
        bestval = 0
        for i in range(r, nrows):
            v = rows[i][c]
            if v:
                av = abs(v)
                if best < 0 or av < bestval:
                    best, bestval = i, av
                    if av == 1:
                        break
        if best < 0:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        piv = rows[r]
        if piv[c] < 0:
            piv = rows[r] = [-x for x in piv]
        piv = rows[r] = _strip_row(piv)
        pv = piv[c]
        for i in range(nrows):
            if i == r:
                continue
            v = rows[i][c]
            if not v:
                continue
            row = rows[i]
            if pv == 1:
                rows[i] = _strip_row([x - v * y if y else x for x, y in zip(row, piv)])
            else:
                g = gcd(pv, v)
                a = pv // g
                b = v // g
                rows[i] = _strip_row([a * x - b * y for x, y in zip(row, piv)])
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def _rref_matrix(M: QMatrix) -> tuple[list[int], list[list[int]]]:
    rows = _int_rows(M.row(i) for i in range(M.rows))
    pivots = _rref_int(rows, M.cols)
    return pivots, rows


def rank(M: QMatrix) -> int:
    """Rank over the rationals."""
    pivots, _ = _rref_matrix(M)
    return len(pivots)


def kernel_basis(M: QMatrix) -> "Subspace":
    """Basis of the right kernel {v : Mv = 0}, one vector per free column."""
    pivots, rows = _rref_matrix(M)
    pivset = set(pivots)
    basis = []
    for f in range(M.cols):
        if f in pivset:
            continue
        v = [_ZERO] * M.cols
        v[f] = _ONE
        for k, pc in enumerate(pivots):
            num = rows[k][f]
            if num:
                v[pc] = Fraction(-num, rows[k][pc])
        basis.append(tuple(v))
    return Subspace(M.cols, basis, validate=False)


def solve(M: QMatrix, b: Sequence[Fraction]) -> Optional[Vector]:
    """Some x with Mx = b, or None when the system is inconsistent."""
    b = as_vector(b)
    if len(b) != M.rows:
        raise ValueError("right-hand side length mismatch")
    aug = _int_rows([list(M.row(i)) + [b[i]] for i in range(M.rows)])
    pivots = _rref_int(aug, M.cols + 1)
    if pivots and pivots[-1] == M.cols:
        return None
    x = [_ZERO] * M.cols
    for k, pc in enumerate(pivots):
        x[pc] = Fraction(aug[k][M.cols], aug[k][pc])
    return tuple(x)


# ---------------------------------------------------------------------------
# subspaces

class Subspace:
    """A linear subspace of Q^n given by an independent list of vectors."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: Iterable[Sequence], validate: bool = True):
        vecs = tuple(as_vector(v) for v in basis)
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError("basis vector has wrong length")
        if validate and vecs:
            rows = _int_rows(vecs)
            if len(_rref_int(rows, ambient_dim)) != len(vecs):
                raise ValueError("basis vectors are linearly dependent")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", vecs)

    def __setattr__(self, *args):
        raise AttributeError("Subspace is immutable")

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, [], validate=False)

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        eye = QMatrix.identity(ambient_dim)
        return Subspace(ambient_dim, [eye.row(i) for i in range(ambient_dim)], validate=False)

    @staticmethod
    def from_spanning(ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        """Reduce a spanning set to a canonical (reduced echelon) basis."""
        rows = _int_rows(as_vector(v) for v in vectors)
        pivots = _rref_int(rows, ambient_dim)
        basis = []
        for k, pc in enumerate(pivots):
            pv = rows[k][pc]
            basis.append(tuple(Fraction(x, pv) for x in rows[k]))
        return Subspace(ambient_dim, basis, validate=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def canonical(self) -> "Subspace":
        return Subspace.from_spanning(self.ambient_dim, self.basis)

    def contains(self, vec: Sequence) -> bool:
        v = as_vector(vec)
        if len(v) != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if not any(v):
            return True
        if not self.basis:
            return False
        rows = _int_rows(list(self.basis) + [v])
        return len(_rref_int(rows, self.ambient_dim)) == self.dim

    def equals(self, other: "Subspace") -> bool:
        if self.ambient_dim != other.ambient_dim or self.dim != other.dim:
            return False
        return self.canonical().basis == other.canonical().basis

    def basis_matrix(self) -> QMatrix:
        """Matrix with the basis vectors as columns (ambient_dim x dim)."""
        return QMatrix(self.ambient_dim, self.dim,
                       [b[i] for i in range(self.ambient_dim) for b in self.basis])

    def __repr__(self):
        return f"Subspace(dim {self.dim} in Q^{self.ambient_dim})"


def subspace_sum(A: Subspace, B: Subspace) -> Subspace:
    if A.ambient_dim != B.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return Subspace.from_spanning(A.ambient_dim, list(A.basis) + list(B.basis))


def subspace_intersection(A: Subspace, B: Subspace) -> Subspace:
    if A.ambient_dim != B.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if A.dim == 0 or B.dim == 0:
        return Subspace.zero(A.ambient_dim)
    # Solve sum(lam_i a_i) = sum(mu_j b_j); kernel of [A | -B] as columns.
    n = A.ambient_dim
    k, l = A.dim, B.dim
    flat = []
    for i in range(n):
        flat.extend(a[i] for a in A.basis)
        flat.extend(-b[i] for b in B.basis)
    M = QMatrix(n, k + l, flat)
    vecs = []
    for sol in kernel_basis(M).basis:
        lam = sol[:k]
        v = [_ZERO] * n
        for c, a in zip(lam, A.basis):
            if c:
                for i in range(n):
                    v[i] += c * a[i]
        vecs.append(tuple(v))
    return Subspace.from_spanning(n, vecs)


def restrict_map(M: QMatrix, A: Subspace) -> QMatrix:
    """Matrix of M on A's basis; the target stays in ambient coordinates."""
    if M.cols != A.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    images = [M.apply(b) for b in A.basis]
    return QMatrix(M.rows, A.dim,
                   [images[j][i] for i in range(M.rows) for j in range(A.dim)])
