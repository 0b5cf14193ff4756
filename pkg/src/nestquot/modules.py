"""Finite-length modules over Q[x_1..x_m] presented by commuting matrices.

A module of length n is m pairwise-commuting n x n matrices: the actions of
the variables on a basis of the underlying space.  Hom spaces are solved as
intertwiner equations, Ext^1 comes from the Koszul-type complex attached to
the m commuting actions, and supports are joint generalized eigenspaces
(restricted to rational points, which is all the exact arithmetic admits).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

from .errors import IrrationalSupport, NotCommuting, ResourceBoundExceeded
from .linalg import (QMatrix, Subspace, Vector, as_vector, kernel_basis, rank, solve)

_ZERO = Fraction(0)
_ONE = Fraction(1)


class FiniteModule:
    """A finite-length module: dim n, m commuting action matrices."""

    __slots__ = ("num_vars", "dim", "actions")

    def __init__(self, num_vars: int, actions: Sequence[QMatrix], check: bool = True):
        if num_vars < 1 or len(actions) != num_vars:
            raise ValueError("need one action matrix per variable")
        dim = actions[0].rows
        for a in actions:
            if a.rows != dim or a.cols != dim:
                raise ValueError("action matrices must be square of equal size")
        if check:
            for i in range(num_vars):
                for j in range(i + 1, num_vars):
                    if actions[i] @ actions[j] != actions[j] @ actions[i]:
                        raise NotCommuting(f"actions {i} and {j} do not commute")
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "actions", tuple(actions))

    def __setattr__(self, *args):
        raise AttributeError("FiniteModule is immutable")

    @staticmethod
    def zero(num_vars: int) -> "FiniteModule":
        z = QMatrix.zeros(0, 0)
        return FiniteModule(num_vars, [z] * num_vars, check=False)

    @staticmethod
    def point_module(num_vars: int, point: Sequence = ()) -> "FiniteModule":
        """The one-dimensional module at the given rational point (default origin)."""
        pt = list(point) if point else [0] * num_vars
        return FiniteModule(num_vars, [QMatrix(1, 1, [Fraction(c)]) for c in pt], check=False)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FiniteModule) and self.num_vars == other.num_vars
                and self.actions == other.actions)

    def __hash__(self):
        return hash((self.num_vars, self.actions))

    def is_nilpotent(self) -> bool:
        """True when the support is contained in the origin."""
        for a in self.actions:
            p = a
            for _ in range(self.dim.bit_length()):
                p = p @ p
            if self.dim and not p.is_zero():
                return False
        return True

    def __repr__(self):
        return f"FiniteModule(m={self.num_vars}, dim={self.dim})"


class ModuleMap:
    """A module homomorphism: a matrix intertwining the two action tuples."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FiniteModule, target: FiniteModule,
                 matrix: QMatrix, check: bool = True):
        if source.num_vars != target.num_vars:
            raise ValueError("mismatched number of variables")
        if matrix.rows != target.dim or matrix.cols != source.dim:
            raise ValueError("matrix shape does not match source/target")
        if check:
            for xs, xt in zip(source.actions, target.actions):
                if matrix @ xs != xt @ matrix:
                    raise ValueError("matrix is not an intertwiner")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, *args):
        raise AttributeError("ModuleMap is immutable")

    def __repr__(self):
        return f"ModuleMap({self.source.dim} -> {self.target.dim})"


def check_commuting(T: FiniteModule) -> bool:
    """True iff all commutators [X_i, X_j] vanish."""
    for i in range(T.num_vars):
        for j in range(i + 1, T.num_vars):
            if T.actions[i] @ T.actions[j] != T.actions[j] @ T.actions[i]:
                return False
    return True


# ---------------------------------------------------------------------------
# Hom and Ext^1

def _intertwiner_rows(T: FiniteModule, T2: FiniteModule) -> list[list[Fraction]]:
    """Rows of the system X'_i F - F X_i = 0 in the unknowns F[a,b]."""
    n, n2 = T.dim, T2.dim
    rows = []
    for X, X2 in zip(T.actions, T2.actions):
        for a in range(n2):
            for b in range(n):
                row = [_ZERO] * (n2 * n)
                for c in range(n2):
                    v = X2[a, c]
                    if v:
                        row[c * n + b] += v
                for c in range(n):
                    v = X[c, b]
                    if v:
                        row[a * n + c] -= v
                rows.append(row)
    return rows


def hom_space(T: FiniteModule, T2: FiniteModule) -> list[ModuleMap]:
    """Basis of Hom(T, T2) = {F : F X_i = X'_i F for all i}."""
    if T.num_vars != T2.num_vars:
        raise ValueError("mismatched number of variables")
    n, n2 = T.dim, T2.dim
    if n == 0 or n2 == 0:
        return []
    M = QMatrix.from_rows(_intertwiner_rows(T, T2))
    maps = []
    for v in kernel_basis(M).basis:
        maps.append(ModuleMap(T, T2, QMatrix(n2, n, v), check=False))
    return maps


def hom_dim(T: FiniteModule, T2: FiniteModule) -> int:
    if T.num_vars != T2.num_vars:
        raise ValueError("mismatched number of variables")
    n, n2 = T.dim, T2.dim
    if n == 0 or n2 == 0:
        return 0
    return n * n2 - rank(QMatrix.from_rows(_intertwiner_rows(T, T2)))


def ext1_dim(T: FiniteModule, T2: FiniteModule) -> int:
    """dim Ext^1(T, T2) via the Koszul-type complex of the commuting actions.

    With L = Lin(T, T2) the complex is L -> L^m -> L^(m choose 2), where
    d0(F)_i = X'_i F - F X_i and d1(G)_{ij} = X'_i G_j - G_j X_i - X'_j G_i
    + G_i X_j.  The answer is dim ker d1 - rank d0.
    """
    if T.num_vars != T2.num_vars:
        raise ValueError("mismatched number of variables")
    m, n, n2 = T.num_vars, T.dim, T2.dim
    if n == 0 or n2 == 0:
        return 0
    L = n * n2
    rank_d0 = rank(QMatrix.from_rows(_intertwiner_rows(T, T2)))
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    if not pairs:
        return m * L - rank_d0
    rows = []
    X, X2 = T.actions, T2.actions
    for (i, j) in pairs:
        for a in range(n2):
            for b in range(n):
                row = [_ZERO] * (m * L)
                # X'_i G_j - G_j X_i  (block j)
                base = j * L
                for c in range(n2):
                    v = X2[i][a, c]
                    if v:
                        row[base + c * n + b] += v
                for c in range(n):
                    v = X[i][c, b]
                    if v:
                        row[base + a * n + c] -= v
                # -X'_j G_i + G_i X_j  (block i)
                base = i * L
                for c in range(n2):
                    v = X2[j][a, c]
                    if v:
                        row[base + c * n + b] -= v
                for c in range(n):
                    v = X[j][c, b]
                    if v:
                        row[base + a * n + c] += v
                rows.append(row)
    rank_d1 = rank(QMatrix.from_rows(rows))
    return (m * L - rank_d1) - rank_d0


def direct_sum(T: FiniteModule, T2: FiniteModule) -> FiniteModule:
    if T.num_vars != T2.num_vars:
        raise ValueError("mismatched number of variables")
    actions = [QMatrix.block_diag([a, b]) for a, b in zip(T.actions, T2.actions)]
    return FiniteModule(T.num_vars, actions, check=False)


def translate(T: FiniteModule, shift: Sequence) -> FiniteModule:
    """Move the support by the vector shift: X_i becomes X_i + shift_i."""
    sh = as_vector(shift)
    if len(sh) != T.num_vars:
        raise ValueError("shift length mismatch")
    eye = QMatrix.identity(T.dim)
    actions = [a + (c * eye) for a, c in zip(T.actions, sh)]
    return FiniteModule(T.num_vars, actions, check=False)


# ---------------------------------------------------------------------------
# support: characteristic polynomials, rational roots, joint eigenspaces

def _charpoly(M: QMatrix) -> list[Fraction]:
    """Coefficients [c_0, ..., c_{n-1}, 1] of det(tI - M), low degree first."""
    n = M.rows
    coeffs = [_ZERO] * n + [_ONE]
    A = M
    Mk = QMatrix.identity(n)
    for k in range(1, n + 1):
        AM = A @ Mk
        tr = sum(AM[i, i] for i in range(n))
        ck = -tr / k
        coeffs[n - k] = ck
        if k < n:
            Mk = AM + ck * QMatrix.identity(n)
    return coeffs


def _divisors(n: int, step_bound: int = 10 ** 7) -> list[int]:
    n = abs(n)
    if n == 0:
        return [1]
    small = []
    large = []
    d = 1
    steps = 0
    while d * d <= n:
        steps += 1
        if steps > step_bound:
            raise ResourceBoundExceeded("divisor enumeration too large for support computation")
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _rational_roots(coeffs: list[Fraction]) -> dict[Fraction, int]:
    """All roots with multiplicity; raises when the polynomial does not split over Q."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    poly = [c.numerator * (den // c.denominator) for c in coeffs]
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    roots: dict[Fraction, int] = {}
    while poly[0] == 0 and len(poly) > 1:
        roots[_ZERO] = roots.get(_ZERO, 0) + 1
        poly = poly[1:]
    while len(poly) > 1:
        g = 0
        for v in poly:
            g = gcd(g, v)
            if g == 1:
                break
        if g > 1:
            poly = [v // g for v in poly]
        found = None
        nums = _divisors(poly[0])
        dens = _divisors(poly[-1])
        for q in dens:
            for p in nums:
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    acc = _ZERO
                    for c in reversed(poly):
                        acc = acc * cand + c
                    if acc == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            raise IrrationalSupport("characteristic polynomial does not split over Q")
        # synthetic division by (t - found); track multiplicity by retry
        mult = 0
        while True:
            out = []
            acc = _ZERO
            for c in reversed(poly):
                acc = acc * found + c
            if acc != 0:
                break
            new = [_ZERO] * (len(poly) - 1)
            carry = poly[-1]
            for k in range(len(poly) - 2, -1, -1):
                new[k] = carry
                carry = poly[k] + carry * found
            poly = new
            mult += 1
            if len(poly) == 1:
                break
        roots[found] = roots.get(found, 0) + mult
        # clear denominators introduced by a fractional root
        den = 1
        for c in poly:
            den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
        poly = [int(Fraction(c) * den) for c in poly]
    return roots


def _coords_in_rref_basis(space: Subspace, vec: Vector) -> Vector:
    """Coordinates of vec in a reduced-echelon basis (read off at the pivots)."""
    coords = []
    residual = list(vec)
    for b in space.basis:
        pivot = next(i for i, x in enumerate(b) if x)
        c = residual[pivot] / b[pivot]
        coords.append(c)
        if c:
            for i in range(len(residual)):
                residual[i] -= c * b[i]
    if any(residual):
        raise ValueError("vector not in subspace")
    return tuple(coords)


def _restrict_action(action: QMatrix, space: Subspace) -> QMatrix:
    """Matrix of an invariant action on the subspace in its own basis."""
    k = space.dim
    cols = []
    for b in space.basis:
        cols.append(_coords_in_rref_basis(space, action.apply(b)))
    return QMatrix(k, k, [cols[j][i] for i in range(k) for j in range(k)])


def joint_generalized_eigenspaces(T: FiniteModule) -> list[tuple[Vector, Subspace]]:
    """Decompose the underlying space into joint generalized eigenspaces.

    Returns (point, subspace) pairs with the subspaces invariant under all
    actions; dimensions are the local lengths.  Raises IrrationalSupport when
    some characteristic polynomial has an irrational root.
    """
    if T.dim == 0:
        return []
    pieces: list = [((), Subspace.full(T.dim), [QMatrix(a.rows, a.cols, a.entries) for a in T.actions])]
    for var in range(T.num_vars):
        next_pieces = []
        for point, space, restricted in pieces:
            X = restricted[var]
            roots = _rational_roots(_charpoly(X))
            if sum(roots.values()) != X.rows:
                raise IrrationalSupport("characteristic polynomial does not split over Q")
            for lam in sorted(roots):
                k = space.dim
                shifted = X - lam * QMatrix.identity(k)
                power = shifted
                for _ in range(max(0, k.bit_length())):
                    power = power @ power
                ker = kernel_basis(power)
                # lift to ambient coordinates
                lifted = []
                for v in ker.basis:
                    amb = [_ZERO] * T.dim
                    for c, b in zip(v, space.basis):
                        if c:
                            for i in range(T.dim):
                                amb[i] += c * b[i]
                    lifted.append(tuple(amb))
                sub = Subspace.from_spanning(T.dim, lifted)
                new_restricted = [_restrict_action(a, sub) for a in T.actions]
                next_pieces.append((point + (lam,), sub, new_restricted))
        pieces = next_pieces
    return [(point, space) for point, space, _ in pieces]


def support(T: FiniteModule) -> list[tuple[Vector, int]]:
    """Support points with local lengths, sorted; lengths add up to dim T."""
    return sorted((pt, space.dim) for pt, space in joint_generalized_eigenspaces(T))


def localize_at(T: FiniteModule, point: Sequence) -> FiniteModule:
    """The local piece of T at a support point, translated to the origin."""
    pt = as_vector(point)
    for candidate, space in joint_generalized_eigenspaces(T):
        if candidate == pt:
            restricted = []
            for a, c in zip(T.actions, pt):
                shifted = a - c * QMatrix.identity(T.dim)
                restricted.append(_restrict_action(shifted, space))
            return FiniteModule(T.num_vars, restricted, check=False)
    raise ValueError(f"point {tuple(pt)} is not in the support")
