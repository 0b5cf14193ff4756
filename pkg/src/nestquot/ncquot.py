"""Framed matrix data without commutation relations.

A point is (A_1..A_m, v_1..v_r) with the same Krylov stability condition as
a framed module but no commutator constraint; the commuting locus carves
out the framed modules.  The moduli space of such data modulo simultaneous
conjugation is smooth of dimension (m-1) n^2 + r n, and stability kills all
automorphisms, so framed isomorphisms are unique when they exist.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .errors import NotCommuting, NotStable
from .linalg import (QMatrix, Vector, as_vector, kernel_basis, rank, solve)
from .modules import FiniteModule
from .points import QuotPoint, krylov_closure


class NCQuotPoint:
    """Raw ADHM-style data: m action matrices (not required to commute) and
    r framing vectors."""

    __slots__ = ("num_vars", "dim", "actions", "framing")

    def __init__(self, num_vars: int, actions: Sequence[QMatrix],
                 framing: Sequence[Sequence]):
        if num_vars < 1 or len(actions) != num_vars:
            raise ValueError("need one action matrix per variable")
        dim = actions[0].rows
        for a in actions:
            if a.rows != dim or a.cols != dim:
                raise ValueError("actions must be square of equal size")
        framing = tuple(as_vector(v) for v in framing)
        if not framing:
            raise ValueError("need at least one framing vector")
        for v in framing:
            if len(v) != dim:
                raise ValueError("framing length mismatch")
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "actions", tuple(actions))
        object.__setattr__(self, "framing", framing)

    def __setattr__(self, *args):
        raise AttributeError("NCQuotPoint is immutable")

    @property
    def r(self) -> int:
        return len(self.framing)

    def __repr__(self):
        return f"NCQuotPoint(m={self.num_vars}, n={self.dim}, r={self.r})"


def nc_is_stable(p: NCQuotPoint) -> bool:
    """True iff words in the actions applied to the framing span everything."""
    if p.dim == 0:
        return True
    return krylov_closure(p.actions, p.framing).dim == p.dim


def commutator_defect(p: NCQuotPoint) -> list[int]:
    """Ranks of the commutators [A_i, A_j], i < j; all zero on the commuting locus."""
    out = []
    for i in range(p.num_vars):
        for j in range(i + 1, p.num_vars):
            out.append(rank(p.actions[i] @ p.actions[j] - p.actions[j] @ p.actions[i]))
    return out


def to_quot_point(p: NCQuotPoint) -> QuotPoint:
    """Convert commuting stable data into a framed module point."""
    if any(commutator_defect(p)):
        raise NotCommuting("actions do not commute")
    if not nc_is_stable(p):
        raise NotStable("framing does not generate")
    return QuotPoint(FiniteModule(p.num_vars, p.actions, check=False), p.framing)


def ncquot_dim(m: int, n: int, r: int) -> int:
    """(m - 1) n^2 + r n, the dimension of the framed-data moduli space."""
    if m < 1 or r < 1 or n < 0:
        raise ValueError("need m >= 1, r >= 1, n >= 0")
    return (m - 1) * n * n + r * n


def framed_isomorphic(p: NCQuotPoint, q: NCQuotPoint) -> Optional[QMatrix]:
    """The unique invertible g with g A_i = A'_i g and g v_j = v'_j, or None.

    Both points must be stable; stability forces the solution space of the
    homogeneous part to be zero, so the isomorphism is unique when the
    inhomogeneous system is solvable.
    """
    if (p.num_vars, p.dim, p.r) != (q.num_vars, q.dim, q.r):
        raise ValueError("points must share (m, n, r)")
    if not nc_is_stable(p) or not nc_is_stable(q):
        raise NotStable("framed isomorphism testing needs stable points")
    n = p.dim
    if n == 0:
        return QMatrix.zeros(0, 0)
    # unknowns g[a, b], flattened a * n + b
    rows = []
    rhs = []
    for A, A2 in zip(p.actions, q.actions):
        for a in range(n):
            for b in range(n):
                row = [0] * (n * n)
                for c in range(n):
                    if A[c, b]:
                        row[a * n + c] += A[c, b]
                    if A2[a, c]:
                        row[c * n + b] -= A2[a, c]
                rows.append([x for x in row])
                rhs.append(0)
    for v, v2 in zip(p.framing, q.framing):
        for a in range(n):
            row = [0] * (n * n)
            for b in range(n):
                if v[b]:
                    row[a * n + b] = v[b]
            rows.append(row)
            rhs.append(v2[a])
    M = QMatrix.from_rows(rows)
    hom_kernel = kernel_basis(M).dim
    if hom_kernel != 0:
        raise AssertionError("stability should kill all automorphisms")
    x = solve(M, rhs)
    if x is None:
        return None
    g = QMatrix(n, n, x)
    if rank(g) != n:
        return None
    return g
