"""Truncated local algebras B = Q[x_1..x_m]/m^N with monomial bases.

Every punctual Hom computation in this package factors through such a
truncation, so the algebra carries fast index-level shift tables (multiply
by x_i sends a basis monomial to a basis monomial or to zero) next to the
contract-level multiplication matrices.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .errors import ResourceBoundExceeded
from .linalg import QMatrix, Subspace

DEFAULT_MAX_JET_DIM = 3000


class JetAlgebra:
    """Monomial-basis model of Q[x_1..x_m]/m^N.

    The basis lists exponent vectors of total degree < N in
    degree-then-lexicographic order; the order only fixes bases, never the
    dimensions computed downstream.
    """

    __slots__ = ("num_vars", "order", "basis", "parents", "_index", "_shifts", "_mult_ops")

    def __init__(self, num_vars: int, order: int):
        if num_vars < 1 or order < 1:
            raise ValueError("need num_vars >= 1 and order >= 1")
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "order", order)
        basis = sorted(_monomials_below(num_vars, order), key=lambda e: (sum(e), e))
        object.__setattr__(self, "basis", tuple(basis))
        index = {e: i for i, e in enumerate(basis)}
        object.__setattr__(self, "_index", index)
        shifts = []
        for i in range(num_vars):
            tab = []
            for e in basis:
                up = list(e)
                up[i] += 1
                tab.append(index.get(tuple(up)))
            shifts.append(tuple(tab))
        object.__setattr__(self, "_shifts", tuple(shifts))
        # parents[idx] = (parent index, variable) with basis[idx] = x_var * basis[parent]
        parents = [None]
        for idx in range(1, len(basis)):
            e = basis[idx]
            var = next(i for i, d in enumerate(e) if d > 0)
            down = list(e)
            down[var] -= 1
            parents.append((index[tuple(down)], var))
        object.__setattr__(self, "parents", tuple(parents))
        object.__setattr__(self, "_mult_ops", None)

    def __setattr__(self, *args):
        raise AttributeError("JetAlgebra is immutable")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, exponent: tuple[int, ...]) -> int:
        return self._index[exponent]

    def shift(self, var: int, idx: int):
        """Index of x_var * basis[idx], or None when it truncates to zero."""
        return self._shifts[var][idx]

    def degree(self, idx: int) -> int:
        return sum(self.basis[idx])

    @property
    def mult_ops(self) -> tuple[QMatrix, ...]:
        """Multiplication-by-x_i matrices in the monomial basis."""
        ops = self._mult_ops
        if ops is None:
            d = self.dim
            ops = []
            for i in range(self.num_vars):
                flat = [0] * (d * d)
                for j, target in enumerate(self._shifts[i]):
                    if target is not None:
                        flat[target * d + j] = 1
                ops.append(QMatrix(d, d, flat))
            ops = tuple(ops)
            object.__setattr__(self, "_mult_ops", ops)
        return ops

    def __repr__(self):
        return f"JetAlgebra(m={self.num_vars}, order={self.order}, dim={self.dim})"


def _monomials_below(m: int, order: int) -> list[tuple[int, ...]]:
    if m == 1:
        return [(d,) for d in range(order)]
    out = []
    for d in range(order):
        for rest in _monomials_below(m - 1, order - d):
            out.append((d,) + rest)
    return out


@lru_cache(maxsize=None)
def _build(num_vars: int, order: int) -> JetAlgebra:
    return JetAlgebra(num_vars, order)


def jet_algebra(num_vars: int, order: int, max_dim: int = DEFAULT_MAX_JET_DIM) -> JetAlgebra:
    """Construct (with caching) the truncation of order N at the origin.

    Raises ResourceBoundExceeded when dim = C(N-1+m, m) would pass max_dim.
    """
    if num_vars < 1 or order < 1:
        raise ValueError("need num_vars >= 1 and order >= 1")
    dim = comb(order - 1 + num_vars, num_vars)
    if dim > max_dim:
        raise ResourceBoundExceeded(
            f"jet algebra dimension {dim} exceeds the bound {max_dim}")
    return _build(num_vars, order)


def maximal_ideal_power(B: JetAlgebra, k: int) -> Subspace:
    """Span of the basis monomials of degree >= k, as a subspace of B."""
    if k < 0 or k > B.order:
        raise ValueError(f"need 0 <= k <= {B.order}, got {k}")
    dim = B.dim
    basis = []
    for i in range(dim):
        if B.degree(i) >= k:
            vec = [0] * dim
            vec[i] = 1
            basis.append(vec)
    return Subspace(dim, basis, validate=False)


def free_module(B: JetAlgebra, r: int):
    """The free module B^r with block-diagonal multiplication operators."""
    from .modules import FiniteModule

    if r < 1:
        raise ValueError("need r >= 1")
    ops = B.mult_ops
    actions = [QMatrix.block_diag([ops[i]] * r) for i in range(B.num_vars)]
    return FiniteModule(B.num_vars, actions, check=False)
