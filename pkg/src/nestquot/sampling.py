"""Random exact instances for property tests and experiments.

All generators take an explicit random.Random so runs are reproducible.
Gauge changes use unimodular integer matrices built from elementary row
operations; their inverses are exact, so conjugated instances stay rational
with small entries.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from .classify import enumerate_staircases
from .linalg import QMatrix, solve
from .modules import FiniteModule, direct_sum, translate
from .points import QuotPoint, is_stable


def random_unimodular(n: int, rng: random.Random, steps: Optional[int] = None) -> QMatrix:
    """A random integer matrix with determinant +-1."""
    g = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for _ in range(2 * n if steps is None else steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = Fraction(rng.choice([-2, -1, 1, 2]))
        for k in range(n):
            g[i][k] += c * g[j][k]
    return QMatrix.from_rows(g)


def invert(M: QMatrix) -> QMatrix:
    n = M.rows
    eye = QMatrix.identity(n)
    cols = []
    for j in range(n):
        x = solve(M, eye.column(j))
        if x is None:
            raise ValueError("matrix is singular")
        cols.append(x)
    return QMatrix(n, n, [cols[j][i] for i in range(n) for j in range(n)])


def conjugate_module(T: FiniteModule, g: QMatrix) -> FiniteModule:
    gi = invert(g)
    return FiniteModule(T.num_vars, [g @ a @ gi for a in T.actions], check=False)


def staircase_module(m: int, cells) -> FiniteModule:
    """The monomial module with the given staircase basis at the origin."""
    ordered = sorted(cells, key=lambda c: (sum(c), c))
    index = {c: k for k, c in enumerate(ordered)}
    n = len(ordered)
    actions = []
    for var in range(m):
        flat = [Fraction(0)] * (n * n)
        for c, k in index.items():
            up = c[:var] + (c[var] + 1,) + c[var + 1:]
            kk = index.get(up)
            if kk is not None:
                flat[kk * n + k] = Fraction(1)
        actions.append(QMatrix(n, n, flat))
    return FiniteModule(m, actions, check=False)


def random_local_module(m: int, length: int, rng: random.Random) -> FiniteModule:
    """A random origin-supported module: a conjugated staircase module."""
    sc = rng.choice(enumerate_staircases(m, length))
    T = staircase_module(m, sc)
    if length > 1:
        T = conjugate_module(T, random_unimodular(length, rng))
    return T


def random_module(m: int, total: int, rng: random.Random,
                  max_points: int = 2, coord_range: int = 3) -> FiniteModule:
    """A random module of the given length with 1..max_points rational
    support points on the first axis."""
    if total == 0:
        return FiniteModule.zero(m)
    pts = rng.randint(1, min(max_points, total))
    cuts = sorted(rng.sample(range(1, total), pts - 1)) if pts > 1 else []
    parts = [b - a for a, b in zip([0] + cuts, cuts + [total])]
    coords = rng.sample(range(-coord_range, coord_range + 1), pts)
    T = None
    for ln, c in zip(parts, coords):
        loc = translate(random_local_module(m, ln, rng), [c] + [0] * (m - 1))
        T = loc if T is None else direct_sum(T, loc)
    return T


def random_stable_point(m: int, r: int, total: int, rng: random.Random,
                        max_points: int = 2) -> QuotPoint:
    """A random stable framed point of the given length."""
    T = random_module(m, total, rng, max_points=max_points)
    for _ in range(100):
        framing = [tuple(Fraction(rng.randint(-2, 2)) for _ in range(T.dim))
                   for _ in range(r)]
        p = QuotPoint(T, framing)
        if is_stable(p):
            return p
    raise RuntimeError("failed to sample a stable framing")
