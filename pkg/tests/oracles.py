"""Deliberately naive reference implementations used as independent oracles.

These run plain Fraction Gaussian elimination with no pivot strategy, no
integer clearing and no sparsity, so they share no code with the package's
elimination core.  Keep them slow and obvious.
"""

from fractions import Fraction


def naive_rref(rows):
    rows = [[Fraction(x) for x in row] for row in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def naive_rank(rows):
    return len(naive_rref(rows)[1])


def naive_nullspace(rows):
    """Basis of the right kernel, as lists of Fractions."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = naive_rref(rows)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for k, pc in enumerate(pivots):
            v[pc] = -red[k][free]
        basis.append(v)
    return basis


def naive_hom_dim(T, T2):
    """dim of the intertwiner space between two action tuples, brute force."""
    n, n2 = T.dim, T2.dim
    if n == 0 or n2 == 0:
        return 0
    rows = []
    for X, X2 in zip(T.actions, T2.actions):
        for a in range(n2):
            for b in range(n):
                row = [Fraction(0)] * (n2 * n)
                for c in range(n2):
                    row[c * n + b] += X2[a, c]
                for c in range(n):
                    row[a * n + c] -= X[c, b]
                rows.append(row)
    return n2 * n - naive_rank(rows)


def brute_force_order_ideals(m, n, box=None):
    """All order ideals of size n inside a bounding box, by subset filtering."""
    from itertools import combinations, product

    box = box or n
    cells = [c for c in product(range(box), repeat=m) if sum(c) < box]
    ideals = set()
    for combo in combinations(cells, n):
        s = set(combo)
        ok = True
        for c in s:
            for i in range(m):
                if c[i] > 0:
                    down = c[:i] + (c[i] - 1,) + c[i + 1:]
                    if down not in s:
                        ok = False
                        break
            if not ok:
                break
        if ok:
            ideals.add(frozenset(s))
    return ideals
