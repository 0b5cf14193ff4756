"""Framed points of punctual Quot schemes and their tangent spaces.

A framed point is a finite-length module T together with r framing vectors,
the images of the generators of the free module under a surjection
Q[x]^r ->> T.  A nested point is a chain of such surjections linked by
compatible quotient maps.

Tangent dimensions are computed exactly.  For a point supported at the
origin, the kernel K of B^r -> T is taken inside a jet truncation B of
order at least len(T) + len(T'); every module homomorphism K -> T' factors
through that truncation, so the computed Hom dimension is exact, not an
approximation.  Hom(K, T') itself is solved from a module presentation of
K (generators and relations found by a sparse integer echelon), which keeps
the linear systems near the size of T' rather than the size of B^r.  Points
with several support points decompose: homomorphisms between pieces at
different points vanish, so dimensions are computed per support point and
added.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .errors import (InvalidPoint, NotStable, OverlappingSupports,
                     TruncationTooSmall)
from .jets import DEFAULT_MAX_JET_DIM, JetAlgebra, jet_algebra
from .linalg import (QMatrix, Subspace, Vector, as_vector, kernel_basis,
                     rank, solve)
from .modules import (FiniteModule, ModuleMap, direct_sum,
                      joint_generalized_eigenspaces, support)

_ZERO = Fraction(0)
_ONE = Fraction(1)

SMOOTH_HERE = "SmoothHere"
SINGULAR_HERE = "SingularHere"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class TangentReport:
    tangent_dim: int
    expected_dim: int
    verdict: str

    @staticmethod
    def build(tangent_dim: int, expected_dim: int) -> "TangentReport":
        if tangent_dim > expected_dim:
            verdict = SINGULAR_HERE
        elif tangent_dim == expected_dim:
            verdict = SMOOTH_HERE
        else:
            verdict = INCONCLUSIVE
        return TangentReport(tangent_dim, expected_dim, verdict)


class QuotPoint:
    """A framed module [Q[x]^r ->> T]: module plus r framing vectors."""

    __slots__ = ("module", "framing")

    def __init__(self, module: FiniteModule, framing: Sequence[Sequence]):
        framing = tuple(as_vector(v) for v in framing)
        if not framing:
            raise ValueError("need at least one framing vector")
        for v in framing:
            if len(v) != module.dim:
                raise ValueError("framing vector length must equal module dimension")
        object.__setattr__(self, "module", module)
        object.__setattr__(self, "framing", framing)

    def __setattr__(self, *args):
        raise AttributeError("QuotPoint is immutable")

    @property
    def r(self) -> int:
        return len(self.framing)

    @property
    def num_vars(self) -> int:
        return self.module.num_vars

    @property
    def length(self) -> int:
        return self.module.dim

    def __repr__(self):
        return f"QuotPoint(m={self.num_vars}, r={self.r}, n={self.length})"


class NestedQuotPoint:
    """A chain [Q[x]^r ->> T_d ->> ... ->> T_1] with compatible framings.

    maps[i] is the quotient map level i+2 -> level i+1 (a n_i x n_{i+1}
    matrix, zero-indexed from the smallest quotient).
    """

    __slots__ = ("levels", "maps")

    def __init__(self, levels: Sequence[QuotPoint], maps: Sequence[QMatrix]):
        levels = tuple(levels)
        maps = tuple(maps)
        if not levels:
            raise InvalidPoint("a nested point needs at least one level")
        if len(maps) != len(levels) - 1:
            raise InvalidPoint("need exactly one chain map between adjacent levels")
        r = levels[0].r
        m = levels[0].num_vars
        for lv in levels:
            if lv.r != r or lv.num_vars != m:
                raise InvalidPoint("levels disagree on r or the number of variables")
        for i, pi in enumerate(maps):
            if pi.rows != levels[i].length or pi.cols != levels[i + 1].length:
                raise InvalidPoint(f"chain map {i + 1} has the wrong shape")
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "maps", maps)

    def __setattr__(self, *args):
        raise AttributeError("NestedQuotPoint is immutable")

    @property
    def d(self) -> int:
        return len(self.levels)

    @property
    def r(self) -> int:
        return self.levels[0].r

    @property
    def num_vars(self) -> int:
        return self.levels[0].num_vars

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(lv.length for lv in self.levels)

    @property
    def top(self) -> QuotPoint:
        return self.levels[-1]

    def validate(self) -> None:
        """Check all chain invariants; raises InvalidPoint or NotStable."""
        lengths = self.lengths
        if any(a > b for a, b in zip(lengths, lengths[1:])):
            raise InvalidPoint("level lengths must be non-decreasing")
        if lengths[-1] == 0:
            raise InvalidPoint("the top quotient must have positive length")
        for i, pi in enumerate(self.maps):
            lo, hi = self.levels[i], self.levels[i + 1]
            if lo.length and rank(pi) != lo.length:
                raise InvalidPoint(f"chain map {i + 1} is not surjective")
            for a_lo, a_hi in zip(lo.module.actions, hi.module.actions):
                if pi @ a_hi != a_lo @ pi:
                    raise InvalidPoint(f"chain map {i + 1} is not a module map")
            for j in range(self.r):
                if pi.apply(hi.framing[j]) != lo.framing[j]:
                    raise InvalidPoint(f"framings are incompatible across chain map {i + 1}")
        if not is_stable(self.top):
            raise NotStable("top framing does not generate the module")
        for i, lv in enumerate(self.levels[:-1]):
            if not is_stable(lv):
                raise NotStable(f"framing of level {i + 1} does not generate")

    def __repr__(self):
        return f"NestedQuotPoint(m={self.num_vars}, r={self.r}, n={self.lengths})"


def nested_from_quot(p: QuotPoint) -> NestedQuotPoint:
    return NestedQuotPoint([p], [])


# ---------------------------------------------------------------------------
# stability

def krylov_closure(actions: Sequence[QMatrix], vectors: Sequence[Sequence]) -> Subspace:
    """Smallest subspace containing the vectors and invariant under the actions."""
    n = actions[0].rows if actions else 0
    space = Subspace.from_spanning(n, [as_vector(v) for v in vectors])
    while space.dim < n:
        vecs = list(space.basis)
        for a in actions:
            for b in space.basis:
                vecs.append(a.apply(b))
        bigger = Subspace.from_spanning(n, vecs)
        if bigger.dim == space.dim:
            break
        space = bigger
    return space


def is_stable(p: QuotPoint) -> bool:
    """True iff the framing generates the module under the actions."""
    if p.length == 0:
        return True
    return krylov_closure(p.module.actions, p.framing).dim == p.length


# ---------------------------------------------------------------------------
# expected dimension

def expdim(m: int, r: int, bold_n: Sequence[int]) -> int:
    """Expected dimension n_d (m + r - 1) of the nested Quot scheme."""
    bold_n = tuple(int(n) for n in bold_n)
    if not bold_n or any(a > b for a, b in zip(bold_n, bold_n[1:])):
        raise ValueError("lengths must be a non-decreasing, nonempty tuple")
    if bold_n[-1] < 1:
        raise ValueError("the top length must be at least 1")
    return bold_n[-1] * (m + r - 1)


# ---------------------------------------------------------------------------
# sparse integer column echelon with combination tracking

def _combine(c1: int, d1: dict, c2: int, d2: dict) -> dict:
    out = {}
    for k, v in d1.items():
        w = c1 * v + c2 * d2.get(k, 0)
        if w:
            out[k] = w
    for k, v in d2.items():
        if k not in d1:
            w = c2 * v
            if w:
                out[k] = w
    return out


def _strip_pair(vec: dict, combo: dict) -> tuple[dict, dict]:
    g = 0
    for v in vec.values():
        g = gcd(g, v)
        if g == 1:
            return vec, combo
    for v in combo.values():
        g = gcd(g, v)
        if g == 1:
            return vec, combo
    if g > 1:
        vec = {k: v // g for k, v in vec.items()}
        combo = {k: v // g for k, v in combo.items()}
    return vec, combo


class _SparseEchelon:
    """Column echelon of integer sparse vectors, remembering combinations.

    insert() returns None when the vector extended the echelon, otherwise the
    combination (over the original column ids) that reduced it to zero.
    """

    __slots__ = ("columns",)

    def __init__(self):
        self.columns: dict[int, tuple[dict, dict]] = {}

    def __len__(self):
        return len(self.columns)

    def insert(self, vec: dict, combo: dict) -> Optional[dict]:
        vec = dict(vec)
        while vec:
            lead = min(vec)
            got = self.columns.get(lead)
            if got is None:
                vec, combo = _strip_pair(vec, combo)
                self.columns[lead] = (vec, combo)
                return None
            evec, ecombo = got
            a = vec[lead]
            b = evec[lead]
            g = gcd(a, b)
            a //= g
            b //= g
            vec = _combine(b, vec, -a, evec)
            combo = _combine(b, combo, -a, ecombo)
        return combo

    def reduce_rational(self, vec: dict) -> tuple[dict, list[tuple[dict, Fraction]]]:
        """Reduce a rational vector; returns (residual, used combinations)."""
        res = {k: Fraction(v) for k, v in vec.items() if v}
        used = []
        while res:
            lead = min(res)
            got = self.columns.get(lead)
            if got is None:
                return res, used
            evec, ecombo = got
            c = res[lead] / evec[lead]
            used.append((ecombo, c))
            for k, v in evec.items():
                w = res.get(k, _ZERO) - c * v
                if w:
                    res[k] = w
                elif k in res:
                    del res[k]
        return res, used


# ---------------------------------------------------------------------------
# action tables: matrices of each basis monomial acting on a module

def _action_tables(B: JetAlgebra, T: FiniteModule) -> list:
    """tables[t] = matrix of basis monomial t on T (rows as lists), or None if zero."""
    n = T.dim
    tables: list = [None] * B.dim
    if n == 0:
        return tables
    tables[0] = [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]
    action_rows = [a.row_list() for a in T.actions]
    for t in range(1, B.dim):
        parent, var = B.parents[t]
        pt = tables[parent]
        if pt is None:
            continue
        act = action_rows[var]
        out = []
        nonzero = False
        for i in range(n):
            arow = act[i]
            row = [_ZERO] * n
            for k in range(n):
                c = arow[k]
                if c:
                    prow = pt[k]
                    for j in range(n):
                        if prow[j]:
                            row[j] += c * prow[j]
            if not nonzero and any(row):
                nonzero = True
            out.append(row)
        tables[t] = out if nonzero else None
    return tables


# ---------------------------------------------------------------------------
# the kernel of B^r -> T with its module presentation

@dataclass(frozen=True)
class _HomBasis:
    """Basis of Hom(K, T') in generator-value coordinates u in T'^g."""
    gens_count: int
    target_dim: int
    vectors: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.vectors)


class _JetKernel:
    """K = ker(B^r -> T) for an origin-supported stable point, presented by
    generators and relations.

    Ambient coordinates of B^r are slot * dim(B) + monomial index.  The
    echelon orders rows by descending monomial degree, which keeps the
    generator columns near-triangular.
    """

    def __init__(self, point: QuotPoint, B: JetAlgebra):
        T = point.module
        if T.num_vars != B.num_vars:
            raise ValueError("point and jet algebra disagree on the number of variables")
        if B.order < T.dim:
            raise TruncationTooSmall(
                f"jet order {B.order} is below the module length {T.dim}")
        if not T.is_nilpotent():
            raise InvalidPoint("kernel computation needs support at the origin")
        if not is_stable(point):
            raise NotStable("framing does not generate the module")
        self.point = point
        self.B = B
        self.r = point.r
        self.n = T.dim
        dimB = B.dim
        D = self.r * dimB
        self.ambient_dim = D

        # row order for the sparse echelon: degree-descending monomials
        coords = sorted(range(D), key=lambda c: (-B.degree(c % dimB), c % dimB, c // dimB))
        rowrank = [0] * D
        for rk, c in enumerate(coords):
            rowrank[c] = rk
        self._rowrank = rowrank

        # frame map columns X^mu v_j, ordered by (degree, monomial, slot)
        col_coords = sorted(range(D), key=lambda c: (B.degree(c % dimB), c % dimB, c // dimB))
        vecs: list = [None] * D
        for j in range(self.r):
            vecs[j * dimB] = point.framing[j]
        for t in range(1, dimB):
            parent, var = B.parents[t]
            act = T.actions[var]
            for j in range(self.r):
                vecs[j * dimB + t] = act.apply(vecs[j * dimB + parent])
        frows = [[vecs[c][i] for c in col_coords] for i in range(self.n)]
        from .linalg import _int_rows, _rref_int
        irows = _int_rows(frows)
        pivots = _rref_int(irows, D)
        if len(pivots) != self.n:
            raise NotStable("frame map is not surjective")
        pivot_cols = [col_coords[k] for k in pivots]
        pivset = set(pivots)

        # standard kernel basis, one integer vector per free column;
        # scale[f] is the integer at the vector's own free coordinate
        self.free_coords: list[int] = []
        self.kernel_vecs: list[dict] = []
        self.scales: list[int] = []
        for k in range(D):
            if k in pivset:
                continue
            c = col_coords[k]
            den = 1
            entries = {}
            for row_i, pk in enumerate(pivots):
                num = irows[row_i][k]
                if num:
                    val = Fraction(-num, irows[row_i][pivots[row_i]])
                    entries[pivot_cols[row_i]] = val
                    den = den * val.denominator // gcd(den, val.denominator)
            vec = {c: den}
            for cc, val in entries.items():
                vec[cc] = int(val * den)
            self.free_coords.append(c)
            self.kernel_vecs.append(vec)
            self.scales.append(den)
        self._free_pos = {c: i for i, c in enumerate(self.free_coords)}
        self.kdim = len(self.free_coords)

        # generators: extend an echelon of m * K by kernel basis vectors
        span = _SparseEchelon()
        for vec in self.kernel_vecs:
            for var in range(B.num_vars):
                sv = self._shift(var, vec)
                if sv:
                    span.insert(self._ranked(sv), {})
        self.gens: list[dict] = []
        for vec in self.kernel_vecs:
            if span.insert(self._ranked(vec), {}) is None:
                self.gens.append(vec)
        g = len(self.gens)

        # relation space: kernel of B^g -> K, e_{t,j} -> x^t . gen_j
        self._echelon = _SparseEchelon()
        self.relations: list[dict] = []
        cols: list = [None] * (dimB * g)
        for j, gen in enumerate(self.gens):
            cols[j] = gen
        for t in range(1, dimB):
            parent, var = B.parents[t]
            for j in range(g):
                pv = cols[parent * g + j]
                cols[t * g + j] = self._shift(var, pv) if pv else None
        for t in range(dimB):
            for j in range(g):
                col = cols[t * g + j]
                if not col:
                    continue
                out = self._echelon.insert(self._ranked(col), {t * g + j: 1})
                if out is not None:
                    self.relations.append(out)
        if len(self._echelon) != self.kdim:
            raise AssertionError("generators failed to generate the kernel")

    # -- sparse helpers ----------------------------------------------------

    def _shift(self, var: int, vec: dict) -> dict:
        dimB = self.B.dim
        out = {}
        for c, v in vec.items():
            t = self.B.shift(var, c % dimB)
            if t is not None:
                out[(c // dimB) * dimB + t] = v
        return out

    def _ranked(self, vec: dict) -> dict:
        rr = self._rowrank
        return {rr[c]: v for c, v in vec.items()}

    def express_in_generators(self, vec: dict) -> list[dict]:
        """Write an element of K as sum_j b_j . gen_j; returns per-generator
        polynomials {monomial index: coefficient}."""
        residual, used = self._echelon.reduce_rational(self._ranked(vec))
        if residual:
            raise ValueError("vector does not lie in the kernel module")
        g = len(self.gens)
        polys: list[dict] = [dict() for _ in range(g)]
        for combo, c in used:
            for col_id, ival in combo.items():
                t, j = divmod(col_id, g)
                w = polys[j].get(t, _ZERO) + c * ival
                if w:
                    polys[j][t] = w
                elif t in polys[j]:
                    del polys[j][t]
        return polys

    # -- Hom computation ----------------------------------------------------

    def hom_basis_into(self, T2: FiniteModule, tables=None) -> _HomBasis:
        """Basis of Hom(K, T2) as generator-value vectors u in T2^g."""
        if self.B.order < self.n + T2.dim:
            raise TruncationTooSmall(
                f"jet order {self.B.order} < {self.n} + {T2.dim}")
        if not T2.is_nilpotent():
            raise InvalidPoint("Hom target must be supported at the origin")
        g = len(self.gens)
        n2 = T2.dim
        if g == 0 or n2 == 0:
            return _HomBasis(g, n2, ())
        if tables is None:
            tables = _action_tables(self.B, T2)
        rows = []
        for rel in self.relations:
            blocks: list = [None] * g
            for col_id, ival in rel.items():
                t, j = divmod(col_id, g)
                tab = tables[t]
                if tab is None:
                    continue
                blk = blocks[j]
                if blk is None:
                    blk = blocks[j] = [[_ZERO] * n2 for _ in range(n2)]
                for a in range(n2):
                    trow = tab[a]
                    brow = blk[a]
                    for b in range(n2):
                        if trow[b]:
                            brow[b] += ival * trow[b]
            if all(b is None or not any(any(row) for row in b) for b in blocks):
                continue
            for a in range(n2):
                row = [_ZERO] * (g * n2)
                for j, blk in enumerate(blocks):
                    if blk is None:
                        continue
                    base = j * n2
                    for b in range(n2):
                        if blk[a][b]:
                            row[base + b] = blk[a][b]
                rows.append(row)
        if not rows:
            eye = QMatrix.identity(g * n2)
            return _HomBasis(g, n2, tuple(eye.row(i) for i in range(g * n2)))
        basis = kernel_basis(QMatrix.from_rows(rows)).basis
        return _HomBasis(g, n2, tuple(basis))

    def hom_dim_into(self, T2: FiniteModule, tables=None) -> int:
        return self.hom_basis_into(T2, tables).dim

    # -- induced module on the kernel ---------------------------------------

    def subspace(self) -> Subspace:
        """K as a subspace of B^r (coordinates slot * dim B + monomial index)."""
        basis = []
        for vec, s in zip(self.kernel_vecs, self.scales):
            dense = [_ZERO] * self.ambient_dim
            for c, v in vec.items():
                dense[c] = Fraction(v, s)
            basis.append(tuple(dense))
        return Subspace(self.ambient_dim, basis, validate=False)

    def induced_module(self) -> FiniteModule:
        """The x_i actions on K in the standard kernel basis."""
        k = self.kdim
        actions = []
        for var in range(self.B.num_vars):
            flat = [_ZERO] * (k * k)
            for b, (vec, s) in enumerate(zip(self.kernel_vecs, self.scales)):
                shifted = self._shift(var, vec)
                for c, v in shifted.items():
                    f = self._free_pos.get(c)
                    if f is None:
                        if v:
                            raise AssertionError("kernel is not invariant under the actions")
                        continue
                    flat[f * k + b] = Fraction(v, s)
            actions.append(QMatrix(k, k, flat))
        return FiniteModule(self.B.num_vars, actions, check=False)

    def evaluate_hom(self, u: Vector, polys: Sequence[dict], tables, n2: int) -> Vector:
        """Value of the hom with generator values u on sum_j b_j . gen_j."""
        out = [_ZERO] * n2
        for j, poly in enumerate(polys):
            if not poly:
                continue
            uj = u[j * n2:(j + 1) * n2]
            if not any(uj):
                continue
            for t, c in poly.items():
                tab = tables[t]
                if tab is None:
                    continue
                for a in range(n2):
                    trow = tab[a]
                    s = _ZERO
                    for b in range(n2):
                        if trow[b] and uj[b]:
                            s += trow[b] * uj[b]
                    if s:
                        out[a] += c * s
        return tuple(out)


# ---------------------------------------------------------------------------
# public kernel/hom interface

@dataclass(frozen=True)
class KernelModule:
    """ker(B^r -> T) as a subspace of B^r together with its induced actions."""
    subspace: Subspace
    module: FiniteModule


def kernel_module(p: QuotPoint, B: JetAlgebra) -> KernelModule:
    jk = _JetKernel(p, B)
    return KernelModule(jk.subspace(), jk.induced_module())


def hom_from_kernel(p: QuotPoint, T2: FiniteModule, B: JetAlgebra) -> list[ModuleMap]:
    """Basis of the module homomorphisms ker(B^r -> T) -> T2.

    The maps are returned on the standard kernel basis (the source is the
    induced module of kernel_module(p, B)).
    """
    jk = _JetKernel(p, B)
    tables = _action_tables(B, T2)
    hb = jk.hom_basis_into(T2, tables)
    source = jk.induced_module()
    n2 = T2.dim
    exprs = [jk.express_in_generators(vec) for vec in jk.kernel_vecs]
    maps = []
    for u in hb.vectors:
        flat = [_ZERO] * (n2 * jk.kdim)
        for b, (polys, s) in enumerate(zip(exprs, jk.scales)):
            val = jk.evaluate_hom(u, polys, tables, n2)
            for a in range(n2):
                if val[a]:
                    flat[a * jk.kdim + b] = val[a] / s
        maps.append(ModuleMap(source, T2, QMatrix(n2, jk.kdim, flat), check=False))
    return maps


# ---------------------------------------------------------------------------
# localization of framed points

def _localized_chain(levels: Sequence[QuotPoint], maps: Sequence[QMatrix],
                     point: Vector) -> tuple[list[QuotPoint], list[QMatrix]]:
    """Restrict a chain to the local pieces at one support point, translated
    to the origin; leading zero-length levels are dropped."""
    from .modules import _coords_in_rref_basis, _restrict_action

    m = levels[0].num_vars
    pieces = []
    for lv in levels:
        decomp = joint_generalized_eigenspaces(lv.module)
        local = next((space for pt, space in decomp if pt == point), None)
        pieces.append((lv, decomp, local))
    out_levels: list[QuotPoint] = []
    for lv, decomp, local in pieces:
        if local is None or local.dim == 0:
            continue
        # translated nilpotent actions on the local piece
        acts = []
        for a, c in zip(lv.module.actions, point):
            shifted = a - c * QMatrix.identity(lv.module.dim)
            acts.append(_restrict_action(shifted, local))
        T_loc = FiniteModule(m, acts, check=False)
        # framing components: solve against the concatenated eigenbasis
        cols = []
        for _, space in decomp:
            cols.extend(space.basis)
        n = lv.module.dim
        C = QMatrix(n, n, [cols[j][i] for i in range(n) for j in range(n)])
        offset = 0
        for pt, space in decomp:
            if pt == point:
                break
            offset += space.dim
        framing = []
        for v in lv.framing:
            coords = solve(C, v)
            framing.append(coords[offset:offset + local.dim])
        out_levels.append(QuotPoint(T_loc, framing))
    # chain maps between consecutive kept levels
    out_maps: list[QMatrix] = []
    kept = [(i, pieces[i][2]) for i in range(len(pieces))
            if pieces[i][2] is not None and pieces[i][2].dim > 0]
    for (i_lo, loc_lo), (i_hi, loc_hi) in zip(kept, kept[1:]):
        if i_hi != i_lo + 1:
            raise AssertionError("zero local lengths must form a prefix of the chain")
        pi = maps[i_lo]
        cols = []
        for b in loc_hi.basis:
            cols.append(_coords_in_rref_basis(loc_lo, pi.apply(b)))
        out_maps.append(QMatrix(loc_lo.dim, loc_hi.dim,
                                [cols[j][i] for i in range(loc_lo.dim)
                                 for j in range(loc_hi.dim)]))
    return out_levels, out_maps


def localize_quot_point(p: QuotPoint, point: Sequence) -> QuotPoint:
    """The local piece of a framed point at a support point, moved to the
    origin; a zero-length framed point when the point is off the support."""
    pt = as_vector(point)
    levels, _ = _localized_chain([p], [], pt)
    if levels:
        return levels[0]
    zero = FiniteModule.zero(p.num_vars)
    return QuotPoint(zero, [()] * p.r)


def kernel_hom_dim(p: QuotPoint, T2: FiniteModule, order_margin: int = 0,
                   max_jet_dim: int = DEFAULT_MAX_JET_DIM) -> int:
    """dim Hom(K, T2) for K = ker(Q[x]^r ->> T), exact, any rational support.

    Decomposes over the support of T2; each local piece is computed in a jet
    truncation of order len(T_local) + len(T2_local) + order_margin.
    """
    if p.num_vars != T2.num_vars:
        raise ValueError("mismatched number of variables")
    total = 0
    for pt, _ in support(T2):
        from .modules import localize_at
        T2_loc = localize_at(T2, pt)
        p_loc = localize_quot_point(p, pt)
        order = max(1, p_loc.length + T2_loc.dim + order_margin)
        B = jet_algebra(p.num_vars, order, max_jet_dim)
        total += _JetKernel(p_loc, B).hom_dim_into(T2_loc)
    return total


# ---------------------------------------------------------------------------
# the flag differential and nested tangent spaces

def _delta_blocks(levels: Sequence[QuotPoint], maps: Sequence[QMatrix],
                  B: JetAlgebra) -> tuple[QMatrix, list[int]]:
    """Matrix of the flag differential at an origin-supported chain.

    Domain: direct sum of Hom(K_i, T_i); target: direct sum of
    Hom(K_{i+1}, T_i); entry convention (phi_i restricted to K_{i+1})
    minus (pi_i composed with phi_{i+1}).  Returns (matrix, domain dims).
    """
    d = len(levels)
    kernels = [_JetKernel(lv, B) for lv in levels]
    tables = [_action_tables(B, lv.module) for lv in levels]
    homs = [kernels[i].hom_basis_into(levels[i].module, tables[i]) for i in range(d)]
    dom_dims = [h.dim for h in homs]
    if d == 1:
        return QMatrix.zeros(0, dom_dims[0]), dom_dims
    cross = [kernels[i + 1].hom_basis_into(levels[i].module, tables[i])
             for i in range(d - 1)]
    cross_mats = []
    for cb in cross:
        rows_n = cb.gens_count * cb.target_dim
        cross_mats.append(QMatrix(rows_n, cb.dim,
                                  [cb.vectors[j][i] for i in range(rows_n)
                                   for j in range(cb.dim)]))
    # generator expressions: gens of K_{i+1} written in the presentation of K_i
    gen_exprs = []
    for i in range(d - 1):
        gen_exprs.append([kernels[i].express_in_generators(gv)
                          for gv in kernels[i + 1].gens])

    tgt_offsets = [0]
    for cb in cross:
        tgt_offsets.append(tgt_offsets[-1] + cb.dim)
    total_tgt = tgt_offsets[-1]
    total_dom = sum(dom_dims)

    cols: list[list[Fraction]] = []
    for i in range(d):
        n_i = levels[i].module.dim
        for u in homs[i].vectors:
            col = [_ZERO] * total_tgt
            if i < d - 1:
                # restriction of phi_i to K_{i+1}, in generator values of K_{i+1}
                w = []
                for polys in gen_exprs[i]:
                    w.extend(kernels[i].evaluate_hom(u, polys, tables[i], n_i))
                coords = _coords_in_basis(cross_mats[i], w)
                base = tgt_offsets[i]
                for k, c in enumerate(coords):
                    col[base + k] += c
            if i > 0:
                # minus pi_{i-1} composed with phi_i, on the generators of K_i
                pi = maps[i - 1]
                n_lo = levels[i - 1].module.dim
                w = []
                for j in range(homs[i].gens_count):
                    w.extend(pi.apply(u[j * n_i:(j + 1) * n_i]))
                coords = _coords_in_basis(cross_mats[i - 1], w)
                base = tgt_offsets[i - 1]
                for k, c in enumerate(coords):
                    col[base + k] -= c
            cols.append(col)
    flat = []
    for rr in range(total_tgt):
        for col in cols:
            flat.append(col[rr])
    return QMatrix(total_tgt, total_dom, flat), dom_dims


def _coords_in_basis(basis_matrix: QMatrix, w: Sequence[Fraction]) -> Vector:
    if basis_matrix.cols == 0:
        if any(w):
            raise AssertionError("vector outside the computed Hom space")
        return ()
    x = solve(basis_matrix, w)
    if x is None:
        raise AssertionError("vector outside the computed Hom space")
    return x


def delta_matrix(z: NestedQuotPoint, B: JetAlgebra) -> QMatrix:
    """The flag differential at an origin-supported nested point.

    With d levels the matrix maps the direct sum of Hom(K_i, T_i) to the
    direct sum of Hom(K_{i+1}, T_i); the tangent space is its kernel.
    """
    z.validate()
    for lv in z.levels:
        if not lv.module.is_nilpotent():
            raise InvalidPoint("delta matrix needs support at the origin")
    needed = 2 * z.top.length
    if B.order < needed:
        raise TruncationTooSmall(f"jet order {B.order} < {needed}")
    levels = [lv for lv in z.levels if lv.length > 0]
    maps = list(z.maps[len(z.levels) - len(levels):])
    mat, _ = _delta_blocks(levels, maps, B)
    return mat


def tangent_dim(p: QuotPoint, order_margin: int = 0,
                max_jet_dim: int = DEFAULT_MAX_JET_DIM) -> TangentReport:
    """Tangent dimension dim Hom(K, T) at a stable framed point."""
    if not is_stable(p):
        raise NotStable("framing does not generate the module")
    t = kernel_hom_dim(p, p.module, order_margin, max_jet_dim)
    e = expdim(p.num_vars, p.r, (p.length,))
    return TangentReport.build(t, e)


@dataclass(frozen=True)
class SupportTangent:
    point: Vector
    lengths: tuple[int, ...]
    tangent_dim: int
    delta_shape: tuple[int, int]
    hom_dims: tuple[int, ...]


def tangent_details(z: NestedQuotPoint, order_margin: int = 0,
                    max_jet_dim: int = DEFAULT_MAX_JET_DIM) -> list[SupportTangent]:
    """Per-support-point tangent data (local flag differential shapes)."""
    z.validate()
    out = []
    for pt, _ in support(z.top.module):
        levels, maps = _localized_chain(z.levels, z.maps, pt)
        if not levels:
            continue
        order = max(1, 2 * levels[-1].length + order_margin)
        B = jet_algebra(z.num_vars, order, max_jet_dim)
        mat, dom_dims = _delta_blocks(levels, maps, B)
        local_tangent = sum(dom_dims) - rank(mat)
        out.append(SupportTangent(pt, tuple(lv.length for lv in levels),
                                  local_tangent, (mat.rows, mat.cols),
                                  tuple(dom_dims)))
    return out


def nested_tangent_dim(z: NestedQuotPoint, order_margin: int = 0,
                       max_jet_dim: int = DEFAULT_MAX_JET_DIM) -> TangentReport:
    """Tangent dimension of the nested Quot scheme at z: the kernel of the
    flag differential, computed per support point and added."""
    details = tangent_details(z, order_margin, max_jet_dim)
    t = sum(st.tangent_dim for st in details)
    e = expdim(z.num_vars, z.r, (z.top.length,))
    return TangentReport.build(t, e)


# ---------------------------------------------------------------------------
# the direct-sum operation on points

def direct_sum_points(points: Sequence[NestedQuotPoint]) -> NestedQuotPoint:
    """Levelwise direct sum of nested points with disjoint top supports.

    The sum is a local isomorphism on the moduli space, so tangent
    dimensions add; OverlappingSupports is raised when two inputs share a
    top-level support point.
    """
    points = list(points)
    if not points:
        raise ValueError("need at least one point")
    d = points[0].d
    r = points[0].r
    m = points[0].num_vars
    for z in points:
        z.validate()
        if z.d != d or z.r != r or z.num_vars != m:
            raise InvalidPoint("direct summands must share m, r and the chain length")
    if len(points) == 1:
        return points[0]
    seen: set = set()
    for z in points:
        for pt, _ in support(z.top.module):
            if pt in seen:
                raise OverlappingSupports(f"support point {tuple(pt)} appears twice")
            seen.add(pt)
    levels = []
    for i in range(d):
        mod = points[0].levels[i].module
        for z in points[1:]:
            mod = direct_sum(mod, z.levels[i].module)
        framing = []
        for j in range(r):
            v: tuple = ()
            for z in points:
                v = v + z.levels[i].framing[j]
            framing.append(v)
        levels.append(QuotPoint(mod, framing))
    maps = []
    for i in range(d - 1):
        maps.append(QMatrix.block_diag([z.maps[i] for z in points]))
    out = NestedQuotPoint(levels, maps)
    out.validate()
    return out


def translate_point(p: QuotPoint, shift: Sequence) -> QuotPoint:
    from .modules import translate
    return QuotPoint(translate(p.module, shift), p.framing)


def translate_nested(z: NestedQuotPoint, shift: Sequence) -> NestedQuotPoint:
    return NestedQuotPoint([translate_point(lv, shift) for lv in z.levels], z.maps)
