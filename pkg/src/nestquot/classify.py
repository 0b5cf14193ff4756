"""Smoothness classification of nested punctual Quot schemes, explicit
singular witnesses, and a torus-fixed-point verification harness.

The decision procedure takes (m, r, bold_n) with m the ambient dimension,
r the framing rank and bold_n the non-decreasing tuple of quotient lengths;
after dropping zero and duplicate lengths the scheme is smooth exactly in
six cases (curves; a single length-1 quotient; and the four classical
rank-one cases).  Every other parameter triple is singular, and for the
rank >= 2 singular families and the length-4 rank-one family the module can
build an explicit point whose tangent dimension exceeds the expected
dimension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import ResourceBoundExceeded, SmoothCase, Unsupported
from .jets import DEFAULT_MAX_JET_DIM
from .linalg import QMatrix
from .modules import FiniteModule
from .points import (NestedQuotPoint, QuotPoint, TangentReport, expdim,
                     nested_from_quot, nested_tangent_dim, direct_sum_points)

CURVE = "Curve"
PROJ_BUNDLE = "ProjBundle"
FOGARTY = "Fogarty"
SURFACE_NESTED = "SurfaceNested"
HIGHER_DIM_3 = "HigherDim3"
HIGHER_DIM_NESTED = "HigherDimNested"
SINGULAR_A = "Singular-A"
SINGULAR_B = "Singular-B"
SINGULAR_CHEAH_I = "Singular-Cheah-i"
SINGULAR_CHEAH_II = "Singular-Cheah-ii"
SINGULAR_CHEAH_III = "Singular-Cheah-iii"
SINGULAR_CHEAH_IV = "Singular-Cheah-iv"

SMOOTH_LABELS = frozenset({CURVE, PROJ_BUNDLE, FOGARTY, SURFACE_NESTED,
                           HIGHER_DIM_3, HIGHER_DIM_NESTED})


@dataclass(frozen=True)
class ClassificationVerdict:
    smooth: bool
    case_label: str
    normalized_n: tuple[int, ...]


def canonicalize_lengths(bold_n: Sequence[int]) -> tuple[int, ...]:
    """Drop zero and duplicate lengths; the scheme is unchanged by either."""
    ns = tuple(int(n) for n in bold_n)
    if not ns:
        raise ValueError("empty length tuple")
    if any(n < 0 for n in ns):
        raise ValueError("lengths must be nonnegative")
    if any(a > b for a, b in zip(ns, ns[1:])):
        raise ValueError("lengths must be non-decreasing")
    out = []
    for n in ns:
        if n > 0 and (not out or out[-1] != n):
            out.append(n)
    if not out:
        raise ValueError("all lengths are zero")
    return tuple(out)


def classify(m: int, r: int, bold_n: Sequence[int]) -> ClassificationVerdict:
    """Decide smoothness of the nested Quot scheme with the given parameters."""
    if m < 1 or r < 1:
        raise ValueError("need m >= 1 and r >= 1")
    ns = canonicalize_lengths(bold_n)
    d = len(ns)
    top = ns[-1]

    def verdict(label):
        return ClassificationVerdict(label in SMOOTH_LABELS, label, ns)

    if m == 1:
        return verdict(CURVE)
    if top == 1:
        return verdict(PROJ_BUNDLE)
    if r == 1:
        if m == 2 and d == 1:
            return verdict(FOGARTY)
        if m == 2 and d == 2 and ns[1] - ns[0] == 1:
            return verdict(SURFACE_NESTED)
        if m >= 3 and d == 1 and top <= 3:
            return verdict(HIGHER_DIM_3)
        if m >= 3 and d == 2 and ns in ((1, 2), (2, 3)):
            return verdict(HIGHER_DIM_NESTED)
    # singular side
    if r >= 2 and d == 1:
        return verdict(SINGULAR_A)
    if r >= 2 and d == 2 and ns[1] - ns[0] == 1:
        return verdict(SINGULAR_B)
    if d >= 3:
        return verdict(SINGULAR_CHEAH_I)
    if m == 2 and d == 2:
        return verdict(SINGULAR_CHEAH_II)
    if m >= 3 and d == 1:
        return verdict(SINGULAR_CHEAH_III)
    if m >= 3 and d == 2:
        return verdict(SINGULAR_CHEAH_IV)
    raise AssertionError(f"classification table does not cover (m={m}, r={r}, n={ns})")


# ---------------------------------------------------------------------------
# canonical point constructors

def fat_point(m: int, r: int) -> QuotPoint:
    """[Q[x]^r ->> O_0^2]: the length-2 fat point with zero actions."""
    if r < 2:
        raise ValueError("the fat point needs r >= 2")
    T = FiniteModule(m, [QMatrix.zeros(2, 2)] * m, check=False)
    framing = [(1, 0), (0, 1)] + [(0, 0)] * (r - 2)
    return QuotPoint(T, framing)


def simple_point(m: int, r: int, at: Sequence = ()) -> QuotPoint:
    """[Q[x]^r ->> O_p]: a single reduced point, framed through slot 0."""
    T = FiniteModule.point_module(m, at)
    framing = [(1,)] + [(0,)] * (r - 1)
    return QuotPoint(T, framing)


def square_point(m: int) -> QuotPoint:
    """Length-4 quotient cut out by the squares of three coordinates (and the
    remaining coordinates), framed by the unit; needs m >= 3."""
    if m < 3:
        raise ValueError("needs m >= 3")
    actions = []
    for i in range(m):
        flat = [Fraction(0)] * 16
        if i < 3:
            flat[(i + 1) * 4 + 0] = Fraction(1)
        actions.append(QMatrix(4, 4, flat))
    T = FiniteModule(m, actions, check=False)
    return QuotPoint(T, [(1, 0, 0, 0)])


def fat_chain(m: int, r: int) -> NestedQuotPoint:
    """The two-step chain [Q[x]^r ->> O_0^2 ->> O_0] at the origin."""
    top = fat_point(m, r)
    bottom_T = FiniteModule.point_module(m)
    bottom = QuotPoint(bottom_T, [(1,)] + [(0,)] * (r - 1))
    pi = QMatrix(1, 2, [1, 0])
    return NestedQuotPoint([bottom, top], [pi])


def constant_chain(m: int, r: int, at: Sequence = (), d: int = 2) -> NestedQuotPoint:
    """[Q[x]^r ->> O_p -> ... -> O_p]: a simple point repeated along the chain."""
    p = simple_point(m, r, at)
    eye = QMatrix.identity(1)
    return NestedQuotPoint([p] * d, [eye] * (d - 1))


def _axis_point(i: int, m: int) -> tuple:
    return (i,) + (0,) * (m - 1)


def witness_singular(m: int, r: int, bold_n: Sequence[int]) -> NestedQuotPoint:
    """An explicit point with tangent dimension above the expected dimension.

    Covered: r >= 2 with d = 1 (fat point plus distinct simple points),
    r >= 2 with lengths (n, n+1) (fat chain plus constant chains), and the
    r = 1 length-4 single-level case (the square point).  Raises SmoothCase
    when the parameters are smooth and Unsupported for the remaining
    singular families.
    """
    v = classify(m, r, bold_n)
    if v.smooth:
        raise SmoothCase(f"(m={m}, r={r}, n={v.normalized_n}) is smooth")
    ns = v.normalized_n
    if v.case_label == SINGULAR_A:
        n = ns[0]
        parts = [nested_from_quot(fat_point(m, r))]
        for i in range(1, n - 1):
            parts.append(nested_from_quot(simple_point(m, r, _axis_point(i, m))))
        return direct_sum_points(parts)
    if v.case_label == SINGULAR_B:
        n = ns[0]
        parts = [fat_chain(m, r)]
        for i in range(1, n):
            parts.append(constant_chain(m, r, _axis_point(i, m)))
        return direct_sum_points(parts)
    if v.case_label == SINGULAR_CHEAH_III and ns == (4,):
        return nested_from_quot(square_point(m))
    raise Unsupported(
        f"no explicit witness construction for (m={m}, r={r}, n={ns})")


# ---------------------------------------------------------------------------
# staircases (finite order ideals in N^m) and torus fixed points

Cell = tuple[int, ...]
Staircase = frozenset


@lru_cache(maxsize=None)
def enumerate_staircases(m: int, n: int) -> tuple[Staircase, ...]:
    """All order ideals of size n in N^m (monomial ideals of colength n)."""
    if m < 1 or n < 0:
        raise ValueError("need m >= 1 and n >= 0")
    if n == 0:
        return (frozenset(),)
    out: list[Staircase] = []

    def key(cell: Cell):
        return (sum(cell), cell)

    def grow(cells: set, frontier_floor):
        if len(cells) == n:
            out.append(frozenset(cells))
            return
        candidates = set()
        if not cells:
            candidates.add((0,) * m)
        else:
            for c in cells:
                for i in range(m):
                    up = c[:i] + (c[i] + 1,) + c[i + 1:]
                    if up not in cells:
                        candidates.add(up)
        for cand in sorted(candidates, key=key):
            if frontier_floor is not None and key(cand) <= frontier_floor:
                continue
            ok = True
            for i in range(m):
                if cand[i] > 0:
                    down = cand[:i] + (cand[i] - 1,) + cand[i + 1:]
                    if down not in cells:
                        ok = False
                        break
            if ok:
                cells.add(cand)
                grow(cells, key(cand))
                cells.remove(cand)

    grow(set(), None)
    return tuple(out)


def staircase_contains(big: Staircase, small: Staircase) -> bool:
    return small <= big


@lru_cache(maxsize=None)
def _staircase_chains(m: int, sizes: tuple[int, ...]) -> tuple[tuple[Staircase, ...], ...]:
    """All chains S_1 <= ... <= S_d of staircases with the given sizes."""
    if len(sizes) == 1:
        return tuple((s,) for s in enumerate_staircases(m, sizes[0]))
    out = []
    for chain in _staircase_chains(m, sizes[1:]):
        for s in enumerate_staircases(m, sizes[0]):
            if s <= chain[0]:
                out.append((s,) + chain)
    return tuple(out)


@dataclass(frozen=True)
class MonomialIdealChainPoint:
    """A torus-fixed nested point: one staircase chain per framing slot.

    slots[j] is the chain (S_1 <= ... <= S_d) of exponent sets for slot j;
    levelwise total sizes across the slots give the length tuple.
    """
    num_vars: int
    slots: tuple[tuple[Staircase, ...], ...]

    @property
    def lengths(self) -> tuple[int, ...]:
        d = len(self.slots[0])
        return tuple(sum(len(chain[i]) for chain in self.slots) for i in range(d))

    def identifier(self) -> str:
        def cell_str(c):
            return "".join(str(x) for x in c) if self.num_vars > 1 else str(c[0])

        def level_str(s):
            if not s:
                return "-"
            return "+".join(cell_str(c) for c in sorted(s))

        return "|".join("<".join(level_str(s) for s in chain) for chain in self.slots)

    def to_nested_point(self) -> NestedQuotPoint:
        """Realize as a framed chain with monomial bases and unit framings."""
        m = self.num_vars
        r = len(self.slots)
        d = len(self.slots[0])
        levels = []
        indexes = []
        for i in range(d):
            cells = []
            for j, chain in enumerate(self.slots):
                for c in sorted(chain[i], key=lambda c: (sum(c), c)):
                    cells.append((j, c))
            index = {jc: k for k, jc in enumerate(cells)}
            n = len(cells)
            actions = []
            for var in range(m):
                flat = [Fraction(0)] * (n * n)
                for (j, c), k in index.items():
                    up = c[:var] + (c[var] + 1,) + c[var + 1:]
                    kk = index.get((j, up))
                    if kk is not None:
                        flat[kk * n + k] = Fraction(1)
                actions.append(QMatrix(n, n, flat))
            T = FiniteModule(m, actions, check=False)
            origin = (0,) * m
            framing = []
            for j in range(r):
                vec = [Fraction(0)] * n
                k = index.get((j, origin))
                if k is not None:
                    vec[k] = Fraction(1)
                framing.append(vec)
            levels.append(QuotPoint(T, framing))
            indexes.append(index)
        maps = []
        for i in range(d - 1):
            lo, hi = indexes[i], indexes[i + 1]
            n_lo, n_hi = len(lo), len(hi)
            flat = [Fraction(0)] * (n_lo * n_hi)
            for jc, k_hi in hi.items():
                k_lo = lo.get(jc)
                if k_lo is not None:
                    flat[k_lo * n_hi + k_hi] = Fraction(1)
            maps.append(QMatrix(n_lo, n_hi, flat))
        return NestedQuotPoint(levels, maps)


def _slot_size_vectors(d: int, cap: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Non-decreasing d-tuples bounded levelwise by cap."""
    out = []

    def rec(prefix):
        i = len(prefix)
        if i == d:
            out.append(tuple(prefix))
            return
        lo = prefix[-1] if prefix else 0
        for s in range(lo, cap[i] + 1):
            prefix.append(s)
            rec(prefix)
            prefix.pop()

    rec([])
    return out


def enumerate_fixed_points(m: int, r: int, bold_n: Sequence[int],
                           max_count: Optional[int] = None) -> list[MonomialIdealChainPoint]:
    """All torus-fixed nested points: r-tuples of nested staircase chains with
    levelwise total sizes bold_n (zero lengths dropped first)."""
    ns = tuple(n for n in (int(x) for x in bold_n) if n > 0)
    if not ns or any(a > b for a, b in zip(ns, ns[1:])):
        raise ValueError("lengths must be non-decreasing with a positive top")
    d = len(ns)
    out: list[MonomialIdealChainPoint] = []

    def rec(slot: int, remaining: tuple[int, ...], acc: list):
        if max_count is not None and len(out) > max_count:
            raise ResourceBoundExceeded(
                f"more than {max_count} torus-fixed points")
        if slot == r - 1:
            if any(a > b for a, b in zip(remaining, remaining[1:])):
                return
            for chain in _staircase_chains(m, remaining):
                out.append(MonomialIdealChainPoint(m, tuple(acc) + (chain,)))
                if max_count is not None and len(out) > max_count:
                    raise ResourceBoundExceeded(
                        f"more than {max_count} torus-fixed points")
            return
        for sizes in _slot_size_vectors(d, remaining):
            rest = tuple(a - b for a, b in zip(remaining, sizes))
            for chain in _staircase_chains(m, sizes):
                acc.append(chain)
                rec(slot + 1, rest, acc)
                acc.pop()

    rec(0, ns, [])
    return out


# ---------------------------------------------------------------------------
# the verification harness

@dataclass(frozen=True)
class ResourceBounds:
    max_jet_dim: int = DEFAULT_MAX_JET_DIM
    max_fixed_points: int = 100_000


SMOOTH_CONSISTENT = "SMOOTH-CONSISTENT"
SINGULAR_CONFIRMED = "SINGULAR-CONFIRMED"
SWEEP_INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class FixedPointRecord:
    identifier: str
    tangent_dim: int
    expected_dim: int
    verdict: str


@dataclass(frozen=True)
class SweepReport:
    m: int
    r: int
    requested_n: tuple[int, ...]
    canonical_n: tuple[int, ...]
    expected_dim: int
    verdict: str
    max_tangent: int
    records: tuple[FixedPointRecord, ...]
    classification: ClassificationVerdict
    agrees_with_classification: bool


def verify_smoothness(m: int, r: int, bold_n: Sequence[int],
                      bounds: ResourceBounds = ResourceBounds()) -> SweepReport:
    """Compute the tangent dimension at every torus-fixed point.

    All fixed points equal to the expected dimension is consistent with
    smoothness (the singular locus, when nonempty, is closed and
    torus-invariant, hence meets the fixed locus); any excess confirms a
    singular point outright.
    """
    requested = tuple(int(x) for x in bold_n)
    ns = canonicalize_lengths(requested)
    cls = classify(m, r, requested)
    e = expdim(m, r, ns)
    fixed = enumerate_fixed_points(m, r, ns, max_count=bounds.max_fixed_points)
    records = []
    max_tangent = 0
    for fp in fixed:
        z = fp.to_nested_point()
        rep = nested_tangent_dim(z, max_jet_dim=bounds.max_jet_dim)
        max_tangent = max(max_tangent, rep.tangent_dim)
        records.append(FixedPointRecord(fp.identifier(), rep.tangent_dim,
                                        rep.expected_dim, rep.verdict))
    if any(rec.tangent_dim > e for rec in records):
        verdict = SINGULAR_CONFIRMED
    elif all(rec.tangent_dim == e for rec in records):
        verdict = SMOOTH_CONSISTENT
    else:
        verdict = SWEEP_INCONCLUSIVE
    # A smooth classification demands SMOOTH-CONSISTENT; a singular one is
    # never contradicted by the sweep (a fixed-point scan can only confirm).
    agrees = verdict == SMOOTH_CONSISTENT if cls.smooth else True
    return SweepReport(m, r, requested, ns, e, verdict, max_tangent,
                       tuple(records), cls, agrees)
