#!/usr/bin/env python3
"""Regenerate the frozen classification grid used by the regression tests.

The table below is a direct transcription of the smoothness classification
and the singular case list, written as independent clauses over the
canonical parameters (m, r, d, lengths) so the test target is not produced
by the library's own decision procedure.  Output: tab-separated lines
  m  r  lengths  verdict  case  canonical
for every non-decreasing tuple with m <= 4, r <= 3, d <= 3, n_d <= 4.
"""

from __future__ import annotations

import itertools
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "tests", "golden",
                   "classification_grid.tsv")


def canonical(ns):
    out = []
    for n in ns:
        if n > 0 and (not out or out[-1] != n):
            out.append(n)
    return tuple(out)


SMOOTH_CLAUSES = [
    ("Curve", lambda m, r, c: m == 1),
    ("ProjBundle", lambda m, r, c: c == (1,)),
    ("Fogarty", lambda m, r, c: r == 1 and m == 2 and len(c) == 1),
    ("SurfaceNested", lambda m, r, c: r == 1 and m == 2 and len(c) == 2
        and c[1] == c[0] + 1),
    ("HigherDim3", lambda m, r, c: r == 1 and m >= 3 and len(c) == 1
        and c[0] <= 3),
    ("HigherDimNested", lambda m, r, c: r == 1 and m >= 3
        and c in ((1, 2), (2, 3))),
]

SINGULAR_CLAUSES = [
    ("Singular-A", lambda m, r, c: r >= 2 and len(c) == 1 and c[0] >= 2),
    ("Singular-B", lambda m, r, c: r >= 2 and len(c) == 2 and c[1] == c[0] + 1),
    ("Singular-Cheah-i", lambda m, r, c: len(c) >= 3),
    ("Singular-Cheah-ii", lambda m, r, c: m == 2 and len(c) == 2
        and c[1] - c[0] >= 2),
    ("Singular-Cheah-iii", lambda m, r, c: m >= 3 and len(c) == 1
        and c[0] >= 4),
    ("Singular-Cheah-iv", lambda m, r, c: m >= 3 and len(c) == 2
        and c not in ((1, 2), (2, 3))),
]


def label(m, r, ns):
    c = canonical(ns)
    for name, clause in SMOOTH_CLAUSES:
        if clause(m, r, c):
            return True, name, c
    for name, clause in SINGULAR_CLAUSES:
        if clause(m, r, c):
            return False, name, c
    raise AssertionError(f"uncovered cell (m={m}, r={r}, n={ns})")


def grid():
    for m in range(1, 5):
        for r in range(1, 4):
            for d in range(1, 4):
                for ns in itertools.combinations_with_replacement(range(0, 5), d):
                    if ns[-1] == 0:
                        continue
                    yield m, r, ns


def main():
    lines = []
    for m, r, ns in grid():
        smooth, case, c = label(m, r, ns)
        lines.append("\t".join([
            str(m), str(r), ",".join(str(x) for x in ns),
            "smooth" if smooth else "singular", case,
            ",".join(str(x) for x in c)]))
    os.makedirs(os.path.dirname(OUT), exist_ok=True)
    with open(OUT, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} rows to {os.path.normpath(OUT)}")


if __name__ == "__main__":
    main()
