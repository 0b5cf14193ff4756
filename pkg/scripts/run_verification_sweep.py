#!/usr/bin/env python3
"""Sweep the classification grid and check it against fixed-point tangents.

For every cell within the requested bounds this runs the torus-fixed-point
tangent sweep and prints one line per cell: the classification, the sweep
verdict, the fixed-point count, and the maximal tangent dimension.  Cells
whose fixed-point count or jet dimension exceeds the bounds are skipped and
reported as such.

Example:
    python scripts/run_verification_sweep.py --max-m 3 --max-r 2 --max-top 3
"""

from __future__ import annotations

import argparse
import itertools
import json
import time

from nestquot.classify import ResourceBounds, classify, verify_smoothness
from nestquot.errors import ResourceBoundExceeded


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-m", type=int, default=3)
    ap.add_argument("--max-r", type=int, default=3)
    ap.add_argument("--max-d", type=int, default=3)
    ap.add_argument("--max-top", type=int, default=4)
    ap.add_argument("--max-jet-dim", type=int, default=3000)
    ap.add_argument("--max-fixed-points", type=int, default=3000)
    ap.add_argument("--records", type=str, default=None)
    args = ap.parse_args()

    bounds = ResourceBounds(max_jet_dim=args.max_jet_dim,
                            max_fixed_points=args.max_fixed_points)
    records = open(args.records, "w") if args.records else None
    if records:
        records.write(json.dumps({"schema": "nestquot.sweep.v1"}) + "\n")
    mismatches = 0
    skipped = 0
    t0 = time.time()
    for m in range(2, args.max_m + 1):
        for r in range(1, args.max_r + 1):
            for d in range(1, args.max_d + 1):
                for ns in itertools.combinations_with_replacement(
                        range(1, args.max_top + 1), d):
                    cls = classify(m, r, ns)
                    if ns != cls.normalized_n:
                        continue
                    t1 = time.time()
                    try:
                        rep = verify_smoothness(m, r, ns, bounds)
                    except ResourceBoundExceeded as err:
                        skipped += 1
                        print(f"m={m} r={r} n={ns}: skipped ({err})")
                        continue
                    ok = rep.agrees_with_classification
                    if not ok:
                        mismatches += 1
                    print(f"m={m} r={r} n={ns}: {cls.case_label:20s} "
                          f"{rep.verdict:18s} fixed={len(rep.records):4d} "
                          f"max_tangent={rep.max_tangent:3d} "
                          f"expdim={rep.expected_dim:3d} "
                          f"{'' if ok else 'DISAGREES '}"
                          f"[{time.time() - t1:.2f}s]")
                    if records:
                        records.write(json.dumps({
                            "m": m, "r": r, "n": list(ns),
                            "case": cls.case_label, "verdict": rep.verdict,
                            "fixed_points": len(rep.records),
                            "max_tangent": rep.max_tangent,
                            "expdim": rep.expected_dim,
                            "agrees": ok}) + "\n")
    if records:
        records.close()
    print(f"done in {time.time() - t0:.1f}s, "
          f"{mismatches} disagreement(s), {skipped} skipped")


if __name__ == "__main__":
    main()
