#!/usr/bin/env python3
"""Regenerate the point-file fixtures shipped in fixtures/.

  fat_point_r2.point   [Q[x,y]^2 ->> O_0^2], the length-2 singular point
  fat_chain_r2.point   [Q[x,y]^2 ->> O_0^2 ->> O_0], the nested witness
  simple_point.point   [Q[x,y] ->> O_0], a single reduced point
  curvilinear.point    [Q[x,y] ->> O/(y, x^2)], smooth length-2 point
  staircase_21.point   the monomial point of the partition (2,1)
"""

from __future__ import annotations

import os

from nestquot.classify import (enumerate_fixed_points, fat_chain, fat_point,
                               simple_point)
from nestquot.linalg import QMatrix
from nestquot.modules import FiniteModule
from nestquot.pointfile import save_point_file
from nestquot.points import QuotPoint, nested_from_quot

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def curvilinear_point() -> QuotPoint:
    X = QMatrix(2, 2, [0, 0, 1, 0])
    Y = QMatrix.zeros(2, 2)
    return QuotPoint(FiniteModule(2, [X, Y]), [(1, 0)])


def main():
    os.makedirs(FIXTURES, exist_ok=True)
    points = {
        "fat_point_r2.point": nested_from_quot(fat_point(2, 2)),
        "fat_chain_r2.point": fat_chain(2, 2),
        "simple_point.point": nested_from_quot(simple_point(2, 1)),
        "curvilinear.point": nested_from_quot(curvilinear_point()),
    }
    partition_21 = next(
        fp for fp in enumerate_fixed_points(2, 1, (3,))
        if sorted(fp.slots[0][0]) == [(0, 0), (0, 1), (1, 0)])
    points["staircase_21.point"] = partition_21.to_nested_point()
    for name, z in points.items():
        z.validate()
        path = os.path.join(FIXTURES, name)
        save_point_file(z, path)
        print(f"wrote {os.path.normpath(path)}")


if __name__ == "__main__":
    main()
