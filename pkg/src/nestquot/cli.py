"""Command-line front end.

Subcommands: classify, tangent, witness, verify, and the ncquot group
(dim, stable, defect, iso).  Exit codes: 0 success, 2 usage, 3 parse error,
4 invalid point, 5 unsupported witness request (including refusals on
smooth cases), 6 resource bound exceeded.

Structured output is line-delimited JSON with a schema header record so
regression suites can diff records rather than prose.  Resource bounds
default to NESTQUOT_MAX_JET_DIM / NESTQUOT_MAX_FIXED_POINTS when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .classify import (ClassificationVerdict, ResourceBounds, SweepReport,
                       classify, verify_smoothness, witness_singular)
from .errors import (InvalidPoint, NestquotError, NotCommuting, NotStable,
                     ParseError, ResourceBoundExceeded, SmoothCase,
                     Unsupported)
from .ncquot import (NCQuotPoint, commutator_defect, framed_isomorphic,
                     nc_is_stable, ncquot_dim)
from .pointfile import (dumps_point, load_nc_point_file, load_point_file,
                        save_point_file)
from .points import expdim, nested_tangent_dim, tangent_details

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_INVALID_POINT = 4
EXIT_UNSUPPORTED = 5
EXIT_RESOURCE = 6


def _parse_lengths(text: str) -> tuple[int, ...]:
    try:
        ns = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise ValueError(f"malformed length tuple {text!r}")
    if not ns:
        raise ValueError("empty length tuple")
    return ns


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"environment variable {name} must be an integer")


def _bounds(args) -> ResourceBounds:
    jet = args.max_jet_dim if args.max_jet_dim is not None \
        else _env_int("NESTQUOT_MAX_JET_DIM", ResourceBounds.max_jet_dim)
    fp = args.max_fixed_points if getattr(args, "max_fixed_points", None) is not None \
        else _env_int("NESTQUOT_MAX_FIXED_POINTS", ResourceBounds.max_fixed_points)
    return ResourceBounds(max_jet_dim=jet, max_fixed_points=fp)


def _print_classification(v: ClassificationVerdict, m: int, r: int, as_json: bool) -> None:
    e = expdim(m, r, v.normalized_n)
    if as_json:
        print(json.dumps({"schema": "nestquot.classify.v1", "m": m, "r": r,
                          "canonical_n": list(v.normalized_n),
                          "smooth": v.smooth, "case": v.case_label,
                          "expdim": e}))
        return
    word = "smooth" if v.smooth else "singular"
    print(f"verdict: {word} ({v.case_label})")
    print("canonical n: " + ",".join(str(n) for n in v.normalized_n))
    print(f"expdim: {e}")


def cmd_classify(args) -> int:
    ns = _parse_lengths(args.n)
    v = classify(args.m, args.r, ns)
    _print_classification(v, args.m, args.r, args.json)
    return EXIT_OK


def cmd_tangent(args) -> int:
    z = load_point_file(args.point_file)
    z.validate()
    bounds = _bounds(args)
    report = nested_tangent_dim(z, max_jet_dim=bounds.max_jet_dim)
    if args.json:
        print(json.dumps({"schema": "nestquot.tangent.v1",
                          "m": z.num_vars, "r": z.r,
                          "lengths": list(z.lengths),
                          "tangent": report.tangent_dim,
                          "expdim": report.expected_dim,
                          "verdict": report.verdict}))
    else:
        print(f"m={z.num_vars} r={z.r} lengths=" +
              ",".join(str(n) for n in z.lengths))
        print(f"tangent: {report.tangent_dim}")
        print(f"expdim: {report.expected_dim}")
        print(f"verdict: {report.verdict}")
    if args.show_delta:
        for st in tangent_details(z, max_jet_dim=bounds.max_jet_dim):
            pt = ",".join(str(c) for c in st.point)
            rows, cols = st.delta_shape
            print(f"delta at ({pt}): {rows} x {cols}, local lengths "
                  + ",".join(str(n) for n in st.lengths)
                  + f", local tangent {st.tangent_dim}")
    return EXIT_OK


def cmd_witness(args) -> int:
    ns = _parse_lengths(args.n)
    z = witness_singular(args.m, args.r, ns)
    save_point_file(z, args.out)
    bounds = _bounds(args)
    report = nested_tangent_dim(z, max_jet_dim=bounds.max_jet_dim)
    print(f"wrote {args.out}")
    print(f"tangent: {report.tangent_dim}")
    print(f"expdim: {report.expected_dim}")
    print(f"verdict: {report.verdict}")
    return EXIT_OK


def cmd_verify(args) -> int:
    ns = _parse_lengths(args.n)
    bounds = _bounds(args)
    report = verify_smoothness(args.m, args.r, ns, bounds)
    records = None
    if args.records:
        records = open(args.records, "w", encoding="utf-8")
    try:
        header = {"schema": "nestquot.verify.v1", "m": report.m, "r": report.r,
                  "canonical_n": list(report.canonical_n),
                  "expdim": report.expected_dim,
                  "classification": report.classification.case_label}
        if records:
            records.write(json.dumps(header) + "\n")
        print(f"m={report.m} r={report.r} n=" +
              ",".join(str(n) for n in report.canonical_n)
              + f" expdim={report.expected_dim}")
        print(f"{'fixed point':40s} {'tangent':>8s} {'expdim':>8s}  verdict")
        for rec in report.records:
            print(f"{rec.identifier:40s} {rec.tangent_dim:8d} "
                  f"{rec.expected_dim:8d}  {rec.verdict}")
            if records:
                records.write(json.dumps({
                    "fixed_point": rec.identifier,
                    "tangent": rec.tangent_dim,
                    "expdim": rec.expected_dim,
                    "verdict": rec.verdict}) + "\n")
        print(f"fixed points: {len(report.records)}")
        print(f"max tangent: {report.max_tangent}")
        print(f"verdict: {report.verdict}")
        print(f"classification: {report.classification.case_label}")
        print(f"agreement: {'yes' if report.agrees_with_classification else 'NO'}")
    finally:
        if records:
            records.close()
    return EXIT_OK


def cmd_ncquot(args) -> int:
    if args.nc_command == "dim":
        print(ncquot_dim(args.m, args.dim_n, args.r))
        return EXIT_OK
    if args.nc_command == "stable":
        p = load_nc_point_file(args.point_file)
        stable = nc_is_stable(p)
        print("stable" if stable else "unstable")
        return EXIT_OK
    if args.nc_command == "defect":
        p = load_nc_point_file(args.point_file)
        ranks = commutator_defect(p)
        print("commutator ranks: " + (" ".join(str(x) for x in ranks) if ranks else "none"))
        print("commuting" if not any(ranks) else "not commuting")
        return EXIT_OK
    if args.nc_command == "iso":
        p = load_nc_point_file(args.point_file)
        q = load_nc_point_file(args.other_file)
        g = framed_isomorphic(p, q)
        if g is None:
            print("not isomorphic")
        else:
            print("isomorphic; intertwiner rows:")
            for i in range(g.rows):
                print(" ".join(str(x) for x in g.row(i)))
        return EXIT_OK
    raise AssertionError("unknown ncquot subcommand")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nestquot",
        description="Exact tangent computations and smoothness checks for "
                    "nested punctual Quot schemes over affine space.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_mrn(p):
        p.add_argument("-m", type=int, required=True, help="ambient dimension")
        p.add_argument("-r", type=int, required=True, help="framing rank")
        p.add_argument("-n", type=str, required=True,
                       help="comma-separated non-decreasing lengths, e.g. 2,3")

    p = sub.add_parser("classify", help="decide smoothness from (m, r, n)")
    add_mrn(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("tangent", help="tangent dimension at a point file")
    p.add_argument("point_file")
    p.add_argument("--show-delta", action="store_true",
                   help="print the flag differential shapes per support point")
    p.add_argument("--json", action="store_true")
    p.add_argument("--max-jet-dim", type=int, default=None)
    p.set_defaults(func=cmd_tangent)

    p = sub.add_parser("witness", help="write a singular witness point file")
    add_mrn(p)
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--max-jet-dim", type=int, default=None)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="tangent sweep over all torus-fixed points")
    add_mrn(p)
    p.add_argument("--records", type=str, default=None,
                   help="write line-delimited JSON records to this path")
    p.add_argument("--max-jet-dim", type=int, default=None)
    p.add_argument("--max-fixed-points", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ncquot", help="framed data without commutation")
    nc = p.add_subparsers(dest="nc_command", required=True)
    q = nc.add_parser("dim", help="dimension of the framed-data moduli space")
    q.add_argument("-m", type=int, required=True)
    q.add_argument("-n", dest="dim_n", type=int, required=True)
    q.add_argument("-r", type=int, required=True)
    q = nc.add_parser("stable", help="Krylov stability of a point file")
    q.add_argument("point_file")
    q = nc.add_parser("defect", help="commutator ranks of a point file")
    q.add_argument("point_file")
    q = nc.add_parser("iso", help="framed isomorphism test between two files")
    q.add_argument("point_file")
    q.add_argument("other_file")
    p.set_defaults(func=cmd_ncquot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidPoint, NotStable, NotCommuting) as err:
        print(f"invalid point: {err}", file=sys.stderr)
        return EXIT_INVALID_POINT
    except (Unsupported, SmoothCase) as err:
        print(f"unsupported: {err}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ResourceBoundExceeded as err:
        print(f"resource bound exceeded: {err}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
