"""Command-line surface: info, construct, verify, search.

Exit codes are stable and part of the interface:
  0 success, 1 verification failed, 2 construction not applicable,
  3 invalid unit set, 4 parse error, 5 clique node limit hit.
Artifacts and reports go to standard output (or --out); diagnostics go
to standard error.  The toolchain is free of randomness end to end.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    MumebError,
    NodeLimitExceeded,
    NotAUnit,
    ParseError,
    TheoremNotApplicable,
    TooSmall,
)
from .fileformat import load_family, report_to_json, serialize_family
from .ring import factorize, fields_ring, zd_ring
from .search import DEFAULT_NODE_LIMIT, difference_graph, greedy_set, max_clique
from .verify import verify_family
from .weyl import build_family, family_from_units, validate_set_condition

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_NOT_APPLICABLE = 2
EXIT_INVALID_SET = 3
EXIT_PARSE_ERROR = 4
EXIT_NODE_LIMIT = 5


def _ring_for(d: int, mode: str):
    return fields_ring(d) if mode == "fields" else zd_ring(d)


def cmd_info(args) -> int:
    d = args.d
    powers = factorize(d)
    q1 = powers[0][0] ** powers[0][1]
    p1 = min(p for p, _ in powers)
    info = {
        "d": d,
        "factorization": [[p, a] for p, a in powers],
        "component_order": [f"{p}^{a}" for p, a in powers],
        "q1": q1,
        "smallest_prime": p1,
        "fields_applicable": q1 >= 3,
        "fields_bases": q1 - 1 if q1 >= 3 else 0,
        "zd_bases": p1 - 1,
    }
    print(json.dumps(info, indent=2))
    return EXIT_OK


def _parse_set_arg(raw: str) -> list[int] | None:
    if raw == "auto":
        return None
    try:
        values = [int(part) for part in raw.split(",") if part.strip() != ""]
    except ValueError:
        raise NotAUnit(f"cannot parse set {raw!r}: expected comma-separated integers")
    if not values:
        raise NotAUnit(f"set {raw!r} is empty")
    return values


def cmd_construct(args) -> int:
    try:
        scalars = _parse_set_arg(args.set)
    except NotAUnit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_SET

    try:
        if scalars is None:
            family = build_family(args.d, args.ring, allow_single=args.allow_single)
        else:
            ring = _ring_for(args.d, args.ring)
            units = [ring.scalar(k) for k in scalars]
            condition = validate_set_condition(ring, units)
            if not condition and not args.force:
                print(f"error: invalid set: {condition.reason}", file=sys.stderr)
                return EXIT_INVALID_SET
            if not condition:
                print(
                    f"warning: set violates the unit-difference condition "
                    f"({condition.reason}); writing anyway because of --force",
                    file=sys.stderr,
                )
            family = family_from_units(ring, units, require_condition=False)
    except TheoremNotApplicable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_APPLICABLE
    except (NotAUnit, TooSmall) as exc:
        print(f"error: invalid set: {exc}", file=sys.stderr)
        return EXIT_INVALID_SET

    text = serialize_family(family, dense=args.dense)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(
            f"wrote {len(family.bases)} bases over {family.ring!r} to {args.out}",
            file=sys.stderr,
        )
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        family = load_family(args.path)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    report = verify_family(
        family, tol=args.tol, mode=args.mode, max_pairs=args.max_pairs
    )
    sys.stdout.write(report_to_json(report))
    return EXIT_OK if report.overall else EXIT_VERIFY_FAILED


def cmd_search(args) -> int:
    ring = _ring_for(args.d, args.ring)
    graph = difference_graph(ring)
    exit_code = EXIT_OK
    if args.greedy:
        found = greedy_set(graph)
        certified = False
        mode = "greedy"
    else:
        mode = "exact"
        try:
            found = max_clique(graph, node_limit=args.node_limit)
            certified = True
        except NodeLimitExceeded as exc:
            print(f"warning: {exc}; reporting best clique found", file=sys.stderr)
            found = exc.best
            certified = False
            exit_code = EXIT_NODE_LIMIT
    result = {
        "d": args.d,
        "ring": args.ring,
        "mode": mode,
        "size": len(found),
        "certified_maximum": certified,
        "set": [ring.element_to_json(x) for x in found],
    }
    print(json.dumps(result, indent=2))
    return exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mumeb",
        description="Construct and certify mutually unbiased maximally entangled bases.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_info = sub.add_parser("info", help="factorization and guaranteed family sizes")
    p_info.add_argument("d", type=int)
    p_info.set_defaults(func=cmd_info)

    p_con = sub.add_parser("construct", help="build a family and write it as JSON")
    p_con.add_argument("d", type=int)
    p_con.add_argument("--ring", choices=("fields", "zd"), default="fields")
    p_con.add_argument(
        "--set",
        default="auto",
        help="comma-separated integers taken as multiples of 1 in the ring, or 'auto'",
    )
    p_con.add_argument("--out", help="output path (default: standard output)")
    p_con.add_argument(
        "--allow-single",
        action="store_true",
        help="permit a one-basis family when the construction bound is 1",
    )
    p_con.add_argument(
        "--force",
        action="store_true",
        help="write the family even if the set violates the unit-difference condition",
    )
    p_con.add_argument(
        "--dense",
        action="store_true",
        help="also embed dense amplitudes (17 significant digits) per state",
    )
    p_con.set_defaults(func=cmd_construct)

    p_ver = sub.add_parser("verify", help="certify a family file")
    p_ver.add_argument("path")
    p_ver.add_argument("--tol", type=float, default=1e-9)
    p_ver.add_argument("--mode", choices=("exact", "numeric", "both"), default="both")
    p_ver.add_argument(
        "--max-pairs",
        type=int,
        default=None,
        help="cap the cross sweep at this many deterministically sampled basis pairs",
    )
    p_ver.set_defaults(func=cmd_verify)

    p_sea = sub.add_parser("search", help="maximal admissible unit sets")
    p_sea.add_argument("d", type=int)
    p_sea.add_argument("--ring", choices=("fields", "zd"), default="fields")
    group = p_sea.add_mutually_exclusive_group()
    group.add_argument("--exact", action="store_true", default=True)
    group.add_argument("--greedy", action="store_true")
    p_sea.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT)
    p_sea.set_defaults(func=cmd_search)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "d", 2) < 2:
        print("error: need d >= 2", file=sys.stderr)
        return EXIT_NOT_APPLICABLE
    try:
        return args.func(args)
    except MumebError as exc:  # pragma: no cover - safety net for unmapped errors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR


if __name__ == "__main__":
    sys.exit(main())
