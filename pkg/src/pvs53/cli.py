"""Command line entry point: verify, show, classify, search.

Exit codes: 0 success, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import checks, lie
from .group import LiePair
from .maps import Fx, Phi2, Phi3, phi3
from .search import load_transform, report_json, search
from .wpoint import W_LITERAL, Q_form

A_NAMES = ("a0", "a1", "a2", "a3", "a4")
SHOWABLE = ("w", "S", "F", "Q", "Phi2w", "phi3w")


class UsageError(Exception):
    pass


def _emit(obj, fmt: str, text: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_verify(args) -> int:
    selected = checks.select(args.filter)
    if args.filter and not selected:
        print(f"warning: no check matches {args.filter!r}", file=sys.stderr)
    start = time.perf_counter()
    try:
        results = checks.run_checks(args.filter, seed=args.seed, golden_path=args.golden)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read golden file: {exc}") from exc
    wall = time.perf_counter() - start
    ok = all(c.ok for c in results)
    if args.format == "json":
        report = {"status": "pass" if ok else "fail", "seed": args.seed, "wall_time": round(wall, 3),
                  "checks": [c.to_json() for c in results]}
        print(json.dumps(report, indent=2))
    else:
        for c in results:
            print(f"{'PASS' if c.ok else 'FAIL'}  {c.name}  ({c.seconds:.2f}s)")
            if not c.ok:
                print(f"    expected: {c.expected}")
                print(f"    actual:   {c.actual}")
        passed = sum(c.ok for c in results)
        print(f"{passed}/{len(results)} checks passed in {wall:.2f}s")
    return 0 if ok else 1


def cmd_show(args) -> int:
    obj = args.object
    if obj == "w":
        _emit(W_LITERAL.to_json(), args.format, W_LITERAL.to_expression())
    elif obj == "S":
        comps = [W_LITERAL.component(k) for k in range(3)]
        _emit(
            {"basis": [c.to_json() for c in comps], "pluecker": Phi3(W_LITERAL).to_json()},
            args.format,
            "span{ " + ", ".join(c.to_text() for c in comps) + " }",
        )
    elif obj == "F":
        f = Fx(W_LITERAL)
        _emit(f.to_json(), args.format, f.to_text(A_NAMES))
    elif obj == "Q":
        q = Q_form()
        _emit(q.to_json(), args.format, q.to_text(A_NAMES))
    elif obj == "Phi2w":
        f = Phi2(W_LITERAL)
        _emit(f.to_json(), args.format, f.to_text(A_NAMES))
    elif obj == "phi3w":
        m = phi3(W_LITERAL)
        _emit(m.to_json(), args.format, m.to_text())
    return 0


def _read_basis(path: str) -> list[LiePair]:
    try:
        with open(path) as fh:
            data = json.load(fh)
        return [LiePair.from_json(item) for item in data]
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot read basis file {path!r}: {exc}") from exc


def cmd_classify(args) -> int:
    basis = _read_basis(args.basis)
    closed = lie.closure(basis)
    member = None
    if lie.contains(closed, lie.h_basis()):
        member = lie.identify(closed)
    report = {"input_dim": lie.dimension(basis), "closure_dim": len(closed), "member": member,
              "basis": [p.to_json() for p in closed]}
    text = f"input dimension {report['input_dim']}, closure dimension {len(closed)}"
    text += f", equals {member}" if member else ", not one of the seven intermediate subalgebras"
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(text)
    return 0


def cmd_search(args) -> int:
    try:
        g = load_transform(args.g)
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        raise UsageError(f"cannot load transform {args.g!r}: {exc}") from exc
    try:
        report = search(g, args.box, args.range, args.eps, workers=args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report_json(report))
    if args.format == "json":
        print(report_json(report))
    else:
        hit = sum(1 for h in report["histogram"] if h["count"])
        print(f"points: {report['point_count']}")
        print(f"bins hit: {hit}/{len(report['histogram'])}  coverage: {report['coverage']:.4f}")
        print(f"min nonzero |F|: {report['min_abs_nonzero']}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pvs53", description="Exact computations on wedge^2 k^5 (x) k^3")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the exact check suite")
    p.add_argument("filter", nargs="?", default=None, help="glob over check names, e.g. 'pfaffians*'")
    p.add_argument("--golden", default=None, help="replacement golden-value file")
    p.add_argument("--seed", type=int, default=checks.DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("show", help="print a fixed object")
    p.add_argument("object", choices=SHOWABLE)
    p.set_defaults(func=cmd_show)

    p = sub.add_parser("classify", help="closure of a set of (X, Y) pairs")
    p.add_argument("--basis", required=True, help="JSON list of {\"X\": 5x5, \"Y\": 3x3}")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("search", help="values of F(g^-1 a) at primitive integer points")
    p.add_argument("--g", default="golden", help="preset name (golden, identity) or JSON file with g1")
    p.add_argument("--box", type=int, required=True)
    p.add_argument("--range", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_search)

    # accept --format after the subcommand too
    for action in sub.choices.values():
        action.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
