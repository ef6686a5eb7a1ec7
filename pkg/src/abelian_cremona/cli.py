"""Command-line front end.

    abelian-cremona classify "Z2^2 x Z4 x Z6" [--k3-list FILE] [--json]
    abelian-cremona extensions "Z2^2" "Z4^2 x Z2" [--cap N] [--json]
    abelian-cremona lr "[2,2,1]" "[1,1]" [--json]
    abelian-cremona verify [--check NAME]... [--bound N] [--json] [--out FILE]

Exit codes: 0 success, 1 a verification check failed, 2 usage error,
3 extension list truncated by ``--cap``.
"""

from __future__ import annotations

import argparse
import json
import sys

from .classify import classify, default_k3_groups, load_k3_groups
from .extensions import enumerate_extensions
from .notation import GroupParseError, parse_group
from .partitions import lr_product, parse_partition
from .verify import CHECKS, OracleBoundError, run_suite

__all__ = ["parse_group", "build_parser", "run", "main"]

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_TRUNCATED = 0, 1, 2, 3


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="abelian-cremona", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a finite abelian group")
    p.add_argument("group")
    p.add_argument("--k3-list", metavar="FILE", help="K3 group list (default: the shipped partial list)")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("extensions", help="abelian extensions 0 -> H -> G -> K -> 0")
    p.add_argument("sub", metavar="H")
    p.add_argument("quot", metavar="K")
    p.add_argument("--cap", type=int, metavar="N")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("lr", help="Littlewood-Richardson product of two partitions")
    p.add_argument("mu")
    p.add_argument("nu")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="run verification checks")
    p.add_argument("--check", action="append", metavar="NAME", help=f"one of: {', '.join(sorted(CHECKS))}")
    p.add_argument("--bound", type=int, metavar="N")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", metavar="FILE", help="also write the JSON report here")
    return parser


def _group(text: str):
    try:
        return parse_group(text)
    except GroupParseError as exc:
        raise _UsageError(str(exc)) from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _cmd_classify(args) -> int:
    G = _group(args.group)
    try:
        k3 = load_k3_groups(args.k3_list) if args.k3_list else default_k3_groups()
    except (OSError, GroupParseError) as exc:
        raise _UsageError(f"cannot read K3 list: {exc}") from None
    if not k3:
        raise _UsageError("the K3 list is empty")
    verdict = classify(G, k3).to_dict()
    if args.json:
        print(_dump({"schema": SCHEMA, "command": "classify", "k3_list": args.k3_list or "builtin",
                     "verdict": verdict}))
        return EXIT_OK
    width = max(map(len, verdict))
    for key, value in verdict.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, ensure_ascii=False)
        print(f"{key:<{width}}  {value}")
    return EXIT_OK


def _cmd_extensions(args) -> int:
    H, K = _group(args.sub), _group(args.quot)
    if args.cap is not None and args.cap < 1:
        raise _UsageError("--cap must be >= 1")
    result = enumerate_extensions(H, K, cap=args.cap)
    if args.json:
        print(_dump({"schema": SCHEMA, "command": "extensions", **result.to_dict()}))
    else:
        print(f"extensions 0 -> {H} -> G -> {K} -> 0")
        for m in result.middles:
            print(f"  {m.group}{'  (split)' if m.split else ''}")
        if result.truncated:
            print(f"  ... truncated at {args.cap}")
    return EXIT_TRUNCATED if result.truncated else EXIT_OK


def _cmd_lr(args) -> int:
    try:
        mu, nu = parse_partition(args.mu), parse_partition(args.nu)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    product = lr_product(mu, nu)
    if args.json:
        terms = [{"partition": str(lam), "coefficient": c} for lam, c in product.items()]
        print(_dump({"schema": SCHEMA, "command": "lr", "mu": str(mu), "nu": str(nu), "terms": terms}))
    else:
        print(f"{mu}·{nu} = " + " + ".join(f"{c if c > 1 else ''}{lam}" for lam, c in product.items()))
    return EXIT_OK


def _cmd_verify(args) -> int:
    unknown = sorted(set(args.check or []) - set(CHECKS))
    if unknown:
        raise _UsageError(f"unknown check(s): {', '.join(unknown)}; known: {', '.join(sorted(CHECKS))}")
    try:
        reports = run_suite(args.check, bound=args.bound)
    except OracleBoundError as exc:
        raise _UsageError(str(exc)) from None
    ok = all(r.passed for r in reports)
    payload = {"schema": SCHEMA, "command": "verify", "status": "pass" if ok else "fail",
               "reports": [r.to_dict() for r in reports]}
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(_dump(payload) + "\n")
    if args.json:
        print(_dump(payload))
    else:
        width = max(len(r.check) for r in reports)
        for r in reports:
            print(f"{r.check:<{width}}  {r.status.upper():4}  cases={r.cases:<7} "
                  f"counterexamples={len(r.counterexamples):<3} {r.seconds:7.2f}s")
            for note in r.notes:
                print(f"{'':<{width}}  note: {note}")
            for c in r.counterexamples[:5]:
                print(f"{'':<{width}}  counterexample: {json.dumps(c, ensure_ascii=False)}")
    return EXIT_OK if ok else EXIT_FAIL


_COMMANDS = {
    "classify": _cmd_classify,
    "extensions": _cmd_extensions,
    "lr": _cmd_lr,
    "verify": _cmd_verify,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors this way
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
