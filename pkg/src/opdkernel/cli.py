"""Command line interface.

Exit codes: 0 success or yes, 1 no, 2 unknown, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import InputFormatError, UnverifiableError
from .generators import generate_instance
from .io import format_instance, format_result, read_instance
from .modulator import EXACT, HEURISTIC
from .oracle import min_deletion_set
from .outerplanar import find_obstruction
from .pipeline import TRIVIALLY_NO, UNKNOWN, KernelConfig, check_obstruction, kernelize, verify
from .protrusion import AGGRESSIVE, STRICT

OK, NO, UNKNOWN_EXIT, INPUT_ERROR = 0, 1, 2, 3


def _budget(args, k_file):
    k = args.k if args.k is not None else k_file
    if k is None:
        raise InputFormatError("no budget: pass -k or add a 'k <budget>' line")
    if k < 0:
        raise InputFormatError("budget must be non-negative")
    return k


def cmd_check(args) -> int:
    g, _ = read_instance(args.file)
    obs = find_obstruction(g)
    if obs is None:
        print("outerplanar")
        return OK
    sets = " | ".join(" ".join(map(str, sorted(b))) for b in obs.branch_sets)
    print(f"not outerplanar: {obs.kind} minor, branch sets {sets}")
    return NO


def cmd_opd_exact(args) -> int:
    g, _ = read_instance(args.file)
    sol = min_deletion_set(g, args.cap)
    if sol is None:
        print(f"opd > {args.cap}")
        return NO
    print(f"opd {len(sol)}")
    print("solution " + " ".join(map(str, sorted(sol))))
    return OK


def cmd_kernelize(args) -> int:
    g, k_file = read_instance(args.file)
    k = _budget(args, k_file)
    config = KernelConfig(provider=args.provider, c=args.c, mode=args.mode)
    result = kernelize(g, k, config)
    text = format_result(result)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.stats == "json":
        print(json.dumps(result.stats, sort_keys=True), file=sys.stderr)
    if result.verdict == TRIVIALLY_NO:
        return NO
    if result.verdict == UNKNOWN:
        return UNKNOWN_EXIT
    return OK


def cmd_verify(args) -> int:
    g, k_file = read_instance(args.file)
    k = _budget(args, k_file)
    result = kernelize(g, k, KernelConfig(mode=args.mode))
    try:
        report = verify(g, k, result)
    except UnverifiableError as exc:
        print(f"unverifiable: {exc}")
        return UNKNOWN_EXIT
    print(f"verdict {result.verdict}: n {g.n} -> {result.graph.n}, k {k} -> {result.k}")
    print(f"opd within budget: input {report.opd_in}, output {report.opd_out}")
    for failure in report.failures:
        print(f"FAIL {failure}")
    print(f"{len(report.failures)} failures")
    return OK if report.ok else NO


def cmd_gen(args) -> int:
    g, meta = generate_instance(args.seed, args.n, args.apex, args.p, args.drop)
    comments = [f"generated seed {args.seed} n_base {args.n} apex {args.apex} p {args.p} drop {args.drop}"]
    comments.append(f"opd at most {args.apex}")
    sys.stdout.write(format_instance(g, args.apex, comments))
    return OK


def cmd_obstruction(args) -> int:
    g, _ = read_instance(args.file)
    try:
        minimal = check_obstruction(g, args.k)
    except UnverifiableError as exc:
        print(f"refused: {exc}")
        return UNKNOWN_EXIT
    print("minimal obstruction" if minimal else "not a minimal obstruction")
    return OK if minimal else NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="opdkernel", description="Outerplanar deletion kernelization tools")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="test outerplanarity")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("opd-exact", help="exact outerplanar deletion number up to a cap")
    p.add_argument("file")
    p.add_argument("--cap", type=int, required=True)
    p.set_defaults(func=cmd_opd_exact)

    p = sub.add_parser("kernelize", help="compute a kernel")
    p.add_argument("file")
    p.add_argument("-k", type=int)
    p.add_argument("--mode", choices=[AGGRESSIVE, STRICT], default=AGGRESSIVE)
    p.add_argument("--provider", choices=[EXACT, HEURISTIC], default=EXACT)
    p.add_argument("--c", type=int, help="approximation factor of the provider")
    p.add_argument("--stats", choices=["json"])
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("verify", help="kernelize and check the result with the exact solver")
    p.add_argument("file")
    p.add_argument("-k", type=int)
    p.add_argument("--mode", choices=[AGGRESSIVE, STRICT], default=AGGRESSIVE)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--apex", type=int, default=0)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--drop", type=float, default=0.0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("obstruction", help="test for a minor-minimal graph with opd > k")
    p.add_argument("file")
    p.add_argument("-k", type=int, required=True)
    p.set_defaults(func=cmd_obstruction)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else INPUT_ERROR
    try:
        return args.func(args)
    except InputFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
