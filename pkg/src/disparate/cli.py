"""Command-line entry point.

Exit codes: 0 when the instance is solvable or the checked property holds,
1 when it is not, 2 for unreadable input or bad usage.
"""
from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from typing import Optional, Sequence

from . import oracle
from .applications import (
    format_rectangle,
    format_sudoku,
    hall_sdr_solve,
    hall_violation,
    parse_rectangle,
    parse_sudoku,
    ryser_condition,
    ryser_extend,
    sudoku_solve,
)
from .cascades import CapExceededError, check_generalized_hall_tiny
from .instance import Instance, InstanceError, parse_instance, serialize_instance
from .kernel import calc_method_1, calc_method_2
from .suites import DEFAULT_SEED, SUITES, SuiteError, run_suite
from .transitive import hall_check_transitive, is_transitive

PARTIAL = "# partial reduction"


class UsageError(Exception):
    """Bad input; reported on stderr with exit code 2."""


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _instance(path: str) -> Instance:
    return parse_instance(_read(path))


def _wcap(k: Optional[int]) -> Optional[int]:
    if k is not None and k < 1:
        raise UsageError("--wcap must be at least 1")
    return k


def _print_selection(inst: Instance, sel: dict[str, str]) -> None:
    for x in inst.vertices:
        print(f"{x} {sel[x]}")


def cmd_solve(args) -> int:
    inst = _instance(args.file)
    if args.enumerate is not None:
        if args.enumerate < 1:
            raise UsageError("--enumerate must be at least 1")
        sels = oracle.enumerate_selections(inst, args.enumerate)
        if not sels:
            print("INFEASIBLE")
            return 1
        for i, sel in enumerate(sels):
            if i:
                print()
            _print_selection(inst, sel)
        return 0
    trace = calc_method_2(inst, _wcap(args.wcap))
    sel = trace.selection
    if trace.partial:
        print(PARTIAL)
        if sel is None:
            # a capped run can commit a point outside the true kernel
            sel = oracle.first_selection(inst)
    if sel is None:
        print("INFEASIBLE")
        return 1
    _print_selection(inst, sel)
    return 0


def cmd_kernel(args) -> int:
    inst = _instance(args.file)
    trace = calc_method_1(inst, _wcap(args.wcap))
    if trace.partial:
        print(PARTIAL)
    if args.trace:
        for line in trace.lines():
            print(line)
    if not trace.feasible:
        print("INFEASIBLE")
        return 1
    fibers = trace.fibers()
    for x in inst.vertices:
        print(f"{x}: {' '.join(fibers.get(x, []))}".rstrip())
    return 0


def cmd_critical(args) -> int:
    inst = _instance(args.file)
    if args.minimal:
        for W in oracle.minimal_critical_sets(inst):
            print(",".join(sorted(W)))
    else:
        for W, (x, y) in oracle.generalized_critical_sets(inst):
            print(f"{','.join(sorted(W))}\t({x},{y})")
    return 0


def cmd_check_hall(args) -> int:
    inst = _instance(args.file)
    if is_transitive(inst):
        print("method=transitive")
        bad = hall_check_transitive(inst)
        if bad is None:
            print("HOLDS")
            return 0
        print(f"FAILS W={','.join(sorted(bad))}")
        return 1
    try:
        ok = check_generalized_hall_tiny(inst)
    except CapExceededError as e:
        raise UsageError(f"graph is not transitive and {e}") from None
    print("method=tiny")
    print("HOLDS" if ok else "FAILS")
    return 0 if ok else 1


def cmd_ryser(args) -> int:
    rect = parse_rectangle(_read(args.file))
    v = ryser_condition(rect)
    if v is not None:
        n_v = rect.occurrences()[v]
        print(f"FAIL v={v} N={n_v} bound={rect.r + rect.s - rect.n}")
        return 1
    if args.check:
        print("PASS")
        return 0
    out = ryser_extend(rect)
    if out is None:
        raise AssertionError("condition holds but extension failed")
    sys.stdout.write(format_rectangle(out))
    return 0


def _family(text: str) -> list[set]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceError(f"malformed family document: {e.msg}") from None
    if not isinstance(doc, list) or not all(isinstance(s, list) for s in doc):
        raise InstanceError("a family is a JSON array of arrays")
    for s in doc:
        if not all(isinstance(e, (str, int)) and not isinstance(e, bool) for e in s):
            raise InstanceError("set elements must be strings or integers")
    return [set(s) for s in doc]


def cmd_sdr(args) -> int:
    family = _family(_read(args.file))
    reps = hall_sdr_solve(family)
    if reps is None:
        bad = hall_violation(family)
        print(f"FAIL sets={','.join(str(i + 1) for i in bad)}")
        return 1
    for i, r in enumerate(reps, start=1):
        print(f"{i} {r}")
    return 0


def cmd_sudoku(args) -> int:
    grid = parse_sudoku(_read(args.file))
    report = sudoku_solve(grid, unique=args.unique)
    if report.partial:
        print(PARTIAL)
    if report.solution is None:
        print("INFEASIBLE")
        return 1
    sys.stdout.write(format_sudoku(report.solution))
    if args.unique:
        print(f"unique={'true' if report.unique else 'false'}")
    return 0


def cmd_verify(args) -> int:
    inst = _instance(args.file)
    result = run_suite(args.suite, inst, seed=args.seed)
    if result.passed:
        print(f"PASS suite={result.suite} cases={result.cases}")
        return 0
    print(f"FAIL suite={result.suite}: {result.failure}", file=sys.stderr)
    sys.stdout.write(serialize_instance(result.counterexample))
    return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="disparate", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("solve", help="find a disparate selection")
    s.add_argument("file")
    s.add_argument("--enumerate", type=int, metavar="N", help="list up to N selections")
    s.add_argument("--wcap", type=int, metavar="K", help="largest W probed for elimination")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("kernel", help="reduce to the disparate kernel")
    s.add_argument("file")
    s.add_argument("--trace", action="store_true", help="print elimination steps first")
    s.add_argument("--wcap", type=int, metavar="K", help="largest W probed for elimination")
    s.set_defaults(func=cmd_kernel)

    s = sub.add_parser("critical", help="list generalized critical sets")
    s.add_argument("file")
    s.add_argument("--minimal", action="store_true", help="only inclusion-minimal sets")
    s.set_defaults(func=cmd_critical)

    s = sub.add_parser("check-hall", help="check the Hall-type condition")
    s.add_argument("file")
    s.set_defaults(func=cmd_check_hall)

    s = sub.add_parser("ryser", help="Latin rectangle extension")
    mode = s.add_mutually_exclusive_group(required=True)
    mode.add_argument("--check", action="store_true")
    mode.add_argument("--extend", action="store_true")
    s.add_argument("file")
    s.set_defaults(func=cmd_ryser)

    s = sub.add_parser("sdr", help="distinct representatives of a set family")
    s.add_argument("file")
    s.set_defaults(func=cmd_sdr)

    s = sub.add_parser("sudoku", help="solve a Sudoku grid")
    s.add_argument("file")
    s.add_argument("--unique", action="store_true", help="also decide uniqueness")
    s.set_defaults(func=cmd_sudoku)

    s = sub.add_parser("verify", help="run a property suite on an instance")
    s.add_argument("file")
    s.add_argument("--suite", required=True, choices=sorted(SUITES))
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (UsageError, InstanceError, SuiteError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def run_command(argv: Sequence[str], stdin: bytes = b"") -> tuple[int, str, str]:
    """Run the CLI in-process; returns ``(exit code, stdout, stderr)``."""
    out, err = io.StringIO(), io.StringIO()
    old_stdin = sys.stdin
    sys.stdin = io.TextIOWrapper(io.BytesIO(stdin), encoding="utf-8")
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(list(argv))
    finally:
        sys.stdin = old_stdin
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    sys.exit(main())
