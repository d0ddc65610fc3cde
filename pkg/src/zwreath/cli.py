"""Command-line front end for the polynomial-to-group-equation pipeline.

Rank lists are given outermost-base-first: `--ranks n,m` is the flat group
Z^n wr Z^m, and longer lists build the right-iterated product from the
outside in (the acting group is always the last entry).  All output is UTF-8
with LF line endings and is byte-identical across repeated invocations.
"""

from __future__ import annotations

import argparse
import sys

from .equations import check_system, parse_assignment, parse_system, serialize_assignment, serialize_system
from .errors import Error, ParseError, PreconditionError
from .interp import IteratedSpec, compile_iterated
from .laurent import INFINITY, aug_valuation, poly_str
from .reduction import oracle_ef, parse_intpoly
from .selftest import run_all
from .wreath import GroupSpec, lcs_rank

EXIT_OK = 0
EXIT_UNSATISFIED = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3


def _parse_ranks(text):
    try:
        ranks = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ParseError(f"ranks must be comma-separated integers, got {text!r}") from None
    if not ranks or any(r < 1 for r in ranks):
        raise ParseError(f"ranks must be positive, got {text!r}")
    return ranks


def _ambient_spec(ranks):
    """Evaluation spec for the rank list: flat for two ranks, nested beyond."""
    if len(ranks) == 1:
        raise ParseError("need at least two ranks (base and acting group)")
    if len(ranks) == 2:
        return GroupSpec(m=ranks[1], n=ranks[0])
    return IteratedSpec(ranks)


def _parse_solution(text):
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ParseError(f"solution must be comma-separated integers, got {text!r}") from None


def _write_output(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _read(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _compiled(args):
    f = parse_intpoly(args.poly)
    ranks = _parse_ranks(args.ranks)
    if len(ranks) < 2:
        raise ParseError("need at least two ranks (base and acting group)")
    return compile_iterated(f, IteratedSpec(ranks)), _ambient_spec(ranks)


def _cmd_compile(args):
    compiled, _ = _compiled(args)
    _write_output(serialize_system(compiled.system), args.output)
    return EXIT_OK


def _cmd_witness(args):
    compiled, _ = _compiled(args)
    asg = compiled.witness(_parse_solution(args.solution))
    _write_output(serialize_assignment(asg), args.output)
    return EXIT_OK


def _cmd_verify(args):
    ranks = _parse_ranks(args.ranks)
    spec = _ambient_spec(ranks)
    system = parse_system(_read(args.system), spec)
    assignment = parse_assignment(_read(args.assignment), spec)
    report = check_system(system, assignment, spec)
    for idx in range(len(system.equations)):
        verdict = "FAIL" if idx in report.failures else "ok"
        print(f"equation {idx + 1}: {verdict}")
    if report.ok:
        print(f"satisfied: all {len(system.equations)} equations hold")
        return EXIT_OK
    print(f"unsatisfied: {len(report.failures)} of {len(system.equations)} equations fail")
    return EXIT_UNSATISFIED


def _cmd_oracle(args):
    f = parse_intpoly(args.poly)
    ranks = _parse_ranks(args.ranks)
    if len(ranks) < 2:
        raise ParseError("need at least two ranks (base and acting group)")
    z = _parse_solution(args.solution)
    e_f, member = oracle_ef(f, z, rank=ranks[-1])
    d = f.degree()
    val = aug_valuation(e_f)
    val_text = "INFINITY" if val == INFINITY else str(val)
    print(f"e_f = {poly_str(e_f)}")
    if member:
        print(f"valuation {val_text} >= {d + 1}: solution")
    else:
        print(f"valuation {val_text} < {d + 1}: NOT a solution")
    return EXIT_OK


def _cmd_extract(args):
    compiled, spec = _compiled(args)
    assignment = parse_assignment(_read(args.assignment), spec)
    z = compiled.extract_solution(assignment)
    print(",".join(str(v) for v in z))
    return EXIT_OK


def _cmd_lcs_rank(args):
    ranks = _parse_ranks(args.ranks)
    if len(ranks) != 2:
        raise ParseError("lcs-rank is defined for exactly two ranks")
    print(lcs_rank(args.i, GroupSpec(m=ranks[1], n=ranks[0])))
    return EXIT_OK


def _cmd_selftest(args):
    ok = run_all(samples=args.samples, seed=args.seed)
    return EXIT_OK if ok else EXIT_UNSATISFIED


def build_parser():
    parser = argparse.ArgumentParser(
        prog="zwreath",
        description="Wreath products of free abelian groups and the reduction "
                    "from integer polynomial equations to group-equation systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_poly_ranks(p):
        p.add_argument("--poly", required=True, help="integer polynomial, e.g. 'z1^2*z2 - 3'")
        p.add_argument("--ranks", required=True,
                       help="comma-separated ranks, outermost base first (e.g. 1,1)")

    p = sub.add_parser("compile", help="compile a polynomial to a group-equation system")
    add_poly_ranks(p)
    p.add_argument("-o", "--output", help="output file (default: stdout)")
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser("witness", help="build a satisfying assignment from an integer root")
    add_poly_ranks(p)
    p.add_argument("--solution", required=True, help="comma-separated root, e.g. '2' or '2,3'")
    p.add_argument("-o", "--output", help="output file (default: stdout)")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("verify", help="check an assignment against a system file")
    p.add_argument("--ranks", required=True)
    p.add_argument("--system", required=True, help="system file")
    p.add_argument("--assignment", required=True, help="assignment file")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="evaluate the membership polynomial for a candidate root")
    add_poly_ranks(p)
    p.add_argument("--solution", required=True)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("extract", help="read the integer root off a satisfying assignment")
    add_poly_ranks(p)
    p.add_argument("--assignment", required=True)
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("lcs-rank", help="rank of a lower-central-series quotient")
    p.add_argument("--ranks", required=True)
    p.add_argument("--i", type=int, required=True, dest="i", help="series index, >= 2")
    p.set_defaults(func=_cmd_lcs_rank)

    p = sub.add_parser("selftest", help="run the randomized property suites")
    p.add_argument("--samples", type=int, default=None,
                   help="samples per suite (default: per-suite values)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
