#!/usr/bin/env python3
"""
Command-line entry point

    python cli.py construct --family Skeleton --n 3 --p 1
    python cli.py gb --ideal skel.ideal --order lex
    python cli.py member --ideal diag.ideal --poly "x1-x2"
    python cli.py verify-family --family LiLi --n 3 --p 2 --m 2 --json
    python cli.py dodeca --method interpolation

Exit codes: 0 pass, 1 verification failure, 2 usage or parse error,
3 step budget exceeded.
"""

import argparse
import logging
import sys
from typing import Callable, Dict, Optional, Sequence, TextIO, Tuple

from arrangements import Family, FamilySpec, cube_example_report, family_generators, truncation_example_report, verify_family
from config import config, get_max_betti_variables, get_step_budget
from data_parser import dump_ideal, load_ideal_file
from dodeca import dodeca_report
from error_handler import AlgebraError, BudgetExceededError, error_handler
from groebner import Ideal, StepBudget, hilbert, intersect_all
from invariants import pure_type, regularity, betti_table, skeleton_checks
from output_formatter import EXIT_BUDGET, EXIT_FAIL, EXIT_PASS, EXIT_USAGE, ReportFormatter, VerificationReport
from polyring import MonomialOrder

logger = logging.getLogger("arrangements.cli")

# Output of a subcommand: exit status, a report, or plain ideal-file text
Outcome = Tuple[int, Optional[VerificationReport], Optional[str]]


class UsageError(Exception):
    """argparse rejected the command line"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _order(args, ring) -> MonomialOrder:
    if getattr(args, 'order', None):
        return MonomialOrder.from_spec(args.order, ring)
    return MonomialOrder.default(ring)


def _budget(args) -> StepBudget:
    limit = getattr(args, 'budget', None)
    return StepBudget(limit if limit is not None else get_step_budget())


def _spec(args) -> FamilySpec:
    return FamilySpec(Family.parse(args.family), args.n, args.p, args.m)


def _load(args, path: str) -> Ideal:
    return load_ideal_file(path, args.stdin)


# ---------- subcommands ----------
def cmd_construct(args) -> Outcome:
    spec = _spec(args)
    gens = family_generators(spec)
    if not args.json:
        return EXIT_PASS, None, dump_ideal(spec.ring(), gens, [spec.to_tokens()])
    report = VerificationReport(f"construct {spec.to_tokens()}")
    report.data['ring'] = str(spec.ring())
    report.data['generators'] = [str(g) for g in gens]
    return EXIT_PASS, report, None


def cmd_gb(args) -> Outcome:
    ideal = _load(args, args.ideal)
    order = _order(args, ideal.ring)
    basis = ideal.groebner(order, _budget(args))
    description = order.describe(ideal.ring)
    if not args.json:
        return EXIT_PASS, None, dump_ideal(ideal.ring, basis, [f"reduced Groebner basis, order {description}"])
    report = VerificationReport(f"gb {args.ideal}")
    report.data['order'] = description
    report.data['basis'] = [str(g) for g in basis]
    return EXIT_PASS, report, None


def cmd_member(args) -> Outcome:
    ideal = _load(args, args.ideal)
    order = _order(args, ideal.ring)
    poly = ideal.ring.parse(args.poly)
    remainder = ideal.normal_form(poly, order)
    report = VerificationReport(f"member {args.poly}")
    report.data['normal_form'] = str(remainder)
    report.add("member", remainder.is_zero(), witness=None if remainder.is_zero() else str(remainder))
    return report.exit_code, report, None


def cmd_intersect(args) -> Outcome:
    ideals = [_load(args, path) for path in args.ideals]
    order = _order(args, ideals[0].ring)
    result = intersect_all(ideals, order, _budget(args))
    basis = result.groebner(order)
    if not args.json:
        return EXIT_PASS, None, dump_ideal(result.ring, basis, [f"intersection of {' '.join(args.ideals)}"])
    report = VerificationReport(f"intersect {' '.join(args.ideals)}")
    report.data['basis'] = [str(g) for g in basis]
    return EXIT_PASS, report, None


def cmd_hilbert(args) -> Outcome:
    ideal = _load(args, args.ideal)
    data = hilbert(ideal, _order(args, ideal.ring))
    report = VerificationReport(f"hilbert {args.ideal}")
    report.data.update(data.to_dict())
    report.data['values'] = data.values(args.degree)
    return EXIT_PASS, report, None


def cmd_betti(args) -> Outcome:
    ideal = _load(args, args.ideal)
    table = betti_table(ideal, args.maxdeg, _order(args, ideal.ring))
    report = VerificationReport(f"betti {args.ideal}")
    report.data['table'] = table.staircase()
    report.data['entries'] = table.to_entries()
    shape = pure_type(table)
    report.data['pure_type'] = shape
    if table.to_entries():
        report.data['regularity'] = regularity(table)
    return EXIT_PASS, report, None


def cmd_verify_family(args) -> Outcome:
    spec = _spec(args)
    order = _order(args, spec.ring()) if args.order else None
    report = verify_family(spec, order, args.sample_orders, args.seed, _budget(args))
    if spec.family is Family.SKELETON:
        if spec.n + 1 <= get_max_betti_variables():
            report.merge(skeleton_checks(spec.n, spec.p), prefix="invariants")
        else:
            report.skip("invariants", f"Betti tables limited to {get_max_betti_variables()} variables")
    return report.exit_code, report, None


def cmd_verify_trunc_example(args) -> Outcome:
    report = truncation_example_report()
    return report.exit_code, report, None


def cmd_verify_cube_example(args) -> Outcome:
    report = cube_example_report()
    return report.exit_code, report, None


def cmd_dodeca(args) -> Outcome:
    budget = StepBudget(args.budget) if args.budget is not None else None
    report = dodeca_report(args.method, budget, args.seed)
    return report.exit_code, report, None


COMMANDS: Dict[str, Callable] = {
    'construct': cmd_construct,
    'gb': cmd_gb,
    'member': cmd_member,
    'intersect': cmd_intersect,
    'hilbert': cmd_hilbert,
    'betti': cmd_betti,
    'verify-family': cmd_verify_family,
    'verify-trunc-example': cmd_verify_trunc_example,
    'verify-cube-example': cmd_verify_cube_example,
    'dodeca': cmd_dodeca,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument('--json', action='store_true', help='JSON report on stdout')
    common.add_argument('--save', metavar='DIR', help='also write text and JSON reports under DIR')
    common.add_argument('-v', '--verbose', action='count', default=0, help='log to stderr (-vv for debug)')

    ordered = _Parser(add_help=False)
    ordered.add_argument('--order', help='grevlex | lex | grevlex@x1,...,x0 | weight:3,1,2')

    budgeted = _Parser(add_help=False)
    budgeted.add_argument('--budget', type=int, help='S-pair reduction budget')

    family = _Parser(add_help=False)
    family.add_argument('--family', required=True, help='LiLi | KL | Skeleton | StanleyReisner')
    family.add_argument('--n', type=int, required=True)
    family.add_argument('--p', type=int, required=True)
    family.add_argument('--m', type=int, default=1)

    parser = _Parser(prog='arrangements', description='Subspace arrangement ideals: construction and verification')
    sub = parser.add_subparsers(dest='command', metavar='COMMAND', parser_class=_Parser)
    sub.required = True

    sub.add_parser('construct', parents=[common, family], help='print family generators')

    p = sub.add_parser('gb', parents=[common, ordered, budgeted], help='reduced Groebner basis of an ideal file')
    p.add_argument('--ideal', required=True, help="ideal file, '-' for stdin")

    p = sub.add_parser('member', parents=[common, ordered], help='ideal membership of a polynomial')
    p.add_argument('--ideal', required=True)
    p.add_argument('--poly', required=True)

    p = sub.add_parser('intersect', parents=[common, ordered, budgeted], help='intersection of ideal files')
    p.add_argument('ideals', nargs='+')

    p = sub.add_parser('hilbert', parents=[common, ordered], help='Hilbert data of S/I')
    p.add_argument('--ideal', required=True)
    p.add_argument('--degree', type=int, default=10, help='Hilbert function values up to this degree')

    p = sub.add_parser('betti', parents=[common, ordered], help='graded Betti numbers of I')
    p.add_argument('--ideal', required=True)
    p.add_argument('--maxdeg', type=int)

    p = sub.add_parser('verify-family', parents=[common, ordered, budgeted, family],
                       help='verify a family against its arrangement')
    p.add_argument('--sample-orders', type=int, default=config.get('cli.default_sample_orders', 20))
    p.add_argument('--seed', type=int, default=config.get('cli.default_seed', 0))

    sub.add_parser('verify-trunc-example', parents=[common], help='KL(3,1,2) against a truncation point')
    sub.add_parser('verify-cube-example', parents=[common], help='square vertices against the 2-truncation')

    p = sub.add_parser('dodeca', parents=[common], help='skew dodecahedron edge lines and cover argument')
    p.add_argument('--method', choices=['fold', 'interpolation'], default=config.get('dodeca.method', 'fold'))
    p.add_argument('--budget', type=int)
    p.add_argument('--seed', type=int, default=config.get('cli.default_seed', 0))
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None,
        stdin: Optional[TextIO] = None) -> int:
    """Parse argv, run the subcommand and write its output; returns the exit status"""
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(list(sys.argv[1:] if argv is None else argv))
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return EXIT_PASS if not e.code else EXIT_USAGE
    args.stdin = stdin
    if args.verbose:
        error_handler.set_verbosity("DEBUG" if args.verbose > 1 else "INFO")

    try:
        code, report, text = COMMANDS[args.command](args)
    except BudgetExceededError as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except AlgebraError as e:
        print(f"verification error: {e}", file=sys.stderr)
        return EXIT_FAIL

    if text is not None:
        stdout.write(text)
        return code
    formatter = ReportFormatter(args.save or "results")
    if args.json:
        stdout.write(formatter.format_json(report) + "\n")
    else:
        stdout.write(formatter.format_console_output(report) + "\n")
    if args.save:
        formatter.save_all_formats(report)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
