"""Command-line interface.

Subcommands: split, classify, cohomology, verify, gen.  Exit codes:
0 ok, 2 parse error, 3 validation error, 4 cocycle violation,
5 tolerance exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import GermsplitError
from .frontend import (load_problem, run_classify, run_cohomology, run_gen,
                       run_split, run_verify)
from .williamson import WilliamsonType


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="germsplit",
        description="Exact decomposition of polynomial germs along the "
                    "commuting singular vector fields of a Williamson model "
                    "system, with cohomology witnesses and quadrature "
                    "cross-checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p):
        p.add_argument("-o", "--output", metavar="FILE",
                       help="write the report to FILE instead of stdout")

    p_split = sub.add_parser("split", help="solve g_i = f_i + X_i(G)")
    p_split.add_argument("file", help="problem file with a [g] section")
    p_split.add_argument("--oracle", action=argparse.BooleanOptionalAction,
                         default=True,
                         help="compare against the independent exact linear "
                              "solver (default: on)")
    p_split.add_argument("--degree", type=int, default=None,
                         help="degree bound for the oracle's potential")
    add_output(p_split)

    p_classify = sub.add_parser("classify",
                                help="detect the Williamson type of a "
                                     "commuting quadratic family")
    p_classify.add_argument("file", help="problem file with a [q] section")
    add_output(p_classify)

    p_coh = sub.add_parser("cohomology",
                           help="check a 1-cochain and produce its "
                                "coboundary witness")
    p_coh.add_argument("file", help="problem file with an [alpha] section")
    add_output(p_coh)

    p_verify = sub.add_parser("verify",
                              help="quadrature cross-checks of the algebraic "
                                   "splits along explicit flows")
    p_verify.add_argument("file", help="problem file with a [g] section")
    p_verify.add_argument("--tolerance", type=float, default=None,
                          help="override residual tolerance "
                               "(default: 1e-8 averages, 1e-6 transport)")
    p_verify.add_argument("--panels", type=int, default=256,
                          help="Simpson panel count (default: 256)")
    p_verify.add_argument("--points", type=int, default=50,
                          help="sample points per check (default: 50)")
    add_output(p_verify)

    p_gen = sub.add_parser("gen",
                           help="emit a forward-generated problem file with "
                                "its expected decomposition")
    p_gen.add_argument("--type", required=True, metavar="(k_e,k_h,k_f)@n",
                       help="Williamson type, e.g. (1,1,0)@2")
    p_gen.add_argument("--degree", type=int, default=6,
                       help="total degree bound (default: 6)")
    p_gen.add_argument("--seed", type=int, default=0,
                       help="deterministic seed (default: 0)")
    add_output(p_gen)
    return parser


def _emit(text: str, output):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            wtype = WilliamsonType.parse(args.type)
            _emit(run_gen(wtype, args.degree, args.seed), args.output)
            return 0
        problem = load_problem(Path(args.file).read_text())
        if args.command == "split":
            doc = run_split(problem, use_oracle=args.oracle, degree=args.degree)
        elif args.command == "classify":
            doc = run_classify(problem)
        elif args.command == "cohomology":
            doc = run_cohomology(problem)
        else:
            doc = run_verify(problem, tolerance=args.tolerance,
                             panels=args.panels, points=args.points)
        _emit(doc.text, args.output)
        return doc.status
    except GermsplitError as exc:
        sys.stderr.write(f"error[{exc.code}]: {exc}\n")
        return exc.exit_code
    except FileNotFoundError as exc:
        sys.stderr.write(f"error[E_VALIDATION]: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
