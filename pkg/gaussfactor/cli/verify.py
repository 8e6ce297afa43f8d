"""
Verification command
File: gaussfactor/cli/verify.py
"""

import argparse
import json

from gaussfactor.services.output_writer import OutputWriter
from gaussfactor.services.verification import SUITES, VerificationService
from gaussfactor.utils.exceptions import ValidationError
from gaussfactor.utils.validators import parse_target_number

# Flags each suite consumes; anything else given on the command line is rejected
SUITE_OPTIONS = {
    "equivalence": {"n", "m"},
    "refocusing": {"n", "m"},
    "telescoping": set(),
    "damping": {"n", "m", "gamma"},
}


def register(subparsers: argparse._SubParsersAction) -> None:
    verify = subparsers.add_parser("verify", help="run an oracle/invariant suite and report JSON")
    # validated by the service so unknown names map to the validation exit code
    verify.add_argument("suite", help=f"one of: {', '.join(SUITES)}")
    verify.add_argument("--n", type=parse_target_number, default=None, help="override the target number")
    verify.add_argument("--m", type=int, default=None, help="override the truncation M")
    verify.add_argument("--gamma", type=float, default=None, help="damping suite only")
    verify.add_argument("--out", default=None, metavar="PATH")
    verify.set_defaults(handler=handle_verify)


def handle_verify(args: argparse.Namespace) -> int:
    given = {name for name in ("n", "m", "gamma") if getattr(args, name) is not None}
    accepted = SUITE_OPTIONS.get(args.suite)
    if accepted is not None and given - accepted:
        flags = ", ".join(f"--{name}" for name in sorted(given - accepted))
        raise ValidationError(f"suite {args.suite} does not take {flags}")

    options = {}
    if args.n is not None:
        options["n"] = args.n
    if args.m is not None:
        options["m_max"] = args.m
    if args.gamma is not None:
        options["gamma"] = args.gamma

    report = VerificationService().run(args.suite, **options)
    payload = report.model_dump(mode="json")
    OutputWriter.emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0 if report.passed else 4
